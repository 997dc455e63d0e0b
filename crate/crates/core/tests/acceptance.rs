//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest harness so the
//! lines always reach stdout.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_complex::Complex64;

use smfc::algebra::{AbelianGroup, FiniteGroup, GcgData, Phase};
use smfc::builders::{build_dijkgraaf_witten, build_gcg, build_graded_lift, build_matrix_category, GradedFusionInput};
use smfc::category::{Sign, SmfcData};
use smfc::statesum::{flat_counting_oracle, invariant, invariant_pointed, InvariantOptions, DEFAULT_ORACLE_CAP};
use smfc::topology::{builtin_manifold, random_pachner_walk_trace, DeltaComplex, MoveKind, WalkOptions, BUILTIN_NAMES};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn data(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn manifold(name: &str) -> DeltaComplex {
    builtin_manifold(name).expect("builtin")
}

fn z(cat: &SmfcData, k: &DeltaComplex) -> Result<Complex64, String> {
    invariant(cat, k, &InvariantOptions::default()).map(|r| r.value).map_err(|e| e.to_string())
}

fn rel_close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(f64::MIN_POSITIVE)
}

fn gcg(name: &str) -> GcgData {
    GcgData::load(data(&format!("gcg/{name}.json"))).expect("fixture loads")
}

fn category(name: &str) -> SmfcData {
    SmfcData::load(data(name)).expect("category loads")
}

fn dw_z2_minus() -> SmfcData {
    let mut omega = vec![Phase::ZERO; 8];
    omega[7] = Phase::new(1, 2);
    build_dijkgraaf_witten(&FiniteGroup::cyclic(2), omega).unwrap()
}

fn dw_trivial(group: FiniteGroup) -> SmfcData {
    let n = group.order();
    build_dijkgraaf_witten(&group, vec![Phase::ZERO; n * n * n]).unwrap()
}

const GCG_FIXTURES: [&str; 9] = [
    "dw_z2",
    "dw_z2_twisted",
    "dw_z3",
    "dw_s3",
    "gcg_z2_z2",
    "gcg_z2_z2_lambda",
    "gcg_z2_z2_beta",
    "gcg_z2_z3_neg",
    "gcg_z2_z2_general",
];

fn sphere_closed_form() -> Outcome {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let cases = [
        ("trivial", build_matrix_category(1).unwrap(), 1.0),
        ("M2", build_matrix_category(2).unwrap(), 1.0),
        ("M3", build_matrix_category(3).unwrap(), 1.0),
        ("GCG(Z2,Z2)", build_gcg(&GcgData::new(FiniteGroup::cyclic(2), AbelianGroup::cyclic(2))).unwrap(), 1.0),
        ("DW(Z2,w)", dw_z2_minus(), 0.5),
        ("DW(S3)", dw_trivial(FiniteGroup::symmetric(3)), 1.0 / 6.0),
        ("Fibonacci", category("fibonacci.json"), 1.0 / (1.0 + phi * phi)),
    ];
    let mut slowest = Duration::ZERO;
    for (name, cat, want) in &cases {
        for m in ["s3_two_tets", "s3_boundary_4simplex"] {
            let t = Instant::now();
            let got = z(cat, &manifold(m))?;
            let dt = t.elapsed();
            slowest = slowest.max(dt);
            if !rel_close(got, Complex64::new(*want, 0.0), 1e-9) {
                return Err(format!("{name} on {m}: {got} vs {want}"));
            }
            if dt >= Duration::from_secs(1) {
                return Err(format!("{name} on {m} took {dt:?}"));
            }
        }
    }
    Ok(format!("{} categories x 2 spheres, slowest {slowest:.2?}", cases.len()))
}

fn pachner_invariance() -> Outcome {
    let t = Instant::now();
    let cats = [
        ("DW(Z2)", dw_trivial(FiniteGroup::cyclic(2))),
        ("DW(Z2,w)", dw_z2_minus()),
        ("GCG(Z2,Z2)", build_gcg(&GcgData::new(FiniteGroup::cyclic(2), AbelianGroup::cyclic(2))).unwrap()),
        ("Fibonacci", category("fibonacci.json")),
    ];
    let mut evaluations = 0;
    for m in ["s3_two_tets", "t3_one_vertex"] {
        let k = manifold(m);
        let walks: Vec<_> = (0..25u64).map(|seed| random_pachner_walk_trace(&k, 10, seed, WalkOptions::default())).collect();
        for (name, cat) in &cats {
            let base = z(cat, &k)?;
            for (seed, walk) in walks.iter().enumerate() {
                for (step, (mv, complex)) in walk.iter().enumerate() {
                    let v = z(cat, complex)?;
                    evaluations += 1;
                    if !rel_close(v, base, 1e-6) {
                        return Err(format!("{name} on {m}, seed {seed}, step {} ({}): {v} vs {base}", step + 1, mv.kind));
                    }
                }
            }
        }
    }
    let dt = t.elapsed();
    if dt >= Duration::from_secs(120) {
        return Err(format!("took {dt:?}"));
    }
    Ok(format!("{evaluations} evaluations in {dt:.2?}"))
}

fn ordering_independence() -> Outcome {
    let k = manifold("s3_boundary_4simplex");
    let cats = [("Fibonacci", category("fibonacci.json")), ("DW(S3)", dw_trivial(FiniteGroup::symmetric(3)))];
    let mut count = 0;
    for (name, cat) in &cats {
        let base = z(cat, &k)?;
        for perm in (0..5).permutations(5) {
            let relabeled = k.relabel_vertices(&perm).map_err(|e| e.to_string())?;
            let v = z(cat, &relabeled)?;
            if !rel_close(v, base, 1e-9) {
                return Err(format!("{name} under {perm:?}: {v} vs {base}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} relabelings"))
}

fn oracle_equivalence() -> Outcome {
    let mut pairs = 0;
    for name in GCG_FIXTURES {
        let g = gcg(name);
        let cat = build_gcg(&g).map_err(|e| e.to_string())?;
        for m in BUILTIN_NAMES {
            if name == "dw_s3" && m == "s2xs1" {
                continue;
            }
            let k = manifold(m);
            let a = z(&cat, &k)?;
            let b = invariant_pointed(&g, &k).map_err(|e| e.to_string())?.value;
            if !rel_close(a, b, 1e-9) {
                return Err(format!("{name} on {m}: generic {a} vs pointed {b}"));
            }
            pairs += 1;
        }
    }
    for (name, m, want) in [("dw_z2", "t3_one_vertex", 4.0), ("dw_z3", "t3_one_vertex", 9.0), ("dw_z2", "s3_two_tets", 0.5)] {
        let g = gcg(name);
        let k = manifold(m);
        let r = flat_counting_oracle(g.group(), &k, DEFAULT_ORACLE_CAP).map_err(|e| e.to_string())?;
        let exact = *r.numer() as f64 / *r.denom() as f64;
        let generic = z(&build_gcg(&g).unwrap(), &k)?;
        let pointed = invariant_pointed(&g, &k).unwrap().value;
        if exact != want || !rel_close(generic, Complex64::new(exact, 0.0), 1e-9) || !rel_close(pointed, Complex64::new(exact, 0.0), 1e-9) {
            return Err(format!("{name} on {m}: oracle {r}, generic {generic}, pointed {pointed}, expected {want}"));
        }
    }
    Ok(format!("{pairs} fixture/manifold pairs, 3 oracle values"))
}

fn builder_outputs() -> Vec<(String, SmfcData)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        out.push((format!("M{n}"), build_matrix_category(n).unwrap()));
    }
    for name in GCG_FIXTURES {
        out.push((name.to_string(), build_gcg(&gcg(name)).unwrap()));
    }
    let lift = GradedFusionInput::load(data("ising_z2_graded.json")).unwrap();
    out.push(("graded Ising".to_string(), build_graded_lift(&lift).unwrap()));
    out
}

fn validator_soundness() -> Outcome {
    let mut all = builder_outputs();
    all.push(("Fibonacci".to_string(), category("fibonacci.json")));
    for (name, cat) in &all {
        let r = cat.validate(1e-9);
        for check in ["handle", "orthogonality", "pentagon"] {
            if !r.is_pass(check) {
                return Err(format!("{name}: {check} failed: {r}"));
            }
        }
    }
    let mut perturbed = 0;
    let targets = [
        ("Fibonacci", category("fibonacci.json")),
        ("Ising", category("ising.json")),
        ("DW(Z2,w)", dw_z2_minus()),
    ];
    for (name, base) in &targets {
        for key in base.colorable_keys() {
            let signs: &[Sign] = if base.has_explicit_minus() { &[Sign::Plus, Sign::Minus] } else { &[Sign::Plus] };
            for &sign in signs {
                let mut c = base.clone();
                let a = c.amplitude(&key, sign).unwrap();
                c.set_amplitude(&key, sign, a * 1.1).unwrap();
                let r = c.validate(1e-9);
                if r.is_pass("handle") && r.is_pass("orthogonality") && r.is_pass("pentagon") {
                    return Err(format!("{name}: perturbing {} ({sign:?}) went unnoticed", c.key_name(&key)));
                }
                perturbed += 1;
            }
        }
    }
    if !category("fibonacci_corrupted.json").validate(1e-9).check("pentagon").is_some_and(|c| !c.passed) {
        return Err("corrupted Fibonacci passes the pentagon check".into());
    }
    Ok(format!("{} categories valid, {perturbed} perturbations caught", all.len()))
}

fn specialness() -> Outcome {
    let all = builder_outputs();
    for (name, cat) in &all {
        if !cat.dims_report().special {
            return Err(format!("{name} is not special: {:?}", cat.dims_report().rows));
        }
    }
    let lift = build_graded_lift(&GradedFusionInput::load(data("ising_z2_graded.json")).unwrap()).unwrap();
    let rows = lift.dims_report().rows;
    if rows.len() != 2 || rows.iter().any(|r| (r - 4.0).abs() > 1e-9) {
        return Err(format!("graded Ising rows {rows:?}"));
    }
    Ok(format!("{} builder outputs special, graded Ising rows {rows:?}", all.len()))
}

fn property_suite() -> Outcome {
    let mut checked = 0;
    for m in ["s3_two_tets", "s3_boundary_4simplex", "t3_one_vertex", "s2xs1"] {
        let k = manifold(m);
        for mv in k.applicable_moves() {
            let next = k.pachner_move(mv).map_err(|e| format!("{m} {mv:?}: {e}"))?;
            let (a, b) = (k.counts(), next.counts());
            let delta: Vec<i64> = (0..4).map(|i| b[i] as i64 - a[i] as i64).collect();
            if delta != mv.kind.signature() {
                return Err(format!("{m} {}: counts changed by {delta:?}", mv.kind));
            }
            if !next.validate().passed() || next.euler_characteristic() != 0 {
                return Err(format!("{m} {}: result invalid or Euler characteristic {}", mv.kind, next.euler_characteristic()));
            }
            opposite_signs(&next).map_err(|e| format!("{m} {}: {e}", mv.kind))?;
            let back = next
                .applicable_moves()
                .into_iter()
                .filter(|inv| inv.kind == mv.kind.inverse())
                .filter_map(|inv| next.pachner_move(inv).ok())
                .any(|c| c.canonical_form() == k.canonical_form());
            if !back {
                return Err(format!("{m} {}: no inverse move restores the complex", mv.kind));
            }
            checked += 1;
        }
    }
    let kinds = MoveKind::ALL.iter().map(|k| (k.signature(), k.inverse().signature()));
    for (s, t) in kinds {
        if (0..4).any(|i| s[i] != -t[i]) {
            return Err(format!("signatures {s:?} and {t:?} are not opposite"));
        }
    }
    let twin = DeltaComplex::from_ordered_tetra_list(4, &[([0, 1, 2, 3], 1), ([0, 1, 2, 3], 1)]).unwrap();
    if twin.validate().is_pass("orientation") {
        return Err("two tetrahedra with equal signs pass the orientation check".into());
    }
    for factors in [vec![2], vec![3], vec![2, 2]] {
        let a = AbelianGroup::new(factors.clone()).unwrap();
        let chars = a.characters();
        for (c1, c2) in chars.iter().cartesian_product(&chars) {
            let prod = a.convolve(&a.projector(c1), &a.projector(c2));
            let want = if c1 == c2 { a.projector(c1) } else { vec![Complex64::new(0.0, 0.0); a.order()] };
            if prod.iter().zip(&want).any(|(x, y)| (x - y).norm() > 1e-12) {
                return Err(format!("P_chi products fail for A = {factors:?} at {c1:?}, {c2:?}"));
            }
        }
    }
    Ok(format!("{checked} moves with inverses, projectors for Z2, Z3, Z2xZ2"))
}

fn opposite_signs(k: &DeltaComplex) -> Result<(), String> {
    for (t, inc) in k.triangle_incidences().iter().enumerate() {
        let [(a, i), (b, j)] = inc[..] else {
            return Err(format!("triangle {t} has {} incidences", inc.len()));
        };
        if k.tets()[a].face_sign(i) != -k.tets()[b].face_sign(j) {
            return Err(format!("triangle {t} induced twice with the same sign"));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("S3 closed form", sphere_closed_form),
        ("Pachner invariance", pachner_invariance),
        ("ordering independence", ordering_independence),
        ("oracle equivalence", oracle_equivalence),
        ("validator soundness", validator_soundness),
        ("specialness", specialness),
        ("property suite", property_suite),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(note) => println!("PASS {} {name}: {note}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
