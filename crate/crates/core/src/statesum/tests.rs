use num_rational::Ratio;

use super::*;
use crate::algebra::{AbelianGroup, Character, FiniteGroup, GAction, GcgData, Phase};
use crate::builders::{build_gcg, build_graded_lift, build_matrix_category, GradedFusionInput};
use crate::category::{Sign, SmfcData, ThetaConvention, TET_FACE_TRIPLES};
use crate::error::Error;
use crate::topology::{builtin_manifold, random_pachner_walk, DeltaComplex};

fn data(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn z(cat: &SmfcData, k: &DeltaComplex) -> Complex64 {
    invariant(cat, k, &InvariantOptions::default()).unwrap().value
}

fn close(a: Complex64, b: Complex64, rel: f64) -> bool {
    (a - b).norm() <= rel * b.norm().max(1.0)
}

fn manifold(name: &str) -> DeltaComplex {
    builtin_manifold(name).unwrap()
}

fn z2_omega_half() -> Vec<Phase> {
    let mut w = vec![Phase::ZERO; 8];
    w[7] = Phase::new(1, 2);
    w
}

fn fixtures() -> Vec<(&'static str, GcgData)> {
    let z2 = FiniteGroup::cyclic(2);
    let a2 = AbelianGroup::cyclic(2);
    let mut cup = vec![vec![0]; 8];
    cup[7] = vec![1];
    let neg = GAction::new(&z2, &AbelianGroup::cyclic(3), vec![vec![vec![1]], vec![vec![2]]]).unwrap();
    vec![
        ("dw_z2", GcgData::dijkgraaf_witten(z2.clone(), vec![Phase::ZERO; 8]).unwrap()),
        ("dw_z2_twisted", GcgData::dijkgraaf_witten(z2.clone(), z2_omega_half()).unwrap()),
        ("dw_z3", GcgData::dijkgraaf_witten(FiniteGroup::cyclic(3), vec![Phase::ZERO; 27]).unwrap()),
        ("gcg_z2_z2", GcgData::new(z2.clone(), a2.clone())),
        (
            "gcg_z2_z2_lambda",
            GcgData::new(z2.clone(), a2.clone())
                .with_lambda(vec![Character(vec![0]), Character(vec![1])])
                .unwrap()
                .with_omega(z2_omega_half())
                .unwrap(),
        ),
        ("gcg_z2_z2_beta", GcgData::new(z2.clone(), a2.clone()).with_beta(cup).unwrap()),
        (
            "gcg_z2_z3_neg",
            GcgData::new(z2.clone(), AbelianGroup::cyclic(3))
                .with_action(neg)
                .with_lambda(vec![Character(vec![0]), Character(vec![1])])
                .unwrap(),
        ),
    ]
}

#[test]
fn trivial_category_gives_one() {
    let c = build_matrix_category(1).unwrap();
    for name in ["s3_two_tets", "s3_boundary_4simplex", "t3_one_vertex", "s2xs1"] {
        assert!(close(z(&c, &manifold(name)), Complex64::new(1.0, 0.0), 1e-12), "{name}");
    }
}

#[test]
fn matrix_on_sphere() {
    let c = build_matrix_category(2).unwrap();
    assert!(close(z(&c, &manifold("s3_two_tets")), Complex64::new(1.0, 0.0), 1e-12));
}

#[test]
fn fibonacci_on_sphere() {
    let c = SmfcData::load(data("fibonacci.json")).unwrap();
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let want = Complex64::new(1.0 / (1.0 + phi * phi), 0.0);
    assert!(close(z(&c, &manifold("s3_two_tets")), want, 1e-12));
    assert!(close(z(&c, &manifold("s3_boundary_4simplex")), want, 1e-12));
    assert!((want.re - 0.2763932).abs() < 1e-7);
}

#[test]
fn ising_on_sphere_and_lift() {
    let c = SmfcData::load(data("ising.json")).unwrap();
    assert!(close(z(&c, &manifold("s3_boundary_4simplex")), Complex64::new(0.25, 0.0), 1e-12));
    let lift = build_graded_lift(&GradedFusionInput { category: c, group: FiniteGroup::cyclic(2), grading: vec![0, 0, 1] }).unwrap();
    assert!(close(z(&lift, &manifold("s3_two_tets")), Complex64::new(0.5, 0.0), 1e-12));
}

#[test]
fn gcg_on_four_simplex_boundary() {
    let c = build_gcg(&GcgData::new(FiniteGroup::cyclic(2), AbelianGroup::cyclic(2))).unwrap();
    assert!(close(z(&c, &manifold("s3_boundary_4simplex")), Complex64::new(1.0, 0.0), 1e-12));
}

#[test]
fn pointed_examples() {
    let dw_z2 = GcgData::dijkgraaf_witten(FiniteGroup::cyclic(2), vec![Phase::ZERO; 8]).unwrap();
    let v = invariant_pointed(&dw_z2, &manifold("t3_one_vertex")).unwrap().value;
    assert!(close(v, Complex64::new(4.0, 0.0), 1e-12));
    let dw_s3 = GcgData::dijkgraaf_witten(FiniteGroup::symmetric(3), vec![Phase::ZERO; 216]).unwrap();
    let v = invariant_pointed(&dw_s3, &manifold("s3_two_tets")).unwrap().value;
    assert!(close(v, Complex64::new(1.0 / 6.0, 0.0), 1e-12));
    for (_, g) in fixtures() {
        let v = invariant_pointed(&g, &DeltaComplex::empty()).unwrap().value;
        assert_eq!(v, Complex64::new(1.0, 0.0));
    }
}

#[test]
fn empty_complex_gives_one() {
    let c = SmfcData::load(data("fibonacci.json")).unwrap();
    assert_eq!(z(&c, &DeltaComplex::empty()), Complex64::new(1.0, 0.0));
}

#[test]
fn oracle_examples() {
    let cap = DEFAULT_ORACLE_CAP;
    assert_eq!(flat_counting_oracle(&FiniteGroup::cyclic(2), &manifold("s3_two_tets"), cap).unwrap(), Ratio::new(1, 2));
    assert_eq!(flat_counting_oracle(&FiniteGroup::cyclic(3), &manifold("t3_one_vertex"), cap).unwrap(), Ratio::from_integer(9));
    assert_eq!(flat_counting_oracle(&FiniteGroup::trivial(), &manifold("s2xs1"), cap).unwrap(), Ratio::from_integer(1));
    assert!(matches!(
        flat_counting_oracle(&FiniteGroup::cyclic(2), &manifold("s2xs1"), cap),
        Err(Error::SizeGuard(_))
    ));
}

#[test]
fn enumeration_counts() {
    let k = manifold("s3_two_tets");
    assert_eq!(enumerate_colorings(&build_matrix_category(1).unwrap(), &k).unwrap(), 1);
    assert_eq!(enumerate_colorings(&build_matrix_category(2).unwrap(), &k).unwrap(), 16);
    let dw = build_gcg(&fixtures()[0].1).unwrap();
    assert_eq!(enumerate_colorings(&dw, &k).unwrap(), 8);
    let r = invariant(&dw, &k, &InvariantOptions::default()).unwrap();
    assert_eq!(r.colorings_contributing, 8);
    assert!(r.colorings_visited >= 8);
}

#[test]
fn stream_is_depth_first() {
    let c = SmfcData::load(data("fibonacci.json")).unwrap();
    let mut seen = Vec::new();
    let mut total = Complex64::new(0.0, 0.0);
    for_each_coloring(&c, &manifold("s3_two_tets"), |col, w| {
        seen.push((col.f0.clone(), col.f1.clone()));
        total += w;
    })
    .unwrap();
    assert!(seen.windows(2).all(|w| w[0] < w[1]));
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let k = (1.0 + phi * phi).powi(4);
    assert!(close(total / k, z(&c, &manifold("s3_two_tets")), 1e-12));
}

#[test]
fn pointed_matches_generic_and_oracle() {
    for (name, g) in fixtures() {
        let cat = build_gcg(&g).unwrap();
        for m in ["s3_two_tets", "s3_boundary_4simplex", "t3_one_vertex", "s2xs1"] {
            let k = manifold(m);
            let a = z(&cat, &k);
            let b = invariant_pointed(&g, &k).unwrap().value;
            assert!(close(a, b, 1e-9), "{name} on {m}: {a} vs {b}");
        }
    }
    for (n, m, want) in [(2, "t3_one_vertex", 4.0), (3, "t3_one_vertex", 9.0), (2, "s3_two_tets", 0.5)] {
        let group = FiniteGroup::cyclic(n);
        let omega = vec![Phase::ZERO; n * n * n];
        let r = flat_counting_oracle(&group, &manifold(m), DEFAULT_ORACLE_CAP).unwrap();
        let r = *r.numer() as f64 / *r.denom() as f64;
        assert_eq!(r, want);
        let cat = build_gcg(&GcgData::dijkgraaf_witten(group, omega).unwrap()).unwrap();
        assert!(close(z(&cat, &manifold(m)), Complex64::new(r, 0.0), 1e-9));
    }
}

#[test]
fn thread_count_does_not_change_bits() {
    let c = SmfcData::load(data("fibonacci.json")).unwrap();
    let k = random_pachner_walk(&manifold("t3_one_vertex"), 6, 11);
    let one = invariant(&c, &k, &InvariantOptions { threads: Some(1), max_nodes: None }).unwrap();
    let many = invariant(&c, &k, &InvariantOptions { threads: Some(4), max_nodes: None }).unwrap();
    assert_eq!(one.value.re.to_bits(), many.value.re.to_bits());
    assert_eq!(one.value.im.to_bits(), many.value.im.to_bits());
    assert_eq!(one.colorings_visited, many.colorings_visited);
}

#[test]
fn size_guard_trips() {
    let c = SmfcData::load(data("fibonacci.json")).unwrap();
    let r = invariant(&c, &manifold("s2xs1"), &InvariantOptions { threads: None, max_nodes: Some(1000) });
    assert!(matches!(r, Err(Error::SizeGuard(_))));
}

#[test]
fn non_special_rejected() {
    let text = std::fs::read_to_string(data("fibonacci.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["index_set"].as_array_mut().unwrap().push("b".into());
    v["labels"].as_array_mut().unwrap().push(serde_json::json!({"name":"u","source":"b","target":"b","dim":1.0,"dual":"u"}));
    v["units"]["b"] = "u".into();
    v["fusion"].as_array_mut().unwrap().push(serde_json::json!(["u", "u", "u"]));
    let edges: serde_json::Map<_, _> = ["01", "02", "03", "12", "13", "23"].iter().map(|e| (e.to_string(), "u".into())).collect();
    v["amplitude_plus"].as_array_mut().unwrap().push(serde_json::json!({"edges": edges, "value": [1.0, 0.0]}));
    let c = SmfcData::from_json(&v.to_string()).unwrap();
    assert!(matches!(invariant(&c, &manifold("s3_two_tets"), &InvariantOptions::default()), Err(Error::NotSpecial(_))));
}

#[test]
fn invalid_complex_rejected() {
    let c = build_matrix_category(1).unwrap();
    let k = DeltaComplex::from_ordered_tetra_list(4, &[([0, 1, 2, 3], 1)]).unwrap();
    assert!(matches!(invariant(&c, &k, &InvariantOptions::default()), Err(Error::Validation { .. })));
}

#[test]
fn sqrt_dims_gauge_gives_same_invariant() {
    let base = SmfcData::load(data("ising.json")).unwrap();
    let mut c = base.clone();
    let theta = |c: &SmfcData, k: &crate::category::TetKey, slot: usize| {
        let t = TET_FACE_TRIPLES[slot];
        (c.dim(k[t[0]]) * c.dim(k[t[1]]) * c.dim(k[t[2]])).sqrt()
    };
    for key in c.colorable_keys() {
        let p = c.amplitude(&key, Sign::Plus).unwrap() * theta(&c, &key, 0) * theta(&c, &key, 2);
        let m = c.amplitude(&key, Sign::Minus).unwrap() * theta(&c, &key, 1) * theta(&c, &key, 3);
        c.set_amplitude(&key, Sign::Minus, m).unwrap();
        c.set_amplitude(&key, Sign::Plus, p).unwrap();
    }
    c.set_theta_convention(ThetaConvention::SqrtDims);
    for m in ["s3_two_tets", "s3_boundary_4simplex", "t3_one_vertex"] {
        let k = manifold(m);
        assert!(close(z(&c, &k), z(&base, &k), 1e-9), "{m}");
    }
}

#[test]
fn s3_law_for_shipped_categories() {
    for file in ["fibonacci.json", "ising.json"] {
        let c = SmfcData::load(data(file)).unwrap();
        let want = c.num_sectors() as f64 / c.dims_report().k.unwrap();
        assert!(close(z(&c, &manifold("s3_two_tets")), Complex64::new(want, 0.0), 1e-9));
    }
}

mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn twisted_z2_is_pachner_invariant(seed in any::<u64>(), steps in 1usize..8) {
            let g = &fixtures()[1].1;
            let cat = build_gcg(g).unwrap();
            let k = manifold("s3_two_tets");
            let walked = random_pachner_walk(&k, steps, seed);
            let (a, b) = (z(&cat, &k), z(&cat, &walked));
            prop_assert!(close(a, b, 1e-9), "{} vs {}", a, b);
            prop_assert!(close(invariant_pointed(g, &walked).unwrap().value, b, 1e-9));
        }

        #[test]
        fn ising_is_pachner_invariant_on_torus(seed in any::<u64>(), steps in 1usize..6) {
            let c = SmfcData::load(data("ising.json")).unwrap();
            let k = manifold("t3_one_vertex");
            let walked = random_pachner_walk(&k, steps, seed);
            prop_assert!(close(z(&c, &k), z(&c, &walked), 1e-9));
        }
    }
}
