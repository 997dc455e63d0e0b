//! Constructors for the families of categories the state sum is run on.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Deserialize;

use crate::algebra::{FiniteGroup, GcgData, Phase};
use crate::category::{LabelId, SimpleLabel, SmfcData, SmfcParts, TetKey, ThetaConvention};
use crate::error::{from_json_str, Error, Result};

const BUILD_TOL: f64 = 1e-9;

/// The matrix category `M_n`: labels `E_ij` with `E_ik ⊗ E_kj = E_ij`, all dimensions 1.
pub fn build_matrix_category(n: usize) -> Result<SmfcData> {
    if n == 0 {
        return Err(Error::invalid("matrix category needs n ≥ 1"));
    }
    let id = |i: usize, j: usize| (i * n + j) as LabelId;
    let labels = (0..n * n)
        .map(|x| {
            let (i, j) = (x / n, x % n);
            SimpleLabel {
                name: format!("E{i},{j}"),
                source: i,
                target: j,
                dim: 1.0,
                dual: id(j, i),
            }
        })
        .collect();
    let mut fusion = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                fusion.push([id(i, k), id(k, j), id(i, j)]);
            }
        }
    }
    let mut amplitude_plus = Vec::new();
    for v in 0..n * n * n * n {
        let (a, b, c, d) = (v / (n * n * n), (v / (n * n)) % n, (v / n) % n, v % n);
        let key: TetKey = [id(a, b), id(a, c), id(a, d), id(b, c), id(b, d), id(c, d)];
        amplitude_plus.push((key, Complex64::new(1.0, 0.0)));
    }
    SmfcData::new(SmfcParts {
        index_set: (0..n).map(|i| i.to_string()).collect(),
        labels,
        units: (0..n).map(|i| id(i, i)).collect(),
        theta: ThetaConvention::Unit,
        fusion,
        amplitude_plus,
        amplitude_minus: None,
        unitary: true,
    })
}

/// The pointed multi-fusion category obtained by idempotent completion of a generalized
/// categorical group. Sectors are the characters of `A`; the simple `(g, χ)` lies in sector
/// `(χ, φ(ḡ, χ))`.
pub fn build_gcg(gcg: &GcgData) -> Result<SmfcData> {
    let report = gcg.check_cocycles(BUILD_TOL);
    if let Some(fail) = report.failures().next() {
        return Err(Error::Validation {
            check: fail.name.clone(),
            detail: fail.detail.clone().unwrap_or_default(),
        });
    }
    let g = gcg.group();
    let n = g.order();
    let m = gcg.num_chars();
    let id = |h: usize, chi: usize| (h * m + chi) as LabelId;
    let sector_name = |chi: usize| format!("chi{chi}");

    let labels = (0..n * m)
        .map(|x| {
            let (h, chi) = (x / m, x % m);
            let target = gcg.phi_index(g.inv(h), chi);
            SimpleLabel {
                name: format!("g{h}.chi{chi}"),
                source: chi,
                target,
                dim: 1.0,
                dual: id(g.inv(h), target),
            }
        })
        .collect();
    let mut fusion = Vec::with_capacity(n * n * m);
    for h1 in 0..n {
        for chi in 0..m {
            let chi2 = gcg.phi_index(g.inv(h1), chi);
            for h2 in 0..n {
                fusion.push([id(h1, chi), id(h2, chi2), id(g.mul(h1, h2), chi)]);
            }
        }
    }
    let mut plus = Vec::with_capacity(m * n * n * n);
    let mut minus = Vec::with_capacity(m * n * n * n);
    for chi0 in 0..m {
        for g01 in 0..n {
            let chi1 = gcg.phi_index(g.inv(g01), chi0);
            for g12 in 0..n {
                let chi2 = gcg.phi_index(g.inv(g12), chi1);
                let g02 = g.mul(g01, g12);
                for g23 in 0..n {
                    let g13 = g.mul(g12, g23);
                    let g03 = g.mul(g02, g23);
                    let key = [id(g01, chi0), id(g02, chi0), id(g03, chi0), id(g12, chi1), id(g13, chi1), id(g23, chi2)];
                    let (p, q) = match gcg.associator_phase(g01, g12, g23, chi0) {
                        Some(ph) => (ph.to_complex(), (-ph).to_complex()),
                        None => {
                            let z = gcg.associator(g01, g12, g23, chi0);
                            (z, z.inv())
                        }
                    };
                    plus.push((key, p));
                    minus.push((key, q));
                }
            }
        }
    }
    SmfcData::new(SmfcParts {
        index_set: (0..m).map(sector_name).collect(),
        labels,
        units: (0..m).map(|chi| id(g.identity(), chi)).collect(),
        theta: ThetaConvention::Unit,
        fusion,
        amplitude_plus: plus,
        amplitude_minus: Some(minus),
        unitary: false,
    })
}

/// Dijkgraaf–Witten data for `group` twisted by `omega` (indexed like [`GcgData::omega`]).
pub fn build_dijkgraaf_witten(group: &FiniteGroup, omega: Vec<Phase>) -> Result<SmfcData> {
    build_gcg(&GcgData::dijkgraaf_witten(group.clone(), omega)?)
}

/// A one-sector fusion category together with a grading of its labels by a finite group.
#[derive(Clone, Debug)]
pub struct GradedFusionInput {
    pub category: SmfcData,
    pub group: FiniteGroup,
    /// Degree of each label, indexed by label id.
    pub grading: Vec<usize>,
}

pub const GRADED_FORMAT: &str = "smfc-graded/1";

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GradedFile {
    format: String,
    category: serde_json::Value,
    group: Vec<Vec<usize>>,
    grading: BTreeMap<String, usize>,
}

impl GradedFusionInput {
    /// Parses `smfc-graded/1`: an inline `smfc-category/1` object, a Cayley table, and a map
    /// from label names to group elements.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: GradedFile = from_json_str(text)?;
        if file.format != GRADED_FORMAT {
            return Err(Error::Schema {
                pointer: "/format".into(),
                message: format!("expected \"{GRADED_FORMAT}\", found \"{}\"", file.format),
            });
        }
        let category = SmfcData::from_json(&file.category.to_string()).map_err(|e| match e {
            Error::Schema { pointer, message } => Error::Schema {
                pointer: format!("/category{pointer}"),
                message,
            },
            other => other,
        })?;
        let group = FiniteGroup::from_table(file.group)?;
        let mut grading = Vec::with_capacity(category.labels().len());
        for l in category.labels() {
            let g = *file
                .grading
                .get(&l.name)
                .ok_or_else(|| Error::MissingEntry { table: "grading", key: l.name.clone() })?;
            group.check_index(g)?;
            grading.push(g);
        }
        Ok(GradedFusionInput { category, group, grading })
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        GradedFusionInput::from_json(&std::fs::read_to_string(path)?)
    }

    fn check(&self) -> Result<()> {
        let cat = &self.category;
        let g = &self.group;
        if cat.num_sectors() != 1 {
            return Err(Error::invalid("graded lift input must have a single sector"));
        }
        if self.grading.len() != cat.labels().len() {
            return Err(Error::invalid("grading must assign a degree to every label"));
        }
        let deg = |x: LabelId| self.grading[x as usize];
        if deg(cat.unit(0)) != g.identity() {
            return Err(Error::invalid("grading: the unit must have degree e"));
        }
        for &[a, b, c] in cat.fusion() {
            if g.mul(deg(a), deg(b)) != deg(c) {
                return Err(Error::invalid(format!(
                    "grading incompatible with fusion triple {}: deg {}·{} ≠ {}",
                    cat.triple_name(a, b, c),
                    deg(a),
                    deg(b),
                    deg(c)
                )));
            }
        }
        for (x, l) in cat.labels().iter().enumerate() {
            if deg(l.dual) != g.inv(deg(x as LabelId)) {
                return Err(Error::invalid(format!("grading: deg({}*) ≠ deg({})⁻¹", l.name, l.name)));
            }
        }
        let report = cat.validate(BUILD_TOL);
        if let Some(fail) = report.failures().next() {
            return Err(Error::Validation {
                check: fail.name.clone(),
                detail: fail.detail.clone().unwrap_or_default(),
            });
        }
        Ok(())
    }
}

/// Lifts a `G`-graded fusion category to a multi-fusion category indexed by `G` whose
/// `(g, h)` sector holds the labels of degree `g⁻¹h`.
pub fn build_graded_lift(input: &GradedFusionInput) -> Result<SmfcData> {
    input.check()?;
    let cat = &input.category;
    let g = &input.group;
    let n = g.order();
    let nl = cat.labels().len();
    let deg = |x: LabelId| input.grading[x as usize];
    let id = |h: usize, x: LabelId| (h * nl + x as usize) as LabelId;

    let mut labels = Vec::with_capacity(n * nl);
    for h in 0..n {
        for (x, l) in cat.labels().iter().enumerate() {
            let target = g.mul(h, deg(x as LabelId));
            labels.push(SimpleLabel {
                name: format!("{h}:{}", l.name),
                source: h,
                target,
                dim: l.dim,
                dual: id(target, l.dual),
            });
        }
    }
    let mut fusion = Vec::with_capacity(n * cat.fusion().len());
    for h in 0..n {
        for &[a, b, c] in cat.fusion() {
            fusion.push([id(h, a), id(g.mul(h, deg(a)), b), id(h, c)]);
        }
    }
    let keys = cat.colorable_keys();
    let lift_key = |h0: usize, k: &TetKey| -> TetKey {
        let h1 = g.mul(h0, deg(k[0]));
        let h2 = g.mul(h0, deg(k[1]));
        [id(h0, k[0]), id(h0, k[1]), id(h0, k[2]), id(h1, k[3]), id(h1, k[4]), id(h2, k[5])]
    };
    let table = |sign| -> Result<Vec<(TetKey, Complex64)>> {
        let mut out = Vec::with_capacity(n * keys.len());
        for h0 in 0..n {
            for k in &keys {
                out.push((lift_key(h0, k), cat.amplitude(k, sign)?));
            }
        }
        Ok(out)
    };
    let amplitude_minus = if cat.has_explicit_minus() {
        Some(table(crate::category::Sign::Minus)?)
    } else {
        None
    };
    SmfcData::new(SmfcParts {
        index_set: (0..n).map(|h| format!("g{h}")).collect(),
        labels,
        units: (0..n).map(|h| id(h, cat.unit(0))).collect(),
        theta: cat.theta_convention(),
        fusion,
        amplitude_plus: table(crate::category::Sign::Plus)?,
        amplitude_minus,
        unitary: cat.is_unitary(),
    })
}
