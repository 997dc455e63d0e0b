use num_complex::Complex64;
use rayon::prelude::*;

use super::{LabelId, Sign, SmfcData, TetKey};
use crate::report::{Check, ValidationReport};

fn close(lhs: Complex64, rhs: Complex64, tol: f64) -> bool {
    (lhs - rhs).norm() <= tol * lhs.norm().max(rhs.norm()).max(1.0)
}

impl SmfcData {
    /// Runs every validator: duality/sector structure, specialness, the handle identity,
    /// orthogonality and the pentagon identity.
    pub fn validate(&self, tol: f64) -> ValidationReport {
        let mut report = ValidationReport::default();
        report.push(Check::from_failure("structure", self.structure_violation()));
        let dims = self.dims_report();
        report.push(if dims.special {
            Check::pass("special")
        } else {
            Check::fail("special", format!("row dimensions {:?}", dims.rows))
        });
        report.push(Check::from_failure("handle", self.handle_violation(tol)));
        report.push(Check::from_failure("orthogonality", self.orthogonality_violation(tol)));
        report.push(Check::from_failure("pentagon", self.pentagon_violation(tol)));
        report
    }

    fn structure_violation(&self) -> Option<String> {
        for (x, l) in self.labels.iter().enumerate() {
            let x = x as LabelId;
            let d = self.label(l.dual);
            if self.label(d.dual).name != l.name || d.source != l.target || d.target != l.source {
                return Some(format!("dual structure broken at `{}`", l.name));
            }
            if !self.admissible(self.unit(l.source), x, x) || !self.admissible(x, self.unit(l.target), x) {
                return Some(format!("unit triples of `{}` are not admissible", l.name));
            }
        }
        for &[a, b, c] in &self.fusion {
            let (la, lb, lc) = (self.label(a), self.label(b), self.label(c));
            if la.target != lb.source || lc.source != la.source || lc.target != lb.target {
                return Some(format!("triple {} is not sector compatible", self.triple_name(a, b, c)));
            }
        }
        None
    }

    // Σ_k Σ_{a ∈ Λ_ik, b ∈ Λ_kj} d_a d_b / d_c N_ab^c = K(C_i) for each c ∈ Λ_ij
    fn handle_violation(&self, tol: f64) -> Option<String> {
        let rows = self.dims_report().rows;
        for (c, l) in self.labels.iter().enumerate() {
            let c = c as LabelId;
            let sum: f64 = self.fusions_into(c).iter().map(|&(a, b)| self.dim(a) * self.dim(b)).sum::<f64>() / l.dim;
            let want = rows[l.source];
            if (sum - want).abs() > tol * want.max(1.0) {
                return Some(format!("label `{}`: Σ d_a d_b / d_c = {sum} but K(C_i) = {want}", l.name));
            }
        }
        None
    }

    fn minus_plus(&self, key: &TetKey) -> Complex64 {
        let p = self.amplitude(key, Sign::Plus).expect("colorable key");
        let m = self.amplitude(key, Sign::Minus).expect("colorable key");
        p * m
    }

    // d_02 Σ_x d_x Z̃⁻ Z̃⁺ / (θ(123)θ(013)θ(023)θ(012)) = 1
    fn orthogonality_violation(&self, tol: f64) -> Option<String> {
        self.fusion.par_iter().find_map_first(|&[e01, e12, e02]| {
            for &(e23, e03) in self.fusions_from(e02) {
                let mut sum = Complex64::new(0.0, 0.0);
                for &x in self.fusion_products(e12, e23) {
                    if !self.admissible(e01, x, e03) {
                        continue;
                    }
                    let key = [e01, e02, e03, e12, x, e23];
                    let theta = self.theta(e12, e23, x) * self.theta(e01, x, e03) * self.theta(e02, e23, e03) * self.theta(e01, e12, e02);
                    sum += self.minus_plus(&key) * (self.dim(x) / theta);
                }
                sum *= self.dim(e02);
                if !close(sum, Complex64::new(1.0, 0.0), tol) {
                    return Some(format!(
                        "edges 01={}, 02={}, 03={}, 12={}, 23={}: sum = {sum}",
                        self.label(e01).name,
                        self.label(e02).name,
                        self.label(e03).name,
                        self.label(e12).name,
                        self.label(e23).name
                    ));
                }
            }
            None
        })
    }

    /// `Z̃⁺(ijkl) / (θ(jkl)θ(ijl))`, the amplitude divided by θ of its two positive faces.
    fn normalized_plus(&self, key: &TetKey) -> Complex64 {
        let [e01, _, e03, e12, e13, e23] = *key;
        let theta = self.theta(e12, e23, e13) * self.theta(e01, e13, e03);
        self.amplitude(key, Sign::Plus).expect("colorable key") / theta
    }

    // n(0234) n(0124) = Σ_x d_x n(0123) n(0134) n(1234), x on edge 13
    fn pentagon_violation(&self, tol: f64) -> Option<String> {
        self.fusion.par_iter().find_map_first(|&[e01, e12, e02]| {
            for &(e23, e03) in self.fusions_from(e02) {
                for &(e34, e04) in self.fusions_from(e03) {
                    for &e24 in self.fusion_products(e23, e34) {
                        for &e14 in self.fusion_products(e12, e24) {
                            if !self.admissible(e01, e14, e04) {
                                continue;
                            }
                            let lhs = if self.admissible(e02, e24, e04) {
                                self.normalized_plus(&[e02, e03, e04, e23, e24, e34])
                                    * self.normalized_plus(&[e01, e02, e04, e12, e14, e24])
                            } else {
                                Complex64::new(0.0, 0.0)
                            };
                            let mut rhs = Complex64::new(0.0, 0.0);
                            for &x in self.fusion_products(e12, e23) {
                                if !(self.admissible(e01, x, e03) && self.admissible(x, e34, e14)) {
                                    continue;
                                }
                                rhs += self.normalized_plus(&[e01, e02, e03, e12, x, e23])
                                    * self.normalized_plus(&[e01, e03, e04, x, e14, e34])
                                    * self.normalized_plus(&[e12, x, e14, e23, e24, e34])
                                    * self.dim(x);
                            }
                            if !close(lhs, rhs, tol) {
                                let n = |x: LabelId| self.label(x).name.as_str();
                                return Some(format!(
                                    "4-simplex edges 01={}, 02={}, 03={}, 04={}, 12={}, 14={}, 23={}, 24={}, 34={}: {lhs} vs {rhs}",
                                    n(e01),
                                    n(e02),
                                    n(e03),
                                    n(e04),
                                    n(e12),
                                    n(e14),
                                    n(e23),
                                    n(e24),
                                    n(e34)
                                ));
                            }
                        }
                    }
                }
            }
            None
        })
    }
}

/// Validates `cat` at tolerance `tol`; see [`SmfcData::validate`].
pub fn validate_category(cat: &SmfcData, tol: f64) -> crate::report::ValidationReport {
    cat.validate(tol)
}
