use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::abelian::{AbelianElement, AbelianGroup, Character, Phase};
use crate::algebra::action::GAction;
use crate::algebra::group::FiniteGroup;
use crate::error::{from_json_str, Error, Result};
use crate::report::{Check, ValidationReport};

pub const GCG_FORMAT: &str = "smfc-gcg/1";

/// Data of a generalized categorical group `C(G, A, λ, a)`.
///
/// The associator is either given by a pair `(ω, β)` with `a(g1,g2,g3)_χ = ω(g1,g2,g3)·χ(β(g1,g2,g3))`,
/// or by an explicit table `a(g1,g2,g3)_χ` of nonzero complex numbers. Triple tables are
/// indexed by `(g1·n + g2)·n + g3` with `n = |G|`.
#[derive(Clone, Debug, PartialEq)]
pub struct GcgData {
    group: FiniteGroup,
    abelian: AbelianGroup,
    action: GAction,
    lambda: Vec<Character>,
    omega: Vec<Phase>,
    beta: Vec<AbelianElement>,
    associator: Option<Vec<Complex64>>,
    // ᵍχ and φ(g, χ) as character indices, row-major in g
    char_action: Vec<usize>,
    phi: Vec<usize>,
}

impl GcgData {
    /// Trivial action and cochains.
    pub fn new(group: FiniteGroup, abelian: AbelianGroup) -> Self {
        let n = group.order();
        let action = GAction::trivial(&group, &abelian);
        let lambda = vec![Character(abelian.zero()); n];
        let mut data = GcgData {
            omega: vec![Phase::ZERO; n * n * n],
            beta: vec![abelian.zero(); n * n * n],
            group,
            abelian,
            action,
            lambda,
            associator: None,
            char_action: Vec::new(),
            phi: Vec::new(),
        };
        data.rebuild_caches();
        data
    }

    /// Dijkgraaf–Witten data: trivial `A` and a `U(1)`-valued 3-cochain.
    pub fn dijkgraaf_witten(group: FiniteGroup, omega: Vec<Phase>) -> Result<Self> {
        GcgData::new(group, AbelianGroup::trivial()).with_omega(omega)
    }

    pub fn with_action(mut self, action: GAction) -> Self {
        self.action = action;
        self.rebuild_caches();
        self
    }

    pub fn with_lambda(mut self, lambda: Vec<Character>) -> Result<Self> {
        if lambda.len() != self.group.order() {
            return Err(Error::MissingEntry {
                table: "lambda",
                key: format!("{}", lambda.len()),
            });
        }
        for chi in &lambda {
            self.abelian.check_element(chi.exponents())?;
        }
        self.lambda = lambda;
        self.rebuild_caches();
        Ok(self)
    }

    pub fn with_omega(mut self, omega: Vec<Phase>) -> Result<Self> {
        let n = self.group.order();
        if omega.len() != n * n * n {
            return Err(Error::MissingEntry {
                table: "omega",
                key: self.triple_key(omega.len().min(n * n * n - 1)),
            });
        }
        self.omega = omega;
        Ok(self)
    }

    pub fn with_beta(mut self, beta: Vec<AbelianElement>) -> Result<Self> {
        let n = self.group.order();
        if beta.len() != n * n * n {
            return Err(Error::MissingEntry {
                table: "beta",
                key: self.triple_key(beta.len().min(n * n * n - 1)),
            });
        }
        for b in &beta {
            self.abelian.check_element(b)?;
        }
        self.beta = beta;
        Ok(self)
    }

    /// Replaces `(ω, β)` by an explicit associator table indexed by `triple·|Â| + χ`.
    pub fn with_associator(mut self, table: Vec<Complex64>) -> Result<Self> {
        let n = self.group.order();
        let m = self.abelian.order();
        if table.len() != n * n * n * m {
            return Err(Error::MissingEntry {
                table: "associator",
                key: format!("entry {}", table.len()),
            });
        }
        if let Some(i) = table.iter().position(|z| z.norm() == 0.0 || !z.is_finite()) {
            return Err(Error::invalid(format!(
                "associator entry ({}; χ#{}) is not a nonzero finite number",
                self.triple_key(i / m),
                i % m
            )));
        }
        self.associator = Some(table);
        Ok(self)
    }

    fn rebuild_caches(&mut self) {
        let n = self.group.order();
        let m = self.abelian.order();
        let mut char_action = Vec::with_capacity(n * m);
        let mut phi = Vec::with_capacity(n * m);
        for g in 0..n {
            for c in 0..m {
                let chi = self.abelian.character(c);
                let gchi = self
                    .action
                    .act_on_char(&self.group, &self.abelian, g, &chi)
                    .expect("indices in range");
                char_action.push(self.abelian.char_index(&gchi));
                phi.push(self.abelian.char_index(&self.abelian.char_mul(&self.lambda[g], &gchi)));
            }
        }
        self.char_action = char_action;
        self.phi = phi;
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn abelian(&self) -> &AbelianGroup {
        &self.abelian
    }

    pub fn action(&self) -> &GAction {
        &self.action
    }

    pub fn lambda(&self, g: usize) -> &Character {
        &self.lambda[g]
    }

    pub fn has_general_associator(&self) -> bool {
        self.associator.is_some()
    }

    /// Number of characters `|Â|`.
    pub fn num_chars(&self) -> usize {
        self.abelian.order()
    }

    #[inline]
    pub fn triple(&self, g1: usize, g2: usize, g3: usize) -> usize {
        let n = self.group.order();
        (g1 * n + g2) * n + g3
    }

    fn triple_key(&self, t: usize) -> String {
        let n = self.group.order();
        format!("{},{},{}", t / (n * n), (t / n) % n, t % n)
    }

    pub fn omega(&self, g1: usize, g2: usize, g3: usize) -> Phase {
        self.omega[self.triple(g1, g2, g3)]
    }

    pub fn beta(&self, g1: usize, g2: usize, g3: usize) -> &[u32] {
        &self.beta[self.triple(g1, g2, g3)]
    }

    /// `ᵍχ` on character indices.
    #[inline]
    pub fn char_act_index(&self, g: usize, chi: usize) -> usize {
        self.char_action[g * self.abelian.order() + chi]
    }

    /// `φ(g, χ) = λ(g)·ᵍχ` on character indices.
    #[inline]
    pub fn phi_index(&self, g: usize, chi: usize) -> usize {
        self.phi[g * self.abelian.order() + chi]
    }

    pub fn act_on_char(&self, g: usize, chi: &Character) -> Result<Character> {
        self.action.act_on_char(&self.group, &self.abelian, g, chi)
    }

    /// `φ(g, χ) = λ(g)·ᵍχ`.
    pub fn phi_action(&self, g: usize, chi: &Character) -> Result<Character> {
        let gchi = self.act_on_char(g, chi)?;
        Ok(self.abelian.char_mul(&self.lambda[g], &gchi))
    }

    /// The exact phase of `a(g1,g2,g3)_χ` when the associator comes from `(ω, β)`.
    pub fn associator_phase(&self, g1: usize, g2: usize, g3: usize, chi: usize) -> Option<Phase> {
        if self.associator.is_some() {
            return None;
        }
        let t = self.triple(g1, g2, g3);
        Some(self.omega[t] + self.abelian.pair(&self.abelian.character(chi), &self.beta[t]))
    }

    /// `a(g1,g2,g3)_χ`.
    pub fn associator(&self, g1: usize, g2: usize, g3: usize, chi: usize) -> Complex64 {
        match &self.associator {
            Some(table) => table[self.triple(g1, g2, g3) * self.abelian.order() + chi],
            None => self.associator_phase(g1, g2, g3, chi).expect("ω,β data").to_complex(),
        }
    }

    /// The associator as an explicit table, indexed like [`GcgData::with_associator`].
    pub fn associator_table(&self) -> Vec<Complex64> {
        let n = self.group.order();
        let m = self.abelian.order();
        let mut out = Vec::with_capacity(n * n * n * m);
        for g1 in 0..n {
            for g2 in 0..n {
                for g3 in 0..n {
                    for chi in 0..m {
                        out.push(self.associator(g1, g2, g3, chi));
                    }
                }
            }
        }
        out
    }

    /// Validates every cocycle condition. Each check is independent.
    pub fn check_cocycles(&self, tol: f64) -> ValidationReport {
        let mut report = ValidationReport::default();
        report.push(Check::from_failure("lambda_cocycle", self.lambda_violation()));
        report.push(Check::from_failure("beta_cocycle", self.beta_violation()));
        report.push(Check::from_failure("omega_cocycle", self.omega_violation()));
        report.push(Check::from_failure("cup", self.cup_violation()));
        report.push(Check::from_failure("pentagon", self.pentagon_violation(tol)));
        report
    }

    fn quads(&self) -> impl Iterator<Item = [usize; 4]> {
        let n = self.group.order();
        (0..n * n * n * n).map(move |i| [i / (n * n * n), (i / (n * n)) % n, (i / n) % n, i % n])
    }

    // λ(ḡ2ḡ1) = λ(ḡ2)·^{ḡ2}λ(ḡ1)
    fn lambda_violation(&self) -> Option<String> {
        let g = &self.group;
        let a = &self.abelian;
        for g1 in 0..g.order() {
            for g2 in 0..g.order() {
                let (i1, i2) = (g.inv(g1), g.inv(g2));
                let lhs = a.char_index(&self.lambda[g.mul(i2, i1)]);
                let twisted = self.char_act_index(i2, a.char_index(&self.lambda[i1]));
                let rhs = a.char_index(&a.char_mul(&self.lambda[i2], &a.character(twisted)));
                if lhs != rhs {
                    return Some(format!("λ fails the 1-cocycle condition at (g1,g2)=({g1},{g2})"));
                }
            }
        }
        None
    }

    // ^{g1}β(g2,g3,g4) − β(g1g2,g3,g4) + β(g1,g2g3,g4) − β(g1,g2,g3g4) + β(g1,g2,g3) = 0
    fn beta_violation(&self) -> Option<String> {
        let g = &self.group;
        let a = &self.abelian;
        for [g1, g2, g3, g4] in self.quads() {
            let terms = [
                self.action.act(a, g1, self.beta(g2, g3, g4)),
                a.neg(self.beta(g.mul(g1, g2), g3, g4)),
                self.beta(g1, g.mul(g2, g3), g4).to_vec(),
                a.neg(self.beta(g1, g2, g.mul(g3, g4))),
                self.beta(g1, g2, g3).to_vec(),
            ];
            let sum = terms.iter().fold(a.zero(), |acc, t| a.add(&acc, t));
            if sum != a.zero() {
                return Some(format!("δβ({g1},{g2},{g3},{g4}) = {sum:?}"));
            }
        }
        None
    }

    fn omega_violation(&self) -> Option<String> {
        let g = &self.group;
        for [g1, g2, g3, g4] in self.quads() {
            let d = self.omega(g2, g3, g4) - self.omega(g.mul(g1, g2), g3, g4) + self.omega(g1, g.mul(g2, g3), g4)
                - self.omega(g1, g2, g.mul(g3, g4))
                + self.omega(g1, g2, g3);
            if !d.is_zero() {
                return Some(format!("δω({g1},{g2},{g3},{g4}) = exp(2πi·{d})"));
            }
        }
        None
    }

    // λ(ḡ1)(β(g2,g3,g4)) = 1
    fn cup_violation(&self) -> Option<String> {
        let g = &self.group;
        for [g1, g2, g3, g4] in self.quads() {
            let v = self.abelian.pair(&self.lambda[g.inv(g1)], self.beta(g2, g3, g4));
            if !v.is_zero() {
                return Some(format!("λ(ḡ1)(β(g2,g3,g4)) ≠ 1 at ({g1},{g2},{g3},{g4})"));
            }
        }
        None
    }

    fn pentagon_violation(&self, tol: f64) -> Option<String> {
        let g = &self.group;
        for [g1, g2, g3, g4] in self.quads() {
            for chi in 0..self.abelian.order() {
                let shifted = self.phi_index(g.inv(g1), chi);
                let lhs = self.associator(g.mul(g1, g2), g3, g4, chi) * self.associator(g1, g2, g.mul(g3, g4), chi);
                let rhs = self.associator(g1, g2, g3, chi)
                    * self.associator(g1, g.mul(g2, g3), g4, chi)
                    * self.associator(g2, g3, g4, shifted);
                if (lhs - rhs).norm() > tol * lhs.norm().max(1.0) {
                    return Some(format!(
                        "pentagon fails at (g1,g2,g3,g4)=({g1},{g2},{g3},{g4}), χ#{chi}: {lhs} vs {rhs}"
                    ));
                }
            }
        }
        None
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GcgFile = from_json_str(text)?;
        file.into_data()
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        GcgData::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&GcgFile::from_data(self)).expect("serializable")
    }

    pub fn save(&self, path: impl AsRef<std::path::Path>) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AssociatorEntry {
    g: [usize; 3],
    chi: Vec<u32>,
    value: [f64; 2],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GcgFile {
    format: String,
    group: Vec<Vec<usize>>,
    #[serde(default)]
    abelian: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    action: Option<Vec<Vec<Vec<i64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lambda: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    omega: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    beta: Option<BTreeMap<String, Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    associator: Option<Vec<AssociatorEntry>>,
}

fn triple_keys(n: usize) -> impl Iterator<Item = (usize, String)> {
    (0..n * n * n).map(move |t| (t, format!("{},{},{}", t / (n * n), (t / n) % n, t % n)))
}

impl GcgFile {
    fn into_data(self) -> Result<GcgData> {
        if self.format != GCG_FORMAT {
            return Err(Error::Schema {
                pointer: "/format".into(),
                message: format!("expected \"{GCG_FORMAT}\", found \"{}\"", self.format),
            });
        }
        let group = FiniteGroup::from_table(self.group)?;
        let abelian = AbelianGroup::new(self.abelian)?;
        let n = group.order();
        let mut data = GcgData::new(group, abelian);
        if let Some(m) = self.action {
            let action = GAction::new(&data.group, &data.abelian, m)?;
            data = data.with_action(action);
        }
        if let Some(l) = self.lambda {
            data = data.with_lambda(l.into_iter().map(Character).collect())?;
        }
        if let Some(mut map) = self.omega {
            let mut omega = Vec::with_capacity(n * n * n);
            for (_, key) in triple_keys(n) {
                let s = map.remove(&key).ok_or(Error::MissingEntry { table: "omega", key: key.clone() })?;
                omega.push(s.parse::<Phase>()?);
            }
            if let Some(extra) = map.keys().next() {
                return Err(Error::invalid(format!("omega has unexpected key `{extra}`")));
            }
            data = data.with_omega(omega)?;
        }
        if let Some(mut map) = self.beta {
            let mut beta = Vec::with_capacity(n * n * n);
            for (_, key) in triple_keys(n) {
                beta.push(map.remove(&key).ok_or(Error::MissingEntry { table: "beta", key: key.clone() })?);
            }
            if let Some(extra) = map.keys().next() {
                return Err(Error::invalid(format!("beta has unexpected key `{extra}`")));
            }
            data = data.with_beta(beta)?;
        }
        if let Some(entries) = self.associator {
            let m = data.abelian.order();
            let mut table: Vec<Option<Complex64>> = vec![None; n * n * n * m];
            for e in entries {
                for &g in &e.g {
                    data.group.check_index(g)?;
                }
                data.abelian.check_element(&e.chi)?;
                let idx = data.triple(e.g[0], e.g[1], e.g[2]) * m + data.abelian.index_of(&e.chi);
                table[idx] = Some(Complex64::new(e.value[0], e.value[1]));
            }
            let mut full = Vec::with_capacity(table.len());
            for (i, v) in table.into_iter().enumerate() {
                full.push(v.ok_or_else(|| Error::MissingEntry {
                    table: "associator",
                    key: format!("{};{:?}", data.triple_key(i / m), data.abelian.element(i % m)),
                })?);
            }
            data = data.with_associator(full)?;
        }
        Ok(data)
    }

    fn from_data(d: &GcgData) -> Self {
        let n = d.group.order();
        let trivial_action = GAction::trivial(&d.group, &d.abelian);
        let (omega, beta, associator) = match &d.associator {
            Some(table) => {
                let m = d.abelian.order();
                let entries = table
                    .iter()
                    .enumerate()
                    .map(|(i, z)| {
                        let t = i / m;
                        AssociatorEntry {
                            g: [t / (n * n), (t / n) % n, t % n],
                            chi: d.abelian.element(i % m),
                            value: [z.re, z.im],
                        }
                    })
                    .collect();
                (None, None, Some(entries))
            }
            None => {
                let omega = d
                    .omega
                    .iter()
                    .any(|p| !p.is_zero())
                    .then(|| triple_keys(n).map(|(t, k)| (k, d.omega[t].to_string())).collect());
                let beta = d
                    .beta
                    .iter()
                    .any(|b| b.iter().any(|&x| x != 0))
                    .then(|| triple_keys(n).map(|(t, k)| (k, d.beta[t].clone())).collect());
                (omega, beta, None)
            }
        };
        GcgFile {
            format: GCG_FORMAT.to_string(),
            group: d.group.table().to_vec(),
            abelian: d.abelian.factors().to_vec(),
            action: (d.action != trivial_action).then(|| d.action.matrices().to_vec()),
            lambda: d
                .lambda
                .iter()
                .any(|c| !c.is_trivial())
                .then(|| d.lambda.iter().map(|c| c.0.clone()).collect()),
            omega,
            beta,
            associator,
        }
    }
}
