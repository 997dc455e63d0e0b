//! Skeletal data of a multiplicity-free spherical multi-fusion category.
//!
//! A category is stored in a fixed basis gauge: for every admissible triple `(a, b, c)`
//! (meaning `c` occurs in `a ⊗ b`) a pair of basis vectors is fixed, with pairing `θ(a, b, c)`
//! given by the [`ThetaConvention`]. Tetrahedral amplitudes `Z̃±` are stored relative to that
//! gauge, keyed by the six edge labels of a tetrahedron `(0123)` in the order
//! `(01), (02), (03), (12), (13), (23)`.

mod io;
mod validate;

use std::collections::{HashMap, HashSet};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub use io::CATEGORY_FORMAT;
pub use validate::validate_category;

/// Index of a simple label inside an [`SmfcData`].
pub type LabelId = u32;

/// Labels on the edges `(01), (02), (03), (12), (13), (23)` of a tetrahedron.
pub type TetKey = [LabelId; 6];

/// Local positions of the six edges of a tetrahedron, in key order.
pub const TET_EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Position of edge `(i, j)` with `i < j` in [`TET_EDGES`].
pub const fn edge_slot(i: usize, j: usize) -> usize {
    match (i, j) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("not an edge of the tetrahedron"),
    }
}

/// The face triples `(ij, jk, ik)` of the faces `(123), (023), (013), (012)` as key slots.
pub const TET_FACE_TRIPLES: [[usize; 3]; 4] = [[3, 5, 4], [1, 5, 2], [0, 4, 2], [0, 3, 1]];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ThetaConvention {
    /// `θ(a, b, c) = 1`.
    Unit,
    /// `θ(a, b, c) = √(d_a d_b d_c)`.
    SqrtDims,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_orientation(eps: i8) -> Sign {
        if eps >= 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimpleLabel {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub dim: f64,
    pub dual: LabelId,
}

/// Raw ingredients of an [`SmfcData`], validated by [`SmfcData::new`].
#[derive(Clone, Debug)]
pub struct SmfcParts {
    pub index_set: Vec<String>,
    pub labels: Vec<SimpleLabel>,
    /// Unit label of each sector `(i, i)`.
    pub units: Vec<LabelId>,
    pub theta: ThetaConvention,
    /// Admissible triples `(a, b, c)`, i.e. `N_ab^c = 1`.
    pub fusion: Vec<[LabelId; 3]>,
    pub amplitude_plus: Vec<(TetKey, Complex64)>,
    pub amplitude_minus: Option<Vec<(TetKey, Complex64)>>,
    /// With no explicit `amplitude_minus`, `Z̃⁻` is the entrywise conjugate of `Z̃⁺`.
    pub unitary: bool,
}

/// A special spherical multi-fusion category in skeletal, multiplicity-free form.
#[derive(Clone, Debug)]
pub struct SmfcData {
    index_set: Vec<String>,
    labels: Vec<SimpleLabel>,
    units: Vec<LabelId>,
    theta: ThetaConvention,
    fusion: Vec<[LabelId; 3]>,
    unitary: bool,
    plus: HashMap<TetKey, Complex64>,
    minus: Option<HashMap<TetKey, Complex64>>,
    admissible: HashSet<[LabelId; 3]>,
    by_first: Vec<Vec<(LabelId, LabelId)>>,
    by_pair: HashMap<(LabelId, LabelId), Vec<LabelId>>,
    by_third: Vec<Vec<(LabelId, LabelId)>>,
    sector_labels: Vec<Vec<LabelId>>,
}

impl PartialEq for SmfcData {
    fn eq(&self, other: &Self) -> bool {
        self.index_set == other.index_set
            && self.labels == other.labels
            && self.units == other.units
            && self.theta == other.theta
            && self.admissible == other.admissible
            && self.unitary == other.unitary
            && self.plus == other.plus
            && self.minus == other.minus
    }
}

/// Sector dimensions `K(C_ij)`, row dimensions `K(C_i)` and the total `K(C)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DimensionReport {
    /// `sectors[i][j] = K(C_ij)`.
    pub sectors: Vec<Vec<f64>>,
    pub rows: Vec<f64>,
    pub total: f64,
    pub special: bool,
    /// The common row dimension when special.
    pub k: Option<f64>,
}

const SPECIAL_TOL: f64 = 1e-9;

impl SmfcData {
    pub fn new(parts: SmfcParts) -> Result<Self> {
        let SmfcParts {
            index_set,
            labels,
            units,
            theta,
            mut fusion,
            amplitude_plus,
            amplitude_minus,
            unitary,
        } = parts;
        let n_sec = index_set.len();
        let n_lab = labels.len();
        if n_sec == 0 {
            return Err(Error::invalid("index set is empty"));
        }
        let mut seen = HashSet::new();
        for s in &index_set {
            if !seen.insert(s) {
                return Err(Error::invalid(format!("duplicate sector `{s}`")));
            }
        }
        let mut names = HashSet::new();
        for l in &labels {
            if !names.insert(&l.name) {
                return Err(Error::invalid(format!("duplicate label `{}`", l.name)));
            }
            if l.source >= n_sec || l.target >= n_sec {
                return Err(Error::invalid(format!("label `{}` lies in an unknown sector", l.name)));
            }
            if !(l.dim.is_finite() && l.dim > 0.0) {
                return Err(Error::invalid(format!("label `{}` has non-positive dimension {}", l.name, l.dim)));
            }
            if l.dual as usize >= n_lab {
                return Err(Error::invalid(format!("label `{}` has no valid dual", l.name)));
            }
        }
        for l in &labels {
            let d = &labels[l.dual as usize];
            if labels[d.dual as usize].name != l.name {
                return Err(Error::invalid(format!(
                    "dual is not an involution at label `{}` (dual `{}` has dual `{}`)",
                    l.name, d.name, labels[d.dual as usize].name
                )));
            }
            if d.source != l.target || d.target != l.source {
                return Err(Error::invalid(format!(
                    "dual `{}` of label `{}` is not in the transposed sector",
                    d.name, l.name
                )));
            }
            if (d.dim - l.dim).abs() > SPECIAL_TOL * l.dim {
                return Err(Error::invalid(format!("label `{}` and its dual `{}` have different dimensions", l.name, d.name)));
            }
        }
        if units.len() != n_sec {
            return Err(Error::invalid(format!("{} unit labels for {} sectors", units.len(), n_sec)));
        }
        for (i, &u) in units.iter().enumerate() {
            let l = labels
                .get(u as usize)
                .ok_or_else(|| Error::invalid(format!("unit of sector `{}` is not a label", index_set[i])))?;
            if l.source != i || l.target != i || (l.dim - 1.0).abs() > SPECIAL_TOL {
                return Err(Error::invalid(format!(
                    "unit `{}` of sector `{}` must lie in sector ({0},{0}) with dimension 1",
                    l.name, index_set[i]
                )));
            }
        }

        fusion.sort_unstable();
        let mut admissible = HashSet::with_capacity(fusion.len());
        for t @ &[a, b, c] in &fusion {
            if [a, b, c].iter().any(|&x| x as usize >= n_lab) {
                return Err(Error::invalid(format!("fusion triple {t:?} references an unknown label")));
            }
            let (la, lb, lc) = (&labels[a as usize], &labels[b as usize], &labels[c as usize]);
            if la.target != lb.source || lc.source != la.source || lc.target != lb.target {
                return Err(Error::invalid(format!(
                    "fusion triple ({}, {}, {}) is not sector compatible",
                    la.name, lb.name, lc.name
                )));
            }
            if !admissible.insert(*t) {
                return Err(Error::invalid(format!("duplicate fusion triple ({}, {}, {})", la.name, lb.name, lc.name)));
            }
        }
        for (x, l) in labels.iter().enumerate() {
            let x = x as LabelId;
            let left = [units[l.source], x, x];
            let right = [x, units[l.target], x];
            for t in [left, right] {
                if !admissible.contains(&t) {
                    return Err(Error::invalid(format!(
                        "unit triple ({}, {}, {}) is not admissible",
                        labels[t[0] as usize].name, labels[t[1] as usize].name, labels[t[2] as usize].name
                    )));
                }
            }
        }

        let mut by_first = vec![Vec::new(); n_lab];
        let mut by_third = vec![Vec::new(); n_lab];
        let mut by_pair: HashMap<(LabelId, LabelId), Vec<LabelId>> = HashMap::new();
        for &[a, b, c] in &fusion {
            by_first[a as usize].push((b, c));
            by_third[c as usize].push((a, b));
            by_pair.entry((a, b)).or_default().push(c);
        }
        let mut sector_labels = vec![Vec::new(); n_sec * n_sec];
        for (x, l) in labels.iter().enumerate() {
            sector_labels[l.source * n_sec + l.target].push(x as LabelId);
        }

        let mut cat = SmfcData {
            index_set,
            labels,
            units,
            theta,
            fusion,
            unitary,
            plus: HashMap::new(),
            minus: None,
            admissible,
            by_first,
            by_pair,
            by_third,
            sector_labels,
        };
        cat.plus = cat.amplitude_map(amplitude_plus, "amplitude_plus")?;
        cat.minus = match amplitude_minus {
            Some(m) => Some(cat.amplitude_map(m, "amplitude_minus")?),
            None if unitary => None,
            None => return Err(Error::invalid("amplitude_minus is required when the category is not unitary")),
        };
        Ok(cat)
    }

    fn amplitude_map(&self, entries: Vec<(TetKey, Complex64)>, table: &'static str) -> Result<HashMap<TetKey, Complex64>> {
        let mut map = HashMap::with_capacity(entries.len());
        for (key, value) in entries {
            if key.iter().any(|&x| x as usize >= self.labels.len()) {
                return Err(Error::invalid(format!("{table}: key references an unknown label")));
            }
            if !self.is_colorable(&key) {
                return Err(Error::invalid(format!("{table}: key {} is not tet-colorable", self.key_name(&key))));
            }
            if !value.is_finite() {
                return Err(Error::invalid(format!("{table}: value at {} is not finite", self.key_name(&key))));
            }
            if map.insert(key, value).is_some() {
                return Err(Error::invalid(format!("{table}: duplicate key {}", self.key_name(&key))));
            }
        }
        if let Some(missing) = self.colorable_keys().into_iter().find(|k| !map.contains_key(k)) {
            return Err(Error::MissingEntry {
                table,
                key: self.key_name(&missing),
            });
        }
        Ok(map)
    }

    pub fn index_set(&self) -> &[String] {
        &self.index_set
    }

    pub fn num_sectors(&self) -> usize {
        self.index_set.len()
    }

    pub fn labels(&self) -> &[SimpleLabel] {
        &self.labels
    }

    pub fn label(&self, x: LabelId) -> &SimpleLabel {
        &self.labels[x as usize]
    }

    pub fn label_id(&self, name: &str) -> Option<LabelId> {
        self.labels.iter().position(|l| l.name == name).map(|i| i as LabelId)
    }

    #[inline]
    pub fn dim(&self, x: LabelId) -> f64 {
        self.labels[x as usize].dim
    }

    pub fn unit(&self, sector: usize) -> LabelId {
        self.units[sector]
    }

    pub fn units(&self) -> &[LabelId] {
        &self.units
    }

    pub fn theta_convention(&self) -> ThetaConvention {
        self.theta
    }

    /// Changes the θ convention without touching the amplitude tables.
    pub fn set_theta_convention(&mut self, theta: ThetaConvention) {
        self.theta = theta;
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary
    }

    pub fn has_explicit_minus(&self) -> bool {
        self.minus.is_some()
    }

    pub fn fusion(&self) -> &[[LabelId; 3]] {
        &self.fusion
    }

    /// `N_ab^c ∈ {0, 1}`.
    #[inline]
    pub fn admissible(&self, a: LabelId, b: LabelId, c: LabelId) -> bool {
        self.admissible.contains(&[a, b, c])
    }

    /// All `(b, c)` with `(a, b, c)` admissible.
    pub fn fusions_from(&self, a: LabelId) -> &[(LabelId, LabelId)] {
        &self.by_first[a as usize]
    }

    /// All `c` with `(a, b, c)` admissible.
    pub fn fusion_products(&self, a: LabelId, b: LabelId) -> &[LabelId] {
        self.by_pair.get(&(a, b)).map_or(&[], Vec::as_slice)
    }

    /// All `(a, b)` with `(a, b, c)` admissible.
    pub fn fusions_into(&self, c: LabelId) -> &[(LabelId, LabelId)] {
        &self.by_third[c as usize]
    }

    /// Labels in sector `(i, j)`.
    #[inline]
    pub fn sector(&self, i: usize, j: usize) -> &[LabelId] {
        &self.sector_labels[i * self.index_set.len() + j]
    }

    /// `θ(a, b, c)` under the category's convention.
    #[inline]
    pub fn theta(&self, a: LabelId, b: LabelId, c: LabelId) -> f64 {
        match self.theta {
            ThetaConvention::Unit => 1.0,
            ThetaConvention::SqrtDims => (self.dim(a) * self.dim(b) * self.dim(c)).sqrt(),
        }
    }

    /// Whether all four faces of the colored tetrahedron are admissible.
    pub fn is_colorable(&self, key: &TetKey) -> bool {
        TET_FACE_TRIPLES
            .iter()
            .all(|&[ij, jk, ik]| self.admissible(key[ij], key[jk], key[ik]))
    }

    /// Every tet-colorable key, in lexicographic order.
    pub fn colorable_keys(&self) -> Vec<TetKey> {
        let mut keys = Vec::new();
        for &[e01, e12, e02] in &self.fusion {
            for &(e23, e03) in self.fusions_from(e02) {
                for &e13 in self.fusion_products(e12, e23) {
                    if self.admissible(e01, e13, e03) {
                        keys.push([e01, e02, e03, e12, e13, e23]);
                    }
                }
            }
        }
        keys.sort_unstable();
        keys
    }

    /// `Z̃^±` of a colored tetrahedron.
    pub fn amplitude(&self, key: &TetKey, sign: Sign) -> Result<Complex64> {
        let lookup = |m: &HashMap<TetKey, Complex64>| m.get(key).copied().ok_or_else(|| Error::Inadmissible(self.key_name(key)));
        match (sign, &self.minus) {
            (Sign::Plus, _) => lookup(&self.plus),
            (Sign::Minus, Some(m)) => lookup(m),
            (Sign::Minus, None) => lookup(&self.plus).map(|z| z.conj()),
        }
    }

    /// Overwrites one amplitude entry. The key must be colorable.
    pub fn set_amplitude(&mut self, key: &TetKey, sign: Sign, value: Complex64) -> Result<()> {
        if !self.is_colorable(key) {
            return Err(Error::Inadmissible(self.key_name(key)));
        }
        match sign {
            Sign::Plus => {
                self.plus.insert(*key, value);
            }
            Sign::Minus => {
                if self.minus.is_none() {
                    self.minus = Some(self.plus.iter().map(|(k, z)| (*k, z.conj())).collect());
                }
                self.minus.as_mut().expect("just set").insert(*key, value);
            }
        }
        Ok(())
    }

    pub fn key_name(&self, key: &TetKey) -> String {
        let parts: Vec<String> = TET_EDGES
            .iter()
            .zip(key)
            .map(|(&(i, j), &x)| {
                let name = self.labels.get(x as usize).map_or("?", |l| l.name.as_str());
                format!("{i}{j}={name}")
            })
            .collect();
        format!("[{}]", parts.join(", "))
    }

    pub(crate) fn triple_name(&self, a: LabelId, b: LabelId, c: LabelId) -> String {
        format!("({}, {}, {})", self.label(a).name, self.label(b).name, self.label(c).name)
    }

    /// Sector, row and total dimensions, and whether all rows agree.
    pub fn dims_report(&self) -> DimensionReport {
        let n = self.num_sectors();
        let sectors: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| self.sector(i, j).iter().map(|&x| self.dim(x).powi(2)).sum()).collect())
            .collect();
        let rows: Vec<f64> = sectors.iter().map(|r| r.iter().sum()).collect();
        let total = rows.iter().sum();
        let k0 = rows[0];
        let special = rows.iter().all(|&k| (k - k0).abs() <= SPECIAL_TOL * k0.max(1.0));
        DimensionReport {
            sectors,
            rows,
            total,
            special,
            k: special.then_some(k0),
        }
    }
}
