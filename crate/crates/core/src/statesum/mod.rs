//! The state sum `Z = Σ_F K^{-|T⁰|} Π_edges d Π_triangles θ⁻¹ Π_tets Z̃^{ε}` over colorings,
//! a fast path for categories built from generalized categorical groups, and an exhaustive
//! flat-connection counter used as an independent oracle.

mod engine;
mod oracle;
mod pointed;

use num_complex::Complex64;
use serde::Serialize;

pub use engine::{enumerate_colorings, for_each_coloring, invariant};
pub use oracle::{flat_counting_oracle, DEFAULT_ORACLE_CAP};
pub use pointed::invariant_pointed;

#[derive(Clone, Debug, Default)]
pub struct InvariantOptions {
    /// Worker threads; `None` uses the global pool. The value does not depend on it.
    pub threads: Option<usize>,
    /// Abort once this many search nodes have been visited.
    pub max_nodes: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartitionResult {
    pub value: Complex64,
    /// Search nodes (partial colorings) visited.
    pub colorings_visited: u64,
    /// Complete colorings with every triangle admissible.
    pub colorings_contributing: u64,
    pub seconds: f64,
}

/// `f⁰` on vertices (sector indices) and `f¹` on edges (label ids).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub f0: Vec<usize>,
    pub f1: Vec<crate::category::LabelId>,
}

/// Compensated (Neumaier) complex summation.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Sum {
    re: f64,
    re_c: f64,
    im: f64,
    im_c: f64,
}

impl Sum {
    fn step(sum: &mut f64, comp: &mut f64, x: f64) {
        let t = *sum + x;
        if sum.abs() >= x.abs() {
            *comp += (*sum - t) + x;
        } else {
            *comp += (x - t) + *sum;
        }
        *sum = t;
    }

    pub(crate) fn add(&mut self, z: Complex64) {
        Sum::step(&mut self.re, &mut self.re_c, z.re);
        Sum::step(&mut self.im, &mut self.im_c, z.im);
    }

    pub(crate) fn value(&self) -> Complex64 {
        Complex64::new(self.re + self.re_c, self.im + self.im_c)
    }
}

pub(crate) fn check_complex(k: &crate::topology::DeltaComplex) -> crate::Result<()> {
    let report = k.validate();
    let result = match report.failures().next() {
        None => Ok(()),
        Some(c) => Err(crate::Error::Validation { check: c.name.clone(), detail: c.detail.clone().unwrap_or_default() }),
    };
    result
}

#[cfg(test)]
mod tests;
