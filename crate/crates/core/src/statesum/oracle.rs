use num_rational::Ratio;

use crate::algebra::FiniteGroup;
use crate::error::{Error, Result};
use crate::topology::DeltaComplex;

/// Largest number of edge maps [`flat_counting_oracle`] enumerates by default.
pub const DEFAULT_ORACLE_CAP: u64 = 1 << 22;

/// Counts maps `g: edges → G` with `g_02 = g_01 g_12` on every triangle by running through all
/// `|G|^{|T¹|}` of them, and returns `count / |G|^{|T⁰|}`.
pub fn flat_counting_oracle(group: &FiniteGroup, k: &DeltaComplex, cap: u64) -> Result<Ratio<u128>> {
    super::check_complex(k)?;
    let n = group.order() as u64;
    let e = k.edges().len() as u32;
    let total = n.checked_pow(e).filter(|&t| t <= cap).ok_or_else(|| {
        Error::SizeGuard(format!("{n}^{e} edge maps exceed the oracle cap {cap}"))
    })?;
    let mut g = vec![0usize; e as usize];
    let mut count: u128 = 0;
    for _ in 0..total {
        if k.triangles().iter().all(|t| g[t.edges[1]] == group.mul(g[t.edges[0]], g[t.edges[2]])) {
            count += 1;
        }
        for x in g.iter_mut() {
            *x += 1;
            if *x < n as usize {
                break;
            }
            *x = 0;
        }
    }
    let denom = (n as u128)
        .checked_pow(k.num_vertices() as u32)
        .ok_or_else(|| Error::SizeGuard("|G|^V overflows".into()))?;
    Ok(Ratio::new(count, denom))
}
