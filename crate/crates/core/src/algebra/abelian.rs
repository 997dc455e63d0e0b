use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::Ratio;

use crate::error::{Error, Result};

/// A root of unity `exp(2πi·r)` stored as the rational `r` reduced into `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase(Ratio<i64>);

impl Phase {
    pub const ZERO: Phase = Phase(Ratio::new_raw(0, 1));

    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "phase with zero denominator");
        Phase::from_ratio(Ratio::new(numer, denom))
    }

    fn from_ratio(r: Ratio<i64>) -> Self {
        let frac = r - r.floor();
        Phase(frac)
    }

    pub fn is_zero(&self) -> bool {
        *self.0.numer() == 0
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn to_complex(self) -> Complex64 {
        let r = self.numer() as f64 / self.denom() as f64;
        // exact values at the common quarter turns
        match (self.numer(), self.denom()) {
            (0, _) => Complex64::new(1.0, 0.0),
            (1, 2) => Complex64::new(-1.0, 0.0),
            (1, 4) => Complex64::new(0.0, 1.0),
            (3, 4) => Complex64::new(0.0, -1.0),
            _ => Complex64::from_polar(1.0, TAU * r),
        }
    }

    pub fn scale(self, k: i64) -> Self {
        Phase::from_ratio(self.0 * k)
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::ZERO
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        Phase::from_ratio(self.0 + rhs.0)
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        Phase::from_ratio(self.0 - rhs.0)
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::from_ratio(-self.0)
    }
}

impl std::iter::Sum for Phase {
    fn sum<I: Iterator<Item = Phase>>(iter: I) -> Phase {
        iter.fold(Phase::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for Phase {
    type Err = Error;

    /// Parses `"p/q"` or an integer `"p"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("malformed phase `{s}` (expected \"p/q\")"));
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim().parse::<i64>().map_err(|_| bad())?, q.trim().parse::<i64>().map_err(|_| bad())?),
            None => (s.trim().parse::<i64>().map_err(|_| bad())?, 1),
        };
        if q == 0 {
            return Err(bad());
        }
        Ok(Phase::new(p, q))
    }
}

/// A finite abelian group `Z_{n1} × … × Z_{nk}`; elements are exponent tuples.
///
/// Elements are indexed in mixed radix with the first factor most significant, so
/// index 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    factors: Vec<u32>,
}

/// An element of an [`AbelianGroup`], `(a1, …, ak)` with `ai mod ni`.
pub type AbelianElement = Vec<u32>;

impl AbelianGroup {
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if let Some(pos) = factors.iter().position(|&n| n == 0) {
            return Err(Error::invalid(format!("invariant factor {pos} is zero")));
        }
        Ok(AbelianGroup { factors })
    }

    pub fn trivial() -> Self {
        AbelianGroup { factors: Vec::new() }
    }

    pub fn cyclic(n: u32) -> Self {
        AbelianGroup::new(vec![n]).expect("nonzero order")
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.factors.iter().map(|&n| n as usize).product()
    }

    pub fn zero(&self) -> AbelianElement {
        vec![0; self.rank()]
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> AbelianElement {
        a.iter().zip(b).zip(&self.factors).map(|((&x, &y), &n)| (x + y) % n).collect()
    }

    pub fn neg(&self, a: &[u32]) -> AbelianElement {
        a.iter().zip(&self.factors).map(|(&x, &n)| (n - x % n) % n).collect()
    }

    /// The standard generator `e_i`.
    pub fn basis(&self, i: usize) -> AbelianElement {
        let mut e = self.zero();
        e[i] = 1 % self.factors[i];
        e
    }

    pub fn index_of(&self, a: &[u32]) -> usize {
        a.iter().zip(&self.factors).fold(0, |acc, (&x, &n)| acc * n as usize + x as usize)
    }

    pub fn element(&self, mut index: usize) -> AbelianElement {
        let mut out = vec![0; self.rank()];
        for (slot, &n) in out.iter_mut().zip(&self.factors).rev() {
            *slot = (index % n as usize) as u32;
            index /= n as usize;
        }
        out
    }

    pub fn elements(&self) -> impl Iterator<Item = AbelianElement> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    /// Checks that `a` has the right rank and reduced entries.
    pub fn check_element(&self, a: &[u32]) -> Result<()> {
        if a.len() != self.rank() {
            return Err(Error::invalid(format!("element {a:?} has rank {} (expected {})", a.len(), self.rank())));
        }
        for (i, (&x, &n)) in a.iter().zip(&self.factors).enumerate() {
            if x >= n {
                return Err(Error::invalid(format!("element {a:?}: component {i} is not reduced mod {n}")));
            }
        }
        Ok(())
    }

    /// Evaluates `χ(a)` as an exact phase `Σ cᵢaᵢ/nᵢ`.
    pub fn pair(&self, chi: &Character, a: &[u32]) -> Phase {
        chi.0
            .iter()
            .zip(a)
            .zip(&self.factors)
            .map(|((&c, &x), &n)| Phase::new(c as i64 * x as i64, n as i64))
            .sum()
    }

    /// Pointwise product of characters.
    pub fn char_mul(&self, a: &Character, b: &Character) -> Character {
        Character(self.add(&a.0, &b.0))
    }

    pub fn char_inv(&self, a: &Character) -> Character {
        Character(self.neg(&a.0))
    }

    pub fn char_index(&self, chi: &Character) -> usize {
        self.index_of(&chi.0)
    }

    pub fn character(&self, index: usize) -> Character {
        Character(self.element(index))
    }

    /// The character group `Â`; the first entry is the trivial character.
    pub fn characters(&self) -> Vec<Character> {
        (0..self.order()).map(|i| self.character(i)).collect()
    }

    /// Coefficients of the idempotent `P_χ = |A|⁻¹ Σ_h conj(χ(h)) h` in the group algebra,
    /// indexed by element index.
    pub fn projector(&self, chi: &Character) -> Vec<Complex64> {
        let scale = 1.0 / self.order() as f64;
        self.elements().map(|h| self.pair(chi, &h).to_complex().conj() * scale).collect()
    }

    /// Product in the group algebra `C[A]`.
    pub fn convolve(&self, x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.order()];
        for (i, &a) in x.iter().enumerate() {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            let hi = self.element(i);
            for (j, &b) in y.iter().enumerate() {
                let k = self.index_of(&self.add(&hi, &self.element(j)));
                out[k] += a * b;
            }
        }
        out
    }
}

/// A character of an abelian group, stored as its exponent tuple: `χ(a) = exp(2πi Σ cᵢaᵢ/nᵢ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character(pub Vec<u32>);

impl Character {
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

/// All characters of `a`, trivial character first.
pub fn enumerate_characters(a: &AbelianGroup) -> Vec<Character> {
    a.characters()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_arithmetic_is_exact() {
        let third = Phase::new(1, 3);
        assert_eq!(third + third + third, Phase::ZERO);
        assert_eq!(-third, Phase::new(2, 3));
        assert_eq!(Phase::new(-1, 2), Phase::new(1, 2));
        assert_eq!("3/4".parse::<Phase>().unwrap(), Phase::new(-1, 4));
        assert!("x/2".parse::<Phase>().is_err());
        assert!("1/0".parse::<Phase>().is_err());
        assert_eq!(Phase::new(1, 2).to_complex(), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn characters_of_trivial_group() {
        let a = AbelianGroup::trivial();
        let chars = enumerate_characters(&a);
        assert_eq!(chars.len(), 1);
        assert!(chars[0].is_trivial());
    }

    #[test]
    fn characters_of_z2_take_values_plus_minus_one() {
        let a = AbelianGroup::cyclic(2);
        let chars = enumerate_characters(&a);
        assert_eq!(chars.len(), 2);
        let vals: Vec<Complex64> = chars.iter().map(|c| a.pair(c, &[1]).to_complex()).collect();
        assert_eq!(vals, vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)]);
    }

    #[test]
    fn characters_of_z2_z3_are_distinct_and_closed() {
        let a = AbelianGroup::new(vec![2, 3]).unwrap();
        let chars = enumerate_characters(&a);
        assert_eq!(chars.len(), 6);
        assert!(chars[0].is_trivial());
        let tables: Vec<Vec<Phase>> = chars.iter().map(|c| a.elements().map(|x| a.pair(c, &x)).collect()).collect();
        for i in 0..6 {
            for j in 0..i {
                assert_ne!(tables[i], tables[j]);
            }
        }
        for x in &chars {
            for y in &chars {
                assert!(chars.contains(&a.char_mul(x, y)));
            }
        }
    }

    #[test]
    fn element_indexing_round_trips() {
        let a = AbelianGroup::new(vec![2, 3, 4]).unwrap();
        for i in 0..a.order() {
            assert_eq!(a.index_of(&a.element(i)), i);
        }
        assert_eq!(a.element(0), a.zero());
    }
}
