use crate::algebra::abelian::{AbelianElement, AbelianGroup, Character};
use crate::algebra::group::FiniteGroup;
use crate::error::{Error, Result};

/// An action of a finite group on a finite abelian group by automorphisms.
///
/// Each group element acts by an integer matrix on exponent tuples:
/// `act(g, a)_i = Σ_j M_g[i][j]·a_j mod n_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GAction {
    matrices: Vec<Vec<Vec<i64>>>,
}

impl GAction {
    pub fn trivial(group: &FiniteGroup, a: &AbelianGroup) -> Self {
        let k = a.rank();
        let id: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
        GAction {
            matrices: vec![id; group.order()],
        }
    }

    /// Validates `matrices` as an action of `group` on `a`.
    pub fn new(group: &FiniteGroup, a: &AbelianGroup, matrices: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::invalid(format!(
                "action has {} matrices but the group has order {}",
                matrices.len(),
                group.order()
            )));
        }
        let k = a.rank();
        let n = a.factors();
        for (g, m) in matrices.iter().enumerate() {
            if m.len() != k || m.iter().any(|row| row.len() != k) {
                return Err(Error::invalid(format!("action matrix for g={g} is not {k}×{k}")));
            }
            for i in 0..k {
                for j in 0..k {
                    if (m[i][j] * n[j] as i64).rem_euclid(n[i] as i64) != 0 {
                        return Err(Error::invalid(format!(
                            "action matrix for g={g} is not well defined on Z_{} → Z_{} (entry {i},{j})",
                            n[j], n[i]
                        )));
                    }
                }
            }
        }
        let action = GAction { matrices };
        let e = group.identity();
        for x in a.elements() {
            if action.act(a, e, &x) != x {
                return Err(Error::invalid("identity element does not act trivially"));
            }
        }
        for g in 0..group.order() {
            let mut seen = vec![false; a.order()];
            for x in a.elements() {
                let idx = a.index_of(&action.act(a, g, &x));
                if std::mem::replace(&mut seen[idx], true) {
                    return Err(Error::invalid(format!("action of g={g} is not bijective")));
                }
            }
            for h in 0..group.order() {
                for i in 0..a.rank() {
                    let x = a.basis(i);
                    if action.act(a, g, &action.act(a, h, &x)) != action.act(a, group.mul(g, h), &x) {
                        return Err(Error::invalid(format!("act(g={g}, act(h={h}, ·)) differs from act(gh, ·)")));
                    }
                }
            }
        }
        Ok(action)
    }

    pub fn matrices(&self) -> &[Vec<Vec<i64>>] {
        &self.matrices
    }

    pub fn act(&self, a: &AbelianGroup, g: usize, x: &[u32]) -> AbelianElement {
        let m = &self.matrices[g];
        a.factors()
            .iter()
            .enumerate()
            .map(|(i, &n)| {
                let s: i64 = m[i].iter().zip(x).map(|(&c, &v)| c * v as i64).sum();
                s.rem_euclid(n as i64) as u32
            })
            .collect()
    }

    /// The left action on characters, `ᵍχ = χ(act(g⁻¹, ·))`.
    pub fn act_on_char(&self, group: &FiniteGroup, a: &AbelianGroup, g: usize, chi: &Character) -> Result<Character> {
        group.check_index(g)?;
        a.check_element(chi.exponents())?;
        let ginv = group.inv(g);
        let exps = (0..a.rank())
            .map(|j| {
                // χ(act(g⁻¹, e_j)) = exp(2πi c'_j / n_j)
                let ph = a.pair(chi, &self.act(a, ginv, &a.basis(j)));
                let n = a.factors()[j] as i64;
                debug_assert_eq!((ph.numer() * n) % ph.denom(), 0);
                (ph.numer() * n / ph.denom()) as u32
            })
            .collect();
        Ok(Character(exps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn negation_z2_on_z3() -> (FiniteGroup, AbelianGroup, GAction) {
        let g = FiniteGroup::cyclic(2);
        let a = AbelianGroup::cyclic(3);
        let act = GAction::new(&g, &a, vec![vec![vec![1]], vec![vec![-1]]]).unwrap();
        (g, a, act)
    }

    #[test]
    fn trivial_action_fixes_characters() {
        let g = FiniteGroup::cyclic(3);
        let a = AbelianGroup::new(vec![2, 2]).unwrap();
        let act = GAction::trivial(&g, &a);
        for h in 0..3 {
            for chi in a.characters() {
                assert_eq!(act.act_on_char(&g, &a, h, &chi).unwrap(), chi);
            }
        }
    }

    #[test]
    fn negation_sends_character_to_its_conjugate() {
        let (g, a, act) = negation_z2_on_z3();
        let chi = Character(vec![1]);
        let image = act.act_on_char(&g, &a, 1, &chi).unwrap();
        assert_eq!(image, Character(vec![2]));
        // oracle: evaluate χ(−x) on every x
        for x in a.elements() {
            assert_eq!(a.pair(&image, &x), a.pair(&chi, &a.neg(&x)));
        }
        assert_eq!(act.act_on_char(&g, &a, 0, &chi).unwrap(), chi);
    }

    #[test]
    fn rejects_ill_defined_matrix() {
        let g = FiniteGroup::cyclic(2);
        let a = AbelianGroup::new(vec![2, 3]).unwrap();
        // maps the Z_2 generator into Z_3 by 1, which is not a homomorphism
        let bad = vec![vec![vec![1, 0], vec![0, 1]], vec![vec![1, 0], vec![1, 1]]];
        assert!(GAction::new(&g, &a, bad).is_err());
    }

    #[test]
    fn rejects_non_action() {
        // Z_3 acting on Z_3 by negation is not a homomorphism from Z_3
        let g = FiniteGroup::cyclic(3);
        let a = AbelianGroup::cyclic(3);
        assert!(GAction::new(&g, &a, vec![vec![vec![1]], vec![vec![-1]], vec![vec![-1]]]).is_err());
    }

    #[test]
    fn out_of_range_element_is_an_error() {
        let (g, a, act) = negation_z2_on_z3();
        assert!(act.act_on_char(&g, &a, 5, &Character(vec![1])).is_err());
        assert!(act.act_on_char(&g, &a, 1, &Character(vec![7])).is_err());
    }
}
