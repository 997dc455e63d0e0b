use itertools::Itertools;

use crate::error::{Error, Result};

/// A finite group given by its Cayley table. Elements are indices `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from a multiplication table `table[g][h] = g*h`, checking the group axioms.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::invalid("group table is empty"));
        }
        for (g, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::invalid(format!("group table row {g} has length {} (expected {n})", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::OutOfRange { what: "group element", index: bad, size: n });
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::invalid("group table has no two-sided identity"))?;
        let mut inverse = vec![0; n];
        for g in 0..n {
            inverse[g] = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| Error::invalid(format!("group element {g} has no inverse")))?;
        }
        for (a, b, c) in (0..n).cartesian_product(0..n).cartesian_product(0..n).map(|((a, b), c)| (a, b, c)) {
            if table[table[a][b]][c] != table[a][table[b][c]] {
                return Err(Error::invalid(format!("group table is not associative at ({a},{b},{c})")));
            }
        }
        Ok(FiniteGroup { table, identity, inverse })
    }

    pub fn trivial() -> Self {
        FiniteGroup::cyclic(1)
    }

    /// The cyclic group Z_n, element `k` standing for `k mod n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup {
            table,
            identity: 0,
            inverse: (0..n).map(|a| (n - a) % n).collect(),
        }
    }

    /// The symmetric group on `n` letters; element 0 is the identity permutation and
    /// `g*h` is the composition "apply h, then g".
    pub fn symmetric(n: usize) -> Self {
        let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
        let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed under composition");
        let table = perms
            .iter()
            .map(|g| {
                perms
                    .iter()
                    .map(|h| index(&h.iter().map(|&i| g[i]).collect::<Vec<_>>()))
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(table).expect("symmetric group is a group")
    }

    /// Direct product; element `(a, b)` has index `a * other.order() + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Self {
        let m = other.order();
        let n = self.order() * m;
        let table = (0..n)
            .map(|x| (0..n).map(|y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m)).collect())
            .collect();
        FiniteGroup {
            table,
            identity: self.identity * m + other.identity,
            inverse: (0..n).map(|x| self.inv(x / m) * m + other.inv(x % m)).collect(),
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.table.len()
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub(crate) fn check_index(&self, g: usize) -> Result<()> {
        if g < self.order() {
            Ok(())
        } else {
            Err(Error::OutOfRange { what: "group element", index: g, size: self.order() })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_three_is_nonabelian_of_order_six() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.identity(), 0);
        assert!(!s3.is_abelian());
        for g in 0..6 {
            assert_eq!(s3.mul(g, s3.inv(g)), 0);
        }
    }

    #[test]
    fn rejects_non_associative_table() {
        // a Latin square with identity 0 that is not a group
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroup::from_table(t).is_err());
    }

    #[test]
    fn direct_product_of_cyclics() {
        let k = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2));
        assert_eq!(k.order(), 4);
        assert!(k.is_abelian());
        assert!((0..4).all(|g| k.mul(g, g) == 0));
        assert_eq!(FiniteGroup::from_table(k.table().to_vec()).unwrap(), k);
    }
}
