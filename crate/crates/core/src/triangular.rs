//! Eigenvectors of non-degenerate triangular operators.
//!
//! For an operator with `(A v)_J = a_J v_J + Σ_{K ≻ J} A_JK v_K` the
//! eigenvector belonging to `a_L` is obtained by the sweep
//! `v_L = 1`, `v_J = (a_L − a_J)⁻¹ Σ_{K ≻ J} A_JK v_K`.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Rat;

/// A triangular operator on a graded index set.
///
/// Every off-diagonal entry `A_JK` returned by [`row`](Self::row) must have
/// `level(K) < level(J)`, which makes a sweep in increasing level well defined.
pub trait TriangularSystem {
    type Index: Clone + Ord + Debug;

    fn diagonal(&self, j: &Self::Index) -> Result<Rat>;

    /// Off-diagonal entries `(K, A_JK)` of row `J`.
    fn row(&self, j: &Self::Index) -> Result<Vec<(Self::Index, Rat)>>;

    fn level(&self, j: &Self::Index) -> u64;

    /// All indices with `level ≤ max_level`, sorted by level.
    fn indices(&self, max_level: u64) -> Vec<Self::Index>;
}

/// Solves for the eigenvector with `v_L = 1` on all indices up to `max_level`.
///
/// Entries that receive no contribution are zero and are not stored. A
/// vanishing `a_L − a_J` is only an error when row `J` has a non-zero sum.
pub fn triangular_eigenvector<S: TriangularSystem>(
    sys: &S,
    l: &S::Index,
    max_level: u64,
) -> Result<BTreeMap<S::Index, Rat>> {
    let a_l = sys.diagonal(l)?;
    let l_level = sys.level(l);
    let mut v: BTreeMap<S::Index, Rat> = BTreeMap::new();
    v.insert(l.clone(), Rat::one());
    for j in sys.indices(max_level) {
        if &j == l || sys.level(&j) <= l_level {
            continue;
        }
        let mut acc = Rat::zero();
        for (k, a) in sys.row(&j)? {
            if sys.level(&k) >= sys.level(&j) {
                return Err(Error::InvariantViolation(format!(
                    "row {j:?} refers to {k:?} on the same or a higher level"
                )));
            }
            if let Some(x) = v.get(&k) {
                acc += a * x;
            }
        }
        if acc.is_zero() {
            continue;
        }
        let d = &a_l - sys.diagonal(&j)?;
        if d.is_zero() {
            return Err(Error::DegenerateDiagonal(format!("a_{j:?} = a_{l:?} = {a_l}")));
        }
        v.insert(j, acc / d);
    }
    Ok(v)
}

/// Explicitly stored triangular system.
#[derive(Debug, Clone, Default)]
pub struct SparseSystem<I: Ord> {
    diag: BTreeMap<I, Rat>,
    rows: BTreeMap<I, Vec<(I, Rat)>>,
    levels: BTreeMap<I, u64>,
}

impl<I: Clone + Ord + Debug> SparseSystem<I> {
    pub fn new() -> Self {
        SparseSystem {
            diag: BTreeMap::new(),
            rows: BTreeMap::new(),
            levels: BTreeMap::new(),
        }
    }

    pub fn set_diagonal(&mut self, j: I, level: u64, a: Rat) {
        self.levels.insert(j.clone(), level);
        self.diag.insert(j, a);
    }

    /// Adds `a` to `A_JK`.
    pub fn add_entry(&mut self, j: I, k: I, a: Rat) {
        if a.is_zero() {
            return;
        }
        let row = self.rows.entry(j).or_default();
        match row.iter_mut().find(|(x, _)| *x == k) {
            Some((_, y)) => *y += a,
            None => row.push((k, a)),
        }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Applies the full operator to `v`.
    pub fn apply(&self, v: &BTreeMap<I, Rat>) -> BTreeMap<I, Rat> {
        let mut out = BTreeMap::new();
        for (j, a) in &self.diag {
            let mut acc = v.get(j).map(|x| a * x).unwrap_or_else(Rat::zero);
            if let Some(row) = self.rows.get(j) {
                for (k, x) in row {
                    if let Some(y) = v.get(k) {
                        acc += x * y;
                    }
                }
            }
            if !acc.is_zero() {
                out.insert(j.clone(), acc);
            }
        }
        out
    }
}

impl<I: Clone + Ord + Debug> TriangularSystem for SparseSystem<I> {
    type Index = I;

    fn diagonal(&self, j: &I) -> Result<Rat> {
        self.diag
            .get(j)
            .cloned()
            .ok_or_else(|| Error::InvariantViolation(format!("index {j:?} is not in the system")))
    }

    fn row(&self, j: &I) -> Result<Vec<(I, Rat)>> {
        Ok(self.rows.get(j).cloned().unwrap_or_default())
    }

    fn level(&self, j: &I) -> u64 {
        self.levels.get(j).copied().unwrap_or(u64::MAX)
    }

    fn indices(&self, max_level: u64) -> Vec<I> {
        let mut v: Vec<(u64, I)> = self
            .levels
            .iter()
            .filter(|(_, &l)| l <= max_level)
            .map(|(i, &l)| (l, i.clone()))
            .collect();
        v.sort();
        v.into_iter().map(|(_, i)| i).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn diagonal_system_gives_indicator() {
        let mut s = SparseSystem::new();
        for i in 0..4u64 {
            s.set_diagonal(i, i, int(i as i64 + 1));
        }
        let v = triangular_eigenvector(&s, &1, 10).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[&1], int(1));
    }

    #[test]
    fn two_by_two_example() {
        // A = [[2,3],[0,5]], eigenvector of a_L = 5 is (1,1)
        let mut s = SparseSystem::new();
        s.set_diagonal(1usize, 0, int(5));
        s.set_diagonal(0usize, 1, int(2));
        s.add_entry(0, 1, int(3));
        let v = triangular_eigenvector(&s, &1, 1).unwrap();
        assert_eq!(v[&0], int(1));
        assert_eq!(v[&1], int(1));
        let av = s.apply(&v);
        for (k, x) in &v {
            assert_eq!(av[k], int(5) * x);
        }
    }

    #[test]
    fn degeneracy_is_reported() {
        let mut s = SparseSystem::new();
        s.set_diagonal(1usize, 0, int(5));
        s.set_diagonal(0usize, 1, int(5));
        s.add_entry(0, 1, int(3));
        let e = triangular_eigenvector(&s, &1, 1).unwrap_err();
        assert!(e.is_degeneracy());
    }
}
