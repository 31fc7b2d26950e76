//! Integer-vector combinatorics on the eigenfunction index lattice.
//!
//! Indices are integer vectors `m ∈ ℤ^N`. The lowering lattice is spanned by
//! `E_jk = e_j − e_k` with `j < k`; the partial order used throughout is the
//! tail-sum order `m ≼ n ⇔ m_j + … + m_N ≤ n_j + … + n_N` for every `j`.
//!
//! Two gradings live on the lowering lattice:
//!
//! * the *weight* `Σ μ_jk` of a coefficient vector [`MuVector`] (not a function
//!   of the displacement alone once `N ≥ 3`, since `E_13 = E_12 + E_23`);
//! * the *height* `Σ μ_jk (k − j)` of a displacement, which only depends on the
//!   displacement itself (it is minus the sum of its tail sums) and strictly
//!   drops by `ν (k − j)` under every backward step `m ↦ m − ν E_jk`.
//!
//! Series truncation uses the height because the truncated index sets are then
//! closed under the recursion steps.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntVec(Vec<i64>);

impl IntVec {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Dimension("integer vector must have length >= 1".into()));
        }
        Ok(IntVec(entries))
    }

    pub fn zeros(n: usize) -> Self {
        IntVec(vec![0; n.max(1)])
    }

    /// The vector `E_jk = e_j − e_k` (zero-based indices).
    pub fn e_jk(n: usize, j: usize, k: usize) -> Self {
        let mut v = vec![0; n];
        v[j] += 1;
        v[k] -= 1;
        IntVec(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Tail sums `T_j = m_j + … + m_N`, `j = 1..N`.
    pub fn tail_sums(&self) -> Vec<i64> {
        let mut out = vec![0; self.len()];
        let mut acc = 0;
        for (i, x) in self.0.iter().enumerate().rev() {
            acc += x;
            out[i] = acc;
        }
        out
    }

    /// `self + nu * other`.
    pub fn add_scaled(&self, nu: i64, other: &IntVec) -> IntVec {
        IntVec(self.0.iter().zip(&other.0).map(|(a, b)| a + nu * b).collect())
    }

    /// Adds `nu E_jk` in place of materializing `E_jk`.
    pub fn step(&self, j: usize, k: usize, nu: i64) -> IntVec {
        let mut v = self.0.clone();
        v[j] += nu;
        v[k] -= nu;
        IntVec(v)
    }

    fn check_len(&self, other: &IntVec) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::Dimension(format!(
                "lengths {} and {} differ",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }
}

impl From<Vec<i64>> for IntVec {
    fn from(v: Vec<i64>) -> Self {
        IntVec(v)
    }
}

impl fmt::Display for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Add for &IntVec {
    type Output = IntVec;
    fn add(self, rhs: &IntVec) -> IntVec {
        IntVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &IntVec {
    type Output = IntVec;
    fn sub(self, rhs: &IntVec) -> IntVec {
        IntVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &IntVec {
    type Output = IntVec;
    fn neg(self) -> IntVec {
        IntVec(self.0.iter().map(|a| -a).collect())
    }
}

/// A weakly decreasing vector of non-negative integers of fixed length `N`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Partition(Vec<i64>);

impl Partition {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Dimension("partition must have length >= 1".into()));
        }
        if entries.iter().any(|&x| x < 0) {
            return Err(Error::Domain(format!("negative part in {entries:?}")));
        }
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!("{entries:?} is not weakly decreasing")));
        }
        Ok(Partition(entries))
    }

    /// Pads (or validates) a partition to exactly `n` parts.
    pub fn padded(entries: &[i64], n: usize) -> Result<Self> {
        let mut v: Vec<i64> = entries.to_vec();
        while v.len() > n && v.last() == Some(&0) {
            v.pop();
        }
        if v.len() > n {
            return Err(Error::Dimension(format!(
                "partition {entries:?} has more than {n} non-zero parts"
            )));
        }
        v.resize(n, 0);
        Partition::new(v)
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|n| = Σ n_j`.
    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn to_intvec(&self) -> IntVec {
        IntVec(self.0.clone())
    }

    /// Standard dominance on partitions of equal size: every head sum of
    /// `self` is ≤ the matching head sum of `other`.
    pub fn dominated_by(&self, other: &Partition) -> bool {
        if self.len() != other.len() || self.size() != other.size() {
            return false;
        }
        let mut a = 0;
        let mut b = 0;
        for (x, y) in self.0.iter().zip(&other.0) {
            a += x;
            b += y;
            if a > b {
                return false;
            }
        }
        true
    }

    /// Exponent vector of the leading monomial.
    pub fn exponents(&self) -> Vec<u32> {
        self.0.iter().map(|&x| x as u32).collect()
    }
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<i64> {
    fn from(p: Partition) -> Vec<i64> {
        p.0
    }
}

impl TryFrom<&IntVec> for Partition {
    type Error = Error;
    fn try_from(v: &IntVec) -> Result<Self> {
        Partition::new(v.entries().to_vec())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_intvec(), f)
    }
}

/// All partitions of `size` with at most `n` parts, padded to length `n`,
/// in decreasing lexicographic order (so the first entry dominates all others).
pub fn partitions_of(size: i64, n: usize) -> Vec<Partition> {
    fn rec(rest: i64, max: i64, slots: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if slots == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let hi = rest.min(max);
        for part in (0..=hi).rev() {
            // remaining slots can absorb at most `part` each
            if part * (slots as i64) < rest {
                break;
            }
            cur.push(part);
            rec(rest - part, part, slots - 1, cur, out);
            cur.pop();
        }
    }
    if size < 0 || n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(size, size, n, &mut Vec::with_capacity(n), &mut out);
    out.into_iter().map(Partition).collect()
}

/// Tail-sum order: `m ≼ n`.
pub fn dominance_leq(m: &IntVec, n: &IntVec) -> Result<bool> {
    m.check_len(n)?;
    Ok(m.tail_sums()
        .iter()
        .zip(n.tail_sums())
        .all(|(a, b)| *a <= b))
}

/// Canonical order of the pair slots `(j, k)`, `j < k`: `(0,1), (0,2), …, (1,2), …`.
pub fn pair_slots(n: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 0..n {
        for k in j + 1..n {
            v.push((j, k));
        }
    }
    v
}

/// Non-negative coefficients `μ_jk` on the pair slots, defining `μ̂ = Σ μ_jk E_jk`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MuVector {
    n: usize,
    mu: Vec<u32>,
}

impl MuVector {
    pub fn new(n: usize, mu: Vec<u32>) -> Result<Self> {
        let slots = n * n.saturating_sub(1) / 2;
        if n < 2 || mu.len() != slots {
            return Err(Error::Dimension(format!(
                "expected {slots} pair slots for N = {n}, got {}",
                mu.len()
            )));
        }
        Ok(MuVector { n, mu })
    }

    pub fn zero(n: usize) -> Self {
        MuVector {
            n,
            mu: vec![0; n * n.saturating_sub(1) / 2],
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[u32] {
        &self.mu
    }

    /// `μ_jk` for zero-based `j < k`.
    pub fn get(&self, j: usize, k: usize) -> u32 {
        self.mu[slot_index(self.n, j, k)]
    }

    /// Total weight `Σ μ_jk`.
    pub fn depth(&self) -> u64 {
        self.mu.iter().map(|&x| x as u64).sum()
    }

    /// The displacement `μ̂ = Σ μ_jk E_jk`.
    pub fn displacement(&self) -> IntVec {
        let mut v = vec![0i64; self.n];
        for ((j, k), &m) in pair_slots(self.n).into_iter().zip(&self.mu) {
            v[j] += m as i64;
            v[k] -= m as i64;
        }
        IntVec(v)
    }
}

/// Position of the zero-based pair `(j, k)` in [`pair_slots`].
pub fn slot_index(n: usize, j: usize, k: usize) -> usize {
    debug_assert!(j < k && k < n);
    // slots before row j: Σ_{i<j} (n - 1 - i)
    j * (2 * n - j - 1) / 2 + (k - j - 1)
}

/// All `μ` with `Σ μ_jk ≤ depth`, ordered by `(weight, entries)`.
pub fn enumerate_mu(n: usize, depth: u64) -> Result<Vec<MuVector>> {
    if n < 2 {
        return Err(Error::Dimension(format!("need N >= 2 pair slots, got N = {n}")));
    }
    let slots = n * (n - 1) / 2;
    let mut out = Vec::new();
    for w in 0..=depth {
        let mut cur = vec![0u32; slots];
        compositions(w, 0, &mut cur, &mut |mu| {
            out.push(MuVector { n, mu: mu.to_vec() })
        });
    }
    Ok(out)
}

/// Visits every vector of `slots` non-negative integers summing to `total`,
/// in lexicographic order.
fn compositions(total: u64, pos: usize, cur: &mut Vec<u32>, visit: &mut impl FnMut(&[u32])) {
    if pos + 1 == cur.len() {
        cur[pos] = total as u32;
        visit(cur);
        cur[pos] = 0;
        return;
    }
    for x in 0..=total {
        cur[pos] = x as u32;
        compositions(total - x, pos + 1, cur, visit);
    }
    cur[pos] = 0;
}

/// The distinct indices `n + μ̂` with weight `Σ μ_jk ≤ depth`, in first-seen order.
pub fn shift_reachable(n: &IntVec, depth: u64) -> Result<Vec<IntVec>> {
    if n.len() < 2 {
        return Ok(vec![n.clone()]);
    }
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for mu in enumerate_mu(n.len(), depth)? {
        let m = n + &mu.displacement();
        if seen.insert(m.clone()) {
            out.push(m);
        }
    }
    Ok(out)
}

/// Height `Σ μ_jk (k − j)` of a displacement, or `None` when it does not lie in
/// the lowering lattice (non-zero sum or a positive tail sum).
pub fn height(d: &IntVec) -> Option<u64> {
    if d.sum() != 0 {
        return None;
    }
    let tails = d.tail_sums();
    let mut h = 0u64;
    for t in &tails[1..] {
        if *t > 0 {
            return None;
        }
        h += (-t) as u64;
    }
    Some(h)
}

/// All displacements of the lowering lattice with height ≤ `max_height`,
/// ordered by `(height, cut profile)`.
///
/// A displacement is fixed by its cut profile `c_l = −(d_l + … + d_N)` for
/// `l = 2..N`, which ranges over all non-negative vectors; the height is `Σ c_l`.
pub fn lowering_offsets(n: usize, max_height: u64) -> Vec<IntVec> {
    if n < 2 {
        return vec![IntVec::zeros(n)];
    }
    let mut out = Vec::new();
    for h in 0..=max_height {
        let mut cut = vec![0u32; n - 1];
        compositions(h, 0, &mut cut, &mut |c| out.push(offset_from_cuts(c)));
    }
    out
}

fn offset_from_cuts(c: &[u32]) -> IntVec {
    let n = c.len() + 1;
    // tail sums T_1 = 0, T_l = -c_{l}
    let tail = |l: usize| -> i64 {
        if l == 0 || l >= n {
            0
        } else {
            -(c[l - 1] as i64)
        }
    };
    IntVec((0..n).map(|l| tail(l) - tail(l + 1)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> IntVec {
        IntVec::new(x.to_vec()).unwrap()
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_leq(&v(&[1, -1]), &v(&[0, 0])).unwrap());
        assert!(dominance_leq(&v(&[3, 1, 0]), &v(&[3, 1, 0])).unwrap());
        // tail sums (2,2) vs (2,1)
        assert!(!dominance_leq(&v(&[0, 2]), &v(&[1, 1])).unwrap());
        // (2,0) = (1,1) + E_12 lies below (1,1)
        assert!(dominance_leq(&v(&[2, 0]), &v(&[1, 1])).unwrap());
        assert!(!dominance_leq(&v(&[1, 1]), &v(&[2, 0])).unwrap());
        assert!(matches!(
            dominance_leq(&v(&[1, 2]), &v(&[1, 2, 3])),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn enumerate_mu_counts() {
        assert_eq!(enumerate_mu(2, 2).unwrap().len(), 3);
        assert_eq!(enumerate_mu(3, 1).unwrap().len(), 4);
        assert_eq!(enumerate_mu(3, 2).unwrap().len(), 10);
        assert!(enumerate_mu(1, 2).is_err());
        let first = &enumerate_mu(3, 2).unwrap()[..4];
        assert_eq!(first[0].depth(), 0);
        assert_eq!(first[1].entries(), &[0, 0, 1]);
        assert_eq!(first[3].entries(), &[1, 0, 0]);
    }

    #[test]
    fn shift_reachable_examples() {
        assert_eq!(
            shift_reachable(&v(&[1, 0]), 1).unwrap(),
            vec![v(&[1, 0]), v(&[2, -1])]
        );
        let r = shift_reachable(&v(&[0, 0, 0]), 1).unwrap();
        assert_eq!(r.len(), 4);
        for m in [v(&[0, 0, 0]), v(&[1, -1, 0]), v(&[1, 0, -1]), v(&[0, 1, -1])] {
            assert!(r.contains(&m));
        }
        assert_eq!(
            shift_reachable(&v(&[2, 1]), 3).unwrap(),
            vec![v(&[2, 1]), v(&[3, 0]), v(&[4, -1]), v(&[5, -2])]
        );
        // E_12 + E_23 = E_13 is counted once
        assert_eq!(shift_reachable(&v(&[0, 0, 0]), 2).unwrap().len(), 9);
    }

    #[test]
    fn slot_index_matches_pair_slots() {
        for n in 2..7 {
            for (i, (j, k)) in pair_slots(n).into_iter().enumerate() {
                assert_eq!(slot_index(n, j, k), i);
            }
        }
    }

    #[test]
    fn height_of_basic_steps() {
        assert_eq!(height(&IntVec::e_jk(3, 0, 2)), Some(2));
        assert_eq!(height(&IntVec::e_jk(3, 1, 2)), Some(1));
        assert_eq!(height(&IntVec::e_jk(3, 2, 0)), None);
        assert_eq!(height(&v(&[1, 0, 0])), None);
    }

    #[test]
    fn lowering_offsets_are_distinct_and_graded() {
        let offs = lowering_offsets(3, 4);
        assert_eq!(offs.len(), 15);
        let mut seen = std::collections::HashSet::new();
        let mut last = 0;
        for d in &offs {
            let h = height(d).unwrap();
            assert!(h >= last);
            last = h;
            assert!(seen.insert(d.clone()));
        }
    }

    #[test]
    fn partitions_enumeration() {
        let p = partitions_of(4, 3);
        let got: Vec<Vec<i64>> = p.iter().map(|x| x.parts().to_vec()).collect();
        assert_eq!(
            got,
            vec![vec![4, 0, 0], vec![3, 1, 0], vec![2, 2, 0], vec![2, 1, 1]]
        );
        assert_eq!(partitions_of(0, 2).len(), 1);
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![1, -1]).is_err());
        assert_eq!(Partition::padded(&[2, 1], 3).unwrap().parts(), &[2, 1, 0]);
        assert!(Partition::padded(&[1, 1, 1], 2).is_err());
    }

    #[test]
    fn standard_dominance() {
        let a = Partition::new(vec![2, 0]).unwrap();
        let b = Partition::new(vec![1, 1]).unwrap();
        assert!(b.dominated_by(&a));
        assert!(!a.dominated_by(&b));
    }
}
