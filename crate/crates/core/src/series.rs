//! Truncated formal Laurent series `Σ_d a_d ž^{n+d+s}` over the lowering lattice.
//!
//! Terms are keyed by the displacement `d = m − n`; every stored displacement
//! lies in the lowering lattice with [`height`] at most `depth`. The shift `s`
//! is carried along as metadata and never enters the arithmetic.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{height, IntVec};
use crate::rational::gen_binomial;
use crate::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    base: IntVec,
    shift: Vec<Rat>,
    terms: BTreeMap<IntVec, Rat>,
    depth: u64,
}

impl LaurentSeries {
    pub fn zero(base: IntVec, shift: Vec<Rat>, depth: u64) -> Result<Self> {
        if shift.len() != base.len() {
            return Err(Error::Dimension(format!(
                "shift has length {} but base {base} has length {}",
                shift.len(),
                base.len()
            )));
        }
        Ok(LaurentSeries {
            base,
            shift,
            terms: BTreeMap::new(),
            depth,
        })
    }

    /// The single monomial `ž^{n+s}`.
    pub fn monomial(base: IntVec, shift: Vec<Rat>, depth: u64) -> Result<Self> {
        let n = base.len();
        let mut s = LaurentSeries::zero(base, shift, depth)?;
        s.terms.insert(IntVec::zeros(n), Rat::one());
        Ok(s)
    }

    pub fn base(&self) -> &IntVec {
        &self.base
    }

    pub fn shift(&self) -> &[Rat] {
        &self.shift
    }

    pub fn depth(&self) -> u64 {
        self.depth
    }

    pub fn nvars(&self) -> usize {
        self.base.len()
    }

    /// Non-zero coefficients keyed by displacement from the base.
    pub fn terms(&self) -> &BTreeMap<IntVec, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, offset: &IntVec) -> Rat {
        self.terms.get(offset).cloned().unwrap_or_else(Rat::zero)
    }

    /// Coefficient of the absolute index `m`.
    pub fn coeff_at(&self, m: &IntVec) -> Rat {
        self.coeff(&(m - &self.base))
    }

    /// Adds `c` at displacement `offset`; terms beyond the depth are dropped.
    pub fn add_term(&mut self, offset: IntVec, c: Rat) -> Result<()> {
        if offset.len() != self.nvars() {
            return Err(Error::Dimension(format!(
                "offset {offset} in a series of {} variables",
                self.nvars()
            )));
        }
        let Some(h) = height(&offset) else {
            return Err(Error::Domain(format!(
                "offset {offset} is not in the lowering lattice"
            )));
        };
        if h > self.depth || c.is_zero() {
            return Ok(());
        }
        let slot = self.terms.entry(offset.clone()).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&offset);
        }
        Ok(())
    }

    /// `a + c·b`, truncated to the smaller depth.
    pub fn scale_add(&self, c: &Rat, b: &LaurentSeries) -> Result<LaurentSeries> {
        if self.base != b.base {
            return Err(Error::Alignment(format!("bases {} and {} differ", self.base, b.base)));
        }
        if self.shift != b.shift {
            return Err(Error::Alignment("shift vectors differ".into()));
        }
        let depth = self.depth.min(b.depth);
        let mut out = LaurentSeries::zero(self.base.clone(), self.shift.clone(), depth)?;
        for (d, x) in &self.terms {
            out.add_term(d.clone(), x.clone())?;
        }
        if !c.is_zero() {
            for (d, x) in &b.terms {
                out.add_term(d.clone(), x * c)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> LaurentSeries {
        let mut out = self.clone();
        if c.is_zero() {
            out.terms.clear();
        } else {
            for x in out.terms.values_mut() {
                *x *= c;
            }
        }
        out
    }

    /// Same terms with a different shift vector.
    pub fn with_shift(&self, shift: Vec<Rat>) -> Result<LaurentSeries> {
        if shift.len() != self.nvars() {
            return Err(Error::Dimension("shift length".into()));
        }
        Ok(LaurentSeries {
            shift,
            ..self.clone()
        })
    }

    /// Multiplies by `Π_{j<k} (1 − z_j/z_k)^{λ_jk}`, truncated at the current depth.
    ///
    /// `z_j/z_k = ž^{E_jk}` has height `k − j`, so only finitely many factor
    /// terms survive the truncation.
    pub fn mul_pair_binomials(&self, lamjk: &BTreeMap<(usize, usize), Rat>) -> Result<LaurentSeries> {
        let mut cur = self.clone();
        for (&(j, k), lam) in lamjk {
            if j >= k || k >= self.nvars() {
                return Err(Error::Dimension(format!("pair ({j},{k})")));
            }
            let step = (k - j) as u64;
            let order = (self.depth / step) as usize;
            let coeffs = gen_binomial(lam, order);
            let mut next = LaurentSeries::zero(cur.base.clone(), cur.shift.clone(), cur.depth)?;
            for (d, x) in &cur.terms {
                for (p, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    next.add_term(d.step(j, k, p as i64), x * c)?;
                }
            }
            cur = next;
        }
        Ok(cur)
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·z^{}", &self.base + d)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn v(x: &[i64]) -> IntVec {
        IntVec::new(x.to_vec()).unwrap()
    }

    fn mono(n: &[i64]) -> LaurentSeries {
        LaurentSeries::monomial(v(n), vec![frac(1, 2), frac(-1, 2)], 4).unwrap()
    }

    #[test]
    fn scale_add_examples() {
        let a = mono(&[1, 0]);
        let mut b = mono(&[1, 0]);
        b.add_term(v(&[1, -1]), int(3)).unwrap();
        assert_eq!(a.scale_add(&int(0), &b).unwrap(), a);
        assert!(b.scale_add(&int(-1), &b).unwrap().is_zero());

        let mut e = LaurentSeries::zero(v(&[1, 0]), vec![frac(1, 2), frac(-1, 2)], 4).unwrap();
        e.add_term(v(&[1, -1]), int(1)).unwrap();
        let two = a.scale_add(&int(2), &e).unwrap();
        assert_eq!(two.terms().len(), 2);
        assert_eq!(two.coeff_at(&v(&[2, -1])), int(2));
    }

    #[test]
    fn misaligned_series_are_rejected() {
        let a = mono(&[1, 0]);
        let b = mono(&[0, 1]);
        assert!(matches!(a.scale_add(&int(1), &b), Err(Error::Alignment(_))));
        let c = a.with_shift(vec![int(0), int(0)]).unwrap();
        assert!(matches!(a.scale_add(&int(1), &c), Err(Error::Alignment(_))));
    }

    #[test]
    fn truncation_and_lattice_membership() {
        let mut a = LaurentSeries::monomial(v(&[0, 0, 0]), vec![int(0); 3], 2).unwrap();
        a.add_term(v(&[1, 0, -1]), int(1)).unwrap();
        a.add_term(v(&[2, 0, -2]), int(1)).unwrap();
        assert_eq!(a.terms().len(), 2);
        assert!(a.add_term(v(&[-1, 1, 0]), int(1)).is_err());
    }

    #[test]
    fn binomial_product_inverts() {
        let a = LaurentSeries::monomial(v(&[0, 0, 0]), vec![int(0); 3], 6).unwrap();
        let mut lam = BTreeMap::new();
        lam.insert((0, 1), frac(1, 2));
        lam.insert((0, 2), frac(3, 2));
        lam.insert((1, 2), frac(-2, 3));
        let neg: BTreeMap<_, _> = lam.iter().map(|(k, x)| (*k, -x.clone())).collect();
        let back = a
            .mul_pair_binomials(&lam)
            .unwrap()
            .mul_pair_binomials(&neg)
            .unwrap();
        assert_eq!(back, a);
    }
}
