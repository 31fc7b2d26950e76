//! Polynomials with exact rational coefficients.
//!
//! [`Poly`] is a plain multivariate polynomial keyed by exponent vectors;
//! [`SymPoly`] is a symmetric polynomial stored in the monomial symmetric basis
//! `m_κ(z) = Σ_{distinct permutations} z^{σκ}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hp::{Cplx, Hp};
use crate::lattice::Partition;
use crate::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        let mut p = Poly::zero(nvars);
        p.terms.insert(vec![0; nvars], Rat::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Poly, c: &Rat) {
        for (e, x) in &other.terms {
            self.add_term(e.clone(), x * c);
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e: Vec<u32> = a.iter().zip(b).map(|(u, v)| u + v).collect();
                out.add_term(e, x * y);
            }
        }
        out
    }

    /// True when the coefficient map is invariant under all adjacent transpositions.
    pub fn is_symmetric(&self) -> bool {
        for (e, c) in &self.terms {
            for i in 0..self.nvars.saturating_sub(1) {
                if e[i] == e[i + 1] {
                    continue;
                }
                let mut f = e.clone();
                f.swap(i, i + 1);
                if self.terms.get(&f) != Some(c) {
                    return false;
                }
            }
        }
        true
    }

    /// Projects onto the monomial symmetric basis after checking symmetry.
    pub fn to_sympoly(&self) -> Result<SymPoly> {
        if !self.is_symmetric() {
            return Err(Error::InvariantViolation(
                "polynomial is not permutation invariant".into(),
            ));
        }
        let mut out = SymPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.windows(2).all(|w| w[0] >= w[1]) {
                let part = Partition::new(e.iter().map(|&x| x as i64).collect())?;
                out.terms.insert(part, c.clone());
            }
        }
        Ok(out)
    }

    /// Evaluates `Σ_e c_e w(e) z^e` at complex `z`, with an optional per-term weight.
    pub fn eval_weighted(&self, hp: &mut Hp, z: &[Cplx], weight: impl Fn(&[u32]) -> i64) -> Cplx {
        let max_deg = self
            .terms
            .keys()
            .flat_map(|e| e.iter().copied())
            .max()
            .unwrap_or(0);
        let powers: Vec<Vec<Cplx>> = z
            .iter()
            .map(|zj| {
                let mut v = vec![hp.c_one()];
                for d in 1..=max_deg as usize {
                    let next = hp.cmul(&v[d - 1], zj);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = hp.c_zero();
        for (e, c) in &self.terms {
            let w = weight(e);
            if w == 0 {
                continue;
            }
            let mut term = hp.c_one();
            for (j, &d) in e.iter().enumerate() {
                term = hp.cmul(&term, &powers[j][d as usize]);
            }
            let coef = hp.rat(&(c * Rat::from_integer(BigInt::from(w))));
            acc = hp.cadd(&acc, &hp.cscale(&term, &coef));
        }
        acc
    }

    pub fn eval(&self, hp: &mut Hp, z: &[Cplx]) -> Cplx {
        self.eval_weighted(hp, z, |_| 1)
    }
}

/// Symmetric polynomial in the monomial symmetric basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymPoly {
    nvars: usize,
    terms: BTreeMap<Partition, Rat>,
}

impl SymPoly {
    pub fn zero(nvars: usize) -> Self {
        SymPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        SymPoly::monomial(Partition::new(vec![0; nvars]).expect("zero partition"))
    }

    /// The single orbit sum `m_κ`.
    pub fn monomial(part: Partition) -> Self {
        let nvars = part.len();
        let mut terms = BTreeMap::new();
        terms.insert(part, Rat::one());
        SymPoly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Partition, Rat)>) -> Result<Self> {
        let mut out = SymPoly::zero(nvars);
        for (p, c) in terms {
            if p.len() != nvars {
                return Err(Error::Dimension(format!(
                    "partition {p} has length {} but nvars = {nvars}",
                    p.len()
                )));
            }
            out.add_term(p, c);
        }
        Ok(out)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: &Partition) -> Rat {
        self.terms.get(p).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, p: Partition, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(p.clone()).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn add_scaled(&mut self, other: &SymPoly, c: &Rat) {
        for (p, x) in &other.terms {
            self.add_term(p.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &Rat) -> SymPoly {
        let mut out = SymPoly::zero(self.nvars);
        out.add_scaled(self, c);
        out
    }

    /// Total degrees of the terms present.
    pub fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.terms.keys().map(|p| p.size()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Full expansion over distinct permutations of every key.
    pub fn expand(&self) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (p, c) in &self.terms {
            for e in distinct_permutations(&p.exponents()) {
                out.add_term(e, c.clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        self.expand()
            .mul(&other.expand())
            .to_sympoly()
            .expect("product of symmetric polynomials is symmetric")
    }

    /// Rescales so the coefficient of `m_lead` is 1; returns the old coefficient.
    pub fn normalize_monic(&self, lead: &Partition) -> Result<(SymPoly, Rat)> {
        let c = self.coeff(lead);
        if c.is_zero() {
            return Err(Error::Normalization {
                partition: lead.to_intvec(),
            });
        }
        Ok((self.scale(&(Rat::one() / &c)), c))
    }

    /// `Σ_κ coeff(κ) m_κ(z)` at `hp`'s working precision.
    pub fn eval(&self, hp: &mut Hp, z: &[Cplx]) -> Result<Cplx> {
        if z.len() != self.nvars {
            return Err(Error::Dimension(format!(
                "{} evaluation coordinates for {} variables",
                z.len(),
                self.nvars
            )));
        }
        Ok(self.expand().eval(hp, z))
    }

    pub fn to_json_value(&self) -> SymPolyJson {
        SymPolyJson {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(p, c)| TermJson {
                    partition: p.parts().to_vec(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializable")
    }

    pub fn from_json_value(v: &SymPolyJson) -> Result<Self> {
        let mut out = SymPoly::zero(v.nvars);
        for t in &v.terms {
            let part = Partition::padded(&t.partition, v.nvars)?;
            let num: BigInt = t
                .num
                .parse()
                .map_err(|_| Error::Parse(format!("bad numerator {:?}", t.num)))?;
            let den: BigInt = t
                .den
                .parse()
                .map_err(|_| Error::Parse(format!("bad denominator {:?}", t.den)))?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            out.add_term(part, Rat::new(num, den));
        }
        Ok(out)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: SymPolyJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        SymPoly::from_json_value(&v)
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "m_{p}")?;
            } else {
                write!(f, "{c}·m_{p}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymPolyJson {
    pub nvars: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub partition: Vec<i64>,
    pub num: String,
    pub den: String,
}

/// All distinct permutations of `v`, in lexicographic order.
pub fn distinct_permutations(v: &[u32]) -> Vec<Vec<u32>> {
    let mut cur: Vec<u32> = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // next lexicographic permutation
    while let Some(i) = (0..cur.len().saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) {
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn part(x: &[i64]) -> Partition {
        Partition::new(x.to_vec()).unwrap()
    }

    fn pts(hp: &mut Hp, z: &[(f64, f64)]) -> Vec<Cplx> {
        z.iter().map(|&(a, b)| hp.c(hp.real(a), hp.real(b))).collect()
    }

    #[test]
    fn distinct_permutation_counts() {
        assert_eq!(distinct_permutations(&[2, 1, 0]).len(), 6);
        assert_eq!(distinct_permutations(&[1, 1, 0]).len(), 3);
        assert_eq!(distinct_permutations(&[0, 0]).len(), 1);
    }

    #[test]
    fn eval_examples() {
        let mut hp = Hp::new(128);
        let z = pts(&mut hp, &[(1.0, 0.0), (2.0, 0.0)]);
        let v = SymPoly::monomial(part(&[1, 0])).eval(&mut hp, &z).unwrap();
        assert!((hp.to_f64(&v.re) - 3.0).abs() < 1e-30);
        let z = pts(&mut hp, &[(2.0, 0.0), (3.0, 0.0)]);
        let v = SymPoly::monomial(part(&[1, 1])).eval(&mut hp, &z).unwrap();
        assert!((hp.to_f64(&v.re) - 6.0).abs() < 1e-30);
    }

    #[test]
    fn eval_matches_power_sum_form() {
        // m_(2) + m_(1,1) = (z1+z2)^2 - z1 z2
        let mut hp = Hp::new(128);
        let p = SymPoly::from_terms(2, [(part(&[2, 0]), int(1)), (part(&[1, 1]), int(1))]).unwrap();
        let z = pts(&mut hp, &[(0.3, -1.1), (-0.7, 0.25)]);
        let got = p.eval(&mut hp, &z).unwrap();
        let s = hp.cadd(&z[0], &z[1]);
        let want = hp.csub(&hp.csqr(&s), &hp.cmul(&z[0], &z[1]));
        assert!(hp.lt(&hp.cabs(&hp.csub(&got, &want)), &hp.real(1e-30)));
    }

    #[test]
    fn eval_is_permutation_invariant() {
        let mut hp = Hp::new(128);
        let p = SymPoly::from_terms(
            3,
            [(part(&[2, 1, 0]), frac(3, 7)), (part(&[1, 1, 1]), int(-2)), (part(&[3, 0, 0]), int(5))],
        )
        .unwrap();
        let z = pts(&mut hp, &[(0.3, 0.1), (-0.5, 0.9), (1.2, -0.4)]);
        let a = p.eval(&mut hp, &z).unwrap();
        let zr = vec![z[2].clone(), z[0].clone(), z[1].clone()];
        let b = p.eval(&mut hp, &zr).unwrap();
        assert!(hp.lt(&hp.cabs(&hp.csub(&a, &b)), &hp.real(1e-30)));
    }

    #[test]
    fn multiplication_of_orbits() {
        // m_(1)^2 = m_(2) + 2 m_(1,1) in two variables
        let m1 = SymPoly::monomial(part(&[1, 0]));
        let sq = m1.mul(&m1);
        assert_eq!(sq.coeff(&part(&[2, 0])), int(1));
        assert_eq!(sq.coeff(&part(&[1, 1])), int(2));
    }

    #[test]
    fn asymmetric_projection_is_rejected() {
        let mut p = Poly::zero(2);
        p.add_term(vec![1, 0], int(1));
        assert!(matches!(p.to_sympoly(), Err(Error::InvariantViolation(_))));
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let p = SymPoly::from_terms(
            3,
            [
                (part(&[2, 1, 0]), frac(-123456789012345678, 7)),
                (part(&[1, 1, 1]), frac(4, 3)),
            ],
        )
        .unwrap();
        let s = p.to_json();
        let q = SymPoly::from_json(&s).unwrap();
        assert_eq!(p, q);
        assert_eq!(q.to_json(), s);
        assert!(s.starts_with(r#"{"nvars":3,"terms":[{"partition":[2,1,0],"num":"-123456789012345678","den":"7"}"#));
    }

    #[test]
    fn json_accepts_short_partitions() {
        let q = SymPoly::from_json(r#"{"nvars":3,"terms":[{"partition":[1],"num":"2","den":"4"}]}"#).unwrap();
        assert_eq!(q.coeff(&part(&[1, 0, 0])), frac(1, 2));
        assert!(SymPoly::from_json(r#"{"nvars":1,"terms":[{"partition":[1,1],"num":"1","den":"1"}]}"#).is_err());
        assert!(SymPoly::from_json(r#"{"nvars":1,"terms":[{"partition":[1],"num":"1","den":"0"}]}"#).is_err());
    }
}
