//! The regularizing transform: exact constant-term extraction.
//!
//! For an integer vector `m` define
//!
//! ```text
//! f_m(z) = CT_ξ [ ξ^m · Π_{j<k} (1 − ξ_j/ξ_k)^λ · Π_{j,k} (1 − z_j/ξ_k)^{−λ} ]
//! ```
//!
//! expanded in `|z_j| < |ξ_1| < ⋯ < |ξ_N|`. Writing
//! `Π_{j<k}(1 − ξ_j/ξ_k)^λ = Σ_μ Π c_{μ_jk} ξ^{μ̂}` with `(1 − w)^λ = Σ c_p w^p`
//! and `Π_j (1 − z_j t)^{−λ} = Σ_q g_q(z) t^q`, the constant term is
//!
//! ```text
//! f_m = Σ_μ Π_{j<k} c_{μ_jk} · Π_k g_{m_k + μ̂_k}(z),
//! ```
//!
//! summed over `μ ≥ 0` with every `q_k = m_k + μ̂_k ≥ 0`.
//!
//! # Finiteness
//!
//! Let `c_l = Σ_{j<l≤k} μ_jk` be the cut profile of `μ̂`, so the tail sums of
//! `q` are `T_l(q) = T_l(m) − c_l`. Non-negativity of `q` forces
//! `c_l ≤ T_l(m)` for every `l ≥ 2`, and each `μ_jk` is bounded by every cut it
//! crosses. Hence the sum is finite, and `f_m = 0` as soon as some tail sum of
//! `m` is negative. Since `|q| = |m|` and `g_q` is homogeneous of degree `q`,
//! `f_m` is homogeneous of degree `|m|`.
//!
//! For `P_n = Σ_m α_n(m) f_m` only displacements with `c_l ≤ T_l(n)` contribute,
//! so a coefficient table of height `Σ_{l≥2} T_l(n)` already gives the exact
//! polynomial.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{pair_slots, IntVec, Partition};
use crate::rational::{gen_binomial, int};
use crate::singular::AlphaTable;
use crate::sympoly::{distinct_permutations, Poly, SymPoly};
use crate::Rat;

/// Parameters of the transform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformConfig {
    pub nvars: usize,
    pub lam: Rat,
    /// Terms of total `z`-degree above `zdeg` are discarded.
    pub zdeg: i64,
    /// Height of the coefficient table fed to [`assemble_regular`].
    pub depth: u64,
    /// Contour radius base `R > 1`; certifies convergence only.
    pub radius: Rat,
}

impl TransformConfig {
    pub fn new(nvars: usize, lam: Rat, zdeg: i64, depth: u64, radius: Rat) -> Result<Self> {
        if nvars < 1 {
            return Err(Error::Dimension("transform needs N >= 1".into()));
        }
        if radius <= Rat::one() {
            return Err(Error::Domain(format!("contour radius R = {radius} must exceed 1")));
        }
        if zdeg < 0 {
            return Err(Error::Configuration(format!("zdeg = {zdeg} is negative")));
        }
        Ok(TransformConfig {
            nvars,
            lam,
            zdeg,
            depth,
            radius,
        })
    }

    /// Defaults for a target partition: `zdeg = |n|`, `R = 2`.
    pub fn for_partition(n: &Partition, lam: Rat, depth: u64) -> Result<Self> {
        TransformConfig::new(n.len(), lam, n.size(), depth, int(2))
    }

    fn check_target(&self, n: &Partition) -> Result<()> {
        if n.len() != self.nvars {
            return Err(Error::Dimension(format!("partition {n} for N = {}", self.nvars)));
        }
        if self.zdeg < n.size() {
            return Err(Error::Configuration(format!(
                "zdeg = {} is below |n| = {}",
                self.zdeg,
                n.size()
            )));
        }
        Ok(())
    }
}

/// Caches the series coefficients shared between many `f_m`.
pub struct Transform {
    cfg: TransformConfig,
    pair_coeffs: Vec<Rat>,
    pochhammer: Vec<Rat>,
    g: BTreeMap<i64, Poly>,
}

impl Transform {
    pub fn new(cfg: TransformConfig) -> Self {
        Transform {
            cfg,
            pair_coeffs: vec![Rat::one()],
            pochhammer: vec![Rat::one()],
            g: BTreeMap::new(),
        }
    }

    pub fn config(&self) -> &TransformConfig {
        &self.cfg
    }

    fn pair_coeff(&mut self, p: u32) -> Rat {
        let p = p as usize;
        if p >= self.pair_coeffs.len() {
            self.pair_coeffs = gen_binomial(&self.cfg.lam, p.max(2 * self.pair_coeffs.len()));
        }
        self.pair_coeffs[p].clone()
    }

    /// `(λ)_p / p!`, the coefficient of `w^p` in `(1 − w)^{−λ}`.
    fn poch(&mut self, p: u32) -> Rat {
        let p = p as usize;
        while self.pochhammer.len() <= p {
            let k = self.pochhammer.len() as i64;
            let next = self.pochhammer[(k - 1) as usize].clone() * (&self.cfg.lam + int(k - 1)) / int(k);
            self.pochhammer.push(next);
        }
        self.pochhammer[p].clone()
    }

    /// `g_q = Σ_{|e| = q} Π_j (λ)_{e_j}/e_j! z^e`.
    fn g_poly(&mut self, q: i64) -> Poly {
        if let Some(p) = self.g.get(&q) {
            return p.clone();
        }
        let n = self.cfg.nvars;
        let mut out = Poly::zero(n);
        for part in crate::lattice::partitions_of(q, n) {
            let e = part.exponents();
            let c: Rat = e.iter().map(|&x| self.poch(x)).product();
            for perm in distinct_permutations(&e) {
                out.add_term(perm, c.clone());
            }
        }
        self.g.insert(q, out.clone());
        out
    }

    /// Raw constant-term extraction as a full polynomial (before symmetrization).
    pub fn f_raw(&mut self, m: &IntVec) -> Result<Poly> {
        let n = self.cfg.nvars;
        if m.len() != n {
            return Err(Error::Dimension(format!("index {m} for N = {n}")));
        }
        let mut out = Poly::zero(n);
        if m.sum() > self.cfg.zdeg {
            return Ok(out);
        }
        let tails = m.tail_sums();
        if tails.iter().any(|&t| t < 0) {
            return Ok(out);
        }
        let slots = pair_slots(n);
        // μ_jk is bounded by every cut c_l, j < l ≤ k, it contributes to
        let bounds: Vec<i64> = slots
            .iter()
            .map(|&(j, k)| (j + 1..=k).map(|l| tails[l]).min().unwrap_or(0))
            .collect();
        let mut mu = vec![0u32; slots.len()];
        let mut terms: Vec<(Vec<u32>, Rat)> = Vec::new();
        self.enumerate(m, &slots, &bounds, 0, &mut mu, &mut terms);
        for (q, c) in terms {
            let mut prod = Poly::one(n);
            for &qk in &q {
                if qk > 0 {
                    prod = prod.mul(&self.g_poly(qk as i64));
                }
            }
            out.add_scaled(&prod, &c);
        }
        Ok(out)
    }

    fn enumerate(
        &mut self,
        m: &IntVec,
        slots: &[(usize, usize)],
        bounds: &[i64],
        pos: usize,
        mu: &mut Vec<u32>,
        out: &mut Vec<(Vec<u32>, Rat)>,
    ) {
        if pos == slots.len() {
            let mut q: Vec<i64> = m.entries().to_vec();
            for (&(j, k), &x) in slots.iter().zip(mu.iter()) {
                q[j] += x as i64;
                q[k] -= x as i64;
            }
            if q.iter().any(|&x| x < 0) {
                return;
            }
            let mut c = Rat::one();
            for &x in mu.iter() {
                c *= self.pair_coeff(x);
                if c.is_zero() {
                    return;
                }
            }
            out.push((q.into_iter().map(|x| x as u32).collect(), c));
            return;
        }
        for x in 0..=bounds[pos].max(0) as u32 {
            mu[pos] = x;
            self.enumerate(m, slots, bounds, pos + 1, mu, out);
        }
        mu[pos] = 0;
    }

    /// `f_m` in the monomial symmetric basis.
    pub fn f_monomial(&mut self, m: &IntVec) -> Result<SymPoly> {
        self.f_raw(m)?.to_sympoly()
    }
}

/// One-shot `f_m`.
pub fn f_monomial(cfg: &TransformConfig, m: &IntVec) -> Result<SymPoly> {
    Transform::new(cfg.clone()).f_monomial(m)
}

/// A regular eigenfunction together with the raw coefficient of `m_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assembled {
    /// Monic in `m_n`.
    pub poly: SymPoly,
    /// Coefficient of `m_n` in `Σ α f_m` before normalization.
    pub normalization: Rat,
}

/// `Σ_m α_n(m) f_m`, normalized to be monic in `m_n`.
pub fn assemble_regular(cfg: &TransformConfig, table: &AlphaTable) -> Result<Assembled> {
    let n = Partition::try_from(table.n())?;
    cfg.check_target(&n)?;
    let mut tr = Transform::new(cfg.clone());
    let tails = n.to_intvec().tail_sums();
    let mut raw = Poly::zero(cfg.nvars);
    for (d, a) in table.truncate(cfg.depth).alpha() {
        // f vanishes unless every tail sum of n + d stays non-negative
        if d.tail_sums().iter().zip(&tails).any(|(x, t)| x + t < 0) {
            continue;
        }
        raw.add_scaled(&tr.f_raw(&(table.n() + d))?, a);
    }
    let sym = raw.to_sympoly()?;
    let (poly, normalization) = sym.normalize_monic(&n)?;
    Ok(Assembled {
        poly,
        normalization,
    })
}

/// At `λ = 1` the transform of the bare monomial is the Schur polynomial `s_n`.
pub fn schur_integral(cfg: &TransformConfig, n: &Partition) -> Result<SymPoly> {
    if cfg.lam != Rat::one() {
        return Err(Error::Configuration(format!(
            "the Schur specialization needs λ = 1, got {}",
            cfg.lam
        )));
    }
    cfg.check_target(n)?;
    f_monomial(cfg, &n.to_intvec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn part(x: &[i64]) -> Partition {
        Partition::new(x.to_vec()).unwrap()
    }

    fn cfg(n: usize, lam: Rat, zdeg: i64) -> TransformConfig {
        TransformConfig::new(n, lam, zdeg, 8, int(2)).unwrap()
    }

    #[test]
    fn schur_examples() {
        let c = cfg(2, int(1), 4);
        assert_eq!(f_monomial(&c, &IntVec::zeros(2)).unwrap(), SymPoly::one(2));
        assert_eq!(
            f_monomial(&c, &part(&[1, 0]).to_intvec()).unwrap(),
            SymPoly::monomial(part(&[1, 0]))
        );
        assert_eq!(
            schur_integral(&cfg(3, int(1), 1), &part(&[1, 0, 0])).unwrap(),
            SymPoly::monomial(part(&[1, 0, 0]))
        );
        assert_eq!(schur_integral(&c, &part(&[1, 1])).unwrap(), SymPoly::monomial(part(&[1, 1])));
        assert_eq!(schur_integral(&c, &part(&[2, 1])).unwrap(), SymPoly::monomial(part(&[2, 1])));
        assert!(schur_integral(&cfg(2, int(2), 3), &part(&[2, 1])).is_err());
    }

    #[test]
    fn negative_tail_sums_give_zero() {
        let c = cfg(3, frac(1, 2), 10);
        for m in [vec![3, -1, -1], vec![0, 2, -3], vec![1, 0, -1]] {
            assert!(f_monomial(&c, &IntVec::new(m).unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn raw_output_is_symmetric_and_homogeneous() {
        let c = cfg(3, frac(3, 2), 10);
        let mut tr = Transform::new(c);
        for m in [vec![2, 1, 0], vec![0, 1, 2], vec![3, -1, 1]] {
            let m = IntVec::new(m).unwrap();
            let raw = tr.f_raw(&m).unwrap();
            assert!(raw.is_symmetric());
            assert!(raw.terms().keys().all(|e| e.iter().sum::<u32>() as i64 == m.sum()));
        }
    }

    #[test]
    fn zdeg_truncates() {
        let c = cfg(2, int(2), 1);
        assert!(f_monomial(&c, &part(&[2, 0]).to_intvec()).unwrap().is_zero());
    }

    #[test]
    fn two_row_example_by_hand() {
        // f_(2,0) = g_2 = (λ)_2/2 m_2 + λ² m_11
        let lam = int(2);
        let f = f_monomial(&cfg(2, lam.clone(), 2), &part(&[2, 0]).to_intvec()).unwrap();
        assert_eq!(f.coeff(&part(&[2, 0])), int(3));
        assert_eq!(f.coeff(&part(&[1, 1])), int(4));
    }
}
