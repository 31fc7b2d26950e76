//! Singular eigenfunctions `ž^{n+s} Σ_d α_n(n+d) ž^d` built by the triangular
//! recursion of the operator on the monomials `ž^{m+s}`.
//!
//! With `ž^m = z_1^{m_1}⋯z_N^{m_N}` and `|z_1| < ⋯ < |z_N|`, the pair potential
//! expands as `1/(4 sin²((x_j − x_k)/2)) = −Σ_{ν≥1} ν (z_j/z_k)^ν`, so
//!
//! ```text
//! H ž^{m+s} = E_m ž^{m+s} − Σ_{j<k} γ_jk Σ_{ν≥1} ν ž^{m+νE_jk+s}.
//! ```
//!
//! Every step lowers the height by `ν(k − j)`, which makes both the operator
//! and its eigenvector recursion finite on height-truncated index sets.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{height, lowering_offsets, pair_slots, IntVec};
use crate::rational::int;
use crate::series::LaurentSeries;
use crate::spectrum::{gap_b, ModelParams};
use crate::triangular::SparseSystem;
use crate::Rat;

/// Coefficients `α_n(n + d)` keyed by displacement `d`, with the gaps used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaTable {
    n: IntVec,
    shift: Vec<Rat>,
    depth: u64,
    alpha: BTreeMap<IntVec, Rat>,
    gaps: BTreeMap<IntVec, Rat>,
}

impl AlphaTable {
    pub(crate) fn from_parts(
        n: IntVec,
        shift: Vec<Rat>,
        depth: u64,
        alpha: BTreeMap<IntVec, Rat>,
        gaps: BTreeMap<IntVec, Rat>,
    ) -> Self {
        AlphaTable {
            n,
            shift,
            depth,
            alpha,
            gaps,
        }
    }

    pub fn n(&self) -> &IntVec {
        &self.n
    }

    pub fn shift(&self) -> &[Rat] {
        &self.shift
    }

    pub fn depth(&self) -> u64 {
        self.depth
    }

    /// Non-zero coefficients keyed by displacement.
    pub fn alpha(&self) -> &BTreeMap<IntVec, Rat> {
        &self.alpha
    }

    /// The gap `b_n(n + d)` for every displacement visited by the sweep.
    pub fn gaps(&self) -> &BTreeMap<IntVec, Rat> {
        &self.gaps
    }

    pub fn get(&self, offset: &IntVec) -> Rat {
        self.alpha.get(offset).cloned().unwrap_or_else(Rat::zero)
    }

    /// Restriction to displacements of height `≤ depth`.
    pub fn truncate(&self, depth: u64) -> AlphaTable {
        let keep = |d: &IntVec| height(d).is_some_and(|h| h <= depth);
        AlphaTable {
            n: self.n.clone(),
            shift: self.shift.clone(),
            depth: depth.min(self.depth),
            alpha: self.alpha.iter().filter(|(d, _)| keep(d)).map(|(d, x)| (d.clone(), x.clone())).collect(),
            gaps: self.gaps.iter().filter(|(d, _)| keep(d)).map(|(d, x)| (d.clone(), x.clone())).collect(),
        }
    }

    pub fn to_series(&self) -> Result<LaurentSeries> {
        let mut s = LaurentSeries::zero(self.n.clone(), self.shift.clone(), self.depth)?;
        for (d, a) in &self.alpha {
            s.add_term(d.clone(), a.clone())?;
        }
        Ok(s)
    }

    pub fn entries(&self) -> Vec<AlphaEntry> {
        self.alpha
            .iter()
            .map(|(d, a)| AlphaEntry {
                m: (&self.n + d).entries().to_vec(),
                offset: d.entries().to_vec(),
                height: height(d).unwrap_or(0),
                alpha: a.to_string(),
                gap: self.gaps.get(d).map(|g| g.to_string()),
            })
            .collect()
    }
}

/// Flat, serializable view of one table entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlphaEntry {
    pub m: Vec<i64>,
    pub offset: Vec<i64>,
    pub height: u64,
    pub alpha: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<String>,
}

fn check_n(params: &ModelParams, n: &IntVec) -> Result<()> {
    if n.len() != params.nvars() {
        return Err(Error::Dimension(format!(
            "index {n} has length {} but N = {}",
            n.len(),
            params.nvars()
        )));
    }
    Ok(())
}

fn energy(params: &ModelParams, shift: &[Rat], m: &IntVec) -> Rat {
    let mut e = Rat::zero();
    for (j, &mj) in m.entries().iter().enumerate() {
        let a = int(mj) + &shift[j];
        e += &a * &a / &params.masses()[j];
    }
    e
}

/// The operator applied term by term, truncated at the series depth.
///
/// Exponents are read from the series' own shift vector.
pub fn apply_h(params: &ModelParams, s: &LaurentSeries) -> Result<LaurentSeries> {
    check_n(params, s.base())?;
    let nv = params.nvars();
    let mut out = LaurentSeries::zero(s.base().clone(), s.shift().to_vec(), s.depth())?;
    for (d, c) in s.terms() {
        let m = s.base() + d;
        out.add_term(d.clone(), c * energy(params, s.shift(), &m))?;
        let h = height(d).expect("series offsets lie in the lattice");
        for (j, k) in pair_slots(nv) {
            let g = params.gamma_jk(j, k);
            if g.is_zero() {
                continue;
            }
            let w = (k - j) as u64;
            let mut nu = 1u64;
            while h + nu * w <= s.depth() {
                out.add_term(d.step(j, k, nu as i64), -(g * c * int(nu as i64)))?;
                nu += 1;
            }
        }
    }
    Ok(out)
}

/// Backward neighbours `(d − νE_jk, γ_jk ν)` of a displacement inside the lattice.
fn sources<'a>(params: &'a ModelParams, d: &'a IntVec) -> impl Iterator<Item = (IntVec, Rat)> + 'a {
    pair_slots(params.nvars()).into_iter().flat_map(move |(j, k)| {
        let g = params.gamma_jk(j, k).clone();
        (1i64..)
            .map(move |nu| (d.step(j, k, -nu), nu))
            .take_while(|(src, _)| height(src).is_some())
            .filter(move |_| !g.is_zero())
            .map(move |(src, nu)| (src, params.gamma_jk(j, k) * int(nu)))
    })
}

/// Sign convention for the recursion denominators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GapSign {
    /// `b_n(m) = E_m − E_n`, the convention that yields eigenfunctions.
    #[default]
    MMinusN,
    /// `E_n − E_m`; kept to show that it does not.
    NMinusM,
}

/// `α_n(m) = b_n(m)⁻¹ Σ_{j<k} γ_jk Σ_ν ν α_n(m − νE_jk)`, swept in increasing height.
pub fn alpha_recursive(params: &ModelParams, n: &IntVec, depth: u64) -> Result<AlphaTable> {
    alpha_recursive_signed(params, n, depth, GapSign::MMinusN)
}

pub fn alpha_recursive_signed(
    params: &ModelParams,
    n: &IntVec,
    depth: u64,
    sign: GapSign,
) -> Result<AlphaTable> {
    check_n(params, n)?;
    let nv = params.nvars();
    let mut alpha = BTreeMap::new();
    let mut gaps = BTreeMap::new();
    alpha.insert(IntVec::zeros(nv), Rat::one());
    for d in lowering_offsets(nv, depth).into_iter().skip(1) {
        let m = n + &d;
        let mut b = gap_b(params, n, &m)?;
        if b.is_zero() {
            return Err(Error::Degeneracy { index: m });
        }
        if sign == GapSign::NMinusM {
            b = -b;
        }
        let mut acc = Rat::zero();
        for (src, w) in sources(params, &d) {
            if let Some(a) = alpha.get(&src) {
                acc += w * a;
            }
        }
        gaps.insert(d.clone(), b.clone());
        if !acc.is_zero() {
            alpha.insert(d, acc / b);
        }
    }
    Ok(AlphaTable::from_parts(n.clone(), params.shifts().to_vec(), depth, alpha, gaps))
}

/// Path-sum form of `α_n(n + d)`: the sum over ordered step sequences
/// `(j_r, k_r, ν_r)`, `r = 1..s ≤ smax`, with `Σ ν_r E_{j_r k_r} = d`, of
/// `Π_r γ_{j_r k_r} ν_r / b_n(n + Σ_{ℓ≤r} ν_ℓ E_{j_ℓ k_ℓ})`.
///
/// Path lengths are bounded by the height of `d`, so `smax ≥ height(d)` gives
/// the exact coefficient.
pub fn alpha_closed(params: &ModelParams, n: &IntVec, d: &IntVec, smax: u64) -> Result<Rat> {
    check_n(params, n)?;
    if d.len() != n.len() {
        return Err(Error::Dimension(format!("offset {d} for index {n}")));
    }
    if height(d).is_none() {
        return Ok(Rat::zero());
    }
    fn walk(
        params: &ModelParams,
        n: &IntVec,
        pos: &IntVec,
        target: &IntVec,
        steps_left: u64,
    ) -> Result<Rat> {
        if pos == target {
            return Ok(Rat::one());
        }
        if steps_left == 0 {
            return Ok(Rat::zero());
        }
        let mut total = Rat::zero();
        for (j, k) in pair_slots(params.nvars()) {
            let g = params.gamma_jk(j, k);
            if g.is_zero() {
                continue;
            }
            for nu in 1i64.. {
                let next = pos.step(j, k, nu);
                if height(&(target - &next)).is_none() {
                    break;
                }
                let m = n + &next;
                let b = gap_b(params, n, &m)?;
                if b.is_zero() {
                    return Err(Error::Degeneracy { index: m });
                }
                let rest = walk(params, n, &next, target, steps_left - 1)?;
                if !rest.is_zero() {
                    total += g * int(nu) / b * rest;
                }
            }
        }
        Ok(total)
    }
    walk(params, n, &IntVec::zeros(n.len()), d, smax)
}

/// `P̌_n` truncated at height `depth`, with leading coefficient 1.
pub fn singular_eigenfunction(params: &ModelParams, n: &IntVec, depth: u64) -> Result<LaurentSeries> {
    alpha_recursive(params, n, depth)?.to_series()
}

/// The operator restricted to displacements of height `≤ depth` around `n`,
/// as an explicit triangular system (diagonal `E_{n+d}`, entries `−γ_jk ν`).
pub fn lattice_system(params: &ModelParams, n: &IntVec, depth: u64) -> Result<SparseSystem<IntVec>> {
    check_n(params, n)?;
    let mut sys = SparseSystem::new();
    for d in lowering_offsets(params.nvars(), depth) {
        let h = height(&d).expect("lattice offset");
        sys.set_diagonal(d.clone(), h, energy(params, params.shifts(), &(n + &d)));
        for (src, w) in sources(params, &d) {
            sys.add_entry(d.clone(), src, -w);
        }
    }
    Ok(sys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use crate::spectrum::eigenvalue;
    use crate::triangular::triangular_eigenvector;

    fn v(x: &[i64]) -> IntVec {
        IntVec::new(x.to_vec()).unwrap()
    }

    #[test]
    fn free_case_is_a_single_monomial() {
        let p = ModelParams::cs(3, int(1)).unwrap();
        let t = alpha_recursive(&p, &v(&[2, 1, 0]), 6).unwrap();
        assert_eq!(t.alpha().len(), 1);
        let s = singular_eigenfunction(&p, &v(&[2, 1, 0]), 6).unwrap();
        assert_eq!(s.terms().len(), 1);
    }

    #[test]
    fn recursion_examples() {
        let lam = frac(7, 3);
        let p = ModelParams::cs(2, lam.clone()).unwrap();
        let t = alpha_recursive(&p, &v(&[1, 0]), 1).unwrap();
        assert_eq!(t.get(&v(&[1, -1])), &lam * (&lam - int(1)) / (&lam + int(2)));

        let p = ModelParams::cs(2, int(2)).unwrap();
        let s = singular_eigenfunction(&p, &v(&[1, 0]), 2).unwrap();
        assert_eq!(s.terms().len(), 3);
        assert_eq!(s.coeff_at(&v(&[1, 0])), int(1));
        assert_eq!(s.coeff_at(&v(&[2, -1])), frac(1, 2));
        assert_eq!(s.coeff_at(&v(&[3, -2])), frac(1, 2));
    }

    #[test]
    fn apply_h_example() {
        let lam = int(3);
        let p = ModelParams::cs(2, lam.clone()).unwrap();
        let n = v(&[2, 0]);
        let f = LaurentSeries::monomial(n.clone(), p.shifts().to_vec(), 2).unwrap();
        let hf = apply_h(&p, &f).unwrap();
        let g = p.gamma_jk(0, 1).clone();
        assert_eq!(hf.coeff(&v(&[0, 0])), eigenvalue(&p, &n).unwrap());
        assert_eq!(hf.coeff(&v(&[1, -1])), -g.clone());
        assert_eq!(hf.coeff(&v(&[2, -2])), -g * int(2));
        assert_eq!(hf.terms().len(), 3);
    }

    #[test]
    fn residual_vanishes_exactly() {
        let p = ModelParams::cs(3, frac(1, 2)).unwrap();
        let n = v(&[2, 1, 0]);
        let s = singular_eigenfunction(&p, &n, 5).unwrap();
        let r = apply_h(&p, &s)
            .unwrap()
            .scale_add(&-eigenvalue(&p, &n).unwrap(), &s)
            .unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn closed_form_matches_recursion() {
        let p = ModelParams::cs(3, int(3)).unwrap();
        let n = v(&[1, 1, 0]);
        let t = alpha_recursive(&p, &n, 4).unwrap();
        for d in lowering_offsets(3, 4) {
            assert_eq!(alpha_closed(&p, &n, &d, 4).unwrap(), t.get(&d), "d = {d}");
        }
    }

    #[test]
    fn generic_solver_reproduces_recursion() {
        let p = ModelParams::cs(3, frac(1, 2)).unwrap();
        let n = v(&[3, 1, 0]);
        let sys = lattice_system(&p, &n, 5).unwrap();
        let v = triangular_eigenvector(&sys, &IntVec::zeros(3), 5).unwrap();
        assert_eq!(&v, alpha_recursive(&p, &n, 5).unwrap().alpha());
    }
}
