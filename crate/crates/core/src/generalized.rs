//! Gauged eigenfunctions `Ψ_0 · ž^{n+s}(1 + lower terms)` with
//! `Ψ_0 = Π_{j<k} sin((x_j − x_k)/2)^{λ_jk}`.
//!
//! Conjugating the operator by `Ψ_0` gives, on `f̌_m = ž^{m+s}` with `a = m + s`,
//!
//! ```text
//! G f̌_m = [Σ_j a_j²/M_j − Σ_{j<k} λ_jk (a_j/M_j − a_k/M_k) + E_0] f̌_m
//!       − Σ_{j<k} Σ_{ν≥1} [ν γ'_jk + 2λ_jk (a_j/M_j − a_k/M_k)] f̌_{m+νE_jk}
//!       + Σ_{a<b<c} three-body terms,
//! ```
//!
//! where `E_0 = Σ_j t_j²/M_j` (see [`gauge_drift`]) and the three-body part is
//! the multiplication operator
//!
//! ```text
//! A (S_ab + S_ac + 2 S_ab S_ac) − B (S_ab + S_bc + 2 S_ab S_bc) + C (S_ac + S_bc + 2 S_ac S_bc),
//! A = λ_ab λ_ac / M_a,  B = λ_ab λ_bc / M_b,  C = λ_ac λ_bc / M_c,  S_jk = Σ_{ν≥1} (z_j/z_k)^ν.
//! ```
//!
//! It stems from products of two cotangents sharing one coordinate and is
//! absent for `N = 2`. The leading coefficient is `Σ_j (n_j + s_j − t_j)²/M_j`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{height, lowering_offsets, pair_slots, IntVec};
use crate::rational::int;
use crate::series::LaurentSeries;
use crate::singular::AlphaTable;
use crate::spectrum::{gamma_prime, gauge_drift, gauge_energy, ModelParams, PairMap};
use crate::triangular::{triangular_eigenvector, SparseSystem};
use crate::Rat;

/// `(first pair, second pair, coefficient)`; a `None` second pair is a single `S`.
type Triple = ((usize, usize), Option<(usize, usize)>, Rat);

/// Precomputed coefficients of the gauged operator.
struct Gauged<'a> {
    params: &'a ModelParams,
    lam: &'a PairMap,
    gp: PairMap,
    e0: Rat,
    triples: Vec<Triple>,
}

impl<'a> Gauged<'a> {
    fn new(params: &'a ModelParams) -> Result<Self> {
        let lam = params.require_lamjk()?;
        let m = params.masses();
        let n = params.nvars();
        let mut triples = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let (lab, lac, lbc) = (&lam[&(a, b)], &lam[&(a, c)], &lam[&(b, c)]);
                    let ca = lab * lac / &m[a];
                    let cb = lab * lbc / &m[b];
                    let cc = lac * lbc / &m[c];
                    let two = int(2);
                    triples.push(((a, b), None, &ca - &cb));
                    triples.push(((a, c), None, &ca + &cc));
                    triples.push(((b, c), None, &cc - &cb));
                    triples.push(((a, b), Some((a, c)), &two * &ca));
                    triples.push(((a, b), Some((b, c)), -(&two * &cb)));
                    triples.push(((a, c), Some((b, c)), &two * &cc));
                }
            }
        }
        triples.retain(|t| !t.2.is_zero());
        Ok(Gauged {
            params,
            lam,
            gp: gamma_prime(params)?,
            e0: gauge_energy(params)?,
            triples,
        })
    }

    fn velocities(&self, shift: &[Rat], m: &IntVec) -> Vec<Rat> {
        m.entries()
            .iter()
            .zip(shift)
            .zip(self.params.masses())
            .map(|((&mj, sj), mass)| (int(mj) + sj) / mass)
            .collect()
    }

    fn diagonal(&self, shift: &[Rat], m: &IntVec) -> Rat {
        let u = self.velocities(shift, m);
        let mut e = self.e0.clone();
        for (j, uj) in u.iter().enumerate() {
            e += uj * uj * &self.params.masses()[j];
        }
        for (&(j, k), l) in self.lam {
            e -= l * (&u[j] - &u[k]);
        }
        e
    }

    /// Off-diagonal image of `f̌_{n+d}`: `(target displacement, coefficient)` pairs
    /// with target height `≤ depth`.
    fn lowering(&self, n: &IntVec, shift: &[Rat], d: &IntVec, depth: u64) -> Vec<(IntVec, Rat)> {
        let h = height(d).expect("lattice offset");
        let u = self.velocities(shift, &(n + d));
        let mut out = Vec::new();
        for (j, k) in pair_slots(self.params.nvars()) {
            let w = (k - j) as u64;
            let drift = int(2) * &self.lam[&(j, k)] * (&u[j] - &u[k]);
            let gp = &self.gp[&(j, k)];
            let mut nu = 1u64;
            while h + nu * w <= depth {
                let c = -(gp * int(nu as i64) + &drift);
                if !c.is_zero() {
                    out.push((d.step(j, k, nu as i64), c));
                }
                nu += 1;
            }
        }
        for ((j1, k1), second, c) in &self.triples {
            let w1 = (k1 - j1) as u64;
            let mut nu = 1u64;
            while h + nu * w1 <= depth {
                let d1 = d.step(*j1, *k1, nu as i64);
                match second {
                    None => out.push((d1, c.clone())),
                    Some((j2, k2)) => {
                        let w2 = (k2 - j2) as u64;
                        let mut mu = 1u64;
                        while h + nu * w1 + mu * w2 <= depth {
                            out.push((d1.step(*j2, *k2, mu as i64), c.clone()));
                            mu += 1;
                        }
                    }
                }
                nu += 1;
            }
        }
        out
    }
}

/// The gauged operator (including `E_0`) applied to a truncated series.
pub fn apply_gauged(params: &ModelParams, s: &LaurentSeries) -> Result<LaurentSeries> {
    if s.nvars() != params.nvars() {
        return Err(Error::Dimension("series and parameters disagree on N".into()));
    }
    let g = Gauged::new(params)?;
    let mut out = LaurentSeries::zero(s.base().clone(), s.shift().to_vec(), s.depth())?;
    for (d, c) in s.terms() {
        out.add_term(d.clone(), c * g.diagonal(s.shift(), &(s.base() + d)))?;
        for (t, x) in g.lowering(s.base(), s.shift(), d, s.depth()) {
            out.add_term(t, x * c)?;
        }
    }
    Ok(out)
}

/// The gauged operator around `n` on displacements of height `≤ depth`.
pub fn gauged_system(params: &ModelParams, n: &IntVec, depth: u64) -> Result<SparseSystem<IntVec>> {
    if n.len() != params.nvars() {
        return Err(Error::Dimension(format!("index {n} for N = {}", params.nvars())));
    }
    let g = Gauged::new(params)?;
    let shift = params.shifts();
    let mut sys = SparseSystem::new();
    for d in lowering_offsets(params.nvars(), depth) {
        let h = height(&d).expect("lattice offset");
        sys.set_diagonal(d.clone(), h, g.diagonal(shift, &(n + &d)));
        for (t, x) in g.lowering(n, shift, &d, depth) {
            sys.add_entry(t, d.clone(), x);
        }
    }
    Ok(sys)
}

/// Coefficients of the gauged eigenfunction with leading index `n`, solved by
/// the generic triangular sweep. Gaps are `E_m − E_n` of the gauged diagonal.
pub fn generalized_alpha(params: &ModelParams, n: &IntVec, depth: u64) -> Result<AlphaTable> {
    let sys = gauged_system(params, n, depth)?;
    let g = Gauged::new(params)?;
    let e_n = g.diagonal(params.shifts(), n);
    let gaps: BTreeMap<IntVec, Rat> = lowering_offsets(params.nvars(), depth)
        .into_iter()
        .skip(1)
        .map(|d| {
            let b = g.diagonal(params.shifts(), &(n + &d)) - &e_n;
            (d, b)
        })
        .collect();
    let zero = IntVec::zeros(params.nvars());
    let alpha = triangular_eigenvector(&sys, &zero, depth).map_err(|e| match e {
        Error::DegenerateDiagonal(_) => {
            let d = gaps.iter().find(|(_, b)| b.is_zero()).map(|(d, _)| d.clone());
            Error::Degeneracy {
                index: n + &d.unwrap_or(zero.clone()),
            }
        }
        other => other,
    })?;
    Ok(AlphaTable::from_parts(n.clone(), params.shifts().to_vec(), depth, alpha, gaps))
}

/// Shift vector `s − t` under which `Ψ_0 · P̌` is an ungauged series.
pub fn ungauged_shift(params: &ModelParams) -> Result<Vec<Rat>> {
    Ok(params
        .shifts()
        .iter()
        .zip(gauge_drift(params)?)
        .map(|(s, t)| s - t)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use crate::singular::{alpha_recursive, apply_h, singular_eigenfunction};
    use crate::spectrum::{eigenvalue, generalized_eigenvalue};

    fn v(x: &[i64]) -> IntVec {
        IntVec::new(x.to_vec()).unwrap()
    }

    fn params3() -> ModelParams {
        let gamma: PairMap = [((0, 1), frac(3, 4)), ((0, 2), frac(-5, 3)), ((1, 2), frac(7, 2))]
            .into_iter()
            .collect();
        ModelParams::custom(
            vec![int(1), frac(3, 2), int(2)],
            int(1),
            gamma,
            vec![frac(1, 7), frac(-2, 9), frac(3, 11)],
        )
        .unwrap()
        .with_lamjk([((0, 1), frac(1, 2)), ((0, 2), frac(2, 3)), ((1, 2), frac(-3, 4))].into_iter().collect())
        .unwrap()
    }

    #[test]
    fn zero_pair_exponents_reduce_to_plain_recursion() {
        let p = ModelParams::cs(3, frac(1, 2)).unwrap().with_uniform_lamjk(&int(0)).unwrap();
        let n = v(&[2, 1, 0]);
        assert_eq!(
            generalized_alpha(&p, &n, 5).unwrap().alpha(),
            alpha_recursive(&p, &n, 5).unwrap().alpha()
        );
    }

    #[test]
    fn leading_coefficient_is_the_eigenvalue() {
        let p = params3();
        let n = v(&[1, 0, -1]);
        let s = generalized_alpha(&p, &n, 4).unwrap().to_series().unwrap();
        let r = apply_gauged(&p, &s)
            .unwrap()
            .scale_add(&-generalized_eigenvalue(&p, &n).unwrap(), &s)
            .unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn gauge_factor_maps_onto_plain_eigenfunction() {
        let p = params3();
        let n = v(&[2, 0, 1]);
        let depth = 5;
        let gauged = generalized_alpha(&p, &n, depth).unwrap().to_series().unwrap();
        let product = gauged
            .mul_pair_binomials(p.lamjk().unwrap())
            .unwrap()
            .with_shift(ungauged_shift(&p).unwrap())
            .unwrap();
        let plain_params = p.clone().with_shifts(ungauged_shift(&p).unwrap()).unwrap();
        let plain = singular_eigenfunction(&plain_params, &n, depth).unwrap();
        assert_eq!(product, plain);
        assert_eq!(
            generalized_eigenvalue(&p, &n).unwrap(),
            eigenvalue(&plain_params, &n).unwrap()
        );
        let r = apply_h(&plain_params, &product)
            .unwrap()
            .scale_add(&-eigenvalue(&plain_params, &n).unwrap(), &product)
            .unwrap();
        assert!(r.is_zero());
    }
}
