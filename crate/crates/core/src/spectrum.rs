//! Model parameters and the closed-form scalar formulas: eigenvalues, gaps,
//! groundstate energies, shift vectors and the convergence predicates.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{enumerate_mu, pair_slots, IntVec};
use crate::rational::{int, to_f64};
use crate::Rat;

pub type PairMap = BTreeMap<(usize, usize), Rat>;

/// Parameters of the operator `−Σ M_j⁻¹ ∂_j² + Σ_{j<k} γ_jk / (4 sin²((x_j − x_k)/2))`
/// together with the exponent shifts `s_j` of the series ansatz and, for the
/// gauged family, the pair exponents `λ_jk`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelParams {
    n: usize,
    masses: Vec<Rat>,
    lam: Rat,
    gamma: PairMap,
    shifts: Vec<Rat>,
    lamjk: Option<PairMap>,
}

impl ModelParams {
    /// Equal masses, `γ_jk = 2λ(λ − 1)` and the shifts of [`cs_shifts`].
    pub fn cs(n: usize, lam: Rat) -> Result<Self> {
        check_n(n)?;
        let g = int(2) * &lam * (&lam - int(1));
        Ok(ModelParams {
            n,
            masses: vec![int(1); n],
            gamma: pair_slots(n).into_iter().map(|p| (p, g.clone())).collect(),
            shifts: cs_shifts(n, &lam),
            lam,
            lamjk: None,
        })
    }

    /// Arbitrary masses with `γ_jk = (M_j + M_k) λ (M_j M_k λ − 1)`, zero shifts.
    pub fn with_masses(masses: Vec<Rat>, lam: Rat) -> Result<Self> {
        let n = masses.len();
        check_n(n)?;
        check_masses(&masses)?;
        let gamma = pair_slots(n)
            .into_iter()
            .map(|(j, k)| {
                let (mj, mk) = (&masses[j], &masses[k]);
                ((j, k), (mj + mk) * &lam * (mj * mk * &lam - int(1)))
            })
            .collect();
        Ok(ModelParams {
            n,
            masses,
            lam,
            gamma,
            shifts: vec![Rat::zero(); n],
            lamjk: None,
        })
    }

    /// Fully explicit parameters. `gamma` must cover every pair `j < k`.
    pub fn custom(masses: Vec<Rat>, lam: Rat, gamma: PairMap, shifts: Vec<Rat>) -> Result<Self> {
        let n = masses.len();
        check_n(n)?;
        check_masses(&masses)?;
        if shifts.len() != n {
            return Err(Error::Dimension(format!("{} shifts for N = {n}", shifts.len())));
        }
        check_pairs(n, &gamma, "gamma")?;
        Ok(ModelParams {
            n,
            masses,
            lam,
            gamma,
            shifts,
            lamjk: None,
        })
    }

    pub fn with_shifts(mut self, shifts: Vec<Rat>) -> Result<Self> {
        if shifts.len() != self.n {
            return Err(Error::Dimension(format!("{} shifts for N = {}", shifts.len(), self.n)));
        }
        self.shifts = shifts;
        Ok(self)
    }

    pub fn with_gamma(mut self, gamma: PairMap) -> Result<Self> {
        check_pairs(self.n, &gamma, "gamma")?;
        self.gamma = gamma;
        Ok(self)
    }

    pub fn with_lamjk(mut self, lamjk: PairMap) -> Result<Self> {
        check_pairs(self.n, &lamjk, "lamjk")?;
        self.lamjk = Some(lamjk);
        Ok(self)
    }

    /// `λ_jk = λ` on every pair.
    pub fn with_uniform_lamjk(self, lam: &Rat) -> Result<Self> {
        let n = self.n;
        self.with_lamjk(pair_slots(n).into_iter().map(|p| (p, lam.clone())).collect())
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn masses(&self) -> &[Rat] {
        &self.masses
    }

    pub fn lam(&self) -> &Rat {
        &self.lam
    }

    pub fn gamma(&self) -> &PairMap {
        &self.gamma
    }

    pub fn gamma_jk(&self, j: usize, k: usize) -> &Rat {
        &self.gamma[&(j, k)]
    }

    pub fn shifts(&self) -> &[Rat] {
        &self.shifts
    }

    pub fn lamjk(&self) -> Option<&PairMap> {
        self.lamjk.as_ref()
    }

    pub(crate) fn require_lamjk(&self) -> Result<&PairMap> {
        self.lamjk
            .as_ref()
            .ok_or_else(|| Error::Configuration("pair exponents λ_jk are not set".into()))
    }

    /// True when every `γ_jk` vanishes, so the series ansatz is a single monomial.
    pub fn is_free(&self) -> bool {
        self.gamma.values().all(Zero::is_zero)
    }

    pub fn masses_positive(&self) -> bool {
        self.masses.iter().all(Signed::is_positive)
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Dimension(format!("need N >= 2 particles, got {n}")));
    }
    Ok(())
}

fn check_masses(masses: &[Rat]) -> Result<()> {
    match masses.iter().position(Zero::is_zero) {
        Some(j) => Err(Error::ZeroMass(j)),
        None => Ok(()),
    }
}

fn check_pairs(n: usize, map: &PairMap, what: &str) -> Result<()> {
    for (j, k) in pair_slots(n) {
        if !map.contains_key(&(j, k)) {
            return Err(Error::Configuration(format!("{what} is missing pair ({},{})", j + 1, k + 1)));
        }
    }
    if map.len() != n * (n - 1) / 2 {
        return Err(Error::Configuration(format!("{what} has entries outside 1 <= j < k <= N")));
    }
    Ok(())
}

fn check_len(params: &ModelParams, v: &IntVec) -> Result<()> {
    if v.len() != params.n {
        return Err(Error::Dimension(format!(
            "index {v} has length {} but N = {}",
            v.len(),
            params.n
        )));
    }
    Ok(())
}

/// `s_j = (N + 1 − 2j) λ / 2`.
pub fn cs_shifts(n: usize, lam: &Rat) -> Vec<Rat> {
    (1..=n as i64)
        .map(|j| int(n as i64 + 1 - 2 * j) * lam / int(2))
        .collect()
}

/// `E_n = Σ_j (n_j + s_j)² / M_j`.
pub fn eigenvalue(params: &ModelParams, n: &IntVec) -> Result<Rat> {
    check_len(params, n)?;
    let mut e = Rat::zero();
    for (j, &nj) in n.entries().iter().enumerate() {
        let a = int(nj) + &params.shifts[j];
        e += &a * &a / &params.masses[j];
    }
    Ok(e)
}

/// `b_n(m) = E_m − E_n = Σ_j (m_j − n_j)(m_j + n_j + 2 s_j) / M_j`.
pub fn gap_b(params: &ModelParams, n: &IntVec, m: &IntVec) -> Result<Rat> {
    check_len(params, n)?;
    check_len(params, m)?;
    let mut b = Rat::zero();
    for j in 0..params.n {
        let (mj, nj) = (m.entries()[j], n.entries()[j]);
        b += int(mj - nj) * (int(mj + nj) + int(2) * &params.shifts[j]) / &params.masses[j];
    }
    Ok(b)
}

/// Minimum of `|b_n(n + μ̂)|` over `0 < Σ μ_jk ≤ depth`; exactly zero on a degeneracy.
pub fn gap_certificate(params: &ModelParams, n: &IntVec, depth: u64) -> Result<Rat> {
    check_len(params, n)?;
    let mut best: Option<Rat> = None;
    for mu in enumerate_mu(params.n, depth)?.into_iter().skip(1) {
        let b = gap_b(params, n, &(n + &mu.displacement()))?.abs();
        if b.is_zero() {
            return Ok(b);
        }
        if best.as_ref().is_none_or(|x| &b < x) {
            best = Some(b);
        }
    }
    best.ok_or_else(|| Error::Configuration("gap certificate needs depth >= 1".into()))
}

/// The gap bound `Δ = 2λ` of the equal-mass model.
pub fn cs_gap_bound(lam: &Rat) -> Rat {
    int(2) * lam
}

/// `ℰ_0 = (λ²/12) ((Σ M_j)³ − Σ M_j³)`.
pub fn groundstate_energy(params: &ModelParams) -> Rat {
    let total: Rat = params.masses.iter().sum();
    let cubes: Rat = params.masses.iter().map(|m| m * m * m).sum();
    &params.lam * &params.lam / int(12) * (&total * &total * &total - cubes)
}

fn lam_pair(l: &PairMap, a: usize, b: usize) -> Rat {
    let key = if a < b { (a, b) } else { (b, a) };
    l.get(&key).cloned().unwrap_or_else(Rat::zero)
}

/// The closed-form constant
/// `Σ_{j<k<l} λ_jk λ_jl / (2M_j) − Σ_{j≠k} λ_jk² / (4M_j)` with `λ_kj = λ_jk`.
///
/// This expression is kept for reference only: it is not the energy shift of
/// the gauge transformation (it is negative for `N = 2`). See [`gauge_energy`].
pub fn e0_generalized(params: &ModelParams) -> Result<Rat> {
    let l = params.require_lamjk()?;
    let n = params.n;
    let mut e = Rat::zero();
    for j in 0..n {
        for k in j + 1..n {
            for m in k + 1..n {
                e += lam_pair(l, j, k) * lam_pair(l, j, m) / (int(2) * &params.masses[j]);
            }
        }
    }
    for j in 0..n {
        for k in 0..n {
            if j != k {
                let x = lam_pair(l, j, k);
                e -= &x * &x / (int(4) * &params.masses[j]);
            }
        }
    }
    Ok(e)
}

/// `t_j = ½ Σ_{k>j} λ_jk − ½ Σ_{k<j} λ_kj`, the exponent drift of the gauge factor.
pub fn gauge_drift(params: &ModelParams) -> Result<Vec<Rat>> {
    let l = params.require_lamjk()?;
    let n = params.n;
    let half = Rat::new(1.into(), 2.into());
    Ok((0..n)
        .map(|j| {
            let mut t = Rat::zero();
            for k in 0..n {
                if k > j {
                    t += &half * lam_pair(l, j, k);
                } else if k < j {
                    t -= &half * lam_pair(l, k, j);
                }
            }
            t
        })
        .collect())
}

/// Energy shift `E_0 = Σ_j t_j² / M_j` between the operator and its gauged form.
pub fn gauge_energy(params: &ModelParams) -> Result<Rat> {
    Ok(gauge_drift(params)?
        .iter()
        .zip(&params.masses)
        .map(|(t, m)| t * t / m)
        .sum())
}

/// `γ'_jk = γ_jk − (M_j + M_k)/(M_j M_k) · λ_jk(λ_jk − 1)`.
pub fn gamma_prime(params: &ModelParams) -> Result<PairMap> {
    let l = params.require_lamjk()?;
    Ok(params
        .gamma
        .iter()
        .map(|(&(j, k), g)| {
            let (mj, mk) = (&params.masses[j], &params.masses[k]);
            let ljk = &l[&(j, k)];
            ((j, k), g - (mj + mk) / (mj * mk) * ljk * (ljk - int(1)))
        })
        .collect())
}

/// Eigenvalue of `Ψ_0 ž^{n+s}(1 + lower terms)` for the gauged family:
/// `Σ_j (n_j + s_j − t_j)² / M_j`.
pub fn generalized_eigenvalue(params: &ModelParams, n: &IntVec) -> Result<Rat> {
    check_len(params, n)?;
    let t = gauge_drift(params)?;
    let mut e = Rat::zero();
    for (j, tj) in t.iter().enumerate() {
        let a = int(n.entries()[j]) + &params.shifts[j] - tj;
        e += &a * &a / &params.masses[j];
    }
    Ok(e)
}

/// Same eigenvalue written as `Σ a_j²/M_j − Σ_{j<k} λ_jk (a_j/M_j − a_k/M_k) + E_0`
/// with `a = n + s`.
pub fn generalized_eigenvalue_expanded(params: &ModelParams, n: &IntVec) -> Result<Rat> {
    check_len(params, n)?;
    let l = params.require_lamjk()?;
    let a: Vec<Rat> = (0..params.n)
        .map(|j| int(n.entries()[j]) + &params.shifts[j])
        .collect();
    let mut e = gauge_energy(params)?;
    for (aj, mj) in a.iter().zip(&params.masses) {
        e += aj * aj / mj;
    }
    for (&(j, k), ljk) in l {
        e -= ljk * (&a[j] / &params.masses[j] - &a[k] / &params.masses[k]);
    }
    Ok(e)
}

/// Left-hand sides of the convergence and square-integrability predicates on
/// the contour `|z_j| = R^j`, with the reference radius and gap bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PtReport {
    #[serde(serialize_with = "ser_rat")]
    pub radius: Rat,
    /// `Σ_{j<k} |γ_jk| t/(1 − t)²`, `t = R^{j−k}`.
    #[serde(serialize_with = "ser_rat")]
    pub cond1_lhs: Rat,
    /// `Σ_{j<k} |γ_jk| u/(1 + u)²`, `u = R^{−2(k−j)}`.
    #[serde(serialize_with = "ser_rat")]
    pub cond3_lhs: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub delta: Rat,
    /// `max(2, N(N − 1)|λ − 1|/8)`.
    #[serde(serialize_with = "ser_rat")]
    pub r_min: Rat,
    pub cond1_holds: bool,
    pub cond3_holds: bool,
    pub cond1_lhs_f64: f64,
    pub cond3_lhs_f64: f64,
}

fn ser_rat<S: serde::Serializer>(x: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Reference radius `max(2, N(N − 1)|λ − 1|/8)`.
pub fn reference_radius(n: usize, lam: &Rat) -> Rat {
    let r = int((n * (n.saturating_sub(1))) as i64) * (lam - int(1)).abs() / int(8);
    r.max(int(2))
}

/// Evaluates both predicates at radius `R > 1` against `Δ` (default `2λ`).
pub fn pt_conditions(params: &ModelParams, radius: &Rat, delta: Option<Rat>) -> Result<PtReport> {
    if radius <= &Rat::one() {
        return Err(Error::Domain(format!("contour radius R = {radius} must exceed 1")));
    }
    let delta = delta.unwrap_or_else(|| cs_gap_bound(&params.lam));
    let mut c1 = Rat::zero();
    let mut c3 = Rat::zero();
    for (&(j, k), g) in &params.gamma {
        let g = g.abs();
        let d = (k - j) as i32;
        let t = radius.pow(-d);
        let one_m = Rat::one() - &t;
        c1 += &g * &t / (&one_m * &one_m);
        let u = radius.pow(-2 * d);
        let one_p = Rat::one() + &u;
        c3 += &g * &u / (&one_p * &one_p);
    }
    Ok(PtReport {
        radius: radius.clone(),
        cond1_holds: c1 < delta,
        cond3_holds: c3 < delta,
        cond1_lhs_f64: to_f64(&c1),
        cond3_lhs_f64: to_f64(&c3),
        cond1_lhs: c1,
        cond3_lhs: c3,
        r_min: reference_radius(params.n, &params.lam),
        delta,
    })
}
