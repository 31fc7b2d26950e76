//! High-precision checks of the analytic identities behind the construction.
//!
//! Every check works with closed-form logarithmic derivatives. With
//! `φ(z) = ½ cot(z/2)` one has `∂ log sin(z/2) = φ(z)` and
//! `φ'(z) = −1/(4 sin²(z/2))`, so for `F = Π f_i` the quantity
//! `(−Σ M_j⁻¹ ∂_j² F)/F = −Σ M_j⁻¹ ((∂_j log F)² + ∂_j² log F)` is a finite sum
//! of cotangents evaluated at the point.

use std::f64::consts::PI;

use astro_float::BigFloat;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hp::{Cplx, Hp};
use crate::spectrum::{groundstate_energy, ModelParams};
use crate::sympoly::{Poly, SymPoly};
use crate::Rat;

/// Pairwise distances below this are rejected as ill-conditioned.
const POLE_GUARD: f64 = 1e-8;

/// Minimum pairwise separation of sampled coordinates.
pub const MIN_SEPARATION: f64 = 0.1;

/// Coordinates `x` (and `y` for the kernel identity), in radians.
#[derive(Debug, Clone)]
pub struct EvalPoint {
    pub x: Vec<Cplx>,
    pub y: Option<Vec<Cplx>>,
}

impl EvalPoint {
    pub fn real(hp: &Hp, x: &[f64]) -> Self {
        EvalPoint {
            x: x.iter().map(|&v| hp.c_real(hp.real(v))).collect(),
            y: None,
        }
    }

    pub fn real_pair(hp: &Hp, x: &[f64], y: &[f64]) -> Self {
        EvalPoint {
            x: x.iter().map(|&v| hp.c_real(hp.real(v))).collect(),
            y: Some(y.iter().map(|&v| hp.c_real(hp.real(v))).collect()),
        }
    }
}

/// Seeded sampler of real points `−π < x_1 < ⋯ < x_N < π` whose coordinates
/// (including the `y` list, if requested) are pairwise at least
/// [`MIN_SEPARATION`] apart on the circle.
pub fn sample_points(hp: &Hp, n: usize, count: usize, with_y: bool, seed: u64) -> Vec<EvalPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = if with_y { 2 * n } else { n };
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut v: Vec<f64> = Vec::with_capacity(total);
        while v.len() < total {
            let c = rng.gen_range(-PI + MIN_SEPARATION / 2.0..PI - MIN_SEPARATION / 2.0);
            if v.iter().all(|&u| circular_distance(u, c) >= MIN_SEPARATION) {
                v.push(c);
            }
        }
        let (mut x, mut y) = (v[..n].to_vec(), v[n..].to_vec());
        x.sort_by(|a, b| a.partial_cmp(b).unwrap());
        y.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out.push(if with_y {
            EvalPoint::real_pair(hp, &x, &y)
        } else {
            EvalPoint::real(hp, &x)
        });
    }
    out
}

fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).abs() % (2.0 * PI);
    d.min(2.0 * PI - d)
}

/// `φ(z) = ½ cot(z/2)` and `φ'(z) = −1/(4 sin²(z/2))`.
fn phi(hp: &mut Hp, z: &Cplx) -> Result<(Cplx, Cplx)> {
    let half = hp.cscale(z, &hp.real(0.5));
    let s = hp.csin(&half);
    let c = hp.ccos(&half);
    let guard = hp.real(POLE_GUARD);
    if hp.lt(&hp.cabs(&s), &guard) {
        return Err(Error::Conditioning(format!(
            "coordinate difference {:?} is too close to a pole",
            hp.c_to_f64(z)
        )));
    }
    let cot = hp.cdiv(&c, &s);
    let p = hp.cscale(&cot, &hp.real(0.5));
    let s2 = hp.cscale(&hp.csqr(&s), &hp.real(-4.0));
    let dp = hp.cdiv(&hp.c_one(), &s2);
    Ok((p, dp))
}

fn rat_c(hp: &mut Hp, x: &Rat) -> Cplx {
    let r = hp.rat(x);
    hp.c_real(r)
}

/// `−Σ_j M_j⁻¹ (L_j² + L2_j) + Σ_{j<k} γ_jk/(4 sin²((x_j − x_k)/2))` given the
/// first and second log-derivatives `L`, `L2`.
fn energy_density(
    hp: &mut Hp,
    params: &ModelParams,
    x: &[Cplx],
    l1: &[Cplx],
    l2: &[Cplx],
) -> Result<Cplx> {
    let mut acc = hp.c_zero();
    for j in 0..x.len() {
        let t = hp.cadd(&hp.csqr(&l1[j]), &l2[j]);
        let inv_m = rat_c(hp, &(Rat::from_integer(1.into()) / &params.masses()[j]));
        acc = hp.csub(&acc, &hp.cmul(&t, &inv_m));
    }
    for (&(j, k), g) in params.gamma() {
        if g.is_zero() {
            continue;
        }
        let (_, dp) = phi(hp, &hp.csub(&x[j], &x[k]))?;
        let gc = rat_c(hp, g);
        acc = hp.csub(&acc, &hp.cmul(&gc, &dp));
    }
    Ok(acc)
}

fn check_len(n: usize, v: &[Cplx], what: &str) -> Result<()> {
    if v.len() != n {
        return Err(Error::Dimension(format!("{what} has {} coordinates, N = {n}", v.len())));
    }
    Ok(())
}

/// `|H Φ_0 / Φ_0 − ℰ_0|` with `Φ_0 = Π_{j<k} sin((x_j − x_k)/2)^{λ M_j M_k}`.
///
/// The couplings in `params` are used as given; they must be
/// `γ_jk = (M_j + M_k) λ (M_j M_k λ − 1)` for the identity to hold.
pub fn check_groundstate(hp: &mut Hp, params: &ModelParams, pt: &EvalPoint) -> Result<BigFloat> {
    if !params.masses_positive() {
        return Err(Error::Domain("groundstate check needs positive masses".into()));
    }
    let n = params.nvars();
    check_len(n, &pt.x, "x")?;
    let m = params.masses();
    let mut l1 = vec![hp.c_zero(); n];
    let mut l2 = vec![hp.c_zero(); n];
    for j in 0..n {
        for k in 0..n {
            if j == k {
                continue;
            }
            let (p, dp) = phi(hp, &hp.csub(&pt.x[j], &pt.x[k]))?;
            let w = rat_c(hp, &(&m[j] * &m[k] * params.lam()));
            l1[j] = hp.cadd(&l1[j], &hp.cmul(&w, &p));
            l2[j] = hp.cadd(&l2[j], &hp.cmul(&w, &dp));
        }
    }
    let e = energy_density(hp, params, &pt.x, &l1, &l2)?;
    let e0 = rat_c(hp, &groundstate_energy(params));
    Ok(hp.cabs(&hp.csub(&e, &e0)))
}

/// `|φ(a−b)φ(a−c) + φ(b−a)φ(b−c) + φ(c−a)φ(c−b) + 1/4|`.
pub fn check_trig_identity(hp: &mut Hp, a: &Cplx, b: &Cplx, c: &Cplx) -> Result<BigFloat> {
    let mut f = |u: &Cplx, v: &Cplx| -> Result<Cplx> { Ok(phi(hp, &hp.csub(u, v))?.0) };
    let (ab, ac, ba, bc, ca, cb) = (f(a, b)?, f(a, c)?, f(b, a)?, f(b, c)?, f(c, a)?, f(c, b)?);
    let s = hp.cadd(
        &hp.cadd(&hp.cmul(&ab, &ac), &hp.cmul(&ba, &bc)),
        &hp.cmul(&ca, &cb),
    );
    let quarter = hp.c_real(hp.real(0.25));
    Ok(hp.cabs(&hp.cadd(&s, &quarter)))
}

/// `|(H(x) F − H(y) F)/F|` for
/// `F = c e^{iP Σ(x_j − y_j)} Π_{j<k} s(x_j − x_k)^λ s(y_j − y_k)^λ / Π_{j,k} s(x_j − y_k)^λ`,
/// `s(z) = sin(z/2)`, with `H` the equal-mass operator of coupling `2λ(λ − 1)`.
///
/// The constant `c` drops out of every log-derivative.
pub fn check_kernel_identity(hp: &mut Hp, n: usize, lam: &Rat, p: &Rat, pt: &EvalPoint) -> Result<BigFloat> {
    let params = ModelParams::cs(n, lam.clone())?;
    check_len(n, &pt.x, "x")?;
    let y = pt
        .y
        .as_ref()
        .ok_or_else(|| Error::Configuration("kernel identity needs a y point".into()))?;
    check_len(n, y, "y")?;
    let lc = rat_c(hp, lam);
    let pr = hp.rat(p);
    let ip = hp.c_imag(pr);
    let mut lx = vec![ip.clone(); n];
    let mut ly = vec![hp.cneg(&ip); n];
    let mut lx2 = vec![hp.c_zero(); n];
    let mut ly2 = vec![hp.c_zero(); n];
    for j in 0..n {
        for k in 0..n {
            if j != k {
                let (a, da) = phi(hp, &hp.csub(&pt.x[j], &pt.x[k]))?;
                lx[j] = hp.cadd(&lx[j], &hp.cmul(&lc, &a));
                lx2[j] = hp.cadd(&lx2[j], &hp.cmul(&lc, &da));
                let (b, db) = phi(hp, &hp.csub(&y[j], &y[k]))?;
                ly[j] = hp.cadd(&ly[j], &hp.cmul(&lc, &b));
                ly2[j] = hp.cadd(&ly2[j], &hp.cmul(&lc, &db));
            }
            let (c, dc) = phi(hp, &hp.csub(&pt.x[j], &y[k]))?;
            lx[j] = hp.csub(&lx[j], &hp.cmul(&lc, &c));
            lx2[j] = hp.csub(&lx2[j], &hp.cmul(&lc, &dc));
            let (d, dd) = phi(hp, &hp.csub(&pt.x[k], &y[j]))?;
            ly[j] = hp.cadd(&ly[j], &hp.cmul(&lc, &d));
            ly2[j] = hp.csub(&ly2[j], &hp.cmul(&lc, &dd));
        }
    }
    let hx = energy_density(hp, &params, &pt.x, &lx, &lx2)?;
    let hy = energy_density(hp, &params, y, &ly, &ly2)?;
    Ok(hp.cabs(&hp.csub(&hx, &hy)))
}

/// `|H(Ψ_0 p) − E Ψ_0 p| / |Ψ_0 p|` with `Ψ_0 = Π_{j<k} sin((x_j − x_k)/2)^λ`
/// and `p` evaluated at `z_j = e^{i x_j}`.
pub fn check_regular_eigen(
    hp: &mut Hp,
    params: &ModelParams,
    p: &SymPoly,
    e: &Rat,
    pt: &EvalPoint,
) -> Result<BigFloat> {
    let n = params.nvars();
    check_len(n, &pt.x, "x")?;
    if p.nvars() != n {
        return Err(Error::Dimension(format!("polynomial in {} variables, N = {n}", p.nvars())));
    }
    if params.masses().iter().any(|m| m != &Rat::from_integer(1.into())) {
        return Err(Error::Configuration("regular eigenfunction check needs equal unit masses".into()));
    }
    let z: Vec<Cplx> = pt.x.iter().map(|x| hp.cexp_i(x)).collect();
    let full: Poly = p.expand();
    let pv = full.eval(hp, &z);
    if hp.lt(&hp.cabs(&pv), &hp.real(POLE_GUARD)) {
        return Err(Error::Conditioning("polynomial vanishes at the evaluation point".into()));
    }
    let lc = rat_c(hp, params.lam());
    let mut l1 = Vec::with_capacity(n);
    let mut l2 = Vec::with_capacity(n);
    for j in 0..n {
        let d1 = full.eval_weighted(hp, &z, |e| e[j] as i64);
        let d2 = full.eval_weighted(hp, &z, |e| (e[j] as i64) * (e[j] as i64));
        let r1 = hp.cdiv(&d1, &pv);
        let r2 = hp.cdiv(&d2, &pv);
        let mut a = hp.c_zero();
        let mut da = hp.c_zero();
        for k in 0..n {
            if k != j {
                let (f, df) = phi(hp, &hp.csub(&pt.x[j], &pt.x[k]))?;
                a = hp.cadd(&a, &f);
                da = hp.cadd(&da, &df);
            }
        }
        // ∂_x = i z ∂_z on functions of z
        let i_r1 = hp.cmul(&hp.c_imag(hp.int(1)), &r1);
        l1.push(hp.cadd(&hp.cmul(&lc, &a), &i_r1));
        let second = hp.cadd(&hp.csub(&hp.cmul(&lc, &da), &r2), &hp.csqr(&r1));
        l2.push(second);
    }
    let h = energy_density(hp, params, &pt.x, &l1, &l2)?;
    let ec = rat_c(hp, e);
    Ok(hp.cabs(&hp.csub(&h, &ec)))
}

/// `Ψ_0` in the principal wedge, written as `Π_{j<k} sin((x_k − x_j)/2)^λ`.
///
/// Fails unless the point is real and ordered, in which case every factor is
/// positive and the value is real.
pub fn groundstate_amplitude(hp: &mut Hp, lam: &Rat, pt: &EvalPoint) -> Result<BigFloat> {
    let zero = hp.int(0);
    if pt.x.iter().any(|x| !x.im.is_zero()) {
        return Err(Error::Domain("principal-wedge amplitude needs real coordinates".into()));
    }
    let pi = hp.pi();
    let l = hp.rat(lam);
    let mut acc = hp.int(1);
    for (j, xj) in pt.x.iter().enumerate() {
        if !hp.lt(&pi.neg(), &xj.re) || !hp.lt(&xj.re, &pi) {
            return Err(Error::Domain("coordinate outside (−π, π)".into()));
        }
        for xk in &pt.x[j + 1..] {
            let d = hp.mul(&hp.sub(&xk.re, &xj.re), &hp.real(0.5));
            let s = hp.sin(&d);
            if !hp.lt(&zero, &s) {
                return Err(Error::Domain("coordinates are not increasing".into()));
            }
            let f = hp.powr(&s, &l);
            acc = hp.mul(&acc, &f);
        }
    }
    Ok(acc)
}

/// Machine-readable summary of a batch of checks.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub bits: usize,
    pub points: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckReport {
    pub fn from_residuals(hp: &mut Hp, check: &str, residuals: &[BigFloat], tolerance: f64) -> Self {
        let mut max = hp.int(0);
        for r in residuals {
            max = hp.max(&max, r);
        }
        let max_residual = hp.to_f64(&max);
        CheckReport {
            check: check.to_string(),
            bits: hp.bits(),
            points: residuals.len(),
            max_residual,
            tolerance,
            pass: max_residual < tolerance,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::jack_oracle;
    use crate::lattice::Partition;
    use crate::rational::{frac, int};
    use crate::spectrum::eigenvalue;

    fn small(hp: &mut Hp, r: &BigFloat, eps: f64) -> bool {
        let e = hp.real(eps);
        hp.lt(r, &e)
    }

    #[test]
    fn groundstate_example() {
        let mut hp = Hp::new(256);
        let p = ModelParams::with_masses(vec![int(1), int(1)], int(2)).unwrap();
        let pt = EvalPoint::real(&hp, &[0.3, 1.1]);
        let r = check_groundstate(&mut hp, &p, &pt).unwrap();
        assert!(small(&mut hp, &r, 1e-40));
    }

    #[test]
    fn groundstate_with_unequal_masses() {
        let mut hp = Hp::new(256);
        let p = ModelParams::with_masses(vec![int(1), frac(3, 2), int(2)], frac(1, 2)).unwrap();
        for pt in sample_points(&hp, 3, 20, false, 11) {
            let r = check_groundstate(&mut hp, &p, &pt).unwrap();
            assert!(small(&mut hp, &r, 1e-40));
        }
    }

    #[test]
    fn groundstate_detects_wrong_coupling() {
        let mut hp = Hp::new(128);
        let p = ModelParams::with_masses(vec![int(1), int(2)], int(2))
            .unwrap()
            .with_gamma([((0, 1), int(5))].into_iter().collect())
            .unwrap();
        let pt = EvalPoint::real(&hp, &[0.3, 1.1]);
        let r = check_groundstate(&mut hp, &p, &pt).unwrap();
        assert!(!small(&mut hp, &r, 1e-3));
    }

    #[test]
    fn trig_identity() {
        let mut hp = Hp::new(256);
        for pt in sample_points(&hp, 3, 10, false, 3) {
            let r = check_trig_identity(&mut hp, &pt.x[0], &pt.x[1], &pt.x[2]).unwrap();
            assert!(small(&mut hp, &r, 1e-40));
        }
    }

    #[test]
    fn kernel_identity_is_p_independent() {
        let mut hp = Hp::new(256);
        for pt in sample_points(&hp, 2, 5, true, 5) {
            for p in [int(0), frac(5, 2)] {
                let r = check_kernel_identity(&mut hp, 2, &int(2), &p, &pt).unwrap();
                assert!(small(&mut hp, &r, 1e-40));
            }
        }
    }

    #[test]
    fn regular_eigen_examples() {
        let mut hp = Hp::new(256);
        let pt = EvalPoint::real(&hp, &[-0.7, 0.4]);
        let p1 = ModelParams::cs(2, int(1)).unwrap();
        let m1 = SymPoly::monomial(Partition::new(vec![1, 0]).unwrap());
        let r = check_regular_eigen(&mut hp, &p1, &m1, &frac(5, 2), &pt).unwrap();
        assert!(small(&mut hp, &r, 1e-30));

        let p2 = ModelParams::cs(2, int(2)).unwrap();
        let n = Partition::new(vec![2, 0]).unwrap();
        let jack = jack_oracle(2, &int(2), &n).unwrap();
        let e = eigenvalue(&p2, &n.to_intvec()).unwrap();
        let r = check_regular_eigen(&mut hp, &p2, &jack, &e, &pt).unwrap();
        assert!(small(&mut hp, &r, 1e-30));
        let r = check_regular_eigen(&mut hp, &p2, &jack, &(e + int(1)), &pt).unwrap();
        assert!(!small(&mut hp, &r, 1e-3));

        let e0 = eigenvalue(&p2, &crate::lattice::IntVec::zeros(2)).unwrap();
        let r = check_regular_eigen(&mut hp, &p2, &SymPoly::one(2), &e0, &pt).unwrap();
        assert!(small(&mut hp, &r, 1e-30));
    }

    #[test]
    fn precision_scaling() {
        let p = ModelParams::with_masses(vec![int(1), int(3)], frac(1, 2)).unwrap();
        let mut lo = Hp::new(128);
        let mut hi = Hp::new(256);
        let x = [-1.3, 0.9];
        let (pt_lo, pt_hi) = (EvalPoint::real(&lo, &x), EvalPoint::real(&hi, &x));
        let r_lo = check_groundstate(&mut lo, &p, &pt_lo).unwrap();
        let r_hi = check_groundstate(&mut hi, &p, &pt_hi).unwrap();
        assert!(small(&mut lo, &r_lo, 1e-30));
        assert!(small(&mut hi, &r_hi, 1e-65));
    }

    #[test]
    fn amplitude_is_real_in_the_wedge() {
        let mut hp = Hp::new(128);
        for pt in sample_points(&hp, 3, 5, false, 9) {
            let a = groundstate_amplitude(&mut hp, &frac(1, 2), &pt).unwrap();
            assert!(hp.lt(&hp.int(0), &a));
        }
        let bad = EvalPoint::real(&hp, &[0.5, 0.1]);
        assert!(groundstate_amplitude(&mut hp, &frac(1, 2), &bad).is_err());
    }

    #[test]
    fn sampler_is_deterministic_and_separated() {
        let hp = Hp::new(64);
        let a = sample_points(&hp, 3, 4, true, 42);
        let b = sample_points(&hp, 3, 4, true, 42);
        let mut hp = hp;
        for (p, q) in a.iter().zip(&b) {
            let xs: Vec<f64> = p.x.iter().map(|c| hp.to_f64(&c.re)).collect();
            let ys: Vec<f64> = q.x.iter().map(|c| hp.to_f64(&c.re)).collect();
            assert_eq!(xs, ys);
            assert!(xs.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
