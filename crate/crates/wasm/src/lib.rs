//! Browser entry points. Each export takes exact rationals as `"p/q"` strings
//! and returns a JSON document; errors surface as JS exceptions.

use calogero_core::lattice::Partition;
use calogero_core::oracle::jack_oracle;
use calogero_core::rational::{int, parse_rat, to_f64};
use calogero_core::singular::alpha_recursive;
use calogero_core::spectrum::{eigenvalue, pt_conditions, reference_radius, ModelParams};
use calogero_core::sympoly::SymPolyJson;
use calogero_core::transform::{assemble_regular, TransformConfig};
use calogero_core::Rat;
use serde::Serialize;
use wasm_bindgen::prelude::*;

const MAX_DEPTH: u64 = 12;
const MAX_STEPS: u32 = 400;

fn parse_partition(s: &str, n: usize) -> Result<Partition, String> {
    let parts = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| format!("partition '{s}': {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    Partition::padded(&parts, n).map_err(|e| e.to_string())
}

fn rat(s: &str, what: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| format!("{what} '{s}': {e}"))
}

fn check_shape(n: usize, depth: u64) -> Result<(), String> {
    if !(2..=4).contains(&n) {
        return Err(format!("N = {n} is outside 2..=4"));
    }
    if depth > MAX_DEPTH {
        return Err(format!("depth {depth} exceeds {MAX_DEPTH}"));
    }
    Ok(())
}

fn grid(lo: &Rat, hi: &Rat, steps: u32) -> Result<Vec<Rat>, String> {
    if steps == 0 || steps > MAX_STEPS {
        return Err(format!("steps must be in 1..={MAX_STEPS}"));
    }
    if lo >= hi {
        return Err("empty range".into());
    }
    Ok((0..=steps)
        .map(|i| lo + (hi - lo) * int(i as i64) / int(steps as i64))
        .collect())
}

fn jack_poly(n: usize, lam: &Rat, part: &Partition, depth: u64) -> Result<calogero_core::SymPoly, String> {
    let params = ModelParams::cs(n, lam.clone()).map_err(|e| e.to_string())?;
    let table = alpha_recursive(&params, &part.to_intvec(), depth).map_err(|e| e.to_string())?;
    let cfg = TransformConfig::for_partition(part, lam.clone(), depth).map_err(|e| e.to_string())?;
    Ok(assemble_regular(&cfg, &table).map_err(|e| e.to_string())?.poly)
}

#[derive(Serialize)]
struct JackOut {
    display: String,
    polynomial: SymPolyJson,
    eigenvalue: String,
    oracle_agrees: bool,
}

/// Jack polynomial `P_n` through the series pipeline, checked against the
/// operator oracle.
pub fn jack_json(n: usize, lambda: &str, partition: &str, depth: u64) -> Result<String, String> {
    check_shape(n, depth)?;
    let lam = rat(lambda, "lambda")?;
    let part = parse_partition(partition, n)?;
    if part.size() > 8 {
        return Err("|n| is limited to 8".into());
    }
    let p = jack_poly(n, &lam, &part, depth)?;
    let oracle = jack_oracle(n, &lam, &part).map_err(|e| e.to_string())?;
    let params = ModelParams::cs(n, lam).map_err(|e| e.to_string())?;
    let out = JackOut {
        display: p.to_string(),
        eigenvalue: eigenvalue(&params, &part.to_intvec()).map_err(|e| e.to_string())?.to_string(),
        oracle_agrees: p == oracle,
        polynomial: p.to_json_value(),
    };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct SweepPoint {
    lambda: String,
    lambda_f64: f64,
    coefficient: Option<String>,
    value: Option<f64>,
}

/// Coefficient of `m_target` in `P_n` on an equispaced rational grid of `λ`.
/// Degenerate couplings yield `null` entries.
pub fn sweep_json(
    n: usize,
    partition: &str,
    target: &str,
    lam_lo: &str,
    lam_hi: &str,
    steps: u32,
) -> Result<String, String> {
    check_shape(n, 8)?;
    let part = parse_partition(partition, n)?;
    let tgt = parse_partition(target, n)?;
    if part.size() > 6 {
        return Err("|n| is limited to 6 for sweeps".into());
    }
    if tgt.size() != part.size() {
        return Err(format!("{tgt} and {part} have different sizes"));
    }
    let lo = rat(lam_lo, "lambda_lo")?;
    let hi = rat(lam_hi, "lambda_hi")?;
    let mut out = Vec::new();
    for lam in grid(&lo, &hi, steps)? {
        let c = if lam > int(0) {
            jack_poly(n, &lam, &part, 8).ok().map(|p| p.coeff(&tgt))
        } else {
            jack_oracle(n, &lam, &part).ok().map(|p| p.coeff(&tgt))
        };
        out.push(SweepPoint {
            lambda_f64: to_f64(&lam),
            lambda: lam.to_string(),
            value: c.as_ref().map(to_f64),
            coefficient: c.map(|x| x.to_string()),
        });
    }
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Curves {
    radius: Vec<f64>,
    cond1: Vec<f64>,
    cond3: Vec<f64>,
    delta: f64,
    r_min: f64,
}

/// Left-hand sides of both convergence predicates against `R`.
pub fn pt_curves_json(n: usize, lambda: &str, r_lo: &str, r_hi: &str, steps: u32) -> Result<String, String> {
    check_shape(n, 0)?;
    let lam = rat(lambda, "lambda")?;
    let params = ModelParams::cs(n, lam.clone()).map_err(|e| e.to_string())?;
    let mut c = Curves {
        radius: Vec::new(),
        cond1: Vec::new(),
        cond3: Vec::new(),
        delta: to_f64(&(int(2) * &lam)),
        r_min: to_f64(&reference_radius(n, &lam)),
    };
    for r in grid(&rat(r_lo, "r_lo")?, &rat(r_hi, "r_hi")?, steps)? {
        let rep = pt_conditions(&params, &r, None).map_err(|e| e.to_string())?;
        c.radius.push(to_f64(&r));
        c.cond1.push(rep.cond1_lhs_f64);
        c.cond3.push(rep.cond3_lhs_f64);
    }
    serde_json::to_string(&c).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn jack(n: usize, lambda: &str, partition: &str, depth: u32) -> Result<String, JsError> {
    jack_json(n, lambda, partition, depth as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn coefficient_sweep(
    n: usize,
    partition: &str,
    target: &str,
    lam_lo: &str,
    lam_hi: &str,
    steps: u32,
) -> Result<String, JsError> {
    sweep_json(n, partition, target, lam_lo, lam_hi, steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn pt_curves(n: usize, lambda: &str, r_lo: &str, r_hi: &str, steps: u32) -> Result<String, JsError> {
    pt_curves_json(n, lambda, r_lo, r_hi, steps).map_err(|e| JsError::new(&e))
}
