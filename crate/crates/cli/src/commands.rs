use calogero_core::hp::Hp;
use calogero_core::lattice::Partition;
use calogero_core::oracle::{jack_oracle, schur_oracle};
use calogero_core::rational::{int, parse_rat, parse_rat_list};
use calogero_core::singular::{alpha_recursive, AlphaEntry};
use calogero_core::spectrum::{
    cs_gap_bound, eigenvalue, gap_certificate, pt_conditions, reference_radius, ModelParams,
    PtReport,
};
use calogero_core::sympoly::SymPolyJson;
use calogero_core::transform::{assemble_regular, Assembled, TransformConfig};
use calogero_core::verify::{
    check_groundstate, check_kernel_identity, check_regular_eigen, sample_points, CheckReport,
};
use calogero_core::{Error, Rat, SymPoly};
use serde::Serialize;
use thiserror::Error as ThisError;

use crate::{Check, Cli, Command, ComputeArgs, ConditionsArgs, Emit, OracleArgs, VerifyArgs};

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("check failed: {0}")]
    Residual(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_degeneracy() => 2,
            CliError::Core(Error::Conditioning(_)) | CliError::Residual(_) => 3,
            _ => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Serialized output plus an optional failure verdict (exit code 3).
pub struct Report {
    pub json: String,
    pub failure: Option<String>,
}

#[derive(Serialize)]
struct Envelope<C: Serialize, R: Serialize> {
    config: Resolved<C>,
    #[serde(flatten)]
    result: R,
}

#[derive(Serialize)]
struct Resolved<C: Serialize> {
    command: &'static str,
    format: &'static str,
    precision_bits: usize,
    seed: u64,
    #[serde(flatten)]
    args: C,
}

fn envelope<C: Serialize, R: Serialize>(cli: &Cli, command: &'static str, args: C, result: R) -> Result<String> {
    let env = Envelope {
        config: Resolved {
            command,
            format: "json",
            precision_bits: cli.precision_bits,
            seed: cli.seed,
            args,
        },
        result,
    };
    serde_json::to_string_pretty(&env).map_err(|e| CliError::Io(e.to_string()))
}

pub fn run(cli: &Cli) -> Result<Report> {
    if cli.precision_bits < 64 {
        return Err(CliError::Usage("--precision-bits must be at least 64".into()));
    }
    match &cli.command {
        Command::Compute(a) => compute(cli, a),
        Command::Oracle(a) => oracle(cli, a),
        Command::Verify(a) => verify(cli, a),
        Command::Conditions(a) => conditions(cli, a),
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(CliError::Usage(format!("--N must be at least 2, got {n}")));
    }
    Ok(())
}

fn parse_partition(s: &str, n: usize) -> Result<Partition> {
    let parts = s
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| CliError::Usage(format!("partition '{s}': {e}")))?;
    Partition::padded(&parts, n).map_err(|e| CliError::Usage(format!("partition '{s}': {e}")))
}

fn parse_lambda(s: &str) -> Result<Rat> {
    parse_rat(s).map_err(|e| CliError::Usage(format!("lambda '{s}': {e}")))
}

fn parse_masses(s: Option<&str>, n: usize) -> Result<Vec<Rat>> {
    let m = match s {
        Some(s) => parse_rat_list(s).map_err(|e| CliError::Usage(format!("masses '{s}': {e}")))?,
        None => vec![int(1); n],
    };
    if m.len() != n {
        return Err(CliError::Usage(format!("{} masses for N = {n}", m.len())));
    }
    Ok(m)
}

fn strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

#[derive(Serialize)]
struct ComputeConfig {
    #[serde(rename = "N")]
    n: usize,
    lambda: String,
    partition: Vec<i64>,
    depth: u64,
    zdeg: i64,
    radius: String,
    emit: Emit,
}

#[derive(Serialize)]
struct ComputeResult {
    partition: Vec<i64>,
    lambda: String,
    #[serde(rename = "N")]
    n: usize,
    depth: u64,
    eigenvalue: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha_table: Option<Vec<AlphaEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    jack_polynomial: Option<SymPolyJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    jack_display: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    normalization_constant: Option<String>,
}

fn regular(params: &ModelParams, n: &Partition, cfg: &TransformConfig) -> Result<Assembled> {
    let table = alpha_recursive(params, &n.to_intvec(), cfg.depth)?;
    Ok(assemble_regular(cfg, &table)?)
}

fn compute(cli: &Cli, a: &ComputeArgs) -> Result<Report> {
    check_n(a.n)?;
    let lam = parse_lambda(&a.lambda)?;
    let n = parse_partition(&a.partition, a.n)?;
    let zdeg = a.zdeg.unwrap_or(n.size());
    let cfg = TransformConfig::new(a.n, lam.clone(), zdeg, a.depth, int(2))?;
    let params = ModelParams::cs(a.n, lam.clone())?;
    let table = alpha_recursive(&params, &n.to_intvec(), a.depth)?;
    let e = eigenvalue(&params, &n.to_intvec())?;

    let mut result = ComputeResult {
        partition: n.parts().to_vec(),
        lambda: lam.to_string(),
        n: a.n,
        depth: a.depth,
        eigenvalue: e.to_string(),
        alpha_table: None,
        jack_polynomial: None,
        jack_display: None,
        normalization_constant: None,
    };
    if a.emit != Emit::Regular {
        result.alpha_table = Some(table.entries());
    }
    if a.emit != Emit::Singular {
        let assembled = assemble_regular(&cfg, &table)?;
        if a.depth >= 2 {
            let lower = TransformConfig { depth: a.depth - 2, ..cfg.clone() };
            if regular(&params, &n, &lower)?.poly != assembled.poly {
                eprintln!(
                    "warning: result changed between depth {} and {}; increase --depth",
                    a.depth - 2,
                    a.depth
                );
            }
        }
        result.jack_display = Some(assembled.poly.to_string());
        result.jack_polynomial = Some(assembled.poly.to_json_value());
        result.normalization_constant = Some(assembled.normalization.to_string());
    }
    let config = ComputeConfig {
        n: a.n,
        lambda: lam.to_string(),
        partition: n.parts().to_vec(),
        depth: a.depth,
        zdeg,
        radius: cfg.radius.to_string(),
        emit: a.emit,
    };
    Ok(Report {
        json: envelope(cli, "compute", config, result)?,
        failure: None,
    })
}

#[derive(Serialize)]
struct OracleConfig {
    #[serde(rename = "N")]
    n: usize,
    lambda: String,
    partition: Vec<i64>,
    method: &'static str,
}

#[derive(Serialize)]
struct PolyResult {
    polynomial: SymPolyJson,
    display: String,
}

fn oracle(cli: &Cli, a: &OracleArgs) -> Result<Report> {
    check_n(a.n)?;
    let n = parse_partition(&a.partition, a.n)?;
    let (poly, lam, method): (SymPoly, Rat, _) = if a.schur {
        if let Some(l) = &a.lambda {
            if parse_lambda(l)? != int(1) {
                return Err(CliError::Usage("--schur fixes lambda = 1".into()));
            }
        }
        (schur_oracle(a.n, &n)?, int(1), "jacobi-trudi")
    } else {
        let l = a
            .lambda
            .as_deref()
            .ok_or_else(|| CliError::Usage("--lambda is required without --schur".into()))?;
        let lam = parse_lambda(l)?;
        (jack_oracle(a.n, &lam, &n)?, lam, "operator")
    };
    let config = OracleConfig {
        n: a.n,
        lambda: lam.to_string(),
        partition: n.parts().to_vec(),
        method,
    };
    let result = PolyResult {
        display: poly.to_string(),
        polynomial: poly.to_json_value(),
    };
    Ok(Report {
        json: envelope(cli, "oracle", config, result)?,
        failure: None,
    })
}

#[derive(Serialize)]
struct VerifyConfig {
    check: Check,
    #[serde(rename = "N")]
    n: usize,
    lambda: String,
    masses: Vec<String>,
    #[serde(rename = "P", skip_serializing_if = "Option::is_none")]
    p: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    partition: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    depth: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    radius: Option<String>,
    points: usize,
    tol: f64,
}

#[derive(Serialize)]
struct VerifyResult {
    #[serde(flatten)]
    report: CheckReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    eigenvalue: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    min_gap: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    conditions: Option<PtReport>,
}

fn verify(cli: &Cli, a: &VerifyArgs) -> Result<Report> {
    check_n(a.n)?;
    let lam = parse_lambda(&a.lambda)?;
    let masses = parse_masses(a.masses.as_deref(), a.n)?;
    let partition = a.partition.as_deref().map(|s| parse_partition(s, a.n)).transpose()?;
    let need_partition = || {
        partition
            .clone()
            .ok_or_else(|| CliError::Usage(format!("--check {:?} needs --partition", a.check).to_lowercase()))
    };
    let mut hp = Hp::new(cli.precision_bits);
    let mut config = VerifyConfig {
        check: a.check,
        n: a.n,
        lambda: lam.to_string(),
        masses: strings(&masses),
        p: None,
        partition: None,
        depth: None,
        radius: None,
        points: a.points,
        tol: a.tol,
    };
    let mut result = VerifyResult {
        report: CheckReport::from_residuals(&mut hp, "", &[], a.tol),
        eigenvalue: None,
        min_gap: None,
        delta: None,
        conditions: None,
    };
    let name = format!("{:?}", a.check).to_lowercase();
    let pass;
    match a.check {
        Check::Groundstate => {
            let params = ModelParams::with_masses(masses, lam)?;
            let mut res = Vec::new();
            for pt in sample_points(&hp, a.n, a.points, false, cli.seed) {
                res.push(check_groundstate(&mut hp, &params, &pt)?);
            }
            result.report = CheckReport::from_residuals(&mut hp, &name, &res, a.tol);
            pass = result.report.pass;
        }
        Check::Kernel => {
            let p = parse_rat(&a.p).map_err(|e| CliError::Usage(format!("P '{}': {e}", a.p)))?;
            let mut res = Vec::new();
            for pt in sample_points(&hp, a.n, a.points, true, cli.seed) {
                res.push(check_kernel_identity(&mut hp, a.n, &lam, &p, &pt)?);
            }
            config.p = Some(p.to_string());
            result.report = CheckReport::from_residuals(&mut hp, &name, &res, a.tol);
            pass = result.report.pass;
        }
        Check::Eigen => {
            let n = need_partition()?;
            let params = ModelParams::cs(a.n, lam.clone())?;
            if masses.iter().any(|m| m != &int(1)) {
                return Err(CliError::Usage("--check eigen needs unit masses".into()));
            }
            let cfg = TransformConfig::for_partition(&n, lam, a.depth)?;
            let jack = regular(&params, &n, &cfg)?.poly;
            let e = eigenvalue(&params, &n.to_intvec())?;
            let mut res = Vec::new();
            for pt in sample_points(&hp, a.n, a.points, false, cli.seed) {
                res.push(check_regular_eigen(&mut hp, &params, &jack, &e, &pt)?);
            }
            config.partition = Some(n.parts().to_vec());
            config.depth = Some(a.depth);
            result.report = CheckReport::from_residuals(&mut hp, &name, &res, a.tol);
            result.eigenvalue = Some(e.to_string());
            pass = result.report.pass;
        }
        Check::Gap => {
            let n = need_partition()?;
            let params = ModelParams::cs(a.n, lam.clone())?;
            let min = gap_certificate(&params, &n.to_intvec(), a.depth)?;
            if min == int(0) {
                return Err(Error::Degeneracy { index: n.to_intvec() }.into());
            }
            let delta = cs_gap_bound(&lam);
            pass = min >= delta;
            config.partition = Some(n.parts().to_vec());
            config.depth = Some(a.depth);
            config.points = 0;
            result.report = CheckReport::from_residuals(&mut hp, &name, &[], a.tol);
            result.report.pass = pass;
            result.min_gap = Some(min.to_string());
            result.delta = Some(delta.to_string());
        }
        Check::Conditions => {
            let params = ModelParams::with_masses(masses, lam.clone())?;
            let r = match &a.radius {
                Some(s) => parse_rat(s).map_err(|e| CliError::Usage(format!("radius '{s}': {e}")))?,
                None => reference_radius(a.n, &lam),
            };
            let rep = pt_conditions(&params, &r, None)?;
            pass = rep.cond1_holds && rep.cond3_holds;
            config.radius = Some(r.to_string());
            config.points = 0;
            result.report = CheckReport::from_residuals(&mut hp, &name, &[], a.tol);
            result.report.pass = pass;
            result.conditions = Some(rep);
        }
    }
    let failure = (!pass).then(|| match a.check {
        Check::Gap => format!(
            "minimal gap {} is below {}",
            result.min_gap.as_deref().unwrap_or("?"),
            result.delta.as_deref().unwrap_or("?")
        ),
        Check::Conditions => "convergence predicates fail at this radius".to_string(),
        _ => format!(
            "max residual {:e} is not below {:e}",
            result.report.max_residual, a.tol
        ),
    });
    Ok(Report {
        json: envelope(cli, "verify", config, result)?,
        failure,
    })
}

#[derive(Serialize)]
struct ConditionsConfig {
    #[serde(rename = "N")]
    n: usize,
    lambda: String,
    masses: Vec<String>,
    radii: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: Option<String>,
}

#[derive(Serialize)]
struct ConditionsResult {
    r_min: String,
    reports: Vec<PtReport>,
}

fn conditions(cli: &Cli, a: &ConditionsArgs) -> Result<Report> {
    check_n(a.n)?;
    let lam = parse_lambda(&a.lambda)?;
    let masses = parse_masses(a.masses.as_deref(), a.n)?;
    let radii = parse_rat_list(&a.radius).map_err(|e| CliError::Usage(format!("radius '{}': {e}", a.radius)))?;
    let delta = a
        .delta
        .as_deref()
        .map(|s| parse_rat(s).map_err(|e| CliError::Usage(format!("delta '{s}': {e}"))))
        .transpose()?;
    let params = ModelParams::with_masses(masses.clone(), lam.clone())?;
    let reports = radii
        .iter()
        .map(|r| pt_conditions(&params, r, delta.clone()))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let config = ConditionsConfig {
        n: a.n,
        lambda: lam.to_string(),
        masses: strings(&masses),
        radii: strings(&radii),
        delta: delta.map(|d| d.to_string()),
    };
    let result = ConditionsResult {
        r_min: reference_radius(a.n, &lam).to_string(),
        reports,
    };
    Ok(Report {
        json: envelope(cli, "conditions", config, result)?,
        failure: None,
    })
}
