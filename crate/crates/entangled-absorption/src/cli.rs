//! Command-line front end: single-point rates, sweeps, figure datasets,
//! exclusion solutions, and the closed-form vs oracle verification campaign.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage/validation,
//! 3 I/O failure.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::closed_form::{
    m_distinguishable, m_identical, n_d, n_f, n_i, n_star, rate_triplet, Couplings, Excludable,
    Statistics, SuperCoeffs, NEAR_EXCLUSION_EPS,
};
use crate::exclusion::{solve_exclusion, ExclusionError};
use crate::gram::{recoiled_gram, unrecoiled_gram, CMParams, RecoilModel};
use crate::oracle;
use crate::sweep::{figure_dataset, sweep_rates, FigureId, RateCurve};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("verification failed: {0}")]
    VerifyFailed(String),
    #[error("I/O failure: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::VerifyFailed(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

fn invalid(err: impl std::fmt::Display) -> CliError {
    CliError::Validation(err.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "entangled-absorption",
    about = "Photon-absorption rates for entangled atom pairs with recoil",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    /// Basis coefficients c,d,e,f,g,h as comma-separated decimals
    #[arg(long, value_name = "c,d,e,f,g,h", allow_hyphen_values = true)]
    pub params: String,
    /// Recoil attenuation factor
    #[arg(long, default_value_t = 0.9)]
    pub rho: f64,
    /// Coupling of atom A (distinguishable pair)
    #[arg(long, default_value_t = 0.9)]
    pub da: f64,
    /// Coupling of atom B (distinguishable pair)
    #[arg(long, default_value_t = 1.1)]
    pub db: f64,
    /// Coupling of the identical pair
    #[arg(long, default_value_t = 1.0)]
    pub d: f64,
}

impl ParamArgs {
    fn cm_params(&self) -> Result<CMParams, CliError> {
        parse_params(&self.params).map_err(invalid)
    }

    fn recoil(&self) -> Result<RecoilModel, CliError> {
        RecoilModel::new(self.rho).map_err(invalid)
    }

    fn couplings(&self) -> Couplings {
        Couplings { d_a: self.da.into(), d_b: self.db.into(), d: self.d.into() }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Single-point rates for all three statistics, as a JSON record
    Rates {
        #[command(flatten)]
        params: ParamArgs,
        /// Superposition coefficient a in [0, 1]; b = sqrt(1 - a^2)
        #[arg(long)]
        a: f64,
        /// Output path (stdout when omitted)
        #[arg(long)]
        out: Option<String>,
    },
    /// Sweep the three rates over a uniform grid of a
    Sweep {
        #[command(flatten)]
        params: ParamArgs,
        /// Number of grid points
        #[arg(long, default_value_t = 1001)]
        grid: usize,
        #[arg(long)]
        out: Option<String>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Emit one of the reference figure datasets (fig1, fig2l, fig2r)
    Figure {
        /// Figure id
        id: String,
        #[arg(long, default_value_t = 1001)]
        grid: usize,
        #[arg(long)]
        out: Option<String>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Solve the exclusion condition for a parameter set
    Exclusion {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        out: Option<String>,
    },
    /// Compare every closed-form quantity against the brute-force oracle on
    /// random inputs
    Verify {
        /// Number of random draws
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// RNG seed
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Maximum allowed relative deviation
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

/// Parse six comma-separated decimals into validated `CMParams`.
pub fn parse_params(s: &str) -> Result<CMParams, String> {
    let values: Result<Vec<f64>, _> = s.split(',').map(|v| v.trim().parse::<f64>()).collect();
    let values = values.map_err(|e| format!("--params: {e}"))?;
    if values.len() != 6 {
        return Err(format!("--params: expected 6 values, got {}", values.len()));
    }
    CMParams::from_reals(values[0], values[1], values[2], values[3], values[4], values[5])
        .map_err(|e| e.to_string())
}

fn emit(out: Option<&str>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content)?,
        None => {
            let stdout = std::io::stdout();
            stdout.lock().write_all(content.as_bytes())?;
        }
    }
    Ok(())
}

fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

fn rate_cell(rate: &Excludable<f64>) -> String {
    match rate {
        Excludable::Value(r) => sig12(*r),
        Excludable::Excluded => "nan".to_string(),
    }
}

/// Render a curve as CSV: one row per grid point, rates with 12 significant
/// digits, excluded fermion points as `nan` with flag 1.
pub fn curve_to_csv(curve: &RateCurve) -> String {
    let mut out =
        String::from("a,rate_distinguishable,rate_boson,rate_fermion,nf_fermion,excluded_fermion\n");
    for pt in &curve.points {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            sig12(pt.a),
            sig12(pt.rates.rate_distinguishable),
            rate_cell(&pt.rates.rate_boson),
            rate_cell(&pt.rates.rate_fermion),
            sig12(pt.rates.nf_fermion),
            u8::from(pt.rates.rate_fermion.is_excluded()),
        );
    }
    out
}

fn curve_to_json(curve: &RateCurve) -> String {
    let rows: Vec<serde_json::Value> = curve
        .points
        .iter()
        .map(|pt| {
            serde_json::json!({
                "a": pt.a,
                "rate_distinguishable": pt.rates.rate_distinguishable,
                "rate_boson": pt.rates.rate_boson.value(),
                "rate_fermion": pt.rates.rate_fermion.value(),
                "nf_fermion": pt.rates.nf_fermion,
                "excluded_fermion": pt.rates.rate_fermion.is_excluded(),
            })
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&rows).expect("serializable rows");
    s.push('\n');
    s
}

fn cmd_rates(params: &ParamArgs, a: f64, out: Option<&str>) -> Result<(), CliError> {
    let cm = params.cm_params()?;
    let model = params.recoil()?;
    let coeffs = SuperCoeffs::from_a(a)
        .map_err(|_| invalid(format!("--a must lie in [0, 1], got {a}")))?;
    let point = rate_triplet(&coeffs, &cm, model, &params.couplings()).map_err(invalid)?;
    let record = serde_json::json!({
        "a": a,
        "b": coeffs.b.re,
        "rate_distinguishable": point.rate_distinguishable,
        "rate_boson": point.rate_boson.value(),
        "rate_fermion": point.rate_fermion.value(),
        "nf_fermion": point.nf_fermion,
        "excluded_boson": point.rate_boson.is_excluded(),
        "excluded_fermion": point.rate_fermion.is_excluded(),
    });
    emit(out, &format!("{}\n", serde_json::to_string_pretty(&record).expect("serializable")))
}

fn cmd_curve(
    curve: &RateCurve,
    format: OutputFormat,
    out: Option<&str>,
) -> Result<(), CliError> {
    let content = match format {
        OutputFormat::Csv => curve_to_csv(curve),
        OutputFormat::Json => curve_to_json(curve),
    };
    emit(out, &content)
}

fn cmd_exclusion(params: &ParamArgs, out: Option<&str>) -> Result<(), CliError> {
    let cm = params.cm_params()?;
    let record = match solve_exclusion(&cm) {
        Ok(Some(sol)) => serde_json::json!({
            "solution": {
                "a": sol.a,
                "b": sol.b,
                "residual": sol.residual,
                "nf_at_solution": sol.nf_at_solution,
            },
            "degenerate_manifold": false,
        }),
        Ok(None) => serde_json::json!({
            "solution": null,
            "degenerate_manifold": false,
        }),
        Err(ExclusionError::DegenerateManifold) => serde_json::json!({
            "solution": null,
            "degenerate_manifold": true,
        }),
        Err(e) => return Err(invalid(e)),
    };
    emit(out, &format!("{}\n", serde_json::to_string_pretty(&record).expect("serializable")))
}

/// Per-quantity outcome of a verification campaign.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub trials: usize,
    pub redraws: usize,
    /// `(quantity, max relative deviation, input that produced it)`
    pub deviations: Vec<(&'static str, f64, String)>,
}

impl VerifyReport {
    pub fn max_deviation(&self) -> f64 {
        self.deviations.iter().map(|&(_, d, _)| d).fold(0.0, f64::max)
    }
}

fn rel_dev(x: C64, y: C64) -> f64 {
    let scale = x.norm().max(y.norm());
    if scale < 1e-300 {
        0.0
    } else {
        (x - y).norm() / scale
    }
}

/// Draw random valid inputs and compare every closed-form quantity against
/// the oracle. Draws whose identical-statistics radicands fall below
/// [`NEAR_EXCLUSION_EPS`] are redrawn (counted in the report).
pub fn run_verification(trials: usize, seed: u64) -> Result<VerifyReport, CliError> {
    if trials < 1 {
        return Err(invalid("--trials must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut redraws = 0usize;
    let quantities = [
        "n_d", "n_star", "n_i_boson", "n_i_fermion", "n_f_boson", "n_f_fermion",
        "m_distinguishable", "m_boson", "m_fermion",
    ];
    let mut deviations: Vec<(&'static str, f64, String)> =
        quantities.iter().map(|&q| (q, 0.0, String::new())).collect();

    let mut done = 0usize;
    while done < trials {
        let c: f64 = rng.gen_range(-1.0..1.0);
        let e: f64 = rng.gen_range(-1.0..1.0);
        let g: f64 = rng.gen_range(-1.0..1.0);
        let a: f64 = rng.gen_range(0.0..=1.0);
        let rho: f64 = rng.gen_range(0.5..=1.0);
        let k = Couplings {
            d_a: rng.gen_range(0.5..1.5).into(),
            d_b: rng.gen_range(0.5..1.5).into(),
            d: rng.gen_range(0.5..1.5).into(),
        };
        let params = CMParams::from_principal(c, e, g).expect("principal draw is normalized");
        let coeffs = SuperCoeffs::from_a(a).expect("a drawn in [0, 1]");
        let model = RecoilModel::new(rho).expect("rho drawn in [0.5, 1]");
        let g0 = unrecoiled_gram(&params);
        let g1 = recoiled_gram(&g0, model);

        let near_exclusion = [Statistics::Boson, Statistics::Fermion].iter().any(|&s| {
            let sign = s.exchange_sign().unwrap();
            crate::closed_form::n_i_radicand(&coeffs, &g0, sign) < NEAR_EXCLUSION_EPS
                || crate::closed_form::n_f_radicand(&coeffs, &g0, &g1, sign) < NEAR_EXCLUSION_EPS
        });
        if near_exclusion {
            redraws += 1;
            continue;
        }
        done += 1;
        let input = format!(
            "c={c} e={e} g={g} a={a} rho={rho} d_a={} d_b={} d={}",
            k.d_a.re, k.d_b.re, k.d.re,
        );
        let mut record = |name: &str, dev: f64| {
            let slot = deviations.iter_mut().find(|(q, _, _)| *q == name).expect("known name");
            if dev > slot.1 {
                slot.1 = dev;
                slot.2 = input.clone();
            }
        };

        let initial_d = oracle::build_initial(&coeffs, Statistics::Distinguishable);
        let n2 = oracle::norm_sq(&initial_d, &g0, &g1).map_err(invalid)?;
        record("n_d", rel_dev(n_d(&coeffs, &g0).map_err(invalid)?.into(), n2.powf(-0.5).into()));

        let final_d =
            oracle::apply_absorption(&initial_d, &Couplings::unit(), Statistics::Distinguishable);
        let n2 = oracle::norm_sq(&final_d, &g0, &g1).map_err(invalid)?;
        record(
            "n_star",
            rel_dev(n_star(&coeffs, &g0, &g1).map_err(invalid)?.into(), n2.powf(-0.5).into()),
        );

        for (stats, ni_name, nf_name, m_name) in [
            (Statistics::Boson, "n_i_boson", "n_f_boson", "m_boson"),
            (Statistics::Fermion, "n_i_fermion", "n_f_fermion", "m_fermion"),
        ] {
            let initial = oracle::build_initial(&coeffs, stats);
            let n2 = oracle::norm_sq(&initial, &g0, &g1).map_err(invalid)?;
            let ni = n_i(&coeffs, &g0, stats).value().expect("redrawn away from exclusion");
            record(ni_name, rel_dev(ni.into(), n2.powf(-0.5).into()));

            let fin = oracle::apply_absorption(&initial, &Couplings::unit(), stats);
            let n2 = oracle::norm_sq(&fin, &g0, &g1).map_err(invalid)?;
            let nf = n_f(&coeffs, &g0, &g1, stats).value().expect("redrawn away from exclusion");
            record(nf_name, rel_dev(nf.into(), n2.powf(-0.5).into()));

            let m_cf = m_identical(&coeffs, &g0, &g1, &k, stats)
                .value()
                .expect("redrawn away from exclusion");
            let m_or = oracle::oracle_matrix_element_with(&coeffs, &g0, &g1, &k, stats)
                .map_err(invalid)?
                .value()
                .expect("redrawn away from exclusion");
            record(m_name, rel_dev(m_cf.value, m_or));
        }

        let m_cf = m_distinguishable(&coeffs, &g0, &g1, &k).map_err(invalid)?;
        let m_or =
            oracle::oracle_matrix_element_with(&coeffs, &g0, &g1, &k, Statistics::Distinguishable)
                .map_err(invalid)?
                .value()
                .expect("distinguishable states cannot be excluded");
        record("m_distinguishable", rel_dev(m_cf.value, m_or));
    }

    Ok(VerifyReport { trials, redraws, deviations })
}

fn cmd_verify(trials: usize, seed: u64, tol: f64) -> Result<(), CliError> {
    if !(tol > 0.0) {
        return Err(invalid("--tol must be positive"));
    }
    let report = run_verification(trials, seed)?;
    println!("verify: {} trials, seed {}, {} redraws near exclusion", report.trials, seed, report.redraws);
    for (name, dev, _) in &report.deviations {
        println!("  {name}: max relative deviation {dev:.3e}");
    }
    if report.max_deviation() <= tol {
        println!("verify: PASS (tolerance {tol:e})");
        Ok(())
    } else {
        let worst = report
            .deviations
            .iter()
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("at least one quantity");
        Err(CliError::VerifyFailed(format!(
            "{} deviates by {:.3e} > {tol:e} at {}",
            worst.0, worst.1, worst.2,
        )))
    }
}

/// Dispatch a parsed command line.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Rates { params, a, out } => cmd_rates(params, *a, out.as_deref()),
        Command::Sweep { params, grid, out, format } => {
            let cm = params.cm_params()?;
            let curve = sweep_rates(&cm, params.recoil()?, &params.couplings(), *grid)
                .map_err(invalid)?;
            cmd_curve(&curve, *format, out.as_deref())
        }
        Command::Figure { id, grid, out, format } => {
            let id = FigureId::from_str(id).map_err(invalid)?;
            let curve = figure_dataset(id, *grid).map_err(invalid)?;
            cmd_curve(&curve, *format, out.as_deref())
        }
        Command::Exclusion { params, out } => cmd_exclusion(params, out.as_deref()),
        Command::Verify { trials, seed, tol } => cmd_verify(*trials, *seed, *tol),
    }
}
