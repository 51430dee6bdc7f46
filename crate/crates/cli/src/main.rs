//! Command-line front end: volume, trace, sweep, fit and verify over
//! diffeomorphism words of the four-puncture sphere.
//!
//! Exit codes: 0 success, 1 verification failures, 2 numerical failures
//! (non-convergence, degenerate data), 3 validation errors (bad word, even
//! n, malformed flags).

use anyhow::Context;
use bwy_core::asympt::{fit_growth, growth_series_from_sweep};
use bwy_core::cfrep::{
    build_standard_rep, check_central_elements, check_dependent_edges, check_relations, RepParams,
};
use bwy_core::exec::ExecMode;
use bwy_core::geometry::{
    critical_to_edge_weights, find_critical_point, grad_f, potential_f, volume_at, CriticalPoint,
    NewtonOptions,
};
use bwy_core::intertwiner::{conjugation_residual, trace_product, trace_sum_formula};
use bwy_core::report::{
    FitRecord, SweepRecord, TraceRecord, VerifyCheck, VerifyRecord, VolumeRecord, SCHEMA,
};
use bwy_core::sweep::EdgeWeightSweep;
use bwy_core::word::Letter;
use bwy_core::{parse_word, DiffeoWord, Error as CoreError, QRoot};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "bwy", version, about = "Quantum intertwiner traces for four-puncture sphere mapping tori")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Diffeomorphism word, e.g. LR, L^2R^3, (LR)^2.p1
    word: String,
    /// Newton tolerance for the critical-point solve
    #[arg(long)]
    newton_tol: Option<f64>,
    /// Seed for randomized restarts and verification parameters
    #[arg(long)]
    seed: Option<u64>,
    /// Output format
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Force sequential evaluation order
    #[arg(long)]
    deterministic: bool,
    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON config file with default flag values (flags win)
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Hyperbolic volume of the mapping torus from the critical point
    Volume {
        #[command(flatten)]
        common: Common,
    },
    /// Trace of the intertwiner at one odd n
    Trace {
        #[command(flatten)]
        common: Common,
        /// Odd dimension n >= 3
        #[arg(long)]
        n: usize,
        /// Also evaluate the closed-form sum and report the discrepancy
        #[arg(long)]
        oracle: bool,
    },
    /// Dump the lifted edge-weight sweep at the critical point
    Sweep {
        #[command(flatten)]
        common: Common,
    },
    /// Growth series of log |tr| over odd n and the volume-rate fit
    Fit {
        #[command(flatten)]
        common: Common,
        /// Largest odd n in the series
        #[arg(long, default_value_t = 151)]
        n_max: usize,
    },
    /// Run the residual suite (relations, centrals, conjugation, gradients)
    Verify {
        #[command(flatten)]
        common: Common,
        /// Odd dimension n >= 3
        #[arg(long)]
        n: usize,
        /// Tolerance for the trace sum-formula oracle check
        #[arg(long, default_value_t = 1e-8)]
        oracle_tol: f64,
    },
}

/// Optional config-file defaults; explicit flags always win.
#[derive(Deserialize, Default)]
struct FileConfig {
    newton_tol: Option<f64>,
    seed: Option<u64>,
    format: Option<String>,
    deterministic: Option<bool>,
}

struct Resolved {
    word: DiffeoWord,
    newton_tol: f64,
    seed: u64,
    format: Format,
    mode: ExecMode,
    out: Option<PathBuf>,
}

fn resolve(common: &Common) -> anyhow::Result<Resolved> {
    let file: FileConfig = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))?;
            serde_json::from_str(&text).context("parsing config")?
        }
        None => FileConfig::default(),
    };
    let format = common.format.unwrap_or(match file.format.as_deref() {
        Some("csv") => Format::Csv,
        _ => Format::Json,
    });
    let deterministic = common.deterministic || file.deterministic.unwrap_or(false);
    let newton_tol = common.newton_tol.or(file.newton_tol).unwrap_or(1e-12);
    if newton_tol.is_nan() || newton_tol <= 0.0 {
        anyhow::bail!("newton tolerance must be positive");
    }
    Ok(Resolved {
        word: parse_word(&common.word)?,
        newton_tol,
        seed: common.seed.or(file.seed).unwrap_or(0),
        format,
        mode: if deterministic { ExecMode::Sequential } else { ExecMode::Parallel },
        out: common.out.clone(),
    })
}

fn emit(cfg: &Resolved, body: String) -> anyhow::Result<()> {
    match &cfg.out {
        Some(path) => std::fs::write(path, body.as_bytes())
            .with_context(|| format!("writing {}", path.display()))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            if !body.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
        }
    }
    Ok(())
}

fn newton_opts(cfg: &Resolved) -> NewtonOptions {
    NewtonOptions { tol: cfg.newton_tol, seed: cfg.seed, ..Default::default() }
}

fn hyperbolic_sweep(cfg: &Resolved) -> Result<(CriticalPoint, EdgeWeightSweep), CoreError> {
    let eps = cfg.word.epsilon_signature();
    let cp = find_critical_point(&eps, None, &newton_opts(cfg))?;
    let sweep = critical_to_edge_weights(&cp, &cfg.word)?;
    Ok((cp, sweep))
}

fn require_odd(n: usize) -> Result<(), CoreError> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(CoreError::BadOrder(n as i64));
    }
    Ok(())
}

fn cmd_volume(cfg: &Resolved) -> anyhow::Result<String> {
    let eps = cfg.word.epsilon_signature();
    let cp = find_critical_point(&eps, None, &newton_opts(cfg))?;
    let rep = volume_at(&cp, &eps)?;
    let record = VolumeRecord::new(cfg.word.render(), &cp, &rep);
    Ok(serde_json::to_string_pretty(&record)?)
}

fn cmd_trace(cfg: &Resolved, n: usize, oracle: bool) -> anyhow::Result<String> {
    require_odd(n)?;
    let (_, sweep) = hyperbolic_sweep(cfg)?;
    let root = QRoot::new(n)?;
    let t = trace_product(&sweep, &root)?;
    let mut record = TraceRecord::new(cfg.word.render(), n, t);
    if oracle {
        record = record.with_oracle(trace_sum_formula(&sweep, &root)?);
    }
    match cfg.format {
        Format::Json => Ok(serde_json::to_string_pretty(&record)?),
        Format::Csv => {
            let mut out = String::from("word,n,re,im,abs,log_abs\n");
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                record.word, record.n, record.re, record.im, record.abs, record.log_abs
            ));
            Ok(out)
        }
    }
}

fn cmd_sweep(cfg: &Resolved) -> anyhow::Result<String> {
    let (_, sweep) = hyperbolic_sweep(cfg)?;
    Ok(serde_json::to_string_pretty(&SweepRecord::new(&sweep))?)
}

fn cmd_fit(cfg: &Resolved, n_max: usize) -> anyhow::Result<String> {
    require_odd(n_max)?;
    let eps = cfg.word.epsilon_signature();
    let cp = find_critical_point(&eps, None, &newton_opts(cfg))?;
    let volume = volume_at(&cp, &eps)?.volume;
    let sweep = critical_to_edge_weights(&cp, &cfg.word)?;
    let series = growth_series_from_sweep(&sweep, n_max, cfg.mode)?;
    let fit = fit_growth(&series, volume)?;
    let record = FitRecord::new(&series, &fit, volume);
    match cfg.format {
        Format::Json => Ok(serde_json::to_string_pretty(&record)?),
        Format::Csv => Ok(record.to_csv()),
    }
}

fn random_params(n: usize, rng: &mut ChaCha8Rng) -> Result<RepParams, CoreError> {
    let root = QRoot::new(n)?;
    let x = Complex64::from_polar(rng.gen_range(0.7..1.4), rng.gen_range(0.0..2.0 * PI));
    let y = Complex64::from_polar(rng.gen_range(0.7..1.4), rng.gen_range(0.0..2.0 * PI));
    let theta: [Complex64; 4] =
        std::array::from_fn(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    RepParams::from_puncture_logs(x, y, theta, root)
}

fn cmd_verify(cfg: &Resolved, n: usize, oracle_tol: f64) -> anyhow::Result<(String, bool)> {
    require_odd(n)?;
    if oracle_tol.is_nan() || oracle_tol <= 0.0 {
        anyhow::bail!("oracle tolerance must be positive");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut checks = Vec::new();
    let push = |name: &str, residual: f64, tolerance: f64, checks: &mut Vec<VerifyCheck>| {
        checks.push(VerifyCheck {
            name: name.to_string(),
            residual,
            tolerance,
            passed: residual <= tolerance,
        });
    };

    let params = random_params(n, &mut rng)?;
    let g = build_standard_rep(&params);
    let mats = g.dense();
    push("q_commutation_relations", check_relations(&mats, &params.root), 1e-11, &mut checks);
    push("central_elements", check_central_elements(&mats, &params), 1e-11, &mut checks);
    push("dependent_edges", check_dependent_edges(&g, &params), 1e-11, &mut checks);
    push(
        "conjugation_L_random",
        conjugation_residual(&params, Letter::L)?,
        1e-8,
        &mut checks,
    );
    push(
        "conjugation_R_random",
        conjugation_residual(&params, Letter::R)?,
        1e-8,
        &mut checks,
    );

    let (cp, sweep) = hyperbolic_sweep(cfg)?;
    push("sweep_periodicity", sweep.periodicity_residual, 1e-9, &mut checks);
    push("winding_integrality", sweep.winding_residual, 1e-9, &mut checks);
    let root = QRoot::new(n)?;
    let hyp = sweep.params_at_step(0, &root)?;
    push(
        "conjugation_L_hyperbolic",
        conjugation_residual(&hyp, Letter::L)?,
        1e-8,
        &mut checks,
    );
    push(
        "conjugation_R_hyperbolic",
        conjugation_residual(&hyp, Letter::R)?,
        1e-8,
        &mut checks,
    );

    // gradient against central differences near the critical point
    let eps = cfg.word.epsilon_signature();
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let alpha: Vec<Complex64> = cp
            .alpha
            .iter()
            .map(|a| a + Complex64::new(rng.gen_range(-0.1..0.1), rng.gen_range(-0.1..0.1)))
            .collect();
        let grad = grad_f(&alpha, &eps)?;
        let d = 1e-5;
        for k in 0..alpha.len() {
            let mut hi = alpha.clone();
            let mut lo = alpha.clone();
            hi[k] += d;
            lo[k] -= d;
            let fd = (potential_f(&hi, &eps)? - potential_f(&lo, &eps)?) / (2.0 * d);
            worst = worst.max((grad[k] - fd).norm() / grad[k].norm().max(1.0));
        }
    }
    push("gradient_vs_central_differences", worst, 1e-6, &mut checks);

    let terms = (n as f64).powi(sweep.k0() as i32);
    if terms <= 1e8 {
        let tp = trace_product(&sweep, &root)?;
        let ts = trace_sum_formula(&sweep, &root)?;
        push(
            "trace_sum_oracle",
            (tp.norm() - ts.norm()).abs() / tp.norm(),
            oracle_tol,
            &mut checks,
        );
    }

    let passed = checks.iter().all(|c| c.passed);
    let record = VerifyRecord { schema: SCHEMA, word: cfg.word.render(), n, checks, passed };
    Ok((serde_json::to_string_pretty(&record)?, passed))
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<CoreError>() {
        Some(
            CoreError::EmptyWord
            | CoreError::MissingLetter(_)
            | CoreError::Syntax { .. }
            | CoreError::BadOrder(_)
            | CoreError::TooFewPoints { .. },
        ) => 3,
        Some(_) => 2,
        None => 3,
    }
}

type Runner = Box<dyn FnOnce(&Resolved) -> anyhow::Result<(String, bool)>>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, run): (&Common, Runner) = match &cli.command {
        Command::Volume { common } => (common, Box::new(|cfg| Ok((cmd_volume(cfg)?, true)))),
        Command::Trace { common, n, oracle } => {
            let (n, oracle) = (*n, *oracle);
            (common, Box::new(move |cfg| Ok((cmd_trace(cfg, n, oracle)?, true))))
        }
        Command::Sweep { common } => (common, Box::new(|cfg| Ok((cmd_sweep(cfg)?, true)))),
        Command::Fit { common, n_max } => {
            let n_max = *n_max;
            (common, Box::new(move |cfg| Ok((cmd_fit(cfg, n_max)?, true))))
        }
        Command::Verify { common, n, oracle_tol } => {
            let (n, oracle_tol) = (*n, *oracle_tol);
            (common, Box::new(move |cfg| cmd_verify(cfg, n, oracle_tol)))
        }
    };
    let cfg = match resolve(common) {
        Ok(cfg) => cfg,
        Err(err) => {
            eprintln!("error: {err:#}");
            return ExitCode::from(3);
        }
    };
    if cfg.format == Format::Csv && !matches!(cli.command, Command::Fit { .. } | Command::Trace { .. })
    {
        eprintln!("error: csv output is only available for fit and trace");
        return ExitCode::from(3);
    }
    match run(&cfg) {
        Ok((body, passed)) => {
            if let Err(err) = emit(&cfg, body) {
                eprintln!("error: {err:#}");
                return ExitCode::from(2);
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
