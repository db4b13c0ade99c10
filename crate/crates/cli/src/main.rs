//! `dpts` command-line driver.
//!
//! Exit codes: 0 success, 2 parse error (config file or flags), 3 parameter
//! validation error, 4 I/O error, 5 oracle mismatch, 6 sweep finished but no
//! grid point was secure for any protocol.

mod config;
mod oracle_check;
mod report;
mod simulate;
mod sweep;

use clap::{Parser, Subcommand};
use config::{RunConfig, SweepVariable, KNOWN_KEYS};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_PARSE: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_IO: u8 = 4;
const EXIT_ORACLE: u8 = 5;
const EXIT_NO_SECURE_RANGE: u8 = 6;

#[derive(Parser)]
#[command(
    name = "dpts",
    about = "Differential phase time shifting QKD: rates, sweeps, optimization, simulation",
    after_help = "\
CONFIG:
  All parameters live in a line-oriented `section.key = value` file passed
  via --config, and every key can be overridden on the command line as
  `--section.key=value` (e.g. `--source.mu=0.25`). Unknown keys are hard
  errors. Known keys:
    source.mu, source.pulse_rate_hz,
    encoding.n_max, encoding.p_decoy,
    channel.length_km, channel.attenuation_db_per_km,
    receiver.efficiency, receiver.dark_count_prob, receiver.visibility,
    receiver.dead_time_s,
    run.sweep, run.from, run.to, run.steps, run.protocols, run.seed,
    run.n_subblocks, run.out, run.optimize_mu, run.mu_lo, run.mu_hi

CSV COLUMNS (sweep):
  Column 1 is the swept value (distance_km | visibility | mu). Then, for
  each requested protocol in order, 16 columns prefixed with the protocol
  name: mu, t, r_click, r_total, prefactor, e1, e2, e3, e4, i_ab, chi0,
  chi1, chi, bits_per_pulse, bits_per_second, secure. For dps/cow, e1 is
  the QBER, e2..e4 are 0, chi0 = chi with chi1 = 0, and information
  quantities are in bits (base-4 units for dpts). Floats carry 9
  significant digits; output bytes are deterministic for a fixed
  config + seed.

EXIT CODES:
  0 success, 2 parse error, 3 validation error, 4 I/O error,
  5 oracle mismatch, 6 sweep had no secure grid point."
)]
struct Cli {
    /// Config file in `section.key = value` format.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Master seed for the simulator (overrides run.seed).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output path (overrides run.out); stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Comma-separated protocols (overrides run.protocols): dpts,dps,cow.
    #[arg(long, global = true)]
    protocols: Option<String>,
    /// Optimize mu per evaluation point (overrides run.optimize_mu).
    #[arg(long, global = true)]
    optimize_mu: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full analytic report at the configured operating point.
    Analyze,
    /// Grid sweep over distance, visibility, or mu, written as CSV.
    Sweep {
        /// Swept variable: distance_km | visibility | mu (overrides run.sweep).
        #[arg(long)]
        var: Option<String>,
        #[arg(long)]
        from: Option<f64>,
        #[arg(long)]
        to: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Mean-photon-number optimization per protocol at the configured point.
    OptimizeMu {
        #[arg(long)]
        mu_lo: Option<f64>,
        #[arg(long)]
        mu_hi: Option<f64>,
    },
    /// Seeded Monte-Carlo run with analytic comparison columns.
    Simulate {
        #[arg(long)]
        n_subblocks: Option<usize>,
    },
    /// Compare the closed-form Holevo bounds against the Gram-matrix
    /// eigensolver over a 25-point (mu, t) grid.
    OracleCheck {
        /// Evaluate the primary bound with the uncorrected (added)
        /// conditioned-entropy sign to demonstrate that the oracle
        /// discriminates it.
        #[arg(long)]
        flip_sign: bool,
    },
    /// Side-by-side protocol summary at the configured point.
    Compare,
}

enum CliError {
    Parse(String),
    Validation(String),
    Io(String),
    OracleMismatch(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Io(_) => EXIT_IO,
            CliError::OracleMismatch(_) => EXIT_ORACLE,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m)
            | CliError::Validation(m)
            | CliError::Io(m)
            | CliError::OracleMismatch(m) => m,
        }
    }
}

fn main() -> ExitCode {
    // `--section.key=value` overrides are routed to the config layer before
    // clap sees the argument list.
    let mut overrides = Vec::new();
    let mut args = Vec::new();
    for arg in std::env::args() {
        if let Some(body) = arg.strip_prefix("--") {
            if let Some((key, value)) = body.split_once('=') {
                if KNOWN_KEYS.contains(&key) {
                    overrides.push((key.to_string(), value.to_string()));
                    continue;
                }
            }
        }
        args.push(arg);
    }
    let cli = Cli::parse_from(args);

    match run(cli, &overrides) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn build_config(cli: &Cli, overrides: &[(String, String)]) -> Result<RunConfig, CliError> {
    let mut config = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            RunConfig::parse(&text).map_err(|e| CliError::Parse(e.to_string()))?
        }
        None => RunConfig::default(),
    };
    for (key, value) in overrides {
        config
            .apply(key, value, 0)
            .map_err(|e| CliError::Parse(format!("--{key}={value}: {e}")))?;
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(out) = &cli.out {
        config.out = Some(out.display().to_string());
    }
    if let Some(protocols) = &cli.protocols {
        config
            .apply("run.protocols", protocols, 0)
            .map_err(|e| CliError::Parse(e.to_string()))?;
    }
    if cli.optimize_mu {
        config.optimize_mu = true;
    }
    Ok(config)
}

fn validated(config: &RunConfig) -> Result<(), CliError> {
    config
        .params
        .validate()
        .map_err(|e| CliError::Validation(e.to_string()))?;
    Ok(())
}

fn emit(config: &RunConfig, bytes: &[u8]) -> Result<(), CliError> {
    match &config.out {
        Some(path) => {
            std::fs::write(path, bytes).map_err(|e| CliError::Io(format!("{path}: {e}")))
        }
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(bytes)
                .map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

fn run(cli: Cli, overrides: &[(String, String)]) -> Result<u8, CliError> {
    let mut config = build_config(&cli, overrides)?;

    match &cli.command {
        Command::Analyze => {
            validated(&config)?;
            emit(&config, report::analyze(&config).as_bytes())?;
            Ok(0)
        }
        Command::Compare => {
            validated(&config)?;
            let text = report::compare(&config).map_err(CliError::Validation)?;
            emit(&config, text.as_bytes())?;
            Ok(0)
        }
        Command::OptimizeMu { mu_lo, mu_hi } => {
            if let Some(lo) = mu_lo {
                config.mu_bounds.0 = *lo;
            }
            if let Some(hi) = mu_hi {
                config.mu_bounds.1 = *hi;
            }
            validated(&config)?;
            let text = report::optimize_report(&config).map_err(CliError::Validation)?;
            emit(&config, text.as_bytes())?;
            Ok(0)
        }
        Command::Sweep {
            var,
            from,
            to,
            steps,
        } => {
            if let Some(var) = var {
                config.sweep = SweepVariable::parse(var)
                    .ok_or_else(|| CliError::Parse(format!("unknown sweep variable `{var}`")))?;
            }
            if let Some(from) = from {
                config.from = *from;
            }
            if let Some(to) = to {
                config.to = *to;
            }
            if let Some(steps) = steps {
                config.steps = *steps;
            }
            config.check_run_controls().map_err(CliError::Validation)?;
            // the base parameters must validate before sweeping replaces
            // one of them per grid point
            validated(&config)?;
            let result = sweep::run_sweep(&config).map_err(CliError::Validation)?;
            let csv = sweep::to_csv(&sweep::header(&config), &result.rows);
            emit(&config, &csv)?;
            if !result.any_secure {
                eprintln!("warning: no secure grid point for any protocol");
                return Ok(EXIT_NO_SECURE_RANGE);
            }
            Ok(0)
        }
        Command::Simulate { n_subblocks } => {
            if let Some(n) = n_subblocks {
                config.n_subblocks = *n;
            }
            validated(&config)?;
            let report = simulate::run_simulation(&config);
            let csv = sweep::to_csv(&report.header, std::slice::from_ref(&report.row));
            emit(&config, &csv)?;
            // summary to stderr so the CSV on stdout stays clean
            let stats = &report.outcome.stats;
            eprintln!(
                "simulate: {} windows, {} clicks ({} dark), {} sifted symbols",
                stats.measurements_attempted, stats.clicks, stats.dark_clicks, stats.sifted_length
            );
            for (name, sigma) in &report.sigma_distances {
                eprintln!("  {name}: {sigma:.3} sigma from analytic expectation");
            }
            Ok(0)
        }
        Command::OracleCheck { flip_sign } => {
            let check = oracle_check::run_oracle_check(*flip_sign);
            let text = format!(
                "oracle-check: {} grid points\nmax |chi0 closed - numeric| = {:e}\nmax |chi1 bracket closed - numeric| = {:e}\n{}\n",
                check.points,
                check.max_chi0_deviation,
                check.max_bracket_deviation,
                if check.pass { "PASS" } else { "FAIL" }
            );
            emit(&config, text.as_bytes())?;
            if check.pass {
                Ok(0)
            } else {
                Err(CliError::OracleMismatch(format!(
                    "max deviation {:e} exceeds {:e}",
                    check.max_chi0_deviation.max(check.max_bracket_deviation),
                    oracle_check::ORACLE_TOLERANCE
                )))
            }
        }
    }
}
