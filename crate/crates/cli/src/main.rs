//! `dbscale`: batch driver for the verification suite and single computations.

mod commands;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dbscale::report::RunConfig;
use dbscale::DbError;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "dbscale", version, about = "Numerical checks for de Branges spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Paley–Wiener bandwidth (`e = e^{-iaz}`).
    #[arg(long, global = true, default_value_t = std::f64::consts::PI)]
    a: f64,
    /// Extension parameter.
    #[arg(long, global = true, default_value_t = std::f64::consts::FRAC_PI_4, allow_negative_numbers = true)]
    gamma: f64,
    #[arg(long, global = true, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    window: Option<Vec<f64>>,
    #[arg(long, global = true, default_value_t = dbscale::report::NOMINAL_TOL)]
    tol: f64,
    #[arg(long = "grid-n", global = true, default_value_t = 41)]
    grid_n: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the identity suite; exit 1 if any check fails.
    Verify {
        /// Only run checks whose id starts with one of these prefixes.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
    /// Real zeros of `s_γ` in the window.
    Spectrum {
        /// Comma-separated γ values; defaults to `--gamma`.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        gammas: Vec<f64>,
    },
    /// `k(x, w)` on the grid, directly and through `s_γ`.
    Kernel {
        #[arg(long, num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true, default_values_t = [0.0, 0.0])]
        w: Vec<f64>,
    },
    /// `q(x + i·im)` on the grid in both forms.
    Qfunc {
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        im: f64,
    },
    /// Krein resolvent formula at `w` for `f = k(·, 0)` on the grid.
    Krein {
        #[arg(long, num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true, default_values_t = [0.0, 1.0])]
        w: Vec<f64>,
    },
    /// The `F₊₁` isometry counterexample at bandwidth `a`.
    Counterexample,
    /// Scale norms of `R_γ(i) f` for the first `count` dictionary elements.
    Norms {
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

/// `Config` exits with code 2, `Runtime` with code 1.
pub enum Failure {
    Config(String),
    Runtime(String),
}

impl From<DbError> for Failure {
    fn from(e: DbError) -> Self {
        match e {
            DbError::InvalidParameter(_)
            | DbError::SpectralPoint { .. }
            | DbError::DegenerateDenominator { .. }
            | DbError::OverflowGuard { .. } => Failure::Config(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn config(c: &Common) -> Result<RunConfig, Failure> {
    let window = match c.window.as_deref() {
        None => RunConfig::default().window,
        Some(&[lo, hi]) => [lo, hi],
        Some(_) => return Err(Failure::Config("--window takes two values".into())),
    };
    let cfg = RunConfig { a: c.a, gamma: c.gamma, window, tol: c.tol, grid_n: c.grid_n, seed: c.seed };
    cfg.validate()?;
    Ok(cfg)
}

fn init_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("DBSCALE_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Config(format!("DBSCALE_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Runtime(e.to_string()))
}

fn run(cli: Cli) -> Result<bool, Failure> {
    init_threads()?;
    let cfg = config(&cli.common)?;
    let sink = output::Sink::new(cli.common.out.as_deref(), cli.common.format);
    match cli.command {
        Command::Verify { only } => commands::verify(&cfg, &only, &sink),
        Command::Spectrum { gammas } => commands::spectrum(&cfg, &gammas, &sink).map(|_| true),
        Command::Kernel { w } => commands::kernel(&cfg, dbscale::c(w[0], w[1]), &sink).map(|_| true),
        Command::Qfunc { im } => commands::qfunc(&cfg, im, &sink).map(|_| true),
        Command::Krein { w } => commands::krein(&cfg, dbscale::c(w[0], w[1]), &sink).map(|_| true),
        Command::Counterexample => commands::counterexample(&cfg, &sink).map(|_| true),
        Command::Norms { count } => commands::norms(&cfg, count, &sink).map(|_| true),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Config(msg)) => {
            eprintln!("dbscale: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("dbscale: {msg}");
            ExitCode::from(1)
        }
    }
}
