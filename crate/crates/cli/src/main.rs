mod commands;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;

/// Similarity-invariant distances between convex bodies.
#[derive(Debug, Parser)]
#[command(name = "shapeorbit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct OutArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    /// Regular simplex with unit circumradius (`--dim 2|3`).
    Simplex,
    /// Cap {x₁ <= a} ∩ B with `--param a`.
    Cap,
    Reuleaux,
    Segment,
    /// Inscribed regular m-gon.
    BallPolygon,
    /// Apex over a chord at height −t, `--param t`.
    Apex,
    /// Seeded random polygon with `--vertices` points.
    Random,
    /// Seeded random 3D vertex cloud with `--vertices` points.
    RandomCloud,
    /// Outer body of the refined-inradius pair, `--param t`.
    RefinedOuter,
    /// Inner body of the refined-inradius pair, `--param t`.
    RefinedInner,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Circumball, inradius, diameter and width of a body.
    Functionals {
        body: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// The orbit pseudometric ⊙(K, L) with its certified interval.
    Metric {
        k: PathBuf,
        l: PathBuf,
        #[arg(long, default_value_t = shapeorbit::metric::DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// d_Sim, d_Dil⁺ and ρ for two planar polygons.
    Sim {
        k: PathBuf,
        l: PathBuf,
        #[arg(long, default_value_t = shapeorbit::sim_distance::DEFAULT_ANGLE_TOL)]
        angle_tol: f64,
        #[arg(long, default_value_t = shapeorbit::metric::DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Evaluates every upper bound on ⊙ for a pair; exit 1 if one fails.
    Bounds {
        k: PathBuf,
        l: PathBuf,
        #[arg(long, default_value_t = shapeorbit::metric::DEFAULT_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Samples random bodies on the (r, D) diagram and checks a random pairing.
    Diagram {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = shapeorbit::metric::DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Writes a generated body as JSON.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        /// Arc resolution for smooth bodies.
        #[arg(long, default_value_t = 256)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long)]
        param: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        vertices: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Runs the randomized property suite; exit 1 on any failure.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = shapeorbit::metric::DEFAULT_TOL)]
        tol: f64,
        /// Extra body files to check.
        #[arg(long = "body")]
        bodies: Vec<PathBuf>,
        #[command(flatten)]
        out: OutArgs,
    },
}

fn init_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("SHAPEORBIT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| CliError::Usage(format!("SHAPEORBIT_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn run(cli: Cli) -> Result<bool, CliError> {
    init_threads()?;
    match cli.command {
        Command::Functionals { body, out } => commands::functionals(&body, &out),
        Command::Metric { k, l, tol, out } => commands::metric(&k, &l, tol, &out),
        Command::Sim { k, l, angle_tol, tol, out } => commands::sim(&k, &l, angle_tol, tol, &out),
        Command::Bounds { k, l, tol, format, out } => commands::bounds(&k, &l, tol, format, &out),
        Command::Diagram { samples, seed, tol, out } => commands::diagram(samples, seed, tol, &out),
        Command::Gen { kind, m, dim, param, seed, vertices, out } => {
            commands::generate(kind, m, dim, param, seed, vertices, &out)
        }
        Command::Verify { seed, trials, tol, bodies, out } => commands::verify(seed, trials, tol, &bodies, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
