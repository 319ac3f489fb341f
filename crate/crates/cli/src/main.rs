mod commands;
mod config;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{FileConfig, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "circlesurf", version, about = "Discrete Willmore energy, circle patterns and discrete minimal surfaces")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct GlobalArgs {
    /// Convergence or acceptance tolerance
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Newton iteration budget
    #[arg(long, global = true)]
    max_iter: Option<usize>,
    /// Seed for randomized checks
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Also write SVG drawings of planar patterns
    #[arg(long, global = true)]
    svg: bool,
    /// Also write OBJ meshes
    #[arg(long, global = true)]
    obj: bool,
    /// Output directory
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// TOML file with defaults for the flags above
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Willmore energy audit of a closed triangle mesh
    Energy {
        mesh: PathBuf,
        /// Also report the bending energy
        #[arg(long)]
        bending: bool,
    },
    /// Orthogonal circle patterns
    Pattern {
        #[command(subcommand)]
        action: PatternAction,
    },
    /// Discrete minimal surface synthesis
    Surface {
        #[command(subcommand)]
        kind: SurfaceKind,
    },
    /// Run the invariant suites
    Verify {
        /// Run only this suite (repeatable)
        #[arg(long)]
        suite: Vec<String>,
        /// Mesh fixture checked by the `fixture` suite
        #[arg(long, value_name = "FILE")]
        mesh: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum PatternAction {
    /// Solve a pattern problem and lay it out
    Solve { problem: PathBuf },
}

#[derive(Subcommand, Debug)]
enum SurfaceKind {
    /// Discrete Enneper surface on a (2n+1)² lattice patch
    Enneper { n: usize },
    /// Discrete Schwarz-P surface over an m × n × k box
    Schwarzp { m: usize, n: usize, k: usize },
}

/// Error carrying the process exit code: 1 failed checks, 2 usage or
/// parse errors, 3 invalid input, 4 numerical failure.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new(2, message)
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let file = match &cli.global.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let cfg = RunConfig::merge(&cli.global, file)?;
    match cli.command {
        Command::Energy { mesh, bending } => commands::energy(&cfg, &mesh, bending),
        Command::Pattern { action: PatternAction::Solve { problem } } => commands::pattern_solve(&cfg, &problem),
        Command::Surface { kind: SurfaceKind::Enneper { n } } => commands::enneper(&cfg, n),
        Command::Surface { kind: SurfaceKind::Schwarzp { m, n, k } } => commands::schwarzp(&cfg, m, n, k),
        Command::Verify { suite, mesh } => verify::run(&cfg, &suite, mesh.as_deref()),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
