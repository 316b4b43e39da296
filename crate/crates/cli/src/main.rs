//! `dirgap`: traditional and Dirichlet spectral analysis of network graphs.

mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dirgap_core::ErrorKind;

#[derive(Debug, Parser)]
#[command(name = "dirgap", version, about = "Spectral gaps, Cheeger quantities and spectral clustering under Dirichlet boundary conditions")]
struct Cli {
    /// More log output on stderr (repeatable).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Traditional and Dirichlet spectral gap per input graph -> gap.csv
    Gap(GapArgs),
    /// Analytic (and, for small trees, numeric) Dirichlet gap of d-regular trees -> tree_converge.csv
    TreeConverge(TreeArgs),
    /// Gaps of balls grown around the 1-median -> grow.csv
    Grow(GrowArgs),
    /// Dirichlet vs traditional spectral clustering over all cut sizes -> sweep_*.csv
    ClusterSweep(SweepArgs),
    /// Write a generated graph as an edge list
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Boundary {
    DegreeOne,
    Leaves,
    GridPerimeter,
}

#[derive(Debug, Args)]
struct Source {
    /// Edge-list file (repeatable for `gap`).
    #[arg(long, value_name = "FILE", conflicts_with = "gen", required_unless_present = "gen")]
    input: Vec<PathBuf>,

    /// Generator spec: tree:DxL, grid:RxC, whisker:KxWxL or random:NxP.
    #[arg(long, value_name = "SPEC")]
    gen: Option<String>,

    /// Seed for random generators.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Analyse disconnected inputs whole instead of their largest component.
    #[arg(long)]
    keep_disconnected: bool,
}

#[derive(Debug, Args)]
struct Common {
    /// Eigenpair residual tolerance.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,

    /// Output directory.
    #[arg(long, value_name = "DIR", default_value = ".")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct GapArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value = "degree-one")]
    boundary: Boundary,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct TreeArgs {
    /// Tree degree (>= 3).
    #[arg(long)]
    d: usize,
    /// Largest interior depth.
    #[arg(long)]
    l_max: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct GrowArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value = "degree-one")]
    boundary: Boundary,
    /// Only report these cut sizes.
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    /// Also write the crossing edges of every reported cut under DIR/cuts.
    #[arg(long)]
    write_cuts: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct GenArgs {
    /// Generator spec: tree:DxL, grid:RxC, whisker:KxWxL or random:NxP.
    spec: String,
    /// Destination file; stdout when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Bad flags or arguments that clap cannot catch.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return 1;
    }
    match err.downcast_ref::<dirgap_core::Error>().map(|e| e.kind()) {
        Some(ErrorKind::Usage) => 1,
        Some(ErrorKind::Numerical) => 3,
        _ => 2,
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// command output to `stdout` and diagnostics to `stderr`. Returns the exit
/// code.
fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                1
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        2 => log::LevelFilter::Debug,
        _ => log::LevelFilter::Trace,
    };
    // Already initialised when `run` is called more than once in-process.
    let _ = env_logger::Builder::new().filter_level(level).format_timestamp(None).is_test(cfg!(test)).try_init();

    let result = match cli.command {
        Command::Gap(a) => commands::gap(&a),
        Command::TreeConverge(a) => commands::tree_converge(&a),
        Command::Grow(a) => commands::grow(&a),
        Command::ClusterSweep(a) => commands::cluster_sweep(&a),
        Command::Gen(a) => commands::gen(&a, stdout),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            exit_code(&e)
        }
    }
}

fn main() -> ExitCode {
    let code = run(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code)
}
