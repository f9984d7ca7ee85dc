use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod error;
mod output;
mod svg;

use error::CliError;
use output::Format;

/// Float-format B-spline experiments.
#[derive(Debug, Parser)]
#[command(name = "floatspline", version)]
struct Cli {
    #[command(flatten)]
    global: Global,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Directory for output files.
    #[arg(long, global = true, default_value = ".")]
    pub out_dir: PathBuf,

    /// Which report files to write. Polygon files are always written.
    #[arg(long, global = true, value_enum, default_value = "all")]
    pub format: Format,

    /// Samples per segment; for `spiral`, the total sample count.
    #[arg(long, global = true)]
    pub samples: Option<usize>,

    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evolute deviation of the float N-gon spline and of the arc Bézier.
    Circle(commands::CircleArgs),
    /// Round one clamped vertex of the degree-9 arc and convert back.
    Perturb,
    /// Bézier and B-spline curvature on the same Mineur-Farin polygon.
    Compare(commands::CompareArgs),
    /// Shape equivalence of the conical spiral and its float approximant.
    Spiral(commands::SpiralArgs),
    /// Mineur-Farin polygon as a float B-spline.
    Typical(commands::TypicalArgs),
    /// Move the end points and tangents of a float polygon onto targets.
    Position(commands::PositionArgs),
    /// Concatenate two float polygons into one composite curve.
    Join(commands::JoinArgs),
    /// Convert between float, clamped and Bézier segment forms.
    Convert(commands::ConvertArgs),
    /// Randomized conversion and evaluation invariants.
    Check(commands::CheckArgs),
}

fn run(cli: Cli) -> Result<(), CliError> {
    let g = &cli.global;
    let (outputs, summary) = match &cli.command {
        Command::Circle(a) => commands::circle(a, g)?,
        Command::Perturb => commands::perturb(g)?,
        Command::Compare(a) => commands::compare(a, g)?,
        Command::Spiral(a) => commands::spiral(a, g)?,
        Command::Typical(a) => commands::typical(a, g)?,
        Command::Position(a) => commands::position(a, g)?,
        Command::Join(a) => commands::join(a, g)?,
        Command::Convert(a) => commands::convert(a, g)?,
        Command::Check(a) => commands::check(a, g)?,
    };
    for path in outputs.write(&g.out_dir, g.format)? {
        println!("wrote {}", path.display());
    }
    print!("{}", summary.text);
    match summary.failure {
        Some(msg) => Err(CliError::Numeric(msg)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
