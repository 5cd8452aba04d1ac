use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use curvetop_cli::{format_report, run, BoundingBox, CliConfig, Format, InputSource};

/// Certified topology of a real algebraic plane curve.
#[derive(Parser, Debug)]
#[command(name = "curvetop", version, about)]
struct Args {
    /// File containing the polynomial.
    #[arg(long, conflicts_with = "poly", required_unless_present = "poly")]
    input: Option<PathBuf>,
    /// Polynomial in x and y, e.g. "y^2 - x^3".
    #[arg(long)]
    poly: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Bits of precision for coordinates.
    #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u64).range(1..))]
    precision: u64,
    /// Precision stages for the numerical filter; 0 disables it.
    #[arg(long, default_value_t = 4)]
    fastlift_budget: u32,
    /// Lift every event fiber with the complete method.
    #[arg(long)]
    force_lift: bool,
    /// Analyze the square-free part instead of rejecting repeated factors.
    #[arg(long)]
    make_squarefree: bool,
    /// SVG window as x0,y0,x1,y1.
    #[arg(long, allow_hyphen_values = true)]
    bbox: Option<BoundingBox>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print statistics and timings to stderr.
    #[arg(long)]
    report: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let input = match (args.input, args.poly) {
        (Some(path), _) => InputSource::File(path),
        (None, Some(text)) => InputSource::Text(text),
        (None, None) => unreachable!("clap requires one input"),
    };
    let config = CliConfig {
        input,
        format: args.format,
        precision: args.precision,
        fastlift_budget: args.fastlift_budget,
        force_lift: args.force_lift,
        make_squarefree: args.make_squarefree,
        bbox: args.bbox,
        seed: args.seed,
        report: args.report,
    };
    match run(&config) {
        Ok(out) => {
            if config.report {
                eprint!("{}", format_report(&out.graph, &out.report));
            }
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("curvetop: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
