use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use logcy_core::io::SCHEMA_VERSION;
use logcy_core::{IntVector, Triangle};
use num_bigint::BigInt;

mod commands;
mod error;
mod json;

use error::CliError;

/// Exact toric and plane-arrangement calculus for log Calabi-Yau pairs.
#[derive(Parser, Debug)]
#[command(
    name = "logcy",
    disable_version_flag = true,
    arg_required_else_help = true
)]
struct Cli {
    /// Print the document schema version and exit.
    #[arg(short = 'V', long)]
    version: bool,

    /// Write the result to this file instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    group: Option<Group>,
}

#[derive(Subcommand, Debug)]
enum Group {
    /// Fans.
    #[command(subcommand)]
    Fan(FanCmd),
    /// Toric pairs and numerical pairs.
    #[command(subcommand)]
    Pair(PairCmd),
    /// Line arrangements in the projective plane.
    #[command(subcommand)]
    Arr(ArrCmd),
    /// Toric fibrations.
    #[command(subcommand)]
    Fib(FibCmd),
    /// Generalized Bott towers.
    #[command(subcommand)]
    Bott(BottCmd),
}

/// A document read from a file, or from standard input for `-`.
#[derive(Args, Debug)]
struct Input {
    #[arg(long = "input", visible_alias = "pair", value_name = "FILE")]
    input: PathBuf,
}

#[derive(Subcommand, Debug)]
enum FanCmd {
    /// Validate a fan and report its basic properties.
    Check(Input),
    /// Star subdivision at a primitive vector; pairs are pulled back.
    Subdivide {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = int_vector, allow_hyphen_values = true)]
        vector: IntVector,
    },
}

#[derive(Subcommand, Debug)]
enum PairCmd {
    /// Complexity, index and log canonicity.
    Report(Input),
    /// Log discrepancy of the valuation given by a lattice point.
    Discrepancy {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = int_vector, allow_hyphen_values = true)]
        vector: IntVector,
    },
    /// Cones whose rays all carry coefficient one.
    LcCenters(Input),
    /// Number of global sections of a torus-invariant divisor.
    Sections {
        #[command(flatten)]
        input: Input,
        /// Coefficients of the divisor, one per ray.
        #[arg(
            long,
            required = true,
            value_delimiter = ',',
            allow_hyphen_values = true
        )]
        divisor: Vec<BigInt>,
    },
}

#[derive(Subcommand, Debug)]
enum ArrCmd {
    /// Complexity, index and log canonicity.
    Report(Input),
    /// The invariants lambda1 and lambda2 of an associated triangle.
    Lambda {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = triangle)]
        triangle: Triangle,
    },
    /// Associated triangles.
    Triangles(Input),
    /// Convex decomposition into associated triangles.
    Decompose {
        #[command(flatten)]
        input: Input,
        /// Require positive weight on this triangle.
        #[arg(long, value_parser = triangle)]
        triangle: Option<Triangle>,
    },
}

#[derive(Subcommand, Debug)]
enum FibCmd {
    /// Fiber rays, lifted rays and the two subfans.
    Split(Input),
    /// Whether the fibration is locally trivial.
    Trivial(Input),
    /// The general fiber and its weights.
    Fiber(Input),
    /// Twist data of a projective bundle.
    Bundles(Input),
    /// Discriminant part of the canonical bundle formula.
    Cbf {
        #[command(flatten)]
        input: Input,
        /// Boundary coefficients on the source rays; the full boundary when
        /// omitted.
        #[arg(long, value_delimiter = ',', value_parser = rational)]
        coeffs: Option<Vec<logcy_core::Rational>>,
    },
}

#[derive(Subcommand, Debug)]
enum BottCmd {
    /// Build the top fan of a tower specification.
    Build(Input),
    /// Recognize a fan as a tower and report its stage dimensions.
    Recognize(Input),
    /// A projective line bundle over projective space carrying a pair of
    /// complexity zero and index m.
    Example {
        #[arg(long, allow_hyphen_values = true)]
        d: BigInt,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: BigInt,
    },
}

fn int_vector(s: &str) -> Result<IntVector, String> {
    logcy_core::io::parse_int_vector(s).map_err(|e| e.to_string())
}

fn rational(s: &str) -> Result<logcy_core::Rational, String> {
    logcy_core::parse_rational(s.trim()).map_err(|e| e.to_string())
}

fn triangle(s: &str) -> Result<Triangle, String> {
    let idx: Vec<usize> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("invalid line index {t:?}"))
        })
        .collect::<Result<_, _>>()?;
    let [a, b, c] = idx[..] else {
        return Err(format!(
            "a triangle needs three line indices, got {}",
            idx.len()
        ));
    };
    Triangle::new(a, b, c).map_err(|e| e.to_string())
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let mut text = String::new();
    let result = if path == Path::new("-") {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    result.map_err(|e| CliError::file(path, e))?;
    Ok(text)
}

fn run(cli: Cli) -> Result<String, CliError> {
    use commands::*;
    let group = cli.group.expect("clap requires a subcommand");
    let load = |i: &Input| read_input(&i.input);
    match group {
        Group::Fan(FanCmd::Check(i)) => fan_check(&load(&i)?),
        Group::Fan(FanCmd::Subdivide { input, vector }) => fan_subdivide(&load(&input)?, &vector),
        Group::Pair(PairCmd::Report(i)) => pair_report(&load(&i)?),
        Group::Pair(PairCmd::Discrepancy { input, vector }) => {
            pair_discrepancy(&load(&input)?, &vector)
        }
        Group::Pair(PairCmd::LcCenters(i)) => pair_lc_centers(&load(&i)?),
        Group::Pair(PairCmd::Sections { input, divisor }) => {
            pair_sections(&load(&input)?, &divisor)
        }
        Group::Arr(ArrCmd::Report(i)) => arr_report(&load(&i)?),
        Group::Arr(ArrCmd::Lambda { input, triangle }) => arr_lambda(&load(&input)?, &triangle),
        Group::Arr(ArrCmd::Triangles(i)) => arr_triangles(&load(&i)?),
        Group::Arr(ArrCmd::Decompose { input, triangle }) => {
            arr_decompose(&load(&input)?, triangle.as_ref())
        }
        Group::Fib(FibCmd::Split(i)) => fib_split(&load(&i)?),
        Group::Fib(FibCmd::Trivial(i)) => fib_trivial(&load(&i)?),
        Group::Fib(FibCmd::Fiber(i)) => fib_fiber(&load(&i)?),
        Group::Fib(FibCmd::Bundles(i)) => fib_bundles(&load(&i)?),
        Group::Fib(FibCmd::Cbf { input, coeffs }) => fib_cbf(&load(&input)?, coeffs),
        Group::Bott(BottCmd::Build(i)) => bott_build(&load(&i)?),
        Group::Bott(BottCmd::Recognize(i)) => bott_recognize(&load(&i)?),
        Group::Bott(BottCmd::Example { d, n, m }) => bott_example(&d, n, &m),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.version {
        println!("{SCHEMA_VERSION}");
        return ExitCode::SUCCESS;
    }
    if cli.group.is_none() {
        eprintln!("error: a subcommand is required; see --help");
        return ExitCode::from(2);
    }
    let output = cli.output.clone();
    match run(cli) {
        Ok(text) => {
            let written = match &output {
                Some(path) => fs::write(path, &text).map_err(|e| CliError::file(path, e)),
                None => io::stdout()
                    .write_all(text.as_bytes())
                    .map_err(|e| CliError::file(Path::new("-"), e)),
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => e.report(),
            }
        }
        Err(e) => e.report(),
    }
}
