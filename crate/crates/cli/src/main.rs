//! `autplane`: transitivity criteria, point-moving witnesses, closure
//! certificates and symbolic computations for triangular automorphisms of
//! the affine plane.

mod commands;
mod input;
mod render;

use std::process::ExitCode;

use autplane::derivations::DEFAULT_NILPOTENCY_BOUND;
use autplane::grading::{MVec, NVec};
use clap::{value_parser, Parser, Subcommand, ValueEnum};

/// Success, or the criterion holds.
pub const EXIT_OK: u8 = 0;
/// Usage, input or inconclusive-search error.
pub const EXIT_USAGE: u8 = 1;
/// Degenerate geometric input (origin, repeated or conflicting points).
pub const EXIT_DEGENERATE: u8 = 2;
/// The requested property fails: the criterion fails, no obstruction
/// exists, the root is outside the cone, or a certificate is invalid.
pub const EXIT_NEGATIVE: u8 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Parser)]
#[command(
    name = "autplane",
    version,
    about = "Infinite transitivity of groups generated by plane shears",
    after_help = "Inputs: a file path, '-' for stdin, or inline JSON starting with '{'.\n\
                  Exit codes: 0 success, 1 usage or input error, 2 degenerate input,\n\
                  3 negative outcome (criterion fails, no obstruction, not in cone, invalid certificate)."
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Iterations allowed when establishing local nilpotency.
    #[arg(long, default_value_t = DEFAULT_NILPOTENCY_BOUND, value_parser = value_parser!(u32).range(1..), global = true)]
    pub bound: u32,
    /// Cap on the number of summands in cone searches; exact by default.
    #[arg(long, value_parser = value_parser!(u64).range(1..), global = true)]
    pub cone_bound: Option<u64>,
    /// Seed for randomized inputs.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Decide infinite transitivity of a generator family {"H":[..],"K":[..]}.
    Check { spec: String },
    /// Word in the family fixing some points and moving one point to another.
    Witness {
        spec: String,
        /// {"fixed":[[x,y],..],"from":[x,y],"to":[x,y]}
        points: String,
    },
    /// Closure certificate for x^a d/dy, the root derivation of degree (a,-1).
    RealizeRoot { spec: String, a: i64 },
    /// Iterated commutator of root derivations by closed form and by nested brackets.
    Commutator {
        /// Ray of the roots: x = (1,0), y = (0,1); inferred from the first root.
        #[arg(long, value_parser = input::parse_ray)]
        rho: Option<NVec>,
        /// Ray of the base derivation.
        #[arg(long, value_parser = input::parse_ray, required_unless_present = "random")]
        r: Option<NVec>,
        /// Degree of the base derivation, e.g. -1,3.
        #[arg(long, value_parser = input::parse_vec, allow_hyphen_values = true, required_unless_present = "random")]
        eps: Option<MVec>,
        /// Roots e_1 .. e_k, each as a,b.
        #[arg(value_parser = input::parse_vec, allow_hyphen_values = true)]
        roots: Vec<MVec>,
        /// Draw k roots at random from --seed instead.
        #[arg(long, conflicts_with_all = ["rho", "r", "eps", "roots"])]
        random: Option<usize>,
    },
    /// Apply exp(t D) to a polynomial, or print the map exp(t D).
    Exp {
        /// Derivation such as "y d/dx" or "x^2 d/dy - y d/dx"; - reads stdin.
        derivation: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        t: String,
        /// Polynomial to transform; without it the images of x and y are printed.
        #[arg(long)]
        on: Option<String>,
    },
    /// Split a derivation into homogeneous pieces.
    Decompose {
        /// Derivation text; - reads stdin.
        derivation: String,
    },
    /// Invariant-set obstruction for a family whose roots do not span the lattice.
    Obstruction { spec: String },
    /// Replay a closure certificate.
    VerifyCert { cert: String },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {:#}", failure.error);
            ExitCode::from(failure.code)
        }
    }
}
