//! Command-line front end: reproducible verification runs with JSON
//! reports.
//!
//! Exit codes partition the outcomes: 0 certified/success, 1 inconclusive
//! or rejected, 2 input error, 3 unsupported input, 4 internal
//! inconsistency (a certificate contradicted by the oracle is a bug).

mod commands;
mod demo;
mod formats;
mod report;
mod runner;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use schottky_core::bt_tree::TreeError;
use schottky_core::exact_arith::ArithError;

pub mod exit_code {
    pub const SUCCESS: i32 = 0;
    pub const INCONCLUSIVE: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const UNSUPPORTED: i32 = 3;
    pub const INTERNAL: i32 = 4;
}

/// An error with the exit code it maps to.
#[derive(Debug, Clone)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn new(code: i32, message: String) -> Self {
        Failure { code, message }
    }

    pub fn input(message: String) -> Self {
        Failure::new(exit_code::INPUT, message)
    }

    pub fn unsupported(message: String) -> Self {
        Failure::new(exit_code::UNSUPPORTED, message)
    }

    pub fn internal(message: String) -> Self {
        Failure::new(exit_code::INTERNAL, message)
    }

    pub fn from_tree(e: &TreeError) -> Self {
        let code = match e {
            TreeError::Arith(ArithError::NotPrime(_)) => exit_code::UNSUPPORTED,
            TreeError::Arith(_) => exit_code::INPUT,
            TreeError::NotTwoByTwo(_) => exit_code::INPUT,
            TreeError::MixedPrimes(..) => exit_code::UNSUPPORTED,
            TreeError::TypeSwapping { .. } => exit_code::UNSUPPORTED,
            TreeError::NotHyperbolic => exit_code::UNSUPPORTED,
            TreeError::EllipticGenerator { .. } => exit_code::UNSUPPORTED,
            TreeError::TooFewGenerators(_) => exit_code::INPUT,
            TreeError::DomainCountMismatch { .. } => exit_code::INPUT,
            TreeError::DomainLengthMismatch { .. } => exit_code::INPUT,
            TreeError::Internal(_) => exit_code::INTERNAL,
        };
        Failure::new(code, e.to_string())
    }

    pub fn with_context(mut self, name: &str) -> Self {
        self.message = format!("generator {name:?}: {}", self.message);
        self
    }

    /// Replace "generator N" indices with the file's generator names.
    pub fn rename_generators(mut self, names: &[String]) -> Self {
        for (index, name) in names.iter().enumerate() {
            let needle = format!("generator {}", index + 1);
            if self.message.contains(&needle) {
                self.message =
                    self.message.replace(&needle, &format!("generator {name:?}"));
            }
        }
        self
    }
}

#[derive(Parser)]
#[command(
    name = "schottky",
    version,
    about = "Exact-arithmetic freeness and discreteness certificates for isometries of \
             Bruhat-Tits trees, with a brute-force word oracle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a 2x2 rational matrix acting on the tree at a prime
    Classify {
        /// Matrix as JSON, e.g. '[["1","2"],["0","1"]]'
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        prime: u64,
        /// Also write the JSON report to this path
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run the freeness/discreteness criterion on a generator file
    Verify {
        #[arg(long)]
        file: PathBuf,
        /// Cross-check the verdict against the brute-force word oracle
        #[arg(long)]
        oracle: bool,
        /// Word length for the freeness scan (displacements cap at 8)
        #[arg(long, default_value_t = 10)]
        max_len: usize,
        /// Seed for the deterministic ping-pong sampling
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample count for the ping-pong hypothesis check
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Brute-force word scan of a generator file
    Oracle {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Check an abstract configuration file (axes, relations, footprints)
    Config {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Ball-condition check for pairwise opposite isometry descriptors
    Opposite {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Generate the projective plane of a prime order
    Plane {
        #[arg(long)]
        order: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Built-in worked demonstrations
    Demo {
        #[command(subcommand)]
        which: DemoCommand,
    },
}

#[derive(Subcommand)]
enum DemoCommand {
    /// The free-but-not-discrete unipotent pair over Q_2
    Sanov {
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Opposite chambers in the order-3 plane and the ball condition
    A2 {
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<i32, Failure> {
    match cli.command {
        Command::Classify { matrix, prime, json } => {
            commands::cmd_classify(&matrix, prime, json.as_deref())
        }
        Command::Verify { file, oracle, max_len, seed, samples, json } => commands::cmd_verify(
            &file,
            &commands::VerifyOptions { oracle, max_len, seed, samples },
            json.as_deref(),
        ),
        Command::Oracle { file, max_len, json } => {
            commands::cmd_oracle(&file, max_len, json.as_deref())
        }
        Command::Config { file, json } => commands::cmd_config(&file, json.as_deref()),
        Command::Opposite { file, json } => commands::cmd_opposite(&file, json.as_deref()),
        Command::Plane { order, json } => commands::cmd_plane(order, json.as_deref()),
        Command::Demo { which } => match which {
            DemoCommand::Sanov { json } => demo::cmd_demo_sanov(json.as_deref()),
            DemoCommand::A2 { json } => demo::cmd_demo_a2(json.as_deref()),
        },
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            std::process::exit(failure.code);
        }
    }
}
