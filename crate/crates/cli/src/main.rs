//! `orthomat`: batch front end for checking and converting orthogonal
//! matroids over tracts.
//!
//! Exit codes: 0 pass, 1 verification failure (witness on stdout), 2 input
//! or usage error.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use orthomat::realization::Component;
use orthomat::Strength;

#[derive(Parser, Debug)]
#[command(name = "orthomat", version, about = "Orthogonal matroids over tracts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
    #[arg(long, global = true, value_enum, default_value_t = StrengthArg::Strong)]
    pub strength: StrengthArg,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for batch commands; 0 uses every core.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check an object against its axioms.
    Verify {
        #[arg(value_enum)]
        kind: ObjectArg,
        /// Input file; stdin when omitted or `-`.
        input: Option<PathBuf>,
    },
    /// Translate between Wick functions, restricted GP functions and signatures.
    Convert {
        #[arg(long, value_enum)]
        from: PresentationArg,
        #[arg(long, value_enum)]
        to: PresentationArg,
        input: Option<PathBuf>,
    },
    /// Derive objects from a skew-symmetric matrix.
    Realize {
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = EmitArg::Wick)]
        emit: EmitArg,
        #[arg(long, value_enum, default_value_t = ComponentArg::Plus)]
        component: ComponentArg,
        /// Also check the Cayley identities and the linear relations.
        #[arg(long)]
        check: bool,
    },
    /// List the circuits of an orthogonal matroid.
    Circuits {
        input: Option<PathBuf>,
        /// Circuits of the associated even antisymmetric matroid instead.
        #[arg(long)]
        antisymmetric: bool,
    },
    /// Run every composite identity starting from one presentation.
    Roundtrip {
        #[arg(value_enum)]
        kind: PresentationArg,
        input: Option<PathBuf>,
    },
    /// Check all applicable GP relations on transversals and almost-transversals.
    EnvelopeCheck { input: Option<PathBuf> },
    /// Brute-force generators.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Experimental: random search for sign-valued functions that pass the
    /// weak Wick check but fail the strong one. Reports findings only.
    Search {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum OracleCommand {
    /// All orthogonal matroids on n <= 4 elements.
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    /// A seeded random rational skew-symmetric matrix.
    RandomMatrix {
        #[arg(long)]
        n: usize,
        /// Probability that an entry is zero.
        #[arg(long, default_value_t = 0.0)]
        density: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrengthArg {
    Strong,
    Weak,
}

impl From<StrengthArg> for Strength {
    fn from(s: StrengthArg) -> Self {
        match s {
            StrengthArg::Strong => Strength::Strong,
            StrengthArg::Weak => Strength::Weak,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ObjectArg {
    Matroid,
    Wick,
    Rgp,
    Signature,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PresentationArg {
    Wick,
    Rgp,
    Signature,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EmitArg {
    Wick,
    Rgp,
    Signature,
    Matroid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ComponentArg {
    Plus,
    Minus,
}

impl From<ComponentArg> for Component {
    fn from(c: ComponentArg) -> Self {
        match c {
            ComponentArg::Plus => Component::Plus,
            ComponentArg::Minus => Component::Minus,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let global = cli.global.clone();
    match commands::run(cli) {
        Ok(report) => {
            report.print(global.output);
            ExitCode::from(report.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
