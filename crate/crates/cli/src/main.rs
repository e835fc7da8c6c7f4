//! Command-line front end: parse one job, dispatch to the library, emit a
//! human-readable or JSON report. Exit codes: 0 when a verdict was computed
//! (even a negative one), 2 on input errors, 3 when a budget was exceeded.

mod commands;
mod parse;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use report::Format;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Budget(String),
}

impl From<etale::Error> for CliError {
    fn from(e: etale::Error) -> Self {
        match e {
            etale::Error::BudgetExceeded { .. } => CliError::Budget(format!("{e}")),
            other => CliError::Input(format!("{other}")),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FamilyKind {
    /// Sphere ring z_1^2 + ... + z_r^2 = 1 with the sign action.
    Chase,
    /// Deleted-quadric ring with r pairs: 1 - sum x_i y_i.
    Dq,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum RingKind {
    /// F2[theta]/(theta^(r+1)), the mod-2 cohomology of projective r-space.
    Rp,
    /// Two components of F2[theta]/(theta^r).
    BReal,
    /// Z[b]/(2b, b^r).
    Chow,
    /// M2[a, b]/(a^2 - rho a - tau b, b^r).
    Motivic,
    /// Rank table of the stabilization map between consecutive b-real rings.
    BStabilization,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeKind {
    /// Coefficients F2[rho, tau] (real type).
    Real,
    /// Coefficients F2[tau] with rho = 0 (algebraically closed type).
    AlgClosed,
}

#[derive(Parser)]
#[command(
    name = "etale",
    version,
    about = "Exact computations with finite étale algebras, their generators, \
             classifying points, and generator lower-bound certificates"
)]
pub struct Cli {
    /// Output format for the report.
    #[arg(long, global = true, value_enum, default_value = "human")]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Decide whether an algebra is étale (nondegenerate trace form).
    CheckEtale {
        #[arg(long)]
        field: String,
        /// split:N | monogenic:c0,c1,...,1 | table:@file.json
        #[arg(long)]
        algebra: String,
    },
    /// Decide whether the given elements generate the algebra.
    CheckGenerates {
        #[arg(long)]
        field: String,
        #[arg(long)]
        algebra: String,
        /// Rows separated by ';', coordinates by ','.
        #[arg(long)]
        gens: String,
    },
    /// Least number of generators, exhaustive within the budget.
    MinGenerators {
        #[arg(long)]
        field: String,
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 4)]
        r_max: usize,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Polynomials p_i with p_i(column j) = delta_ij for a separated matrix.
    SeparatingPolys {
        #[arg(long)]
        field: String,
        #[arg(long)]
        matrix: String,
    },
    /// Classifying point of an algebra with a generating tuple.
    Classify {
        #[arg(long)]
        field: String,
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        gens: String,
    },
    /// Build the quadratic algebra with form value c and read the value back
    /// from its trace kernel.
    QuadraticRoundtrip {
        #[arg(long)]
        field: String,
        #[arg(long)]
        c: String,
    },
    /// Compare algebra-side and line-side generation for a quadratic algebra.
    GenerationEquivalence {
        #[arg(long)]
        field: String,
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        gens: String,
    },
    /// Canonicalize a matrix and append zero sections up to target-r.
    Stabilize {
        #[arg(long)]
        field: String,
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        target_r: usize,
    },
    /// Verify the straight-line path between two generating tuples over F(t).
    HomotopyPath {
        #[arg(long)]
        field: String,
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        gens: String,
        #[arg(long)]
        gens2: String,
        /// Comma-separated specialization points (defaults to the whole
        /// field, or 0,1,2,-1,1/2 over Q).
        #[arg(long)]
        checkpoints: Option<String>,
    },
    /// Fiberwise generation scan over a family ring.
    FamilyScan {
        #[arg(long, value_enum)]
        family: FamilyKind,
        /// Number of sphere variables (chase) or coordinate pairs (dq).
        #[arg(long)]
        r: usize,
        #[arg(long)]
        field: String,
        /// Comma-separated variable names, e.g. x1,x2 or z1.
        #[arg(long)]
        gens: String,
        #[arg(long, default_value_t = 2)]
        degree_bound: usize,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Symbolic subalgebra certificate for the deleted-quadric ring built
    /// from r sphere variables (r even): x_1..x_(r/2) generate.
    CertificateCheck {
        #[arg(long)]
        r: usize,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Lower-bound witness pair for the sphere quadratic algebra.
    CertificateChase {
        #[arg(long)]
        r: usize,
    },
    /// Lower-bound witness pair for the deleted-quadric quadratic algebra.
    CertificateOjanguren {
        #[arg(long)]
        r: usize,
    },
    /// Presentations, dimension tables, and stabilization rank tables.
    CohomologyTable {
        #[arg(long, value_enum)]
        ring: RingKind,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum)]
        mode: Option<ModeKind>,
        #[arg(long, default_value_t = 12)]
        max_degree: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match commands::run(&cli.command) {
        Ok(mut report) => {
            report.timing_ms = start.elapsed().as_millis() as u64;
            print!("{}", report.emit(cli.format));
            ExitCode::SUCCESS
        }
        Err(CliError::Input(msg)) => {
            eprintln!("input error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Budget(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(3)
        }
    }
}
