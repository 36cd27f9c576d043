//! `lcplab`: audits, LCP detection and verification, constructions, the
//! classification tables and lattice verdicts from definition documents.

mod commands;
mod inputs;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "lcplab", version, about, long_about = None)]
#[command(after_help = "Exit status: 0 when every check passes, 1 when a check fails (the report is still \
written), 2 on unreadable or malformed input.\n\nRelative --input paths that do not exist are looked up \
in the fixture directory, which LCPLAB_FIXTURES overrides.")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Args, Clone, Debug)]
pub struct Inputs {
    /// Definition document, or a directory of them. Repeatable.
    #[arg(long = "input", short = 'i', value_name = "PATH", required = true)]
    pub paths: Vec<String>,
}

#[derive(Args, Clone, Debug)]
pub struct ScanArgs {
    /// Relative integrality tolerance for characteristic polynomial coefficients.
    #[arg(long, value_name = "FLOAT", default_value_t = 1e-9)]
    pub tol: f64,
    /// Scanned interval of the group parameter, exclusive at A.
    #[arg(long = "t-range", value_name = "A:B", value_parser = parse_range, default_value = "0:20")]
    pub t_range: (f64, f64),
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(':').ok_or("expected A:B")?;
    let a: f64 = a.trim().parse().map_err(|_| format!("bad number `{a}`"))?;
    let b: f64 = b.trim().parse().map_err(|_| format!("bad number `{b}`"))?;
    if !(a >= 0.0 && b > a) {
        return Err(format!("need 0 <= A < B, got {a}:{b}"));
    }
    Ok((a, b))
}

#[derive(Subcommand)]
enum Command {
    /// Algebraic audit: Jacobi, solvability, nilpotency, unimodularity, series.
    Check(Inputs),
    /// Maximal flat parallel subspace and LCP class of (algebra, metric, theta).
    Detect(Inputs),
    /// Checks the LCP conditions on the given flat subspace, then the structural audit.
    Verify(Inputs),
    /// Builds an LCP structure and prints it as a definition document.
    Construct {
        #[arg(value_enum)]
        kind: ConstructKind,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Reproduces the classification tables with flat dimensions and lattice verdicts.
    Tables {
        #[command(flatten)]
        scan: ScanArgs,
        /// Also run this many random rational parameter samples per family.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        /// Seed for the random samples.
        #[arg(long, value_name = "N", default_value_t = 0)]
        seed: u64,
    },
    /// Lattice existence in the simply connected group.
    #[command(subcommand)]
    Lattice(LatticeCommand),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    /// h ⋉ R^q from a non-unimodular h (document algebra, metric, beta, beta_gram).
    Semidirect,
    /// Almost abelian from A and skew B.
    Almab,
    /// Non almost abelian from A, skew B1, B2 and v.
    Flag,
    /// Product of an adapted structure with the algebra in [k].
    Direct,
    /// Amalgamated product of two adapted structures (two inputs).
    Amalgam,
    /// Metric modification of an adapted structure by lambda.
    Modify,
}

#[derive(Subcommand)]
enum LatticeCommand {
    /// Scans for integral exp(t ad_b), certifies candidates and runs the no-lattice rules.
    Search {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        scan: ScanArgs,
        /// Number of witnesses to certify before stopping.
        #[arg(long, default_value_t = 3)]
        max_witnesses: usize,
    },
    /// Certifies one group parameter t0, or the closed-form e(1,1) lattice for m.
    Certify {
        #[arg(long = "input", short = 'i', value_name = "PATH", required_unless_present = "m", conflicts_with = "m")]
        input: Option<String>,
        /// Group parameter to certify.
        #[arg(long, value_name = "FLOAT", requires = "input")]
        t0: Option<f64>,
        /// Closed-form witness t_m, E_m for e(1,1).
        #[arg(long, value_name = "M", allow_negative_numbers = true)]
        m: Option<i64>,
        #[arg(long, value_name = "FLOAT", default_value_t = 1e-9)]
        tol: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check(i) => commands::check(&i),
        Command::Detect(i) => commands::detect(&i),
        Command::Verify(i) => commands::verify(&i),
        Command::Construct { kind, inputs } => commands::construct(kind, &inputs),
        Command::Tables { scan, samples, seed } => commands::tables(&scan, samples, seed),
        Command::Lattice(LatticeCommand::Search { inputs, scan, max_witnesses }) => {
            commands::lattice_search(&inputs, &scan, max_witnesses)
        }
        Command::Lattice(LatticeCommand::Certify { input, t0, m, tol }) => {
            commands::lattice_certify(input.as_deref(), t0, m, tol)
        }
    };
    match result {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Machine => print!("{}", out.machine),
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
