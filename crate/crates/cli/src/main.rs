//! `smithlat`: command-line front end. Every subcommand produces a report of
//! inputs, computed values and checked targets; the exit status is zero
//! exactly when every target passes.

mod commands;
mod suite;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use smithlat::fixedlocus::Mode;
use smithlat::report::Report;

#[derive(Parser, Debug)]
#[command(name = "smithlat", version, about = "Exact lattice and fixed-locus computations for K3^[2]-type manifolds")]
struct Cli {
    /// Human-readable text instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Write the output to a file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Smith normal form of an integer matrix read from JSON.
    Snf {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Include the transforms in the output.
        #[arg(long)]
        transforms: bool,
    },
    /// Invariants of a named lattice or a Gram matrix read from JSON.
    Lattice(LatticeArgs),
    /// Jordan type of an F_p[Z/p]-module with its symmetric and tensor squares.
    Jordan(JordanArgs),
    /// Cohomology of Z/p with coefficients in Jordan blocks.
    Cohomology {
        #[arg(long)]
        p: u64,
        /// Block length; all lengths 1..=p when omitted.
        #[arg(long)]
        q: Option<usize>,
        #[arg(long, default_value_t = 4)]
        degrees: usize,
    },
    /// The integral model of H^2 and H^4 of the Hilbert square of a K3 surface.
    Hilb2 {
        #[command(subcommand)]
        action: Hilb2Action,
    },
    /// Fixed-locus counts from the parameters (a, m).
    Fixedlocus {
        #[command(subcommand)]
        action: FixedlocusAction,
    },
    /// Total mod-p Betti number of the fixed locus on a K3 surface.
    K3(K3Args),
    /// The order-11 example.
    Order11 {
        #[command(subcommand)]
        action: Order11Action,
    },
    /// Runs every regression target.
    VerifyAll,
}

#[derive(Args, Debug)]
struct LatticeArgs {
    /// One of the registered names (U, E8(-1), K3, BB, NS-order11, A-order11, B-order11).
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    name: Option<String>,
    /// Gram matrix as JSON.
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    /// Test for p-elementary discriminant group.
    #[arg(long)]
    p: Option<u64>,
    /// List vectors of this norm (positive definite lattices only).
    #[arg(long)]
    short: Option<i64>,
    /// Orthogonal complement of this vector, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    complement: Option<String>,
}

#[derive(Args, Debug)]
struct JordanArgs {
    #[arg(long)]
    p: u64,
    /// Block counts as `length:count` pairs, e.g. `1:3,4:2`.
    #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
    counts: Option<String>,
    /// Matrix of the generator as JSON, reduced mod p.
    #[arg(long, value_name = "FILE")]
    matrix: Option<PathBuf>,
    /// Second factor for a tensor product, as block counts.
    #[arg(long)]
    tensor: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Hilb2Action {
    /// Checks the Smith form of H^4 / Sym^2 H^2 and the multiplication forms.
    Verify,
    /// Emits every product f_a ∪ f_b in the H^4 basis.
    DumpCupTable,
}

#[derive(Subcommand, Debug)]
enum FixedlocusAction {
    Eval {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        m: u64,
        /// Treat the formula as an upper bound (required for p = 2 and p = 5).
        #[arg(long)]
        upper_bound: bool,
        #[arg(long)]
        symplectic: bool,
        /// Picard number.
        #[arg(long)]
        rho: Option<u64>,
    },
    Enumerate {
        #[arg(long)]
        p: u64,
        /// Keep only pairs with this total Betti number.
        #[arg(long, allow_hyphen_values = true)]
        target: Option<i64>,
    },
    /// Same as the top-level `k3` command.
    K3(K3Args),
}

#[derive(Args, Debug)]
struct K3Args {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    a: u64,
    #[arg(long)]
    m: u64,
    /// The action has no fixed point (only meaningful for p = 2).
    #[arg(long)]
    no_fixed_point: bool,
}

#[derive(Subcommand, Debug)]
enum Order11Action {
    Verify,
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(raw) = std::env::var("SMITHLAT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .with_context(|| format!("SMITHLAT_THREADS={raw:?} is not a thread count"))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    let started = Instant::now();
    let mut report = match &cli.command {
        Command::Snf { input, transforms } => commands::snf(input, *transforms)?,
        Command::Lattice(args) => commands::lattice(
            args.name.as_deref(),
            args.input.as_deref(),
            args.p,
            args.short,
            args.complement.as_deref(),
        )?,
        Command::Jordan(args) => commands::jordan(
            args.p,
            args.counts.as_deref(),
            args.matrix.as_deref(),
            args.tensor.as_deref(),
        )?,
        Command::Cohomology { p, q, degrees } => commands::cohomology(*p, *q, *degrees)?,
        Command::Hilb2 { action: Hilb2Action::Verify } => commands::hilb2_verify(),
        Command::Hilb2 { action: Hilb2Action::DumpCupTable } => commands::hilb2_cup_table(),
        Command::Fixedlocus { action } => match action {
            FixedlocusAction::Eval { p, a, m, upper_bound, symplectic, rho } => {
                let mode = if *upper_bound { Mode::UpperBound } else { Mode::Exact };
                commands::fixedlocus_eval(*p, *a, *m, mode, *symplectic, *rho)?
            }
            FixedlocusAction::Enumerate { p, target } => commands::fixedlocus_enumerate(*p, *target)?,
            FixedlocusAction::K3(k) => commands::k3(k.p, k.a, k.m, !k.no_fixed_point)?,
        },
        Command::K3(k) => commands::k3(k.p, k.a, k.m, !k.no_fixed_point)?,
        Command::Order11 { action: Order11Action::Verify } => smithlat::order11::verify_scenario(),
        Command::VerifyAll => suite::verify_all(),
    };
    report.stamp(started);
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| run(&cli));
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let text = if cli.pretty { report.to_text() } else { report.to_json() };
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, format!("{text}\n")) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => println!("{text}"),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
