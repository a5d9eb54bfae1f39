mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use spike_lab::repr::DEFAULT_NODE_BUDGET;
use spike_lab::Diagonal;

use report::{Envelope, Failure};

#[derive(Parser, Debug)]
#[command(name = "spike-lab", version, about = "Exact experiments on spikes over prime fields")]
struct Cli {
    /// Search node budget (accepts forms like 1e8).
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET, value_parser = parse_budget)]
    node_budget: u64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct DiagArg {
    /// Diagonal as `p=<prime>;x=<v1>,...,<vn>` with residues in [1, p).
    #[arg(long, value_parser = parse_diag)]
    diag: Diagonal,
}

#[derive(Args, Debug)]
struct FieldSize {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    n: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the spike axioms on the special standard representation.
    Axioms(DiagArg),
    /// Circuit-hyperplane index sets of a diagonal.
    Signature(DiagArg),
    /// A weakly equivalent diagonal with first inverse entry -1.
    Normalize(DiagArg),
    /// Least diagonal in the weak-equivalence class, with the class size.
    Canonical(DiagArg),
    /// One canonical diagonal per weak-equivalence class.
    Enumerate(FieldSize),
    /// Every nonzero target is a subset sum of any n >= p-1 nonzero residues.
    Lemma21(FieldSize),
    /// Any n >= p residues have a nonempty zero-sum subset.
    Lemma22(FieldSize),
    /// Closed-form spike determinant against Gaussian elimination on random diagonals.
    Detcheck {
        #[command(flatten)]
        size: FieldSize,
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
    /// Injectivity of the signature map over all diagonals.
    Unique(FieldSize),
    /// Search GF(q) for a diagonal with the same labelled signature.
    Transfer {
        #[command(flatten)]
        diag: DiagArg,
        #[arg(long)]
        q: u64,
    },
    /// Representability verdict over each listed prime.
    Charset {
        #[command(flatten)]
        diag: DiagArg,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7,11,13")]
        primes: Vec<u64>,
    },
    /// Build one of the two extremal constructions.
    Construct {
        #[arg(value_enum)]
        which: Construction,
        #[arg(long)]
        p: u64,
    },
    /// Least n with a spike over GF(p) representable in characteristic p only.
    Lbound {
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7,11,13")]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 7)]
        n_max: usize,
    },
}

#[derive(clap::ValueEnum, Clone, Copy, Debug)]
enum Construction {
    Prop41,
    Prop43,
}

fn parse_diag(s: &str) -> Result<Diagonal, String> {
    s.parse().map_err(|e: spike_lab::Error| e.to_string())
}

fn parse_budget(s: &str) -> Result<u64, String> {
    let v = match s.parse::<u64>() {
        Ok(v) => v,
        Err(_) => {
            let f: f64 = s.parse().map_err(|_| format!("not a number: {s}"))?;
            if !(f.is_finite() && f >= 0.0 && f.fract() == 0.0 && f <= u64::MAX as f64) {
                return Err(format!("not a whole number: {s}"));
            }
            f as u64
        }
    };
    if v == 0 {
        return Err("budget must be at least 1".into());
    }
    Ok(v)
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("SPIKE_LAB_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| format!("SPIKE_LAB_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let env = Envelope::new(cli.node_budget, cli.seed);
    let run = commands::dispatch(&cli.command, &env);
    let (doc, code) = match run {
        Ok(done) => done.finish(&env),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(f) => f.into_report(&env),
    };
    if let Err(e) = report::write(&doc, cli.output.as_deref()) {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
