//! `hnp`: decide parametric polynomial systems, produce and check
//! certificates, and run the specialization experiments.
//!
//! Reports go to stdout (JSON or CSV), diagnostics to stderr. Exit status
//! is 0 when a command ran to completion, 2 when a resource budget was
//! exhausted, 1 for usage and input errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hnp_core::DEFAULT_SEED;

#[derive(Parser, Debug)]
#[command(name = "hnp", version, about = "Parametric Hilbert Nullstellensatz toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

/// Resource caps shared by every command; exceeding one exits with 2.
#[derive(Args, Debug)]
pub struct BudgetArgs {
    #[arg(long, global = true)]
    pub max_basis: Option<usize>,
    #[arg(long, global = true)]
    pub max_terms: Option<usize>,
    #[arg(long, global = true)]
    pub max_reductions: Option<u64>,
    #[arg(long, global = true)]
    pub max_unknowns: Option<usize>,
}

impl BudgetArgs {
    pub fn budget(&self) -> hnp_core::Budget {
        let d = hnp_core::Budget::default();
        hnp_core::Budget {
            max_basis: self.max_basis.unwrap_or(d.max_basis),
            max_terms: self.max_terms.unwrap_or(d.max_terms),
            max_reductions: self.max_reductions.unwrap_or(d.max_reductions),
            max_unknowns: self.max_unknowns.unwrap_or(d.max_unknowns),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Rewrite a system into quadratic form with unit coefficients.
    Normalize {
        file: PathBuf,
        /// Emit {"system", "map"} as one JSON object.
        #[arg(long)]
        json: bool,
    },
    /// Parameter-free decisions.
    #[command(subcommand)]
    Hn(HnCmd),
    /// Parametric decisions.
    #[command(subcommand)]
    Hnp(HnpCmd),
    /// Nullstellensatz certificates.
    #[command(subcommand)]
    Cert(CertCmd),
    /// Resultants, discriminants, primitive elements, witnesses.
    #[command(subcommand)]
    Alg(AlgCmd),
    /// Specialization and identity-lemma experiments (CSV).
    #[command(subcommand)]
    Experiment(ExperimentCmd),
    /// Cross-check every decision procedure on a labelled corpus (CSV).
    Suite {
        #[arg(long, default_value = "corpus")]
        corpus: PathBuf,
        #[arg(long = "D", default_value_t = 1_000_000)]
        d: u64,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum HnCmd {
    /// Common zero over the algebraic closure of Q or of F_p.
    Decide {
        file: PathBuf,
        /// `q` or `fp:<p>`.
        #[arg(long, default_value = "q")]
        field: String,
    },
    /// Heuristic decision by counting primes with an F_p-point.
    DecideModp {
        file: PathBuf,
        /// Inclusive range `lo..hi`.
        #[arg(long, default_value = "2..500")]
        primes: String,
        /// Number of distinct primes to sample; all when omitted.
        #[arg(long)]
        samples: Option<usize>,
        /// Density threshold `p/q`.
        #[arg(long, default_value = "1/5")]
        tau: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Per-prime table of F_p-satisfiability.
    PrimeDensity {
        file: PathBuf,
        #[arg(long)]
        primes: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum HnpCmd {
    /// Exact decision via the elimination ideal.
    DecideElim { file: PathBuf },
    /// Randomized decision by specialization.
    Decide {
        file: PathBuf,
        #[command(flatten)]
        cfg: ReductionArgs,
    },
}

#[derive(Args, Debug)]
pub struct ReductionArgs {
    /// Sample parameters from {1..D}.
    #[arg(long = "D", conflicts_with = "bound_c")]
    pub d: Option<String>,
    /// Use D = 3 * 2^ceil((s log2 s)^c).
    #[arg(long = "paper-c")]
    pub bound_c: Option<u32>,
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    #[arg(long, default_value = "groebner", value_parser = ["groebner", "modp"])]
    pub oracle: String,
    /// Repetitions of the mod-p oracle per trial.
    #[arg(long, default_value_t = 4)]
    pub amplification: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum CertCmd {
    Find { file: PathBuf },
    Verify { file: PathBuf, cert: PathBuf },
}

#[derive(Args, Debug)]
pub struct VarArgs {
    /// Main variable.
    #[arg(long, default_value = "y")]
    pub var: String,
    /// Comma-separated parameter names allowed in coefficients.
    #[arg(long, default_value = "")]
    pub params: String,
}

#[derive(Subcommand, Debug)]
pub enum AlgCmd {
    Resultant {
        p: String,
        q: String,
        #[command(flatten)]
        vars: VarArgs,
    },
    Disc {
        p: String,
        #[command(flatten)]
        vars: VarArgs,
    },
    /// Polynomial whose roots are `a + c*b` for roots a of p, b of q.
    MinpolySum {
        p: String,
        q: String,
        #[arg(long, default_value_t = 1)]
        c: i64,
        #[arg(long, default_value = "y")]
        var: String,
    },
    PrimElem {
        p: String,
        q: String,
        #[arg(long, default_value = "y")]
        var: String,
    },
    WitnessCheck {
        file: PathBuf,
        witness: PathBuf,
        /// Comma-separated parameter values to specialize at.
        #[arg(long)]
        alpha: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ExperimentCmd {
    Equisat {
        file: PathBuf,
        #[arg(long = "D", default_value_t = 50)]
        d: u64,
        /// Sample this many points instead of enumerating {1..D}^m.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long = "paper-c")]
        bound_c: Option<u32>,
    },
    IdentityLemma {
        poly: String,
        /// Comma-separated variable names.
        #[arg(long)]
        vars: String,
        #[arg(long)]
        lo: i64,
        #[arg(long)]
        hi: i64,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<hnp_core::Error>() {
        Some(hnp_core::Error::BudgetExceeded(_)) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.cmd, &cli.budget.budget()) {
        Ok(out) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
