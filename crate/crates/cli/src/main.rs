mod commands;
mod io;
mod reproduce;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::io::DegreeRange;

/// Exact computations with truncated S¹-complexes and Brieskorn data.
#[derive(Debug, Parser)]
#[command(name = "kdilation", version)]
struct Cli {
    /// Worker threads for independent subcomputations.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a complex document.
    Check(Input),
    /// Cohomology of F^k C⁺.
    Cohomology {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        level: Option<usize>,
        /// Inclusive range such as `-6..2`.
        #[arg(long, allow_hyphen_values = true)]
        degrees: Option<DegreeRange>,
    },
    /// Bases of Z_k and B_k with witnesses.
    Zb {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
    },
    /// The map Δ^k with kernel, image and cokernel dimensions.
    Delta {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
    },
    /// Every page of the spectral sequence of F^N C⁺.
    Pages {
        #[command(flatten)]
        input: Input,
        #[arg(long = "N")]
        n: Option<usize>,
    },
    /// Order of dilation of a split complex.
    Dilation(OrderArgs),
    /// Order of semi-dilation of a split complex.
    Semidilation(OrderArgs),
    /// Exactness of H(F^N C₀⁺) → H(F^N C⁺) → H(F^N C₊⁺).
    Les {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        degrees: Option<DegreeRange>,
    },
    /// Künneth product of two documents.
    Tensor {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Reeb orbit data of Brieskorn manifolds.
    #[command(subcommand)]
    Brieskorn(BrieskornCommand),
    /// The Milnor model of W_{k,m}.
    Milnor {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        /// Defaults to 2k.
        #[arg(long)]
        truncation: Option<usize>,
        #[arg(long)]
        no_spheres: bool,
        /// Add a degree-0 generator that breaks the dilation but not the semi-dilation.
        #[arg(long)]
        gap: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Recompute published tables and compare row by row.
    #[command(subcommand)]
    Reproduce(ReproduceCommand),
}

#[derive(Debug, Args)]
struct Input {
    /// Document path, or `-` for standard input.
    #[arg(default_value = "-")]
    file: PathBuf,
}

#[derive(Debug, Args)]
struct OrderArgs {
    #[command(flatten)]
    input: Input,
    /// Defaults to the truncation.
    #[arg(long)]
    max_k: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum BrieskornCommand {
    /// Principal periods with their divisor sets.
    Periods { exponents: Exponents },
    /// Minimal Conley–Zehnder indices of all families up to the bound.
    Cz(BrieskornArgs),
    /// SFT degrees of all families up to the bound.
    Adc(BrieskornArgs),
    /// Predicted order of dilation from the minimal index.
    Predict(BrieskornArgs),
}

#[derive(Debug, Clone)]
struct Exponents(Vec<u64>);

impl std::str::FromStr for Exponents {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|x| x.trim().parse::<u64>().map_err(|e| format!("`{x}`: {e}")))
            .collect::<Result<_, _>>()
            .map(Exponents)
    }
}

#[derive(Debug, Args)]
struct BrieskornArgs {
    /// Comma separated, e.g. `2,3,3,3`.
    exponents: Exponents,
    /// Largest period considered. Defaults to four times the largest principal period.
    #[arg(long)]
    bound: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum ReproduceCommand {
    /// Orders of dilation of the Milnor models for 1 ≤ k ≤ m ≤ MAX.
    TheoremA {
        #[arg(long, default_value_t = 6)]
        max: usize,
    },
    /// Minimal indices of the exponents (2, 3, …, n, n, n).
    #[command(name = "corollary-1dilation")]
    Corollary1Dilation {
        #[arg(long, default_value = "3..10")]
        n_range: DegreeRange,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(commands::Failure::Property(message)) => {
            eprintln!("{message}");
            ExitCode::from(1)
        }
        Err(commands::Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
