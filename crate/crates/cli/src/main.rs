use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

mod commands;
mod output;

/// Graph strength, principal partitions, k-cut LP certificates, tree
/// packings and minimum k-cuts with exact rational arithmetic.
#[derive(Parser, Debug)]
#[command(name = "kcut", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    output: Format,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out_file: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Args, Debug)]
pub struct Input {
    /// Graph file (`-` for stdin).
    pub graph: PathBuf,
}

#[derive(Args, Debug)]
pub struct KArg {
    #[arg(long)]
    pub k: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Strength and the finest min-strength partition.
    Strength(Input),
    /// Principal sequence of partitions.
    Psp(Input),
    /// Fractional tree packing.
    Pack {
        #[arg(long, default_value = "exact")]
        method: String,
        #[arg(long, default_value = "1/10")]
        eps: String,
        #[command(flatten)]
        input: Input,
    },
    /// Optimal primal and dual k-cut LP solutions with certificates.
    Lp {
        #[command(flatten)]
        k: KArg,
        #[command(flatten)]
        input: Input,
    },
    /// Minimum k-cut.
    Solve {
        #[command(flatten)]
        k: KArg,
        /// Use the exact dual packing (the default).
        #[arg(long, conflicts_with_all = ["eps", "solver"])]
        exact: bool,
        /// Use an MWU dual packing with this accuracy.
        #[arg(long, conflicts_with = "solver")]
        eps: Option<String>,
        /// Strategy by name (see `kcut solve --help`).
        #[arg(long)]
        solver: Option<String>,
        /// List every optimal partition.
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        input: Input,
    },
    /// All k-cuts within a factor of the optimum.
    Enumerate {
        #[command(flatten)]
        k: KArg,
        #[arg(long, default_value = "1")]
        alpha: String,
        #[command(flatten)]
        input: Input,
    },
    /// Round the optimal LP solution to a k-cut.
    Round {
        #[command(flatten)]
        k: KArg,
        #[command(flatten)]
        input: Input,
    },
    /// Smallest-shores 2-approximation from the principal sequence.
    Approx {
        #[command(flatten)]
        k: KArg,
        #[command(flatten)]
        input: Input,
    },
    /// Global minimum cut by scanning 2-respecting cuts of packed trees.
    Mincut {
        #[arg(long, default_value = "1/6")]
        eps: String,
        #[command(flatten)]
        input: Input,
    },
    /// Brute-force reference values.
    Oracle {
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        #[arg(long, default_value_t = 20000)]
        max_trees: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Run every certificate and cross-check on one graph.
    Verify {
        /// Values of k to check (default 2..=min(n, 5)).
        #[arg(long, value_delimiter = ',')]
        k: Vec<usize>,
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        #[arg(long, default_value_t = 20000)]
        max_trees: usize,
        #[command(flatten)]
        input: Input,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (value, failed) = match commands::run(&cli.command) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("kcut: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let text = output::render(&value, cli.output);
    let written = match &cli.out_file {
        Some(path) => std::fs::write(path, text).map_err(|e| e.to_string()),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("kcut: cannot write output: {e}");
        return ExitCode::from(1);
    }
    if failed {
        eprintln!("kcut: certificate check failed");
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}
