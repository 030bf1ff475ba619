//! `liecograph`: command-line front end.
//!
//! Every verb prints tab-separated text on stdout. Exit status is 0 on
//! success, 1 on bad input and 2 when the truncation is too small for the
//! request; errors go to stderr as `error[<kind>]: <message>`.

mod commands;
mod expr;

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "liecograph", version, about = "Graph coalgebra models of Lie coalgebras and rational homotopy")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Declare a generator, e.g. `--gen a:2`. Repeatable.
    #[arg(long = "gen", value_name = "NAME:DEG", global = true)]
    pub gens: Vec<String>,
    /// Read generators from the `gen` lines of a presentation file.
    #[arg(long, value_name = "FILE", global = true)]
    pub table: Option<PathBuf>,
    #[arg(long, value_name = "N", global = true)]
    pub cap_weight: Option<usize>,
    #[arg(long, value_name = "D", global = true)]
    pub cap_degree: Option<i32>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Configuration pairing of a graph-side and a tree-side expression.
    Pair { graph: String, tree: String },
    /// Cobracket of a graph-side expression, one tensor term per line.
    Cobracket { expr: String },
    /// Coordinates of a graph-side expression in the bar basis.
    Normalize { expr: String },
    /// Whether a graph-side expression vanishes in the Lie coalgebra.
    Iszero { expr: String },
    /// Left-comb normal form of a tree-side expression in the free Lie algebra.
    LieNormalize { expr: String },
    /// Homology of the Harrison complex of a presented algebra.
    Harrison {
        file: PathBuf,
        #[arg(long, value_parser = parse_window)]
        window: Option<RangeInclusive<i32>>,
        /// Cross-check against the graph model.
        #[arg(long)]
        oracle: bool,
    },
    /// Dimensions of rational homotopy of a presented algebra.
    Pi {
        file: PathBuf,
        #[arg(long, value_parser = parse_window)]
        window: Option<RangeInclusive<i32>>,
        /// Cross-check against the Harrison complex.
        #[arg(long)]
        oracle: bool,
    },
    /// Pages of the weight spectral sequence converging to rational homotopy.
    Ss {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        pages: usize,
    },
    /// Checks that the graph model of an algebra is dual to the Lie model of a coalgebra.
    DualCheck { algebra: PathBuf, coalgebra: PathBuf },
    /// Lists basis objects.
    Enumerate {
        what: Enumerable,
        /// A weight for graphs and trees, a comma-separated label multiset otherwise.
        arg: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Enumerable {
    Graphs,
    Trees,
    Bar,
    Lie,
}

fn parse_window(s: &str) -> Result<RangeInclusive<i32>, String> {
    let (a, b) = s.split_once("..").ok_or("expected `a..b`")?;
    let a: i32 = a.trim().parse().map_err(|_| format!("bad window start `{a}`"))?;
    let b: i32 = b.trim().parse().map_err(|_| format!("bad window end `{b}`"))?;
    if a > b {
        return Err(format!("empty window {a}..{b}"));
    }
    Ok(a..=b)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.kind());
            ExitCode::from(e.exit_code())
        }
    }
}
