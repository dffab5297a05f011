use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "tropmod", version, about = "Stable graphs, tropical moduli and marked graphs")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Fractional digits for decimal output.
    #[arg(long, default_value_t = 50, global = true)]
    precision: u32,
    /// Upper bound on enumerated classes and oracle simplices.
    #[arg(long, default_value_t = 200_000, global = true)]
    max_cells: usize,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the stable graphs of genus g with n leaves.
    Enumerate {
        g: u32,
        n: u32,
        /// Only graphs with all vertex weights zero.
        #[arg(long)]
        pure: bool,
    },
    /// Reports on the cone complex of type (g, n).
    Report {
        #[arg(value_enum)]
        kind: ReportKind,
        g: u32,
        n: u32,
    },
    /// Operations on marked graphs read from JSON files.
    Marked {
        #[command(subcommand)]
        op: MarkedOp,
    },
    /// Tropical curve of a curve system with short lengths.
    Lambda {
        file: PathBuf,
        /// Shortness threshold ε.
        #[arg(long)]
        eps: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportKind {
    Poset,
    Link,
    Homology,
    Oracle,
}

#[derive(Subcommand, Debug)]
pub enum MarkedOp {
    /// Single-edge blow-ups, one per class.
    Star { file: PathBuf },
    /// Length-preserving automorphisms and their action on the free group.
    Stabilizer { file: PathBuf },
    /// The point of the link under the forgetful map.
    Project { file: PathBuf },
    /// Exit 0 if the two markings are equivalent, 1 if not.
    Equiv { first: PathBuf, second: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(out) => {
            // a closed pipe (e.g. `| head`) is not an error
            let _ = std::io::stdout().lock().write_all(out.text.as_bytes());
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
