use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ringlab::{FieldSpec, SearchMode};

/// Writes a line to stdout, ignoring errors so a closed pipe (`| head`) ends output quietly.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

mod commands;
mod input;

/// Exact computations with edge-ideal rings, truncated local algebras and their modules.
#[derive(Parser, Debug)]
#[command(name = "ringlab", version, about)]
struct Cli {
    #[command(flatten)]
    opts: Options,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// Coefficient field: `q` or `fp:<prime>`.
    #[arg(long, global = true)]
    pub field: Option<FieldSpec>,
    /// Truncation order N: the algebra is k[x]/(I + m^N).
    #[arg(long, global = true)]
    pub trunc: Option<u32>,
    /// Homological bound B.
    #[arg(long, global = true, default_value_t = 6)]
    pub bound: usize,
    /// Largest vertex count in corpus runs.
    #[arg(long = "max-n", global = true, default_value_t = 5)]
    pub max_n: usize,
    #[arg(long, global = true, value_enum)]
    pub output: Option<Output>,
    /// Worker threads for corpus runs.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Edge list, graph JSON or presentation JSON.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Output {
    Json,
    Table,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Mode {
    Necessary,
    Full,
}

impl From<Mode> for SearchMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Necessary => SearchMode::Necessary,
            Mode::Full => SearchMode::Full,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build and transform graphs.
    Graph {
        #[command(subcommand)]
        op: GraphOp,
    },
    /// Stanley-Reisner invariants of monomial rings.
    Ring {
        #[command(subcommand)]
        op: RingOp,
    },
    /// Truncate a presentation and study the finite-dimensional algebra.
    Artin {
        /// Named ring such as `ex45` or `kprime(P3)`; defaults to --input.
        ring: Option<String>,
        #[arg(long, value_enum, default_value_t = Mode::Full)]
        mode: Mode,
    },
    /// Betti and Bass numbers, reflexivity and semidualizing checks for a module.
    Resolve {
        ring: Option<String>,
        /// `k`, `free`, `canonical`, `cyclic:<elem>[;<elem>...]`, or a module JSON file.
        #[arg(long, default_value = "k")]
        module: String,
    },
    /// Theorem and example checks.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
}

#[derive(Subcommand, Debug)]
pub enum GraphOp {
    /// A named graph: K<n>, P<n>, C<n> or E<n>.
    Build { name: String },
    Complement { name: Option<String> },
    /// Whiskers at every vertex, or every vertex but `--except`.
    Whisker {
        name: Option<String>,
        #[arg(long)]
        except: Option<String>,
    },
    /// Maximal cliques.
    Cliques { name: Option<String> },
}

#[derive(Subcommand, Debug)]
pub enum RingOp {
    /// Dimension, depth, Cohen-Macaulayness, f-vector, Hilbert series and multiplicity.
    Invariants { ring: Option<String> },
    /// The presentation JSON of a ring.
    Show { ring: Option<String> },
}

#[derive(Subcommand, Debug)]
pub enum Suite {
    /// ΣG is Cohen-Macaulay and k[G]' splits off each star vertex, for graphs with a star vertex.
    #[command(name = "thmA")]
    ThmA,
    /// Dimension and depth of k[G̃] and k[G]'' at each star vertex.
    #[command(name = "thmB")]
    ThmB {
        /// Star vertex (label or 1-based index) when checking a single --input graph.
        #[arg(long)]
        star: Option<String>,
    },
    /// No k[G]' whose maximal ideal splits by variables is Gorenstein.
    Gorenstein,
    /// n triangles at a hub, modulo v_ij - w_ij, against the explicit presentation (n = 1..=3).
    Ex311 {
        #[arg(long)]
        n: Option<usize>,
    },
    /// Decomposability of the small two- and three-variable examples over GF(p).
    Ex4x {
        #[arg(long)]
        p: Option<u64>,
    },
    /// A totally reflexive module with infinite resolution over a fiber product.
    Ex54,
    /// Every suite above.
    All,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] ringlab::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Largest corpus the theorem checks accept: ΣG on 7 vertices has 14 variables.
const MAX_CORPUS_N: usize = 7;

fn run(cli: Cli) -> CliResult<bool> {
    let opts = cli.opts;
    if opts.max_n == 0 || opts.max_n > MAX_CORPUS_N {
        return Err(CliError::Usage(format!("--max-n must lie in 1..={MAX_CORPUS_N}")));
    }
    if let Some(t) = opts.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Usage(format!("--threads: {e}")))?;
    }
    match cli.command {
        Command::Graph { op } => commands::graph(&opts, op).map(|()| true),
        Command::Ring { op } => commands::ring(&opts, op).map(|()| true),
        Command::Artin { ring, mode } => commands::artin(&opts, ring.as_deref(), mode.into()).map(|()| true),
        Command::Resolve { ring, module } => commands::resolve(&opts, ring.as_deref(), &module).map(|()| true),
        Command::Verify { suite } => commands::verify(&opts, suite),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
