mod commands;
mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact computations with cluster patterns: mutation, c/g/d/f-vectors,
/// F-polynomials, compatibility degrees and exchange graphs.
#[derive(Parser, Debug)]
#[command(name = "cluster-lab", version, about, max_term_width = 100)]
pub struct Cli {
    /// Worker threads for parallel work (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyFormat {
    Json,
    Junit,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Mutate a seed directly and print its cluster variables and coefficients.
    Mutate(MutateArgs),
    /// Print C, G, D, F, H matrices and F-polynomials at a vertex.
    Vectors(VectorsArgs),
    /// Compatibility degree of two cluster variables, with optional checks.
    Compat(CompatArgs),
    /// Classical compatibility degree of two almost positive roots.
    Classical(ClassicalArgs),
    /// Explore the exchange graph.
    Explore(ExploreArgs),
    /// Closed-form rank-2 F-matrices and exchangeability.
    Rank2(Rank2Args),
    /// Run property suites.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct MutateArgs {
    /// Exchange matrix: a file, a JSON array of rows, or text like "0 1; -1 0".
    #[arg(long)]
    pub matrix: String,
    /// 1-based mutation directions, applied left to right.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub word: String,
    /// principal, trivial, or a matrix whose column j holds the exponents of y_j.
    #[arg(long, default_value = "principal", allow_hyphen_values = true)]
    pub coefficients: String,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VectorsArgs {
    #[arg(long)]
    pub matrix: String,
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub word: String,
    /// Comma-separated subset of c,g,d,f,F,H,fpolys.
    #[arg(long, default_value = "c,g,d,f,H,fpolys")]
    pub show: String,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct CompatArgs {
    #[arg(long)]
    pub matrix: String,
    /// First variable as word:index, e.g. "2,1:1" or ":3".
    #[arg(long)]
    pub a: String,
    /// Second variable.
    #[arg(long)]
    pub b: String,
    /// Also report the d-compatibility degree.
    #[arg(long)]
    pub d: bool,
    /// Check duality against -B^T.
    #[arg(long)]
    pub dual: bool,
    /// Check the symmetrizer ratio.
    #[arg(long)]
    pub sym: bool,
    /// Check agreement with the principal submatrix on these 1-based indices.
    #[arg(long)]
    pub embed: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ClassicalArgs {
    /// Cartan matrix, in the same formats as --matrix.
    #[arg(long)]
    pub cartan: String,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: String,
    /// Compare with the f-vector degree of the matching cluster variables.
    #[arg(long)]
    pub check: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ExploreArgs {
    #[arg(long)]
    pub matrix: String,
    #[arg(long, default_value_t = 100_000)]
    pub max_seeds: usize,
    #[arg(long, default_value_t = 64)]
    pub max_depth: usize,
    /// Include the cluster complex (requires a complete exploration).
    #[arg(long)]
    pub complex: bool,
    /// Write the exchange graph in DOT format to this file.
    #[arg(long)]
    pub graphviz: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct Rank2Args {
    #[arg(long)]
    pub b: i64,
    #[arg(long)]
    pub c: i64,
    /// Vertex index t_n; negative values walk the other way.
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<i64>,
    /// Compare the closed form with the recursion.
    #[arg(long)]
    pub check_recursion: bool,
    /// Two variables (word:index) to test for exchangeability.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    pub pair: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite name, or "all".
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Run on this corpus instead of the suite defaults.
    #[arg(long)]
    pub corpus: Option<String>,
    /// List suites and corpora.
    #[arg(long)]
    pub list: bool,
    #[arg(long, value_enum, default_value_t = VerifyFormat::Table)]
    pub format: VerifyFormat,
}

/// What a command produced: text to print and whether checks held.
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            if !out.text.ends_with('\n') {
                let _ = stdout.write_all(b"\n");
            }
            if out.ok {
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
