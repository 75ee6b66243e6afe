//! `bicayley`: groups, (bi-)Cayley graphs, isomorphism and exhaustive
//! CI/BCI verdicts from the command line.
//!
//! Exit codes: 0 success or property holds, 1 fails with witness / repro
//! mismatch / not isomorphic, 2 resource cap, 3 usage error.

mod commands;
mod graph_arg;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bicayley::equiv::Action;
use bicayley::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_CAP: u8 = 2;
pub const EXIT_USAGE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "bicayley", version, about = "Cayley and bi-Cayley graph isomorphism toolkit")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Search-node budget per isomorphism query.
    #[arg(long, global = true, default_value_t = bicayley::iso::DEFAULT_NODE_BUDGET)]
    pub budget: u64,
    /// Reserved; all computations are deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output style: readable text or one JSON record per line.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Records,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ActionArg {
    Ci,
    Bci,
}

impl From<ActionArg> for Action {
    fn from(a: ActionArg) -> Action {
        match a {
            ActionArg::Ci => Action::Ci,
            ActionArg::Bci => Action::Bci,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Describe a group: order, elements, automorphism count.
    Group(GroupArgs),
    /// Build and export graphs.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Decide isomorphism of two graphs.
    Iso(IsoArgs),
    /// Decide CI- or BCI-equivalence of two connection sets.
    Equiv(EquivArgs),
    /// Orbit representatives of k-subsets.
    Orbits(OrbitsArgs),
    /// Adjacency spectrum of a (bi-)Cayley graph.
    Spectrum(SpectrumArgs),
    /// Exhaustive verdicts and structural checks.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Run a pinned reproduction case.
    Repro(ReproArgs),
    /// Batch verdicts over a family of groups, stored as records.
    Atlas(AtlasArgs),
}

#[derive(Args, Debug)]
pub struct GroupArgs {
    #[arg(long)]
    pub group: String,
    /// Print the multiplication table.
    #[arg(long)]
    pub table: bool,
}

#[derive(Subcommand, Debug)]
pub enum GraphCommand {
    Build(GraphBuildArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphFormatArg {
    Graph6,
    Dot,
    EdgeList,
}

#[derive(Args, Debug)]
pub struct GraphBuildArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub set: String,
    /// Bi-Cayley graph BCay(G,S) (default).
    #[arg(long, conflicts_with = "cay")]
    pub bi: bool,
    /// Cayley graph Cay(G,S).
    #[arg(long)]
    pub cay: bool,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value_t = GraphFormatArg::Graph6)]
    pub format: GraphFormatArg,
}

#[derive(Args, Debug)]
pub struct IsoArgs {
    /// `bi:<group>@<set>`, `cay:<group>@<set>`, `g6:<graph6>` or a file.
    #[arg(long)]
    pub left: String,
    #[arg(long)]
    pub right: String,
    /// Write the certificate, one image per line.
    #[arg(long)]
    pub cert_out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
pub struct EquivArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub left: String,
    #[arg(long)]
    pub right: String,
    #[arg(long, value_enum)]
    pub action: ActionArg,
}

#[derive(Args, Debug)]
pub struct OrbitsArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum)]
    pub action: ActionArg,
    /// Only symmetric identity-free subsets.
    #[arg(long)]
    pub cayley_domain: bool,
    /// Write one representative literal per line.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Table,
    Csv,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub set: String,
    #[arg(long, conflicts_with = "cay")]
    pub bi: bool,
    #[arg(long)]
    pub cay: bool,
    #[arg(long, value_enum, default_value_t = TableFormat::Table)]
    pub format: TableFormat,
}

#[derive(Subcommand, Debug)]
pub enum VerifyCommand {
    /// Is BCay(G,S) a BCI-graph / Cay(G,S) a CI-graph?
    Graph(VerifyGraphArgs),
    /// Is G an (m-)CI / (m-)BCI group?
    Group(VerifyGroupArgs),
    /// BCay(G,S) and BCay(G,G∖S) agree on the BCI-graph property.
    Duality(VerifyGraphArgs),
    /// Cay-isomorphic symmetric pairs, their augmented bi-Cayley graphs,
    /// and automorphism extraction from BCI certificates.
    Crosscheck(GroupOnlyArgs),
}

#[derive(Args, Debug)]
pub struct VerifyGraphArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub set: String,
    #[arg(long, value_enum, default_value_t = ActionArg::Bci)]
    pub property: ActionArg,
}

#[derive(Args, Debug)]
pub struct VerifyGroupArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long, value_enum)]
    pub property: ActionArg,
    #[arg(long)]
    pub max_valency: Option<usize>,
}

#[derive(Args, Debug)]
pub struct GroupOnlyArgs {
    #[arg(long)]
    pub group: String,
}

#[derive(Args, Debug)]
pub struct ReproArgs {
    /// Case identifier, or `all`.
    pub case: String,
    /// Prime for the `z2p` case.
    #[arg(long, default_value_t = 3)]
    pub p: usize,
}

#[derive(Args, Debug)]
pub struct AtlasArgs {
    /// Group descriptors (repeatable).
    #[arg(long)]
    pub group: Vec<String>,
    /// All groups up to this order (at most 12), one per isomorphism class.
    #[arg(long)]
    pub max_order: Option<usize>,
    #[arg(long, value_enum)]
    pub property: ActionArg,
    #[arg(long)]
    pub max_valency: Option<usize>,
    #[arg(long, default_value = "atlas.jsonl")]
    pub out: std::path::PathBuf,
}

/// Exit code for a library error.
pub fn error_code(e: &Error) -> u8 {
    if e.is_resource_limit() {
        EXIT_CAP
    } else {
        match e {
            Error::Io(_) | Error::Invariant(_) => EXIT_FAIL,
            _ => EXIT_USAGE,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
