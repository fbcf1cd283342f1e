use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Pattern-constrained colourings of uniform hypergraphs.
///
/// Pattern sets are JSON arrays of partitions such as "[[3,1],[2,2]]", a
/// family name (all, classical-graph, classical-hypergraph, not-rainbow,
/// nmnr, conflict-free, ex-chain, alpha-beta:A,B, stably-bounded:S,T,A,B),
/// or @path to read either from a file. Results are JSON on stdout. Exit
/// status is 0 when computed, 2 on invalid input and 3 when a budget ran out.
#[derive(Debug, Parser)]
#[command(name = "qcolour", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// JSON config file with time_budget_secs, node_budget, max_edges, threads, catalog
    #[arg(long, global = true, env = "QCOL_CONFIG")]
    pub config: Option<PathBuf>,
    /// Wall-clock seconds allowed per decision [default: 600]
    #[arg(long, global = true, env = "QCOL_TIME_BUDGET")]
    pub time_budget: Option<f64>,
    /// Search nodes allowed per decision
    #[arg(long, global = true, env = "QCOL_NODE_BUDGET")]
    pub node_budget: Option<u64>,
    /// Largest explicit edge set to materialize [default: 10000000]
    #[arg(long, global = true, env = "QCOL_MAX_EDGES")]
    pub max_edges: Option<u64>,
    /// Worker threads for grid searches (0 = one per core)
    #[arg(long, global = true, env = "QCOL_THREADS")]
    pub threads: Option<usize>,
    /// Append-only NDJSON catalog of results
    #[arg(long, global = true, env = "QCOL_CATALOG")]
    pub catalog: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// All partitions of r, or the pattern set of a named family
    Partitions {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        family: Option<String>,
    },
    /// Reduction or expansion closure of a pattern set
    Closure(ClosureArgs),
    /// Robustness flags of a pattern set
    Classify {
        #[arg(long = "Q")]
        q: String,
        /// Needed only for family names
        #[arg(long)]
        r: Option<u32>,
    },
    /// Construct a hypergraph
    #[command(subcommand)]
    Build(BuildCommand),
    /// Q-spectrum, or a single colour count with a witness
    Spectrum(SpectrumArgs),
    /// Clique number
    Clique(CliqueArgs),
    /// Tight Q-colourability of a Sigma-hypergraph
    Tight(TightArgs),
    /// Search a grid of Sigma-hypergraphs for spectrum gaps
    Gaps(GapsArgs),
    /// Colourability of a Ramsey bundle hypergraph with at most k colours
    Ramsey(RamseyArgs),
    /// Run a verification suite
    Verify(VerifyArgs),
    /// Inspect the result catalog
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Debug, Args)]
pub struct ClosureArgs {
    /// Reduction closure of this set
    #[arg(long, conflicts_with = "ex", required_unless_present = "ex")]
    pub rd: Option<String>,
    /// Expansion closure of this set
    #[arg(long)]
    pub ex: Option<String>,
    #[arg(long)]
    pub r: Option<u32>,
    /// Only the partitions one step away, without the seeds
    #[arg(long)]
    pub once: bool,
}

#[derive(Debug, Subcommand)]
pub enum BuildCommand {
    /// Complete r-uniform hypergraph on n vertices
    Complete {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sigma-hypergraph H(n,r,q|Sigma); a summary unless --explicit
    Sigma {
        #[command(flatten)]
        sigma: SigmaArgs,
        #[arg(long)]
        explicit: bool,
        /// Report the edge type of this vertex set instead
        #[arg(long)]
        edge: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Grid of rows x cols cells with cell_size vertices each
    Grid {
        #[arg(long)]
        rows: u32,
        #[arg(long)]
        cols: u32,
        #[arg(long)]
        cell_size: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        row_patterns: String,
        #[arg(long)]
        col_patterns: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ramsey bundle: vertices are r-subsets of n, edges are p-subsets
    Ramsey {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args, Clone)]
pub struct SigmaArgs {
    /// Parameters such as "n=3,r=4,q=3"
    #[arg(long)]
    pub sigma: String,
    /// Edge types
    #[arg(long = "Sigma")]
    pub sigma_set: String,
}

#[derive(Debug, Args)]
pub struct Target {
    /// Explicit hypergraph as JSON or @file
    #[arg(long, conflicts_with_all = ["sigma", "sigma_set"])]
    pub hypergraph: Option<String>,
    /// Sigma-hypergraph parameters such as "n=3,r=4,q=3"
    #[arg(long, requires = "sigma_set")]
    pub sigma: Option<String>,
    /// Edge types of the Sigma-hypergraph
    #[arg(long = "Sigma")]
    pub sigma_set: Option<String>,
    /// Materialize a Sigma-hypergraph and use the explicit engine
    #[arg(long)]
    pub explicit: bool,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub target: Target,
    #[arg(long = "Q")]
    pub q: String,
    /// Largest colour count to probe [default: vertex count]
    #[arg(long, conflicts_with = "k")]
    pub k_max: Option<u32>,
    /// Decide this colour count only and print a witness
    #[arg(long)]
    pub k: Option<u32>,
}

#[derive(Debug, Args)]
pub struct CliqueArgs {
    #[command(flatten)]
    pub target: Target,
    /// Ignore the class count and class size caps (needs only --Sigma)
    #[arg(long, requires = "k_limit")]
    pub uncapped: bool,
    #[arg(long)]
    pub k_limit: Option<u32>,
    /// Largest explicit hypergraph for the brute-force search
    #[arg(long, default_value_t = qcolour_core::clique::DEFAULT_CLIQUE_CAP)]
    pub vertex_cap: u32,
}

#[derive(Debug, Args)]
pub struct TightArgs {
    #[command(flatten)]
    pub sigma: SigmaArgs,
    #[arg(long = "Q")]
    pub q: String,
}

#[derive(Debug, Args)]
pub struct GapsArgs {
    #[arg(long = "Q")]
    pub q: String,
    /// Needed only for family names
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long, default_value_t = 3)]
    pub n_max: u32,
    #[arg(long, default_value_t = 3)]
    pub q_max: u32,
    /// Edge-type sets to try (repeatable) [default: every non-empty subset]
    #[arg(long = "Sigma")]
    pub sigma_sets: Vec<String>,
}

#[derive(Debug, Args)]
pub struct RamseyArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub k: u32,
    /// Allowed patterns [default: classical-hypergraph]
    #[arg(long = "Q")]
    pub q: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Suite {
    /// Gap constructions for the smallest qualifying Q of each kind
    Lemmas,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long)]
    pub r: u32,
}

#[derive(Debug, Subcommand)]
pub enum CatalogCommand {
    /// Newest entry with this digest, or null
    Query {
        #[arg(long)]
        digest: String,
    },
    /// Every readable entry
    List,
}
