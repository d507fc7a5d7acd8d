use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "stabilitylab", version, about = "Exact computations around Hilbert-Schmidt stability of solvable groups")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Structured,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Cap file (JSON or TOML); overrides the STABILITYLAB_CAPS file.
    #[arg(long, global = true)]
    pub caps: Option<PathBuf>,
    #[arg(long, global = true)]
    pub matrix_dim_cap: Option<usize>,
    #[arg(long, global = true)]
    pub degree_cap: Option<usize>,
    #[arg(long, global = true)]
    pub enumeration_cap: Option<u64>,
    #[arg(long, global = true)]
    pub group_order_cap: Option<usize>,
    #[arg(long, global = true)]
    pub window_words_cap: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectral classification of an integer automorphism.
    Classify {
        /// Inline `a,b;c,d` or a matrix file.
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Fixed subgroup of A^n on the torus.
    Periodic {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long)]
        n: u64,
        /// List the points.
        #[arg(long)]
        enumerate: bool,
        /// Split the points into A-orbits (implies --enumerate).
        #[arg(long)]
        orbits: bool,
    },
    /// Weak-* diagnostic of periodic measures against a target.
    Weakstar {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long, default_value_t = 1)]
        n_min: u64,
        #[arg(long, default_value_t = 12)]
        n_max: u64,
        #[arg(long, default_value_t = 3)]
        freq_box: u32,
        /// `haar` or a measure file with lines `weight point`.
        #[arg(long, default_value = "haar")]
        target: String,
    },
    /// Periodization experiment for a pattern on Z^d.
    Bernoulli {
        /// Pattern file; without it a random pattern is drawn.
        #[arg(long)]
        pattern: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        alphabet: u32,
        /// Extents of the random pattern, e.g. `16` or `8x8`.
        #[arg(long, default_value = "16")]
        extent: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Periods N, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "16,32,64,128")]
        period: Vec<u64>,
        /// Window shapes, comma separated, each like `3` or `2x2`.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        window: Vec<String>,
        /// Fixed side of the counting box; defaults to each period.
        #[arg(long = "box")]
        box_side: Option<u64>,
    },
    /// Induce a trace from a subgroup.
    Induce {
        /// Preset name (C6, D4, S3, Q8, C2xS3, ...) or a group file.
        #[arg(long)]
        group: String,
        /// Generators of the subgroup, comma separated labels or indices.
        #[arg(long)]
        subgroup: Option<String>,
        /// `trivial`, `regular`, `cyclic:<g>:<k>` or a trace file.
        #[arg(long, default_value = "trivial")]
        trace: String,
        /// Generators of an intermediate subgroup for the stages check.
        #[arg(long)]
        middle: Option<String>,
        /// `canonical` or `seeded:<n>`.
        #[arg(long, default_value = "canonical")]
        transversal: String,
    },
    /// Hilbert-Schmidt defect of a perturbed regular representation.
    Defect {
        #[arg(long)]
        group: String,
        /// Size of the random perturbation.
        #[arg(long, default_value_t = 0.01)]
        eps: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Character table file; abelian groups use their dual group.
        #[arg(long)]
        characters: Option<PathBuf>,
    },
    /// Signature and unit rank of Q[x]/(f).
    Field {
        #[arg(long, allow_hyphen_values = true)]
        field: String,
    },
    /// Unit conditions for an element of Z[x]/(f).
    Unitcheck {
        #[arg(long, allow_hyphen_values = true)]
        field: String,
        #[arg(long, allow_hyphen_values = true)]
        unit: String,
        /// Second element for the multiplicative independence test.
        #[arg(long, allow_hyphen_values = true)]
        other: Option<String>,
    },
    /// Stability verdict for a group descriptor.
    Verdict(VerdictArgs),
}

#[derive(Debug, Args)]
pub struct VerdictArgs {
    /// Descriptor file (JSON or `key = value` lines).
    #[arg(long, conflicts_with = "family")]
    pub descriptor: Option<PathBuf>,
    /// Family name or alias (toral, bs, wreath, metabelian, nilpotent,
    /// upper_triangular, units, adic, custom).
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<i64>,
    /// Base group orders, comma separated, 0 for Z.
    #[arg(long, value_delimiter = ',')]
    pub base: Option<Vec<u64>>,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long)]
    pub rank: Option<u32>,
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub field: Option<String>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<i64>,
    #[arg(long)]
    pub description: Option<String>,
}
