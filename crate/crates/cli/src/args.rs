//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::OutputFormat;

#[derive(Debug, Parser)]
#[command(name = "cmorbit", version, about = "Exact invariants of CM tori and reciprocity kernels")]
pub struct Cli {
    /// TOML run configuration (default: ./cmorbit.toml when present).
    #[arg(long, global = true, display_order = 100)]
    pub config: Option<PathBuf>,
    /// Working precision in decimal digits for real-valued outputs.
    #[arg(long, global = true, display_order = 100)]
    pub precision: Option<u32>,
    /// Output style.
    #[arg(long, global = true, value_enum, display_order = 100)]
    pub output: Option<OutputFormat>,
    /// Worker threads for bulk computations.
    #[arg(long, global = true, display_order = 100)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of psi(s) and lambda(s), with c(s) in factored form.
    Lambda {
        /// Last s in the table.
        #[arg(long, default_value_t = 7)]
        max_s: u32,
    },
    /// Weight of n: sum of phi over prime-power parts minus the 2-adic correction.
    Weight {
        /// Positive integer.
        #[arg(long)]
        n: u64,
    },
    /// Largest n of weight at most s.
    Psi {
        /// Weight budget.
        #[arg(long)]
        s: u32,
    },
    /// CM Galois groups and CM types.
    #[command(subcommand)]
    Cm(CmCommand),
    /// Lattice of the reciprocity morphism and its kernel.
    #[command(subcommand)]
    Reciprocity(ReciprocityCommand),
    /// Cohomology of a finite matrix group acting on Z^d.
    #[command(subcommand)]
    Cohomology(CohomologyCommand),
    /// Artin conductor of a ramification filtration.
    Conductor {
        /// Filtration JSON file, or - for stdin.
        #[arg(long)]
        input: PathBuf,
        /// Also check the tame inequality for the (cyclic) inertia level.
        #[arg(long)]
        tame: bool,
    },
    /// Quasi-discriminant from conductor, real type and component orders.
    Quasidisc(QuasidiscArgs),
    /// Imaginary quadratic class numbers.
    #[command(subcommand)]
    Classical(ClassicalCommand),
    /// Explicit part of the Galois orbit lower bound.
    Bound(BoundArgs),
}

#[derive(Debug, Subcommand)]
pub enum CmCommand {
    /// Closure and CM validation of a generated group.
    Validate {
        /// JSON input file, or - for stdin.
        #[arg(long)]
        input: PathBuf,
    },
    /// Extension data, reflex degree, primitivity and kernel of a CM datum.
    Analyze {
        /// JSON input file, or - for stdin.
        #[arg(long)]
        input: PathBuf,
    },
    /// All CM data of genus g up to conjugacy.
    Enumerate {
        /// Genus, at most 4.
        #[arg(short = 'g', long = "genus")]
        g: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum ReciprocityCommand {
    /// A named family.
    Family(FamilyArgs),
    /// Kernel of the reciprocity morphism for a group read from JSON.
    Kernel {
        /// JSON input file, or - for stdin.
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct FamilyArgs {
    /// The whole hyperoctahedral group C_g.
    #[arg(long, value_name = "G")]
    pub full_cg: Option<usize>,
    /// Klein four-group family in genus 4.
    #[arg(long)]
    pub klein_g4: bool,
    /// Z/2 x Z/p family in genus p.
    #[arg(long, value_name = "P")]
    pub cyclic_2p: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum CohomologyCommand {
    /// First cohomology.
    H1 {
        /// JSON input file, or - for stdin.
        #[arg(long)]
        input: PathBuf,
        /// Use ker N / im(sigma - 1) for a single generator.
        #[arg(long)]
        cyclic: bool,
    },
    /// Second cohomology.
    H2 {
        /// JSON input file, or - for stdin.
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct QuasidiscArgs {
    /// Dimension of the torus.
    #[arg(long)]
    pub dim: usize,
    /// Artin conductor a(T).
    #[arg(long = "aT")]
    pub a_t: u64,
    /// Number of G_m factors of T over R.
    #[arg(long)]
    pub a: usize,
    /// Number of Res_{C/R} G_m factors of T over R.
    #[arg(long)]
    pub b: usize,
    /// Number of SO(2) factors of T over R.
    #[arg(long)]
    pub c: usize,
    /// Component group orders at bad primes (repeatable).
    #[arg(long = "phi")]
    pub phi: Vec<u64>,
}

#[derive(Debug, Subcommand)]
pub enum ClassicalCommand {
    /// Class number by the Dirichlet formula and by reduced forms.
    #[command(allow_negative_numbers = true)]
    H {
        /// Negative fundamental discriminant.
        #[arg(short = 'D')]
        d: i64,
    },
    /// Class number formula of the norm torus against both oracles.
    #[command(allow_negative_numbers = true)]
    Shyr {
        /// Negative fundamental discriminant.
        #[arg(short = 'D')]
        d: i64,
    },
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    /// Dimension of the torus.
    #[arg(long)]
    pub d: u32,
    /// Discriminant of the splitting field.
    #[arg(long = "DL")]
    pub d_l: String,
    /// Positive rational, e.g. 1/100 or 0.01.
    #[arg(long)]
    pub eps: String,
    /// Exponent i(T) of B.
    #[arg(long = "iT", default_value_t = 0)]
    pub i_t: u32,
    /// Index ratio |K_T^m / K_T|.
    #[arg(long, default_value = "1")]
    pub index: String,
    /// Uniform constant B, taken as given.
    #[arg(long = "B", default_value = "1")]
    pub b: String,
    /// Constant c(d, eps), taken as given.
    #[arg(long = "c", default_value = "1")]
    pub c: String,
}
