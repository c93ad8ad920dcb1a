use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hecke_core::conjectures::CheckId;
use hecke_core::Family;

use crate::report::ReportFormat;

#[derive(Debug, Parser)]
#[command(name = "hecke", version, about = "Exact expansions of Hecke triangle functions and p-adic order checks")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Default, Clone, Args)]
pub struct GlobalArgs {
    /// Series cache directory (overrides the config file and HECKE_CACHE_DIR).
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Compute everything in memory; neither read nor write the cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// TOML file with `cache_dir`, `cache` and `jobs` keys.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Worker threads for grid evaluation (default: one per core).
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients of J_m or its bar normalization, from X^-1 upward.
    Expand(ExpandArgs),
    /// Coefficients of the k-th power, from X^-k upward.
    Power(PowerArgs),
    /// Table of constant terms A(0) of the k-th power over a range of m.
    Constants(ConstantsArgs),
    /// Stabilized interpolating polynomial of m -> A_{k,m}(n).
    Interp(InterpArgs),
    /// Evaluate conjecture checks on their grids and emit a report.
    Check(CheckArgs),
    /// Derive A005148 from the constant-term polynomials and compare to a b-file.
    OeisVerify(OeisVerifyArgs),
    /// Network helpers for OEIS data.
    #[command(subcommand)]
    Oeis(OeisCommand),
    /// Catalan number utilities.
    Catalan(CatalanArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    /// Integral bar normalization (j_m).
    #[value(alias = "kbar")]
    Bar,
    /// Canonical normalization (J_m).
    #[value(alias = "k")]
    Plain,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Bar => Family::KBar,
            FamilyArg::Plain => Family::K,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    #[arg(long)]
    pub m: u32,
    /// Number of coefficients, starting at X^-1.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    pub terms: u32,
    #[arg(long, value_enum, default_value_t = FamilyArg::Bar)]
    pub family: FamilyArg,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct PowerArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub k: u32,
    /// Number of coefficients, starting at X^-k.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    pub terms: u32,
    #[arg(long, value_enum, default_value_t = FamilyArg::Bar)]
    pub family: FamilyArg,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct ConstantsArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub k: u32,
    #[arg(long, default_value_t = 3)]
    pub m_from: u32,
    #[arg(long, default_value_t = 12)]
    pub m_to: u32,
    #[arg(long, value_enum, default_value_t = FamilyArg::Bar)]
    pub family: FamilyArg,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct InterpArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub k: u32,
    /// Coefficient index; 0 is the constant term.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub n: i64,
    #[arg(long, value_enum, default_value_t = FamilyArg::Bar)]
    pub family: FamilyArg,
    /// Largest m sampled before giving up.
    #[arg(long, default_value_t = hecke_core::polyfit::DEFAULT_STABILIZATION_CAP)]
    pub cap: u32,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridChoice {
    Default,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("which").required(true).args(["id", "all"])))]
pub struct CheckArgs {
    /// Check id (C2.1 ... C11.3, COR1, SCALE, NSZ, A005148); repeatable.
    #[arg(long, value_parser = parse_check_id)]
    pub id: Vec<CheckId>,
    /// Every check on its default grid.
    #[arg(long)]
    pub all: bool,
    #[arg(long, value_enum, default_value_t = GridChoice::Default)]
    pub grid: GridChoice,
    /// Write the report here instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub report: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    pub format: ReportFormat,
    /// Upper k for the interpolation-backed grids.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub fit_k_max: Option<u32>,
    /// Upper k for the m = 3 power grid.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub cor1_k_max: Option<u32>,
}

fn parse_check_id(s: &str) -> Result<CheckId, String> {
    s.parse().map_err(|e: hecke_core::Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct OeisVerifyArgs {
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..))]
    pub k_max: u32,
    /// b-file to compare against (default: the bundled snapshot).
    #[arg(long, value_name = "FILE")]
    pub bfile: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

#[derive(Debug, Subcommand)]
pub enum OeisCommand {
    /// Download a b-file from oeis.org and validate it.
    Fetch(FetchArgs),
}

#[derive(Debug, Args)]
pub struct FetchArgs {
    /// Sequence id, e.g. A005148.
    pub id: String,
    /// Destination file (default: standard output).
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("what").required(true).args(["n", "ord2_one"])))]
pub struct CatalanArgs {
    /// Print C_n.
    #[arg(long)]
    pub n: Option<u32>,
    /// Print the index and value of the n-th Catalan number with ord_2 = 1.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub ord2_one: Option<u32>,
}
