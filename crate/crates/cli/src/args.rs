use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclonorm_core::MSetSpec;

use crate::numeric::{parse_count, parse_count_list};

fn parse_u32(s: &str) -> Result<u32, String> {
    let v = parse_count(s).map_err(|e| e.to_string())?;
    u32::try_from(v).map_err(|_| format!("'{s}': too large"))
}

fn parse_usize(s: &str) -> Result<usize, String> {
    let v = parse_count(s).map_err(|e| e.to_string())?;
    usize::try_from(v).map_err(|_| format!("'{s}': too large"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checkpoints(pub Vec<u64>);

fn parse_checkpoints(s: &str) -> Result<Checkpoints, String> {
    parse_count_list(s).map(Checkpoints).map_err(|e| e.to_string())
}

fn parse_spec(s: &str) -> Result<MSetSpec, String> {
    s.parse().map_err(|e: cyclonorm_core::Error| e.to_string())
}

/// Membership and representability experiments for the ideal-norm sets
/// Nk (of Z[exp(2πi/2^k)]) and Mp (of Z[exp(2πi/p)]).
#[derive(Debug, Parser)]
#[command(name = "cyclonorm", version)]
pub struct Cli {
    /// Worker threads (default: available cores). Output does not depend on it.
    #[arg(long, global = true, value_parser = parse_usize)]
    pub threads: Option<usize>,

    /// Output format. JSON by default; census tables default to CSV.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide membership of n, with its factorization as evidence.
    Member(MemberArgs),
    /// Find a witness n = member + sum of at most t powers, or report NONREP.
    Represent(RepresentArgs),
    /// List every non-representable integer in [lo, hi].
    Search(SearchArgs),
    /// Check one of the laws l1..l7 or thm on a range.
    Verify(VerifyArgs),
    /// Generate n = q1*q2 + p - 2 witnesses.
    Family(FamilyArgs),
    /// Member counts and normalized growth ratios at checkpoints.
    Census(CensusArgs),
    /// Partial density product over odd primes up to a limit.
    DensityProduct(DensityProductArgs),
    /// Per residue class mod 2^k counts of power sums and representable integers.
    ClassCensus(ClassCensusArgs),
}

#[derive(Debug, Args)]
pub struct MemberArgs {
    /// nk:<k> or mp:<p>
    #[arg(long = "set", value_parser = parse_spec)]
    pub spec: MSetSpec,
    #[arg(long, value_parser = parse_count)]
    pub n: u64,
}

#[derive(Debug, Args)]
pub struct RepresentArgs {
    #[arg(long = "set", value_parser = parse_spec)]
    pub spec: MSetSpec,
    #[arg(long, value_parser = parse_count)]
    pub n: u64,
    /// Power base; defaults to the set's ramified prime.
    #[arg(long, value_parser = parse_count)]
    pub base: Option<u64>,
    #[arg(long, value_parser = parse_u32)]
    pub max_powers: u32,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long = "set", value_parser = parse_spec)]
    pub spec: MSetSpec,
    #[arg(long, value_parser = parse_count)]
    pub base: Option<u64>,
    #[arg(long, value_parser = parse_u32)]
    pub max_powers: u32,
    #[arg(long, value_parser = parse_count)]
    pub lo: u64,
    #[arg(long, value_parser = parse_count)]
    pub hi: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Law {
    L1,
    L2,
    L3,
    L4,
    L5,
    L6,
    L7,
    Thm,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub law: Law,
    #[arg(long, value_parser = parse_count)]
    pub lo: Option<u64>,
    #[arg(long, value_parser = parse_count)]
    pub hi: Option<u64>,
    /// Exponent k of Nk (l3, l4).
    #[arg(long, value_parser = parse_u32)]
    pub k: Option<u32>,
    /// Odd prime p of Mp (l5, l6, thm).
    #[arg(long, value_parser = parse_count)]
    pub p: Option<u64>,
    /// Largest power of the base multiplied in (l1, l3, l5).
    #[arg(long, value_parser = parse_u32)]
    pub a_max: Option<u32>,
    /// Norm-form value bound (l1).
    #[arg(long, value_parser = parse_count)]
    pub limit: Option<u64>,
    /// Family size (thm).
    #[arg(long, value_parser = parse_usize)]
    pub count: Option<usize>,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long, value_parser = parse_count)]
    pub p: u64,
    #[arg(long, value_parser = parse_usize)]
    pub count: usize,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[arg(long = "set", value_parser = parse_spec)]
    pub spec: MSetSpec,
    /// Comma-separated ascending bounds, e.g. 1e4,1e5,1e6.
    #[arg(long, value_parser = parse_checkpoints)]
    pub checkpoints: Checkpoints,
}

#[derive(Debug, Args)]
pub struct DensityProductArgs {
    #[arg(long, value_parser = parse_u32)]
    pub k: u32,
    #[arg(long, value_parser = parse_count)]
    pub prime_limit: u64,
}

#[derive(Debug, Args)]
pub struct ClassCensusArgs {
    #[arg(long, value_parser = parse_u32)]
    pub k: u32,
    #[arg(long, value_parser = parse_u32)]
    pub t: u32,
    #[arg(long, value_parser = parse_count)]
    pub x: u64,
}
