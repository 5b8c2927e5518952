use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "symreg",
    version,
    about = "Regular sequences of symmetric-group-invariant type"
)]
pub struct Cli {
    /// One JSON object per line instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Gröbner step budget.
    #[arg(long, global = true, default_value_t = symreg::groebner::DEFAULT_BUDGET)]
    pub budget: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a degree multiset is realized by a regular sequence of symmetric polynomials.
    DegseqClassify(DegseqArgs),
    /// Build explicit generators for a regular degree multiset.
    DegseqConstruct {
        #[command(flatten)]
        seq: DegseqArgs,
        /// Certify the generators with a Gröbner basis.
        #[arg(long)]
        verify: bool,
    },
    /// Check user-supplied homogeneous polynomials for regularity.
    DegseqVerify {
        /// Number of variables (defaults to the number of weights).
        #[arg(short)]
        n: Option<usize>,
        /// Grading of the variables; switches to e-coordinates (e1, e2, …).
        #[arg(long, value_parser = parse_list)]
        weights: Option<DegreeList>,
        /// Polynomials such as "x1^2 + x2^2" or, with --weights, "e2^3 + e3^2".
        #[arg(required = true)]
        polys: Vec<String>,
    },
    /// Decide whether (n, d, a) is good or bad.
    TripleClassify {
        #[command(flatten)]
        triple: TripleArgs,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Run only the exhaustive search for (n, d, a).
    TripleOracle {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long, default_value_t = 2_000_000)]
        max_points: u64,
    },
    /// Classify every triple in a box of ranges such as 2..6.
    TripleScan {
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<u64>,
        #[arg(long, value_parser = parse_range)]
        d: RangeInclusive<u64>,
        #[arg(long, value_parser = parse_range)]
        a: RangeInclusive<u64>,
        #[command(flatten)]
        oracle: OracleArgs,
        /// Also run the oracle on every triple and compare it with each criterion that fires.
        #[arg(long)]
        check: bool,
    },
    /// Decide the S(2,2) case: a copy of the Specht module in degree a plus symmetric degrees c, d.
    S22Classify(S22Args),
    /// Build the S(2,2) generators.
    S22Construct {
        #[command(flatten)]
        s22: S22Args,
        #[arg(long)]
        verify: bool,
    },
    /// Necessary conditions for n-1 symmetric degrees plus one alternating generator of degree D.
    AltClassify {
        #[arg(short)]
        n: usize,
        /// The n-1 symmetric degrees.
        #[arg(value_parser = parse_list)]
        degrees: DegreeList,
        #[arg(short = 'D', long = "alt-degree")]
        alt_degree: u64,
    },
    /// Hilbert series quotient prod(1 - t^d_i) / prod(1 - t^i).
    Hilbert(DegseqArgs),
    /// Write the cache in canonical order.
    CacheExport {
        #[arg(long, env = "SYMREG_CACHE")]
        cache: PathBuf,
        /// Output file (default: standard output).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Merge a JSONL file into the cache.
    CacheImport {
        file: PathBuf,
        #[arg(long, env = "SYMREG_CACHE")]
        cache: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct DegseqArgs {
    /// Number of variables (defaults to the number of degrees).
    #[arg(short)]
    pub n: Option<usize>,
    /// Comma-separated degrees, in any order.
    #[arg(value_parser = parse_list)]
    pub degrees: DegreeList,
}

#[derive(Debug, Args)]
pub struct TripleArgs {
    pub n: u64,
    pub d: u64,
    pub a: u64,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Stop after the numerical criteria and the cache.
    #[arg(long)]
    pub no_oracle: bool,
    /// Refuse oracle runs over more canonical points than this.
    #[arg(long, default_value_t = 2_000_000)]
    pub max_points: u64,
    /// JSONL verdict cache.
    #[arg(long, env = "SYMREG_CACHE")]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct S22Args {
    pub a: u64,
    pub c: u64,
    pub d: u64,
}

/// A comma-separated list of positive integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeList(pub Vec<u64>);

fn parse_list(s: &str) -> Result<DegreeList, String> {
    let parts: Result<Vec<u64>, String> = s
        .split(',')
        .map(|p| {
            let p = p.trim();
            match p.parse::<u64>() {
                Ok(0) => Err("degrees must be positive".to_string()),
                Ok(v) => Ok(v),
                Err(_) => Err(format!(
                    "malformed degree list: {p:?} is not a positive integer"
                )),
            }
        })
        .collect();
    parts.map(DegreeList)
}

/// `lo..hi`, `lo..=hi` (both inclusive) or a single value.
fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|_| format!("malformed range {s:?}"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (num(lo)?, num(hi.strip_prefix('=').unwrap_or(hi))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if lo == 0 || lo > hi {
        return Err(format!(
            "range {s:?} must be nonempty and start at 1 or more"
        ));
    }
    Ok(lo..=hi)
}
