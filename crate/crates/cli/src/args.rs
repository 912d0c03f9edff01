use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

#[derive(Parser, Debug)]
#[command(
    name = "equitri",
    version,
    about = "Ehrhart polynomials of equilateral lattice triangles in Z^3"
)]
pub struct Cli {
    /// Output style.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    /// One JSON document on stdout.
    Machine,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Primitive triples a ≤ b ≤ c with a² + b² + c² = 3d².
    Triples { d: u64 },

    /// Frame, lattice basis and (α, β) for a triple, with invariant checks.
    Frame {
        #[arg(value_parser = parse_bigint)]
        a: BigInt,
        #[arg(value_parser = parse_bigint)]
        b: BigInt,
        #[arg(value_parser = parse_bigint)]
        c: BigInt,
    },

    /// Ehrhart polynomial of T(m, n).
    #[command(allow_negative_numbers = true)]
    Ehrhart {
        #[arg(value_parser = parse_bigint)]
        a: BigInt,
        #[arg(value_parser = parse_bigint)]
        b: BigInt,
        #[arg(value_parser = parse_bigint)]
        c: BigInt,
        #[arg(long, default_value_t = 1)]
        m: i64,
        #[arg(long, default_value_t = 0)]
        n: i64,
        /// Also evaluate the polynomial at this dilation.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        t: Option<u64>,
    },

    /// Brute-force lattice point count of t·T(m, n), compared with the formula.
    #[command(allow_negative_numbers = true)]
    Count {
        #[arg(value_parser = parse_bigint)]
        a: BigInt,
        #[arg(value_parser = parse_bigint)]
        b: BigInt,
        #[arg(value_parser = parse_bigint)]
        c: BigInt,
        m: i64,
        n: i64,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        t: u64,
        /// Recount with a bounding box padded by 2 and require identical counts.
        #[arg(long)]
        inflate_check: bool,
    },

    /// Catalog rows for every odd d ≤ d_max.
    Table1 { d_max: u64 },

    /// Distinct minimal-triangle polynomials for one d.
    Ed { d: u64 },

    /// Formula-versus-oracle campaign.
    Verify {
        d_max: u64,
        /// Shapes as "(m,n),(m,n),...".
        #[arg(value_parser = parse_mn_list)]
        mn_list: MnList,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        t_max: u64,
        /// Worker threads.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        parallel: Option<u64>,
    },

    /// Triples with two equal coordinates generated from a pair (k, l).
    Aeqb {
        #[arg(value_parser = parse_bigint)]
        k: BigInt,
        #[arg(value_parser = parse_bigint)]
        l: BigInt,
    },
}

/// Comma-separated `(m,n)` shapes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MnList(pub Vec<(i64, i64)>);

fn parse_bigint(s: &str) -> Result<BigInt, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("`{s}` is not an integer"))
}

/// Parses `"(1,0),(2, 1)"`.
pub fn parse_mn_list(s: &str) -> Result<MnList, String> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("`{s}` is not a list of (m,n) pairs");
    let inner = compact
        .strip_prefix('(')
        .and_then(|rest| rest.strip_suffix(')'))
        .ok_or_else(bad)?;
    inner
        .split("),(")
        .map(|pair| {
            let (m, n) = pair.split_once(',').ok_or_else(bad)?;
            Ok((m.parse().map_err(|_| bad())?, n.parse().map_err(|_| bad())?))
        })
        .collect::<Result<_, _>>()
        .map(MnList)
}
