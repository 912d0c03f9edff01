use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate Bézout: both arguments are zero")]
    DegenerateBezout,

    #[error("square root of negative integer {0}")]
    NegativeSqrt(BigInt),

    #[error("not a lattice-equilateral plane: {0}")]
    InvalidTriple(String),

    #[error("no representation found: 2q = {two_q} admits no admissible s² + 3r²")]
    NoRepresentation { two_q: BigInt },

    #[error("frame is not integral for (r, s) = ({r}, {s})")]
    NonIntegralFrame { r: BigInt, s: BigInt },

    #[error("frame invariant violated: {0}")]
    FrameInvariant(String),

    #[error("frame/basis mismatch: {0}")]
    FrameBasisMismatch(String),

    #[error("degenerate triangle: (m, n) = (0, 0)")]
    DegenerateTriangle,

    #[error("reduce dilation first: gcd(m, n) = {0}")]
    NonCoprimeDilation(BigInt),

    #[error("not a valid generator pair (k, l) = ({k}, {l}): {reason}")]
    InvalidGeneratorPair {
        k: BigInt,
        l: BigInt,
        reason: &'static str,
    },

    #[error("malformed polynomial: A + B = {0} is odd")]
    MalformedPolynomial(BigInt),

    #[error("not an equilateral lattice triangle: {0}")]
    NotEquilateral(String),

    #[error("two-equal-coordinate shortcut disagrees with general formula: {fast} vs {general}")]
    ShortcutMismatch { fast: BigInt, general: BigInt },
}
