use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),

    #[error("determinant {0} is not a unit")]
    NotUnimodular(BigInt),

    #[error("matrix does not satisfy g^{p} = 1 over F_{p}")]
    OrderNotDividingP { p: u64 },

    #[error("moduli differ: {0} vs {1}")]
    PrimeMismatch(u64, u64),

    #[error("block length {q} outside 1..={p}")]
    BlockLengthOutOfRange { p: u64, q: usize },

    #[error("block length {q} is outside the closed-form support for p = {p}; use the oracle route")]
    UnsupportedBlocks { p: u64, q: usize },

    #[error("Gram matrix is not symmetric")]
    NotSymmetric,

    #[error("lattice is degenerate")]
    Degenerate,

    #[error("lattice is not positive definite")]
    NotPositiveDefinite,

    #[error("lattice is odd")]
    OddLattice,

    #[error("vector is zero")]
    ZeroVector,

    #[error("cannot rescale by zero")]
    ZeroScale,

    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),

    #[error("prime p = {0} is outside the supported range")]
    UnsupportedPrime(u64),

    #[error("exact mode is unavailable for p = {0}; request upper-bound mode")]
    ExactModeUnavailable(u64),

    #[error("the K3 formula does not apply for p = 2 without a fixed point")]
    NoFixedPoint,

    #[error("unknown key `{0}`")]
    UnknownKey(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}
