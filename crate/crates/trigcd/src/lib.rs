//! Exact arithmetic for univariate polynomials over quotient rings
//! `Q[z1,...,zn]/T` where `T` is a zero-dimensional triangular set, and a
//! modular algorithm for componentwise gcds that resolves zero-divisors by
//! Hensel lifting them to factorizations over `Q` and splitting `T`.
//!
//! The crate is organised around the main pipeline:
//!
//! * [`ring`] — recursive dense polynomials, reduction modulo a triangular
//!   set, delayed-reduction division, and the multiplication cost model.
//! * [`modp`] — inversion, the monic (extended) Euclidean algorithm with
//!   zero-divisor signalling, and the radical-prime test over `Z_p`.
//! * [`hensel`] — lifting a coprime monic factorization mod `p` to `Q`,
//!   plus rational reconstruction and CRT utilities.
//! * [`cgcd`] — the modular componentwise-gcd driver with prime management,
//!   CRT accumulation, trial division and triangular-set splitting.
//! * [`oracle`] — naive fraction-arithmetic reference implementations
//!   (splitting Euclidean gcd over `Q`, iterated resultants).
//! * [`cli`] — text formats, command implementations and the benchmark
//!   generator backing the `trigcd` binary.
//!
//! See the crate `examples/` directory for a runnable tour of each
//! capability.

pub mod cgcd;
pub mod cli;
pub mod hensel;
pub mod modp;
pub mod oracle;
pub mod ring;

pub use cgcd::{modular_cgcd, split_tset, trial_divide, CGcdOptions, CGcdResult, Component};
pub use ring::{Coeff, MulCostModel, RPoly, TriangularSet};

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("divisor must be monic in its main variable")]
    NonMonicDivisor,
    #[error("cannot invert zero")]
    ZeroInput,
    #[error("prime {0} divides a denominator")]
    BadPrime(u64),
    #[error("no evidence that the triangular set is radical: {0}")]
    NotRadical(String),
    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),
    #[error("invalid triangular set: {0}")]
    InvalidTriangularSet(String),
    #[error("prime stream exhausted")]
    PrimesExhausted,
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("incompatible image shapes")]
    ShapeMismatch,
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
