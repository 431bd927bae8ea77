//! # renyicc
//!
//! Rényi-entropic lower bounds on the quantum communication complexity of
//! bipartite state transformations and distributed Boolean functions.
//!
//! The toolkit works at the level of Schmidt spectra: every bound shipped
//! here is a function of the eigenvalue spectra of marginal density
//! matrices, so the numerical core is dense real symmetric linear algebra
//! plus spectrum algebra.
//!
//! - [`linalg`]: symmetric eigensolver (cyclic Jacobi), PSD square root,
//!   Uhlmann fidelity, partial traces, and the pinching map.
//! - [`spectra`]: [`spectra::Spectrum`] with Rényi entropies of every
//!   order, majorization, ε-rank, tensor products, and sorted-matching
//!   fidelity between pure-state spectra.
//! - [`rectangles`]: ±1 sign matrices of two-party Boolean functions,
//!   the inner-product and shifted-quadratic-character families, and
//!   their marginal density matrices.
//! - [`bounds`]: the bound evaluators (exact transformation, approximate
//!   transformation with conjugate Rényi orders, function bounds for
//!   uniform and promise distributions, and closed forms for the two
//!   built-in families).
//! - [`embezzle`]: the harmonic-weight catalyst family `M(d)` and
//!   zero-communication embezzlement fidelities.
//! - [`verify`]: seeded property suites behind the `verify` CLI command.
//!
//! ```
//! use renyicc::spectra::{Order, Spectrum};
//!
//! let p = Spectrum::uniform(8).unwrap();
//! assert!((p.renyi(Order::finite(2.0).unwrap()) - 3.0).abs() < 1e-12);
//! ```

use thiserror::Error;

pub mod bounds;
pub mod embezzle;
pub mod linalg;
pub mod rectangles;
pub mod report;
pub mod spectra;
pub mod verify;

/// Error type shared by all modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("entry count {len} is not dim^2 for dim {dim}")]
    BadShape { dim: usize, len: usize },

    #[error("matrix is not symmetric (max deviation {max_dev:e})")]
    NotSymmetric { max_dev: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eig:e})")]
    NotPsd { min_eig: f64 },

    #[error("trace is {trace}, expected 1")]
    BadTrace { trace: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    #[error("dimension {dim} does not factor as {dim_a} x {dim_b}")]
    BadFactorization {
        dim: usize,
        dim_a: usize,
        dim_b: usize,
    },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("dimension must be at least 1")]
    EmptyDimension,

    #[error("Rényi order must be a finite real >= 0, got {alpha}")]
    BadOrder { alpha: f64 },

    #[error("order {alpha} outside the required range [{lo}, {hi})")]
    OrderOutOfRange { alpha: f64, lo: f64, hi: f64 },

    #[error("probability {value:e} is negative beyond tolerance")]
    NegativeProbability { value: f64 },

    #[error("probabilities sum to {sum}, expected 1 within {tol:e}")]
    NotNormalized { sum: f64, tol: f64 },

    #[error("error parameter {eps} outside [0, {max})")]
    BadEps { eps: f64, max: f64 },

    #[error("{q} is not an odd prime")]
    NotOddPrime { q: u64 },

    #[error("parameter {value} outside supported range [{lo}, {hi}]")]
    ParamOutOfRange { value: u64, lo: u64, hi: u64 },

    #[error("rectangle entry at row {row}, column {col} is {value:?}; entries must be -1, 0 or 1")]
    BadRectangleEntry {
        row: usize,
        col: usize,
        value: String,
    },

    #[error("CSV row {row} has {got} columns, expected {expected}")]
    RaggedCsv {
        row: usize,
        expected: usize,
        got: usize,
    },

    #[error("rectangle has empty support")]
    EmptySupport,

    #[error("rectangle contains 0 entries; promise rectangles have no function spectrum")]
    PromiseRectangle,

    #[error("product spectrum size {size} exceeds cap {cap}")]
    SizeCap { size: usize, cap: usize },

    #[error(
        "dimension cap {cap} exceeded; best fidelity {best_fidelity} at d = {best_dim}"
    )]
    EmbezzleCap {
        cap: u64,
        best_dim: u64,
        best_fidelity: f64,
    },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
