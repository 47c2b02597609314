//! Completely positive Toeplitz and circulant maps on `M_n(C)`, their GKSL
//! generators, and numerical certificates of asymptotic equivalence between
//! the Toeplitz and circulant families.
//!
//! The crate is organised bottom-up:
//!
//! - [`symbols`]: two-sided generating sequences `{t_j}` and WCLT rate/shift
//!   coefficients, with truncation and symbol-function evaluation.
//! - [`linalg`]: Toeplitz and circulant matrices, DFT spectra, norms and the
//!   [`BlockDiagonalRep`](linalg::BlockDiagonalRep) container.
//! - [`superop`]: diagonal / cyclic-diagonal vectorizations, Kraus-form maps,
//!   exact block representations and the brute-force superoperator oracle.
//! - [`gksl`]: WCLT generators with Toeplitz dissipative part and circulant
//!   generators `Q = C - s·1`.
//! - [`asymptotics`]: per-`n` studies of strong norms and normalized
//!   Hilbert–Schmidt distances, moment comparison and spectral histograms.
//! - [`rng`]: seeded SplitMix64 instance generation for reproducible checks.

pub mod asymptotics;
pub mod gksl;
pub mod linalg;
pub mod rng;
pub mod superop;
pub mod symbols;

mod error;

pub use error::{Error, Result};

/// Complex scalar used throughout (re-exported from `faer`, identical to
/// `num_complex::Complex64`).
pub use faer::c64;

/// Dense complex matrix.
pub type CMat = faer::Mat<c64>;
