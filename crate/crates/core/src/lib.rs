//! Banded inverse autocovariance matrices of autoregressive processes,
//! matrix convolution, and blind matrix deconvolution.
//!
//! The library builds the scaled inverse autocovariance matrix `W` of an
//! AR(p) process as a symmetric banded matrix, decides whether `W` admits a
//! matrix deconvolution `W = A * B` (with `*` the 2-D discrete convolution),
//! constructs the factor pairs in every case where one exists — including
//! non-negative-definite variants — and verifies the trajectory-matrix norm
//! equivalence that connects the vector and matrix forms of Hankel
//! structured low-rank approximation.

pub mod armodels;
pub mod banded;
pub mod deconv;
pub mod error;
pub mod hslra;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod verify;

pub use armodels::ArParams;
pub use banded::{DenseMat, SymBanded};
pub use deconv::{Branch, DeconvCase, DeconvDecision, DeconvPair, DeconvStatus, PairShape};
pub use error::{Error, Result};
pub use hslra::{NormCheckReport, Series};
pub use poly::{FactorSet, Poly, SplitMask};
