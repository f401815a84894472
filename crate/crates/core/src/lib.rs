//! Harmonic function pairs on the unit disc and the composition operators
//! that act on them.
//!
//! A function here is `f(z) = h(z) + conj(g(z))` with `h`, `g` analytic,
//! stored as a pair of truncated coefficient vectors with squared norm
//! `sum_n |a_n|^2 + |b_n|^2`. On top of that representation the crate covers:
//!
//! - evaluation, inner products, and norms ([`series`]);
//! - analytic self-maps of the disc as truncated series ([`symbols`]);
//! - composition `f ∘ phi` by Horner over truncated series ([`compose`]);
//! - reproducing kernels in closed and truncated form ([`kernels`]);
//! - circle averages of `|f|^2` by quadrature and by coefficients
//!   ([`integral_means`]);
//! - Poisson and Herglotz extension from uniform boundary samples
//!   ([`poisson`]);
//! - finite-section composition matrices, operator-norm estimates, adjoint
//!   action on kernels, and symbol recovery ([`matrix`], [`operator`]);
//! - the full claim-audit suite behind a single report ([`verify`]).
//!
//! Grid sweeps fan out over rayon when the `parallel` feature (default) is
//! enabled; results are collected in index order before any reduction, so
//! every report is byte-identical with the feature on or off.

#![forbid(unsafe_code)]

pub mod compose;
pub mod error;
pub mod integral_means;
pub mod kernels;
pub mod matrix;
pub mod operator;
pub mod parse;
pub mod poisson;
pub mod probe;
pub mod series;
pub mod sweep;
pub mod symbols;
pub mod verify;

mod poly;
mod wire;

pub use error::{Error, Result};
pub use kernels::KernelPoint;
pub use matrix::{CompositionMatrix, SigmaEstimate};
pub use operator::{AuditReport, BlockOperator, BoundReport, RecoveryReport};
pub use poisson::BoundaryGrid;
pub use series::{CanonicalizationReport, HarmonicSeries};
pub use symbols::{Symbol, SymbolFamily};
