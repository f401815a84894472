//! Error type shared across the crate.

use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A coefficient or sample was NaN or infinite.
    #[error("non-finite {what} at index {index}")]
    NonFinite { what: &'static str, index: usize },

    /// A constructor parameter landed outside its domain.
    #[error("{0}")]
    Parameter(String),

    /// A symbol pushes some boundary point outside the closed disc.
    #[error("not a self-map: |phi({witness})| = {max_modulus} exceeds 1")]
    NotSelfMap { max_modulus: f64, witness: Complex64 },

    /// Fewer quadrature nodes than the integrand's degree allows.
    #[error("{m} grid points alias degree-{degree} data; need at least {required}")]
    GridTooCoarse {
        m: usize,
        degree: usize,
        required: usize,
    },

    /// Two boundary grids that must share one partition differ in size.
    #[error("boundary grids disagree in size: {left} vs {right}")]
    GridMismatch { left: usize, right: usize },

    /// A radius left `[0, 1)`.
    #[error("radius {r} outside [0, 1)")]
    RadiusOutOfRange { r: f64 },

    /// A point that must lie strictly inside the unit disc does not.
    #[error("|z| = {modulus} is not inside the open unit disc")]
    OutsideDisc { modulus: f64 },

    /// Boundary data that must be real carries an imaginary part.
    #[error("boundary sample {index} has imaginary part {im}; expected real data")]
    NotReal { index: usize, im: f64 },

    /// Text or JSON that does not parse into the expected shape.
    #[error("parse: {0}")]
    Parse(String),
}
