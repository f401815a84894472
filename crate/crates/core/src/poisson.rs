//! Poisson and Herglotz integrals over uniform boundary samples.
//!
//! Boundary data lives on the grid `theta_j = 2 pi j / M`; every integral
//! here is the trapezoid rule on that grid, which for trigonometric
//! polynomials of degree below `M/2` is not an approximation at all. Interior
//! values are rebuilt from samples through the Poisson kernel, analytic
//! completions through the Herglotz kernel, and [`squared_bound_check`]
//! audits the pointwise bound that makes composition operators tractable.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::HarmonicSeries;
use crate::sweep;

/// How far sampled real data may drift off the real axis before we refuse to
/// call it real (rounding in upstream evaluations produces dust at 1e-16).
const REAL_TOL: f64 = 1e-12;

/// Uniform complex samples `v_j = F(e^{2 pi i j / M})` of a boundary
/// function.
///
/// Serializes as a bare JSON array of `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<[f64; 2]>", into = "Vec<[f64; 2]>")]
pub struct BoundaryGrid {
    values: Vec<Complex64>,
}

impl BoundaryGrid {
    /// Wraps explicit samples. At least two are required — a one-point
    /// "grid" cannot tell any two boundary functions apart.
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::Parameter(format!(
                "boundary grid needs at least 2 samples, got {}",
                values.len()
            )));
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                what: "boundary sample",
                index,
            });
        }
        Ok(Self { values })
    }

    /// Samples `f(theta_j)` on the uniform grid of size `m`.
    pub fn sample<F: Fn(f64) -> Complex64>(m: usize, f: F) -> Result<Self> {
        Self::new((0..m).map(|j| f(theta(j, m))).collect())
    }

    /// The constant grid `v_j = c`.
    pub fn constant(c: Complex64, m: usize) -> Result<Self> {
        Self::new(vec![c; m])
    }

    /// Boundary samples of a series' two analytic halves:
    /// `(h(e^{i theta_j}), g(e^{i theta_j}))`, the co-analytic half left
    /// unconjugated so the pair feeds [`poisson_extend`] directly.
    pub fn from_series_parts(f: &HarmonicSeries, m: usize) -> Result<(Self, Self)> {
        let parts: Vec<(Complex64, Complex64)> = (0..m)
            .map(|j| f.eval_parts(Complex64::from_polar(1.0, theta(j, m))))
            .collect();
        let h = Self::new(parts.iter().map(|p| p.0).collect())?;
        let g = Self::new(parts.iter().map(|p| p.1).collect())?;
        Ok((h, g))
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Grid size `M`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Never true — construction requires at least two samples.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Extracts real samples, rejecting any with a meaningful imaginary part.
    fn real_samples(&self) -> Result<Vec<f64>> {
        self.values
            .iter()
            .enumerate()
            .map(|(index, v)| {
                if v.im.abs() > REAL_TOL {
                    Err(Error::NotReal { index, im: v.im })
                } else {
                    Ok(v.re)
                }
            })
            .collect()
    }
}

impl TryFrom<Vec<[f64; 2]>> for BoundaryGrid {
    type Error = Error;

    fn try_from(pairs: Vec<[f64; 2]>) -> Result<Self> {
        Self::new(crate::wire::from_pairs(&pairs))
    }
}

impl From<BoundaryGrid> for Vec<[f64; 2]> {
    fn from(g: BoundaryGrid) -> Self {
        crate::wire::to_pairs(&g.values)
    }
}

/// `theta_j = 2 pi j / M`.
pub fn theta(j: usize, m: usize) -> f64 {
    std::f64::consts::TAU * j as f64 / m as f64
}

/// The Poisson kernel `(1 - r^2) / (1 - 2 r cos x + r^2)`.
///
/// Positive and even in `x`, with mean value 1 over any period. Panics
/// outside `0 <= r < 1`: the kernel blows up on the boundary and callers are
/// expected to gate radii before getting here.
pub fn poisson_kernel(r: f64, x: f64) -> f64 {
    assert!((0.0..1.0).contains(&r), "poisson_kernel: radius {r}");
    assert!(x.is_finite(), "poisson_kernel: non-finite angle");
    (1.0 - r * r) / (1.0 - 2.0 * r * x.cos() + r * r)
}

/// Interior value at `r e^{it}` rebuilt from boundary samples of the two
/// analytic halves: `(1/M) sum_j P_r(theta_j - t) (h_j + conj(g_j))`.
///
/// At `r = 0` the kernel is identically 1 and this is the plain mean of the
/// samples — the mean-value property, exact to summation order.
pub fn poisson_extend(h_bnd: &BoundaryGrid, g_bnd: &BoundaryGrid, r: f64, t: f64) -> Result<Complex64> {
    if h_bnd.len() != g_bnd.len() {
        return Err(Error::GridMismatch {
            left: h_bnd.len(),
            right: g_bnd.len(),
        });
    }
    if !(0.0..1.0).contains(&r) {
        return Err(Error::RadiusOutOfRange { r });
    }
    assert!(t.is_finite(), "poisson_extend: non-finite angle");
    let m = h_bnd.len();
    let terms = sweep::map_ordered(m, |j| {
        poisson_kernel(r, theta(j, m) - t) * (h_bnd.values[j] + g_bnd.values[j].conj())
    });
    Ok(terms.iter().sum::<Complex64>() / m as f64)
}

/// Analytic completion of real boundary data:
/// `(1/M) sum_j (w_j + z) / (w_j - z) u_j` with `w_j = e^{i theta_j}`.
///
/// The real part is the Poisson extension of `u`; the imaginary part is the
/// conjugate function, pinned to 0 at the origin.
pub fn herglotz_extend(u_bnd: &BoundaryGrid, z: Complex64) -> Result<Complex64> {
    assert!(z.is_finite(), "herglotz_extend: non-finite point");
    let modulus = z.norm();
    if modulus >= 1.0 {
        return Err(Error::OutsideDisc { modulus });
    }
    let u = u_bnd.real_samples()?;
    let m = u.len();
    let terms = sweep::map_ordered(m, |j| {
        let w = Complex64::from_polar(1.0, theta(j, m));
        (w + z) / (w - z) * u[j]
    });
    Ok(terms.iter().sum::<Complex64>() / m as f64)
}

/// Both sides of the pointwise bound
/// `|f(re^{it})|^2 <= u + v + 2 sqrt(u v)`, where `u` and `v` are the
/// Poisson averages of `|h|^2` and `|g|^2` on the boundary.
#[derive(Debug, Clone, Serialize)]
pub struct SquaredBoundCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

/// Evaluates the squared-modulus bound at one interior point.
///
/// `lhs` is `|poisson_extend(h, g, r, t)|^2`; `rhs` combines the Poisson
/// averages of the squared boundary moduli. `ok` allows 1e-10 of slack for
/// quadrature rounding.
pub fn squared_bound_check(
    h_bnd: &BoundaryGrid,
    g_bnd: &BoundaryGrid,
    r: f64,
    t: f64,
) -> Result<SquaredBoundCheck> {
    let lhs = poisson_extend(h_bnd, g_bnd, r, t)?.norm_sqr();
    let sq = |grid: &BoundaryGrid| {
        BoundaryGrid::new(
            grid.values
                .iter()
                .map(|v| Complex64::new(v.norm_sqr(), 0.0))
                .collect(),
        )
        .expect("squared samples of a valid grid stay valid")
    };
    let zero = BoundaryGrid::constant(Complex64::ZERO, h_bnd.len())?;
    let u = poisson_extend(&sq(h_bnd), &zero, r, t)?.re;
    let v = poisson_extend(&sq(g_bnd), &zero, r, t)?.re;
    let rhs = u + v + 2.0 * (u * v).sqrt();
    Ok(SquaredBoundCheck {
        lhs,
        rhs,
        ok: lhs <= rhs + 1e-10,
    })
}
