//! Circle averages of `|f|^2`: uniform quadrature and the coefficient form.
//!
//! The two computations are deliberately independent — one samples the
//! function, the other never leaves coefficient space — so each serves as an
//! oracle for the other. They agree for every series; the only subtlety is
//! that the coefficient *norm* is a third quantity: the mean's constant term
//! is `|a_0 + conj(b_0)|^2`, not `|a_0|^2 + |b_0|^2`, and the difference
//! `2 Re(a_0 b_0)` (see [`constant_term_excess`]) does not vanish when both
//! slots carry a constant.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::HarmonicSeries;
use crate::sweep;

/// Mean of `|f|^2` over `m` uniform samples of the circle of radius `r`.
///
/// `|f|^2` on the circle is a trigonometric polynomial of degree twice the
/// series degree; `m >= 4 * effective_degree + 1` is required so the sampled
/// mean is the true mean with margin, not an aliased one.
pub fn integral_mean_quadrature(f: &HarmonicSeries, r: f64, m: usize) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::RadiusOutOfRange { r });
    }
    let degree = f.effective_degree();
    let required = 4 * degree + 1;
    if m < required {
        return Err(Error::GridTooCoarse { m, degree, required });
    }
    let samples = sweep::map_ordered(m, |j| {
        let theta = std::f64::consts::TAU * j as f64 / m as f64;
        f.eval(Complex64::from_polar(r, theta)).norm_sqr()
    });
    Ok(samples.iter().sum::<f64>() / m as f64)
}

/// The same mean straight from coefficients:
/// `|a_0 + conj(b_0)|^2 + sum_{n>=1} (|a_n|^2 + |b_n|^2) r^{2n}`.
///
/// Defined for any `r >= 0`; at `r = 1` it is the boundary mean of the
/// truncated series (a finite sum, so no limit is involved).
pub fn integral_mean_exact(f: &HarmonicSeries, r: f64) -> f64 {
    assert!(r.is_finite() && r >= 0.0, "integral_mean_exact: bad radius");
    let r2 = r * r;
    let mut acc = (f.coeff_a(0) + f.coeff_b(0).conj()).norm_sqr();
    let mut rp = 1.0;
    for n in 1..=f.degree() {
        rp *= r2;
        acc += (f.coeff_a(n).norm_sqr() + f.coeff_b(n).norm_sqr()) * rp;
    }
    acc
}

/// `2 Re(a_0 b_0)`: how much the mean's constant term exceeds
/// `|a_0|^2 + |b_0|^2`. Zero exactly when the constant sits in one slot only
/// (or the cross product is imaginary), in which case the boundary mean of a
/// canonical series recovers the squared norm.
pub fn constant_term_excess(f: &HarmonicSeries) -> f64 {
    2.0 * (f.coeff_a(0) * f.coeff_b(0)).re
}
