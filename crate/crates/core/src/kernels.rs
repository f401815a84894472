//! Reproducing kernels `K_alpha(z) = 1/(1 - conj(alpha) z) + 1/(1 - alpha conj(z))`.
//!
//! Pairing any series against the kernel at `alpha` returns its value there.
//! The closed form is exact and never truncated; [`kernel_series`] is the
//! degree-`n` truncation for coefficient-level work, with an explicit tail
//! bound.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::HarmonicSeries;

/// Kernel base point, strictly inside the disc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelPoint(Complex64);

impl KernelPoint {
    pub fn new(alpha: Complex64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::NonFinite {
                what: "kernel point",
                index: 0,
            });
        }
        let modulus = alpha.norm();
        if modulus >= 1.0 {
            return Err(Error::OutsideDisc { modulus });
        }
        Ok(Self(alpha))
    }

    pub fn point(&self) -> Complex64 {
        self.0
    }
}

/// Closed-form kernel value; exact for any `z` in the closed disc.
pub fn kernel_eval(alpha: &KernelPoint, z: Complex64) -> Complex64 {
    assert!(z.is_finite(), "kernel_eval: non-finite point");
    let a = alpha.point();
    (Complex64::ONE - a.conj() * z).inv() + (Complex64::ONE - a * z.conj()).inv()
}

/// Degree-`degree` truncation: both slots carry `conj(alpha)^n`.
pub fn kernel_series(alpha: &KernelPoint, degree: usize) -> HarmonicSeries {
    let ac = alpha.point().conj();
    let mut coeffs = Vec::with_capacity(degree + 1);
    let mut p = Complex64::ONE;
    for _ in 0..=degree {
        coeffs.push(p);
        p *= ac;
    }
    HarmonicSeries::new(coeffs.clone(), coeffs).expect("powers of a disc point are finite")
}

/// Exact squared norm `2 / (1 - |alpha|^2)`; never computed by summation.
pub fn kernel_norm_sq(alpha: &KernelPoint) -> f64 {
    2.0 / (1.0 - alpha.point().norm_sqr())
}

/// Bound on `|K_alpha(z) - kernel_series(alpha, degree).eval(z)|` over the
/// closed disc: `2 |alpha|^{degree+1} / (1 - |alpha|)`.
pub fn kernel_tail_bound(alpha: &KernelPoint, degree: usize) -> f64 {
    let m = alpha.point().norm();
    2.0 * m.powi(degree as i32 + 1) / (1.0 - m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn kp(re: f64, im: f64) -> KernelPoint {
        KernelPoint::new(c(re, im)).unwrap()
    }

    #[test]
    fn closed_form_at_matching_real_points() {
        // alpha = z = 0.5: 1/(1 - 0.25) twice = 8/3.
        let got = kernel_eval(&kp(0.5, 0.0), c(0.5, 0.0));
        assert!((got - c(8.0 / 3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn series_coefficients_are_conjugate_powers() {
        let k = kernel_series(&kp(0.5, 0.0), 2);
        assert_eq!(k.a(), &[Complex64::ONE, c(0.5, 0.0), c(0.25, 0.0)]);
        assert_eq!(k.b(), k.a());
        let k = kernel_series(&kp(0.0, 0.3), 2);
        assert_eq!(k.a()[1], c(0.0, -0.3));
    }

    #[test]
    fn kernel_at_origin_is_the_constant_two() {
        let k = kernel_series(&kp(0.0, 0.0), 64);
        assert_eq!(k.norm_sq(), 2.0);
        assert_eq!(k.norm(), 2.0_f64.sqrt());
        assert_eq!(k.eval(c(0.7, 0.1)), c(2.0, 0.0));
        assert_eq!(kernel_norm_sq(&kp(0.0, 0.0)), 2.0);
    }

    #[test]
    fn truncated_norm_approaches_the_closed_form() {
        let alpha = kp(0.6, 0.0);
        let k = kernel_series(&alpha, 128);
        // 2 / (1 - 0.36) = 3.125
        assert!((k.norm_sq() - 3.125).abs() < 1e-6);
        assert!((k.norm_sq() - kernel_norm_sq(&alpha)).abs() < 1e-6);
    }

    #[test]
    fn points_on_or_outside_the_boundary_are_rejected() {
        assert!(KernelPoint::new(c(1.0, 0.0)).is_err());
        assert!(KernelPoint::new(c(0.8, 0.8)).is_err());
        assert!(KernelPoint::new(c(f64::NAN, 0.0)).is_err());
        assert!(KernelPoint::new(c(0.999, 0.0)).is_ok());
    }

    prop_compose! {
        fn arb_disc_point(r_max: f64)(u in 0.0f64..1.0, t in 0.0f64..std::f64::consts::TAU) -> Complex64 {
            Complex64::from_polar(r_max * u.sqrt(), t)
        }
    }

    proptest! {
        #[test]
        fn truncation_stays_within_the_tail_bound(
            alpha in arb_disc_point(0.8),
            z in arb_disc_point(1.0),
        ) {
            let alpha = KernelPoint::new(alpha).unwrap();
            let k = kernel_series(&alpha, 64);
            let err = (k.eval(z) - kernel_eval(&alpha, z)).norm();
            prop_assert!(err <= kernel_tail_bound(&alpha, 64) + 1e-13);
        }

        #[test]
        fn kernel_is_conjugate_symmetric(
            alpha in arb_disc_point(0.95),
            z in arb_disc_point(0.95),
        ) {
            let lhs = kernel_eval(&KernelPoint::new(alpha).unwrap(), z);
            let rhs = kernel_eval(&KernelPoint::new(z).unwrap(), alpha).conj();
            prop_assert!((lhs - rhs).norm() <= 1e-12);
        }

        #[test]
        fn series_pairing_reproduces_values(
            a in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..18),
            b in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..18),
            alpha in arb_disc_point(0.8),
        ) {
            let f = HarmonicSeries::new(
                a.iter().map(|&(re, im)| Complex64::new(re, im)).collect(),
                b.iter().map(|&(re, im)| Complex64::new(re, im)).collect(),
            ).unwrap();
            let k = kernel_series(&KernelPoint::new(alpha).unwrap(), 64);
            let err = (f.inner(&k) - f.eval(alpha)).norm();
            prop_assert!(err <= 1e-8, "reproducing error {err}");
        }
    }
}
