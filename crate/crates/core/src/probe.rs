//! Probe functions and points for the recovery and audit suites.
//!
//! Everything random here flows from a caller-supplied seed through a
//! counter-based stream cipher, so two runs with the same seed produce
//! bit-identical probes on any platform.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::series::HarmonicSeries;

/// The probe set symbol recovery evaluates against kernels:
/// `1`, `z`, `z^2`, `conj(z)`, `z + conj(z)`.
///
/// Small by design — degree 2 suffices — and it separates the cases that
/// matter: constants detect scalings, `z^2` detects anything non-multiplicative
/// on the analytic slot, the conjugate pair exercises the co-analytic block.
pub fn recovery_probes() -> Vec<HarmonicSeries> {
    let zero = Complex64::ZERO;
    let one = Complex64::ONE;
    vec![
        HarmonicSeries::analytic(vec![one]).unwrap(),
        HarmonicSeries::analytic(vec![zero, one]).unwrap(),
        HarmonicSeries::analytic(vec![zero, zero, one]).unwrap(),
        HarmonicSeries::coanalytic(vec![zero, one]).unwrap(),
        HarmonicSeries::new(vec![zero, one], vec![zero, one]).unwrap(),
    ]
}

/// The fixed grid recovery uses when the caller has no preference; all
/// points satisfy `|alpha| <= 0.8`.
pub fn recovery_grid() -> Vec<Complex64> {
    vec![
        Complex64::new(0.1, 0.0),
        Complex64::new(0.3, 0.2),
        Complex64::new(-0.5, 0.0),
        Complex64::new(0.0, 0.6),
        Complex64::new(0.5, -0.5),
    ]
}

/// `count` random coefficient pairs of degree `degree`, coefficients uniform
/// on the complex square `[-1, 1]^2`, drawn from the seeded stream. Any
/// probe that comes out negligibly small is redrawn, so every probe is safe
/// as a ratio denominator.
pub fn audit_probes(seed: u64, count: usize, degree: usize) -> Vec<HarmonicSeries> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw_slot = |rng: &mut ChaCha8Rng| -> Vec<Complex64> {
        (0..=degree)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect()
    };
    let mut probes = Vec::with_capacity(count);
    while probes.len() < count {
        let f = HarmonicSeries::new(draw_slot(&mut rng), draw_slot(&mut rng))
            .expect("sampled coefficients are finite");
        if f.norm_sq() > 1e-6 {
            probes.push(f);
        }
    }
    probes
}

/// `count` seeded points in the closed disc of radius `r_max`, area-uniform.
pub fn seeded_disc_points(seed: u64, count: usize, r_max: f64) -> Vec<Complex64> {
    assert!((0.0..1.0).contains(&r_max), "seeded_disc_points: bad radius");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let r = r_max * rng.random_range(0.0..1.0_f64).sqrt();
            let t = rng.random_range(0.0..std::f64::consts::TAU);
            Complex64::from_polar(r, t)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovery_probes_have_the_advertised_shapes() {
        let probes = recovery_probes();
        assert_eq!(probes.len(), 5);
        let z = Complex64::new(0.3, -0.4);
        assert_eq!(probes[0].eval(z), Complex64::ONE);
        assert_eq!(probes[1].eval(z), z);
        assert!((probes[2].eval(z) - z * z).norm() < 1e-16);
        assert_eq!(probes[3].eval(z), z.conj());
        assert_eq!(probes[4].eval(z), z + z.conj());
    }

    #[test]
    fn recovery_grid_points_stay_in_range() {
        for alpha in recovery_grid() {
            assert!(alpha.norm() <= 0.8);
        }
    }

    #[test]
    fn audit_probes_are_seed_deterministic() {
        let a = audit_probes(42, 4, 9);
        let b = audit_probes(42, 4, 9);
        assert_eq!(a, b);
        let c = audit_probes(43, 4, 9);
        assert_ne!(a, c);
        for f in &a {
            assert_eq!(f.degree(), 9);
            assert!(f.norm_sq() > 1e-6);
        }
    }

    #[test]
    fn disc_points_are_deterministic_and_bounded() {
        let a = seeded_disc_points(7, 32, 0.8);
        let b = seeded_disc_points(7, 32, 0.8);
        assert_eq!(a, b);
        assert!(a.iter().all(|z| z.norm() <= 0.8));
        // Not degenerate: the points spread out.
        assert!(a.iter().any(|z| z.norm() > 0.4));
    }
}
