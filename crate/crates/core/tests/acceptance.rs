//! Acceptance gate: the nine criteria the crate ships against, one test
//! and one PASS/FAIL line each (visible with `--nocapture`). Randomness is
//! seeded, so every run exercises identical data.

use num_complex::Complex64;

use cphi_core::kernels::{kernel_norm_sq, kernel_series, KernelPoint};
use cphi_core::operator::{
    adjoint_on_kernel, audit_claims, norm_bounds, recover_symbol, BlockOperator,
};
use cphi_core::poisson::{
    herglotz_extend, poisson_extend, poisson_kernel, squared_bound_check, theta, BoundaryGrid,
};
use cphi_core::verify::{run_all, CheckStatus};
use cphi_core::{integral_means, probe, HarmonicSeries, Symbol};

/// Float slack for comparisons that the criteria state as exact
/// inequalities; the power iteration and the closed forms round in the last
/// couple of digits.
const BOUND_SLACK: f64 = 1e-9;

fn verdict(number: usize, name: &str, ok: bool) {
    println!(
        "acceptance {number} ({name}): {}",
        if ok { "PASS" } else { "FAIL" }
    );
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn bound_symbol_set() -> Vec<Symbol> {
    vec![
        Symbol::rotation(1.0, 64).unwrap(),
        Symbol::monomial(Complex64::ONE, 3, 64).unwrap(),
        Symbol::moebius(c(0.3, 0.0), 64).unwrap(),
        Symbol::moebius(c(0.5, 0.0), 64).unwrap(),
        Symbol::affine(c(0.5, 0.0), c(0.25, 0.0), 64).unwrap(),
    ]
}

#[test]
fn criterion_1_kernel_norm_identity() {
    let alphas = [c(0.0, 0.0), c(0.3, 0.0), c(0.6, 0.0), c(0.0, 0.75)];
    let mut max_diff = 0.0_f64;
    for alpha in alphas {
        let kp = KernelPoint::new(alpha).unwrap();
        let norm_sq = kernel_series(&kp, 128).norm_sq();
        max_diff = max_diff.max((norm_sq - kernel_norm_sq(&kp)).abs());
    }
    let at_origin = kernel_series(&KernelPoint::new(Complex64::ZERO).unwrap(), 128);
    let origin_exact = at_origin.norm() == 2.0_f64.sqrt();
    let ok = max_diff <= 1e-6 && origin_exact;
    verdict(1, "kernel norm identity", ok);
    assert!(ok, "max |norm^2 - 2/(1-|a|^2)| = {max_diff}, origin exact: {origin_exact}");
}

#[test]
fn criterion_2_reproducing_property() {
    let fs = probe::audit_probes(201, 200, 16);
    let points = probe::seeded_disc_points(202, 10, 0.8);
    let mut max_residual = 0.0_f64;
    for f in &fs {
        for &alpha in &points {
            let kernel = kernel_series(&KernelPoint::new(alpha).unwrap(), 64);
            max_residual = max_residual.max((f.inner(&kernel) - f.eval(alpha)).norm());
        }
    }
    let ok = max_residual <= 1e-8;
    verdict(2, "reproducing property", ok);
    assert!(ok, "max |<f,K_a> - f(a)| = {max_residual}");
}

#[test]
fn criterion_3_isometry_families() {
    let probes = probe::audit_probes(203, 100, 12);
    let rotation = Symbol::rotation(1.0, 64).unwrap();
    let monomial = Symbol::monomial(Complex64::from_polar(1.0, 0.7), 3, 64).unwrap();
    let mut max_dev = 0.0_f64;
    for s in [&rotation, &monomial] {
        let report = audit_claims(s, &probes, 64);
        for ratio in &report.ratios {
            max_dev = max_dev.max((ratio - 1.0).abs());
        }
    }
    let affine = Symbol::affine(c(0.5, 0.0), c(0.5, 0.0), 8).unwrap();
    let z = HarmonicSeries::analytic(vec![Complex64::ZERO, Complex64::ONE]).unwrap();
    let affine_ratio = audit_claims(&affine, &[z], 32).ratios[0];
    let affine_err = (affine_ratio - 0.5_f64.sqrt()).abs();
    let ok = max_dev <= 1e-9 && affine_err <= 1e-12;
    verdict(3, "isometry families", ok);
    assert!(
        ok,
        "max isometry deviation {max_dev}; affine ratio error {affine_err}"
    );
}

#[test]
fn criterion_4_norm_bound_sandwich() {
    let mut ok = true;
    let mut lines = Vec::new();
    for s in bound_symbol_set() {
        let r = norm_bounds(&s, 64).unwrap();
        let mut this = r.sigma_max >= r.lower - BOUND_SLACK
            && r.sigma_max <= r.upper_tight + BOUND_SLACK
            && r.sigma_max >= 0.95 * r.lower;
        if r.phi0_modulus == 0.0 {
            this &= r.sigma_max >= 1.0 - BOUND_SLACK && r.sigma_max <= 4.0 + BOUND_SLACK;
        }
        lines.push(format!(
            "sigma {} in [{}, {}] (converged: {})",
            r.sigma_max, r.lower, r.upper_tight, r.converged
        ));
        ok &= this && r.converged;
    }
    verdict(4, "norm-bound sandwich", ok);
    assert!(ok, "{}", lines.join("\n"));
}

#[test]
fn criterion_5_adjoint_kernel_identity() {
    let alphas = [c(0.0, 0.0), c(0.4, 0.0), c(0.3, 0.3)];
    let mut max_residual = 0.0_f64;
    for s in bound_symbol_set() {
        for alpha in alphas {
            let kp = KernelPoint::new(alpha).unwrap();
            max_residual = max_residual.max(adjoint_on_kernel(&s, &kp, 64).residual);
        }
    }
    let ok = max_residual <= 1e-6;
    verdict(5, "adjoint-kernel identity", ok);
    assert!(ok, "max |C* K_a - K_phi(a)| = {max_residual}");
}

#[test]
fn criterion_6_quadrature_parseval_equivalence() {
    let fs = probe::audit_probes(204, 100, 12);
    let mut max_diff = 0.0_f64;
    for f in &fs {
        let m = 4 * f.effective_degree() + 9;
        for r in [0.0, 0.3, 0.7, 0.9] {
            let quad = integral_means::integral_mean_quadrature(f, r, m).unwrap();
            max_diff = max_diff.max((quad - integral_means::integral_mean_exact(f, r)).abs());
        }
    }
    // The two-representation fixture: pointwise f = 2, stored with the
    // constant split across both slots. The mean sees 4, the coefficient
    // norm sees 2, and the claim-audit table must carry that as a
    // REPORT-ONLY row rather than a failure.
    let two = HarmonicSeries::new(vec![Complex64::ONE], vec![Complex64::ONE]).unwrap();
    let fixture_ok = integral_means::integral_mean_exact(&two, 0.5) == 4.0
        && two.norm_sq() == 2.0;
    let report = run_all();
    let row_ok = report.rows.iter().any(|row| {
        row.claim.contains("Thm 2.2 as stated")
            && row.status == CheckStatus::ReportOnly
            && row.detail.contains("mean 4 vs norm^2 2")
    });
    let ok = max_diff <= 1e-10 && fixture_ok && row_ok;
    verdict(6, "quadrature-parseval equivalence", ok);
    assert!(
        ok,
        "max |quad - exact| = {max_diff}; fixture arithmetic ok: {fixture_ok}; \
         report row present: {row_ok}"
    );
}

#[test]
fn criterion_7_poisson_suite() {
    // Discrete normalization.
    let m = 512;
    let mut norm_dev = 0.0_f64;
    for r in [0.1, 0.5, 0.9] {
        let mean = (0..m).map(|j| poisson_kernel(r, theta(j, m))).sum::<f64>() / m as f64;
        norm_dev = norm_dev.max((mean - 1.0).abs());
    }

    // Boundary samples of z extend back to r e^{it}.
    let mz = 256;
    let h = BoundaryGrid::sample(mz, |t| Complex64::from_polar(1.0, t)).unwrap();
    let g0 = BoundaryGrid::constant(Complex64::ZERO, mz).unwrap();
    let mut z_err = 0.0_f64;
    for (r, t) in [(0.3, 0.0), (0.5, -2.0), (0.9, 1.234), (0.85, 3.0)] {
        let got = poisson_extend(&h, &g0, r, t).unwrap();
        z_err = z_err.max((got - Complex64::from_polar(r, t)).norm());
    }

    // r = 0 is the plain mean, bitwise.
    let seeded = probe::audit_probes(207, 3, 6);
    let mut mean_exact = true;
    for f in &seeded {
        let (hh, gg) = BoundaryGrid::from_series_parts(f, 64).unwrap();
        let ext = poisson_extend(&hh, &gg, 0.0, 0.77).unwrap();
        let mean = (0..64)
            .map(|j| hh.values()[j] + gg.values()[j].conj())
            .sum::<Complex64>()
            / 64.0;
        mean_exact &= ext == mean;
    }

    // Herglotz real part agrees with the Poisson extension.
    let mu = 128;
    let u = BoundaryGrid::sample(mu, |t| {
        Complex64::new(0.4 + 0.9 * t.cos() - 0.3 * (2.0 * t).cos() + 0.2 * (3.0 * t).sin(), 0.0)
    })
    .unwrap();
    let zero = BoundaryGrid::constant(Complex64::ZERO, mu).unwrap();
    let mut herglotz_dev = 0.0_f64;
    for z in probe::seeded_disc_points(208, 20, 0.9) {
        let hg = herglotz_extend(&u, z).unwrap();
        let po = poisson_extend(&u, &zero, z.norm(), z.arg()).unwrap();
        herglotz_dev = herglotz_dev.max((hg.re - po.re).abs());
    }

    // Pointwise squared bound on 100 seeded pairs.
    let pairs = probe::audit_probes(205, 100, 8);
    let points = probe::seeded_disc_points(206, 100, 0.9);
    let mut bound_ok = true;
    for (f, z) in pairs.iter().zip(&points) {
        let (hh, gg) = BoundaryGrid::from_series_parts(f, 256).unwrap();
        bound_ok &= squared_bound_check(&hh, &gg, z.norm(), z.arg()).unwrap().ok;
    }

    let ok = norm_dev <= 1e-12
        && z_err <= 1e-10
        && mean_exact
        && herglotz_dev <= 1e-10
        && bound_ok;
    verdict(7, "poisson suite", ok);
    assert!(
        ok,
        "normalization {norm_dev}; boundary-z {z_err}; r=0 exact {mean_exact}; \
         herglotz {herglotz_dev}; squared bound {bound_ok}"
    );
}

#[test]
fn criterion_8_symbol_recovery() {
    let grid = probe::recovery_grid();
    let symbols = vec![
        Symbol::rotation(0.5, 8).unwrap(),
        Symbol::monomial(Complex64::ONE, 2, 8).unwrap(),
        Symbol::monomial(c(0.0, 0.8), 3, 8).unwrap(),
        Symbol::affine(c(0.5, 0.0), c(0.25, 0.0), 8).unwrap(),
        Symbol::general(vec![c(0.1, 0.0), c(0.3, 0.1), c(0.0, 0.0), c(0.0, 0.25)]).unwrap(),
    ];
    let mut ok = true;
    let mut max_residual = 0.0_f64;
    for s in &symbols {
        let op = BlockOperator::from_symbol(s, 32);
        let report = recover_symbol(&op, &grid).unwrap();
        ok &= report.is_composition && report.residual <= 1e-8;
        max_residual = max_residual.max(report.residual);
        for (alpha, phi) in report.grid.iter().zip(&report.phi_samples) {
            ok &= (phi - s.eval(*alpha)).norm() <= 1e-8;
        }
    }
    let doubled = BlockOperator::scaled_identity(c(2.0, 0.0), 32);
    ok &= !recover_symbol(&doubled, &grid).unwrap().is_composition;
    verdict(8, "symbol recovery", ok);
    assert!(ok, "max residual {max_residual}");
}

#[test]
fn criterion_9_determinism() {
    let first = run_all();
    let second = run_all();
    let text_same = first.to_text() == second.to_text();
    let json_same = serde_json::to_string_pretty(&first).unwrap()
        == serde_json::to_string_pretty(&second).unwrap();
    let ok = text_same && json_same && first.passed();
    verdict(9, "determinism", ok);
    assert!(
        ok,
        "text identical: {text_same}; json identical: {json_same}; passed: {}",
        first.passed()
    );
}
