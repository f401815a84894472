//! Operator-level analysis: norm bounds, the adjoint action on kernels,
//! block operators with symbol recovery, and the per-symbol claim audit.
//!
//! The closed-form bounds depend only on `|phi(0)|`; the numerical side runs
//! on the finite section from [`crate::matrix`]. In `(a, conj(b))`
//! coordinates the space's inner product is the standard complex dot
//! product, so adjoints are plain conjugate transposes — that is what makes
//! the kernel identity `C* K_alpha = K_{phi(alpha)}` a testable matrix
//! statement rather than an abstract one.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::compose;
use crate::error::{Error, Result};
use crate::kernels::{self, KernelPoint};
use crate::matrix::{ComplexMatrix, CompositionMatrix};
use crate::series::HarmonicSeries;
use crate::sweep;
use crate::symbols::{self, Symbol};

/// Power-iteration budget used by every norm estimate in this module.
pub const POWER_ITERATIONS: usize = 10_000;

/// Relative Rayleigh-quotient tolerance for those estimates.
pub const POWER_TOLERANCE: f64 = 1e-12;

/// Largest probe mismatch a block operator may show and still be declared a
/// composition operator by [`recover_symbol`].
pub const RECOVERY_TOL: f64 = 1e-6;

/// Probe ratios must sit within this of 1 to call an operator isometric.
pub const ISOMETRY_TOL: f64 = 1e-9;

/// Closed-form norm bounds from `|phi(0)|` next to the measured sigma.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub degree: usize,
    pub phi0_modulus: f64,
    /// `1 / sqrt(1 - |phi(0)|^2)`.
    pub lower: f64,
    /// `2 sqrt((1 + |phi(0)|) / (1 - |phi(0)|))`.
    pub upper_tight: f64,
    /// `4 / sqrt(1 - |phi(0)|^2)`.
    pub upper_loose: f64,
    /// Largest singular value of the degree-`N` section.
    pub sigma_max: f64,
    pub converged: bool,
}

fn bounds_from_modulus(r: f64) -> (f64, f64, f64) {
    let lower = 1.0 / (1.0 - r * r).sqrt();
    let upper_tight = 2.0 * ((1.0 + r) / (1.0 - r)).sqrt();
    let upper_loose = 4.0 / (1.0 - r * r).sqrt();
    (lower, upper_tight, upper_loose)
}

/// The three closed-form bounds at `|phi(0)|`, plus the measured largest
/// singular value of the degree-`degree` section.
///
/// The bounds chain as `lower <= upper_tight <= upper_loose` for every
/// modulus — the ratio `upper_tight / lower` is `2 (1 + |phi(0)|)`.
pub fn norm_bounds(s: &Symbol, degree: usize) -> Result<BoundReport> {
    norm_bounds_with(s, degree, POWER_ITERATIONS, POWER_TOLERANCE)
}

/// [`norm_bounds`] with the power iteration budget and tolerance exposed.
pub fn norm_bounds_with(
    s: &Symbol,
    degree: usize,
    iterations: usize,
    tolerance: f64,
) -> Result<BoundReport> {
    let r = s.phi0().norm();
    if r >= 1.0 {
        return Err(Error::OutsideDisc { modulus: r });
    }
    let (lower, upper_tight, upper_loose) = bounds_from_modulus(r);
    let est = CompositionMatrix::new(s, degree).sigma_max(iterations, tolerance);
    Ok(BoundReport {
        degree,
        phi0_modulus: r,
        lower,
        upper_tight,
        upper_loose,
        sigma_max: est.sigma,
        converged: est.converged,
    })
}

/// One check of the identity `C* K_alpha = K_{phi(alpha)}` at finite degree.
#[derive(Debug, Clone, Serialize)]
pub struct AdjointCheck {
    pub image: HarmonicSeries,
    pub target: HarmonicSeries,
    /// `|| image - target ||`; pure truncation error, shrinking with degree.
    pub residual: f64,
}

/// Applies the adjoint of the degree-`N` section to the truncated kernel at
/// `alpha` and compares with the kernel at `phi(alpha)`.
///
/// In storage coordinates the adjoint sends both slots through `A*`, so the
/// image is `(A* a, A* b)` of the kernel's coefficient pair.
///
/// Panics if `phi(alpha)` lands outside the open disc, which cannot happen
/// for a symbol that passed its self-map check with `|alpha| < 1`.
pub fn adjoint_on_kernel(s: &Symbol, alpha: &KernelPoint, degree: usize) -> AdjointCheck {
    let section = CompositionMatrix::new(s, degree);
    let k_alpha = kernels::kernel_series(alpha, degree);
    let image = HarmonicSeries::new(
        section.matrix().adjoint_mul_vec(k_alpha.a()),
        section.matrix().adjoint_mul_vec(k_alpha.b()),
    )
    .expect("adjoint of finite data is finite");
    let phi_alpha = KernelPoint::new(s.eval(alpha.point()))
        .expect("self-map symbol must keep kernel points inside the disc");
    let target = kernels::kernel_series(&phi_alpha, degree);
    let residual = (&image - &target).norm();
    AdjointCheck {
        image,
        target,
        residual,
    }
}

/// A block-diagonal operator on coefficient pairs, given by its two blocks
/// in `(a, conj(b))` coordinates.
///
/// The first block acts on the analytic coefficients `a`, the second on
/// `beta = conj(b)`; those are the coordinates in which the space's inner
/// product is the standard one. A composition operator has blocks
/// `(A, conj(A))`. Serializes as `{"a_block": rows, "beta_block": rows}`
/// with each block an array of rows of `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BlockOperatorWire")]
pub struct BlockOperator {
    a_block: ComplexMatrix,
    beta_block: ComplexMatrix,
}

#[derive(Serialize, Deserialize)]
struct BlockOperatorWire {
    a_block: ComplexMatrix,
    beta_block: ComplexMatrix,
}

impl TryFrom<BlockOperatorWire> for BlockOperator {
    type Error = Error;

    fn try_from(w: BlockOperatorWire) -> Result<Self> {
        Self::from_blocks(w.a_block, w.beta_block)
    }
}

impl BlockOperator {
    pub fn from_blocks(a_block: ComplexMatrix, beta_block: ComplexMatrix) -> Result<Self> {
        if a_block.size() != beta_block.size() {
            return Err(Error::Parameter(format!(
                "operator blocks disagree in size: {} vs {}",
                a_block.size(),
                beta_block.size()
            )));
        }
        Ok(Self {
            a_block,
            beta_block,
        })
    }

    /// The blocks of the composition operator for `s` at degree `N`.
    pub fn from_symbol(s: &Symbol, degree: usize) -> Self {
        let a = CompositionMatrix::new(s, degree).matrix().clone();
        let beta = a.conj();
        Self {
            a_block: a,
            beta_block: beta,
        }
    }

    pub fn identity(degree: usize) -> Self {
        Self {
            a_block: ComplexMatrix::identity(degree + 1),
            beta_block: ComplexMatrix::identity(degree + 1),
        }
    }

    /// The operator `f -> c f`. Both blocks are `c I`: scaling the function
    /// scales `a` by `c` and `b` by `conj(c)`, which is `c` again on `beta`.
    pub fn scaled_identity(c: Complex64, degree: usize) -> Self {
        Self {
            a_block: ComplexMatrix::scaled_identity(c, degree + 1),
            beta_block: ComplexMatrix::scaled_identity(c, degree + 1),
        }
    }

    pub fn a_block(&self) -> &ComplexMatrix {
        &self.a_block
    }

    pub fn beta_block(&self) -> &ComplexMatrix {
        &self.beta_block
    }

    pub fn degree(&self) -> usize {
        self.a_block.size() - 1
    }

    fn io_vectors(&self, f: &HarmonicSeries) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
        let n = self.a_block.size();
        if f.effective_degree() >= n {
            return Err(Error::Parameter(format!(
                "series of degree {} exceeds operator degree {}",
                f.effective_degree(),
                self.degree()
            )));
        }
        let a = (0..n).map(|k| f.coeff_a(k)).collect();
        let beta = (0..n).map(|k| f.coeff_b(k).conj()).collect();
        Ok((a, beta))
    }

    /// `T f`, back in ordinary `(a, b)` storage.
    pub fn apply(&self, f: &HarmonicSeries) -> Result<HarmonicSeries> {
        let (a, beta) = self.io_vectors(f)?;
        let a_out = self.a_block.mul_vec(&a);
        let b_out: Vec<Complex64> = self
            .beta_block
            .mul_vec(&beta)
            .iter()
            .map(|z| z.conj())
            .collect();
        HarmonicSeries::new(a_out, b_out)
    }

    /// `T* f` with respect to the space's inner product.
    pub fn apply_adjoint(&self, f: &HarmonicSeries) -> Result<HarmonicSeries> {
        let (a, beta) = self.io_vectors(f)?;
        let a_out = self.a_block.adjoint_mul_vec(&a);
        let b_out: Vec<Complex64> = self
            .beta_block
            .adjoint_mul_vec(&beta)
            .iter()
            .map(|z| z.conj())
            .collect();
        HarmonicSeries::new(a_out, b_out)
    }
}

/// What [`recover_symbol`] found.
#[derive(Debug, Clone, Serialize)]
pub struct RecoveryReport {
    /// The grid points `alpha` the operator was probed at.
    #[serde(with = "crate::wire::cpairs")]
    pub grid: Vec<Complex64>,
    /// Candidate symbol values `phi(alpha)`, one per grid point.
    #[serde(with = "crate::wire::cpairs")]
    pub phi_samples: Vec<Complex64>,
    /// Largest probe mismatch `|<T f, K_alpha> - f(phi(alpha))|`.
    pub residual: f64,
    /// Whether every probe stayed within [`RECOVERY_TOL`].
    pub is_composition: bool,
    /// Grid indices whose recovered value has `|phi(alpha)| >= 1` —
    /// evidence that no disc self-map produces this operator.
    pub outside_disc: Vec<usize>,
}

/// Reads a candidate symbol off a block operator and tests it.
///
/// The candidate is the analytic part of `T(z + conj(z))` evaluated at each
/// grid point; if `T` really is a composition operator, that part *is* the
/// symbol. The claim is then audited on the probe set from
/// [`crate::probe::recovery_probes`]: every probe `f` must satisfy
/// `<T f, K_alpha> = f(phi(alpha))` at every grid point.
///
/// Grid points must satisfy `|alpha| <= 0.8` — close to the boundary the
/// truncated kernels lose the accuracy this test relies on.
pub fn recover_symbol(op: &BlockOperator, grid: &[Complex64]) -> Result<RecoveryReport> {
    if grid.is_empty() {
        return Err(Error::Parameter("recovery grid must not be empty".into()));
    }
    if let Some(index) = grid.iter().position(|z| !z.is_finite()) {
        return Err(Error::NonFinite {
            what: "recovery grid point",
            index,
        });
    }
    if let Some(bad) = grid.iter().find(|z| z.norm() > 0.8 + 1e-12) {
        return Err(Error::Parameter(format!(
            "recovery grid point {bad} has |alpha| = {} > 0.8",
            bad.norm()
        )));
    }
    let degree = op.degree();
    if degree < 2 {
        return Err(Error::Parameter(
            "recovery needs operator degree >= 2 to fit its probe set".into(),
        ));
    }
    let witness = HarmonicSeries::new(
        vec![Complex64::ZERO, Complex64::ONE],
        vec![Complex64::ZERO, Complex64::ONE],
    )
    .expect("z + conj(z) is finite");
    let image = op.apply(&witness)?;
    let phi_samples: Vec<Complex64> = grid.iter().map(|&z| image.eval_parts(z).0).collect();

    let mut residual = 0.0_f64;
    for probe in crate::probe::recovery_probes() {
        let moved = op.apply(&probe)?;
        for (j, &alpha) in grid.iter().enumerate() {
            let kp = KernelPoint::new(alpha).expect("grid points are inside the disc");
            let paired = moved.inner(&kernels::kernel_series(&kp, degree));
            let direct = probe.eval(phi_samples[j]);
            residual = residual.max((paired - direct).norm());
        }
    }
    let outside_disc: Vec<usize> = phi_samples
        .iter()
        .enumerate()
        .filter(|(_, p)| p.norm() >= 1.0)
        .map(|(j, _)| j)
        .collect();
    Ok(RecoveryReport {
        grid: grid.to_vec(),
        phi_samples,
        residual,
        is_composition: residual <= RECOVERY_TOL,
        outside_disc,
    })
}

/// One step of the blow-up scan for a map that escapes the disc.
#[derive(Debug, Clone, Serialize)]
pub struct BlowUpRow {
    /// Scan parameter; `alpha = t w / |w|^2` aims `conj(alpha) w` at `t`.
    pub t: f64,
    #[serde(with = "crate::wire::cpair")]
    pub alpha: Complex64,
    #[serde(with = "crate::wire::cpair")]
    pub phi_alpha: Complex64,
    pub phi_alpha_modulus: f64,
    /// `1 - conj(alpha) phi(alpha)`, the quantity whose collapse drives the
    /// kernel blow-up.
    #[serde(with = "crate::wire::cpair")]
    pub denominator: Complex64,
    /// `||K_{phi(alpha)}||`; absent when `phi(alpha)` already left the disc.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_norm: Option<f64>,
}

/// Kernel growth along a ray aimed at an escape value of the map.
#[derive(Debug, Clone, Serialize)]
pub struct BlowUpScan {
    /// Boundary point where the self-map check saw `|phi| > 1`.
    #[serde(with = "crate::wire::cpair")]
    pub witness: Complex64,
    /// `w = phi(witness)`.
    #[serde(with = "crate::wire::cpair")]
    pub image: Complex64,
    pub rows: Vec<BlowUpRow>,
}

fn blow_up_scan(s: &Symbol, witness: Complex64) -> BlowUpScan {
    let image = s.eval(witness);
    let rows = [0.9, 0.99, 0.999]
        .into_iter()
        .filter_map(|t| {
            let alpha = image * (t / image.norm_sqr());
            if alpha.norm() >= 1.0 {
                return None;
            }
            let phi_alpha = s.eval(alpha);
            let modulus = phi_alpha.norm();
            let kernel_norm = KernelPoint::new(phi_alpha)
                .ok()
                .map(|kp| kernels::kernel_norm_sq(&kp).sqrt());
            Some(BlowUpRow {
                t,
                alpha,
                phi_alpha,
                phi_alpha_modulus: modulus,
                denominator: Complex64::ONE - alpha.conj() * phi_alpha,
                kernel_norm,
            })
        })
        .collect();
    BlowUpScan {
        witness,
        image,
        rows,
    }
}

/// Everything the audit measured for one symbol.
///
/// The closed-form bound fields are absent only when even `|phi(0)| < 1`
/// fails, in which case the `origin-outside-disc` flag says so.
#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub symbol: Symbol,
    pub degree: usize,
    /// `||C_phi f|| / ||f||` per probe, in probe order.
    pub ratios: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper_tight: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper_loose: Option<f64>,
    /// All probe ratios within [`ISOMETRY_TOL`] of 1.
    pub isometric_on_probes: bool,
    /// Measured sigma within `[lower, upper_tight]` (1e-9 slack each side).
    pub bound_respecting: bool,
    pub flags: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blow_up: Option<BlowUpScan>,
}

/// Audits one symbol against a probe set: norm ratios, bound placement, and
/// — when the symbol is not actually a self-map — the kernel blow-up scan.
///
/// Ratios are computed by raw truncated composition with no self-map
/// gatekeeping, so escaped maps still get an honest report; probes fan out
/// in parallel and land in probe order.
pub fn audit_claims(s: &Symbol, probes: &[HarmonicSeries], degree: usize) -> AuditReport {
    assert!(!probes.is_empty(), "audit needs at least one probe");
    assert!(
        probes.iter().all(|f| f.norm_sq() > 0.0),
        "audit probes must be nonzero"
    );
    let ratios = sweep::map_ordered(probes.len(), |i| {
        let f = &probes[i];
        let out = compose::default_out_degree(s, f);
        let ca = compose::compose_analytic(f.a(), s, out);
        let cb = compose::compose_analytic(f.b(), s, out);
        let norm_sq: f64 = ca
            .iter()
            .chain(&cb)
            .map(|z| z.norm_sqr())
            .sum();
        (norm_sq / f.norm_sq()).sqrt()
    });
    let isometric_on_probes = ratios.iter().all(|r| (r - 1.0).abs() <= ISOMETRY_TOL);

    let mut flags = Vec::new();
    let mut blow_up = None;
    let selfmap = symbols::verify_selfmap(s, symbols::SELFMAP_SAMPLES);
    if !selfmap.ok {
        flags.push("not-a-self-map".to_string());
        blow_up = Some(blow_up_scan(
            s,
            selfmap.witness.unwrap_or(Complex64::ONE),
        ));
    }

    let r = s.phi0().norm();
    let (sigma_max, lower, upper_tight, upper_loose, bound_respecting) = if r < 1.0 {
        let (lo, tight, loose) = bounds_from_modulus(r);
        let est = CompositionMatrix::new(s, degree).sigma_max(POWER_ITERATIONS, POWER_TOLERANCE);
        let respecting = est.sigma >= lo - 1e-9 && est.sigma <= tight + 1e-9;
        (Some(est.sigma), Some(lo), Some(tight), Some(loose), respecting)
    } else {
        flags.push("origin-outside-disc".to_string());
        (None, None, None, None, false)
    };
    if isometric_on_probes {
        flags.push("isometric-on-probes".to_string());
    }
    if bound_respecting {
        flags.push("bound-respecting".to_string());
    }

    AuditReport {
        symbol: s.clone(),
        degree,
        ratios,
        sigma_max,
        lower,
        upper_tight,
        upper_loose,
        isometric_on_probes,
        bound_respecting,
        flags,
        blow_up,
    }
}
