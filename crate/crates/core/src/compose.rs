//! Composition `f ∘ phi` by Horner over truncated series.

use num_complex::Complex64;

use crate::error::Result;
use crate::poly;
use crate::series::HarmonicSeries;
use crate::symbols::{self, Symbol, SELFMAP_SAMPLES};

/// Hard cap on the automatic output truncation degree.
pub const MAX_OUT_DEGREE: usize = 4096;

/// Coefficients of `p(phi(z))` truncated at `out_degree`.
///
/// Horner over series: starting from the top coefficient of `p`, repeatedly
/// multiply by `phi` (truncating at `out_degree`) and add the next
/// coefficient. Exact whenever `out_degree >= deg(p) * deg(phi)`; otherwise
/// high-order terms are dropped, never folded back.
pub fn compose_analytic(p: &[Complex64], s: &Symbol, out_degree: usize) -> Vec<Complex64> {
    let mut acc = vec![Complex64::ZERO; out_degree + 1];
    let Some((&top, rest)) = p.split_last() else {
        return acc;
    };
    acc[0] = top;
    for &pj in rest.iter().rev() {
        acc = poly::mul_trunc(&acc, s.coeffs(), out_degree);
        acc[0] += pj;
    }
    acc
}

/// Output degree used when the caller does not pick one:
/// `effective_degree(f) * effective_degree(phi)`, capped at
/// [`MAX_OUT_DEGREE`] — large enough that nothing is lost below the cap.
pub fn default_out_degree(s: &Symbol, f: &HarmonicSeries) -> usize {
    (f.effective_degree() * s.effective_degree())
        .max(f.effective_degree())
        .min(MAX_OUT_DEGREE)
}

/// `f ∘ phi` on both slots at the default output degree.
///
/// Both slots compose with the same `phi`: the function is
/// `h(phi) + conj(g(phi))`, and the conjugation happens at evaluation time,
/// so the stored co-analytic slot is just `g ∘ phi`.
pub fn apply(s: &Symbol, f: &HarmonicSeries) -> Result<HarmonicSeries> {
    apply_truncated(s, f, default_out_degree(s, f))
}

/// `f ∘ phi` truncated at `out_degree`.
///
/// Symbols built through the validated constructors were already self-map
/// checked; anything else is checked here and rejected if it escapes the
/// closed disc.
pub fn apply_truncated(s: &Symbol, f: &HarmonicSeries, out_degree: usize) -> Result<HarmonicSeries> {
    if !s.is_checked() {
        let report = symbols::verify_selfmap(s, SELFMAP_SAMPLES);
        if !report.ok {
            return Err(crate::error::Error::NotSelfMap {
                max_modulus: report.max_modulus,
                witness: report.witness.unwrap_or(Complex64::ONE),
            });
        }
    }
    let a = compose_analytic(f.a(), s, out_degree);
    let b = compose_analytic(f.b(), s, out_degree);
    HarmonicSeries::new(a, b)
}
