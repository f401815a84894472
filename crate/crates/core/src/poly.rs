//! Dense polynomial helpers on `Complex64` coefficient slices.

use num_complex::Complex64;

/// Horner evaluation; an empty slice is the zero polynomial.
pub(crate) fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::ZERO, |acc, &c| acc * z + c)
}

/// Product of two coefficient slices, truncated at `out_degree`.
///
/// The returned vector always has length `out_degree + 1`; terms of higher
/// degree are dropped, never folded back.
pub(crate) fn mul_trunc(a: &[Complex64], b: &[Complex64], out_degree: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::ZERO; out_degree + 1];
    for (i, &ai) in a.iter().enumerate() {
        if i > out_degree {
            break;
        }
        for (j, &bj) in b.iter().enumerate() {
            if i + j > out_degree {
                break;
            }
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Index of the highest nonzero coefficient; 0 for all-zero or empty input.
pub(crate) fn effective_degree(coeffs: &[Complex64]) -> usize {
    coeffs
        .iter()
        .rposition(|&c| c != Complex64::ZERO)
        .unwrap_or(0)
}
