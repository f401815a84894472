//! Truncated series for harmonic functions `f(z) = h(z) + conj(g(z))`.

use std::ops::{Add, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly;

/// Coefficient pair for one harmonic function on the unit disc.
///
/// The analytic slot `a` holds the coefficients of `h`, the co-analytic slot
/// `b` those of `g`; the represented function is
/// `f(z) = sum_n a[n] z^n + conj(sum_n b[n] z^n)` and its squared norm is
/// `sum_n |a[n]|^2 + |b[n]|^2`. Both slots always have the same length
/// (construction zero-pads the shorter one) and hold only finite values.
///
/// The constant term's split between the slots is not unique — `f ≡ 2` is
/// `a = [2], b = [0]` as much as `a = [1], b = [1]`, and the two have
/// different norms. Nothing here collapses that on its own; see
/// [`HarmonicSeries::canonicalize`].
///
/// Serialized as `{"a": [[re, im], ...], "b": [[re, im], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SeriesWire", into = "SeriesWire")]
pub struct HarmonicSeries {
    a: Vec<Complex64>,
    b: Vec<Complex64>,
}

impl HarmonicSeries {
    /// Builds a series from the two coefficient slots, zero-padding the
    /// shorter slot. Rejects NaN or infinite coefficients; empty input is the
    /// zero function of degree 0.
    pub fn new(a: Vec<Complex64>, b: Vec<Complex64>) -> Result<Self> {
        let n = a.len().max(b.len()).max(1);
        let mut a = a;
        let mut b = b;
        a.resize(n, Complex64::ZERO);
        b.resize(n, Complex64::ZERO);
        for (what, slot) in [("analytic coefficient", &a), ("co-analytic coefficient", &b)] {
            if let Some(index) = slot.iter().position(|c| !c.is_finite()) {
                return Err(Error::NonFinite { what, index });
            }
        }
        Ok(Self { a, b })
    }

    /// Purely analytic input: `b = 0`.
    pub fn analytic(a: Vec<Complex64>) -> Result<Self> {
        Self::new(a, Vec::new())
    }

    /// Purely co-analytic input: `a = 0`.
    pub fn coanalytic(b: Vec<Complex64>) -> Result<Self> {
        Self::new(Vec::new(), b)
    }

    /// The zero function, stored with `degree + 1` coefficients per slot.
    pub fn zero(degree: usize) -> Self {
        Self {
            a: vec![Complex64::ZERO; degree + 1],
            b: vec![Complex64::ZERO; degree + 1],
        }
    }

    pub fn a(&self) -> &[Complex64] {
        &self.a
    }

    pub fn b(&self) -> &[Complex64] {
        &self.b
    }

    /// Analytic coefficient at index `n` (zero beyond the stored range).
    pub fn coeff_a(&self, n: usize) -> Complex64 {
        self.a.get(n).copied().unwrap_or(Complex64::ZERO)
    }

    /// Co-analytic coefficient at index `n` (zero beyond the stored range).
    pub fn coeff_b(&self, n: usize) -> Complex64 {
        self.b.get(n).copied().unwrap_or(Complex64::ZERO)
    }

    /// Stored degree: slot length minus one. Trailing zeros count.
    pub fn degree(&self) -> usize {
        self.a.len() - 1
    }

    /// Largest index carrying a nonzero coefficient in either slot.
    pub fn effective_degree(&self) -> usize {
        poly::effective_degree(&self.a).max(poly::effective_degree(&self.b))
    }

    /// `h(z) + conj(g(z))` by Horner on each slot. Panics on a non-finite
    /// point; meaningful on the closed disc `|z| <= 1`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        assert!(z.is_finite(), "eval: non-finite point");
        let (h, g) = self.eval_parts(z);
        h + g.conj()
    }

    /// The two analytic halves separately: `(h(z), g(z))`. Note the second
    /// half is returned unconjugated.
    pub fn eval_parts(&self, z: Complex64) -> (Complex64, Complex64) {
        (poly::horner(&self.a, z), poly::horner(&self.b, z))
    }

    /// Inner product `sum_n a[n] conj(a'[n]) + conj(b[n]) b'[n]`, primes on
    /// `other`.
    ///
    /// The analytic slot conjugates the second argument, the co-analytic slot
    /// the first; this is exactly the pairing under which evaluation against a
    /// kernel series returns `f(alpha)` with no stray conjugation.
    pub fn inner(&self, other: &Self) -> Complex64 {
        let n = self.a.len().max(other.a.len());
        let mut acc = Complex64::ZERO;
        for k in 0..n {
            acc += self.coeff_a(k) * other.coeff_a(k).conj();
            acc += self.coeff_b(k).conj() * other.coeff_b(k);
        }
        acc
    }

    /// `sum_n |a[n]|^2 + |b[n]|^2`; computed as `inner(self, self)`, so the
    /// two agree exactly, summation order included.
    pub fn norm_sq(&self) -> f64 {
        self.inner(self).re
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Moves the co-analytic constant into the analytic slot:
    /// `a[0] += conj(b[0]); b[0] = 0`.
    ///
    /// Pointwise values are unchanged. The norm generally is not — the two
    /// constants add coherently — which is the whole point: among all
    /// representations of the same function the canonical one (`b[0] = 0`) is
    /// the reference, and the report says what moved.
    pub fn canonicalize(&self) -> (Self, CanonicalizationReport) {
        let shifted = self.b[0];
        let mut out = self.clone();
        out.a[0] += shifted.conj();
        out.b[0] = Complex64::ZERO;
        let report = CanonicalizationReport {
            shifted_constant: shifted,
            norm_before: self.norm(),
            norm_after: out.norm(),
        };
        (out, report)
    }

    /// Scales both slots. Note `(c f)(z) = c h(z) + conj(conj(c) g(z))`, so
    /// the co-analytic slot picks up `conj(c)`.
    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            a: self.a.iter().map(|&x| c * x).collect(),
            b: self.b.iter().map(|&x| c.conj() * x).collect(),
        }
    }
}

impl Add for &HarmonicSeries {
    type Output = HarmonicSeries;

    fn add(self, rhs: &HarmonicSeries) -> HarmonicSeries {
        let n = self.a.len().max(rhs.a.len());
        HarmonicSeries {
            a: (0..n).map(|k| self.coeff_a(k) + rhs.coeff_a(k)).collect(),
            b: (0..n).map(|k| self.coeff_b(k) + rhs.coeff_b(k)).collect(),
        }
    }
}

impl Sub for &HarmonicSeries {
    type Output = HarmonicSeries;

    fn sub(self, rhs: &HarmonicSeries) -> HarmonicSeries {
        let n = self.a.len().max(rhs.a.len());
        HarmonicSeries {
            a: (0..n).map(|k| self.coeff_a(k) - rhs.coeff_a(k)).collect(),
            b: (0..n).map(|k| self.coeff_b(k) - rhs.coeff_b(k)).collect(),
        }
    }
}

/// What [`HarmonicSeries::canonicalize`] did.
#[derive(Debug, Clone, Serialize)]
pub struct CanonicalizationReport {
    /// The co-analytic constant that moved (as stored, before conjugation).
    #[serde(with = "crate::wire::cpair")]
    pub shifted_constant: Complex64,
    pub norm_before: f64,
    pub norm_after: f64,
}

#[derive(Serialize, Deserialize)]
struct SeriesWire {
    a: Vec<[f64; 2]>,
    b: Vec<[f64; 2]>,
}

impl TryFrom<SeriesWire> for HarmonicSeries {
    type Error = Error;

    fn try_from(w: SeriesWire) -> Result<Self> {
        Self::new(crate::wire::from_pairs(&w.a), crate::wire::from_pairs(&w.b))
    }
}

impl From<HarmonicSeries> for SeriesWire {
    fn from(s: HarmonicSeries) -> Self {
        Self {
            a: crate::wire::to_pairs(&s.a),
            b: crate::wire::to_pairs(&s.b),
        }
    }
}
