//! Analytic self-maps of the disc as truncated power series.
//!
//! Every constructor validates its parameter domain, then samples `|phi|` on
//! a circle and rejects anything that escapes the closed disc. Exact
//! polynomial families (rotation, monomial, affine, general) sample on the
//! boundary itself; the moebius family stores a truncated expansion whose
//! tail is evaluated too, so its check runs just inside, at `1 - 1e-6`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly;
use crate::sweep;

/// Samples used by the constructor self-map check.
pub const SELFMAP_SAMPLES: usize = 4096;

/// Slack allowed on the sampled maximum modulus: `max |phi| <= 1 + this`.
pub const SELFMAP_TOL: f64 = 1e-9;

/// Truncation degree used when nothing else is requested.
pub const DEFAULT_DEGREE: usize = 64;

/// Which closed-form family a symbol came from, with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum SymbolFamily {
    /// `z -> e^{i theta} z`.
    Rotation { theta: f64 },
    /// `z -> alpha z^k`, `|alpha| <= 1`, `k >= 1`.
    Monomial { alpha: Complex64, k: usize },
    /// `z -> (a - z) / (1 - conj(a) z)`, `|a| < 1`, stored truncated.
    Moebius { a: Complex64 },
    /// `z -> a z + b`, `|a| <= 1`, `|b| <= 1 - |a|`.
    Affine { a: Complex64, b: Complex64 },
    /// Raw coefficients, self-map checked at construction.
    General,
}

/// An analytic map of the disc, stored as truncated power-series coefficients.
///
/// Serialized as `{"family": ..., "params": {...}, "coeffs": [[re, im], ...]}`.
/// On input the params are authoritative for closed-form families (coeffs, if
/// present, only set the truncation degree); `general` symbols take their
/// coefficients verbatim and go through the self-map check.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "SymbolWire", into = "SymbolWire")]
pub struct Symbol {
    family: SymbolFamily,
    coeffs: Vec<Complex64>,
    checked: bool,
}

impl Symbol {
    /// `z -> e^{i theta} z`, padded with zeros up to `degree` (>= 1).
    pub fn rotation(theta: f64, degree: usize) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::Parameter("rotation angle must be finite".into()));
        }
        if degree < 1 {
            return Err(Error::Parameter("rotation needs degree >= 1".into()));
        }
        let mut coeffs = vec![Complex64::ZERO; degree + 1];
        coeffs[1] = Complex64::from_polar(1.0, theta);
        Self::finish(SymbolFamily::Rotation { theta }, coeffs)
    }

    /// `z -> alpha z^k` with `|alpha| <= 1` and `1 <= k <= degree`.
    pub fn monomial(alpha: Complex64, k: usize, degree: usize) -> Result<Self> {
        if !alpha.is_finite() || alpha.norm() > 1.0 + 1e-12 {
            return Err(Error::Parameter(format!(
                "monomial coefficient must satisfy |alpha| <= 1, got |alpha| = {}",
                alpha.norm()
            )));
        }
        if k < 1 {
            return Err(Error::Parameter("monomial exponent must be >= 1".into()));
        }
        if degree < k {
            return Err(Error::Parameter(format!(
                "monomial z^{k} does not fit in truncation degree {degree}"
            )));
        }
        let mut coeffs = vec![Complex64::ZERO; degree + 1];
        coeffs[k] = alpha;
        Self::finish(SymbolFamily::Monomial { alpha, k }, coeffs)
    }

    /// `z -> (a - z) / (1 - conj(a) z)` with `|a| < 1`, expanded to `degree`.
    ///
    /// The expansion is `c_0 = a`, `c_n = (|a|^2 - 1) conj(a)^{n-1}` for
    /// `n >= 1`; [`Symbol::tail_bound`] bounds what the truncation dropped.
    pub fn moebius(a: Complex64, degree: usize) -> Result<Self> {
        if !a.is_finite() || a.norm() >= 1.0 {
            return Err(Error::Parameter(format!(
                "moebius parameter must satisfy |a| < 1, got |a| = {}",
                a.norm()
            )));
        }
        if degree < 1 {
            return Err(Error::Parameter("moebius needs degree >= 1".into()));
        }
        let mut coeffs = Vec::with_capacity(degree + 1);
        coeffs.push(a);
        let scale = a.norm_sqr() - 1.0;
        let mut p = Complex64::ONE; // conj(a)^{n-1}
        for _ in 1..=degree {
            coeffs.push(scale * p);
            p *= a.conj();
        }
        Self::finish(SymbolFamily::Moebius { a }, coeffs)
    }

    /// `z -> a z + b` with `|a| <= 1`, `|b| <= 1 - |a|`, and `|b| < 1` so the
    /// image of the origin stays inside the open disc.
    pub fn affine(a: Complex64, b: Complex64, degree: usize) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() || a.norm() > 1.0 + 1e-12 {
            return Err(Error::Parameter(format!(
                "affine slope must satisfy |a| <= 1, got |a| = {}",
                a.norm()
            )));
        }
        if b.norm() > 1.0 - a.norm() + 1e-12 {
            return Err(Error::Parameter(format!(
                "affine offset must satisfy |b| <= 1 - |a|, got |b| = {}",
                b.norm()
            )));
        }
        if degree < 1 {
            return Err(Error::Parameter("affine needs degree >= 1".into()));
        }
        let mut coeffs = vec![Complex64::ZERO; degree + 1];
        coeffs[0] = b;
        coeffs[1] = a;
        Self::finish(SymbolFamily::Affine { a, b }, coeffs)
    }

    /// Raw coefficients; rejected unless the sampled boundary check passes.
    pub fn general(coeffs: Vec<Complex64>) -> Result<Self> {
        Self::finish(SymbolFamily::General, coeffs)
    }

    /// Raw coefficients with no self-map validation.
    ///
    /// For probing maps that are *not* self-maps (blow-up scans, validator
    /// tests). [`crate::compose::apply`] re-checks before composing, so an
    /// escaped map cannot slip into a composition through here.
    pub fn general_unchecked(coeffs: Vec<Complex64>) -> Self {
        assert!(
            !coeffs.is_empty() && coeffs.iter().all(|c| c.is_finite()),
            "general_unchecked: coefficients must be finite and non-empty"
        );
        Self {
            family: SymbolFamily::General,
            coeffs,
            checked: false,
        }
    }

    fn finish(family: SymbolFamily, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Parameter("symbol needs at least one coefficient".into()));
        }
        if let Some(index) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite {
                what: "symbol coefficient",
                index,
            });
        }
        if coeffs[0].norm() >= 1.0 {
            return Err(Error::Parameter(format!(
                "symbol must map the origin inside the disc: |phi(0)| = {} >= 1",
                coeffs[0].norm()
            )));
        }
        let s = Self {
            family,
            coeffs,
            checked: false,
        };
        // Parametric families are certified by their parameter domains: the
        // exact maps send the disc into itself, and only the truncation tail
        // can overshoot (it does, slightly, at low degree). Raw coefficient
        // lists have no such certificate, so they face the sampled gate.
        if !matches!(s.family, SymbolFamily::General) {
            return Ok(Self { checked: true, ..s });
        }
        let report = verify_selfmap(&s, SELFMAP_SAMPLES);
        if !report.ok {
            return Err(Error::NotSelfMap {
                max_modulus: report.max_modulus,
                witness: report.witness.unwrap_or(Complex64::ONE),
            });
        }
        Ok(Self { checked: true, ..s })
    }

    pub fn family(&self) -> &SymbolFamily {
        &self.family
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Stored truncation degree (trailing zeros count).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Largest index with a nonzero coefficient.
    pub fn effective_degree(&self) -> usize {
        poly::effective_degree(&self.coeffs)
    }

    /// `phi(0)`.
    pub fn phi0(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// Horner evaluation of the stored truncation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        assert!(z.is_finite(), "symbol eval: non-finite point");
        poly::horner(&self.coeffs, z)
    }

    /// Whether construction already ran the self-map check.
    pub fn is_checked(&self) -> bool {
        self.checked
    }

    /// Bound on `|phi(z) - stored(z)|` for `|z| <= r`: what truncation
    /// dropped. Zero for the families stored exactly.
    pub fn tail_bound(&self, r: f64) -> f64 {
        assert!((0.0..=1.0).contains(&r), "tail_bound: radius outside [0, 1]");
        match self.family {
            SymbolFamily::Moebius { a } => {
                let m = self.degree() as i32;
                let an = a.norm();
                (1.0 - an * an) * an.powi(m) * r.powi(m + 1) / (1.0 - r * an)
            }
            _ => 0.0,
        }
    }
}

/// Outcome of sampling `|phi|` on a circle.
#[derive(Debug, Clone, Serialize)]
pub struct SelfMapReport {
    /// `max |phi| <= 1 + SELFMAP_TOL` over the sampled circle.
    pub ok: bool,
    pub max_modulus: f64,
    /// The maximizing sample point, reported when the check fails.
    #[serde(with = "crate::wire::cpair_opt", skip_serializing_if = "Option::is_none")]
    pub witness: Option<Complex64>,
    /// Samples actually used (at least `2 * degree + 1`).
    pub samples: usize,
    /// Circle radius the check ran on.
    pub radius: f64,
}

/// Maximum of `|phi|` over `samples` uniform points on the circle of radius
/// `r`, with the maximizing point. Asking for fewer than `2 * degree + 1`
/// samples silently gets that many, so degree-aliased maxima cannot hide.
pub fn max_modulus_on_circle(s: &Symbol, r: f64, samples: usize) -> (f64, Complex64) {
    let m = samples.max(2 * s.degree() + 1);
    let moduli = sweep::map_ordered(m, |j| {
        let theta = std::f64::consts::TAU * j as f64 / m as f64;
        s.eval(Complex64::from_polar(r, theta)).norm()
    });
    let mut best = 0usize;
    for (j, &v) in moduli.iter().enumerate() {
        if v > moduli[best] {
            best = j;
        }
    }
    let theta = std::f64::consts::TAU * best as f64 / m as f64;
    (moduli[best], Complex64::from_polar(r, theta))
}

/// Samples `|phi|` on the boundary circle and reports whether the map stays
/// in the closed disc (up to [`SELFMAP_TOL`]). Moebius symbols sample at
/// radius `1 - 1e-6` instead, where their truncated tail is controlled.
pub fn verify_selfmap(s: &Symbol, samples: usize) -> SelfMapReport {
    let radius = match s.family {
        SymbolFamily::Moebius { .. } => 1.0 - 1e-6,
        _ => 1.0,
    };
    let (max_modulus, witness) = max_modulus_on_circle(s, radius, samples);
    let ok = max_modulus <= 1.0 + SELFMAP_TOL;
    SelfMapReport {
        ok,
        max_modulus,
        witness: if ok { None } else { Some(witness) },
        samples: samples.max(2 * s.degree() + 1),
        radius,
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "lowercase")]
enum FamilyWire {
    Rotation { theta: f64 },
    Monomial { alpha: [f64; 2], k: usize },
    Moebius { a: [f64; 2] },
    Affine { a: [f64; 2], b: [f64; 2] },
    General,
}

#[derive(Serialize, Deserialize)]
struct SymbolWire {
    #[serde(flatten)]
    family: FamilyWire,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coeffs: Option<Vec<[f64; 2]>>,
}

impl TryFrom<SymbolWire> for Symbol {
    type Error = Error;

    fn try_from(w: SymbolWire) -> Result<Self> {
        let degree = w
            .coeffs
            .as_ref()
            .map(|c| c.len().saturating_sub(1))
            .unwrap_or(DEFAULT_DEGREE);
        let pt = |p: [f64; 2]| Complex64::new(p[0], p[1]);
        match w.family {
            FamilyWire::Rotation { theta } => Symbol::rotation(theta, degree.max(1)),
            FamilyWire::Monomial { alpha, k } => Symbol::monomial(pt(alpha), k, degree.max(k)),
            FamilyWire::Moebius { a } => Symbol::moebius(pt(a), degree.max(1)),
            FamilyWire::Affine { a, b } => Symbol::affine(pt(a), pt(b), degree.max(1)),
            FamilyWire::General => {
                let coeffs = w
                    .coeffs
                    .ok_or_else(|| Error::Parse("general symbol needs coeffs".into()))?;
                Symbol::general(crate::wire::from_pairs(&coeffs))
            }
        }
    }
}

impl From<Symbol> for SymbolWire {
    fn from(s: Symbol) -> Self {
        let coeffs = Some(crate::wire::to_pairs(&s.coeffs));
        let family = match s.family {
            SymbolFamily::Rotation { theta } => FamilyWire::Rotation { theta },
            SymbolFamily::Monomial { alpha, k } => FamilyWire::Monomial {
                alpha: [alpha.re, alpha.im],
                k,
            },
            SymbolFamily::Moebius { a } => FamilyWire::Moebius { a: [a.re, a.im] },
            SymbolFamily::Affine { a, b } => FamilyWire::Affine {
                a: [a.re, a.im],
                b: [b.re, b.im],
            },
            SymbolFamily::General => FamilyWire::General,
        };
        Self { family, coeffs }
    }
}
