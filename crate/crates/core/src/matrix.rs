//! Dense complex matrices, the finite section of a composition operator, and
//! a deterministic largest-singular-value estimator.
//!
//! A composition operator restricted to degree `N` acts on the analytic
//! coefficient vector through the matrix `A[m][n] = [z^m] phi(z)^n`. Column
//! `n` is the truncation of `phi^n`, so every entry with `m <= N` is exact —
//! truncated multiplication only ever loses coefficients *above* the cutoff.
//! Everything in this module is single-threaded on purpose: matrix assembly
//! and power iteration are the determinism-critical path of the audits.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly;
use crate::symbols::Symbol;

/// Dense square complex matrix, row-major.
///
/// Serializes as an array of rows, each row an array of `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<[f64; 2]>>", into = "Vec<Vec<[f64; 2]>>")]
pub struct ComplexMatrix {
    size: usize,
    rows: Vec<Vec<Complex64>>,
}

impl ComplexMatrix {
    /// Builds from rows; all rows must match the row count (square only).
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let size = rows.len();
        if size == 0 {
            return Err(Error::Parameter("matrix needs at least one row".into()));
        }
        for row in &rows {
            if row.len() != size {
                return Err(Error::Parameter(format!(
                    "matrix must be square: {size} rows but a row of length {}",
                    row.len()
                )));
            }
        }
        for (i, row) in rows.iter().enumerate() {
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFinite {
                    what: "matrix entry",
                    index: i * size + j,
                });
            }
        }
        Ok(Self { size, rows })
    }

    /// Builds from columns (the natural orientation for composition powers).
    pub fn from_columns(cols: &[Vec<Complex64>]) -> Result<Self> {
        let size = cols.len();
        let rows = (0..size)
            .map(|m| cols.iter().map(|col| col[m]).collect())
            .collect();
        Self::from_rows(rows)
    }

    pub fn identity(size: usize) -> Self {
        let mut rows = vec![vec![Complex64::ZERO; size]; size];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = Complex64::ONE;
        }
        Self { size, rows }
    }

    /// `c` times the identity.
    pub fn scaled_identity(c: Complex64, size: usize) -> Self {
        let mut rows = vec![vec![Complex64::ZERO; size]; size];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = c;
        }
        Self { size, rows }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, m: usize, n: usize) -> Complex64 {
        self.rows[m][n]
    }

    pub fn rows(&self) -> &[Vec<Complex64>] {
        &self.rows
    }

    pub fn column(&self, n: usize) -> Vec<Complex64> {
        self.rows.iter().map(|row| row[n]).collect()
    }

    /// Entrywise conjugate.
    pub fn conj(&self) -> Self {
        Self {
            size: self.size,
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|v| v.conj()).collect())
                .collect(),
        }
    }

    /// `y = A x`.
    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.size, "mul_vec: length mismatch");
        self.rows
            .iter()
            .map(|row| row.iter().zip(x).map(|(&a, &v)| a * v).sum())
            .collect()
    }

    /// `y = A* x` (conjugate transpose), without materializing the adjoint.
    pub fn adjoint_mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.size, "adjoint_mul_vec: length mismatch");
        let mut y = vec![Complex64::ZERO; self.size];
        for (row, &xm) in self.rows.iter().zip(x) {
            for (slot, &a) in y.iter_mut().zip(row) {
                *slot += a.conj() * xm;
            }
        }
        y
    }
}

impl TryFrom<Vec<Vec<[f64; 2]>>> for ComplexMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<[f64; 2]>>) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| crate::wire::from_pairs(r)).collect())
    }
}

impl From<ComplexMatrix> for Vec<Vec<[f64; 2]>> {
    fn from(m: ComplexMatrix) -> Self {
        m.rows.iter().map(|r| crate::wire::to_pairs(r)).collect()
    }
}

/// Largest-singular-value estimate from power iteration on `A* A`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SigmaEstimate {
    /// The estimate itself: square root of the final Rayleigh quotient.
    pub sigma: f64,
    /// The iterate one step earlier; with `sigma` it shows where the
    /// iteration stopped, converged or not.
    pub previous_sigma: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Power iteration for `sigma_max(A)`, fully deterministic.
///
/// Starts from the normalized all-ones vector, iterates `v <- A*A v`
/// (renormalized), and watches the Rayleigh quotient `|A v|^2`; convergence
/// is a relative change below `tolerance` between consecutive iterations.
/// Running out of iterations is not an error — the estimate is returned with
/// `converged = false` and both final iterates.
pub fn sigma_max(a: &ComplexMatrix, max_iterations: usize, tolerance: f64) -> SigmaEstimate {
    assert!(max_iterations >= 1, "sigma_max: need at least one iteration");
    assert!(
        tolerance.is_finite() && tolerance >= 0.0,
        "sigma_max: bad tolerance"
    );
    let n = a.size();
    let mut v = vec![Complex64::new(1.0 / (n as f64).sqrt(), 0.0); n];
    let mut rho_prev = 0.0_f64;
    let mut rho = 0.0_f64;
    let mut iterations = 0;
    let mut converged = false;
    for k in 1..=max_iterations {
        iterations = k;
        let av = a.mul_vec(&v);
        rho_prev = rho;
        rho = av.iter().map(|z| z.norm_sqr()).sum();
        if k >= 2 && (rho - rho_prev).abs() <= tolerance * rho.max(1.0) {
            converged = true;
            break;
        }
        let w = a.adjoint_mul_vec(&av);
        let wn = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if wn == 0.0 {
            // A*A v vanished, so rho = v*(A*A v) = 0: the iterate is in the
            // null space and sigma along it is exactly 0.
            converged = true;
            break;
        }
        for (slot, &z) in v.iter_mut().zip(&w) {
            *slot = z / wn;
        }
    }
    SigmaEstimate {
        sigma: rho.sqrt(),
        previous_sigma: rho_prev.sqrt(),
        iterations,
        converged,
    }
}

/// Finite section of a composition operator on the analytic slot:
/// `A[m][n] = [z^m] phi(z)^n`, size `(N+1) x (N+1)`.
///
/// In coordinates `(a, conj(b))` the full operator is the block diagonal
/// `diag(A, conj(A))`, whose largest singular value equals `sigma_max(A)`;
/// everything norm-related can therefore stay on the single block.
#[derive(Debug, Clone, Serialize)]
pub struct CompositionMatrix {
    symbol: Symbol,
    degree: usize,
    matrix: ComplexMatrix,
}

impl CompositionMatrix {
    /// Assembles the section by repeated truncated multiplication by `phi`;
    /// column `n` is exactly `phi^n` through degree `N`.
    pub fn new(s: &Symbol, degree: usize) -> Self {
        let mut cols = Vec::with_capacity(degree + 1);
        let mut col = vec![Complex64::ZERO; degree + 1];
        col[0] = Complex64::ONE;
        cols.push(col.clone());
        for _ in 1..=degree {
            col = poly::mul_trunc(&col, s.coeffs(), degree);
            cols.push(col.clone());
        }
        let matrix = ComplexMatrix::from_columns(&cols)
            .expect("powers of finite coefficients stay finite");
        Self {
            symbol: s.clone(),
            degree,
            matrix,
        }
    }

    pub fn symbol(&self) -> &Symbol {
        &self.symbol
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn entry(&self, m: usize, n: usize) -> Complex64 {
        self.matrix.entry(m, n)
    }

    /// Largest singular value of the section (see [`sigma_max`]).
    pub fn sigma_max(&self, max_iterations: usize, tolerance: f64) -> SigmaEstimate {
        sigma_max(&self.matrix, max_iterations, tolerance)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn mul_and_adjoint_mul_match_hand_values() {
        let a = ComplexMatrix::from_rows(vec![
            vec![c(1.0, 0.0), c(0.0, 1.0)],
            vec![c(2.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let x = [c(1.0, 0.0), c(0.0, 1.0)];
        // A x = (1*1 + i*i, 2*1) = (0, 2).
        assert_eq!(a.mul_vec(&x), vec![c(0.0, 0.0), c(2.0, 0.0)]);
        // A* x = (conj(1)*1 + conj(2)*i, conj(i)*1) = (1 + 2i, -i).
        assert_eq!(a.adjoint_mul_vec(&x), vec![c(1.0, 2.0), c(0.0, -1.0)]);
    }

    #[test]
    fn ragged_and_non_finite_matrices_are_rejected() {
        assert!(ComplexMatrix::from_rows(vec![vec![Complex64::ONE], vec![]]).is_err());
        assert!(ComplexMatrix::from_rows(vec![]).is_err());
        assert!(ComplexMatrix::from_rows(vec![vec![c(f64::NAN, 0.0)]]).is_err());
    }

    #[test]
    fn matrix_json_round_trip() {
        let a = ComplexMatrix::from_rows(vec![
            vec![c(1.0, -0.5), c(0.0, 0.0)],
            vec![c(0.25, 0.0), c(0.0, 2.0)],
        ])
        .unwrap();
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, "[[[1.0,-0.5],[0.0,0.0]],[[0.25,0.0],[0.0,2.0]]]");
        assert_eq!(serde_json::from_str::<ComplexMatrix>(&text).unwrap(), a);
        assert!(serde_json::from_str::<ComplexMatrix>("[[[1.0,0.0]],[[1.0,0.0]]]").is_err());
    }

    #[test]
    fn power_iteration_on_rank_one_shift() {
        // A = [[0, 2], [0, 0]]: A*A = diag(0, 4), sigma = 2 exactly.
        let a = ComplexMatrix::from_rows(vec![
            vec![Complex64::ZERO, c(2.0, 0.0)],
            vec![Complex64::ZERO, Complex64::ZERO],
        ])
        .unwrap();
        let est = sigma_max(&a, 10_000, 1e-12);
        assert!(est.converged);
        assert!((est.sigma - 2.0).abs() < 1e-12, "sigma {}", est.sigma);
    }

    #[test]
    fn power_iteration_reports_non_convergence() {
        let a = ComplexMatrix::from_rows(vec![
            vec![Complex64::ZERO, c(2.0, 0.0)],
            vec![Complex64::ZERO, Complex64::ZERO],
        ])
        .unwrap();
        let est = sigma_max(&a, 1, 1e-12);
        assert!(!est.converged);
        assert_eq!(est.iterations, 1);
        // One Rayleigh quotient from the mixed start vector: |A v|^2 = 2.
        assert!((est.sigma - 2.0_f64.sqrt()).abs() < 1e-14);
        assert_eq!(est.previous_sigma, 0.0);
    }

    #[test]
    fn power_iteration_on_degenerate_matrices() {
        let zero = ComplexMatrix::from_rows(vec![vec![Complex64::ZERO; 3]; 3]).unwrap();
        let est = sigma_max(&zero, 100, 1e-12);
        assert!(est.converged);
        assert_eq!(est.sigma, 0.0);

        let id = ComplexMatrix::identity(5);
        let est = sigma_max(&id, 100, 1e-12);
        assert!(est.converged);
        assert!((est.sigma - 1.0).abs() < 1e-14);
    }

    #[test]
    fn squaring_monomial_makes_a_stride_two_matrix() {
        let s = Symbol::monomial(Complex64::ONE, 2, 4).unwrap();
        let cm = CompositionMatrix::new(&s, 4);
        for m in 0..=4 {
            for n in 0..=4 {
                let want = if n <= 2 && m == 2 * n {
                    Complex64::ONE
                } else {
                    Complex64::ZERO
                };
                assert_eq!(cm.entry(m, n), want, "entry ({m},{n})");
            }
        }
        let est = cm.sigma_max(10_000, 1e-12);
        assert!(est.converged);
        assert!((est.sigma - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rotation_section_is_diagonal_and_unitary() {
        let theta = 0.83;
        let s = Symbol::rotation(theta, 8).unwrap();
        let cm = CompositionMatrix::new(&s, 8);
        for m in 0..=8 {
            for n in 0..=8 {
                if m == n {
                    let want = Complex64::from_polar(1.0, theta * n as f64);
                    assert!((cm.entry(m, n) - want).norm() < 1e-13, "diag {n}");
                } else {
                    assert_eq!(cm.entry(m, n), Complex64::ZERO);
                }
            }
        }
        let est = cm.sigma_max(10_000, 1e-12);
        assert!((est.sigma - 1.0).abs() < 1e-12);
    }

    #[test]
    fn column_zero_is_always_the_first_unit_vector() {
        for s in [
            Symbol::moebius(c(0.4, 0.2), 16).unwrap(),
            Symbol::affine(c(0.5, 0.0), c(0.25, 0.0), 16).unwrap(),
            Symbol::rotation(2.0, 16).unwrap(),
        ] {
            let cm = CompositionMatrix::new(&s, 16);
            let col = cm.matrix().column(0);
            assert_eq!(col[0], Complex64::ONE);
            assert!(col[1..].iter().all(|&v| v == Complex64::ZERO));
            // Column 1 is the symbol itself, truncated.
            assert_eq!(cm.matrix().column(1), s.coeffs()[..17].to_vec());
        }
    }

    #[test]
    fn moebius_sigma_lands_between_the_closed_form_bounds() {
        let s = Symbol::moebius(c(0.5, 0.0), 64).unwrap();
        let est = CompositionMatrix::new(&s, 64).sigma_max(10_000, 1e-12);
        assert!(est.converged);
        assert!(
            est.sigma >= 1.1547 && est.sigma <= 3.4641,
            "sigma {}",
            est.sigma
        );
    }

    #[test]
    fn sigma_grows_with_the_truncation_degree() {
        let s = Symbol::affine(c(0.5, 0.0), c(0.25, 0.0), 32).unwrap();
        let mut last = 0.0;
        for n in [4, 8, 16, 32] {
            let est = CompositionMatrix::new(&s, n).sigma_max(10_000, 1e-12);
            assert!(est.sigma >= last - 1e-10, "degree {n}: {} < {last}", est.sigma);
            last = est.sigma;
        }
    }

    #[test]
    fn block_diagonal_with_the_conjugate_has_the_same_sigma() {
        let s = Symbol::moebius(c(0.3, 0.3), 12).unwrap();
        let a = CompositionMatrix::new(&s, 12).matrix().clone();
        let n = a.size();
        let mut rows = vec![vec![Complex64::ZERO; 2 * n]; 2 * n];
        for m in 0..n {
            for k in 0..n {
                rows[m][k] = a.entry(m, k);
                rows[n + m][n + k] = a.entry(m, k).conj();
            }
        }
        let block = ComplexMatrix::from_rows(rows).unwrap();
        let sa = sigma_max(&a, 10_000, 1e-12).sigma;
        let sb = sigma_max(&block, 10_000, 1e-12).sigma;
        assert!((sa - sb).abs() < 1e-9, "{sa} vs {sb}");
    }

    prop_compose! {
        fn arb_matrix(max_n: usize)(n in 2usize..max_n)(
            entries in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n),
            n in Just(n),
        ) -> ComplexMatrix {
            let rows = (0..n)
                .map(|i| (0..n).map(|j| {
                    let (re, im) = entries[i * n + j];
                    Complex64::new(re, im)
                }).collect())
                .collect();
            ComplexMatrix::from_rows(rows).unwrap()
        }
    }

    proptest! {
        #[test]
        fn sigma_dominates_random_rayleigh_quotients(
            a in arb_matrix(6),
            raw in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 6),
        ) {
            let n = a.size();
            let x: Vec<Complex64> = raw[..n].iter().map(|&(re, im)| Complex64::new(re, im)).collect();
            let xn = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            prop_assume!(xn > 1e-3);
            let ax = a.mul_vec(&x);
            let ratio = ax.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() / xn;
            let est = sigma_max(&a, 10_000, 1e-12);
            prop_assert!(ratio <= est.sigma + 1e-6 * (1.0 + est.sigma), "ratio {ratio} sigma {}", est.sigma);
        }

        #[test]
        fn adjoint_is_the_inner_product_transpose(
            a in arb_matrix(5),
            raw in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 10),
        ) {
            let n = a.size();
            let x: Vec<Complex64> = raw[..n].iter().map(|&(re, im)| Complex64::new(re, im)).collect();
            let y: Vec<Complex64> = raw[n..2 * n].iter().map(|&(re, im)| Complex64::new(re, im)).collect();
            let dot = |u: &[Complex64], v: &[Complex64]| -> Complex64 {
                u.iter().zip(v).map(|(&p, &q)| p * q.conj()).sum()
            };
            // <A x, y> = <x, A* y>.
            let lhs = dot(&a.mul_vec(&x), &y);
            let rhs = dot(&x, &a.adjoint_mul_vec(&y));
            prop_assert!((lhs - rhs).norm() <= 1e-12);
        }
    }
}
