//! Dense complex linear algebra: products, the matrix exponential oracle,
//! and eigen-solvers for the small (≤ 32×32) matrices used throughout.

use nalgebra::{DMatrix, Schur, SymmetricEigen};
use num_complex::Complex64;
use thiserror::Error;

pub type C64 = Complex64;

/// Row-major semantics, column-major storage (nalgebra).
pub type ComplexMatrix = DMatrix<C64>;

/// Default truncation tolerance of [`expm`].
pub const EXPM_TOL: f64 = 1e-12;

/// Relative eigen-residual accepted by [`eig`].
pub const EIG_RESIDUAL: f64 = 1e-10;

const SCHUR_MAX_ITER: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("dimension mismatch: {left_rows}x{left_cols} times {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("expected {expected} entries, got {got}")]
    EntryCount { expected: usize, got: usize },
    #[error("non-finite entry")]
    NonFinite,
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("eigen-solver did not converge (residual {residual:e})")]
    NoConvergence { residual: f64 },
    #[error("matrix is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },
    #[error("matrix is singular")]
    Singular,
}

pub type Result<T> = std::result::Result<T, LinalgError>;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Builds a matrix from row-major entries, rejecting NaN/Inf.
pub fn matrix(rows: usize, cols: usize, row_major: &[C64]) -> Result<ComplexMatrix> {
    if rows * cols != row_major.len() {
        return Err(LinalgError::EntryCount {
            expected: rows * cols,
            got: row_major.len(),
        });
    }
    if row_major.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(LinalgError::NonFinite);
    }
    Ok(DMatrix::from_row_slice(rows, cols, row_major))
}

/// Real matrix from row-major entries. Panics on a length mismatch.
pub fn real_matrix(rows: usize, cols: usize, row_major: &[f64]) -> ComplexMatrix {
    assert_eq!(rows * cols, row_major.len(), "entry count");
    DMatrix::from_fn(rows, cols, |i, j| c(row_major[i * cols + j], 0.0))
}

pub fn identity(n: usize) -> ComplexMatrix {
    DMatrix::identity(n, n)
}

pub fn diag(entries: &[C64]) -> ComplexMatrix {
    DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(entries))
}

/// The symplectic form Ω = −i·diag(𝟙_N, −𝟙_N) in the (a, a†) ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticForm {
    pub n_modes: usize,
    pub matrix: ComplexMatrix,
}

impl SymplecticForm {
    pub fn new(n_modes: usize) -> Self {
        let matrix = DMatrix::from_fn(2 * n_modes, 2 * n_modes, |i, j| {
            match (i == j, i < n_modes) {
                (true, true) => c(0.0, -1.0),
                (true, false) => c(0.0, 1.0),
                _ => C64::default(),
            }
        });
        Self { n_modes, matrix }
    }

    /// iΩ = diag(𝟙_N, −𝟙_N).
    pub fn i_omega(&self) -> ComplexMatrix {
        &self.matrix * c(0.0, 1.0)
    }
}

pub fn symplectic_form(n_modes: usize) -> ComplexMatrix {
    SymplecticForm::new(n_modes).matrix
}

pub fn matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.ncols() != b.nrows() {
        return Err(LinalgError::DimensionMismatch {
            left_rows: a.nrows(),
            left_cols: a.ncols(),
            right_rows: b.nrows(),
            right_cols: b.ncols(),
        });
    }
    Ok(a * b)
}

fn ensure_square(m: &ComplexMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(LinalgError::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(m.nrows())
}

/// Induced 1-norm (maximum absolute column sum).
pub fn norm_one(m: &ComplexMatrix) -> f64 {
    m.column_iter()
        .map(|col| col.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Largest entry modulus.
pub fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest entrywise distance. Panics if shapes differ.
pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Assembles the 2×2 block matrix (a, b; c, d).
pub fn block2(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c_: &ComplexMatrix,
    d: &ComplexMatrix,
) -> ComplexMatrix {
    let (n, m) = (a.nrows(), a.ncols());
    let mut out = DMatrix::zeros(n + c_.nrows(), m + b.ncols());
    out.view_mut((0, 0), (n, m)).copy_from(a);
    out.view_mut((0, m), (n, b.ncols())).copy_from(b);
    out.view_mut((n, 0), (c_.nrows(), m)).copy_from(c_);
    out.view_mut((n, m), (d.nrows(), d.ncols())).copy_from(d);
    out
}

/// Copies the block starting at (row, col) with the given shape.
pub fn sub_block(
    m: &ComplexMatrix,
    row: usize,
    col: usize,
    rows: usize,
    cols: usize,
) -> ComplexMatrix {
    m.view((row, col), (rows, cols)).into_owned()
}

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
///
/// The argument is scaled by 2^{-s} until ‖m‖₁/2^s ≤ 1/2, and the number of
/// Taylor terms K is fixed a priori so that the remainder bound
/// x^{K+1}/(K+1)! · 1/(1 − x/(K+2)) stays below `tol`·2^{-s}. After s squarings
/// the truncation error is then at most `tol`·e^{‖m‖₁} to first order.
///
/// # Errors
/// Non-square input or a non-positive tolerance.
pub fn expm(m: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    let n = ensure_square(m)?;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(LinalgError::InvalidTolerance(tol));
    }
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(LinalgError::NonFinite);
    }
    let norm = norm_one(m);
    let mut squarings = 0u32;
    while norm / 2f64.powi(squarings as i32) > 0.5 {
        squarings += 1;
    }
    let x = norm / 2f64.powi(squarings as i32);
    let target = tol / 2f64.powi(squarings as i32);

    let mut terms = 1usize;
    let mut term = x; // x^{K+1}/(K+1)! for K = terms - 1 ... updated below
    loop {
        term *= x / (terms as f64 + 1.0);
        let bound = term / (1.0 - x / (terms as f64 + 2.0));
        if bound <= target || terms >= 60 {
            break;
        }
        terms += 1;
    }

    let scaled = m * c(2f64.powi(-(squarings as i32)), 0.0);
    let eye = identity(n);
    // Horner: I + X(I + X/2(I + X/3(...)))
    let mut acc = eye.clone();
    for k in (1..=terms).rev() {
        acc = &eye + (&scaled * &acc) * c(1.0 / k as f64, 0.0);
    }
    for _ in 0..squarings {
        acc = &acc * &acc;
    }
    Ok(acc)
}

/// Eigen-decomposition of a general square matrix.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<C64>,
    /// Unit-norm eigenvectors as columns, in the order of `values`.
    pub vectors: ComplexMatrix,
}

/// Eigenvalues and eigenvectors of a general complex matrix via the complex
/// Schur form m = Q T Q† and back-substitution on T.
///
/// # Errors
/// Non-square input, or a pair whose residual ‖m v − λ v‖ exceeds
/// 1e−10·max(‖m‖₁, 1).
pub fn eig(m: &ComplexMatrix) -> Result<Eigen> {
    let n = ensure_square(m)?;
    if n == 0 {
        return Ok(Eigen {
            values: Vec::new(),
            vectors: DMatrix::zeros(0, 0),
        });
    }
    let scale = norm_one(m).max(f64::MIN_POSITIVE);
    let schur = Schur::try_new(m.clone(), f64::EPSILON, SCHUR_MAX_ITER)
        .ok_or(LinalgError::NoConvergence { residual: f64::NAN })?;
    let (q, t) = schur.unpack();
    let values: Vec<C64> = (0..n).map(|i| t[(i, i)]).collect();

    let tiny = f64::EPSILON * scale;
    let mut y = DMatrix::<C64>::zeros(n, n);
    for k in 0..n {
        let lambda = t[(k, k)];
        y[(k, k)] = c(1.0, 0.0);
        for i in (0..k).rev() {
            let mut sum = C64::default();
            for j in i + 1..=k {
                sum += t[(i, j)] * y[(j, k)];
            }
            let mut denom = t[(i, i)] - lambda;
            if denom.norm() < tiny {
                denom = c(tiny, 0.0);
            }
            y[(i, k)] = -sum / denom;
        }
    }
    let mut vectors = q * y;
    for mut col in vectors.column_iter_mut() {
        let norm = col.norm();
        col /= c(norm, 0.0);
    }

    let limit = EIG_RESIDUAL * scale.max(1.0);
    let mut worst = 0.0f64;
    for (k, lambda) in values.iter().enumerate() {
        let v = vectors.column(k);
        let r = (m * v - v * *lambda).norm();
        worst = worst.max(r);
    }
    if worst > limit {
        return Err(LinalgError::NoConvergence { residual: worst });
    }
    Ok(Eigen { values, vectors })
}

/// Eigen-decomposition of a Hermitian matrix: ascending real eigenvalues and
/// orthonormal eigenvectors (columns, same order).
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let n = ensure_square(m)?;
    let herm = (m + m.adjoint()) * c(0.5, 0.0);
    let se = SymmetricEigen::try_new(herm, f64::EPSILON, 0)
        .ok_or(LinalgError::NoConvergence { residual: f64::NAN })?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| se.eigenvalues[i].total_cmp(&se.eigenvalues[j]));
    let values = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, k| se.eigenvectors[(r, order[k])]);
    Ok((values, vectors))
}

/// Ascending eigenvalues of a real symmetric matrix given row-major.
pub fn symmetric_eigenvalues(n: usize, row_major: &[f64]) -> Result<Vec<f64>> {
    if row_major.len() != n * n {
        return Err(LinalgError::EntryCount {
            expected: n * n,
            got: row_major.len(),
        });
    }
    let m = DMatrix::from_row_slice(n, n, row_major);
    let mut values: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Principal square root of a Hermitian positive-definite matrix.
pub fn hermitian_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (values, vectors) = hermitian_eig(m)?;
    let min = values.first().copied().unwrap_or(1.0);
    let scale = values.last().copied().unwrap_or(1.0).abs().max(1.0);
    if min <= 1e-14 * scale {
        return Err(LinalgError::NotPositiveDefinite {
            min_eigenvalue: min,
        });
    }
    let root: Vec<C64> = values.iter().map(|v| c(v.sqrt(), 0.0)).collect();
    Ok(&vectors * diag(&root) * vectors.adjoint())
}

/// Symplectic eigenvalues of a 2N×2N matrix: the moduli of the spectrum of
/// iΩm collapsed to N values, sorted descending.
///
/// Hermitian positive-definite input goes through the Hermitian similarity
/// m^{1/2}(iΩ)m^{1/2}; anything else through [`eig`].
pub fn symplectic_spectrum(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let dim = ensure_square(m)?;
    assert!(dim % 2 == 0, "symplectic spectrum needs an even dimension");
    let form = SymplecticForm::new(dim / 2);
    let hermitian = max_abs_diff(m, &m.adjoint()) <= 1e-12 * max_abs(m).max(1.0);
    let mut moduli: Vec<f64> = match hermitian.then(|| hermitian_sqrt(m)) {
        Some(Ok(root)) => {
            let reduced = &root * form.i_omega() * &root;
            hermitian_eig(&reduced)?.0.iter().map(|v| v.abs()).collect()
        }
        _ => eig(&(form.i_omega() * m))?
            .values
            .iter()
            .map(|z| z.norm())
            .collect(),
    };
    moduli.sort_by(|a, b| b.total_cmp(a));
    // (+κ, −κ) pairs: keep one of each
    Ok(moduli.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect())
}

/// Inverse by LU factorization.
pub fn inverse(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    ensure_square(m)?;
    m.clone().lu().try_inverse().ok_or(LinalgError::Singular)
}
