//! Bogoliubov pairs (α, β) that bring the Hamiltonian matrix to normal-mode
//! form H = s† diag(κ, κ) s with s = (α, β; β*, α*).

use nalgebra::DMatrix;
use thiserror::Error;

use crate::hamiltonian::{
    build_matrix, symplectic_eigenvalues, HamiltonianError, HamiltonianMatrix, HamiltonianParams,
};
use crate::linalg::{
    block2, c, diag, hermitian_eig, hermitian_sqrt, max_abs_diff, sub_block, ComplexMatrix,
    LinalgError, SymplecticForm, C64,
};

/// Relative frequency separation below which the analytic route is refused.
pub const RESONANCE_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NormalModeError {
    #[error("resonant frequencies (ω_a = ω_b); use the numeric route")]
    Resonance,
    #[error("analytic route needs g_bs = g_sq")]
    NotUltrastrong,
    #[error("analytic route needs ω > λ for both modes; use the numeric route")]
    SquareRootDomain,
    #[error("unstable Hamiltonian (smallest eigenvalue of H {min_eigenvalue:e})")]
    Unstable { min_eigenvalue: f64 },
    #[error("symplectic normalization failed: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Hamiltonian(#[from] HamiltonianError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Normal-mode blocks. Row k of (α, β) defines the normal-mode annihilator
/// c_k = Σ_j α_kj a_j + β_kj a_j†, with frequency `kappa[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BogoliubovPair {
    pub alpha: ComplexMatrix,
    pub beta: ComplexMatrix,
    pub kappa: Vec<f64>,
}

/// Largest residuals of the pair's defining identities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairResiduals {
    /// αα† − ββ† − 𝟙
    pub commutator: f64,
    /// αβᵀ − βαᵀ
    pub cross: f64,
    /// α†κα + βᵀκβ* − U
    pub u_constraint: f64,
    /// α†κβ + βᵀκα* − V
    pub v_constraint: f64,
}

impl PairResiduals {
    pub fn max(&self) -> f64 {
        self.commutator
            .max(self.cross)
            .max(self.u_constraint)
            .max(self.v_constraint)
    }
}

impl BogoliubovPair {
    pub fn n_modes(&self) -> usize {
        self.kappa.len()
    }

    pub fn kappa_matrix(&self) -> ComplexMatrix {
        let k: Vec<C64> = self.kappa.iter().map(|&x| c(x, 0.0)).collect();
        diag(&k)
    }

    /// s = (α, β; β*, α*).
    pub fn symplectic(&self) -> ComplexMatrix {
        block2(
            &self.alpha,
            &self.beta,
            &self.beta.conjugate(),
            &self.alpha.conjugate(),
        )
    }

    pub fn residuals(&self, h: &HamiltonianMatrix) -> PairResiduals {
        let n = self.n_modes();
        let (a, b) = (&self.alpha, &self.beta);
        let k = self.kappa_matrix();
        let eye = crate::linalg::identity(n);
        let zero = ComplexMatrix::zeros(n, n);
        PairResiduals {
            commutator: max_abs_diff(&(a * a.adjoint() - b * b.adjoint()), &eye),
            cross: max_abs_diff(&(a * b.transpose() - b * a.transpose()), &zero),
            u_constraint: max_abs_diff(
                &(a.adjoint() * &k * a + b.transpose() * &k * b.conjugate()),
                &h.u,
            ),
            v_constraint: max_abs_diff(
                &(a.adjoint() * &k * b + b.transpose() * &k * a.conjugate()),
                &h.v,
            ),
        }
    }

    /// Residual of the row form κα = αU − βV*, −κβ = βU* − αV.
    pub fn row_form_residual(&self, h: &HamiltonianMatrix) -> f64 {
        let (a, b) = (&self.alpha, &self.beta);
        let k = self.kappa_matrix();
        let first = max_abs_diff(&(a * &h.u - b * h.v.conjugate()), &(&k * a));
        let second = max_abs_diff(&(b * h.u.conjugate() - a * &h.v), &(-(&k * b)));
        first.max(second)
    }
}

/// Mixing angle θ and auxiliary Γ of the ultrastrong solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixingAngle {
    pub theta: f64,
    pub gamma: f64,
}

fn check_ultrastrong(p: &HamiltonianParams) -> Result<f64, NormalModeError> {
    p.validate()?;
    if !p.is_ultrastrong() {
        return Err(NormalModeError::NotUltrastrong);
    }
    if (p.omega_a - p.omega_b).abs() < RESONANCE_TOL * p.omega_a.max(p.omega_b) {
        return Err(NormalModeError::Resonance);
    }
    if p.omega_a <= p.lambda_a || p.omega_b <= p.lambda_b {
        return Err(NormalModeError::SquareRootDomain);
    }
    Ok(p.g_bs)
}

/// θ and Γ for g_bs = g_sq = g.
///
/// With w = ω − λ, the normal-mode rotation diagonalizes
/// diag(√w)·(U+V)·diag(√w), whose off-diagonal entry is 2g√(w_a w_b).
/// Hence 2θ = atan2(4g√(w_a w_b), A − B) and Γ = √((A−B)² + 16 w_a w_b g²),
/// A = ω_a² − λ_a², B = ω_b² − λ_b². Negative g gives negative θ.
pub fn mixing_angle(p: &HamiltonianParams) -> Result<MixingAngle, NormalModeError> {
    let g = check_ultrastrong(p)?;
    let wa = p.omega_a - p.lambda_a;
    let wb = p.omega_b - p.lambda_b;
    let a = p.omega_a.powi(2) - p.lambda_a.powi(2);
    let b = p.omega_b.powi(2) - p.lambda_b.powi(2);
    let off = 4.0 * g * (wa * wb).sqrt();
    Ok(MixingAngle {
        theta: 0.5 * off.atan2(a - b),
        gamma: ((a - b).powi(2) + off * off).sqrt(),
    })
}

/// Closed-form pair for g_bs = g_sq = g, ω_a ≠ ω_b, ω > λ:
/// α_kj = R_kj (κ_k + w_j)/(2√(κ_k w_j)), β_kj = R_kj (κ_k − w_j)/(2√(κ_k w_j)),
/// R = ((cos θ, sin θ), (sin θ, −cos θ)), w = ω − λ.
pub fn analytic_bogoliubov(p: &HamiltonianParams) -> Result<BogoliubovPair, NormalModeError> {
    let angle = mixing_angle(p)?;
    let spec = symplectic_eigenvalues(p);
    if !spec.stable || spec.kappa_minus <= 0.0 {
        let min = crate::linalg::hermitian_eig(&build_matrix(p).h)?.0[0];
        return Err(NormalModeError::Unstable {
            min_eigenvalue: min,
        });
    }
    let kappa = [spec.kappa_plus, spec.kappa_minus];
    let w = [p.omega_a - p.lambda_a, p.omega_b - p.lambda_b];
    let (s, co) = angle.theta.sin_cos();
    let rot = [[co, s], [s, -co]];
    let alpha = DMatrix::from_fn(2, 2, |k, j| {
        c(
            rot[k][j] * (kappa[k] + w[j]) / (2.0 * (kappa[k] * w[j]).sqrt()),
            0.0,
        )
    });
    let beta = DMatrix::from_fn(2, 2, |k, j| {
        c(
            rot[k][j] * (kappa[k] - w[j]) / (2.0 * (kappa[k] * w[j]).sqrt()),
            0.0,
        )
    });
    Ok(BogoliubovPair {
        alpha,
        beta,
        kappa: kappa.to_vec(),
    })
}

/// Symplectic diagonalization of any positive-definite 2N×2N Hamiltonian.
///
/// M = H^{1/2}(iΩ)H^{1/2} is Hermitian with eigenvalues ±κ. For each
/// positive eigenpair (κ_k, w_k) the row w_k†H^{1/2}/√κ_k is (α_k, β_k).
/// Modes are ordered by descending κ and each row is multiplied by the phase
/// that makes its largest-modulus α entry real and positive.
pub fn numeric_bogoliubov(h: &HamiltonianMatrix) -> Result<BogoliubovPair, NormalModeError> {
    let n = h.n_modes();
    let (h_eigs, _) = hermitian_eig(&h.h)?;
    let scale = h_eigs.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
    if h_eigs[0] <= 1e-13 * scale {
        return Err(NormalModeError::Unstable {
            min_eigenvalue: h_eigs[0],
        });
    }
    let root = hermitian_sqrt(&h.h)?;
    let reduced = &root * SymplecticForm::new(n).i_omega() * &root;
    let (values, vectors) = hermitian_eig(&reduced)?;

    let positive = values.iter().filter(|&&v| v > 0.0).count();
    if positive != n {
        return Err(NormalModeError::Degenerate(format!(
            "expected {n} positive frequencies, found {positive}"
        )));
    }
    let mut alpha = ComplexMatrix::zeros(n, n);
    let mut beta = ComplexMatrix::zeros(n, n);
    let mut kappa = Vec::with_capacity(n);
    // ascending order: the last n are the positive ones, reversed for descending κ
    for (k, idx) in (n..2 * n).rev().enumerate() {
        let kap = values[idx];
        let row = vectors.column(idx).adjoint() * &root / c(kap.sqrt(), 0.0);
        let pivot = (0..n)
            .max_by(|&i, &j| row[i].norm().total_cmp(&row[j].norm()).then(j.cmp(&i)))
            .expect("n > 0");
        let phase = row[pivot].conj() / row[pivot].norm();
        for j in 0..n {
            alpha[(k, j)] = row[j] * phase;
            beta[(k, j)] = row[n + j] * phase;
        }
        alpha[(k, pivot)] = c(alpha[(k, pivot)].re, 0.0);
        kappa.push(kap);
    }
    Ok(BogoliubovPair { alpha, beta, kappa })
}

/// Pair for ω_a = ω_b, where the closed forms divide by zero; delegates to
/// [`numeric_bogoliubov`].
pub fn resonance_bogoliubov(p: &HamiltonianParams) -> Result<BogoliubovPair, NormalModeError> {
    p.validate()?;
    if !p.is_ultrastrong() {
        return Err(NormalModeError::NotUltrastrong);
    }
    numeric_bogoliubov(&build_matrix(p))
}

/// Analytic pair when its preconditions hold, numeric pair otherwise.
pub fn bogoliubov(p: &HamiltonianParams) -> Result<BogoliubovPair, NormalModeError> {
    match analytic_bogoliubov(p) {
        Ok(pair) => Ok(pair),
        Err(NormalModeError::Unstable { min_eigenvalue }) => {
            Err(NormalModeError::Unstable { min_eigenvalue })
        }
        Err(_) => numeric_bogoliubov(&build_matrix(p)),
    }
}

/// Blocks of the N×N top-left/top-right parts of a 2N×2N matrix.
pub(crate) fn top_blocks(m: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = m.nrows() / 2;
    (sub_block(m, 0, 0, n, n), sub_block(m, 0, n, n, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decoupled_analytic_is_trivial() {
        let p = HamiltonianParams::ultrastrong(1.3, 0.7, 0.0, 0.0, 0.0).unwrap();
        let pair = analytic_bogoliubov(&p).unwrap();
        assert!(max_abs_diff(&pair.beta, &ComplexMatrix::zeros(2, 2)) < 1e-15);
        assert!((pair.alpha[(0, 0)].re - 1.0).abs() < 1e-15);
        assert!((pair.alpha[(1, 1)].re + 1.0).abs() < 1e-15);
    }

    #[test]
    fn resonance_is_refused_by_analytic_route() {
        let p = HamiltonianParams::ultrastrong(1.0, 1.0, 0.2, 0.0, 0.0).unwrap();
        assert_eq!(mixing_angle(&p), Err(NormalModeError::Resonance));
        assert!(resonance_bogoliubov(&p).is_ok());
    }

    #[test]
    fn numeric_decoupled_is_identity() {
        let p = HamiltonianParams::new(1.3, 0.7, 0.0, 0.0, 0.0, 0.0).unwrap();
        let pair = numeric_bogoliubov(&build_matrix(&p)).unwrap();
        assert!(max_abs_diff(&pair.alpha, &crate::linalg::identity(2)) < 1e-14);
        assert!(max_abs_diff(&pair.beta, &ComplexMatrix::zeros(2, 2)) < 1e-14);
        assert!((pair.kappa[0] - 1.3).abs() < 1e-14 && (pair.kappa[1] - 0.7).abs() < 1e-14);
    }

    #[test]
    fn numeric_rejects_unstable() {
        let p = HamiltonianParams::ultrastrong(1.3, 0.7, 0.6, 0.0, 0.0).unwrap();
        assert!(matches!(
            numeric_bogoliubov(&build_matrix(&p)),
            Err(NormalModeError::Unstable { .. })
        ));
        assert!(matches!(
            analytic_bogoliubov(&p),
            Err(NormalModeError::Unstable { .. })
        ));
    }

    #[test]
    fn sqrt_domain_error() {
        let p = HamiltonianParams::ultrastrong(1.3, 0.7, 0.1, 1.5, 0.0).unwrap();
        assert_eq!(
            analytic_bogoliubov(&p),
            Err(NormalModeError::SquareRootDomain)
        );
    }
}
