//! Time-evolution symplectic matrix S(t) = s⁻¹ exp(Ω κ̃ t) s and the explicit
//! closed-form A/B coefficients of the two-mode problem.

use thiserror::Error;

use crate::hamiltonian::{symplectic_eigenvalues, HamiltonianMatrix, HamiltonianParams};
use crate::linalg::{block2, c, diag, ComplexMatrix, C64};
use crate::normal_modes::{
    mixing_angle, numeric_bogoliubov, top_blocks, BogoliubovPair, NormalModeError,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvolutionError {
    #[error("closed-form coefficients need λ_a = λ_b = 0")]
    NonzeroSqueezing,
    #[error(transparent)]
    NormalModes(#[from] NormalModeError),
}

/// X(t) = S(t) X(0), S = (A, B; B*, A*).
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionMatrix {
    pub t: f64,
    pub a: ComplexMatrix,
    pub b: ComplexMatrix,
    pub s: ComplexMatrix,
}

impl EvolutionMatrix {
    pub fn from_blocks(t: f64, a: ComplexMatrix, b: ComplexMatrix) -> Self {
        let s = block2(&a, &b, &b.conjugate(), &a.conjugate());
        Self { t, a, b, s }
    }

    /// Splits a full 2N×2N matrix; the lower blocks are assumed conjugate.
    pub fn from_full(t: f64, s: ComplexMatrix) -> Self {
        let (a, b) = top_blocks(&s);
        Self { t, a, b, s }
    }

    pub fn n_modes(&self) -> usize {
        self.a.nrows()
    }
}

fn phases(kappa: &[f64], t: f64) -> ComplexMatrix {
    let e: Vec<C64> = kappa.iter().map(|&k| C64::from_polar(1.0, -k * t)).collect();
    diag(&e)
}

/// A = α†Eα − βᵀE*β*, B = α†Eβ − βᵀE*α*, E = e^{−iκt}.
pub fn evolve_operator(pair: &BogoliubovPair, t: f64) -> EvolutionMatrix {
    let e = phases(&pair.kappa, t);
    let ec = e.conjugate();
    let (al, be) = (&pair.alpha, &pair.beta);
    let a = al.adjoint() * &e * al - be.transpose() * &ec * be.conjugate();
    let b = al.adjoint() * &e * be - be.transpose() * &ec * al.conjugate();
    EvolutionMatrix::from_blocks(t, a, b)
}

/// The ladder-operator action a(t) = A a + B a†, returned as (A, B).
pub fn heisenberg_transform(ev: &EvolutionMatrix) -> (ComplexMatrix, ComplexMatrix) {
    (ev.a.clone(), ev.b.clone())
}

/// S(t) for any stable 2N×2N Hamiltonian via the numeric pair.
pub fn evolve_operator_multimode(
    h: &HamiltonianMatrix,
    t: f64,
) -> Result<EvolutionMatrix, EvolutionError> {
    Ok(evolve_operator(&numeric_bogoliubov(h)?, t))
}

/// Explicit A₁₁…B₂₂ for g_bs = g_sq = g, λ = 0, ω_a ≠ ω_b.
pub fn explicit_coefficients(
    p: &HamiltonianParams,
    t: f64,
) -> Result<EvolutionMatrix, EvolutionError> {
    if p.lambda_a != 0.0 || p.lambda_b != 0.0 {
        return Err(EvolutionError::NonzeroSqueezing);
    }
    let theta = mixing_angle(p)?.theta;
    let spec = symplectic_eigenvalues(p);
    if !spec.stable || spec.kappa_minus <= 0.0 {
        return Err(NormalModeError::Unstable {
            min_eigenvalue: spec.kappa_minus_sq,
        }
        .into());
    }
    let (kp, km) = (spec.kappa_plus, spec.kappa_minus);
    let (wa, wb) = (p.omega_a, p.omega_b);
    let (cos2, sin2) = (theta.cos().powi(2), theta.sin().powi(2));
    let s2 = (2.0 * theta).sin();
    let r = (wa * wb).sqrt();
    let (cp, cm) = ((kp * t).cos(), (km * t).cos());
    let (sp, sm) = ((kp * t).sin(), (km * t).sin());

    let a11 = c(
        cos2 * cp + sin2 * cm,
        -0.5 * ((kp * kp + wa * wa) / (kp * wa) * cos2 * sp
            + (km * km + wa * wa) / (km * wa) * sin2 * sm),
    );
    let a12 = c(
        (wa + wb) / (4.0 * r) * s2 * (cp - cm),
        -s2 / (4.0 * r) * ((kp * kp + r * r) / kp * sp - (km * km + r * r) / km * sm),
    );
    let a22 = c(
        sin2 * cp + cos2 * cm,
        -0.5 * ((kp * kp + wb * wb) / (kp * wb) * sin2 * sp
            + (km * km + wb * wb) / (km * wb) * cos2 * sm),
    );
    let b11 = c(
        0.0,
        -0.5 * ((kp * kp - wa * wa) / (kp * wa) * cos2 * sp
            + (km * km - wa * wa) / (km * wa) * sin2 * sm),
    );
    let b12 = c(
        (wa - wb) / (4.0 * r) * s2 * (cp - cm),
        -s2 / (4.0 * r) * ((kp * kp - r * r) / kp * sp - (km * km - r * r) / km * sm),
    );
    let b22 = c(
        0.0,
        -0.5 * ((kp * kp - wb * wb) / (kp * wb) * sin2 * sp
            + (km * km - wb * wb) / (km * wb) * cos2 * sm),
    );
    let a = ComplexMatrix::from_row_slice(2, 2, &[a11, a12, a12, a22]);
    let b = ComplexMatrix::from_row_slice(2, 2, &[b11, b12, -b12.conj(), b22]);
    Ok(EvolutionMatrix::from_blocks(t, a, b))
}
