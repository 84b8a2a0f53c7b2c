//! Gaussian states as first moments d = ⟨X⟩ and second moments
//! σ_nm = ⟨{X_n, X_m†}⟩ − 2⟨X_n⟩⟨X_m†⟩, normalized so the vacuum has σ = 𝟙.

use nalgebra::DVector;
use thiserror::Error;

use crate::evolution::{evolve_operator, EvolutionMatrix};
use crate::linalg::{
    block2, c, diag, max_abs, max_abs_diff, symplectic_spectrum, ComplexMatrix, LinalgError, C64,
};
use crate::normal_modes::BogoliubovPair;

/// Tolerance on ν ≥ 1.
pub const PHYSICAL_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GaussianError {
    #[error("need at least one mode")]
    NoModes,
    #[error("unphysical state (smallest symplectic eigenvalue {min_nu})")]
    Unphysical { min_nu: f64 },
    #[error("dimension mismatch: state has {state} modes, operation {other}")]
    DimensionMismatch { state: usize, other: usize },
    #[error("mode index {index} out of range for {n_modes} modes")]
    ModeIndex { index: usize, n_modes: usize },
    #[error("operation needs a two-mode state, got {0} modes")]
    NotTwoMode(usize),
    #[error("covariance matrix is not Hermitian")]
    NotHermitian,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    pub n_modes: usize,
    pub d: DVector<C64>,
    pub sigma: ComplexMatrix,
}

/// Reduced-state and partial-transpose summary of a two-mode state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementReport {
    pub nu_reduced: f64,
    pub s_vn: f64,
    pub nu_tilde_minus: f64,
    pub entangled: bool,
}

impl GaussianState {
    /// Validates shape and Hermiticity; physicality is checked separately by
    /// [`williamson_eigenvalues`].
    pub fn new(d: DVector<C64>, sigma: ComplexMatrix) -> Result<Self, GaussianError> {
        let dim = sigma.nrows();
        if dim == 0 || !dim.is_multiple_of(2) || sigma.ncols() != dim {
            return Err(GaussianError::NoModes);
        }
        if d.len() != dim {
            return Err(GaussianError::DimensionMismatch {
                state: dim / 2,
                other: d.len() / 2,
            });
        }
        if max_abs_diff(&sigma, &sigma.adjoint()) > 1e-12 * max_abs(&sigma).max(1.0) {
            return Err(GaussianError::NotHermitian);
        }
        Ok(Self {
            n_modes: dim / 2,
            d,
            sigma,
        })
    }

    /// Builds σ = (𝒰, 𝒱; 𝒱*, 𝒰*) with zero first moments.
    pub fn from_blocks(u: &ComplexMatrix, v: &ComplexMatrix) -> Result<Self, GaussianError> {
        let sigma = block2(u, v, &v.conjugate(), &u.conjugate());
        Self::new(DVector::zeros(sigma.nrows()), sigma)
    }

    /// (𝒰, 𝒱): the top-left and top-right N×N blocks of σ.
    pub fn blocks(&self) -> (ComplexMatrix, ComplexMatrix) {
        let n = self.n_modes;
        (
            self.sigma.view((0, 0), (n, n)).into_owned(),
            self.sigma.view((0, n), (n, n)).into_owned(),
        )
    }
}

pub fn vacuum(n: usize) -> Result<GaussianState, GaussianError> {
    if n == 0 {
        return Err(GaussianError::NoModes);
    }
    GaussianState::new(DVector::zeros(2 * n), crate::linalg::identity(2 * n))
}

/// 𝒰 = diag(ν₊, ν₋), 𝒱 = 0.
pub fn thermal(nu_plus: f64, nu_minus: f64) -> Result<GaussianState, GaussianError> {
    for nu in [nu_plus, nu_minus] {
        if !nu.is_finite() || nu < 1.0 - PHYSICAL_TOL {
            return Err(GaussianError::Unphysical { min_nu: nu });
        }
    }
    let u = diag(&[c(nu_plus, 0.0), c(nu_minus, 0.0)]);
    GaussianState::from_blocks(&u, &ComplexMatrix::zeros(2, 2))
}

/// Two-mode squeezed vacuum exp(r(a†b† − ab))|0⟩:
/// 𝒰 = cosh 2r·𝟙, 𝒱 = sinh 2r·σ_x. Its reduced states have ν = cosh 2r and
/// its partial transpose ν̃₋ = e^{−2|r|}.
pub fn two_mode_squeezed(r: f64) -> Result<GaussianState, GaussianError> {
    if !r.is_finite() {
        return Err(GaussianError::Unphysical { min_nu: f64::NAN });
    }
    let (ch, sh) = ((2.0 * r).cosh(), (2.0 * r).sinh());
    let u = diag(&[c(ch, 0.0), c(ch, 0.0)]);
    let v = ComplexMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(sh, 0.0), c(sh, 0.0), c(0.0, 0.0)]);
    GaussianState::from_blocks(&u, &v)
}

/// σ → S σ S†, d → S d.
pub fn propagate(state: &GaussianState, ev: &EvolutionMatrix) -> Result<GaussianState, GaussianError> {
    if ev.n_modes() != state.n_modes {
        return Err(GaussianError::DimensionMismatch {
            state: state.n_modes,
            other: ev.n_modes(),
        });
    }
    let sigma = &ev.s * &state.sigma * ev.s.adjoint();
    // re-symmetrize round-off so Hermiticity is exact
    let sigma = (&sigma + sigma.adjoint()) * c(0.5, 0.0);
    Ok(GaussianState {
        n_modes: state.n_modes,
        d: &ev.s * &state.d,
        sigma,
    })
}

/// Total excitations Σ_k ⟨a_k†a_k⟩ = Σ_k (σ_kk + σ_{k+N,k+N} − 2)/4 + |d_k|²;
/// Tr σ/4 − 1 for two modes with d = 0.
pub fn excitation_number(state: &GaussianState) -> f64 {
    let n = state.n_modes;
    (0..n)
        .map(|k| {
            (state.sigma[(k, k)].re + state.sigma[(k + n, k + n)].re - 2.0) / 4.0
                + state.d[k].norm_sqr()
        })
        .sum()
}

/// Excitations created from the vacuum, in terms of the pair alone:
/// N = 2Tr(ββ†) + 2Tr(ββ†Eββ†E*) − 2Re Tr((βαᵀ)*E(βαᵀ)E), E = e^{−iκt}.
pub fn vacuum_excitations_closed_form(pair: &BogoliubovPair, t: f64) -> Result<f64, GaussianError> {
    if pair.n_modes() != 2 {
        return Err(GaussianError::NotTwoMode(pair.n_modes()));
    }
    let e: Vec<C64> = pair.kappa.iter().map(|&k| C64::from_polar(1.0, -k * t)).collect();
    let e = diag(&e);
    let ec = e.conjugate();
    let bb = &pair.beta * pair.beta.adjoint();
    let ba = &pair.beta * pair.alpha.transpose();
    let n = 2.0 * bb.trace().re + 2.0 * (&bb * &e * &bb * &ec).trace().re
        - 2.0 * (ba.conjugate() * &e * &ba * &e).trace().re;
    Ok(n)
}

/// Keeps one mode: rows/columns k and k+N.
pub fn reduce(state: &GaussianState, keep: usize) -> Result<GaussianState, GaussianError> {
    let n = state.n_modes;
    if keep >= n {
        return Err(GaussianError::ModeIndex {
            index: keep,
            n_modes: n,
        });
    }
    let idx = [keep, keep + n];
    let sigma = ComplexMatrix::from_fn(2, 2, |i, j| state.sigma[(idx[i], idx[j])]);
    let d = DVector::from_fn(2, |i, _| state.d[idx[i]]);
    Ok(GaussianState {
        n_modes: 1,
        d,
        sigma,
    })
}

/// Symplectic eigenvalues ν of σ, descending.
pub fn williamson_eigenvalues(sigma: &ComplexMatrix) -> Result<Vec<f64>, GaussianError> {
    let nus = symplectic_spectrum(sigma).map_err(|e| match e {
        LinalgError::NotPositiveDefinite { min_eigenvalue } => GaussianError::Unphysical {
            min_nu: min_eigenvalue,
        },
        other => other.into(),
    })?;
    let min = nus.last().copied().unwrap_or(1.0);
    if min < 1.0 - PHYSICAL_TOL {
        return Err(GaussianError::Unphysical { min_nu: min });
    }
    Ok(nus)
}

/// S = f₊(ν) − f₋(ν), f±(ν) = ((ν±1)/2)·ln((ν±1)/2), in nats.
pub fn entropy(nu: f64) -> f64 {
    let f = |x: f64| if x > 0.0 { x * x.ln() } else { 0.0 };
    (f((nu + 1.0) / 2.0) - f((nu - 1.0) / 2.0)).max(0.0)
}

/// Partial transpose of mode b: swaps the rows/columns of b and b†.
pub fn partial_transpose(sigma: &ComplexMatrix) -> ComplexMatrix {
    let perm = [0usize, 3, 2, 1];
    ComplexMatrix::from_fn(4, 4, |i, j| sigma[(perm[i], perm[j])])
}

pub fn entanglement_report(state: &GaussianState) -> Result<EntanglementReport, GaussianError> {
    if state.n_modes != 2 {
        return Err(GaussianError::NotTwoMode(state.n_modes));
    }
    let nu_reduced = williamson_eigenvalues(&reduce(state, 0)?.sigma)?[0];
    let nu_tilde_minus = *symplectic_spectrum(&partial_transpose(&state.sigma))?
        .last()
        .expect("two modes");
    Ok(EntanglementReport {
        nu_reduced,
        s_vn: entropy(nu_reduced),
        nu_tilde_minus,
        entangled: nu_tilde_minus < 1.0 - PHYSICAL_TOL,
    })
}

/// Vacuum evolved by the pair to time t.
pub fn evolved_vacuum(pair: &BogoliubovPair, t: f64) -> Result<GaussianState, GaussianError> {
    propagate(&vacuum(pair.n_modes())?, &evolve_operator(pair, t))
}
