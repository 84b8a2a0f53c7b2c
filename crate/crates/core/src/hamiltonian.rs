//! The two-mode quadratic Hamiltonian, its symplectic eigenvalues and the
//! critical coupling at which the lower normal mode softens to zero.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{block2, c, max_abs_diff, real_matrix, ComplexMatrix};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HamiltonianError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("epsilon {0} outside the near-critical regime |ε| < 0.5")]
    OutOfRegime(f64),
    #[error("need at least 3 samples for a fit, got {0}")]
    TooFewSamples(usize),
    #[error("epsilon {0} outside (0, 0.01]")]
    BadEpsilon(f64),
    #[error("parameters are not in the ultrastrong form g_bs = g_sq")]
    NotUltrastrong,
    #[error("no stable side: critical coupling is zero")]
    NoStableRegion,
    #[error("block structure invalid: {0}")]
    InvalidBlocks(String),
}

/// Couplings of H = ω_a a†a + ω_b b†b + g_bs(a†b + ab†) + g_sq(a†b† + ab)
/// + (λ_a/2)(a†² + a²) + (λ_b/2)(b†² + b²), with ħ = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianParams {
    pub omega_a: f64,
    pub omega_b: f64,
    #[serde(default)]
    pub g_bs: f64,
    #[serde(default)]
    pub g_sq: f64,
    #[serde(default)]
    pub lambda_a: f64,
    #[serde(default)]
    pub lambda_b: f64,
}

impl HamiltonianParams {
    pub fn new(
        omega_a: f64,
        omega_b: f64,
        g_bs: f64,
        g_sq: f64,
        lambda_a: f64,
        lambda_b: f64,
    ) -> Result<Self, HamiltonianError> {
        let p = Self {
            omega_a,
            omega_b,
            g_bs,
            g_sq,
            lambda_a,
            lambda_b,
        };
        p.validate()?;
        Ok(p)
    }

    /// g_bs = g_sq = g.
    pub fn ultrastrong(
        omega_a: f64,
        omega_b: f64,
        g: f64,
        lambda_a: f64,
        lambda_b: f64,
    ) -> Result<Self, HamiltonianError> {
        Self::new(omega_a, omega_b, g, g, lambda_a, lambda_b)
    }

    pub fn validate(&self) -> Result<(), HamiltonianError> {
        let fields = [
            self.omega_a,
            self.omega_b,
            self.g_bs,
            self.g_sq,
            self.lambda_a,
            self.lambda_b,
        ];
        if fields.iter().any(|x| !x.is_finite()) {
            return Err(HamiltonianError::InvalidParams(
                "all parameters must be finite".into(),
            ));
        }
        if self.omega_a <= 0.0 || self.omega_b <= 0.0 {
            return Err(HamiltonianError::InvalidParams(
                "frequencies must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn with_g(self, g: f64) -> Self {
        Self {
            g_bs: g,
            g_sq: g,
            ..self
        }
    }

    pub fn is_ultrastrong(&self) -> bool {
        self.g_bs == self.g_sq
    }

    /// Returns the common coupling when g_bs = g_sq.
    pub fn ultrastrong_g(&self) -> Result<f64, HamiltonianError> {
        if self.is_ultrastrong() {
            Ok(self.g_bs)
        } else {
            Err(HamiltonianError::NotUltrastrong)
        }
    }
}

/// H = (U, V; V*, U*) in the (a, b, a†, b†) ordering, H = ½ X†·H·X.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianMatrix {
    pub u: ComplexMatrix,
    pub v: ComplexMatrix,
    pub h: ComplexMatrix,
}

impl HamiltonianMatrix {
    /// Assembles H from an N×N Hermitian U and symmetric V.
    pub fn from_blocks(u: ComplexMatrix, v: ComplexMatrix) -> Result<Self, HamiltonianError> {
        let n = u.nrows();
        if u.ncols() != n || v.shape() != (n, n) || n == 0 {
            return Err(HamiltonianError::InvalidBlocks(
                "U and V must be square and equally sized".into(),
            ));
        }
        let scale = crate::linalg::max_abs(&u).max(crate::linalg::max_abs(&v)).max(1.0);
        if max_abs_diff(&u, &u.adjoint()) > 1e-12 * scale {
            return Err(HamiltonianError::InvalidBlocks("U is not Hermitian".into()));
        }
        if max_abs_diff(&v, &v.transpose()) > 1e-12 * scale {
            return Err(HamiltonianError::InvalidBlocks("V is not symmetric".into()));
        }
        let h = block2(&u, &v, &v.conjugate(), &u.conjugate());
        Ok(Self { u, v, h })
    }

    pub fn n_modes(&self) -> usize {
        self.u.nrows()
    }
}

pub fn build_matrix(p: &HamiltonianParams) -> HamiltonianMatrix {
    let u = real_matrix(2, 2, &[p.omega_a, p.g_bs, p.g_bs, p.omega_b]);
    let v = real_matrix(2, 2, &[p.lambda_a, p.g_sq, p.g_sq, p.lambda_b]);
    HamiltonianMatrix::from_blocks(u, v).expect("real symmetric blocks")
}

/// Normal-mode frequencies κ₊ ≥ κ₋.
///
/// `kappa_plus_sq` and `kappa_minus_sq` are the real parts of the two roots;
/// when `stable` is false the κ fields are clamped at zero and the squared
/// values (or `discriminant` < 0) carry the information.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymplecticSpectrum {
    pub kappa_plus: f64,
    pub kappa_minus: f64,
    pub kappa_plus_sq: f64,
    pub kappa_minus_sq: f64,
    pub discriminant: f64,
    pub stable: bool,
}

/// κ±² = (T ± √(T² − 4D))/2 with T = tr(U² − V²) and D = det H.
///
/// For real blocks D factorizes as det(U+V)·det(U−V). The smaller root is
/// evaluated as 2D/(T + √·) to keep full relative precision near criticality.
pub fn symplectic_eigenvalues(p: &HamiltonianParams) -> SymplecticSpectrum {
    let HamiltonianParams {
        omega_a: wa,
        omega_b: wb,
        g_bs,
        g_sq,
        lambda_a: la,
        lambda_b: lb,
    } = *p;
    let t = wa * wa + wb * wb + 2.0 * (g_bs * g_bs - g_sq * g_sq) - la * la - lb * lb;
    let det_plus = (wa + la) * (wb + lb) - (g_bs + g_sq).powi(2);
    let det_minus = (wa - la) * (wb - lb) - (g_bs - g_sq).powi(2);
    let d = det_plus * det_minus;
    let discriminant = t * t - 4.0 * d;

    let (plus_sq, minus_sq) = if discriminant >= 0.0 {
        let root = discriminant.sqrt();
        if t > 0.0 {
            let plus = 0.5 * (t + root);
            (plus, d / plus)
        } else {
            let minus = 0.5 * (t - root);
            (if minus != 0.0 { d / minus } else { 0.5 * (t + root) }, minus)
        }
    } else {
        (0.5 * t, 0.5 * t)
    };
    let stable = discriminant >= 0.0 && minus_sq >= 0.0 && plus_sq >= 0.0;
    SymplecticSpectrum {
        kappa_plus: plus_sq.max(0.0).sqrt(),
        kappa_minus: minus_sq.max(0.0).sqrt(),
        kappa_plus_sq: plus_sq,
        kappa_minus_sq: minus_sq,
        discriminant,
        stable,
    }
}

/// Coupling g_cr at which κ₋ reaches zero for g_bs = g_sq = g.
///
/// det H = (ω_a−λ_a)(ω_b−λ_b)·((ω_a+λ_a)(ω_b+λ_b) − 4g²), hence
/// g_cr = ½√((ω_a+λ_a)(ω_b+λ_b)), which is √(ω_aω_b)/2 when λ = 0. Returns 0
/// when a mode is unstable on its own (ω ≤ |λ|). The g fields are ignored.
pub fn critical_coupling(p: &HamiltonianParams) -> Result<f64, HamiltonianError> {
    p.validate()?;
    if p.omega_a <= p.lambda_a.abs() || p.omega_b <= p.lambda_b.abs() {
        return Ok(0.0);
    }
    Ok(0.5 * ((p.omega_a + p.lambda_a) * (p.omega_b + p.lambda_b)).sqrt())
}

/// First-order expansion around g = g_cr(1 − ε): returns (κ₊², κ₋) with
/// κ₋ ≈ √(2AB/(A+B))·√|ε| and κ₊² ≈ (A+B) − 2εAB/(A+B),
/// A = ω_a² − λ_a², B = ω_b² − λ_b².
///
/// For ε < 0 (beyond criticality) κ₋ is the modulus of the imaginary root.
pub fn near_critical_expansion(
    p: &HamiltonianParams,
    epsilon: f64,
) -> Result<(f64, f64), HamiltonianError> {
    if epsilon.is_nan() || epsilon.abs() >= 0.5 {
        return Err(HamiltonianError::OutOfRegime(epsilon));
    }
    if critical_coupling(p)? == 0.0 {
        return Err(HamiltonianError::NoStableRegion);
    }
    let a = p.omega_a.powi(2) - p.lambda_a.powi(2);
    let b = p.omega_b.powi(2) - p.lambda_b.powi(2);
    let kappa_plus_sq = (a + b) - 2.0 * epsilon * a * b / (a + b);
    let kappa_minus = (2.0 * a * b / (a + b) * epsilon.abs()).sqrt();
    Ok((kappa_plus_sq, kappa_minus))
}

/// Least-squares fit of ln κ₋ against ln|g − g_cr| using exact eigenvalues at
/// g = g_cr(1 − ε). Returns (exponent, prefactor).
pub fn critical_exponent_fit(
    p: &HamiltonianParams,
    epsilons: &[f64],
) -> Result<(f64, f64), HamiltonianError> {
    if epsilons.len() < 3 {
        return Err(HamiltonianError::TooFewSamples(epsilons.len()));
    }
    if let Some(&bad) = epsilons.iter().find(|&&e| !(e > 0.0 && e <= 0.01)) {
        return Err(HamiltonianError::BadEpsilon(bad));
    }
    let g_cr = critical_coupling(p)?;
    if g_cr == 0.0 {
        return Err(HamiltonianError::NoStableRegion);
    }
    let points: Vec<(f64, f64)> = epsilons
        .iter()
        .map(|&e| {
            let g = g_cr * (1.0 - e);
            let k = symplectic_eigenvalues(&p.with_g(g)).kappa_minus;
            ((g_cr - g).ln(), k.ln())
        })
        .collect();
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    Ok((slope, (my - slope * mx).exp()))
}

/// H for an N-mode chain with nearest-neighbour position coupling
/// g_k (x_k x_{k+1}), x = a + a†: U_{k,k+1} = V_{k,k+1} = g_k.
pub fn position_chain(omegas: &[f64], couplings: &[f64]) -> Result<HamiltonianMatrix, HamiltonianError> {
    let n = omegas.len();
    if n == 0 || couplings.len() + 1 != n {
        return Err(HamiltonianError::InvalidBlocks(
            "need N frequencies and N−1 couplings".into(),
        ));
    }
    let mut u = ComplexMatrix::zeros(n, n);
    let mut v = ComplexMatrix::zeros(n, n);
    for (k, &w) in omegas.iter().enumerate() {
        u[(k, k)] = c(w, 0.0);
    }
    for (k, &g) in couplings.iter().enumerate() {
        for (i, j) in [(k, k + 1), (k + 1, k)] {
            u[(i, j)] = c(g, 0.0);
            v[(i, j)] = c(g, 0.0);
        }
    }
    HamiltonianMatrix::from_blocks(u, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_hamiltonian_blocks() {
        let p = HamiltonianParams::new(1.0, 1.0, 0.0, 0.0, 0.0, 0.0).unwrap();
        let m = build_matrix(&p);
        assert_eq!(m.u, crate::linalg::identity(2));
        assert_eq!(m.v, ComplexMatrix::zeros(2, 2));
    }

    #[test]
    fn block_layout() {
        let p = HamiltonianParams::new(1.3, 0.7, 0.2, 0.2, 0.05, 0.03).unwrap();
        let m = build_matrix(&p);
        assert_eq!(m.u, real_matrix(2, 2, &[1.3, 0.2, 0.2, 0.7]));
        assert_eq!(m.v, real_matrix(2, 2, &[0.05, 0.2, 0.2, 0.03]));
        assert_eq!(m.h.shape(), (4, 4));
    }

    #[test]
    fn decoupled_frequencies() {
        let p = HamiltonianParams::new(0.7, 1.3, 0.0, 0.0, 0.0, 0.0).unwrap();
        let s = symplectic_eigenvalues(&p);
        assert!(s.stable);
        assert!((s.kappa_plus - 1.3).abs() < 1e-15);
        assert!((s.kappa_minus - 0.7).abs() < 1e-15);
    }

    #[test]
    fn critical_coupling_special_cases() {
        let p = HamiltonianParams::new(1.3, 0.7, 0.0, 0.0, 0.0, 0.0).unwrap();
        assert!((critical_coupling(&p).unwrap() - (1.3f64 * 0.7).sqrt() / 2.0).abs() < 1e-16);
        let q = HamiltonianParams::new(1.3, 0.7, 0.0, 0.0, 1.3, 0.0).unwrap();
        assert_eq!(critical_coupling(&q).unwrap(), 0.0);
    }

    #[test]
    fn expansion_regime_and_zero() {
        let p = HamiltonianParams::new(1.3, 0.7, 0.0, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(near_critical_expansion(&p, 0.0).unwrap().1, 0.0);
        assert!(matches!(
            near_critical_expansion(&p, 0.5),
            Err(HamiltonianError::OutOfRegime(_))
        ));
    }

    #[test]
    fn fit_needs_three_points() {
        let p = HamiltonianParams::new(1.3, 0.7, 0.0, 0.0, 0.0, 0.0).unwrap();
        assert!(matches!(
            critical_exponent_fit(&p, &[1e-4, 1e-3]),
            Err(HamiltonianError::TooFewSamples(2))
        ));
        assert!(matches!(
            critical_exponent_fit(&p, &[1e-4, 1e-3, 0.5]),
            Err(HamiltonianError::BadEpsilon(_))
        ));
    }

    #[test]
    fn rejects_nonpositive_frequency() {
        assert!(HamiltonianParams::new(0.0, 1.0, 0.0, 0.0, 0.0, 0.0).is_err());
        assert!(HamiltonianParams::new(1.0, 1.0, f64::NAN, 0.0, 0.0, 0.0).is_err());
    }
}
