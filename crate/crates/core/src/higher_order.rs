//! Beam-splitter diagonalization, quartic C-coefficients, and the spectrum of
//! polynomial Hamiltonians Σ_p Λ_p H₀^p in the rotated Fock basis, together with a
//! brute-force truncated-Fock oracle.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::linalg::{real_matrix, symmetric_eigenvalues, ComplexMatrix, LinalgError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HigherOrderError {
    #[error("ω and g are both zero")]
    Degenerate,
    #[error("all interaction strengths are zero")]
    NoInteraction,
    #[error("non-finite input")]
    NonFinite,
    #[error("cutoff {cutoff} too small (need at least 1)")]
    Cutoff { cutoff: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// H = ω(a†a − b†b) + g(a†b + b†a) and its normal-mode form κ(ã†ã − b̃†b̃).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSplitterModel {
    pub omega: f64,
    pub g: f64,
    /// tan 2θ = −g/ω.
    pub theta: f64,
    pub kappa: f64,
}

impl BeamSplitterModel {
    /// α = ((cos θ, sin θ), (−sin θ, cos θ)); β = 0.
    pub fn alpha(&self) -> ComplexMatrix {
        let (s, c) = self.theta.sin_cos();
        real_matrix(2, 2, &[c, s, -s, c])
    }

    /// U-block ((ω, g), (g, −ω)).
    pub fn u_block(&self) -> ComplexMatrix {
        real_matrix(2, 2, &[self.omega, self.g, self.g, -self.omega])
    }

    /// Full mixing angle χ = atan2(g, ω) = −2θ. The normal-ordered quartic
    /// Λ₂κ²:(ñ_a − ñ_b)²: has the C-coefficients of [`c_coefficients`] at χ.
    pub fn quartic_angle(&self) -> f64 {
        -2.0 * self.theta
    }
}

pub fn beamsplitter_diagonalize(omega: f64, g: f64) -> Result<BeamSplitterModel, HigherOrderError> {
    if !omega.is_finite() || !g.is_finite() {
        return Err(HigherOrderError::NonFinite);
    }
    if omega == 0.0 && g == 0.0 {
        return Err(HigherOrderError::Degenerate);
    }
    Ok(BeamSplitterModel {
        omega,
        g,
        theta: 0.5 * (-g).atan2(omega),
        kappa: omega.hypot(g),
    })
}

/// Coefficient of a†b†ab. The two forms differ by a factor of two.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbabConvention {
    /// −2Λ₂ cos 2θ.
    Doubled,
    /// −Λ₂(α₁₁α₂₂ + α₁₂α₂₁) = −Λ₂ cos 2θ.
    AlphaProduct,
}

/// Strengths of the normal-ordered quartic terms, named by operator order:
/// c_abaa multiplies a†b†aa, c_aaab multiplies a†a†ab, and so on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CCoefficients {
    pub c_aaaa: f64,
    pub c_bbbb: f64,
    pub c_abab: f64,
    pub c_abbb: f64,
    pub c_abaa: f64,
    pub c_bbab: f64,
    pub c_aaab: f64,
    pub c_aabb: f64,
    pub c_bbaa: f64,
}

pub fn c_coefficients(lambda2: f64, theta: f64) -> CCoefficients {
    c_coefficients_with(lambda2, theta, AbabConvention::Doubled)
}

pub fn c_coefficients_with(lambda2: f64, theta: f64, abab: AbabConvention) -> CCoefficients {
    let (s, c) = theta.sin_cos();
    let mixed = lambda2 * (2.0 * theta).sin();
    let factor = match abab {
        AbabConvention::Doubled => 2.0,
        AbabConvention::AlphaProduct => 1.0,
    };
    CCoefficients {
        c_aaaa: lambda2 * c * c,
        c_bbbb: lambda2 * c * c,
        c_abab: -factor * lambda2 * (2.0 * theta).cos(),
        c_abbb: -mixed,
        c_abaa: mixed,
        c_bbab: -mixed,
        c_aaab: mixed,
        c_aabb: lambda2 * s * s,
        c_bbaa: lambda2 * s * s,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialSpectrum {
    pub lambdas: Vec<f64>,
    pub kappa: f64,
    pub energies: BTreeMap<(usize, usize), f64>,
}

/// E(n_a, n_b) = Σ_p Λ_p (κ(n_a − n_b))^p, p = 1, 2, …
pub fn energy(lambdas: &[f64], kappa: f64, n_a: usize, n_b: usize) -> f64 {
    let x = kappa * (n_a as f64 - n_b as f64);
    lambdas
        .iter()
        .zip(1..)
        .map(|(l, p)| l * x.powi(p))
        .sum()
}

pub fn polynomial_spectrum(
    lambdas: &[f64],
    omega: f64,
    g: f64,
    n_max: usize,
) -> Result<PolynomialSpectrum, HigherOrderError> {
    if lambdas.iter().all(|&l| l == 0.0) {
        return Err(HigherOrderError::NoInteraction);
    }
    if lambdas.iter().any(|l| !l.is_finite()) {
        return Err(HigherOrderError::NonFinite);
    }
    let model = beamsplitter_diagonalize(omega, g)?;
    let mut energies = BTreeMap::new();
    for n_a in 0..=n_max {
        for n_b in 0..=n_max {
            energies.insert((n_a, n_b), energy(lambdas, model.kappa, n_a, n_b));
        }
    }
    Ok(PolynomialSpectrum {
        lambdas: lambdas.to_vec(),
        kappa: model.kappa,
        energies,
    })
}

/// Converged eigenvalues of the truncated Fock matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOracle {
    /// Ascending eigenvalues that move by < 1e−8 when the cutoff grows by 2.
    pub levels: Vec<f64>,
    /// Set when some level moved by an amount in [1e−8, 1e−6].
    pub inconclusive: bool,
}

const INTERIOR_TOL: f64 = 1e-8;
const INCONCLUSIVE_TOL: f64 = 1e-6;

/// Dense Fock-space matrix on n_a, n_b ≤ cutoff, basis index n_a(cutoff+1) + n_b.
struct FockSpace {
    dim1: usize,
    data: Vec<f64>,
}

impl FockSpace {
    fn new(cutoff: usize) -> Self {
        let dim1 = cutoff + 1;
        Self {
            dim1,
            data: vec![0.0; dim1.pow(4)],
        }
    }

    fn dim(&self) -> usize {
        self.dim1 * self.dim1
    }

    /// Adds coef · a†^ca b†^cb a^na b^nb.
    fn add_monomial(&mut self, coef: f64, ca: usize, cb: usize, na: usize, nb: usize) {
        if coef == 0.0 {
            return;
        }
        let d = self.dim();
        for ia in 0..self.dim1 {
            for ib in 0..self.dim1 {
                if ia < na || ib < nb {
                    continue;
                }
                let (ma, mb) = (ia - na + ca, ib - nb + cb);
                if ma >= self.dim1 || mb >= self.dim1 {
                    continue;
                }
                let amp = falling(ia, na) * falling(ib, nb) * rising(ia - na, ca) * rising(ib - nb, cb);
                let row = ma * self.dim1 + mb;
                let col = ia * self.dim1 + ib;
                self.data[row * d + col] += coef * amp.sqrt();
            }
        }
    }
}

/// n(n−1)…(n−k+1)
fn falling(n: usize, k: usize) -> f64 {
    (0..k).map(|i| (n - i) as f64).product()
}

/// (n+1)(n+2)…(n+k)
fn rising(n: usize, k: usize) -> f64 {
    (1..=k).map(|i| (n + i) as f64).product()
}

fn matmul_dense(a: &[f64], b: &[f64], d: usize) -> Vec<f64> {
    let mut out = vec![0.0; d * d];
    for i in 0..d {
        for k in 0..d {
            let x = a[i * d + k];
            if x == 0.0 {
                continue;
            }
            for j in 0..d {
                out[i * d + j] += x * b[k * d + j];
            }
        }
    }
    out
}

/// Truncated-Fock Hamiltonian: Λ₁H_bs + Σ_quartic C(Λ₂κ², χ) + Λ₂κ²(n_a + n_b)
/// + Σ_{p≥3} Λ_p H_bs^p.
///
/// The number term is the normal-ordering remainder of Λ₂H₀², so the matrix
/// represents the same operator as Σ_p Λ_p H₀^p in the rotated basis.
fn fock_matrix(
    lambdas: &[f64],
    model: &BeamSplitterModel,
    cutoff: usize,
    abab: AbabConvention,
) -> Vec<f64> {
    let mut bs = FockSpace::new(cutoff);
    bs.add_monomial(model.omega, 1, 0, 1, 0);
    bs.add_monomial(-model.omega, 0, 1, 0, 1);
    bs.add_monomial(model.g, 1, 0, 0, 1);
    bs.add_monomial(model.g, 0, 1, 1, 0);
    let d = bs.dim();

    let lambda1 = lambdas.first().copied().unwrap_or(0.0);
    let mut total: Vec<f64> = bs.data.iter().map(|x| lambda1 * x).collect();

    if let Some(&lambda2) = lambdas.get(1) {
        let scale = lambda2 * model.kappa * model.kappa;
        let cc = c_coefficients_with(scale, model.quartic_angle(), abab);
        let mut q = FockSpace::new(cutoff);
        q.add_monomial(cc.c_aaaa, 2, 0, 2, 0);
        q.add_monomial(cc.c_bbbb, 0, 2, 0, 2);
        q.add_monomial(cc.c_abab, 1, 1, 1, 1);
        q.add_monomial(cc.c_aabb, 2, 0, 0, 2);
        q.add_monomial(cc.c_bbaa, 0, 2, 2, 0);
        q.add_monomial(cc.c_abaa, 1, 1, 2, 0);
        q.add_monomial(cc.c_aaab, 2, 0, 1, 1);
        q.add_monomial(cc.c_abbb, 1, 1, 0, 2);
        q.add_monomial(cc.c_bbab, 0, 2, 1, 1);
        q.add_monomial(scale, 1, 0, 1, 0);
        q.add_monomial(scale, 0, 1, 0, 1);
        for (t, x) in total.iter_mut().zip(&q.data) {
            *t += x;
        }
    }

    // H_bs² here; the loop raises it to p = 3, 4, … before adding
    let mut power = matmul_dense(&bs.data, &bs.data, d);
    for &lambda_p in lambdas.iter().skip(2) {
        power = matmul_dense(&power, &bs.data, d);
        for (t, x) in total.iter_mut().zip(&power) {
            *t += lambda_p * x;
        }
    }
    total
}

pub fn fock_bruteforce_oracle(
    lambdas: &[f64],
    omega: f64,
    g: f64,
    cutoff: usize,
) -> Result<FockOracle, HigherOrderError> {
    fock_bruteforce_oracle_with(lambdas, omega, g, cutoff, AbabConvention::Doubled)
}

/// Diagonalizes at `cutoff` and `cutoff + 2` and keeps the levels of the
/// smaller space that have a partner within 1e−8 in the larger one.
pub fn fock_bruteforce_oracle_with(
    lambdas: &[f64],
    omega: f64,
    g: f64,
    cutoff: usize,
    abab: AbabConvention,
) -> Result<FockOracle, HigherOrderError> {
    if cutoff == 0 {
        return Err(HigherOrderError::Cutoff { cutoff });
    }
    if lambdas.iter().any(|l| !l.is_finite()) {
        return Err(HigherOrderError::NonFinite);
    }
    let model = beamsplitter_diagonalize(omega, g)?;
    let spectrum = |c: usize| {
        let d = (c + 1) * (c + 1);
        symmetric_eigenvalues(d, &fock_matrix(lambdas, &model, c, abab))
    };
    let small = spectrum(cutoff)?;
    let mut large = spectrum(cutoff + 2)?;

    let mut levels = Vec::new();
    let mut inconclusive = false;
    for e in small {
        let nearest = large
            .iter()
            .enumerate()
            .min_by(|x, y| (x.1 - e).abs().total_cmp(&(y.1 - e).abs()));
        let Some((idx, &partner)) = nearest else { break };
        let shift = (partner - e).abs();
        if shift < INTERIOR_TOL {
            levels.push(e);
            large.remove(idx);
        } else if shift < INCONCLUSIVE_TOL {
            inconclusive = true;
        }
    }
    Ok(FockOracle {
        levels,
        inconclusive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;

    #[test]
    fn beamsplitter_basics() {
        let m = beamsplitter_diagonalize(1.0, 0.0).unwrap();
        assert_eq!((m.theta, m.kappa), (0.0, 1.0));
        let m = beamsplitter_diagonalize(1.0, 1.0).unwrap();
        assert!((m.kappa - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(
            beamsplitter_diagonalize(0.0, 0.0),
            Err(HigherOrderError::Degenerate)
        );
    }

    #[test]
    fn rotated_block_is_diagonal() {
        let m = beamsplitter_diagonalize(0.8, -0.45).unwrap();
        let s = m.alpha();
        let rotated = s.transpose() * m.u_block() * &s;
        let expected = real_matrix(2, 2, &[m.kappa, 0.0, 0.0, -m.kappa]);
        assert!(max_abs_diff(&rotated, &expected) < 1e-12);
    }

    #[test]
    fn coefficient_special_angles() {
        let c = c_coefficients(0.3, 0.0);
        assert_eq!((c.c_aaaa, c.c_abab), (0.3, -0.6));
        assert_eq!((c.c_abaa, c.c_aabb), (0.0, 0.0));
        let c = c_coefficients(0.3, std::f64::consts::FRAC_PI_4);
        assert!(c.c_abab.abs() < 1e-16);
        assert!((c.c_aaaa - 0.15).abs() < 1e-16 && (c.c_aabb - 0.15).abs() < 1e-16);
    }

    #[test]
    fn mixed_coefficient_matches_alpha_products() {
        let theta: f64 = 0.3;
        let a = beamsplitter_diagonalize(1.0, -(2.0 * theta).tan()).unwrap().alpha();
        let (a11, a12, a21, a22) = (a[(0, 0)].re, a[(0, 1)].re, a[(1, 0)].re, a[(1, 1)].re);
        let c = c_coefficients(1.7, theta);
        assert!((c.c_abaa - 1.7 * (a11 * a12 - a22 * a21)).abs() < 1e-14);
        let alt = c_coefficients_with(1.7, theta, AbabConvention::AlphaProduct);
        assert!((alt.c_abab + 1.7 * (a11 * a22 + a12 * a21)).abs() < 1e-14);
    }

    #[test]
    fn linear_spectrum() {
        let s = polynomial_spectrum(&[1.0], 1.0, 0.0, 2).unwrap();
        assert_eq!(s.energies[&(1, 1)], 0.0);
        assert_eq!(s.energies[&(2, 0)], 2.0);
        assert_eq!(s.energies.len(), 9);
        assert!(polynomial_spectrum(&[0.0, 0.0], 1.0, 0.5, 2).is_err());
    }

    #[test]
    fn quadratic_term_arithmetic() {
        let s = polynomial_spectrum(&[1.0, 0.1], 1.0, 1.0, 2).unwrap();
        let expected = 2.0 * 2f64.sqrt() + 0.1 * 8.0;
        assert!((s.energies[&(2, 0)] - expected).abs() < 1e-14);
    }

    #[test]
    fn oracle_without_interaction_gives_linear_levels() {
        let o = fock_bruteforce_oracle(&[1.0, 0.0], 1.0, 0.5, 6).unwrap();
        let kappa = 1.25f64.sqrt();
        for e in &o.levels {
            let m = e / kappa;
            assert!((m - m.round()).abs() < 1e-9, "level {e}");
        }
        // blocks with n_a + n_b ≤ 6 are complete; truncated blocks may add
        // a few levels that happen to coincide at both cutoffs
        assert!(o.levels.len() >= 28);
    }

    #[test]
    fn monomial_matrix_elements() {
        // a†a on |2, 0⟩ has eigenvalue 2
        let mut f = FockSpace::new(3);
        f.add_monomial(1.0, 1, 0, 1, 0);
        let d = f.dim();
        let idx = 2 * 4;
        assert!((f.data[idx * d + idx] - 2.0).abs() < 1e-15);
        // a†b maps |0, 1⟩ to |1, 0⟩ with amplitude 1
        let mut f = FockSpace::new(3);
        f.add_monomial(1.0, 1, 0, 0, 1);
        assert!((f.data[4 * d + 1] - 1.0).abs() < 1e-15);
    }
}
