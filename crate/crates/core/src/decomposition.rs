//! Factorization of S(t) into beamsplitters, single-mode squeezers and a free
//! rotation: S = o(−φ) s_q(−r) o(−ϕ) · F(t) · o(ϕ) s_q(r) o(φ).

use serde::Serialize;
use thiserror::Error;

use crate::evolution::{evolve_operator, EvolutionMatrix};
use crate::hamiltonian::{symplectic_eigenvalues, HamiltonianParams};
use crate::linalg::{diag, identity, max_abs_diff, real_matrix, ComplexMatrix, C64};
use crate::normal_modes::BogoliubovPair;

/// Accept/reject threshold on the reconstruction residual.
pub const ACCEPT_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DecompositionError {
    #[error("reconstruction residual {residual:e} exceeds {ACCEPT_TOL:e}")]
    Failed { residual: f64 },
    #[error("decomposition needs a real two-mode Bogoliubov pair")]
    Unsupported,
    #[error("Hamiltonian is unstable")]
    Unstable,
}

/// Parameters of the seven-stage circuit. `r_a`, `r_b` carry a sign when no
/// non-negative choice reproduces S(t) (see [`decompose`]).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CircuitDecomposition {
    pub phi: f64,
    pub varphi: f64,
    pub r_a: f64,
    pub r_b: f64,
    pub kappa_plus: f64,
    pub kappa_minus: f64,
    pub t: f64,
    pub residual: f64,
}

/// One stage of the gate list, in application order.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Gate {
    Bs { angle: f64 },
    Sq { r: [f64; 2] },
    Free { kappas: [f64; 2], t: f64 },
}

impl CircuitDecomposition {
    /// Stages in the order they act on the input modes.
    pub fn gates(&self) -> Vec<Gate> {
        vec![
            Gate::Bs { angle: self.phi },
            Gate::Sq {
                r: [self.r_a, self.r_b],
            },
            Gate::Bs { angle: self.varphi },
            Gate::Free {
                kappas: [self.kappa_plus, self.kappa_minus],
                t: self.t,
            },
            Gate::Bs { angle: -self.varphi },
            Gate::Sq {
                r: [-self.r_a, -self.r_b],
            },
            Gate::Bs { angle: -self.phi },
        ]
    }
}

/// o(ψ) = diag(R, R), R = ((cos ψ, sin ψ), (−sin ψ, cos ψ)).
pub fn mode_mixer(psi: f64) -> ComplexMatrix {
    let (s, co) = psi.sin_cos();
    real_matrix(
        4,
        4,
        &[
            co, s, 0.0, 0.0, //
            -s, co, 0.0, 0.0, //
            0.0, 0.0, co, s, //
            0.0, 0.0, -s, co,
        ],
    )
}

/// s_q(r) = (cosh r, sinh r; sinh r, cosh r) with diagonal N×N blocks.
pub fn squeezer(r_a: f64, r_b: f64) -> ComplexMatrix {
    let (ca, sa, cb, sb) = (r_a.cosh(), r_a.sinh(), r_b.cosh(), r_b.sinh());
    real_matrix(
        4,
        4,
        &[
            ca, 0.0, sa, 0.0, //
            0.0, cb, 0.0, sb, //
            sa, 0.0, ca, 0.0, //
            0.0, sb, 0.0, cb,
        ],
    )
}

/// diag(e^{−iκ₊t}, e^{−iκ₋t}, e^{iκ₊t}, e^{iκ₋t}).
pub fn free_rotation(kappa_plus: f64, kappa_minus: f64, t: f64) -> ComplexMatrix {
    diag(&[
        C64::from_polar(1.0, -kappa_plus * t),
        C64::from_polar(1.0, -kappa_minus * t),
        C64::from_polar(1.0, kappa_plus * t),
        C64::from_polar(1.0, kappa_minus * t),
    ])
}

fn rebuild(phi: f64, varphi: f64, r: [f64; 2], free: &ComplexMatrix) -> ComplexMatrix {
    mode_mixer(-phi)
        * squeezer(-r[0], -r[1])
        * mode_mixer(-varphi)
        * free
        * mode_mixer(varphi)
        * squeezer(r[0], r[1])
        * mode_mixer(phi)
}

pub fn reconstruct(d: &CircuitDecomposition) -> EvolutionMatrix {
    let free = free_rotation(d.kappa_plus, d.kappa_minus, d.t);
    EvolutionMatrix::from_full(d.t, rebuild(d.phi, d.varphi, [d.r_a, d.r_b], &free))
}

/// Factorizes S(t) for a real pair, s = o(ϕ) s_q(r) o(φ).
///
/// φ and ϕ are the rotations diagonalizing αᵀα and ααᵀ; cosh² r_{a,b} are the
/// eigenvalues ½(Σα² ± Γ) of αᵀα. Near r = 0 the same closed form applied to
/// βᵀβ, whose eigenvalues are sinh² r, is used instead because acosh loses
/// half the digits there. The tangent relations fix each angle only modulo
/// π/2 and cosh² fixes r only up to sign, so quadrant combinations and sign
/// patterns are scanned and the smallest residual kept, preferring
/// non-negative r on ties. When αᵀα is degenerate φ is arbitrary and ϕ is
/// additionally solved from α = R(ϕ)·cosh r·R(φ) up to a row sign. Squeezing parameters of
/// opposite sign are generic: β/α per normal mode is (κ−w)/(κ+w), which is
/// positive for the upper mode and negative for the lower one.
pub fn decompose(
    pair: &BogoliubovPair,
    p: &HamiltonianParams,
    t: f64,
) -> Result<CircuitDecomposition, DecompositionError> {
    if pair.n_modes() != 2 {
        return Err(DecompositionError::Unsupported);
    }
    if !symplectic_eigenvalues(p).stable {
        return Err(DecompositionError::Unstable);
    }
    let real = pair
        .alpha
        .iter()
        .chain(pair.beta.iter())
        .all(|z| z.im.abs() <= 1e-12 * (1.0 + z.re.abs()));
    if !real {
        return Err(DecompositionError::Unsupported);
    }
    let al = |i: usize, j: usize| pair.alpha[(i, j)].re;
    let be = |i: usize, j: usize| pair.beta[(i, j)].re;
    let (a11, a12, a21, a22) = (al(0, 0), al(0, 1), al(1, 0), al(1, 1));

    let phi0 = 0.5 * (2.0 * (a11 * a12 + a21 * a22)).atan2(a11 * a11 - a12 * a12 + a21 * a21 - a22 * a22);
    let varphi0 =
        0.5 * (2.0 * (a11 * a21 + a12 * a22)).atan2(a11 * a11 + a12 * a12 - a21 * a21 - a22 * a22);
    let (sum_a, gamma_a) = gram_eigen_terms(a11, a12, a21, a22);
    let (sum_b, gamma_b) = gram_eigen_terms(be(0, 0), be(0, 1), be(1, 0), be(1, 1));
    let cosh_sq = [0.5 * (sum_a + gamma_a), 0.5 * (sum_a - gamma_a)];
    let sinh_sq = [0.5 * (sum_b + gamma_b), 0.5 * (sum_b - gamma_b)];
    let [ra, rb] = [0, 1].map(|k| {
        if cosh_sq[k] > 1.5 {
            cosh_sq[k].sqrt().acosh()
        } else {
            sinh_sq[k].max(0.0).sqrt().asinh()
        }
    });

    let target = evolve_operator(pair, t).s;
    let free = free_rotation(pair.kappa[0], pair.kappa[1], t);
    let quarter = std::f64::consts::FRAC_PI_2;
    let mut best: Option<(f64, f64, f64, [f64; 2])> = None;
    for kp in [0.0, 1.0] {
        let phi = phi0 + kp * quarter;
        for (sa, sb) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
            let r = [sa * ra, sb * rb];
            let solved = consistent_varphi(&pair.alpha, phi, r);
            for varphi in [varphi0, varphi0 + quarter, solved[0], solved[1]] {
                let res = max_abs_diff(&rebuild(phi, varphi, r, &free), &target);
                if best.is_none_or(|b| res < b.0 - 1e-13) {
                    best = Some((res, phi, varphi, r));
                }
            }
        }
    }
    let (residual, phi, varphi, r) = best.expect("candidates scanned");
    if residual.is_nan() || residual >= ACCEPT_TOL {
        return Err(DecompositionError::Failed { residual });
    }
    Ok(CircuitDecomposition {
        phi,
        varphi,
        r_a: r[0],
        r_b: r[1],
        kappa_plus: pair.kappa[0],
        kappa_minus: pair.kappa[1],
        t,
        residual,
    })
}

/// Σm² and Γ for the eigenvalues ½(Σm² ± Γ) of mᵀm, m = ((m11, m12), (m21, m22)).
fn gram_eigen_terms(m11: f64, m12: f64, m21: f64, m22: f64) -> (f64, f64) {
    let sum = m11 * m11 + m12 * m12 + m21 * m21 + m22 * m22;
    let gamma = ((m11 * m11 - m12 * m12 + m21 * m21 - m22 * m22).powi(2)
        + 4.0 * (m11 * m12 + m21 * m22).powi(2))
    .sqrt();
    (sum, gamma)
}

/// ϕ from M = α·R(φ)ᵀ·diag(1/cosh r), which is R(ϕ) when φ and r fit α.
/// The second value flips the sign of the lower normal mode first, which
/// leaves S(t) unchanged and turns a reflection into a rotation.
fn consistent_varphi(alpha: &ComplexMatrix, phi: f64, r: [f64; 2]) -> [f64; 2] {
    let (s, co) = phi.sin_cos();
    let rot_t = [[co, -s], [s, co]];
    let m = |i: usize, j: usize| {
        (0..2).map(|k| alpha[(i, k)].re * rot_t[k][j]).sum::<f64>() / r[j].cosh()
    };
    [
        (m(0, 1) - m(1, 0)).atan2(m(0, 0) + m(1, 1)),
        (m(0, 1) + m(1, 0)).atan2(m(0, 0) - m(1, 1)),
    ]
}

/// True when the reconstruction is the identity within `tol`.
pub fn is_identity(ev: &EvolutionMatrix, tol: f64) -> bool {
    max_abs_diff(&ev.s, &identity(ev.s.nrows())) < tol
}
