#![allow(dead_code)]

use coupled_modes::hamiltonian::{build_matrix, critical_coupling, HamiltonianMatrix, HamiltonianParams};
use coupled_modes::linalg::{c, expm, symplectic_form, ComplexMatrix, EXPM_TOL};

/// exp(ΩHt), the brute-force propagator.
pub fn expm_propagator(h: &HamiltonianMatrix, t: f64) -> ComplexMatrix {
    let m = symplectic_form(h.n_modes()) * &h.h * c(t, 0.0);
    expm(&m, EXPM_TOL).unwrap()
}

pub fn expm_for(p: &HamiltonianParams, t: f64) -> ComplexMatrix {
    expm_propagator(&build_matrix(p), t)
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

/// The 5⁴ stable grid with λ = 0 and ω_a ≠ ω_b.
pub fn standard_grid() -> Vec<(HamiltonianParams, f64)> {
    let mut out = Vec::new();
    for &wa in &linspace(0.7, 1.5, 5) {
        for &wb in &linspace(0.4, 1.2, 5) {
            if (wa - wb).abs() < 1e-9 {
                continue;
            }
            let base = HamiltonianParams::ultrastrong(wa, wb, 0.0, 0.0, 0.0).unwrap();
            let g_cr = critical_coupling(&base).unwrap();
            for &g in &linspace(0.0, 0.9 * g_cr, 5) {
                for &t in &linspace(0.1, 5.0, 5) {
                    out.push((base.with_g(g), t));
                }
            }
        }
    }
    out
}
