//! Two LC resonators coupled through a capacitor C_c and an inductor L_c,
//! mapped to the quadratic two-mode Hamiltonian.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hamiltonian::{HamiltonianError, HamiltonianParams};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CircuitError {
    #[error("circuit elements must be positive and finite")]
    InvalidElement,
    #[error("capacitance matrix is singular")]
    SingularCapacitance,
    #[error(transparent)]
    Hamiltonian(#[from] HamiltonianError),
}

/// L = ½C₁φ̇₁² + ½C₂φ̇₂² + ½C_c(φ̇₁−φ̇₂)² − φ₁²/2L₁ − φ₂²/2L₂ − (φ₁−φ₂)²/2L_c.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitParams {
    pub c1: f64,
    pub c2: f64,
    pub c_c: f64,
    pub l1: f64,
    pub l2: f64,
    pub l_c: f64,
}

/// Effective elements, mode parameters and couplings.
///
/// g_c and g_l are the coefficients in
/// H = Σ ω_k(a_k†a_k + ½) − g_c(a₁†−a₁)(a₂†−a₂) + g_l(a₁†+a₁)(a₂†+a₂).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedCircuit {
    pub c1_t: f64,
    pub c2_t: f64,
    pub cc_t: f64,
    pub l1_t: f64,
    pub l2_t: f64,
    pub lc_t: f64,
    pub omega1: f64,
    pub omega2: f64,
    pub z1: f64,
    pub z2: f64,
    pub phi_zpf_1: f64,
    pub phi_zpf_2: f64,
    pub p_zpf_1: f64,
    pub p_zpf_2: f64,
    pub g_c: f64,
    pub g_l: f64,
}

/// Legendre transform and quantization with ħ = 1.
///
/// Inverting the capacitance matrix gives
/// H = π₁²/2C̃₁ + π₂²/2C̃₂ + π₁π₂/C̃_c + φ₁²/2L̃₁ + φ₂²/2L̃₂ − φ₁φ₂/L̃_c,
/// with C̃_c = det C / C_c. Substituting φ = φ_ZPF(a + a†),
/// π = −i p_ZPF(a − a†) yields g_c = p₁p₂/C̃_c and g_l = −φ₁φ₂/L̃_c.
pub fn derive_circuit(c: &CircuitParams) -> Result<DerivedCircuit, CircuitError> {
    let all = [c.c1, c.c2, c.c_c, c.l1, c.l2, c.l_c];
    if all.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
        return Err(CircuitError::InvalidElement);
    }
    let det = c.c1 * c.c2 + c.c_c * (c.c1 + c.c2);
    if det <= 0.0 || !det.is_finite() {
        return Err(CircuitError::SingularCapacitance);
    }
    let c1_t = det / (c.c2 + c.c_c);
    let c2_t = det / (c.c1 + c.c_c);
    let cc_t = det / c.c_c;
    let l1_t = 1.0 / (1.0 / c.l1 + 1.0 / c.l_c);
    let l2_t = 1.0 / (1.0 / c.l2 + 1.0 / c.l_c);
    let lc_t = c.l_c;
    let omega1 = 1.0 / (l1_t * c1_t).sqrt();
    let omega2 = 1.0 / (l2_t * c2_t).sqrt();
    let z1 = (l1_t / c1_t).sqrt();
    let z2 = (l2_t / c2_t).sqrt();
    let (phi_zpf_1, phi_zpf_2) = ((z1 / 2.0).sqrt(), (z2 / 2.0).sqrt());
    let (p_zpf_1, p_zpf_2) = ((1.0 / (2.0 * z1)).sqrt(), (1.0 / (2.0 * z2)).sqrt());
    Ok(DerivedCircuit {
        c1_t,
        c2_t,
        cc_t,
        l1_t,
        l2_t,
        lc_t,
        omega1,
        omega2,
        z1,
        z2,
        phi_zpf_1,
        phi_zpf_2,
        p_zpf_1,
        p_zpf_2,
        g_c: p_zpf_1 * p_zpf_2 / cc_t,
        g_l: -phi_zpf_1 * phi_zpf_2 / lc_t,
    })
}

/// Expanding the coupling terms: a†b + ab† carries g_c + g_l and
/// a†b† + ab carries g_l − g_c.
pub fn to_hamiltonian(d: &DerivedCircuit) -> Result<HamiltonianParams, CircuitError> {
    Ok(HamiltonianParams::new(
        d.omega1,
        d.omega2,
        d.g_c + d.g_l,
        d.g_l - d.g_c,
        0.0,
        0.0,
    )?)
}

pub fn circuit_hamiltonian(c: &CircuitParams) -> Result<HamiltonianParams, CircuitError> {
    to_hamiltonian(&derive_circuit(c)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circuit() -> CircuitParams {
        CircuitParams {
            c1: 1.0,
            c2: 1.0,
            c_c: 0.1,
            l1: 1.0,
            l2: 1.0,
            l_c: 2.0,
        }
    }

    #[test]
    fn symmetric_circuit_is_resonant() {
        let d = derive_circuit(&circuit()).unwrap();
        assert!((d.omega1 - d.omega2).abs() < 1e-15);
    }

    #[test]
    fn effective_inductance_arithmetic() {
        let d = derive_circuit(&circuit()).unwrap();
        assert!((d.l1_t - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(d.lc_t, 2.0);
    }

    #[test]
    fn large_coupling_capacitance_limit() {
        let mut c = circuit();
        c.c2 = 2.5;
        c.c_c = 1e6;
        let d = derive_circuit(&c).unwrap();
        assert!((d.cc_t - 3.5).abs() < 1e-5);
    }

    #[test]
    fn coupling_expansion() {
        let mut d = derive_circuit(&circuit()).unwrap();
        d.g_l = 0.0;
        let p = to_hamiltonian(&d).unwrap();
        assert_eq!((p.g_bs, p.g_sq), (d.g_c, -d.g_c));
        d.g_l = 0.2;
        d.g_c = 0.0;
        let p = to_hamiltonian(&d).unwrap();
        assert_eq!((p.g_bs, p.g_sq), (0.2, 0.2));
        d.g_c = 0.2;
        assert_eq!(to_hamiltonian(&d).unwrap().g_sq, 0.0);
    }

    #[test]
    fn rejects_bad_elements() {
        let mut c = circuit();
        c.l_c = 0.0;
        assert_eq!(derive_circuit(&c), Err(CircuitError::InvalidElement));
    }
}
