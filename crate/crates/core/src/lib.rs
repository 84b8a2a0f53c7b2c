//! Exact Gaussian dynamics of bosonic modes coupled by a time-independent
//! quadratic Hamiltonian.
//!
//! The two-mode Hamiltonian
//!
//! ```text
//! H = ω_a a†a + ω_b b†b + g_bs(a†b + ab†) + g_sq(a†b† + ab)
//!   + (λ_a/2)(a†² + a²) + (λ_b/2)(b†² + b²)
//! ```
//!
//! is written as ½ X†·H·X with X = (a, b, a†, b†). Its evolution
//! X(t) = S(t) X(0) is a symplectic matrix built from the normal-mode
//! (Bogoliubov) transformation, and Gaussian states evolve as σ → S σ S†.
//!
//! ```
//! use coupled_modes::prelude::*;
//!
//! let p = HamiltonianParams::ultrastrong(1.3, 0.7, 0.2, 0.0, 0.0).unwrap();
//! let pair = analytic_bogoliubov(&p).unwrap();
//! let state = propagate(&vacuum(2).unwrap(), &evolve_operator(&pair, 1.0)).unwrap();
//! assert!(excitation_number(&state) > 0.0);
//! ```

pub mod circuit_qed;
pub mod decomposition;
pub mod evolution;
pub mod gaussian_states;
pub mod hamiltonian;
pub mod higher_order;
pub mod linalg;
pub mod normal_modes;

pub mod prelude {
    pub use crate::circuit_qed::{derive_circuit, to_hamiltonian, CircuitParams, DerivedCircuit};
    pub use crate::decomposition::{decompose, reconstruct, CircuitDecomposition};
    pub use crate::evolution::{
        evolve_operator, evolve_operator_multimode, explicit_coefficients, EvolutionMatrix,
    };
    pub use crate::gaussian_states::{
        entanglement_report, excitation_number, propagate, thermal, two_mode_squeezed, vacuum,
        GaussianState,
    };
    pub use crate::hamiltonian::{
        build_matrix, critical_coupling, symplectic_eigenvalues, HamiltonianMatrix,
        HamiltonianParams,
    };
    pub use crate::linalg::{expm, ComplexMatrix, C64};
    pub use crate::normal_modes::{
        analytic_bogoliubov, bogoliubov, numeric_bogoliubov, BogoliubovPair,
    };
}
