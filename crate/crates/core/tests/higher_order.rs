use coupled_modes::higher_order::{
    beamsplitter_diagonalize, c_coefficients, c_coefficients_with, energy, fock_bruteforce_oracle,
    fock_bruteforce_oracle_with, polynomial_spectrum, AbabConvention, HigherOrderError,
    PolynomialSpectrum,
};
use coupled_modes::linalg::{c, diag, max_abs_diff};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// Largest distance from an oracle level to the nearest polynomial energy,
/// and whether every energy with n_a + n_b ≤ cutoff found its own level.
fn compare(levels: &[f64], spec: &PolynomialSpectrum, cutoff: usize) -> (f64, bool) {
    let all: Vec<f64> = spec.energies.values().copied().collect();
    let worst = levels
        .iter()
        .map(|e| all.iter().map(|x| (x - e).abs()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    let mut pool = levels.to_vec();
    let mut complete = true;
    for ((na, nb), e) in &spec.energies {
        if na + nb > cutoff {
            continue;
        }
        match pool
            .iter()
            .enumerate()
            .min_by(|x, y| (x.1 - e).abs().total_cmp(&(y.1 - e).abs()))
        {
            Some((i, v)) if (v - e).abs() < 1e-7 => {
                pool.remove(i);
            }
            _ => complete = false,
        }
    }
    (worst, complete)
}

#[test]
fn beamsplitter_model() {
    let m = beamsplitter_diagonalize(1.0, 0.0).unwrap();
    assert_eq!((m.theta, m.kappa), (0.0, 1.0));
    let m = beamsplitter_diagonalize(1.0, 1.0).unwrap();
    assert!((m.kappa - 2f64.sqrt()).abs() < 1e-15);
    assert!(((2.0 * m.theta).tan() + 1.0).abs() < 1e-15);
    for (w, g) in [(1.0, 0.5), (0.3, -0.8), (-0.4, 0.2)] {
        let m = beamsplitter_diagonalize(w, g).unwrap();
        let a = m.alpha();
        let rotated = a.transpose() * m.u_block() * &a;
        assert!(max_abs_diff(&rotated, &diag(&[c(m.kappa, 0.0), c(-m.kappa, 0.0)])) < 1e-12);
        assert_eq!(a[(0, 0)], a[(1, 1)]);
        assert_eq!(a[(0, 1)], -a[(1, 0)]);
    }
    assert_eq!(beamsplitter_diagonalize(0.0, 0.0), Err(HigherOrderError::Degenerate));
}

#[test]
fn coefficient_special_angles() {
    let l = 0.7;
    let z = c_coefficients(l, 0.0);
    assert_eq!((z.c_aaaa, z.c_abab), (l, -2.0 * l));
    assert!([z.c_abaa, z.c_abbb, z.c_aaab, z.c_bbab, z.c_aabb, z.c_bbaa].iter().all(|x| x.abs() < 1e-16));
    let q = c_coefficients(l, PI / 4.0);
    assert!(q.c_abab.abs() < 1e-15);
    assert!((q.c_aaaa - l / 2.0).abs() < 1e-15 && (q.c_aabb - l / 2.0).abs() < 1e-15);
    let alt = c_coefficients_with(l, 0.3, AbabConvention::AlphaProduct);
    assert!((alt.c_abab - 0.5 * c_coefficients(l, 0.3).c_abab).abs() < 1e-15);
}

#[test]
fn mixed_coefficient_from_alpha_entries() {
    let (l, theta) = (0.4, 0.3);
    let (s, co) = f64::sin_cos(theta);
    let (a11, a12, a21, a22) = (co, s, -s, co);
    let cc = c_coefficients(l, theta);
    assert!((cc.c_abaa - l * (a11 * a12 - a22 * a21)).abs() < 1e-15);
    assert!((cc.c_abaa - l * (2.0 * theta).sin()).abs() < 1e-15);
    // the alternative c_abab expression
    let alt = c_coefficients_with(l, theta, AbabConvention::AlphaProduct);
    assert!((alt.c_abab + l * (a11 * a22 + a12 * a21)).abs() < 1e-15);
}

#[test]
fn polynomial_energies() {
    let s = polynomial_spectrum(&[1.0], 1.0, 0.0, 2).unwrap();
    assert_eq!(s.energies[&(1, 1)], 0.0);
    assert_eq!(s.energies[&(2, 0)], 2.0);
    assert_eq!(s.energies.len(), 9);
    let s = polynomial_spectrum(&[1.0, 0.1], 1.0, 1.0, 2).unwrap();
    assert!((s.energies[&(2, 0)] - (2.0 * 2f64.sqrt() + 0.8)).abs() < 1e-14);
    assert_eq!(energy(&[0.0, 0.0, 1.0], 2.0, 0, 1), -8.0);
    assert_eq!(
        polynomial_spectrum(&[0.0, 0.0], 1.0, 0.5, 2),
        Err(HigherOrderError::NoInteraction)
    );
}

#[test]
fn oracle_free_levels() {
    let o = fock_bruteforce_oracle(&[1.0], 1.0, 0.5, 8).unwrap();
    let kappa = 1.25f64.sqrt();
    assert!(o.levels.iter().all(|e| ((e / kappa) - (e / kappa).round()).abs() < 1e-9));
    assert!(!o.inconclusive);
}

#[test]
fn oracle_matches_quartic_spectrum() {
    let lambdas = [1.0, 0.05];
    let cutoff = 10;
    let o = fock_bruteforce_oracle(&lambdas, 1.0, 0.5, cutoff).unwrap();
    let spec = polynomial_spectrum(&lambdas, 1.0, 0.5, cutoff + 2).unwrap();
    let (worst, complete) = compare(&o.levels, &spec, cutoff);
    assert!(worst < 1e-8, "{worst:e}");
    assert!(complete);
}

#[test]
fn halved_abab_coefficient_fails_oracle() {
    let lambdas = [1.0, 0.05];
    let o = fock_bruteforce_oracle_with(&lambdas, 1.0, 0.5, 8, AbabConvention::AlphaProduct).unwrap();
    let spec = polynomial_spectrum(&lambdas, 1.0, 0.5, 10).unwrap();
    let (worst, complete) = compare(&o.levels, &spec, 8);
    assert!(worst > 1e-3 || !complete);
}

#[test]
fn oracle_with_cubic_term() {
    let lambdas = [0.8, 0.04, 0.01];
    let o = fock_bruteforce_oracle(&lambdas, 0.9, -0.4, 8).unwrap();
    let spec = polynomial_spectrum(&lambdas, 0.9, -0.4, 10).unwrap();
    let (worst, complete) = compare(&o.levels, &spec, 8);
    assert!(worst < 1e-7 && complete, "{worst:e}");
}

#[test]
fn oracle_cutoff_self_consistency() {
    let lambdas = [1.0, 0.05];
    let a = fock_bruteforce_oracle(&lambdas, 1.0, 0.5, 10).unwrap();
    let b = fock_bruteforce_oracle(&lambdas, 1.0, 0.5, 12).unwrap();
    // every level interior at cutoff 10 is still present at cutoff 12
    for e in &a.levels {
        assert!(b.levels.iter().any(|x| (x - e).abs() < 1e-8));
    }
    assert_eq!(
        fock_bruteforce_oracle(&lambdas, 1.0, 0.5, 0),
        Err(HigherOrderError::Cutoff { cutoff: 0 })
    );
}

#[test]
fn random_quartic_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..4 {
        let l2 = rng.random_range(-0.1..0.1);
        let w = rng.random_range(0.3..1.5);
        let g = rng.random_range(-1.0..1.0);
        let o = fock_bruteforce_oracle(&[1.0, l2], w, g, 8).unwrap();
        let spec = polynomial_spectrum(&[1.0, l2], w, g, 10).unwrap();
        let (worst, complete) = compare(&o.levels, &spec, 8);
        assert!(worst < 1e-7 && complete, "({l2}, {w}, {g}) {worst:e}");
    }
}

proptest! {
    #[test]
    fn coefficient_constraints(l in -2.0f64..2.0, theta in -PI..PI) {
        let cc = c_coefficients(l, theta);
        prop_assert_eq!(cc.c_aaaa, cc.c_bbbb);
        prop_assert_eq!(cc.c_aabb, cc.c_bbaa);
        prop_assert_eq!(cc.c_abaa, -cc.c_abbb);
        prop_assert_eq!(cc.c_abaa, cc.c_aaab);
        prop_assert_eq!(cc.c_aaab, -cc.c_bbab);
    }
}
