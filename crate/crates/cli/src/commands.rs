//! The four batch commands. Each returns the full output in memory so that
//! nothing is written when a later step fails.

use coupled_modes::decomposition::{decompose, is_identity, reconstruct, DecompositionError, ACCEPT_TOL};
use coupled_modes::evolution::{evolve_operator, EvolutionMatrix};
use coupled_modes::gaussian_states::{
    entanglement_report, excitation_number, propagate, GaussianState,
};
use coupled_modes::hamiltonian::{
    critical_coupling, critical_exponent_fit, near_critical_expansion, symplectic_eigenvalues,
    HamiltonianParams, SymplecticSpectrum,
};
use coupled_modes::linalg::{identity, ComplexMatrix};
use coupled_modes::normal_modes::{bogoliubov, BogoliubovPair, NormalModeError};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{ExperimentConfig, Observable};
use crate::error::CliError;
use crate::format::{format_number, format_optional};

/// Round-off floor for N and S_vn, which vanish exactly on the vacuum but
/// come out at the 1e−16 level from the matrix products.
const ZERO_FLOOR: f64 = 1e-14;

/// ε grid for the critical report when the config gives none.
pub fn default_epsilons() -> Vec<f64> {
    (0..13).map(|k| 10f64.powf(-6.0 + 0.25 * k as f64)).collect()
}

fn floored(x: f64) -> f64 {
    if x.abs() < ZERO_FLOOR {
        0.0
    } else {
        x
    }
}

fn unstable(p: &HamiltonianParams, detail: String) -> CliError {
    CliError::Unstable {
        g_cr: critical_coupling(p).unwrap_or(0.0),
        detail,
    }
}

/// Normal modes of a stable Hamiltonian, or the exit-3 error.
pub fn stable_pair(p: &HamiltonianParams) -> Result<(BogoliubovPair, SymplecticSpectrum), CliError> {
    let spec = symplectic_eigenvalues(p);
    if !spec.stable {
        return Err(unstable(p, format!("κ₋² = {:e}", spec.kappa_minus_sq)));
    }
    match bogoliubov(p) {
        Ok(pair) => Ok((pair, spec)),
        Err(NormalModeError::Unstable { min_eigenvalue }) => Err(unstable(
            p,
            format!("smallest eigenvalue of H = {min_eigenvalue:e}"),
        )),
        Err(e) => Err(CliError::config(e)),
    }
}

/// S(t), with t = 0 mapped to the exact identity.
fn evolution(pair: &BogoliubovPair, t: f64) -> EvolutionMatrix {
    if t == 0.0 {
        let n = pair.n_modes();
        EvolutionMatrix::from_blocks(0.0, identity(n), ComplexMatrix::zeros(n, n))
    } else {
        evolve_operator(pair, t)
    }
}

struct Observed {
    n: f64,
    s_vn: f64,
    nu_tilde_minus: f64,
}

fn observe(initial: &GaussianState, pair: &BogoliubovPair, t: f64) -> Result<Observed, CliError> {
    let state = propagate(initial, &evolution(pair, t)).map_err(CliError::config)?;
    let report = entanglement_report(&state).map_err(CliError::config)?;
    Ok(Observed {
        n: floored(excitation_number(&state)),
        s_vn: floored(report.s_vn),
        nu_tilde_minus: report.nu_tilde_minus,
    })
}

pub fn evolve_csv(cfg: &ExperimentConfig) -> Result<String, CliError> {
    let grid = cfg
        .time_grid
        .ok_or_else(|| CliError::Config("evolve needs a `time_grid`".into()))?;
    grid.validate()?;
    let p = cfg.params()?;
    let initial = cfg.initial()?;
    let (pair, spec) = stable_pair(&p)?;
    let cols = cfg.columns();

    let mut out = String::from("t");
    for c in &cols {
        out.push(',');
        out.push_str(c.column());
    }
    out.push('\n');
    for t in grid.times() {
        let o = observe(&initial, &pair, t)?;
        out.push_str(&format_number(t));
        for c in &cols {
            let v = match c {
                Observable::N => o.n,
                Observable::SVn => o.s_vn,
                Observable::NuTildeMinus => o.nu_tilde_minus,
                Observable::KappaPlus => spec.kappa_plus,
                Observable::KappaMinus => spec.kappa_minus,
            };
            out.push(',');
            out.push_str(&format_number(v));
        }
        out.push('\n');
    }
    Ok(out)
}

/// {g_cr, exponent_fit, prefactor, samples}. Fit fields are null when there
/// is no stable side (g_cr = 0).
pub fn critical_report(cfg: &ExperimentConfig) -> Result<Value, CliError> {
    let p = cfg.params()?;
    let g_cr = critical_coupling(&p).map_err(CliError::config)?;
    if g_cr == 0.0 {
        return Ok(json!({
            "g_cr": 0.0,
            "exponent_fit": Value::Null,
            "prefactor": Value::Null,
            "samples": [],
        }));
    }
    let epsilons = cfg
        .critical
        .as_ref()
        .map(|c| c.epsilons.clone())
        .unwrap_or_else(default_epsilons);
    let (exponent, prefactor) = critical_exponent_fit(&p, &epsilons).map_err(CliError::config)?;
    let samples = epsilons
        .iter()
        .map(|&e| {
            let g = g_cr * (1.0 - e);
            let (_, expansion) = near_critical_expansion(&p, e).map_err(CliError::config)?;
            Ok(json!({
                "epsilon": e,
                "g": g,
                "kappa_minus": symplectic_eigenvalues(&p.with_g(g)).kappa_minus,
                "kappa_minus_expansion": expansion,
            }))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(json!({
        "g_cr": g_cr,
        "exponent_fit": exponent,
        "prefactor": prefactor,
        "samples": samples,
    }))
}

/// Seven-stage gate list of S(t) with its reconstruction residual.
pub fn decompose_report(cfg: &ExperimentConfig, t: f64) -> Result<Value, CliError> {
    if !t.is_finite() {
        return Err(CliError::Config("--time must be finite".into()));
    }
    let p = cfg.params()?;
    let (pair, _) = stable_pair(&p)?;
    let d = decompose(&pair, &p, t).map_err(|e| match e {
        DecompositionError::Unstable => unstable(&p, e.to_string()),
        other => CliError::Decomposition(other.to_string()),
    })?;
    Ok(json!({
        "gates": d.gates(),
        "residual": d.residual,
        "identity": is_identity(&reconstruct(&d), ACCEPT_TOL),
        "t": t,
    }))
}

/// One row per grid point: κ± where the spectrum is real, N and ν̃₋ at the
/// sweep time where the normal modes exist. Rows are evaluated in parallel
/// and emitted in grid order.
pub fn sweep_csv(cfg: &ExperimentConfig) -> Result<String, CliError> {
    let sweep = cfg
        .sweep
        .ok_or_else(|| CliError::Config("sweep needs a `sweep` block".into()))?;
    let base = cfg.params()?;
    let initial = cfg.initial()?;
    let xs = sweep.points()?;

    let rows = xs
        .par_iter()
        .map(|&x| {
            let p = sweep.parameter.apply(base, x);
            p.validate().map_err(CliError::config)?;
            let spec = symplectic_eigenvalues(&p);
            let kappas = spec.stable.then_some((spec.kappa_plus, spec.kappa_minus));
            let observed = match stable_pair(&p) {
                Ok((pair, _)) => Some(observe(&initial, &pair, sweep.time)?),
                Err(CliError::Unstable { .. }) => None,
                Err(e) => return Err(e),
            };
            Ok(format!(
                "{},{},{},{},{},{}\n",
                format_number(x),
                observed.is_some(),
                format_optional(kappas.map(|k| k.0)),
                format_optional(kappas.map(|k| k.1)),
                format_optional(observed.as_ref().map(|o| o.n)),
                format_optional(observed.as_ref().map(|o| o.nu_tilde_minus)),
            ))
        })
        .collect::<Result<Vec<String>, CliError>>()?;

    let mut out = format!(
        "{},stable,kappa_plus,kappa_minus,n,nu_tilde_minus\n",
        sweep.parameter.name()
    );
    out.extend(rows);
    Ok(out)
}
