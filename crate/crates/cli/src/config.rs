//! Experiment configuration: a single JSON document.

use std::path::Path;

use coupled_modes::circuit_qed::{circuit_hamiltonian, CircuitParams};
use coupled_modes::gaussian_states::{thermal, two_mode_squeezed, vacuum, GaussianState};
use coupled_modes::hamiltonian::HamiltonianParams;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hamiltonian: Option<HamiltonianParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circuit: Option<CircuitParams>,
    #[serde(default)]
    pub initial_state: InitialState,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time_grid: Option<TimeGrid>,
    #[serde(default = "default_outputs")]
    pub outputs: Vec<Observable>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub critical: Option<CriticalSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialState {
    #[default]
    Vacuum,
    Thermal { nu_plus: f64, nu_minus: f64 },
    TwoModeSqueezed { r: f64 },
}

/// `n_steps` samples from `t_start` to `t_end`, both ends included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub t_start: f64,
    pub t_end: f64,
    pub n_steps: usize,
}

/// CSV columns after `t`, always emitted in this order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Observable {
    N,
    SVn,
    NuTildeMinus,
    KappaPlus,
    KappaMinus,
}

impl Observable {
    pub fn column(self) -> &'static str {
        match self {
            Observable::N => "n",
            Observable::SVn => "s_vn",
            Observable::NuTildeMinus => "nu_tilde_minus",
            Observable::KappaPlus => "kappa_plus",
            Observable::KappaMinus => "kappa_minus",
        }
    }
}

fn default_outputs() -> Vec<Observable> {
    vec![Observable::N, Observable::SVn, Observable::NuTildeMinus]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    OmegaA,
    OmegaB,
    /// Sets g_bs and g_sq together.
    G,
    GBs,
    GSq,
    LambdaA,
    LambdaB,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::OmegaA => "omega_a",
            SweepParameter::OmegaB => "omega_b",
            SweepParameter::G => "g",
            SweepParameter::GBs => "g_bs",
            SweepParameter::GSq => "g_sq",
            SweepParameter::LambdaA => "lambda_a",
            SweepParameter::LambdaB => "lambda_b",
        }
    }

    pub fn apply(self, p: HamiltonianParams, x: f64) -> HamiltonianParams {
        let mut q = p;
        match self {
            SweepParameter::OmegaA => q.omega_a = x,
            SweepParameter::OmegaB => q.omega_b = x,
            SweepParameter::G => return p.with_g(x),
            SweepParameter::GBs => q.g_bs = x,
            SweepParameter::GSq => q.g_sq = x,
            SweepParameter::LambdaA => q.lambda_a = x,
            SweepParameter::LambdaB => q.lambda_b = x,
        }
        q
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub start: f64,
    pub end: f64,
    pub n_points: usize,
    #[serde(default)]
    pub spacing: Spacing,
    /// Time at which N and ν̃₋ are evaluated.
    pub time: f64,
}

impl SweepSpec {
    pub fn points(&self) -> Result<Vec<f64>, CliError> {
        if self.n_points == 0 {
            return Err(CliError::Config("sweep range is empty (n_points = 0)".into()));
        }
        if !(self.start.is_finite() && self.end.is_finite() && self.time.is_finite()) {
            return Err(CliError::Config("sweep bounds and time must be finite".into()));
        }
        let n = self.n_points;
        let lerp = |a: f64, b: f64, k: usize| {
            if k + 1 == n && n > 1 {
                b
            } else if n == 1 {
                a
            } else {
                a + (b - a) * k as f64 / (n - 1) as f64
            }
        };
        match self.spacing {
            Spacing::Linear => Ok((0..n).map(|k| lerp(self.start, self.end, k)).collect()),
            Spacing::Log => {
                if !(self.start > 0.0 && self.end > 0.0) {
                    return Err(CliError::Config("log spacing needs positive bounds".into()));
                }
                let (a, b) = (self.start.ln(), self.end.ln());
                Ok((0..n)
                    .map(|k| match k {
                        0 => self.start,
                        _ if k + 1 == n => self.end,
                        _ => lerp(a, b, k).exp(),
                    })
                    .collect())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriticalSpec {
    /// Relative distances ε with g = g_cr(1 − ε).
    pub epsilons: Vec<f64>,
}

impl TimeGrid {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.n_steps == 0 {
            return Err(CliError::Config("time_grid.n_steps must be at least 1".into()));
        }
        if !(self.t_start.is_finite() && self.t_end.is_finite()) {
            return Err(CliError::Config("time_grid bounds must be finite".into()));
        }
        if self.t_end < self.t_start {
            return Err(CliError::Config("time_grid.t_end is before t_start".into()));
        }
        Ok(())
    }

    pub fn times(&self) -> Vec<f64> {
        let n = self.n_steps;
        (0..n)
            .map(|k| {
                if k == 0 {
                    self.t_start
                } else if k + 1 == n {
                    self.t_end
                } else {
                    self.t_start + (self.t_end - self.t_start) * k as f64 / (n - 1) as f64
                }
            })
            .collect()
    }
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: Self = serde_json::from_str(text).map_err(CliError::config)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        match (&self.hamiltonian, &self.circuit) {
            (Some(_), None) | (None, Some(_)) => {}
            _ => {
                return Err(CliError::Config(
                    "exactly one of `hamiltonian` or `circuit` must be given".into(),
                ))
            }
        }
        self.params()?;
        self.initial()?;
        if let Some(grid) = &self.time_grid {
            grid.validate()?;
        }
        if let Some(sweep) = &self.sweep {
            sweep.points()?;
        }
        Ok(())
    }

    /// Two-mode parameters, mapping a circuit if one was given.
    pub fn params(&self) -> Result<HamiltonianParams, CliError> {
        match (&self.hamiltonian, &self.circuit) {
            (Some(p), _) => {
                p.validate().map_err(CliError::config)?;
                Ok(*p)
            }
            (None, Some(c)) => circuit_hamiltonian(c).map_err(CliError::config),
            (None, None) => Err(CliError::Config("no Hamiltonian source".into())),
        }
    }

    pub fn initial(&self) -> Result<GaussianState, CliError> {
        match self.initial_state {
            InitialState::Vacuum => vacuum(2),
            InitialState::Thermal { nu_plus, nu_minus } => thermal(nu_plus, nu_minus),
            InitialState::TwoModeSqueezed { r } => two_mode_squeezed(r),
        }
        .map_err(CliError::config)
    }

    /// Requested columns, deduplicated, in canonical order.
    pub fn columns(&self) -> Vec<Observable> {
        let mut cols = self.outputs.clone();
        cols.sort();
        cols.dedup();
        cols
    }

    /// Normalized JSON echo with sorted keys and every default made explicit.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("config serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{"hamiltonian": {"omega_a": 1.3, "omega_b": 0.7, "g_bs": 0.2, "g_sq": 0.2}}"#;

    #[test]
    fn defaults_fill_in() {
        let cfg = ExperimentConfig::parse(MINIMAL).unwrap();
        assert_eq!(cfg.initial_state, InitialState::Vacuum);
        assert_eq!(cfg.columns(), default_outputs());
        assert!(cfg.time_grid.is_none());
    }

    #[test]
    fn rejects_two_sources_and_unknown_keys() {
        let both = r#"{"hamiltonian": {"omega_a": 1, "omega_b": 1},
            "circuit": {"c1": 1, "c2": 1, "c_c": 1, "l1": 1, "l2": 1, "l_c": 1}}"#;
        assert!(matches!(ExperimentConfig::parse(both), Err(CliError::Config(_))));
        assert!(matches!(ExperimentConfig::parse("{}"), Err(CliError::Config(_))));
        let typo = r#"{"hamiltonian": {"omega_a": 1, "omega_b": 1, "gbs": 0.1}}"#;
        assert!(matches!(ExperimentConfig::parse(typo), Err(CliError::Config(_))));
    }

    #[test]
    fn time_grid_endpoints() {
        let g = TimeGrid { t_start: 0.0, t_end: 1.0, n_steps: 11 };
        let t = g.times();
        assert_eq!((t[0], t[10], t.len()), (0.0, 1.0, 11));
        let single = TimeGrid { t_start: 0.0, t_end: 0.0, n_steps: 1 };
        assert_eq!(single.times(), vec![0.0]);
        let backwards = TimeGrid { t_start: 1.0, t_end: 0.0, n_steps: 3 };
        assert!(backwards.validate().is_err());
    }

    #[test]
    fn log_sweep_hits_both_ends() {
        let s = SweepSpec {
            parameter: SweepParameter::LambdaA,
            start: 1e-3,
            end: 1e-1,
            n_points: 3,
            spacing: Spacing::Log,
            time: 1.0,
        };
        let x = s.points().unwrap();
        assert_eq!((x[0], x[2]), (1e-3, 1e-1));
        assert!((x[1] - 1e-2).abs() < 1e-15);
    }

    #[test]
    fn thermal_below_vacuum_is_rejected() {
        let text = r#"{"hamiltonian": {"omega_a": 1, "omega_b": 2},
            "initial_state": {"kind": "thermal", "nu_plus": 0.5, "nu_minus": 1}}"#;
        assert!(matches!(ExperimentConfig::parse(text), Err(CliError::Config(_))));
    }
}
