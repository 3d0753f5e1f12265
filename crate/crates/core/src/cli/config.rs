// Copyright 2026 The deltakick Authors
// SPDX-License-Identifier: Apache-2.0

//! TOML run configuration. Unknown keys are rejected at every level.

use std::path::{Path, PathBuf};

use nalgebra::Vector3;
use serde::Deserialize;

use crate::analysis::LogBase;
use crate::environment::{
    GaussianEnvironment, MeanFunction, MeanShifted, SingleModeThermal, TabulatedKernel, WhiteKickKernel,
};
use crate::error::{Error, Result};
use crate::kicks::{InteractionGeometry, KickSchedule};
use crate::oracle::{FockSpec, PulseShape};
use crate::pauli::{BlochVector, C64};

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub seed: Option<u64>,
    pub log_base: Option<String>,
    pub tol: Option<f64>,
    pub max_kicks: Option<usize>,
    pub environment: EnvConfig,
    pub geometry: GeometryConfig,
    #[serde(default)]
    pub schedule: ScheduleConfig,
    #[serde(default)]
    pub initial_state: InitialState,
    #[serde(default)]
    pub analysis: AnalysisConfig,
    #[serde(default)]
    pub oracle: OracleConfig,
    pub dephasing: Option<DephasingPair>,
    pub sweep: Option<SweepConfig>,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "lowercase")]
pub enum Model {
    Thermal,
    White,
    Tabulated,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvConfig {
    pub model: Model,
    pub omega: Option<f64>,
    pub nbar: Option<f64>,
    pub beta: Option<f64>,
    /// `[re, im]` of the coherent displacement.
    pub displacement: Option<[f64; 2]>,
    pub variance: Option<f64>,
    pub path: Option<PathBuf>,
    pub mean_shift: Option<MeanShiftConfig>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, tag = "kind", rename_all = "lowercase")]
pub enum MeanShiftConfig {
    Constant { value: f64 },
    Cosine { amplitude: f64, frequency: f64, phase: f64 },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryConfig {
    pub h: [f64; 3],
    pub alpha: [f64; 3],
    pub omega: f64,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleConfig {
    #[serde(default)]
    pub times: Vec<f64>,
    pub weights: Option<Vec<f64>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialState {
    pub u: [f64; 3],
}

impl Default for InitialState {
    fn default() -> Self {
        Self { u: [0.0, 0.0, 1.0] }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisConfig {
    #[serde(default = "yes")]
    pub divisibility: bool,
    #[serde(default = "yes")]
    pub fixed_point: bool,
    #[serde(default = "yes")]
    pub entropy: bool,
    #[serde(default)]
    pub oracle_check: bool,
    #[serde(default = "default_samples")]
    pub samples: usize,
}

fn yes() -> bool {
    true
}

fn default_samples() -> usize {
    10_000
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            divisibility: true,
            fixed_point: true,
            entropy: true,
            oracle_check: false,
            samples: default_samples(),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleConfig {
    /// Fixed truncation; adaptive growth from `20 + 10 n̄` when absent.
    pub dim: Option<usize>,
    #[serde(default = "default_max_dim")]
    pub max_dim: usize,
    #[serde(default = "default_oracle_tol")]
    pub tolerance: f64,
    #[serde(default)]
    pub nascent: bool,
    #[serde(default = "default_dt0")]
    pub nascent_dt0: f64,
    #[serde(default = "default_halvings")]
    pub nascent_halvings: usize,
    #[serde(default = "default_steps")]
    pub nascent_steps: usize,
    #[serde(default)]
    pub shape: ShapeConfig,
}

#[derive(Clone, Copy, Debug, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeConfig {
    #[default]
    Gaussian,
    Rectangular,
}

impl From<ShapeConfig> for PulseShape {
    fn from(s: ShapeConfig) -> Self {
        match s {
            ShapeConfig::Gaussian => PulseShape::Gaussian,
            ShapeConfig::Rectangular => PulseShape::Rectangular,
        }
    }
}

fn default_max_dim() -> usize {
    200
}
fn default_oracle_tol() -> f64 {
    1e-8
}
fn default_dt0() -> f64 {
    0.2
}
fn default_halvings() -> usize {
    3
}
fn default_steps() -> usize {
    100
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            dim: None,
            max_dim: default_max_dim(),
            tolerance: default_oracle_tol(),
            nascent: false,
            nascent_dt0: default_dt0(),
            nascent_halvings: default_halvings(),
            nascent_steps: default_steps(),
            shape: ShapeConfig::default(),
        }
    }
}

/// Kick counts `n < m` of the two dephasing channels compared by `divisibility`.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DephasingPair {
    pub n: usize,
    pub m: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    /// `t₁ − t₀` of a two-kick schedule starting at the first configured time.
    Gap,
    Nbar,
    /// Qubit frequency `Ω`.
    Omega,
    /// Mode frequency `ω`.
    EnvOmega,
    /// White-kernel variance.
    Variance,
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub parameter: SweepParameter,
    pub from: f64,
    pub to: f64,
    pub points: usize,
}

impl Axis {
    pub fn values(&self) -> Result<Vec<f64>> {
        if self.points == 0 || !self.from.is_finite() || !self.to.is_finite() {
            return Err(Error::Config(format!("invalid sweep range for {:?}", self.parameter)));
        }
        if self.points == 1 {
            return Ok(vec![self.from]);
        }
        let step = (self.to - self.from) / (self.points - 1) as f64;
        Ok((0..self.points).map(|i| self.from + step * i as f64).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    GammaAbs,
    Purity,
    Entropy,
    Lambda4,
    FixedPointNorm,
    Commuting,
}

impl Quantity {
    pub fn column(self) -> &'static str {
        match self {
            Quantity::GammaAbs => "gamma_abs",
            Quantity::Purity => "purity",
            Quantity::Entropy => "entropy",
            Quantity::Lambda4 => "lambda4",
            Quantity::FixedPointNorm => "fixed_point_norm",
            Quantity::Commuting => "commuting",
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub parameter: SweepParameter,
    pub from: f64,
    pub to: f64,
    pub points: usize,
    pub second: Option<Axis>,
    pub quantities: Vec<Quantity>,
}

impl SweepConfig {
    pub fn first(&self) -> Axis {
        Axis {
            parameter: self.parameter,
            from: self.from,
            to: self.to,
            points: self.points,
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: Option<PathBuf>,
}

fn vec3(v: [f64; 3]) -> Vector3<f64> {
    Vector3::new(v[0], v[1], v[2])
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut cfg = Self::parse(&text)?;
        if let Some(p) = cfg.environment.path.as_mut() {
            if p.is_relative() {
                if let Some(parent) = path.parent() {
                    *p = parent.join(&*p);
                }
            }
        }
        Ok(cfg)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        self.log_base()?;
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::Config(format!("tol must be positive, got {t}")));
            }
        }
        let e = &self.environment;
        let need =
            |name: &str, v: Option<f64>| v.ok_or_else(|| Error::Config(format!("environment.{name} is required")));
        match e.model {
            Model::Thermal => {
                need("omega", e.omega)?;
                if e.nbar.is_some() && e.beta.is_some() {
                    return Err(Error::Config("give either environment.nbar or environment.beta".into()));
                }
            }
            Model::White => {
                need("variance", e.variance)?;
            }
            Model::Tabulated => {
                if e.path.is_none() {
                    return Err(Error::Config("environment.path is required".into()));
                }
            }
        }
        if let Some(w) = &self.schedule.weights {
            if w.len() != self.schedule.times.len() {
                return Err(Error::Config("schedule.weights must match schedule.times".into()));
            }
        }
        Ok(())
    }

    pub fn log_base(&self) -> Result<LogBase> {
        parse_log_base(self.log_base.as_deref().unwrap_or("e"))
    }

    pub fn thermal(&self) -> Result<SingleModeThermal> {
        let e = &self.environment;
        if !matches!(e.model, Model::Thermal) {
            return Err(Error::Config(
                "this command needs environment.model = \"thermal\"".into(),
            ));
        }
        let omega = e.omega.unwrap_or(1.0);
        let base = match e.beta {
            Some(b) => SingleModeThermal::from_beta(omega, b)?,
            None => SingleModeThermal::new(omega, e.nbar.unwrap_or(0.0))?,
        };
        let d = e.displacement.unwrap_or([0.0, 0.0]);
        Ok(base.with_displacement(C64::new(d[0], d[1])))
    }

    pub fn environment(&self) -> Result<Box<dyn GaussianEnvironment>> {
        let e = &self.environment;
        let base: Box<dyn GaussianEnvironment> = match e.model {
            Model::Thermal => Box::new(self.thermal()?),
            Model::White => Box::new(WhiteKickKernel::new(e.variance.unwrap_or(0.0))?),
            Model::Tabulated => Box::new(TabulatedKernel::load(e.path.as_deref().unwrap_or(Path::new("")))?),
        };
        Ok(match &e.mean_shift {
            None => base,
            Some(MeanShiftConfig::Constant { value }) => {
                Box::new(MeanShifted::new(base, MeanFunction::Constant(*value)))
            }
            Some(MeanShiftConfig::Cosine {
                amplitude,
                frequency,
                phase,
            }) => Box::new(MeanShifted::new(
                base,
                MeanFunction::Cosine {
                    amplitude: *amplitude,
                    frequency: *frequency,
                    phase: *phase,
                },
            )),
        })
    }

    pub fn fock_spec(&self) -> Result<FockSpec> {
        if self.environment.mean_shift.is_some() {
            return Err(Error::Config(
                "the oracle does not support environment.mean_shift".into(),
            ));
        }
        let env = self.thermal()?;
        FockSpec::from_thermal(
            &env,
            self.oracle.dim.unwrap_or_else(|| FockSpec::starting_dim(env.nbar)),
        )
    }

    pub fn geometry(&self) -> Result<InteractionGeometry> {
        let g = &self.geometry;
        InteractionGeometry::new(vec3(g.h), vec3(g.alpha), g.omega)
    }

    /// `None` for an empty schedule.
    pub fn schedule(&self) -> Result<Option<KickSchedule>> {
        let s = &self.schedule;
        if s.times.is_empty() {
            return Ok(None);
        }
        let w = s.weights.clone().unwrap_or_else(|| vec![1.0; s.times.len()]);
        KickSchedule::with_weights(s.times.clone(), w).map(Some)
    }

    pub fn initial_state(&self) -> Result<BlochVector> {
        let u = BlochVector(vec3(self.initial_state.u));
        if !u.is_physical(1e-12) {
            return Err(Error::Config(format!("initial_state.u has norm {} > 1", u.norm())));
        }
        Ok(u)
    }
}

pub fn parse_log_base(s: &str) -> Result<LogBase> {
    match s {
        "e" => Ok(LogBase::E),
        "2" => Ok(LogBase::Two),
        other => Err(Error::Config(format!("log_base must be \"e\" or \"2\", got {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
[environment]
model = "thermal"
omega = 1.0

[geometry]
h = [0.0, 0.0, 1.0]
alpha = [1.0, 0.0, 0.0]
omega = 1.0

[schedule]
times = [0.0, 0.5]
"#;

    #[test]
    fn parses_minimal() {
        let cfg = RunConfig::parse(MINIMAL).unwrap();
        assert_eq!(cfg.schedule().unwrap().unwrap().len(), 2);
        assert_eq!(cfg.log_base().unwrap(), LogBase::E);
        assert!(cfg.environment().unwrap().is_even());
        assert_eq!(cfg.fock_spec().unwrap().dim, 20);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        let bad = MINIMAL.replace("[schedule]", "[schedule]\nbogus = 1");
        assert!(matches!(RunConfig::parse(&bad), Err(Error::Config(_))));
        let bad = format!("colour = 3\n{MINIMAL}");
        assert!(RunConfig::parse(&bad).is_err());
        let bad = format!("log_base = \"10\"\n{MINIMAL}");
        assert!(RunConfig::parse(&bad).is_err());
        let bad = MINIMAL.replace("model = \"thermal\"\nomega = 1.0", "model = \"white\"");
        assert!(RunConfig::parse(&bad).is_err());
    }

    #[test]
    fn sweep_axis_values() {
        let cfg = format!(
            "{MINIMAL}\n[sweep]\nparameter = \"nbar\"\nfrom = 0.0\nto = 1.0\npoints = 3\nquantities = [\"gamma_abs\"]\n"
        );
        let cfg = RunConfig::parse(&cfg).unwrap();
        let sw = cfg.sweep.unwrap();
        assert_eq!(sw.first().values().unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(sw.quantities, vec![Quantity::GammaAbs]);
    }
}
