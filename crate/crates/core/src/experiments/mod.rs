//! Reproducible measured-versus-predicted experiments.
//!
//! Each experiment simulates with the [`crate::dynamics`] and
//! [`crate::symmetry`] machinery and compares against closed forms kept in
//! [`predict`], which never sees simulation state.

mod bargmann;
mod clock;
mod frame_phase;
mod interferometer;
mod newtonian;
pub mod predict;
mod result;
mod wep;

use serde::{Deserialize, Serialize};

use crate::hilbert::{GridSpec, InternalSpace, PhysicalParams, Potential};
use crate::{Error, Result};

pub use bargmann::{exp_bargmann, BargmannParams};
pub use clock::{exp_clock_dilation, ClockMode, ClockParams};
pub use frame_phase::{exp_frame_phase, round_trip_phases, FramePhaseParams};
pub use interferometer::{exp_interferometer, interferometer_visibility, InterferometerParams};
pub use newtonian::{
    exp_newtonian_sweep, split_vs_newtonian, Discrepancy, NewtonianSweepParams, MIN_SWEEP_POINTS,
};
pub use result::{ErrorColumns, ExperimentResult, Row, Schema, Tolerance};
pub use wep::{exp_wep, WepParams};

/// Shared physical setting of a run: units, grid and internal levels.
#[derive(Debug, Clone, PartialEq)]
pub struct Context {
    pub hbar: f64,
    pub c: f64,
    pub grid: GridSpec,
    pub internal: InternalSpace,
    /// Replaces the numeric value of every row tolerance when set.
    pub tolerance: Option<f64>,
}

impl Context {
    pub fn new(hbar: f64, c: f64, grid: GridSpec, internal: InternalSpace) -> Result<Self> {
        PhysicalParams::new(hbar, c, &internal, Potential::None)?;
        Ok(Self {
            hbar,
            c,
            grid,
            internal,
            tolerance: None,
        })
    }

    /// `hbar = 1`, `c = 10`, `E0 = 100` with levels `[0, 10]`, on 2048 points
    /// over `[-40, 40]`.
    pub fn desk_scale() -> Self {
        let internal = InternalSpace::new(100.0, vec![0.0, 10.0]).expect("valid levels");
        let grid = GridSpec::new(-40.0, 40.0, 2048).expect("valid grid");
        Self::new(1.0, 10.0, grid, internal).expect("valid units")
    }

    pub fn with_tolerance(mut self, tolerance: Option<f64>) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn e0(&self) -> f64 {
        self.internal.e0()
    }

    pub fn m(&self) -> f64 {
        self.e0() / (self.c * self.c)
    }

    pub(crate) fn params(
        &self,
        internal: &InternalSpace,
        potential: Potential,
    ) -> Result<PhysicalParams> {
        PhysicalParams::new(self.hbar, self.c, internal, potential)
    }

    /// Internal space with this context's rest energy and the given levels.
    pub(crate) fn levels(&self, levels: Vec<f64>) -> Result<InternalSpace> {
        InternalSpace::new(self.e0(), levels)
    }

    pub(crate) fn tolerance(&self, declared: Tolerance) -> Tolerance {
        match self.tolerance {
            Some(t) => declared.with_value(t),
            None => declared,
        }
    }
}

/// The six experiments, by configuration name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ExperimentName {
    #[serde(rename = "exp_bargmann")]
    Bargmann,
    #[serde(rename = "exp_clock_dilation")]
    ClockDilation,
    #[serde(rename = "exp_interferometer")]
    Interferometer,
    #[serde(rename = "exp_newtonian_sweep")]
    NewtonianSweep,
    #[serde(rename = "exp_wep")]
    Wep,
    #[serde(rename = "exp_frame_phase")]
    FramePhase,
}

impl ExperimentName {
    pub const ALL: [ExperimentName; 6] = [
        ExperimentName::Bargmann,
        ExperimentName::ClockDilation,
        ExperimentName::Interferometer,
        ExperimentName::NewtonianSweep,
        ExperimentName::Wep,
        ExperimentName::FramePhase,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentName::Bargmann => "exp_bargmann",
            ExperimentName::ClockDilation => "exp_clock_dilation",
            ExperimentName::Interferometer => "exp_interferometer",
            ExperimentName::NewtonianSweep => "exp_newtonian_sweep",
            ExperimentName::Wep => "exp_wep",
            ExperimentName::FramePhase => "exp_frame_phase",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            ExperimentName::Bargmann => "boost-translation loop phase on each mass branch",
            ExperimentName::ClockDilation => "internal clock rate versus speed and potential",
            ExperimentName::Interferometer => {
                "which-way visibility from proper-time difference of two arms"
            }
            ExperimentName::NewtonianSweep => {
                "split versus Newtonian Hamiltonian as the mass defect shrinks"
            }
            ExperimentName::Wep => {
                "free-fall acceleration and clock rate per internal level and Hamiltonian"
            }
            ExperimentName::FramePhase => {
                "round-trip phase of a displaced frame and its proper-time reading"
            }
        }
    }

    /// The closed form each experiment is checked against.
    pub fn anchor(self) -> &'static str {
        match self {
            ExperimentName::Bargmann => "phi_i = -M_i a w / hbar",
            ExperimentName::ClockDilation => "omega = omega0 (1 - v^2/2c^2 + Phi/c^2)",
            ExperimentName::Interferometer => "V = |cos(dE dtau / 2 hbar)|",
            ExperimentName::NewtonianSweep => "H_split - H_newton = eps (m Phi - p^2/2m)",
            ExperimentName::Wep => "d<v>/dt = -g",
            ExperimentName::FramePhase => "f = (M/hbar) int xi'^2/2 dt ~ M c^2 dtau / hbar",
        }
    }

    /// Keys of the experiment's `params` table.
    pub fn keys(self) -> Vec<String> {
        let value =
            serde_json::to_value(ExperimentParams::default_for(self)).expect("params serialize");
        value
            .as_object()
            .map(|m| m.keys().cloned().collect())
            .unwrap_or_default()
    }
}

impl std::fmt::Display for ExperimentName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ExperimentName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExperimentName::ALL
            .into_iter()
            .find(|e| e.as_str() == s || e.as_str().strip_prefix("exp_") == Some(s))
            .ok_or_else(|| Error::InvalidExperiment(format!("unknown experiment {s:?}")))
    }
}

/// Experiment-specific parameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ExperimentParams {
    Bargmann(BargmannParams),
    ClockDilation(ClockParams),
    Interferometer(InterferometerParams),
    NewtonianSweep(NewtonianSweepParams),
    Wep(WepParams),
    FramePhase(FramePhaseParams),
}

impl ExperimentParams {
    pub fn default_for(name: ExperimentName) -> Self {
        match name {
            ExperimentName::Bargmann => Self::Bargmann(BargmannParams::default()),
            ExperimentName::ClockDilation => Self::ClockDilation(ClockParams::default()),
            ExperimentName::Interferometer => Self::Interferometer(InterferometerParams::default()),
            ExperimentName::NewtonianSweep => Self::NewtonianSweep(NewtonianSweepParams::default()),
            ExperimentName::Wep => Self::Wep(WepParams::default()),
            ExperimentName::FramePhase => Self::FramePhase(FramePhaseParams::default()),
        }
    }

    /// Decodes a `params` table for `name`; unknown keys are rejected.
    pub fn from_value(
        name: ExperimentName,
        value: serde_json::Value,
    ) -> std::result::Result<Self, serde_json::Error> {
        Ok(match name {
            ExperimentName::Bargmann => Self::Bargmann(serde_json::from_value(value)?),
            ExperimentName::ClockDilation => Self::ClockDilation(serde_json::from_value(value)?),
            ExperimentName::Interferometer => Self::Interferometer(serde_json::from_value(value)?),
            ExperimentName::NewtonianSweep => Self::NewtonianSweep(serde_json::from_value(value)?),
            ExperimentName::Wep => Self::Wep(serde_json::from_value(value)?),
            ExperimentName::FramePhase => Self::FramePhase(serde_json::from_value(value)?),
        })
    }

    pub fn name(&self) -> ExperimentName {
        match self {
            Self::Bargmann(_) => ExperimentName::Bargmann,
            Self::ClockDilation(_) => ExperimentName::ClockDilation,
            Self::Interferometer(_) => ExperimentName::Interferometer,
            Self::NewtonianSweep(_) => ExperimentName::NewtonianSweep,
            Self::Wep(_) => ExperimentName::Wep,
            Self::FramePhase(_) => ExperimentName::FramePhase,
        }
    }

    /// Checks the parameters on their own, before any simulation.
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Bargmann(p) => p.validate(),
            Self::ClockDilation(p) => p.validate(),
            Self::Interferometer(p) => p.validate(),
            Self::NewtonianSweep(p) => p.validate(),
            Self::Wep(p) => p.validate(),
            Self::FramePhase(p) => p.validate(),
        }
    }
}

/// Runs the experiment described by `params`.
pub fn run(ctx: &Context, params: &ExperimentParams) -> Result<ExperimentResult> {
    params.validate()?;
    match params {
        ExperimentParams::Bargmann(p) => exp_bargmann(ctx, p),
        ExperimentParams::ClockDilation(p) => exp_clock_dilation(ctx, p),
        ExperimentParams::Interferometer(p) => exp_interferometer(ctx, p),
        ExperimentParams::NewtonianSweep(p) => exp_newtonian_sweep(ctx, p),
        ExperimentParams::Wep(p) => exp_wep(ctx, p),
        ExperimentParams::FramePhase(p) => exp_frame_phase(ctx, p),
    }
}

pub(crate) fn positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!(
            "params.{name} must be positive, got {value}"
        )))
    }
}

pub(crate) fn finite(name: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!(
            "params.{name} must be finite, got {value}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for name in ExperimentName::ALL {
            assert_eq!(name.as_str().parse::<ExperimentName>().unwrap(), name);
            let json = serde_json::to_string(&name).unwrap();
            assert_eq!(serde_json::from_str::<ExperimentName>(&json).unwrap(), name);
            assert!(!name.keys().is_empty());
        }
        assert_eq!(
            "bargmann".parse::<ExperimentName>().unwrap(),
            ExperimentName::Bargmann
        );
        assert!("exp_nothing".parse::<ExperimentName>().is_err());
    }

    #[test]
    fn params_round_trip() {
        for name in ExperimentName::ALL {
            let p = ExperimentParams::default_for(name);
            let v = serde_json::to_value(&p).unwrap();
            assert_eq!(ExperimentParams::from_value(name, v).unwrap(), p);
            p.validate().unwrap();
        }
    }
}
