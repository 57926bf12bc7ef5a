use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::result::parameter_map;
use super::{
    finite, positive, predict, Context, ErrorColumns, ExperimentResult, Row, Schema, Tolerance,
};
use crate::dynamics::{frame_transform, proper_time, Trajectory};
use crate::hilbert::{
    branch_phase, gaussian_packet, make_superposition, principal, CompositeState, PhysicalParams,
    Potential, Spatial,
};
use crate::symmetry::apply_boost;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FramePhaseParams {
    /// Speed of the out-and-back displacement.
    pub speed: f64,
    pub duration: f64,
    /// Even number of path samples minus one.
    pub intervals: usize,
    pub x0: f64,
    pub sigma: f64,
}

impl Default for FramePhaseParams {
    fn default() -> Self {
        Self {
            speed: 1.0,
            duration: 1.0,
            intervals: 1000,
            x0: 0.0,
            sigma: 1.0,
        }
    }
}

impl FramePhaseParams {
    pub fn validate(&self) -> Result<()> {
        finite("speed", self.speed)?;
        positive("duration", self.duration)?;
        positive("sigma", self.sigma)?;
        finite("x0", self.x0)?;
        if self.intervals < 4 || self.intervals % 2 != 0 {
            return Err(Error::InvalidParams(format!(
                "params.intervals = {} must be even and at least 4",
                self.intervals
            )));
        }
        Ok(())
    }
}

pub fn schema() -> Schema {
    Schema::new(
        &["quantity", "branch"],
        &["speed", "duration"],
        &["mass"],
        "measured",
        "predicted",
        ErrorColumns::Full,
    )
}

/// Phase of each branch after a closed trip of the frame: the state is moved
/// into the displaced frame at `t = T`, its residual boost undone, and the
/// result compared with the lab state.
pub fn round_trip_phases(
    state: &CompositeState,
    traj: &Trajectory,
    params: &PhysicalParams,
) -> Result<Vec<f64>> {
    let t = traj.duration();
    let primed = frame_transform(state, traj, t, params)?;
    let unboosted = apply_boost(&primed, traj.velocity(t)?, 0.0, params)?;
    (0..state.dim())
        .map(|i| branch_phase(&unboosted, state, i).map(|b| b.phase))
        .collect()
}

/// Out-and-back displacement at constant speed: per-branch frame phase, its
/// proper-time reading, the relative phase between branches and the
/// dilation of the path itself.
pub fn exp_frame_phase(ctx: &Context, p: &FramePhaseParams) -> Result<ExperimentResult> {
    let start = Instant::now();
    p.validate()?;
    let internal = ctx.internal.clone();
    let params = ctx.params(&internal, Potential::None)?;
    let traj = Trajectory::triangular(p.duration, p.speed, p.intervals)?;
    traj.check_subluminal(ctx.c)?;
    let wf = gaussian_packet(&ctx.grid, p.x0, 0.0, p.sigma, ctx.hbar)?;
    let weights = vec![Complex64::new(1.0, 0.0); internal.dim()];
    let state = make_superposition(&internal, &weights, &Spatial::Shared(wf))?;
    let phases = round_trip_phases(&state, &traj, &params)?;
    let tau = proper_time(&traj, &params)?;

    let masses: Vec<f64> = internal
        .levels()
        .iter()
        .map(|&e| predict::mass(internal.e0(), e, ctx.c))
        .collect();
    let dtau = predict::triangular_delta_tau(p.speed, p.duration, ctx.c);
    let beta2 = (p.speed / ctx.c).powi(2);
    let with_inputs = |r: Row| r.input("speed", p.speed).input("duration", p.duration);
    let mut rows = Vec::new();
    for (i, (&phase, &mass)) in phases.iter().zip(&masses).enumerate() {
        let b = i.to_string();
        let predicted = predict::triangular_frame_phase(mass, p.speed, p.duration, ctx.hbar);
        rows.push(
            with_inputs(Row::phase(
                &["phase", &b],
                phase,
                predicted,
                ctx.tolerance(Tolerance::abs(1e-6)),
            ))
            .extra("mass", mass),
        );
        let reading = predict::proper_time_phase(mass, dtau, ctx.c, ctx.hbar);
        rows.push(
            with_inputs(Row::phase(
                &["proper_time_reading", &b],
                phase,
                reading,
                ctx.tolerance(Tolerance::rel(beta2, 1e-12)),
            ))
            .extra("mass", mass),
        );
    }
    for i in 1..phases.len() {
        let label = format!("0-{i}");
        let measured = principal(phases[i] - phases[0]);
        let predicted =
            predict::triangular_frame_phase(masses[i] - masses[0], p.speed, p.duration, ctx.hbar);
        rows.push(with_inputs(Row::phase(
            &["relative_phase", &label],
            measured,
            predicted,
            ctx.tolerance(Tolerance::abs(1e-6)),
        )));
    }
    rows.push(with_inputs(Row::new(
        &["delta_tau", ""],
        tau.delta_tau,
        dtau,
        ctx.tolerance(Tolerance::abs(1e-10)),
    )));
    rows.push(with_inputs(Row::new(
        &["delta_tau_lowest", ""],
        tau.delta_tau_lowest,
        predict::triangular_action(p.speed, p.duration) / (ctx.c * ctx.c),
        ctx.tolerance(Tolerance::abs(1e-12)),
    )));
    Ok(ExperimentResult::new(
        "exp_frame_phase",
        parameter_map(p, ctx),
        schema(),
        rows,
        start.elapsed().as_secs_f64(),
    ))
}
