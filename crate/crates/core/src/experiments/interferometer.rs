use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::result::parameter_map;
use super::{positive, predict, Context, ErrorColumns, ExperimentResult, Row, Schema, Tolerance};
use crate::dynamics::{internal_frequency, Trajectory};
use crate::hilbert::{InternalSpace, PhysicalParams, Potential};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InterferometerParams {
    pub delta_e: f64,
    pub g: f64,
    pub duration: f64,
    pub ramp: f64,
    pub intervals: usize,
    /// Target clock phase differences `dE dtau / hbar`, in units of pi.
    pub phase_over_pi: Vec<f64>,
}

impl Default for InterferometerParams {
    fn default() -> Self {
        Self {
            delta_e: 10.0,
            g: 1.0,
            duration: 40.0,
            ramp: 1.0,
            intervals: 4000,
            phase_over_pi: vec![0.0, 0.5, 1.0],
        }
    }
}

impl InterferometerParams {
    pub fn validate(&self) -> Result<()> {
        positive("delta_e", self.delta_e)?;
        positive("g", self.g)?;
        positive("duration", self.duration)?;
        positive("ramp", self.ramp)?;
        if 2.0 * self.ramp > self.duration {
            return Err(Error::InvalidParams(format!(
                "params.ramp = {} exceeds half of params.duration = {}",
                self.ramp, self.duration
            )));
        }
        if self.intervals < 4 {
            return Err(Error::InvalidParams(format!(
                "params.intervals = {} is below 4",
                self.intervals
            )));
        }
        if self.phase_over_pi.is_empty() {
            return Err(Error::InvalidParams(
                "params.phase_over_pi must not be empty".into(),
            ));
        }
        for (i, x) in self.phase_over_pi.iter().enumerate() {
            if !(x.is_finite() && *x >= 0.0) {
                return Err(Error::InvalidParams(format!(
                    "params.phase_over_pi[{i}] = {x} must be non-negative"
                )));
            }
        }
        Ok(())
    }
}

pub fn schema() -> Schema {
    Schema::new(
        &["case"],
        &["phase_over_pi", "height"],
        &["delta_tau"],
        "visibility_measured",
        "visibility_predicted",
        ErrorColumns::Full,
    )
}

/// Accumulated clock phase `int omega dt` along `traj`, with the rate taken
/// at each segment's velocity and midpoint position.
fn clock_angle(traj: &Trajectory, omega0: f64, params: &PhysicalParams) -> Result<f64> {
    let h = traj.step();
    let xs = traj.positions();
    let mut angle = 0.0;
    for (k, v) in traj.segment_velocities().into_iter().enumerate() {
        let mid = 0.5 * (xs[k] + xs[k + 1]);
        angle += internal_frequency(omega0, v, params.phi(mid), params)? * h;
    }
    Ok(angle)
}

/// `|<chi_1|chi_2>|` for the two-level clock `(|0> + |1>)/sqrt 2` carried
/// along each arm, the upper level advancing at the local rate.
pub fn interferometer_visibility(
    arm1: &Trajectory,
    arm2: &Trajectory,
    delta_e: f64,
    params: &PhysicalParams,
) -> Result<(f64, f64)> {
    let p1 = arm1.positions();
    let p2 = arm2.positions();
    if (arm1.duration() - arm2.duration()).abs() > 1e-12 * arm1.duration()
        || p1[0] != p2[0]
        || p1[p1.len() - 1] != p2[p2.len() - 1]
    {
        return Err(Error::MismatchedEndpoints(format!(
            "arms run ({}, {}) -> ({}, {}) over {} and {}",
            p1[0],
            p2[0],
            p1[p1.len() - 1],
            p2[p2.len() - 1],
            arm1.duration(),
            arm2.duration()
        )));
    }
    let omega0 = delta_e / params.hbar();
    let a1 = clock_angle(arm1, omega0, params)?;
    let a2 = clock_angle(arm2, omega0, params)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let chi = |a: f64| [Complex64::new(s, 0.0), Complex64::from_polar(s, -a)];
    let (c1, c2) = (chi(a1), chi(a2));
    let inner: Complex64 = c1.iter().zip(&c2).map(|(x, y)| x.conj() * y).sum();
    Ok((inner.norm(), a1 - a2))
}

/// Two clocks, one kept on the ground and one lifted to a height chosen to
/// reach each target phase, compared in a uniform field.
pub fn exp_interferometer(ctx: &Context, p: &InterferometerParams) -> Result<ExperimentResult> {
    let start = Instant::now();
    p.validate()?;
    let internal = InternalSpace::structureless(ctx.e0())?;
    let params = ctx.params(&internal, Potential::UniformField { g: p.g })?;
    let ground = Trajectory::stationary(p.duration, p.intervals)?;
    let pi = std::f64::consts::PI;

    let rows: Vec<Result<Row>> = p
        .phase_over_pi
        .par_iter()
        .map(|&target| {
            let height = predict::tower_height(
                target * pi,
                p.delta_e,
                p.g,
                p.duration,
                p.ramp,
                ctx.c,
                ctx.hbar,
            )
            .ok_or_else(|| {
                Error::InvalidParams(format!(
                    "no tower height reaches phase {target} pi with these params"
                ))
            })?;
            let tower = if height == 0.0 {
                ground.clone()
            } else {
                Trajectory::tower(p.duration, p.ramp, height, p.intervals)?
            };
            tower.check_subluminal(ctx.c)?;
            let (measured, _) = interferometer_visibility(&tower, &ground, p.delta_e, &params)?;
            let dtau = predict::tower_delta_tau(p.g, height, p.duration, p.ramp, ctx.c);
            let predicted = predict::visibility(p.delta_e, dtau, ctx.hbar);
            let case = if height == 0.0 { "identical" } else { "tower" };
            Ok(Row::new(
                &[case],
                measured,
                predicted,
                ctx.tolerance(Tolerance::abs(1e-6)),
            )
            .input("phase_over_pi", target)
            .input("height", height)
            .extra("delta_tau", dtau))
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(ExperimentResult::new(
        "exp_interferometer",
        parameter_map(p, ctx),
        schema(),
        rows,
        start.elapsed().as_secs_f64(),
    ))
}
