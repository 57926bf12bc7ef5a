use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::result::parameter_map;
use super::{positive, predict, Context, ErrorColumns, ExperimentResult, Row, Schema, Tolerance};
use crate::dynamics::{
    clock_phase, fit_clock_frequency, BranchHamiltonian, HamiltonianKind, Propagator,
};
use crate::hilbert::{gaussian_packet, make_superposition, InternalSpace, Potential, Spatial};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClockMode {
    /// Internal phase integrated along a classical path.
    Semiclassical,
    /// Branch overlap of a propagated wavepacket.
    Wavepacket,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ClockParams {
    pub mode: ClockMode,
    pub v_over_c: Vec<f64>,
    pub gh_over_c2: Vec<f64>,
    /// Clock splitting; the levels are `-delta_e/2` and `+delta_e/2`.
    pub delta_e: f64,
    /// Observation time of the moving clock.
    pub duration: f64,
    /// Observation time of the clock held in the field.
    pub potential_duration: f64,
    /// Height of the clock in the field; `g = (gh/c^2) c^2 / height`.
    pub height: f64,
    /// Phase samples in semiclassical mode.
    pub samples: usize,
    /// Packet width in wavepacket mode.
    pub sigma: f64,
    pub dt: f64,
    /// Steps between overlap samples in wavepacket mode.
    pub sample_every: usize,
}

impl Default for ClockParams {
    fn default() -> Self {
        Self {
            mode: ClockMode::Semiclassical,
            v_over_c: vec![0.05, 0.1, 0.2],
            gh_over_c2: vec![1e-3, 1e-2],
            delta_e: 1.0,
            duration: 10.0,
            potential_duration: 1.0,
            height: 10.0,
            samples: 1000,
            sigma: 5.0,
            dt: 1e-3,
            sample_every: 10,
        }
    }
}

impl ClockParams {
    pub fn validate(&self) -> Result<()> {
        for (i, r) in self.v_over_c.iter().enumerate() {
            if !(r.is_finite() && r.abs() < 1.0) {
                return Err(Error::InvalidParams(format!(
                    "params.v_over_c[{i}] = {r} must lie in (-1, 1)"
                )));
            }
        }
        for (i, r) in self.gh_over_c2.iter().enumerate() {
            if !(r.is_finite() && r.abs() < 1.0) {
                return Err(Error::InvalidParams(format!(
                    "params.gh_over_c2[{i}] = {r} must lie in (-1, 1)"
                )));
            }
        }
        if self.v_over_c.is_empty() && self.gh_over_c2.is_empty() {
            return Err(Error::InvalidParams(
                "params.v_over_c and params.gh_over_c2 are both empty".into(),
            ));
        }
        positive("delta_e", self.delta_e)?;
        positive("duration", self.duration)?;
        positive("potential_duration", self.potential_duration)?;
        positive("height", self.height)?;
        positive("sigma", self.sigma)?;
        positive("dt", self.dt)?;
        if self.samples < 100 {
            return Err(Error::InvalidParams(format!(
                "params.samples = {} is below 100",
                self.samples
            )));
        }
        if self.sample_every == 0 {
            return Err(Error::InvalidParams(
                "params.sample_every must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

pub fn schema() -> Schema {
    Schema::new(
        &["case"],
        &["v_over_c", "gh_over_c2"],
        &["spread_correction"],
        "shift_measured",
        "shift_predicted",
        ErrorColumns::Full,
    )
}

#[derive(Debug, Clone, Copy)]
enum Case {
    Rest,
    Moving(f64),
    Held(f64),
}

impl Case {
    fn label(self) -> &'static str {
        match self {
            Case::Rest => "rest",
            Case::Moving(_) => "velocity",
            Case::Held(_) => "potential",
        }
    }

    fn ratios(self) -> (f64, f64) {
        match self {
            Case::Rest => (0.0, 0.0),
            Case::Moving(r) => (r, 0.0),
            Case::Held(r) => (0.0, r),
        }
    }
}

/// Fractional shift `(omega - omega0) / omega0` of a two-level clock that
/// moves at constant speed or sits at a height in a uniform field.
pub fn exp_clock_dilation(ctx: &Context, p: &ClockParams) -> Result<ExperimentResult> {
    let start = Instant::now();
    p.validate()?;
    let internal = ctx.levels(vec![-0.5 * p.delta_e, 0.5 * p.delta_e])?;
    let mut cases = Vec::new();
    if p.mode == ClockMode::Semiclassical {
        cases.push(Case::Rest);
    }
    cases.extend(p.v_over_c.iter().map(|&r| Case::Moving(r)));
    cases.extend(p.gh_over_c2.iter().map(|&r| Case::Held(r)));

    let rows: Vec<Result<Row>> = cases
        .par_iter()
        .map(|&case| match p.mode {
            ClockMode::Semiclassical => semiclassical(ctx, p, &internal, case),
            ClockMode::Wavepacket => wavepacket(ctx, p, &internal, case),
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(ExperimentResult::new(
        "exp_clock_dilation",
        parameter_map(p, ctx),
        schema(),
        rows,
        start.elapsed().as_secs_f64(),
    ))
}

/// Uniform field and speed realising `case`.
fn field_and_speed(ctx: &Context, p: &ClockParams, case: Case) -> (f64, f64) {
    let c2 = ctx.c * ctx.c;
    match case {
        Case::Rest => (0.0, 0.0),
        Case::Moving(r) => (0.0, r * ctx.c),
        Case::Held(r) => (r * c2 / p.height, 0.0),
    }
}

/// Each branch accumulates `(H_i(p_i, x) - p_i v) / hbar` along the path with
/// `p_i = M_i v`, using the low-energy Hamiltonian.
fn semiclassical(
    ctx: &Context,
    p: &ClockParams,
    internal: &InternalSpace,
    case: Case,
) -> Result<Row> {
    let (g, v) = field_and_speed(ctx, p, case);
    let params = ctx.params(internal, Potential::UniformField { g })?;
    let (duration, x0) = match case {
        Case::Held(_) => (p.potential_duration, p.height),
        _ => (p.duration, 0.0),
    };
    let h: Vec<BranchHamiltonian> = (0..2)
        .map(|i| BranchHamiltonian::new(HamiltonianKind::LowEnergy, internal, &params, i))
        .collect();
    let step = duration / (p.samples - 1) as f64;
    let mut delta = 0.0_f64;
    let mut times = Vec::with_capacity(p.samples);
    let mut overlaps = Vec::with_capacity(p.samples);
    for k in 0..p.samples {
        let t = k as f64 * step;
        times.push(t);
        overlaps.push(Complex64::from_polar(1.0, -delta));
        let mid = x0 + v * (t + 0.5 * step);
        let rate = |i: usize| {
            let pi = internal.mass(i, ctx.c) * v;
            (h[i].kinetic(pi) + h[i].potential(params.phi(mid)) - pi * v) / ctx.hbar
        };
        delta += (rate(1) - rate(0)) * step;
    }
    let omega0 = p.delta_e / ctx.hbar;
    let measured = fit_clock_frequency(&times, &overlaps)? / omega0 - 1.0;
    let (rv, rphi) = case.ratios();
    let predicted = predict::clock_shift(rv * ctx.c, rphi * ctx.c * ctx.c, ctx.c);
    let tol = ctx.tolerance(Tolerance::rel(1e-6, 1e-12));
    Ok(Row::new(&[case.label()], measured, predicted, tol)
        .input("v_over_c", rv)
        .input("gh_over_c2", rphi)
        .extra("spread_correction", 0.0))
}

/// Propagates an equal superposition of the two levels under the low-energy
/// Hamiltonian and fits the winding of the branch overlap.
fn wavepacket(ctx: &Context, p: &ClockParams, internal: &InternalSpace, case: Case) -> Result<Row> {
    let (g, v) = field_and_speed(ctx, p, case);
    let params = ctx.params(internal, Potential::UniformField { g })?;
    let m = ctx.m();
    let (rv, rphi) = case.ratios();
    let spread = predict::spread_shift(p.sigma, m, ctx.c, ctx.hbar);
    let (duration, x0, ideal) = match case {
        Case::Held(_) => (
            p.potential_duration,
            p.height,
            predict::falling_clock_shift(g, p.height, p.potential_duration, ctx.c),
        ),
        _ => (
            p.duration,
            -0.5 * v * p.duration,
            predict::clock_shift(v, 0.0, ctx.c),
        ),
    };
    if !(spread.abs() <= 0.1 * ideal.abs()) {
        return Err(Error::SpreadDominated {
            correction: spread,
            shift: ideal,
        });
    }
    let wf = gaussian_packet(&ctx.grid, x0, m * v, p.sigma, ctx.hbar)?;
    let weights = [Complex64::new(1.0, 0.0); 2];
    let state = make_superposition(internal, &weights, &Spatial::Shared(wf))?;
    let steps = (duration / p.dt).round() as usize;
    let prop = Propagator::new(
        HamiltonianKind::LowEnergy,
        &params,
        &ctx.grid,
        internal,
        duration / steps as f64,
    )?;
    let mut times = Vec::new();
    let mut overlaps = Vec::new();
    let dt = prop.dt();
    prop.run_observed(&state, steps, p.sample_every, |k, s| {
        times.push(k as f64 * dt);
        overlaps.push(clock_phase(s, 0, 1));
    })?;
    let omega0 = p.delta_e / ctx.hbar;
    let measured = fit_clock_frequency(&times, &overlaps)? / omega0 - 1.0;
    let tol = ctx.tolerance(Tolerance::rel(2e-2, 0.0));
    Ok(Row::new(&[case.label()], measured, ideal + spread, tol)
        .input("v_over_c", rv)
        .input("gh_over_c2", rphi)
        .extra("spread_correction", spread))
}
