use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::result::parameter_map;
use super::{
    finite, positive, predict, Context, ErrorColumns, ExperimentResult, Row, Schema, Tolerance,
};
use crate::dynamics::{clock_phase, fit_clock_frequency, HamiltonianKind, Propagator};
use crate::fit::quadratic;
use crate::hilbert::{gaussian_packet, make_superposition, Potential, Spatial};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WepParams {
    pub kinds: Vec<HamiltonianKind>,
    /// Clock splitting; the levels are `-delta_e/2` and `+delta_e/2`.
    pub delta_e: f64,
    pub g: f64,
    pub x0: f64,
    pub sigma: f64,
    pub duration: f64,
    pub dt: f64,
    pub sample_every: usize,
}

impl Default for WepParams {
    fn default() -> Self {
        Self {
            kinds: vec![
                HamiltonianKind::DynamicalMass { rest_energy: false },
                HamiltonianKind::LowEnergy,
                HamiltonianKind::Split,
                HamiltonianKind::Newtonian,
            ],
            delta_e: 0.1,
            g: 0.5,
            x0: 10.0,
            sigma: 1.0,
            duration: 2.0,
            dt: 1e-3,
            sample_every: 10,
        }
    }
}

impl WepParams {
    pub fn validate(&self) -> Result<()> {
        if self.kinds.is_empty() {
            return Err(Error::InvalidParams(
                "params.kinds must not be empty".into(),
            ));
        }
        positive("delta_e", self.delta_e)?;
        finite("g", self.g)?;
        finite("x0", self.x0)?;
        positive("sigma", self.sigma)?;
        positive("duration", self.duration)?;
        positive("dt", self.dt)?;
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
        &["kind", "branch", "quantity"],
        &["g"],
        &["clock_rate"],
        "measured",
        "predicted",
        ErrorColumns::Full,
    )
}

/// Drops a two-level packet from rest at `x0` in the field `g` under each
/// Hamiltonian kind. Records the fitted acceleration of each branch and the
/// fractional shift of the clock rate from `delta_e / hbar`.
pub fn exp_wep(ctx: &Context, p: &WepParams) -> Result<ExperimentResult> {
    let start = Instant::now();
    p.validate()?;
    let blocks: Vec<Result<Vec<Row>>> = p
        .kinds
        .par_iter()
        .map(|&kind| drop_test(ctx, p, kind))
        .collect();
    let mut rows = Vec::new();
    for b in blocks {
        rows.extend(b?);
    }
    Ok(ExperimentResult::new(
        "exp_wep",
        parameter_map(p, ctx),
        schema(),
        rows,
        start.elapsed().as_secs_f64(),
    ))
}

fn drop_test(ctx: &Context, p: &WepParams, kind: HamiltonianKind) -> Result<Vec<Row>> {
    let internal = ctx.levels(vec![-0.5 * p.delta_e, 0.5 * p.delta_e])?;
    let params = ctx.params(&internal, Potential::UniformField { g: p.g })?;
    let wf = gaussian_packet(&ctx.grid, p.x0, 0.0, p.sigma, ctx.hbar)?;
    let weights = [Complex64::new(1.0, 0.0); 2];
    let state = make_superposition(&internal, &weights, &Spatial::Shared(wf))?;
    let steps = (p.duration / p.dt).round() as usize;
    let prop = Propagator::new(
        kind,
        &params,
        &ctx.grid,
        &internal,
        p.duration / steps as f64,
    )?;
    let dt = prop.dt();
    let mut times = Vec::new();
    let mut positions = [Vec::new(), Vec::new()];
    let mut overlaps = Vec::new();
    prop.run_observed(&state, steps, p.sample_every, |k, s| {
        times.push(k as f64 * dt);
        for (i, xs) in positions.iter_mut().enumerate() {
            xs.push(s.mean_position(i));
        }
        overlaps.push(clock_phase(s, 0, 1));
    })?;
    let omega0 = p.delta_e / ctx.hbar;
    let rate = fit_clock_frequency(&times, &overlaps)?;
    let shift = rate / omega0 - 1.0;
    let name = kind.name();
    let mut rows = Vec::new();
    for (i, xs) in positions.iter().enumerate() {
        let accel = 2.0 * quadratic(&times, xs)[2];
        let branch = i.to_string();
        rows.push(
            Row::new(
                &[name, &branch, "acceleration"],
                accel,
                predict::free_fall(p.g),
                ctx.tolerance(Tolerance::rel(1e-6, 1e-9)),
            )
            .input("g", p.g)
            .extra("clock_rate", rate),
        );
    }
    let clock = match kind {
        // Gravity and motion leave the Newtonian clock untouched.
        HamiltonianKind::Newtonian => Some((0.0, Tolerance::abs(1e-8))),
        HamiltonianKind::LowEnergy => {
            let predicted = predict::falling_clock_shift(p.g, p.x0, p.duration, ctx.c)
                + predict::spread_shift(p.sigma, ctx.m(), ctx.c, ctx.hbar);
            Some((predicted, Tolerance::rel(1e-2, 1e-9)))
        }
        _ => None,
    };
    if let Some((predicted, tol)) = clock {
        rows.push(
            Row::new(
                &[name, "0-1", "clock_shift"],
                shift,
                predicted,
                ctx.tolerance(tol),
            )
            .input("g", p.g)
            .extra("clock_rate", rate),
        );
    }
    Ok(rows)
}
