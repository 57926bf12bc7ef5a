use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::result::parameter_map;
use super::{
    finite, positive, predict, Context, ErrorColumns, ExperimentResult, Row, Schema, Tolerance,
};
use crate::dynamics::{propagate, HamiltonianKind};
use crate::fit::loglog_slope;
use crate::hilbert::{gaussian_packet, make_superposition, overlap, principal, Potential, Spatial};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NewtonianSweepParams {
    /// Mass defects `E_1 / E0`; the levels are `[0, eps E0]`.
    pub epsilons: Vec<f64>,
    pub x0: f64,
    pub p0: f64,
    pub sigma: f64,
    pub g: f64,
    pub duration: f64,
    pub dt: f64,
}

impl Default for NewtonianSweepParams {
    fn default() -> Self {
        Self {
            epsilons: vec![1e-3, 10f64.powf(-2.5), 1e-2, 10f64.powf(-1.5), 1e-1],
            x0: 0.0,
            p0: 1.0,
            sigma: 1.0,
            g: 0.1,
            duration: 1.0,
            dt: 1e-3,
        }
    }
}

/// Smallest sweep that can carry a slope.
pub const MIN_SWEEP_POINTS: usize = 4;

impl NewtonianSweepParams {
    pub fn validate(&self) -> Result<()> {
        if self.epsilons.len() < MIN_SWEEP_POINTS {
            return Err(Error::InvalidParams(format!(
                "params.epsilons: sweep needs >= {MIN_SWEEP_POINTS} points, got {}",
                self.epsilons.len()
            )));
        }
        for (i, e) in self.epsilons.iter().enumerate() {
            if !(e.is_finite() && *e > 0.0 && *e < 1.0) {
                return Err(Error::InvalidParams(format!(
                    "params.epsilons[{i}] = {e} must lie in (0, 1)"
                )));
            }
        }
        let lo = self.epsilons.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = self.epsilons.iter().cloned().fold(0.0, f64::max);
        if hi / lo < 10.0 * (1.0 - 1e-12) {
            return Err(Error::InvalidParams(format!(
                "params.epsilons must span at least one decade, got [{lo}, {hi}]"
            )));
        }
        finite("x0", self.x0)?;
        finite("p0", self.p0)?;
        finite("g", self.g)?;
        positive("sigma", self.sigma)?;
        positive("duration", self.duration)?;
        positive("dt", self.dt)
    }
}

pub fn schema() -> Schema {
    Schema::new(
        &["quantity"],
        &["epsilon", "duration"],
        &["infidelity"],
        "measured",
        "predicted",
        ErrorColumns::Full,
    )
}

/// Terminal infidelity and phase discrepancy of the upper branch between the
/// split and Newtonian Hamiltonians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discrepancy {
    pub infidelity: f64,
    pub phase: f64,
}

/// Propagates the same packet in the superposition of levels `[0, eps E0]`
/// under both Hamiltonians.
pub fn split_vs_newtonian(
    ctx: &Context,
    p: &NewtonianSweepParams,
    eps: f64,
) -> Result<Discrepancy> {
    let levels = if eps == 0.0 {
        vec![0.0, 0.0]
    } else {
        vec![0.0, eps * ctx.e0()]
    };
    let internal = ctx.levels(levels)?;
    let params = ctx.params(&internal, Potential::UniformField { g: p.g })?;
    let wf = gaussian_packet(&ctx.grid, p.x0, p.p0, p.sigma, ctx.hbar)?;
    let weights = [Complex64::new(1.0, 0.0); 2];
    let state = make_superposition(&internal, &weights, &Spatial::Shared(wf))?;
    let steps = (p.duration / p.dt).round() as usize;
    let dt = p.duration / steps as f64;
    let split = propagate(&state, HamiltonianKind::Split, &params, dt, steps)?;
    let newton = propagate(&state, HamiltonianKind::Newtonian, &params, dt, steps)?;
    let fidelity = overlap(&newton, &split)?.norm_sqr();
    let branch = |i: usize| -> Complex64 {
        newton
            .branch(i)
            .iter()
            .zip(split.branch(i))
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
    };
    Ok(Discrepancy {
        infidelity: 1.0 - fidelity,
        phase: principal(branch(1).arg() - branch(0).arg()),
    })
}

/// Phase discrepancy per mass defect against its first-order closed form,
/// and the log-log slope of the discrepancy.
pub fn exp_newtonian_sweep(ctx: &Context, p: &NewtonianSweepParams) -> Result<ExperimentResult> {
    let start = Instant::now();
    p.validate()?;
    let m = ctx.m();
    let measured: Vec<Result<Discrepancy>> = p
        .epsilons
        .par_iter()
        .map(|&eps| split_vs_newtonian(ctx, p, eps))
        .collect();
    let mut rows = Vec::new();
    let mut phases = Vec::new();
    for (&eps, d) in p.epsilons.iter().zip(measured) {
        let d = d?;
        phases.push(d.phase.abs());
        let predicted = predict::split_phase_discrepancy(
            eps, m, p.x0, p.p0, p.sigma, p.g, p.duration, ctx.hbar,
        );
        // Second-order terms leave a relative gap of order eps.
        let tol = ctx.tolerance(Tolerance::rel(2.0 * eps, 1e-12));
        rows.push(
            Row::new(&["phase_discrepancy"], d.phase, predicted, tol)
                .input("epsilon", eps)
                .input("duration", p.duration)
                .extra("infidelity", d.infidelity),
        );
    }
    let slope = loglog_slope(&p.epsilons, &phases);
    rows.push(
        Row::new(
            &["loglog_slope"],
            slope,
            1.0,
            ctx.tolerance(Tolerance::abs(0.1)),
        )
        .input("duration", p.duration),
    );
    Ok(ExperimentResult::new(
        "exp_newtonian_sweep",
        parameter_map(p, ctx),
        schema(),
        rows,
        start.elapsed().as_secs_f64(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_sweep_has_unit_slope() {
        let r =
            exp_newtonian_sweep(&Context::desk_scale(), &NewtonianSweepParams::default()).unwrap();
        assert!(r.passed, "{:#?}", r.rows);
        let slope = r.find(&["loglog_slope"]).unwrap();
        assert!((slope.measured - 1.0).abs() < 0.1);
    }

    #[test]
    fn zero_defect_is_identical() {
        let d = split_vs_newtonian(
            &Context::desk_scale(),
            &NewtonianSweepParams::default(),
            0.0,
        )
        .unwrap();
        assert!(d.infidelity < 1e-10);
        assert!(d.phase.abs() < 1e-12);
    }

    #[test]
    fn discrepancy_grows_linearly_in_time() {
        let ctx = Context::desk_scale();
        let base = NewtonianSweepParams {
            g: 0.0,
            ..NewtonianSweepParams::default()
        };
        let long = NewtonianSweepParams {
            duration: 2.0,
            ..base.clone()
        };
        let a = split_vs_newtonian(&ctx, &base, 1e-2).unwrap().phase;
        let b = split_vs_newtonian(&ctx, &long, 1e-2).unwrap().phase;
        assert!((b / a - 2.0).abs() < 1e-2, "{a} {b}");
    }

    #[test]
    fn short_sweeps_rejected() {
        let p = NewtonianSweepParams {
            epsilons: vec![1e-2],
            ..NewtonianSweepParams::default()
        };
        assert!(matches!(p.validate(), Err(Error::InvalidParams(m)) if m.contains(">= 4 points")));
        let p = NewtonianSweepParams {
            epsilons: vec![1e-2, 2e-2, 3e-2, 5e-2],
            ..NewtonianSweepParams::default()
        };
        assert!(p.validate().is_err());
    }
}
