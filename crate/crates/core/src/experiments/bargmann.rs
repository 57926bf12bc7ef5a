use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::result::parameter_map;
use super::{
    finite, positive, predict, Context, ErrorColumns, ExperimentResult, Row, Schema, Tolerance,
};
use crate::hilbert::{gaussian_packet, make_superposition, Potential, Spatial};
use crate::symmetry::{bargmann_loop_element, loop_phase};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BargmannParams {
    /// `(a, w)` loop sizes.
    pub pairs: Vec<[f64; 2]>,
    pub x0: f64,
    pub sigma: f64,
}

impl Default for BargmannParams {
    fn default() -> Self {
        Self {
            pairs: vec![[0.5, 0.8], [1.0, 0.5], [-1.3, 0.7], [2.0, -0.3], [0.0, 1.0]],
            x0: 0.0,
            sigma: 1.0,
        }
    }
}

impl BargmannParams {
    pub fn validate(&self) -> Result<()> {
        if self.pairs.is_empty() {
            return Err(Error::InvalidParams(
                "params.pairs must not be empty".into(),
            ));
        }
        for (i, [a, w]) in self.pairs.iter().enumerate() {
            finite(&format!("pairs[{i}][0]"), *a)?;
            finite(&format!("pairs[{i}][1]"), *w)?;
        }
        finite("x0", self.x0)?;
        positive("sigma", self.sigma)
    }
}

pub fn schema() -> Schema {
    Schema::new(
        &["branch"],
        &["a", "w"],
        &[],
        "phase_measured",
        "phase_predicted",
        ErrorColumns::Absolute,
    )
}

/// Loop phases `U(-a) U(-w) U(a) U(w)` of an equal superposition over the
/// context's levels, per branch and relative to the lowest branch, plus the
/// classical loop element, which must be the identity.
pub fn exp_bargmann(ctx: &Context, p: &BargmannParams) -> Result<ExperimentResult> {
    let start = Instant::now();
    p.validate()?;
    let internal = ctx.internal.clone();
    let params = ctx.params(&internal, Potential::None)?;
    let wf = gaussian_packet(&ctx.grid, p.x0, 0.0, p.sigma, ctx.hbar)?;
    let weights = vec![Complex64::new(1.0, 0.0); internal.dim()];
    let state = make_superposition(&internal, &weights, &Spatial::Shared(wf))?;
    let masses: Vec<f64> = internal
        .levels()
        .iter()
        .map(|&e| predict::mass(internal.e0(), e, ctx.c))
        .collect();
    let phase_tol = ctx.tolerance(Tolerance::abs(1e-8));
    let exact = ctx.tolerance(Tolerance::abs(0.0));

    let blocks: Vec<Result<Vec<Row>>> = p
        .pairs
        .par_iter()
        .map(|&[a, w]| {
            let mut rows = Vec::new();
            let g = bargmann_loop_element(a, w);
            let size = g.w.abs().max(g.a.abs()).max(g.b.abs());
            rows.push(
                Row::new(&["galilei"], size, 0.0, exact)
                    .input("a", a)
                    .input("w", w),
            );
            let measured = loop_phase(&state, a, w, &params)?;
            for (i, bp) in measured.iter().enumerate() {
                let predicted = predict::loop_phase(masses[i], a, w, ctx.hbar);
                let label = i.to_string();
                rows.push(
                    Row::phase(&[&label], bp.phase, predicted, phase_tol)
                        .input("a", a)
                        .input("w", w),
                );
            }
            for i in 1..measured.len() {
                let label = if measured.len() == 2 {
                    "relative".to_string()
                } else {
                    format!("relative_{i}")
                };
                let relative = measured[0].phase - measured[i].phase;
                let predicted = predict::relative_loop_phase(masses[0], masses[i], a, w, ctx.hbar);
                rows.push(
                    Row::phase(&[&label], relative, predicted, phase_tol)
                        .input("a", a)
                        .input("w", w),
                );
            }
            Ok(rows)
        })
        .collect();
    let mut rows = Vec::new();
    for block in blocks {
        rows.extend(block?);
    }
    Ok(ExperimentResult::new(
        "exp_bargmann",
        parameter_map(p, ctx),
        schema(),
        rows,
        start.elapsed().as_secs_f64(),
    ))
}
