use num_complex::Complex64;

use crate::hilbert::{
    branch_phase, BranchPhase, CompositeState, GridSpec, InternalSpace, PhysicalParams, Spectral,
};
use crate::Result;

/// `U(g_a) = exp(-i p a / hbar)`: `psi(x) -> psi(x - a)` on every branch,
/// carried out as a Fourier multiplier.
pub fn apply_translation(state: &CompositeState, a: f64) -> Result<CompositeState> {
    state.check_clearance_shifted(&vec![a; state.dim()])?;
    if a == 0.0 {
        return Ok(state.clone());
    }
    let grid = state.grid();
    let spectral = Spectral::new(grid.n_points());
    let symbol = translation_symbol(grid, a);
    let mut out = state.clone();
    for branch in out.branches_mut() {
        spectral.apply_multiplier(branch, &symbol);
    }
    Ok(out)
}

fn translation_symbol(grid: &GridSpec, a: f64) -> Vec<Complex64> {
    grid.wavenumbers()
        .into_iter()
        .map(|k| Complex64::from_polar(1.0, -k * a))
        .collect()
}

/// Diagnostics of a boost on a periodic grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BoostReport {
    /// `|exp(i M_i w L / hbar) - 1|` per branch: zero when the boost phase is
    /// commensurate with the box.
    pub seam_mismatch: Vec<f64>,
}

/// Per-branch size of the discontinuity a boost by `w` introduces at the
/// periodic seam.
pub fn seam_mismatch(
    internal: &InternalSpace,
    grid: &GridSpec,
    w: f64,
    params: &PhysicalParams,
) -> Vec<f64> {
    (0..internal.dim())
        .map(|i| {
            let theta = internal.mass(i, params.c()) * w * grid.length() / params.hbar();
            (Complex64::from_polar(1.0, theta) - 1.0).norm()
        })
        .collect()
}

/// `U(g_w) = exp(i w K_i / hbar)` with `K_i = M_i x - t p`, branch by branch.
pub fn apply_boost(
    state: &CompositeState,
    w: f64,
    t: f64,
    params: &PhysicalParams,
) -> Result<CompositeState> {
    apply_boost_reporting(state, w, t, params).map(|(s, _)| s)
}

pub fn apply_boost_reporting(
    state: &CompositeState,
    w: f64,
    t: f64,
    params: &PhysicalParams,
) -> Result<(CompositeState, BoostReport)> {
    let grid = *state.grid();
    let internal = state.internal().clone();
    let report = BoostReport {
        seam_mismatch: seam_mismatch(&internal, &grid, w, params),
    };
    if w == 0.0 {
        return Ok((state.clone(), report));
    }
    let shift = w * t;
    let mut out = if t != 0.0 {
        apply_translation(state, shift)?
    } else {
        state.clone()
    };
    let xs = grid.positions();
    let hbar = params.hbar();
    for (i, branch) in out.branches_mut().enumerate() {
        let mass = internal.mass(i, params.c());
        let offset = -0.5 * mass * w * w * t;
        for (z, x) in branch.iter_mut().zip(&xs) {
            *z *= Complex64::from_polar(1.0, (mass * w * x + offset) / hbar);
        }
    }
    Ok((out, report))
}

/// Applies `U(g_{-a}) U(g_{-w}) U(g_a) U(g_w)` at `t = 0` and returns each
/// branch's phase relative to the input.
pub fn loop_phase(
    state: &CompositeState,
    a: f64,
    w: f64,
    params: &PhysicalParams,
) -> Result<Vec<BranchPhase>> {
    let s1 = apply_boost(state, w, 0.0, params)?;
    let s2 = apply_translation(&s1, a)?;
    let s3 = apply_boost(&s2, -w, 0.0, params)?;
    let s4 = apply_translation(&s3, -a)?;
    (0..state.dim())
        .map(|i| branch_phase(state, &s4, i))
        .collect()
}

/// `||(p K - K p) psi_i + i hbar M_i psi_i|| / ||psi_i||` per branch, with
/// `p` spectral and `x` pointwise. Empty branches report zero.
pub fn commutator_residual(
    state: &CompositeState,
    t: f64,
    params: &PhysicalParams,
) -> Result<Vec<f64>> {
    state.check_clearance()?;
    let grid = state.grid();
    let spectral = Spectral::new(grid.n_points());
    let hbar = params.hbar();
    let p_symbol: Vec<Complex64> = grid
        .momenta(hbar)
        .into_iter()
        .map(|p| Complex64::new(p, 0.0))
        .collect();
    let xs = grid.positions();
    let apply_p = |v: &[Complex64]| {
        let mut out = v.to_vec();
        spectral.apply_multiplier(&mut out, &p_symbol);
        out
    };
    let mut residuals = Vec::with_capacity(state.dim());
    for level in 0..state.dim() {
        let psi = state.branch(level);
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            residuals.push(0.0);
            continue;
        }
        let mass = state.internal().mass(level, params.c());
        let apply_k = |v: &[Complex64]| -> Vec<Complex64> {
            let pv = apply_p(v);
            v.iter()
                .zip(&xs)
                .zip(&pv)
                .map(|((z, x), pz)| mass * x * z - t * pz)
                .collect()
        };
        let pk = apply_p(&apply_k(psi));
        let kp = apply_k(&apply_p(psi));
        let i_hbar_m = Complex64::new(0.0, hbar * mass);
        let r = pk
            .iter()
            .zip(&kp)
            .zip(psi)
            .map(|((a, b), z)| (a - b + i_hbar_m * z).norm_sqr())
            .sum::<f64>()
            .sqrt();
        residuals.push(r / norm);
    }
    Ok(residuals)
}
