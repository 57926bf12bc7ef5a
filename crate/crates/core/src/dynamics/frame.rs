use num_complex::Complex64;

use super::Trajectory;
use crate::hilbert::{CompositeState, PhysicalParams};
use crate::symmetry::apply_translation;
use crate::Result;

/// Moves a lab-frame state into the frame displaced by `xi(t)`:
/// `phi_i(x') = exp(-i f_i(x', t)) psi_i(x' + xi(t))` with
/// `f_i = M_i (xi'(t) x' + int_0^t xi'^2 / 2) / hbar`.
pub fn frame_transform(
    state: &CompositeState,
    traj: &Trajectory,
    t: f64,
    params: &PhysicalParams,
) -> Result<CompositeState> {
    let xi = traj.position(t)?;
    let v = traj.velocity(t)?;
    let action = traj.kinetic_action(t)?;
    let mut out = apply_translation(state, -xi)?;
    multiply_frame_phase(&mut out, v, action, 0.0, -1.0, params);
    Ok(out)
}

/// Inverse of [`frame_transform`]:
/// `psi_i(x) = exp(i f_i(x - xi(t), t)) phi_i(x - xi(t))`.
pub fn frame_transform_inverse(
    state: &CompositeState,
    traj: &Trajectory,
    t: f64,
    params: &PhysicalParams,
) -> Result<CompositeState> {
    let xi = traj.position(t)?;
    let v = traj.velocity(t)?;
    let action = traj.kinetic_action(t)?;
    let mut out = apply_translation(state, xi)?;
    multiply_frame_phase(&mut out, v, action, xi, 1.0, params);
    Ok(out)
}

/// Multiplies branch `i` by `exp(sign i M_i (v (x - origin) + action) / hbar)`.
fn multiply_frame_phase(
    state: &mut CompositeState,
    v: f64,
    action: f64,
    origin: f64,
    sign: f64,
    params: &PhysicalParams,
) {
    let xs = state.grid().positions();
    let masses: Vec<f64> = (0..state.dim())
        .map(|i| state.internal().mass(i, params.c()))
        .collect();
    let hbar = params.hbar();
    for (branch, mass) in state.branches_mut().zip(masses) {
        for (z, x) in branch.iter_mut().zip(&xs) {
            *z *= Complex64::from_polar(1.0, sign * mass * (v * (x - origin) + action) / hbar);
        }
    }
}
