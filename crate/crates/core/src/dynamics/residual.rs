use num_complex::Complex64;

use super::{frame_transform, BranchHamiltonian, HamiltonianKind, Trajectory};
use crate::hilbert::{CompositeState, PhysicalParams, Spectral};
use crate::{Error, Result};

/// Largest defect `|| i hbar (phi_{k+1} - phi_{k-1}) / 2dt - H phi_k ||`
/// over the interior of a uniformly sampled history `states[k]` at
/// `t0 + k dt`.
///
/// `H` is the branch Hamiltonian of `kind`; when `non_inertial` is given the
/// frame term `M_i xi''(t) x'` is added.
pub fn schrodinger_residual(
    states: &[CompositeState],
    t0: f64,
    dt: f64,
    kind: HamiltonianKind,
    params: &PhysicalParams,
    non_inertial: Option<&Trajectory>,
) -> Result<f64> {
    if states.len() < 3 {
        return Err(Error::TooFewSamples {
            needed: 3,
            got: states.len(),
        });
    }
    let first = &states[0];
    if states.iter().any(|s| !s.compatible(first)) {
        return Err(Error::IncompatibleSpaces);
    }
    let grid = *first.grid();
    let internal = first.internal().clone();
    let hbar = params.hbar();
    let spectral = Spectral::new(grid.n_points());
    let xs = grid.positions();
    let momenta = grid.momenta(hbar);
    let branches: Vec<(Vec<Complex64>, Vec<f64>, f64)> = (0..internal.dim())
        .map(|i| {
            let h = BranchHamiltonian::new(kind, &internal, params, i);
            let t: Vec<Complex64> = momenta
                .iter()
                .map(|&p| Complex64::new(h.kinetic(p), 0.0))
                .collect();
            let v: Vec<f64> = xs.iter().map(|&x| h.potential(params.phi(x))).collect();
            (t, v, internal.mass(i, params.c()))
        })
        .collect();

    let mut worst = 0.0_f64;
    for k in 1..states.len() - 1 {
        let t = t0 + k as f64 * dt;
        let accel = match non_inertial {
            Some(tr) => tr.acceleration(t)?,
            None => 0.0,
        };
        let mut sum = 0.0;
        for (i, (kinetic, potential, mass)) in branches.iter().enumerate() {
            let centre = states[k].branch(i);
            let mut h_phi = centre.to_vec();
            spectral.apply_multiplier(&mut h_phi, kinetic);
            let ahead = states[k + 1].branch(i);
            let behind = states[k - 1].branch(i);
            for n in 0..grid.n_points() {
                let v = potential[n] + mass * accel * xs[n];
                let lhs = Complex64::new(0.0, hbar) * (ahead[n] - behind[n]) / (2.0 * dt);
                sum += (lhs - h_phi[n] - v * centre[n]).norm_sqr();
            }
        }
        worst = worst.max((sum * grid.dx()).sqrt());
    }
    Ok(worst)
}

/// Maps a lab-frame history sampled at `t0 + k dt` into the frame displaced
/// by `traj`.
pub fn primed_history(
    lab: &[CompositeState],
    traj: &Trajectory,
    t0: f64,
    dt: f64,
    params: &PhysicalParams,
) -> Result<Vec<CompositeState>> {
    lab.iter()
        .enumerate()
        .map(|(k, s)| frame_transform(s, traj, t0 + k as f64 * dt, params))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::Propagator;
    use crate::hilbert::{
        gaussian_packet, make_superposition, GridSpec, InternalSpace, Potential, Spatial,
    };

    fn initial(potential: Potential) -> (CompositeState, PhysicalParams) {
        let grid = GridSpec::new(-20.0, 20.0, 1024).unwrap();
        let internal = InternalSpace::structureless(100.0).unwrap();
        let params = PhysicalParams::new(1.0, 10.0, &internal, potential).unwrap();
        let wf = gaussian_packet(&grid, 0.0, 0.5, 1.0, 1.0).unwrap();
        let s = make_superposition(&internal, &[Complex64::new(1.0, 0.0)], &Spatial::Shared(wf))
            .unwrap();
        (s, params)
    }

    fn history(
        kind: HamiltonianKind,
        s: &CompositeState,
        params: &PhysicalParams,
        dt: f64,
        steps: usize,
    ) -> Vec<CompositeState> {
        let prop = Propagator::new(kind, params, s.grid(), s.internal(), dt).unwrap();
        let mut out = Vec::new();
        prop.run_observed(s, steps, 1, |_, st| out.push(st.clone()))
            .unwrap();
        out
    }

    #[test]
    fn self_consistent_history_converges() {
        let (s, params) = initial(Potential::UniformField { g: 0.3 });
        let kind = HamiltonianKind::Newtonian;
        let r: Vec<f64> = [2e-3_f64, 1e-3]
            .iter()
            .map(|&dt| {
                let steps = (0.2 / dt).round() as usize;
                schrodinger_residual(
                    &history(kind, &s, &params, dt, steps),
                    0.0,
                    dt,
                    kind,
                    &params,
                    None,
                )
                .unwrap()
            })
            .collect();
        assert!(r[0] / r[1] > 3.5, "{r:?}");
    }

    /// Residual of the primed history with and without the frame force.
    fn primed(dt: f64) -> (f64, f64) {
        let (s, params) = initial(Potential::None);
        let kind = HamiltonianKind::DynamicalMass { rest_energy: false };
        let duration = 0.5;
        let steps = (duration / dt).round() as usize;
        let traj =
            Trajectory::from_fn(duration, steps, false, |t| 0.5 * (1.0 - (3.0 * t).cos())).unwrap();
        let lab = history(kind, &s, &params, dt, steps);
        let inner = &lab[1..steps];
        let primed = primed_history(inner, &traj, dt, dt, &params).unwrap();
        let with = schrodinger_residual(&primed, dt, dt, kind, &params, Some(&traj)).unwrap();
        let without = schrodinger_residual(&primed, dt, dt, kind, &params, None).unwrap();
        (with, without)
    }

    #[test]
    fn primed_frame_equation_holds() {
        let coarse = primed(2e-3);
        let fine = primed(1e-3);
        let order = (coarse.0 / fine.0).log2();
        assert!(order > 1.9, "order {order}: {coarse:?} {fine:?}");
        assert!(
            fine.1 > 0.5 && (coarse.1 / fine.1 - 1.0).abs() < 0.1,
            "{coarse:?} {fine:?}"
        );
    }

    #[test]
    fn needs_three_states() {
        let (s, params) = initial(Potential::None);
        let err = schrodinger_residual(
            &[s.clone(), s],
            0.0,
            1e-3,
            HamiltonianKind::Newtonian,
            &params,
            None,
        );
        assert!(matches!(err, Err(Error::TooFewSamples { .. })));
    }
}
