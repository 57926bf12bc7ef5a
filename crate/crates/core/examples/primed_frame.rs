//! Lab history mapped into a shaking frame, with and without the frame force.

use num_complex::Complex64;

use dynmass::dynamics::{
    primed_history, schrodinger_residual, HamiltonianKind, Propagator, Trajectory,
};
use dynmass::hilbert::{
    gaussian_packet, make_superposition, GridSpec, InternalSpace, PhysicalParams, Potential,
    Spatial,
};

fn main() -> dynmass::Result<()> {
    let grid = GridSpec::new(-20.0, 20.0, 1024)?;
    let internal = InternalSpace::structureless(100.0)?;
    let params = PhysicalParams::new(1.0, 10.0, &internal, Potential::None)?;
    let wf = gaussian_packet(&grid, 0.0, 0.5, 1.0, 1.0)?;
    let s = make_superposition(&internal, &[Complex64::new(1.0, 0.0)], &Spatial::Shared(wf))?;
    let kind = HamiltonianKind::DynamicalMass { rest_energy: false };
    for dt in [4e-3_f64, 2e-3, 1e-3] {
        let steps = (0.5 / dt).round() as usize;
        let traj = Trajectory::from_fn(0.5, steps, false, |t| 0.5 * (1.0 - (3.0 * t).cos()))?;
        let mut lab = Vec::new();
        Propagator::new(kind, &params, &grid, &internal, dt)?.run_observed(
            &s,
            steps,
            1,
            |_, st| lab.push(st.clone()),
        )?;
        let primed = primed_history(&lab[1..steps], &traj, dt, dt, &params)?;
        let with = schrodinger_residual(&primed, dt, dt, kind, &params, Some(&traj))?;
        let without = schrodinger_residual(&primed, dt, dt, kind, &params, None)?;
        println!("dt={dt:.0e}  residual {with:.4e}  without frame force {without:.4e}");
    }
    Ok(())
}
