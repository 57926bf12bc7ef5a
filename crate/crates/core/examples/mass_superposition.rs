//! Relative loop phase between two mass-energy branches.

use num_complex::Complex64;

use dynmass::hilbert::{
    gaussian_packet, make_superposition, GridSpec, InternalSpace, PhysicalParams, Potential,
    Spatial,
};
use dynmass::symmetry::loop_phase;

fn main() -> dynmass::Result<()> {
    let grid = GridSpec::new(-40.0, 40.0, 2048)?;
    let internal = InternalSpace::new(100.0, vec![0.0, 10.0])?;
    let params = PhysicalParams::new(1.0, 10.0, &internal, Potential::None)?;
    let wf = gaussian_packet(&grid, 0.0, 0.0, 1.0, 1.0)?;
    let state = make_superposition(
        &internal,
        &[Complex64::new(1.0, 0.0); 2],
        &Spatial::Shared(wf),
    )?;
    let (a, w) = (0.5, 0.8);
    let phases = loop_phase(&state, a, w, &params)?;
    for (i, p) in phases.iter().enumerate() {
        println!(
            "branch {i}: M = {:.3}, phase {:+.12}",
            internal.mass(i, 10.0),
            p.phase
        );
    }
    println!("relative phase {:+.12}", phases[0].phase - phases[1].phase);
    Ok(())
}
