//! Split Hamiltonian against the Newtonian one as the level spacing shrinks.

use dynmass::experiments::{exp_newtonian_sweep, Context, NewtonianSweepParams};

fn main() -> dynmass::Result<()> {
    let r = exp_newtonian_sweep(&Context::desk_scale(), &NewtonianSweepParams::default())?;
    for row in &r.rows {
        println!(
            "{:18} {:>10.3e} {:>14.6e} {:>14.6e}",
            row.labels[0],
            row.inputs.get("epsilon").copied().unwrap_or(f64::NAN),
            row.measured,
            row.predicted
        );
    }
    Ok(())
}
