//! Which-path visibility of a clock raised in a uniform field.

use dynmass::experiments::{exp_interferometer, Context, InterferometerParams};

fn main() -> dynmass::Result<()> {
    let r = exp_interferometer(&Context::desk_scale(), &InterferometerParams::default())?;
    for row in &r.rows {
        println!(
            "phase/pi={:.2} height={:.4} dtau={:.4e} visibility {:.6} (predicted {:.6})",
            row.inputs["phase_over_pi"],
            row.inputs["height"],
            row.extra["delta_tau"],
            row.measured,
            row.predicted
        );
    }
    Ok(())
}
