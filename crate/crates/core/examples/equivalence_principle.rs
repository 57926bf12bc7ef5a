//! Drop test of both internal states under every dynamical kind.

use dynmass::experiments::{exp_wep, Context, WepParams};

fn main() -> dynmass::Result<()> {
    let r = exp_wep(&Context::desk_scale(), &WepParams::default())?;
    for row in &r.rows {
        println!(
            "{:20} {:2} {:13} {:+.9e}  predicted {:+.9e}",
            row.labels[0], row.labels[1], row.labels[2], row.measured, row.predicted
        );
    }
    Ok(())
}
