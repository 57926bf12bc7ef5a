//! Out-and-back frame motion: dilation and the phase it leaves behind.

use dynmass::experiments::{exp_frame_phase, Context, FramePhaseParams};

fn main() -> dynmass::Result<()> {
    let r = exp_frame_phase(&Context::desk_scale(), &FramePhaseParams::default())?;
    for row in &r.rows {
        println!(
            "{:20} {:4} {:+.12e}  predicted {:+.12e}",
            row.labels[0], row.labels[1], row.measured, row.predicted
        );
    }
    Ok(())
}
