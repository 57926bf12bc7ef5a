//! Moving and elevated clocks, semiclassical and from a propagated packet.

use dynmass::experiments::{exp_clock_dilation, ClockMode, ClockParams, Context};

fn main() -> dynmass::Result<()> {
    let ctx = Context::desk_scale();
    let semi = exp_clock_dilation(&ctx, &ClockParams::default())?;
    let wave = exp_clock_dilation(
        &ctx,
        &ClockParams {
            mode: ClockMode::Wavepacket,
            v_over_c: vec![0.1],
            gh_over_c2: vec![],
            ..ClockParams::default()
        },
    )?;
    for (mode, r) in [("semiclassical", &semi), ("wavepacket", &wave)] {
        for row in &r.rows {
            println!(
                "{mode:13} {:9} v/c={:.2} gh/c2={:.0e}  shift {:+.6e}  predicted {:+.6e}",
                row.labels[0],
                row.inputs["v_over_c"],
                row.inputs["gh_over_c2"],
                row.measured,
                row.predicted
            );
        }
    }
    Ok(())
}
