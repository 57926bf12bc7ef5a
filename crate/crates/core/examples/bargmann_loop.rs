//! Closed loop of boosts and translations on a two-level packet.

use dynmass::experiments::{exp_bargmann, BargmannParams, Context};

fn main() -> dynmass::Result<()> {
    let r = exp_bargmann(&Context::desk_scale(), &BargmannParams::default())?;
    println!(
        "{:>9} {:>6} {:>6} {:>14} {:>14}",
        "branch", "a", "w", "measured", "predicted"
    );
    for row in &r.rows {
        println!(
            "{:>9} {:>6.2} {:>6.2} {:>14.10} {:>14.10}",
            row.labels[0], row.inputs["a"], row.inputs["w"], row.measured, row.predicted
        );
    }
    println!("passed: {}", r.passed);
    Ok(())
}
