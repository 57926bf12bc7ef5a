//! The same loop in the group with an internal coordinate.

use dynmass::symmetry::{bargmann_loop_element, extended_loop_element};

fn main() {
    for (a, w) in [(0.5, 0.8), (1.0, -2.0), (3.0, 0.25)] {
        let g = bargmann_loop_element(a, w);
        let e = extended_loop_element(a, w);
        println!(
            "a={a:5.2} w={w:5.2}  galilei identity: {}  alpha = {:+.6} (a w = {:+.6})",
            g.is_identity(),
            e.alpha,
            a * w
        );
    }
}
