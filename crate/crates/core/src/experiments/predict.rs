//! Closed-form predictions. Pure functions of the physical constants and
//! experiment inputs; nothing here touches a simulated state.

/// `M = (E0 + E) / c^2`.
pub fn mass(e0: f64, level: f64, c: f64) -> f64 {
    (e0 + level) / (c * c)
}

/// Phase acquired by a branch of mass `mass` around the boost-translation
/// loop: `-M a w / hbar`.
pub fn loop_phase(mass: f64, a: f64, w: f64, hbar: f64) -> f64 {
    -mass * a * w / hbar
}

/// `phi_1 - phi_2 = (M_2 - M_1) a w / hbar`.
pub fn relative_loop_phase(m1: f64, m2: f64, a: f64, w: f64, hbar: f64) -> f64 {
    (m2 - m1) * a * w / hbar
}

/// Fractional clock shift `-v^2/2c^2 + Phi/c^2`.
pub fn clock_shift(v: f64, phi: f64, c: f64) -> f64 {
    let c2 = c * c;
    -v * v / (2.0 * c2) + phi / c2
}

/// Extra fractional shift of a packet of width `sigma` from its momentum
/// spread: `-sigma_p^2 / 2 m^2 c^2` with `sigma_p = hbar / 2 sigma`.
pub fn spread_shift(sigma: f64, m: f64, c: f64, hbar: f64) -> f64 {
    let sp = hbar / (2.0 * sigma);
    -sp * sp / (2.0 * m * m * c * c)
}

/// Least-squares fractional shift of a clock dropped from rest at height `h`
/// and watched uniformly over `[0, T]`: the rate `gh/c^2 - g^2 t^2/c^2`
/// fitted by a straight phase gives `gh/c^2 - 0.3 g^2 T^2 / c^2`.
pub fn falling_clock_shift(g: f64, h: f64, duration: f64, c: f64) -> f64 {
    let c2 = c * c;
    g * h / c2 - 0.3 * g * g * duration * duration / c2
}

/// Lowest-order proper-time gain of a tower arm (ramp up over `ramp`, hold at
/// `h`, ramp down) over a ground arm in the field `g`:
/// `(g h (T - ramp) - h^2 / ramp) / c^2`.
pub fn tower_delta_tau(g: f64, h: f64, duration: f64, ramp: f64, c: f64) -> f64 {
    (g * h * (duration - ramp) - h * h / ramp) / (c * c)
}

/// Smallest height whose tower arm reaches clock phase difference
/// `dE dtau / hbar = phase`. `None` if no height does.
pub fn tower_height(
    phase: f64,
    delta_e: f64,
    g: f64,
    duration: f64,
    ramp: f64,
    c: f64,
    hbar: f64,
) -> Option<f64> {
    // h^2 / ramp - g (T - ramp) h + K = 0
    let k = phase * hbar * c * c / delta_e;
    let b = g * (duration - ramp);
    let disc = b * b - 4.0 * k / ramp;
    if disc < 0.0 {
        return None;
    }
    // Smaller root without cancellation.
    Some(2.0 * k / (b + disc.sqrt()))
}

/// Which-way visibility `|cos(dE dtau / 2 hbar)|`.
pub fn visibility(delta_e: f64, delta_tau: f64, hbar: f64) -> f64 {
    (delta_e * delta_tau / (2.0 * hbar)).cos().abs()
}

/// First-order phase of the split-Hamiltonian branch with `E = eps E0`
/// relative to the Newtonian one, for a Gaussian packet released at `x0`
/// with momentum `p0` in the field `g`:
/// `(eps / hbar) int_0^T (<p^2>/2m - m g <x>) dt`.
pub fn split_phase_discrepancy(
    eps: f64,
    m: f64,
    x0: f64,
    p0: f64,
    sigma: f64,
    g: f64,
    duration: f64,
    hbar: f64,
) -> f64 {
    let t = duration;
    let sp = hbar / (2.0 * sigma);
    let kinetic =
        (p0 * p0 * t - p0 * m * g * t * t + m * m * g * g * t.powi(3) / 3.0 + sp * sp * t)
            / (2.0 * m);
    let potential = m * g * (x0 * t + p0 * t * t / (2.0 * m) - g * t.powi(3) / 6.0);
    eps * (kinetic - potential) / hbar
}

/// Free-fall acceleration in a uniform field, the same for every mass.
pub fn free_fall(g: f64) -> f64 {
    -g
}

/// `int xi'^2 / 2 dt` of the out-and-back path at constant `speed`.
pub fn triangular_action(speed: f64, duration: f64) -> f64 {
    0.5 * speed * speed * duration
}

/// Frame phase `(M / hbar) int xi'^2 / 2 dt` of the out-and-back path.
pub fn triangular_frame_phase(mass: f64, speed: f64, duration: f64, hbar: f64) -> f64 {
    mass * triangular_action(speed, duration) / hbar
}

/// `T - T' = T (1 - sqrt(1 - v^2/c^2))` for constant speed.
pub fn triangular_delta_tau(speed: f64, duration: f64, c: f64) -> f64 {
    let u = speed * speed / (c * c);
    duration * u / (1.0 + (1.0 - u).sqrt())
}

/// Proper-time reading `M c^2 dtau / hbar` of a phase.
pub fn proper_time_phase(mass: f64, delta_tau: f64, c: f64, hbar: f64) -> f64 {
    mass * c * c * delta_tau / hbar
}
