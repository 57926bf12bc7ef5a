use crate::hilbert::PhysicalParams;
use crate::{Error, Result};

/// Classical path `xi(t)` sampled on a uniform time grid starting at zero.
///
/// Node velocities use central differences (second-order one-sided at the
/// ends) and node accelerations second central differences. Integrals over
/// the path use the per-segment velocity `(xi_{k+1} - xi_k) / h`, which is
/// exact for piecewise-linear paths with kinks on the nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    step: f64,
    xi: Vec<f64>,
    closed: bool,
    /// `int_0^{t_k} xi'^2 / 2 dt` at every node.
    action: Vec<f64>,
}

impl Trajectory {
    /// `times` must start at zero and be uniformly spaced (to 1e-9
    /// relative). A closed path must satisfy `xi(0) = xi(T) = 0` exactly.
    pub fn new(times: &[f64], xi: Vec<f64>, closed: bool) -> Result<Self> {
        if times.len() != xi.len() {
            return Err(Error::InvalidTrajectory(format!(
                "{} times for {} positions",
                times.len(),
                xi.len()
            )));
        }
        if times.len() < 4 {
            return Err(Error::TooFewSamples {
                needed: 4,
                got: times.len(),
            });
        }
        if times[0] != 0.0 {
            return Err(Error::InvalidTrajectory("times must start at 0".into()));
        }
        let step = times[times.len() - 1] / (times.len() - 1) as f64;
        if !(step > 0.0) {
            return Err(Error::InvalidTrajectory("times must increase".into()));
        }
        for (k, t) in times.iter().enumerate() {
            if (t - k as f64 * step).abs() > 1e-9 * step.max(1.0) {
                return Err(Error::InvalidTrajectory(format!(
                    "sample {k} breaks uniform spacing"
                )));
            }
        }
        Self::uniform(step, xi, closed)
    }

    fn uniform(step: f64, xi: Vec<f64>, closed: bool) -> Result<Self> {
        if xi.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidTrajectory("positions must be finite".into()));
        }
        let last = xi[xi.len() - 1];
        if closed && (xi[0] != 0.0 || last != 0.0) {
            return Err(Error::OpenTrajectory {
                start: xi[0],
                end: last,
            });
        }
        let mut action = Vec::with_capacity(xi.len());
        action.push(0.0);
        let mut acc = 0.0;
        for w in xi.windows(2) {
            let v = (w[1] - w[0]) / step;
            acc += 0.5 * v * v * step;
            action.push(acc);
        }
        Ok(Self {
            step,
            xi,
            closed,
            action,
        })
    }

    /// Samples `f` at `intervals + 1` uniform nodes on `[0, duration]`.
    pub fn from_fn(
        duration: f64,
        intervals: usize,
        closed: bool,
        f: impl Fn(f64) -> f64,
    ) -> Result<Self> {
        if intervals < 3 || !(duration > 0.0) {
            return Err(Error::InvalidTrajectory(format!(
                "need positive duration and at least 3 intervals, got {duration} and {intervals}"
            )));
        }
        let step = duration / intervals as f64;
        let xi = (0..=intervals).map(|k| f(k as f64 * step)).collect();
        Self::uniform(step, xi, closed)
    }

    pub fn stationary(duration: f64, intervals: usize) -> Result<Self> {
        Self::from_fn(duration, intervals, true, |_| 0.0)
    }

    /// Out at `speed` for `duration / 2`, back at `-speed`. `intervals` must
    /// be even so the turning point is a node.
    pub fn triangular(duration: f64, speed: f64, intervals: usize) -> Result<Self> {
        if intervals % 2 != 0 {
            return Err(Error::InvalidTrajectory(
                "triangular path needs an even number of intervals".into(),
            ));
        }
        let step = duration / intervals as f64;
        let mut xi: Vec<f64> = (0..=intervals)
            .map(|k| speed * step * k.min(intervals - k) as f64)
            .collect();
        xi[intervals] = 0.0;
        Self::from_nodes(step, xi, true)
    }

    /// Up to `height` at constant speed over `ramp`, hold, and back down over
    /// the final `ramp`. Both ramp ends must fall on nodes.
    pub fn tower(duration: f64, ramp: f64, height: f64, intervals: usize) -> Result<Self> {
        let step = duration / intervals as f64;
        let ramp_steps = ramp / step;
        if !(ramp > 0.0) || (ramp_steps - ramp_steps.round()).abs() > 1e-9 || 2.0 * ramp > duration
        {
            return Err(Error::InvalidTrajectory(format!(
                "ramp {ramp} must be a positive multiple of the step {step} and at most half of {duration}"
            )));
        }
        let r = ramp_steps.round() as usize;
        let xi = (0..=intervals)
            .map(|k| {
                let from_end = k.min(intervals - k);
                if from_end >= r {
                    height
                } else {
                    height * from_end as f64 / r as f64
                }
            })
            .collect();
        Self::from_nodes(step, xi, true)
    }

    fn from_nodes(step: f64, xi: Vec<f64>, closed: bool) -> Result<Self> {
        if xi.len() < 4 || !(step > 0.0) {
            return Err(Error::TooFewSamples {
                needed: 4,
                got: xi.len(),
            });
        }
        Self::uniform(step, xi, closed)
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.xi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xi.is_empty()
    }

    pub fn duration(&self) -> f64 {
        self.step * (self.xi.len() - 1) as f64
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.xi.len()).map(|k| k as f64 * self.step).collect()
    }

    pub fn positions(&self) -> &[f64] {
        &self.xi
    }

    pub fn segment_velocities(&self) -> Vec<f64> {
        self.xi
            .windows(2)
            .map(|w| (w[1] - w[0]) / self.step)
            .collect()
    }

    pub fn node_velocities(&self) -> Vec<f64> {
        let n = self.xi.len();
        let h = self.step;
        let x = &self.xi;
        (0..n)
            .map(|k| {
                if k == 0 {
                    (-3.0 * x[0] + 4.0 * x[1] - x[2]) / (2.0 * h)
                } else if k == n - 1 {
                    (3.0 * x[n - 1] - 4.0 * x[n - 2] + x[n - 3]) / (2.0 * h)
                } else {
                    (x[k + 1] - x[k - 1]) / (2.0 * h)
                }
            })
            .collect()
    }

    pub fn node_accelerations(&self) -> Vec<f64> {
        let n = self.xi.len();
        let h2 = self.step * self.step;
        let x = &self.xi;
        (0..n)
            .map(|k| {
                if k == 0 {
                    (2.0 * x[0] - 5.0 * x[1] + 4.0 * x[2] - x[3]) / h2
                } else if k == n - 1 {
                    (2.0 * x[n - 1] - 5.0 * x[n - 2] + 4.0 * x[n - 3] - x[n - 4]) / h2
                } else {
                    (x[k + 1] - 2.0 * x[k] + x[k - 1]) / h2
                }
            })
            .collect()
    }

    /// Largest speed over both node and segment velocities.
    pub fn max_speed(&self) -> f64 {
        self.segment_velocities()
            .into_iter()
            .chain(self.node_velocities())
            .fold(0.0, |a, v| a.max(v.abs()))
    }

    pub fn check_subluminal(&self, c: f64) -> Result<()> {
        let speed = self.max_speed();
        if speed >= c {
            return Err(Error::Superluminal { speed, c });
        }
        Ok(())
    }

    fn require_closed(&self) -> Result<()> {
        if !self.closed {
            return Err(Error::OpenTrajectory {
                start: self.xi[0],
                end: self.xi[self.xi.len() - 1],
            });
        }
        Ok(())
    }

    /// Locates `t` as `(node, fraction)`, snapping to nodes within 1e-9 steps.
    fn locate(&self, t: f64) -> Result<(usize, f64)> {
        let t_end = self.duration();
        let tol = 1e-9 * self.step;
        if !(t >= -tol && t <= t_end + tol) {
            return Err(Error::OutsideTrajectory { t, t_end });
        }
        let u = (t / self.step).clamp(0.0, (self.xi.len() - 1) as f64);
        let k = u.round();
        if (u - k).abs() * self.step <= tol {
            return Ok((k as usize, 0.0));
        }
        let k = u.floor() as usize;
        Ok((k, u - k as f64))
    }

    fn interpolate(&self, values: &[f64], t: f64) -> Result<f64> {
        let (k, s) = self.locate(t)?;
        if s == 0.0 {
            return Ok(values[k]);
        }
        Ok(values[k] + s * (values[k + 1] - values[k]))
    }

    pub fn position(&self, t: f64) -> Result<f64> {
        self.interpolate(&self.xi, t)
    }

    pub fn velocity(&self, t: f64) -> Result<f64> {
        self.interpolate(&self.node_velocities(), t)
    }

    pub fn acceleration(&self, t: f64) -> Result<f64> {
        self.interpolate(&self.node_accelerations(), t)
    }

    /// `int_0^t xi'^2 / 2 dt`, exact between nodes for the piecewise-linear
    /// interpolant.
    pub fn kinetic_action(&self, t: f64) -> Result<f64> {
        let (k, s) = self.locate(t)?;
        if s == 0.0 {
            return Ok(self.action[k]);
        }
        let v = (self.xi[k + 1] - self.xi[k]) / self.step;
        Ok(self.action[k] + 0.5 * v * v * s * self.step)
    }

    /// `int_0^T xi'^2 / 2 dt` over the whole path.
    pub fn total_kinetic_action(&self) -> f64 {
        self.action[self.action.len() - 1]
    }
}

/// Proper-time bookkeeping of a closed round trip.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProperTime {
    /// `T' = int_0^T sqrt(1 - xi'^2 / c^2) dt`.
    pub elapsed: f64,
    /// `T - T'`.
    pub delta_tau: f64,
    /// `int_0^T xi'^2 / 2c^2 dt`, the lowest-order dilation.
    pub delta_tau_lowest: f64,
}

pub fn proper_time(traj: &Trajectory, params: &PhysicalParams) -> Result<ProperTime> {
    traj.require_closed()?;
    traj.check_subluminal(params.c())?;
    let c2 = params.c2();
    let h = traj.step();
    let mut delta_tau = 0.0;
    for v in traj.segment_velocities() {
        let u = v * v / c2;
        // 1 - sqrt(1 - u) without cancellation.
        delta_tau += h * u / (1.0 + (1.0 - u).sqrt());
    }
    Ok(ProperTime {
        elapsed: traj.duration() - delta_tau,
        delta_tau,
        delta_tau_lowest: traj.total_kinetic_action() / c2,
    })
}

/// `(mass / hbar) int_0^T xi'^2 / 2 dt`, unwrapped.
pub fn closed_path_phase(traj: &Trajectory, mass: f64, params: &PhysicalParams) -> Result<f64> {
    traj.require_closed()?;
    Ok(mass * traj.total_kinetic_action() / params.hbar())
}
