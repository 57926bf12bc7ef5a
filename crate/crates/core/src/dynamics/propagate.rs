use std::f64::consts::PI;

use num_complex::Complex64;

use super::{BranchHamiltonian, HamiltonianKind};
use crate::hilbert::{CompositeState, GridSpec, InternalSpace, PhysicalParams, Spectral};
use crate::{Error, Result};

/// Momentum-space weight allowed where the kinetic phase per step reaches pi.
const ALIASING_WEIGHT_TOL: f64 = 1e-12;

/// Strang-split propagator for a fixed Hamiltonian kind and time step:
/// `exp(-i V dt/2hbar) F^-1 exp(-i T dt/hbar) F exp(-i V dt/2hbar)` on
/// every branch.
#[derive(Clone)]
pub struct Propagator {
    grid: GridSpec,
    internal: InternalSpace,
    dt: f64,
    spectral: Spectral,
    kinetic: Vec<Vec<Complex64>>,
    half_potential: Vec<Vec<Complex64>>,
    /// Per-branch mask of momenta whose phase advance `dt (T(p) - T(0)) / hbar`
    /// reaches pi.
    aliased: Vec<Vec<bool>>,
}

impl Propagator {
    pub fn new(
        kind: HamiltonianKind,
        params: &PhysicalParams,
        grid: &GridSpec,
        internal: &InternalSpace,
        dt: f64,
    ) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidParams(format!(
                "time step must be positive, got {dt}"
            )));
        }
        if !params.matches(internal) {
            return Err(Error::InvalidParams(
                "physical parameters were built for a different rest energy".into(),
            ));
        }
        let hbar = params.hbar();
        let momenta = grid.momenta(hbar);
        let xs = grid.positions();
        let phis: Vec<f64> = xs.iter().map(|&x| params.phi(x)).collect();
        let mut kinetic = Vec::with_capacity(internal.dim());
        let mut half_potential = Vec::with_capacity(internal.dim());
        let mut aliased = Vec::with_capacity(internal.dim());
        for level in 0..internal.dim() {
            let h = BranchHamiltonian::new(kind, internal, params, level);
            let t0 = h.kinetic(0.0);
            let energies: Vec<f64> = momenta.iter().map(|&p| h.kinetic(p)).collect();
            aliased.push(
                energies
                    .iter()
                    .map(|e| dt * (e - t0).abs() / hbar >= PI)
                    .collect(),
            );
            kinetic.push(
                energies
                    .iter()
                    .map(|e| Complex64::from_polar(1.0, -e * dt / hbar))
                    .collect(),
            );
            half_potential.push(
                phis.iter()
                    .map(|&phi| Complex64::from_polar(1.0, -h.potential(phi) * dt / (2.0 * hbar)))
                    .collect(),
            );
        }
        Ok(Self {
            grid: *grid,
            internal: internal.clone(),
            dt,
            spectral: Spectral::new(grid.n_points()),
            kinetic,
            half_potential,
            aliased,
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// One Strang step in place. Checks kinetic aliasing on the populated
    /// momenta and boundary clearance afterwards.
    pub fn step(&self, state: &mut CompositeState) -> Result<()> {
        if *state.grid() != self.grid || *state.internal() != self.internal {
            return Err(Error::IncompatibleSpaces);
        }
        for (level, branch) in state.branches_mut().enumerate() {
            let half = &self.half_potential[level];
            for (z, f) in branch.iter_mut().zip(half) {
                *z *= f;
            }
            self.spectral.forward(branch);
            let mut total = 0.0;
            let mut bad = 0.0;
            for ((z, f), &alias) in branch
                .iter_mut()
                .zip(&self.kinetic[level])
                .zip(&self.aliased[level])
            {
                let w = z.norm_sqr();
                total += w;
                if alias {
                    bad += w;
                }
                *z *= f;
            }
            if total > 0.0 && bad / total > ALIASING_WEIGHT_TOL {
                return Err(Error::Aliasing {
                    level,
                    weight: bad / total,
                });
            }
            self.spectral.inverse(branch);
            for (z, f) in branch.iter_mut().zip(half) {
                *z *= f;
            }
        }
        state.check_clearance()
    }

    pub fn run(&self, state: &CompositeState, steps: usize) -> Result<CompositeState> {
        self.run_observed(state, steps, 0, |_, _| {})
    }

    /// Runs `steps` steps, calling `observe(step_index, state)` on the
    /// initial state and after every `every`-th step (`every = 0` disables
    /// observation).
    pub fn run_observed<F>(
        &self,
        state: &CompositeState,
        steps: usize,
        every: usize,
        mut observe: F,
    ) -> Result<CompositeState>
    where
        F: FnMut(usize, &CompositeState),
    {
        state.check_clearance()?;
        let mut current = state.clone();
        if every > 0 {
            observe(0, &current);
        }
        for k in 1..=steps {
            self.step(&mut current)?;
            if every > 0 && k % every == 0 {
                observe(k, &current);
            }
        }
        Ok(current)
    }
}

/// Evolves `state` for `steps` steps of size `dt` under `kind`.
pub fn propagate(
    state: &CompositeState,
    kind: HamiltonianKind,
    params: &PhysicalParams,
    dt: f64,
    steps: usize,
) -> Result<CompositeState> {
    Propagator::new(kind, params, state.grid(), state.internal(), dt)?.run(state, steps)
}
