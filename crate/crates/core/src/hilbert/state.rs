use std::f64::consts::PI;

use num_complex::Complex64;

use super::{GridSpec, InternalSpace, Spectral};
use crate::{Error, Result};

/// Packets must keep this many standard deviations between their centre and
/// the grid seam.
pub const CLEARANCE_SIGMAS: f64 = 4.0;

/// Branches lighter than this are ignored by the clearance check.
const NEGLIGIBLE_BRANCH: f64 = 1e-12;

const BRANCH_FIDELITY_TOL: f64 = 1e-6;
const BRANCH_POPULATION_TOL: f64 = 1e-8;
const MIN_BRANCH_NORM: f64 = 1e-6;

/// A single-branch spatial wavefunction sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Wavefunction {
    grid: GridSpec,
    values: Vec<Complex64>,
}

impl Wavefunction {
    pub fn new(grid: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n_points() {
            return Err(Error::DimensionMismatch {
                expected: grid.n_points(),
                got: values.len(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.grid.dx()
    }
}

/// Gaussian `exp(-(x-x0)^2 / 4 sigma^2 + i p0 x / hbar)`, normalised so that
/// `sum |psi|^2 dx = 1`.
pub fn gaussian_packet(
    grid: &GridSpec,
    x0: f64,
    p0: f64,
    sigma: f64,
    hbar: f64,
) -> Result<Wavefunction> {
    if !(sigma > 0.0) || sigma < 4.0 * grid.dx() {
        return Err(Error::Unresolvable {
            sigma,
            dx: grid.dx(),
        });
    }
    let margin = CLEARANCE_SIGMAS * sigma;
    if x0 < grid.x_min() + margin || x0 > grid.x_max() - margin {
        return Err(Error::PacketTooCloseToBoundary { x0, sigma });
    }
    let mut values: Vec<Complex64> = grid
        .positions()
        .into_iter()
        .map(|x| {
            let d = x - x0;
            Complex64::from_polar((-d * d / (4.0 * sigma * sigma)).exp(), p0 * x / hbar)
        })
        .collect();
    let norm = (values.iter().map(|z| z.norm_sqr()).sum::<f64>() * grid.dx()).sqrt();
    for z in values.iter_mut() {
        *z /= norm;
    }
    Ok(Wavefunction {
        grid: *grid,
        values,
    })
}

/// Spatial profile for [`make_superposition`].
#[derive(Debug, Clone)]
pub enum Spatial {
    Shared(Wavefunction),
    PerLevel(Vec<Wavefunction>),
}

/// Full state: amplitudes over (internal level, grid point), level-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeState {
    grid: GridSpec,
    internal: InternalSpace,
    amplitudes: Vec<Complex64>,
}

/// `sum_i w_i |M_i> (x) psi_i`, globally normalised.
pub fn make_superposition(
    internal: &InternalSpace,
    weights: &[Complex64],
    spatial: &Spatial,
) -> Result<CompositeState> {
    if weights.len() != internal.dim() {
        return Err(Error::DimensionMismatch {
            expected: internal.dim(),
            got: weights.len(),
        });
    }
    if weights.iter().all(|w| w.norm_sqr() == 0.0) {
        return Err(Error::ZeroWeights);
    }
    let profiles: Vec<&Wavefunction> = match spatial {
        Spatial::Shared(wf) => vec![wf; internal.dim()],
        Spatial::PerLevel(wfs) => {
            if wfs.len() != internal.dim() {
                return Err(Error::DimensionMismatch {
                    expected: internal.dim(),
                    got: wfs.len(),
                });
            }
            wfs.iter().collect()
        }
    };
    let grid = *profiles[0].grid();
    if profiles.iter().any(|wf| *wf.grid() != grid) {
        return Err(Error::IncompatibleSpaces);
    }
    let amplitudes = weights
        .iter()
        .zip(&profiles)
        .flat_map(|(w, wf)| wf.values().iter().map(move |z| w * z))
        .collect();
    CompositeState::from_amplitudes(grid, internal.clone(), amplitudes)
}

impl CompositeState {
    /// Builds a state from raw amplitudes and normalises it.
    pub fn from_amplitudes(
        grid: GridSpec,
        internal: InternalSpace,
        amplitudes: Vec<Complex64>,
    ) -> Result<Self> {
        let expected = grid.n_points() * internal.dim();
        if amplitudes.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: amplitudes.len(),
            });
        }
        let mut state = Self {
            grid,
            internal,
            amplitudes,
        };
        let norm = state.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::ZeroWeights);
        }
        for z in state.amplitudes.iter_mut() {
            *z /= norm;
        }
        Ok(state)
    }

    /// Wraps amplitudes produced by a unitary map of an existing state.
    pub(crate) fn from_unitary_image(&self, amplitudes: Vec<Complex64>) -> Self {
        debug_assert_eq!(amplitudes.len(), self.amplitudes.len());
        Self {
            grid: self.grid,
            internal: self.internal.clone(),
            amplitudes,
        }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn internal(&self) -> &InternalSpace {
        &self.internal
    }

    pub fn dim(&self) -> usize {
        self.internal.dim()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn branch(&self, level: usize) -> &[Complex64] {
        let n = self.grid.n_points();
        &self.amplitudes[level * n..(level + 1) * n]
    }

    pub(crate) fn branches_mut(&mut self) -> std::slice::ChunksExactMut<'_, Complex64> {
        let n = self.grid.n_points();
        self.amplitudes.chunks_exact_mut(n)
    }

    pub fn compatible(&self, other: &Self) -> bool {
        self.grid == other.grid && self.internal == other.internal
    }

    pub fn norm(&self) -> f64 {
        (self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.grid.dx()).sqrt()
    }

    pub fn branch_probability(&self, level: usize) -> f64 {
        self.branch(level).iter().map(|z| z.norm_sqr()).sum::<f64>() * self.grid.dx()
    }

    pub fn branch_probabilities(&self) -> Vec<f64> {
        (0..self.dim())
            .map(|i| self.branch_probability(i))
            .collect()
    }

    /// `<psi_i | psi_j>` between two branches' spatial wavefunctions.
    pub fn branch_overlap(&self, i: usize, j: usize) -> Complex64 {
        inner(self.branch(i), self.branch(j)) * self.grid.dx()
    }

    /// Centre and standard deviation of the branch's position density.
    pub fn position_moments(&self, level: usize) -> (f64, f64) {
        let mut w = 0.0;
        let mut s1 = 0.0;
        let mut s2 = 0.0;
        for (n, z) in self.branch(level).iter().enumerate() {
            let p = z.norm_sqr();
            let x = self.grid.x(n);
            w += p;
            s1 += p * x;
            s2 += p * x * x;
        }
        let mean = s1 / w;
        (mean, (s2 / w - mean * mean).max(0.0).sqrt())
    }

    pub fn mean_position(&self, level: usize) -> f64 {
        self.position_moments(level).0
    }

    /// `(<p>, <p^2>)` of a branch from its momentum-space density.
    pub fn momentum_moments(&self, level: usize, hbar: f64) -> (f64, f64) {
        let mut data = self.branch(level).to_vec();
        Spectral::new(self.grid.n_points()).forward(&mut data);
        let p = self.grid.momenta(hbar);
        let mut w = 0.0;
        let mut s1 = 0.0;
        let mut s2 = 0.0;
        for (z, pk) in data.iter().zip(&p) {
            let d = z.norm_sqr();
            w += d;
            s1 += d * pk;
            s2 += d * pk * pk;
        }
        (s1 / w, s2 / w)
    }

    pub fn mean_momentum(&self, level: usize, hbar: f64) -> f64 {
        self.momentum_moments(level, hbar).0
    }

    /// `e^{i theta} Psi`.
    pub fn with_global_phase(&self, theta: f64) -> Self {
        let f = Complex64::from_polar(1.0, theta);
        self.from_unitary_image(self.amplitudes.iter().map(|z| z * f).collect())
    }

    /// Multiplies one branch by `e^{i theta}`.
    pub fn with_branch_phase(&self, level: usize, theta: f64) -> Self {
        let f = Complex64::from_polar(1.0, theta);
        let mut out = self.clone();
        for z in out.branches_mut().nth(level).expect("level in range") {
            *z *= f;
        }
        out
    }

    /// Checks that every populated branch, displaced by `shift[i]`, keeps
    /// `CLEARANCE_SIGMAS` widths between its centre and the seam.
    pub fn check_clearance_shifted(&self, shift: &[f64]) -> Result<()> {
        for level in 0..self.dim() {
            if self.branch_probability(level) < NEGLIGIBLE_BRANCH {
                continue;
            }
            let (mean, sd) = self.position_moments(level);
            let centre = mean + shift[level];
            let lo = centre - CLEARANCE_SIGMAS * sd;
            let hi = centre + CLEARANCE_SIGMAS * sd;
            if lo < self.grid.x_min() || hi > self.grid.x_max() {
                return Err(Error::BoundaryViolation {
                    level,
                    lo,
                    hi,
                    x_min: self.grid.x_min(),
                    x_max: self.grid.x_max(),
                });
            }
        }
        Ok(())
    }

    pub fn check_clearance(&self) -> Result<()> {
        self.check_clearance_shifted(&vec![0.0; self.dim()])
    }
}

/// `sum_n conj(a_n) b_n`, always summed in index order.
fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter()
        .zip(b)
        .fold(Complex64::new(0.0, 0.0), |acc, (x, y)| acc + x.conj() * y)
}

/// `<A|B> = sum_{i,n} conj(A) B dx`.
pub fn overlap(a: &CompositeState, b: &CompositeState) -> Result<Complex64> {
    if !a.compatible(b) {
        return Err(Error::IncompatibleSpaces);
    }
    Ok(inner(&a.amplitudes, &b.amplitudes) * a.grid.dx())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchPhase {
    /// Principal value in `(-pi, pi]`.
    pub phase: f64,
    /// `|<before_i|after_i>| / (||before_i|| ||after_i||)`.
    pub fidelity: f64,
}

/// Phase by which branch `level` of `after` leads the same branch of
/// `before`, provided the two differ only by that phase.
pub fn branch_phase(
    before: &CompositeState,
    after: &CompositeState,
    level: usize,
) -> Result<BranchPhase> {
    if !before.compatible(after) {
        return Err(Error::IncompatibleSpaces);
    }
    if level >= before.dim() {
        return Err(Error::DimensionMismatch {
            expected: before.dim(),
            got: level + 1,
        });
    }
    let pb = before.branch_probability(level);
    let pa = after.branch_probability(level);
    for p in [pb, pa] {
        if p.sqrt() < MIN_BRANCH_NORM {
            return Err(Error::EmptyBranch {
                level,
                norm: p.sqrt(),
            });
        }
    }
    let ov = inner(before.branch(level), after.branch(level)) * before.grid.dx();
    let fidelity = ov.norm() / (pa * pb).sqrt();
    if (pa - pb).abs() > BRANCH_POPULATION_TOL || fidelity < 1.0 - BRANCH_FIDELITY_TOL {
        return Err(Error::BranchDeformed { level, fidelity });
    }
    Ok(BranchPhase {
        phase: principal(ov.arg()),
        fidelity,
    })
}

/// Maps an angle into `(-pi, pi]`.
pub fn principal(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t -= 2.0 * PI;
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> GridSpec {
        GridSpec::new(-20.0, 20.0, 1024).unwrap()
    }

    fn two_level() -> InternalSpace {
        InternalSpace::new(100.0, vec![0.0, 10.0]).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn centred_packet_moments() {
        let wf = gaussian_packet(&grid(), 0.0, 0.0, 1.0, 1.0).unwrap();
        assert!((wf.norm_sqr() - 1.0).abs() < 1e-12);
        let internal = InternalSpace::structureless(1.0).unwrap();
        let s = make_superposition(&internal, &[c(1.0, 0.0)], &Spatial::Shared(wf)).unwrap();
        let (mean, sd) = s.position_moments(0);
        assert!(mean.abs() < 1e-8);
        assert!((sd * sd - 1.0).abs() < 1e-8);
        assert!(s.mean_momentum(0, 1.0).abs() < 1e-8);
    }

    #[test]
    fn packet_preconditions() {
        let g = grid();
        assert!(matches!(
            gaussian_packet(&g, 19.5, 0.0, 1.0, 1.0),
            Err(Error::PacketTooCloseToBoundary { .. })
        ));
        assert!(matches!(
            gaussian_packet(&g, 0.0, 0.0, 0.1, 1.0),
            Err(Error::Unresolvable { .. })
        ));
        assert!(gaussian_packet(&g, 16.0, 0.0, 1.0, 1.0).is_ok());
    }

    #[test]
    fn equal_weights_split_probability() {
        let wf = gaussian_packet(&grid(), 0.0, 0.0, 1.0, 1.0).unwrap();
        let w = 1.0 / 2f64.sqrt();
        let s = make_superposition(&two_level(), &[c(w, 0.0), c(w, 0.0)], &Spatial::Shared(wf))
            .unwrap();
        for p in s.branch_probabilities() {
            assert!((p - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn pure_branches_are_orthogonal() {
        let wf = gaussian_packet(&grid(), 0.0, 0.0, 1.0, 1.0).unwrap();
        let sp = Spatial::Shared(wf);
        let a = make_superposition(&two_level(), &[c(1.0, 0.0), c(0.0, 0.0)], &sp).unwrap();
        let b = make_superposition(&two_level(), &[c(0.0, 0.0), c(1.0, 0.0)], &sp).unwrap();
        assert_eq!(overlap(&a, &b).unwrap(), c(0.0, 0.0));
        assert_eq!(a.branch_probability(1), 0.0);
    }

    #[test]
    fn superposition_errors() {
        let wf = gaussian_packet(&grid(), 0.0, 0.0, 1.0, 1.0).unwrap();
        let sp = Spatial::Shared(wf.clone());
        let one = c(1.0, 0.0);
        assert!(matches!(
            make_superposition(&two_level(), &[one, one, one], &sp),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            make_superposition(&two_level(), &[c(0.0, 0.0); 2], &sp),
            Err(Error::ZeroWeights)
        ));
        assert!(matches!(
            make_superposition(&two_level(), &[one, one], &Spatial::PerLevel(vec![wf])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn overlap_with_self_and_global_phase() {
        let wf = gaussian_packet(&grid(), 1.0, 0.5, 1.0, 1.0).unwrap();
        let s = make_superposition(
            &two_level(),
            &[c(0.6, 0.0), c(0.0, 0.8)],
            &Spatial::Shared(wf),
        )
        .unwrap();
        assert!((overlap(&s, &s).unwrap() - 1.0).norm() < 1e-10);
        let t = s.with_global_phase(0.7);
        assert!((overlap(&s, &t).unwrap() - Complex64::from_polar(1.0, 0.7)).norm() < 1e-10);
    }

    #[test]
    fn overlap_rejects_other_spaces() {
        let wf = gaussian_packet(&grid(), 0.0, 0.0, 1.0, 1.0).unwrap();
        let a = make_superposition(
            &two_level(),
            &[c(1.0, 0.0); 2],
            &Spatial::Shared(wf.clone()),
        )
        .unwrap();
        let other = InternalSpace::new(100.0, vec![0.0, 5.0]).unwrap();
        let b = make_superposition(&other, &[c(1.0, 0.0); 2], &Spatial::Shared(wf)).unwrap();
        assert_eq!(overlap(&a, &b), Err(Error::IncompatibleSpaces));
    }

    #[test]
    fn branch_phase_cases() {
        let wf = gaussian_packet(&grid(), 0.0, 0.0, 1.0, 1.0).unwrap();
        let s = make_superposition(&two_level(), &[c(1.0, 0.0); 2], &Spatial::Shared(wf)).unwrap();
        let same = branch_phase(&s, &s, 0).unwrap();
        assert_eq!(same.phase, 0.0);
        assert!((same.fidelity - 1.0).abs() < 1e-12);

        let rotated = s.with_branch_phase(1, -0.4);
        let bp = branch_phase(&s, &rotated, 1).unwrap();
        assert!((bp.phase + 0.4).abs() < 1e-12);
        assert!(branch_phase(&s, &rotated, 0).unwrap().phase.abs() < 1e-15);

        let moved = gaussian_packet(&grid(), 2.0, 0.0, 1.0, 1.0).unwrap();
        let t =
            make_superposition(&two_level(), &[c(1.0, 0.0); 2], &Spatial::Shared(moved)).unwrap();
        assert!(matches!(
            branch_phase(&s, &t, 0),
            Err(Error::BranchDeformed { .. })
        ));
    }

    #[test]
    fn principal_range() {
        assert_eq!(principal(PI), PI);
        assert_eq!(principal(-PI), PI);
        assert!((principal(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert_eq!(principal(0.3), 0.3);
    }

    #[test]
    fn clearance_detects_edge_packets() {
        let g = grid();
        let values: Vec<Complex64> = g
            .positions()
            .into_iter()
            .map(|x| c((-(x - 19.0) * (x - 19.0) / 4.0).exp(), 0.0))
            .collect();
        let internal = InternalSpace::structureless(1.0).unwrap();
        let s = CompositeState::from_amplitudes(g, internal, values).unwrap();
        assert!(matches!(
            s.check_clearance(),
            Err(Error::BoundaryViolation { .. })
        ));
    }
}
