use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::hilbert::{InternalSpace, PhysicalParams};

/// The family of centre-of-mass Hamiltonians, ordered from the relativistic
/// dispersion down to the Newtonian limit.
///
/// Each branch Hamiltonian splits as `T_i(p) + V_i(x)`:
///
/// | kind | `T_i(p)` | `V_i(x)` |
/// |---|---|---|
/// | exact | `sqrt(c^2 p^2 + H_r^2)` | `H_r Phi / c^2` |
/// | dynamical mass | `p^2 / 2M (+ M c^2)` | `M Phi` |
/// | low energy | `H_r + p^2 c^2 / 2 H_r` | `H_r Phi / c^2` |
/// | split | `p^2 c^2 / 2 E0 - E_i p^2 c^2 / 2 E0^2` | `H_r + (E0 + E_i) Phi / c^2` |
/// | newtonian | `p^2 / 2m` | `m c^2 + E_i + m Phi` |
///
/// with `H_r = E0 + E_i` and `M = H_r / c^2`. For the exact kind the metric
/// factor `sqrt(-g00) ~ 1 + Phi/c^2` is folded into `V` to first order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum HamiltonianKind {
    Exact,
    DynamicalMass { rest_energy: bool },
    LowEnergy,
    Split,
    Newtonian,
}

impl HamiltonianKind {
    pub const ALL: [HamiltonianKind; 6] = [
        HamiltonianKind::Exact,
        HamiltonianKind::DynamicalMass { rest_energy: false },
        HamiltonianKind::DynamicalMass { rest_energy: true },
        HamiltonianKind::LowEnergy,
        HamiltonianKind::Split,
        HamiltonianKind::Newtonian,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            HamiltonianKind::Exact => "exact",
            HamiltonianKind::DynamicalMass { rest_energy: false } => "dynamical_mass",
            HamiltonianKind::DynamicalMass { rest_energy: true } => "dynamical_mass+rest",
            HamiltonianKind::LowEnergy => "low_energy",
            HamiltonianKind::Split => "split",
            HamiltonianKind::Newtonian => "newtonian",
        }
    }
}

impl fmt::Display for HamiltonianKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HamiltonianKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        HamiltonianKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = HamiltonianKind::ALL.iter().map(|k| k.name()).collect();
                format!(
                    "unknown Hamiltonian kind {s:?}; expected one of {}",
                    names.join(", ")
                )
            })
    }
}

impl TryFrom<String> for HamiltonianKind {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<HamiltonianKind> for String {
    fn from(k: HamiltonianKind) -> String {
        k.name().to_string()
    }
}

/// Scalars that define one branch's Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchHamiltonian {
    kind: HamiltonianKind,
    e0: f64,
    e_i: f64,
    c2: f64,
}

impl BranchHamiltonian {
    pub fn new(
        kind: HamiltonianKind,
        internal: &InternalSpace,
        params: &PhysicalParams,
        level: usize,
    ) -> Self {
        assert!(level < internal.dim(), "level {level} out of range");
        Self {
            kind,
            // m c^2 and E0 are the same stored number.
            e0: params.rest_energy(),
            e_i: internal.levels()[level],
            c2: params.c2(),
        }
    }

    pub fn kind(&self) -> HamiltonianKind {
        self.kind
    }

    fn rest(&self) -> f64 {
        self.e0 + self.e_i
    }

    /// Momentum-diagonal part `T_i(p)`.
    pub fn kinetic(&self, p: f64) -> f64 {
        let p2 = p * p;
        match self.kind {
            HamiltonianKind::Exact => (self.c2 * p2 + self.rest() * self.rest()).sqrt(),
            HamiltonianKind::DynamicalMass { rest_energy } => {
                let mass = self.rest() / self.c2;
                let kin = p2 / (2.0 * mass);
                if rest_energy {
                    kin + mass * self.c2
                } else {
                    kin
                }
            }
            HamiltonianKind::LowEnergy => self.rest() + p2 * self.c2 / (2.0 * self.rest()),
            HamiltonianKind::Split => {
                p2 * self.c2 / (2.0 * self.e0) - self.e_i * p2 * self.c2 / (2.0 * self.e0 * self.e0)
            }
            HamiltonianKind::Newtonian => p2 / (2.0 * (self.e0 / self.c2)),
        }
    }

    /// Position-diagonal part `V_i` at potential value `phi`.
    pub fn potential(&self, phi: f64) -> f64 {
        match self.kind {
            HamiltonianKind::Exact | HamiltonianKind::LowEnergy => self.rest() * phi / self.c2,
            HamiltonianKind::DynamicalMass { .. } => (self.rest() / self.c2) * phi,
            HamiltonianKind::Split => {
                self.rest() + self.e0 * phi / self.c2 + self.e_i * phi / self.c2
            }
            HamiltonianKind::Newtonian => self.e0 + self.e_i + (self.e0 / self.c2) * phi,
        }
    }

    /// Mass-energy `M_i` that couples to the potential.
    pub fn gravitational_mass(&self) -> f64 {
        match self.kind {
            HamiltonianKind::Newtonian => self.e0 / self.c2,
            _ => self.rest() / self.c2,
        }
    }
}

/// `T_i(p)` for branch `level` under `kind`.
pub fn branch_kinetic(
    kind: HamiltonianKind,
    internal: &InternalSpace,
    params: &PhysicalParams,
    level: usize,
) -> impl Fn(f64) -> f64 + Clone + Send + Sync {
    let h = BranchHamiltonian::new(kind, internal, params, level);
    move |p| h.kinetic(p)
}

/// `V_i(x)` for branch `level` under `kind`, using the potential in `params`.
pub fn branch_potential(
    kind: HamiltonianKind,
    internal: &InternalSpace,
    params: &PhysicalParams,
    level: usize,
) -> impl Fn(f64) -> f64 + Clone + Send + Sync {
    let h = BranchHamiltonian::new(kind, internal, params, level);
    let pot = params.potential().clone();
    move |x| h.potential(pot.value(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fit::loglog_slope;
    use crate::hilbert::Potential;

    fn setup() -> (InternalSpace, PhysicalParams) {
        let internal = InternalSpace::new(100.0, vec![-5.0, 0.0, 10.0]).unwrap();
        let params = PhysicalParams::new(1.0, 10.0, &internal, Potential::None).unwrap();
        (internal, params)
    }

    #[test]
    fn names_round_trip() {
        for k in HamiltonianKind::ALL {
            assert_eq!(k.name().parse::<HamiltonianKind>().unwrap(), k);
        }
        assert!("relativistic".parse::<HamiltonianKind>().is_err());
    }

    #[test]
    fn newtonian_at_rest_is_zero() {
        let (internal, params) = setup();
        for i in 0..3 {
            assert_eq!(
                branch_kinetic(HamiltonianKind::Newtonian, &internal, &params, i)(0.0),
                0.0
            );
        }
    }

    #[test]
    fn low_energy_equals_dynamical_mass_with_rest() {
        let (internal, params) = setup();
        for i in 0..3 {
            let le = branch_kinetic(HamiltonianKind::LowEnergy, &internal, &params, i);
            let dm = branch_kinetic(
                HamiltonianKind::DynamicalMass { rest_energy: true },
                &internal,
                &params,
                i,
            );
            for k in -200..=200 {
                let p = k as f64 * 0.37;
                assert!((le(p) - dm(p)).abs() <= 1e-13 * le(p).abs());
            }
        }
    }

    /// Reference values from a 40-digit evaluation of both closed forms at
    /// `p = 0.1 H_r / c`: `sqrt(1.01)` and `1.005`.
    #[test]
    fn exact_versus_low_energy_at_tenth_of_rest() {
        let (internal, params) = setup();
        let h_r = internal.rest_energy(1);
        let p = 0.1 * h_r / params.c();
        let exact = branch_kinetic(HamiltonianKind::Exact, &internal, &params, 1)(p);
        let low = branch_kinetic(HamiltonianKind::LowEnergy, &internal, &params, 1)(p);
        assert!((exact / h_r - 1.004_987_562_112_089_027).abs() < 1e-14);
        assert!((low / h_r - 1.005).abs() < 1e-14);
        let gap = (low - exact) / exact;
        assert!((gap - 1.237_616_103_908_134e-5).abs() < 1e-12);
    }

    #[test]
    fn exact_low_energy_gap_is_quartic() {
        let (internal, params) = setup();
        let exact = branch_kinetic(HamiltonianKind::Exact, &internal, &params, 1);
        let low = branch_kinetic(HamiltonianKind::LowEnergy, &internal, &params, 1);
        let h_r = internal.rest_energy(1);
        let u: Vec<f64> = (0..8).map(|k| 10f64.powf(-2.5 + k as f64 * 0.2)).collect();
        let gaps: Vec<f64> = u
            .iter()
            .map(|u| {
                let p = u * h_r / params.c();
                (low(p) - exact(p)) / h_r
            })
            .collect();
        assert!(gaps.iter().all(|g| *g > 0.0));
        let slope = loglog_slope(&u, &gaps);
        assert!((slope - 4.0).abs() < 0.05, "slope {slope}");
    }

    #[test]
    fn split_reduces_to_newtonian_without_internal_energy() {
        let internal = InternalSpace::new(100.0, vec![0.0]).unwrap();
        let params =
            PhysicalParams::new(1.0, 10.0, &internal, Potential::UniformField { g: 0.3 }).unwrap();
        let s = BranchHamiltonian::new(HamiltonianKind::Split, &internal, &params, 0);
        let n = BranchHamiltonian::new(HamiltonianKind::Newtonian, &internal, &params, 0);
        for p in [0.0, 0.5, 3.0, -7.0] {
            assert!((s.kinetic(p) - n.kinetic(p)).abs() < 1e-12 * (1.0 + n.kinetic(p)));
        }
        for phi in [0.0, 0.1, -2.0] {
            assert!((s.potential(phi) - n.potential(phi)).abs() < 1e-12);
        }
    }

    #[test]
    fn potential_coupling_is_mass_energy() {
        let (internal, params) = setup();
        for kind in [
            HamiltonianKind::Exact,
            HamiltonianKind::LowEnergy,
            HamiltonianKind::DynamicalMass { rest_energy: false },
        ] {
            let h = BranchHamiltonian::new(kind, &internal, &params, 2);
            assert!((h.potential(1.0) - h.potential(0.0) - 1.1).abs() < 1e-14);
        }
        let h = BranchHamiltonian::new(HamiltonianKind::Newtonian, &internal, &params, 2);
        assert!((h.potential(1.0) - h.potential(0.0) - 1.0).abs() < 1e-14);
    }
}
