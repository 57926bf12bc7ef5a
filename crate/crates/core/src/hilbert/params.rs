use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Internal level structure `H_r = E0 + H0`.
///
/// `levels` are the eigenvalues `E_i` of the dynamical part `H0`, stored in
/// ascending order. Branch `i` carries mass-energy `M_i = (E0 + E_i) / c^2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InternalSpace {
    e0: f64,
    levels: Vec<f64>,
}

impl InternalSpace {
    pub fn new(e0: f64, levels: Vec<f64>) -> Result<Self> {
        if !(e0.is_finite() && e0 > 0.0) {
            return Err(Error::InvalidInternal(format!(
                "e0 must be positive, got {e0}"
            )));
        }
        if levels.is_empty() {
            return Err(Error::InvalidInternal("levels must not be empty".into()));
        }
        for (i, &e) in levels.iter().enumerate() {
            if !e.is_finite() || e.abs() >= e0 {
                return Err(Error::InvalidInternal(format!(
                    "levels[{i}] = {e} violates |E_i| < e0 = {e0}"
                )));
            }
        }
        if levels.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidInternal(
                "levels must be sorted ascending".into(),
            ));
        }
        Ok(Self { e0, levels })
    }

    /// A single level with `E_0 = 0`: a structureless particle.
    pub fn structureless(e0: f64) -> Result<Self> {
        Self::new(e0, vec![0.0])
    }

    pub fn e0(&self) -> f64 {
        self.e0
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn dim(&self) -> usize {
        self.levels.len()
    }

    /// Rest energy `E0 + E_i` of branch `i`.
    pub fn rest_energy(&self, level: usize) -> f64 {
        self.e0 + self.levels[level]
    }

    /// Mass-energy eigenvalue `M_i = (E0 + E_i) / c^2`.
    pub fn mass(&self, level: usize, c: f64) -> f64 {
        self.rest_energy(level) / (c * c)
    }

    /// `max |E_i| / E0`, the size of the dynamical part of the mass-energy.
    pub fn epsilon(&self) -> f64 {
        self.levels.iter().fold(0.0_f64, |a, e| a.max(e.abs())) / self.e0
    }
}

/// External gravitational potential `Phi(x)` (energy per unit mass).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Potential {
    None,
    /// `Phi(x) = g x`, zero at the reference height `x = 0`.
    UniformField {
        g: f64,
    },
    /// Piecewise-linear interpolation of `(x, phi)` samples, clamped outside.
    Tabulated {
        x: Vec<f64>,
        phi: Vec<f64>,
    },
}

impl Potential {
    pub fn validate(&self) -> Result<()> {
        match self {
            Potential::None => Ok(()),
            Potential::UniformField { g } if g.is_finite() => Ok(()),
            Potential::UniformField { g } => Err(Error::InvalidParams(format!(
                "uniform field g = {g} is not finite"
            ))),
            Potential::Tabulated { x, phi } => {
                if x.len() != phi.len() || x.len() < 2 {
                    return Err(Error::InvalidParams(
                        "tabulated potential needs matching x and phi with at least 2 samples"
                            .into(),
                    ));
                }
                if x.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(Error::InvalidParams(
                        "tabulated potential x must be strictly increasing".into(),
                    ));
                }
                Ok(())
            }
        }
    }

    pub fn value(&self, at: f64) -> f64 {
        match self {
            Potential::None => 0.0,
            Potential::UniformField { g } => g * at,
            Potential::Tabulated { x, phi } => {
                let last = x.len() - 1;
                if at <= x[0] {
                    return phi[0];
                }
                if at >= x[last] {
                    return phi[last];
                }
                let j = x.partition_point(|&xi| xi <= at) - 1;
                let s = (at - x[j]) / (x[j + 1] - x[j]);
                phi[j] + s * (phi[j + 1] - phi[j])
            }
        }
    }

    pub fn is_none(&self) -> bool {
        matches!(self, Potential::None)
    }
}

/// Units and the external field.
///
/// The mass parameter is `m = E0 / c^2`. The rest energy `m c^2` is handed
/// back as the stored `E0` rather than recomputed from `m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    hbar: f64,
    c: f64,
    e0: f64,
    potential: Potential,
}

impl PhysicalParams {
    pub fn new(hbar: f64, c: f64, internal: &InternalSpace, potential: Potential) -> Result<Self> {
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::InvalidParams(format!(
                "hbar must be positive, got {hbar}"
            )));
        }
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::InvalidParams(format!("c must be positive, got {c}")));
        }
        potential.validate()?;
        Ok(Self {
            hbar,
            c,
            e0: internal.e0(),
            potential,
        })
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn c2(&self) -> f64 {
        self.c * self.c
    }

    /// Mass parameter `m = E0 / c^2`.
    pub fn m(&self) -> f64 {
        self.e0 / self.c2()
    }

    /// `m c^2`, identical to the internal space's `E0`.
    pub fn rest_energy(&self) -> f64 {
        self.e0
    }

    pub fn potential(&self) -> &Potential {
        &self.potential
    }

    pub fn phi(&self, x: f64) -> f64 {
        self.potential.value(x)
    }

    pub fn with_potential(&self, potential: Potential) -> Result<Self> {
        potential.validate()?;
        Ok(Self {
            potential,
            ..self.clone()
        })
    }

    /// True when `internal` was built with the same static rest energy.
    pub fn matches(&self, internal: &InternalSpace) -> bool {
        self.e0 == internal.e0()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn internal_invariants() {
        assert!(InternalSpace::new(100.0, vec![0.0, 10.0]).is_ok());
        assert!(InternalSpace::new(100.0, vec![0.0, 200.0]).is_err());
        assert!(InternalSpace::new(100.0, vec![-100.0]).is_err());
        assert!(InternalSpace::new(100.0, vec![5.0, 1.0]).is_err());
        assert!(InternalSpace::new(-1.0, vec![0.0]).is_err());
        assert!(InternalSpace::new(100.0, vec![]).is_err());
    }

    #[test]
    fn masses_and_rest_energy() {
        let internal = InternalSpace::new(100.0, vec![0.0, 10.0]).unwrap();
        let p = PhysicalParams::new(1.0, 10.0, &internal, Potential::None).unwrap();
        assert_eq!(p.rest_energy(), internal.e0());
        assert_eq!(p.m(), 1.0);
        assert!((internal.mass(1, 10.0) - 1.1).abs() < 1e-15);
        assert!((internal.epsilon() - 0.1).abs() < 1e-15);
        assert!(p.matches(&internal));
    }

    #[test]
    fn rejects_bad_units() {
        let internal = InternalSpace::structureless(1.0).unwrap();
        assert!(PhysicalParams::new(0.0, 1.0, &internal, Potential::None).is_err());
        assert!(PhysicalParams::new(1.0, -1.0, &internal, Potential::None).is_err());
    }

    #[test]
    fn tabulated_interpolation() {
        let pot = Potential::Tabulated {
            x: vec![0.0, 1.0, 3.0],
            phi: vec![0.0, 2.0, 0.0],
        };
        pot.validate().unwrap();
        assert_eq!(pot.value(-1.0), 0.0);
        assert_eq!(pot.value(0.5), 1.0);
        assert_eq!(pot.value(2.0), 1.0);
        assert_eq!(pot.value(5.0), 0.0);
        assert_eq!(Potential::UniformField { g: 2.0 }.value(3.0), 6.0);
    }
}
