use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Uniform periodic grid on `[x_min, x_max)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    x_min: f64,
    x_max: f64,
    n_points: usize,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) || x_max <= x_min {
            return Err(Error::InvalidGrid(format!(
                "need finite x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if n_points < 8 || !n_points.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "n_points must be a power of two >= 8, got {n_points}"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            n_points,
        })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn dx(&self) -> f64 {
        self.length() / self.n_points as f64
    }

    pub fn x(&self, n: usize) -> f64 {
        self.x_min + n as f64 * self.dx()
    }

    pub fn positions(&self) -> Vec<f64> {
        (0..self.n_points).map(|n| self.x(n)).collect()
    }

    /// Angular wavenumbers in FFT order: `2 pi k / L` for
    /// `k = 0, 1, .., N/2-1, -N/2, .., -1`.
    pub fn wavenumbers(&self) -> Vec<f64> {
        let n = self.n_points as i64;
        let scale = 2.0 * PI / self.length();
        (0..n)
            .map(|j| {
                let k = if j < n / 2 { j } else { j - n };
                scale * k as f64
            })
            .collect()
    }

    /// Momentum grid `p_k = hbar k` in FFT order.
    pub fn momenta(&self, hbar: f64) -> Vec<f64> {
        self.wavenumbers().into_iter().map(|k| hbar * k).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sizes() {
        assert!(GridSpec::new(-1.0, 1.0, 4).is_err());
        assert!(GridSpec::new(-1.0, 1.0, 100).is_err());
        assert!(GridSpec::new(1.0, 1.0, 64).is_err());
        assert!(GridSpec::new(-1.0, 1.0, 64).is_ok());
    }

    #[test]
    fn momentum_grid_layout() {
        let g = GridSpec::new(-20.0, 20.0, 8).unwrap();
        let p = g.momenta(2.0);
        let dp = 2.0 * 2.0 * PI / 40.0;
        assert_eq!(p[0], 0.0);
        assert!((p[1] - dp).abs() < 1e-15);
        assert!((p[4] + 4.0 * dp).abs() < 1e-15);
        assert!((p[7] + dp).abs() < 1e-15);
        assert!((g.dx() - 5.0).abs() < 1e-15);
    }
}
