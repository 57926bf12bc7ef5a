use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

/// Forward/inverse FFT pair for one grid size. The inverse is normalised so
/// that `inverse(forward(v)) == v`.
#[derive(Clone)]
pub struct Spectral {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    scale: f64,
}

impl Spectral {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
            scale: 1.0 / n as f64,
        }
    }

    pub fn forward(&self, data: &mut [Complex64]) {
        self.forward.process(data);
    }

    pub fn inverse(&self, data: &mut [Complex64]) {
        self.inverse.process(data);
        for z in data.iter_mut() {
            *z *= self.scale;
        }
    }

    /// Multiplies `data` by the Fourier multiplier `symbol(k)` given as one
    /// value per FFT bin.
    pub fn apply_multiplier(&self, data: &mut [Complex64], symbol: &[Complex64]) {
        self.forward(data);
        for (z, s) in data.iter_mut().zip(symbol) {
            *z *= s;
        }
        self.inverse(data);
    }
}
