use num_complex::Complex64;

use crate::fit::{linear, unwrap};
use crate::hilbert::{CompositeState, PhysicalParams};
use crate::{Error, Result};

/// Rate of internal dynamics seen from coordinate time:
/// `omega0 (1 - v^2 / 2c^2 + Phi / c^2)`.
pub fn internal_frequency(omega0: f64, v: f64, phi: f64, params: &PhysicalParams) -> Result<f64> {
    if v.abs() >= params.c() {
        return Err(Error::Superluminal {
            speed: v.abs(),
            c: params.c(),
        });
    }
    let c2 = params.c2();
    Ok(omega0 * (1.0 - v * v / (2.0 * c2) + phi / c2))
}

/// `<psi_lower | psi_upper>` between two internal branches, whose argument
/// winds at minus the clock frequency.
pub fn clock_phase(state: &CompositeState, lower: usize, upper: usize) -> Complex64 {
    state.branch_overlap(lower, upper)
}

/// Clock frequency from sampled branch overlaps: unwrap the argument and
/// regress it against time. Needs at least 100 samples.
pub fn fit_clock_frequency(times: &[f64], overlaps: &[Complex64]) -> Result<f64> {
    const MIN_SAMPLES: usize = 100;
    if times.len() < MIN_SAMPLES || overlaps.len() != times.len() {
        return Err(Error::TooFewSamples {
            needed: MIN_SAMPLES,
            got: times.len().min(overlaps.len()),
        });
    }
    let phases: Vec<f64> = overlaps.iter().map(|z| z.arg()).collect();
    let (_, slope) = linear(times, &unwrap(&phases));
    Ok(-slope)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{InternalSpace, Potential};

    fn params() -> PhysicalParams {
        let internal = InternalSpace::structureless(100.0).unwrap();
        PhysicalParams::new(1.0, 10.0, &internal, Potential::None).unwrap()
    }

    #[test]
    fn frequency_cases() {
        let p = params();
        assert_eq!(internal_frequency(1.0, 0.0, 0.0, &p).unwrap(), 1.0);
        assert!((internal_frequency(1.0, 2.0, 0.0, &p).unwrap() - 0.98).abs() < 1e-15);
        assert!((internal_frequency(1.0, 0.0, 1.0, &p).unwrap() - 1.01).abs() < 1e-15);
        assert!(matches!(
            internal_frequency(1.0, 10.0, 0.0, &p),
            Err(Error::Superluminal { .. })
        ));
    }

    #[test]
    fn fits_winding_overlap() {
        let t: Vec<f64> = (0..150).map(|k| k as f64 * 0.1).collect();
        let z: Vec<Complex64> = t
            .iter()
            .map(|t| Complex64::from_polar(0.9, 0.3 - 2.5 * t))
            .collect();
        assert!((fit_clock_frequency(&t, &z).unwrap() - 2.5).abs() < 1e-12);
        assert!(fit_clock_frequency(&t[..50], &z[..50]).is_err());
    }
}
