//! Small least-squares helpers shared by the measurement code.

use std::f64::consts::PI;

/// Removes `2 pi` jumps from a sampled phase sequence.
pub fn unwrap(phases: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(phases.len());
    let mut offset = 0.0;
    let mut prev: Option<f64> = None;
    for &p in phases {
        if let Some(q) = prev {
            let d = p - q;
            if d > PI {
                offset -= 2.0 * PI * ((d + PI) / (2.0 * PI)).floor();
            } else if d < -PI {
                offset += 2.0 * PI * ((-d + PI) / (2.0 * PI)).floor();
            }
        }
        out.push(p + offset);
        prev = Some(p);
    }
    out
}

/// Ordinary least-squares line `y = intercept + slope x`.
pub fn linear(x: &[f64], y: &[f64]) -> (f64, f64) {
    assert_eq!(x.len(), y.len());
    assert!(x.len() >= 2, "need two points for a line");
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
    }
    let slope = sxy / sxx;
    (my - slope * mx, slope)
}

/// Least-squares parabola `y = c0 + c1 x + c2 x^2`, returned as `[c0, c1, c2]`.
pub fn quadratic(x: &[f64], y: &[f64]) -> [f64; 3] {
    assert_eq!(x.len(), y.len());
    assert!(x.len() >= 3, "need three points for a parabola");
    // Centre and scale the abscissa to keep the normal equations well conditioned.
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let sx = x
        .iter()
        .map(|a| (a - mx).abs())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut m = [[0.0; 3]; 3];
    let mut r = [0.0; 3];
    for (a, b) in x.iter().zip(y) {
        let u = (a - mx) / sx;
        let basis = [1.0, u, u * u];
        for i in 0..3 {
            r[i] += basis[i] * b;
            for j in 0..3 {
                m[i][j] += basis[i] * basis[j];
            }
        }
    }
    let d = solve3(m, r);
    // Back to the original variable: y = d0 + d1 u + d2 u^2, u = (x - mx)/sx.
    let (a1, a2) = (d[1] / sx, d[2] / (sx * sx));
    [d[0] - a1 * mx + a2 * mx * mx, a1 - 2.0 * a2 * mx, a2]
}

fn solve3(mut m: [[f64; 3]; 3], mut r: [f64; 3]) -> [f64; 3] {
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap();
        m.swap(col, pivot);
        r.swap(col, pivot);
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            for k in col..3 {
                m[row][k] -= f * m[col][k];
            }
            r[row] -= f * r[col];
        }
    }
    let mut out = [0.0; 3];
    for row in (0..3).rev() {
        let s: f64 = (row + 1..3).map(|k| m[row][k] * out[k]).sum();
        out[row] = (r[row] - s) / m[row][row];
    }
    out
}

/// Slope of `log |y|` against `log x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.abs().ln()).collect();
    linear(&lx, &ly).1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unwraps_linear_ramp() {
        let t: Vec<f64> = (0..200).map(|k| k as f64 * 0.1).collect();
        let wrapped: Vec<f64> = t
            .iter()
            .map(|&x| {
                let p = -3.0 * x;
                (p + PI).rem_euclid(2.0 * PI) - PI
            })
            .collect();
        let un = unwrap(&wrapped);
        let (_, slope) = linear(&t, &un);
        assert!((slope + 3.0).abs() < 1e-12);
    }

    #[test]
    fn recovers_parabola() {
        let x: Vec<f64> = (0..50).map(|k| 10.0 + k as f64 * 0.02).collect();
        let y: Vec<f64> = x.iter().map(|v| 1.5 - 0.25 * v + 0.75 * v * v).collect();
        let c = quadratic(&x, &y);
        assert!((c[2] - 0.75).abs() < 1e-9);
        assert!((c[1] + 0.25).abs() < 1e-7);
    }

    #[test]
    fn loglog_of_power_law() {
        let x = [1e-3, 1e-2, 1e-1];
        let y: Vec<f64> = x.iter().map(|v: &f64| 3.0 * v.powi(2)).collect();
        assert!((loglog_slope(&x, &y) - 2.0).abs() < 1e-12);
    }
}
