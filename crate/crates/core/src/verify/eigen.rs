//! Lowest eigenvalues of `−d²/dx² + V` by finite differences with Dirichlet
//! ends, solved by Sturm-sequence bisection on the tridiagonal matrix.

use serde::Serialize;

use crate::error::{Error, Result};

/// Truncation `[a, b]` and grid size for one finite-difference run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleSpec {
    pub a: f64,
    pub b: f64,
    #[serde(rename = "N")]
    pub n: usize,
}

impl OracleSpec {
    pub fn new(a: f64, b: f64, n: usize) -> Result<Self> {
        if n < 500 {
            return Err(Error::InvalidInput(format!("oracle grid needs N >= 500, got {n}")));
        }
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidInput(format!("oracle interval must be finite with a < b, got [{a}, {b}]")));
        }
        Ok(Self { a, b, n })
    }

    pub fn step(&self) -> f64 {
        (self.b - self.a) / (self.n - 1) as f64
    }
}

/// Number of eigenvalues below `lambda` of the symmetric tridiagonal matrix
/// with diagonal `d` and constant off-diagonal `e`.
fn sturm_count(d: &[f64], e: f64, lambda: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for (i, &di) in d.iter().enumerate() {
        q = di - lambda - if i == 0 { 0.0 } else { e * e / q };
        if q == 0.0 {
            q = f64::MIN_POSITIVE;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `m` lowest eigenvalues of the tridiagonal matrix, ascending.
pub fn tridiagonal_lowest(d: &[f64], e: f64, m: usize) -> Vec<f64> {
    let lo0 = d.iter().cloned().fold(f64::INFINITY, f64::min) - 2.0 * e.abs();
    let hi0 = d.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + 2.0 * e.abs();
    (0..m.min(d.len()))
        .map(|j| {
            let (mut lo, mut hi) = (lo0, hi0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if sturm_count(d, e, mid) > j {
                    hi = mid;
                } else {
                    lo = mid;
                }
                if hi - lo <= 1e-14 * (1.0 + mid.abs()) {
                    break;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

/// The `m` lowest eigenvalues of `−d²/dx² + V(x)` on the oracle grid.
pub fn fd_spectrum(mut v: impl FnMut(f64) -> Result<f64>, oracle: &OracleSpec, m: usize) -> Result<Vec<f64>> {
    let h = oracle.step();
    let inv = 1.0 / (h * h);
    let mut d = Vec::with_capacity(oracle.n - 2);
    for i in 1..oracle.n - 1 {
        let x = oracle.a + h * i as f64;
        let vx = v(x)?;
        if !vx.is_finite() {
            return Err(Error::NonFinite(format!("potential at x = {x}")));
        }
        d.push(2.0 * inv + vx);
    }
    Ok(tridiagonal_lowest(&d, -inv, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn square_well() {
        let o = OracleSpec::new(0.0, PI, 4000).unwrap();
        let ev = fd_spectrum(|_| Ok(0.0), &o, 3).unwrap();
        for (k, e) in ev.iter().enumerate() {
            let want = ((k + 1) * (k + 1)) as f64;
            assert!((e - want).abs() < 1e-3, "{e} vs {want}");
        }
    }

    #[test]
    fn square_well_error_is_second_order() {
        let err = |n| {
            let o = OracleSpec::new(0.0, PI, n).unwrap();
            (fd_spectrum(|_| Ok(0.0), &o, 3).unwrap()[2] - 9.0).abs()
        };
        let ratio = err(801) / err(1601);
        assert!((ratio - 4.0).abs() < 0.05, "{ratio}");
    }

    #[test]
    fn harmonic_oscillator() {
        let o = OracleSpec::new(-10.0, 10.0, 2000).unwrap();
        let ev = fd_spectrum(|x| Ok(x * x - 1.0), &o, 3).unwrap();
        for (e, want) in ev.iter().zip([0.0, 2.0, 4.0]) {
            assert!((e - want).abs() < 2e-3);
        }
    }

    #[test]
    fn small_grids_rejected() {
        assert!(OracleSpec::new(0.0, 1.0, 100).is_err());
    }

    #[test]
    fn sturm_matches_two_by_two() {
        // [[2, -1], [-1, 2]] has eigenvalues 1 and 3
        let ev = tridiagonal_lowest(&[2.0, 2.0], -1.0, 2);
        assert!((ev[0] - 1.0).abs() < 1e-12 && (ev[1] - 3.0).abs() < 1e-12);
    }
}
