//! Gamma function by the Lanczos approximation (g = 7, nine terms) with
//! reflection for the left half-plane.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const G: f64 = 7.0;
const P: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// `ln Γ(z)` for `Re z ≥ 1/2`.
fn lanczos_ln(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut a = Complex64::new(P[0], 0.0);
    for (i, p) in P.iter().enumerate().skip(1) {
        a += *p / (z + i as f64);
    }
    let t = z + G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + a.ln()
}

/// `ln |sin(π z)|`, safe for large imaginary parts.
fn ln_abs_sin_pi(z: Complex64) -> f64 {
    let y = PI * z.im;
    if y.abs() > 40.0 {
        // |sin(πx + iy)| → e^{|y|}/2
        return y.abs() - std::f64::consts::LN_2;
    }
    (z * PI).sin().norm().ln()
}

/// `ln |Γ(z)|` for complex `z` away from the poles.
pub fn ln_gamma_abs_complex(z: Complex64) -> Result<f64> {
    if !z.is_finite() {
        return Err(Error::NonFinite(format!("Gamma argument {z}")));
    }
    if z.im == 0.0 && is_pole(z.re) {
        return Err(Error::GammaPole(z.re));
    }
    if z.re >= 0.5 {
        Ok(lanczos_ln(z).re)
    } else {
        Ok(PI.ln() - ln_abs_sin_pi(z) - lanczos_ln(1.0 - z).re)
    }
}

/// `|Γ(z)|`.
pub fn gamma_abs_complex(z: Complex64) -> Result<f64> {
    ln_gamma_abs_complex(z).map(f64::exp)
}

/// `(ln |Γ(x)|, sign Γ(x))` for real `x` away from the poles.
pub fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if !x.is_finite() {
        return Err(Error::NonFinite(format!("Gamma argument {x}")));
    }
    if is_pole(x) {
        return Err(Error::GammaPole(x));
    }
    if x >= 0.5 {
        return Ok((lanczos_ln(Complex64::new(x, 0.0)).re, 1.0));
    }
    let s = (PI * x).sin();
    let (l, _) = ln_gamma_signed(1.0 - x)?;
    Ok((PI.ln() - s.abs().ln() - l, s.signum()))
}

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::GammaPole(x));
    }
    ln_gamma_signed(x).map(|(l, _)| l)
}

/// `Γ(x)` for real `x`.
pub fn gamma(x: f64) -> Result<f64> {
    let (l, s) = ln_gamma_signed(x)?;
    let v = s * l.exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(format!("Gamma({x}) overflows")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs()
    }

    #[test]
    fn known_values() {
        assert!(log_gamma(1.0).unwrap().abs() < 1e-15);
        assert!(log_gamma(2.0).unwrap().abs() < 1e-15);
        assert!(close(gamma_abs_complex(Complex64::new(0.5, 0.0)).unwrap(), PI.sqrt(), 1e-14));
        let want = (PI / PI.cosh()).sqrt();
        assert!(close(gamma_abs_complex(Complex64::new(0.5, 1.0)).unwrap(), want, 1e-10));
    }

    #[test]
    fn factorials_and_half_integers() {
        let mut f = 1.0;
        for n in 1..30 {
            f *= n as f64;
            assert!(close(gamma(n as f64 + 1.0).unwrap(), f, 1e-13), "n={n}");
        }
        // Γ(−1/2) = −2√π, Γ(−3/2) = 4√π/3
        assert!(close(gamma(-0.5).unwrap(), -2.0 * PI.sqrt(), 1e-13));
        assert!(close(gamma(-1.5).unwrap(), 4.0 * PI.sqrt() / 3.0, 1e-13));
    }

    #[test]
    fn reflection_for_complex_arguments() {
        // |Γ(iy)|² = π / (y sinh πy)
        for y in [0.3, 1.0, 4.0, 20.0] {
            let want = (PI / (y * (PI * y).sinh())).sqrt();
            assert!(close(gamma_abs_complex(Complex64::new(0.0, y)).unwrap(), want, 1e-12), "y={y}");
        }
        // |Γ(1 + iy)|² = π y / sinh πy
        let y = 2.5;
        let want = (PI * y / (PI * y).sinh()).sqrt();
        assert!(close(gamma_abs_complex(Complex64::new(1.0, y)).unwrap(), want, 1e-12));
    }

    #[test]
    fn poles() {
        assert_eq!(gamma(0.0), Err(Error::GammaPole(0.0)));
        assert_eq!(gamma(-3.0), Err(Error::GammaPole(-3.0)));
        assert!(gamma_abs_complex(Complex64::new(-2.0, 0.0)).is_err());
        assert!(gamma_abs_complex(Complex64::new(-2.0, 1e-3)).is_ok());
        assert!(log_gamma(-0.5).is_err());
    }

    #[test]
    fn complex_modulus_matches_real() {
        for x in [0.1, 0.7, 1.3, 5.5, 17.25, 60.0] {
            let a = gamma_abs_complex(Complex64::new(x, 0.0)).unwrap();
            assert!(close(a, log_gamma(x).unwrap().exp(), 1e-12));
        }
    }
}
