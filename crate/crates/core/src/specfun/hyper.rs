//! Terminating hypergeometric series.

use super::scalar::Scalar;
use super::MAX_DEGREE;
use crate::error::{Error, Result};

/// `Some(n)` if `x` is the non-positive integer `−n`.
fn terminating_order(x: f64) -> Option<usize> {
    let r = x.round();
    (r <= 0.0 && (x - r).abs() <= 1e-12 * (1.0 + x.abs()) && -r <= MAX_DEGREE as f64).then_some(-r as usize)
}

fn check_lower(lower: f64, terms: usize) -> Result<()> {
    // (lower)_j for j ≤ terms involves lower, lower+1, …, lower+terms−1
    for j in 0..terms {
        let c = lower + j as f64;
        if c.abs() < 1e-12 {
            return Err(Error::GammaPole(lower));
        }
    }
    Ok(())
}

/// `₁F₁(upper; lower; z)` with `upper = −n`, summed with exactly `n + 1` terms.
pub fn hyp1f1_terminating<T: Scalar>(upper: f64, lower: f64, z: T) -> Result<T> {
    let n = terminating_order(upper).ok_or_else(|| {
        Error::InvalidInput(format!("1F1 numerator parameter {upper} is not a non-positive integer"))
    })?;
    check_lower(lower, n)?;
    let mut term = T::from_f64(1.0);
    let mut acc = term;
    for j in 0..n {
        let jf = j as f64;
        term = term * z.scale((upper + jf) / ((lower + jf) * (jf + 1.0)));
        acc = acc + term;
    }
    Ok(acc)
}

/// `₂F₁(a, b; c; z)` where `a` or `b` is a non-positive integer.
pub fn hyp2f1_terminating<T: Scalar>(a: f64, b: f64, c: f64, z: T) -> Result<T> {
    let n = match (terminating_order(a), terminating_order(b)) {
        (Some(na), Some(nb)) => na.min(nb),
        (Some(n), None) | (None, Some(n)) => n,
        (None, None) => {
            return Err(Error::InvalidInput(format!(
                "2F1 numerator parameters {a}, {b} do not terminate the series"
            )))
        }
    };
    check_lower(c, n)?;
    let mut term = T::from_f64(1.0);
    let mut acc = term;
    for j in 0..n {
        let jf = j as f64;
        term = term * z.scale((a + jf) * (b + jf) / ((c + jf) * (jf + 1.0)));
        acc = acc + term;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Oracle: exact rational arithmetic on decimal inputs scaled to integers.
    fn frac_sum(terms: &[(i128, i128)]) -> f64 {
        // Σ p_j / q_j reduced pairwise
        fn gcd(a: i128, b: i128) -> i128 {
            if b == 0 {
                a.abs()
            } else {
                gcd(b, a % b)
            }
        }
        let (mut p, mut q) = (0i128, 1i128);
        for &(a, b) in terms {
            p = p * b + a * q;
            q *= b;
            let g = gcd(p, q).max(1);
            p /= g;
            q /= g;
        }
        p as f64 / q as f64
    }

    #[test]
    fn one_f_one() {
        assert_eq!(hyp1f1_terminating(0.0, 3.3, 9.0).unwrap(), 1.0);
        assert!((hyp1f1_terminating(-1.0, 2.5, 1.2).unwrap() - 0.52).abs() < 1e-15);
        // 1F1(−3; 1.7; −0.9) with lower = 17/10, z = −9/10
        // term_j = (−3)_j / (17/10)_j · z^j / j!
        let terms = [
            (1, 1),
            // (−3)(−9/10)/(17/10) = 27/17
            (27, 17),
            // (−3)(−2)(81/100) / ((17/10)(27/10)·2) = 486/918
            (486, 918),
            // (−3)(−2)(−1)(−729/1000) / ((17/10)(27/10)(37/10)·6) = 4374/101898
            (4374, 101898),
        ];
        let want = frac_sum(&terms);
        assert!((hyp1f1_terminating(-3.0, 1.7, -0.9).unwrap() - want).abs() < 1e-13);
    }

    #[test]
    fn two_f_one() {
        assert_eq!(hyp2f1_terminating(0.0, 2.0, 3.0, 0.7).unwrap(), 1.0);
        assert!((hyp2f1_terminating(-1.0, 2.0, 3.0, 0.5).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        // 2F1(−2, 13/10; 8/10; 1/4)
        let terms = [
            (1, 1),
            // (−2)(13/10)/(8/10) · 1/4 = −26/32
            (-26, 32),
            // (−2)(−1)(13/10)(23/10) / ((8/10)(18/10)·2) · 1/16 = 598/4608
            (598, 4608),
        ];
        let want = frac_sum(&terms);
        assert!((hyp2f1_terminating(-2.0, 1.3, 0.8, 0.25).unwrap() - want).abs() < 1e-13);
    }

    #[test]
    fn poles_and_bad_parameters() {
        assert!(matches!(hyp1f1_terminating(-3.0, -1.0, 0.5), Err(Error::GammaPole(_))));
        // lower = −3 is only reached after the series has stopped
        assert!(hyp1f1_terminating(-3.0, -3.0, 0.5).is_ok());
        assert!(matches!(hyp1f1_terminating(-0.5, 1.0, 0.5), Err(Error::InvalidInput(_))));
        assert!(matches!(hyp2f1_terminating(0.5, 1.5, 1.0, 0.5), Err(Error::InvalidInput(_))));
        assert!(matches!(hyp2f1_terminating(-2.0, 1.0, 0.0, 0.5), Err(Error::GammaPole(_))));
    }
}
