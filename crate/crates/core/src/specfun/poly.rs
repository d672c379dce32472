//! Classical orthogonal polynomials by three-term recurrence.

use super::scalar::Scalar;
use super::MAX_DEGREE;
use crate::error::{Error, Result};

fn check_degree(n: usize) -> Result<()> {
    if n > MAX_DEGREE {
        return Err(Error::InvalidInput(format!("polynomial degree {n} exceeds the cap {MAX_DEGREE}")));
    }
    Ok(())
}

const DEGENERATE: f64 = 0.5;

/// Generalised binomial coefficient `C(x, j)`.
pub fn binom<T: Scalar>(x: T, j: usize) -> T {
    let mut r = T::from_f64(1.0);
    for i in 0..j {
        r = r * (x - T::from_f64(i as f64)) / T::from_f64((i + 1) as f64);
    }
    r
}

/// Jacobi polynomial `P_n^{(a,b)}(z)`.
///
/// Uses the three-term recurrence. Its leading coefficient carries the factors
/// `m + a + b` and `2m + a + b − 2`; when either comes within 1/2 of zero for
/// some intermediate degree the recurrence loses digits, and the explicit
/// binomial sum is used instead.
pub fn jacobi<T: Scalar>(n: usize, a: T, b: T, z: T) -> Result<T> {
    check_degree(n)?;
    let one = T::from_f64(1.0);
    let two = T::from_f64(2.0);
    if n == 0 {
        return Ok(one);
    }
    let p1 = (a - b) / two + (a + b + two) * z / two;
    if n == 1 {
        return Ok(p1);
    }
    let degenerate = (2..=n).any(|m| {
        let m = m as f64;
        (T::from_f64(m) + a + b).modulus() < DEGENERATE
            || (T::from_f64(2.0 * m - 2.0) + a + b).modulus() < DEGENERATE
    });
    if degenerate {
        return Ok(jacobi_sum(n, a, b, z));
    }
    let (mut pm1, mut p) = (one, p1);
    for m in 2..=n {
        let mf = T::from_f64(m as f64);
        let s = two * mf + a + b;
        let c0 = two * mf * (mf + a + b) * (s - two);
        let c1 = (s - one) * (s * (s - two) * z + a * a - b * b);
        let c2 = two * (mf + a - one) * (mf + b - one) * s;
        let next = (c1 * p - c2 * pm1) / c0;
        pm1 = p;
        p = next;
    }
    Ok(p)
}

/// `Σ_s C(n+a, n−s) C(n+b, s) ((z−1)/2)^s ((z+1)/2)^{n−s}`.
pub fn jacobi_sum<T: Scalar>(n: usize, a: T, b: T, z: T) -> T {
    let nf = T::from_f64(n as f64);
    let half = T::from_f64(0.5);
    let zm = (z - T::from_f64(1.0)) * half;
    let zp = (z + T::from_f64(1.0)) * half;
    let mut acc = T::from_f64(0.0);
    for s in 0..=n {
        acc = acc + binom(nf + a, n - s) * binom(nf + b, s) * zm.powi(s as u32) * zp.powi((n - s) as u32);
    }
    acc
}

/// Generalised Laguerre polynomial `L_n^{(a)}(z)`.
pub fn laguerre<T: Scalar>(n: usize, a: f64, z: T) -> Result<T> {
    check_degree(n)?;
    let one = T::from_f64(1.0);
    if n == 0 {
        return Ok(one);
    }
    let (mut lm1, mut l) = (one, T::from_f64(1.0 + a) - z);
    for m in 2..=n {
        let mf = m as f64;
        let next = ((T::from_f64(2.0 * mf - 1.0 + a) - z) * l - lm1.scale(mf - 1.0 + a)).scale(1.0 / mf);
        lm1 = l;
        l = next;
    }
    Ok(l)
}

/// Physicists' Hermite polynomial `H_n(z)`.
pub fn hermite<T: Scalar>(n: usize, z: T) -> Result<T> {
    check_degree(n)?;
    let one = T::from_f64(1.0);
    if n == 0 {
        return Ok(one);
    }
    let (mut hm1, mut h) = (one, z.scale(2.0));
    for m in 1..n {
        let next = (z * h).scale(2.0) - hm1.scale(2.0 * m as f64);
        hm1 = h;
        h = next;
    }
    Ok(h)
}
