//! Exact finite-sum oracles. Every `f64` input is a dyadic rational, so the
//! defining series are summed in big-rational arithmetic and rounded once.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

type Q = BigRational;

fn q(x: f64) -> Q {
    Q::from_float(x).expect("finite input")
}

fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn f(x: &Q) -> f64 {
    x.to_f64().expect("representable")
}

#[derive(Clone)]
struct Cq {
    re: Q,
    im: Q,
}

impl Cq {
    fn new(z: Complex64) -> Self {
        Self { re: q(z.re), im: q(z.im) }
    }
    fn real(r: Q) -> Self {
        Self { re: r, im: Q::zero() }
    }
    fn one() -> Self {
        Self::real(Q::one())
    }
    fn add(&self, o: &Self) -> Self {
        Self { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn mul(&self, o: &Self) -> Self {
        Self { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
    fn scale(&self, s: &Q) -> Self {
        Self { re: &self.re * s, im: &self.im * s }
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(f(&self.re), f(&self.im))
    }
}

fn rising(x: &Cq, j: usize) -> Cq {
    (0..j).fold(Cq::one(), |acc, i| acc.mul(&x.add(&Cq::real(qi(i as i64)))))
}

fn fact(j: usize) -> Q {
    (1..=j as i64).fold(Q::one(), |acc, i| acc * qi(i))
}

/// `P_n^{(a,b)}(z) = Σ_s C(n+a, n−s) C(n+b, s) ((z−1)/2)^s ((z+1)/2)^{n−s}`.
pub fn jacobi(n: usize, a: Complex64, b: Complex64, z: Complex64) -> Complex64 {
    let (a, b, z) = (Cq::new(a), Cq::new(b), Cq::new(z));
    let half = Q::new(BigInt::from(1), BigInt::from(2));
    let zm = z.add(&Cq::real(qi(-1))).scale(&half);
    let zp = z.add(&Cq::one()).scale(&half);
    // C(x, j) = (x − j + 1)_j / j!
    let binom = |x: &Cq, j: usize| rising(&x.add(&Cq::real(qi(1 - j as i64))), j).scale(&(Q::one() / fact(j)));
    let na = a.add(&Cq::real(qi(n as i64)));
    let nb = b.add(&Cq::real(qi(n as i64)));
    let mut acc = Cq::real(Q::zero());
    for s in 0..=n {
        let mut t = binom(&na, n - s).mul(&binom(&nb, s));
        for _ in 0..s {
            t = t.mul(&zm);
        }
        for _ in 0..n - s {
            t = t.mul(&zp);
        }
        acc = acc.add(&t);
    }
    acc.to_c64()
}

/// `L_n^{(a)}(z) = Σ_i (−1)^i C(n+a, n−i) z^i / i!`.
pub fn laguerre(n: usize, a: f64, z: f64) -> f64 {
    let (a, z) = (q(a), q(z));
    let mut acc = Q::zero();
    for i in 0..=n {
        let j = n - i;
        // C(n+a, j) = (a + i + 1)_j / j!
        let mut c = Q::one();
        for t in 0..j {
            c *= &a + qi((i + 1 + t) as i64);
        }
        c /= fact(j);
        let mut term = c * num_traits::pow(z.clone(), i) / fact(i);
        if i % 2 == 1 {
            term = -term;
        }
        acc += term;
    }
    f(&acc)
}

/// `H_n(z) = n! Σ_m (−1)^m (2z)^{n−2m} / (m! (n−2m)!)`.
pub fn hermite(n: usize, z: f64) -> f64 {
    let z2 = q(z) * qi(2);
    let mut acc = Q::zero();
    for m in 0..=n / 2 {
        let mut term = fact(n) * num_traits::pow(z2.clone(), n - 2 * m) / (fact(m) * fact(n - 2 * m));
        if m % 2 == 1 {
            term = -term;
        }
        acc += term;
    }
    f(&acc)
}

/// `₂F₁(a, b; c; z)` summed through `terms` terms, with `Σ |term|`.
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64, terms: usize) -> (f64, f64) {
    let (a, b, c, z) = (q(a), q(b), q(c), q(z));
    let mut term = Q::one();
    let mut acc = Q::one();
    let mut mag = Q::one();
    for j in 0..terms.saturating_sub(1) {
        let jq = qi(j as i64);
        term = term * (&a + &jq) * (&b + &jq) * &z / ((&c + &jq) * qi(j as i64 + 1));
        acc += &term;
        mag += term.abs();
    }
    (f(&acc), f(&mag))
}

/// `₁F₁(a; c; z)` summed through `terms` terms, with `Σ |term|`.
pub fn hyp1f1(a: f64, c: f64, z: f64, terms: usize) -> (f64, f64) {
    let (a, c, z) = (q(a), q(c), q(z));
    let mut term = Q::one();
    let mut acc = Q::one();
    let mut mag = Q::one();
    for j in 0..terms.saturating_sub(1) {
        let jq = qi(j as i64);
        term = term * (&a + &jq) * &z / ((&c + &jq) * qi(j as i64 + 1));
        acc += &term;
        mag += term.abs();
    }
    (f(&acc), f(&mag))
}
