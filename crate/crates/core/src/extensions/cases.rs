//! The closed forms of `W_0`, `W_{1+}` and `W_{1-}` for each case, evaluated
//! on complex dual numbers so that every value carries its `x` derivative.

use num_complex::Complex64;

use crate::error::Result;
use crate::specfun::{hyp1f1_terminating, hyp2f1_terminating, jacobi, laguerre, Dual, Elementary, Scalar};

pub(crate) type D = Dual<Complex64>;

fn c(v: f64) -> D {
    D::from_f64(v)
}

fn ci(im: f64) -> D {
    D::constant(Complex64::new(0.0, im))
}

fn jac(n: usize, a: f64, b: f64, z: D) -> Result<D> {
    jacobi(n, c(a), c(b), z)
}

/// A `W_{1±}` value together with its denominator (scalar factors included).
pub(crate) struct Ratio {
    pub value: D,
    pub den: Complex64,
}

fn ratio(num: D, den: D) -> Ratio {
    Ratio { value: num / den, den: den.v }
}

pub(crate) fn w0(case: u8, x: D, e: f64, r: f64, l: usize) -> D {
    let lf = l as f64;
    let two_x = x.scale(2.0);
    match case {
        1 | 2 => x.cosh() / x.sinh() * c(e) - x.sinh().recip() * c(r),
        3 => two_x.cosh() / two_x.sinh() * c(2.0 * (lf + e)) + two_x.sinh().recip() * c(2.0 * r),
        4 | 5 => x.recip() * c(e) + x * c(r),
        6 | 7 => x.recip() * c(e + lf) - x,
        8 => -(x.tan() * c(e)) - x.cos().recip() * c(r),
        9 => two_x.cos() / two_x.sin() * c(2.0 * (e + lf)) - two_x.sin().recip() * c(2.0 * r),
        10 => two_x.cos() / two_x.sin() * c(2.0 * e) + two_x.sin().recip() * c(2.0 * r),
        11 => x.tanh() * c(e) + x.cosh().recip() * ci(r),
        _ => unreachable!("case ids are validated on construction"),
    }
}

/// `W_{1+}` when `plus`, otherwise the separate `W_{1-}` form.
pub(crate) fn w1(case: u8, plus: bool, x: D, e: f64, r: f64, l: usize) -> Result<Ratio> {
    let lf = l as f64;
    // parameter offsets that distinguish the two forms
    let s = if plus { 1.0 } else { -1.0 };
    let two_x = x.scale(2.0);
    Ok(match case {
        1 => ratio(-(x.sinh().scale(2.0 * r)), c(2.0 * e + s) - x.cosh().scale(2.0 * r)),
        2 => {
            let (a1, b1, a2, b2) = if plus {
                (0.5 + e - r, -0.5 - e - r, -0.5 + e - r, -1.5 - e - r)
            } else {
                (-0.5 + e - r, 0.5 - e - r, -1.5 + e - r, -0.5 - e - r)
            };
            let z = x.cosh();
            let num = x.sinh().scale(0.5 * (lf - 2.0 * r - 1.0)) * jac(l - 1, a1, b1, z)?;
            ratio(num, jac(l, a2, b2, z)?)
        }
        3 => {
            let (a1, b1, a2, b2) = if plus {
                (-0.5 - lf - e - r, 0.5 + lf + e - r, -1.5 - lf - e - r, -0.5 + lf + e - r)
            } else {
                (0.5 - lf - e - r, -0.5 + lf + e - r, -0.5 - lf - e - r, -1.5 + lf + e - r)
            };
            let z = two_x.cosh();
            let num = two_x.sinh().scale(-(2.0 * r - lf + 1.0)) * jac(l - 1, a1, b1, z)?;
            ratio(num, jac(l, a2, b2, z)?)
        }
        4 => ratio(-(x.scale(4.0 * r)), c(2.0 * e + s) - (x * x).scale(2.0 * r)),
        5 => {
            let (a1, a2) = if plus { (-0.5 - e, -1.5 - e) } else { (0.5 - e, -0.5 - e) };
            let z = -(x * x).scale(r);
            ratio(x.scale(2.0 * r) * laguerre(l - 1, a1, z)?, laguerre(l, a2, z)?)
        }
        6 => {
            let (a1, a2) = if plus { (0.5 + lf + e, -0.5 + lf + e) } else { (-0.5 + lf + e, -1.5 + lf + e) };
            let z = -(x * x);
            ratio(x.scale(2.0) * laguerre(l - 1, a1, z)?, laguerre(l, a2, z)?)
        }
        7 => {
            let (b1, b2) = if plus { (1.5 + lf + e, 0.5 + lf + e) } else { (0.5 + lf + e, -0.5 + lf + e) };
            let z = -(x * x);
            let num = x.scale(2.0 * lf) * hyp1f1_terminating(1.0 - lf, b1, z)?;
            ratio(num, hyp1f1_terminating(-lf, b2, z)?.scale(b2))
        }
        8 => ratio(x.cos().scale(2.0 * r), c(2.0 * e + s) + x.sin().scale(2.0 * r)),
        9 => {
            let (a1, b1, a2, b2) = if plus {
                (-0.5 - lf - e + r, 0.5 + lf + e + r, -1.5 - lf - e + r, -0.5 + lf + e + r)
            } else {
                (0.5 - lf - e + r, -0.5 + lf + e + r, -0.5 - lf - e + r, -1.5 + lf + e + r)
            };
            let z = two_x.cos();
            let num = two_x.sin().scale(-(2.0 * r + lf - 1.0)) * jac(l - 1, a1, b1, z)?;
            ratio(num, jac(l, a2, b2, z)?)
        }
        10 => {
            // Γ(c − 1)/Γ(c) = 1/(c − 1) with c the lower parameter of the numerator
            let (c1, c2) = if plus { (1.5 + e + r, 0.5 + e + r) } else { (0.5 + e + r, -0.5 + e + r) };
            let z = x.sin() * x.sin();
            let num = two_x.sin().scale(-lf * (2.0 * r + lf - 1.0)) * hyp2f1_terminating(1.0 - lf, lf + 2.0 * r, c1, z)?;
            ratio(num, hyp2f1_terminating(-lf, -1.0 + lf + 2.0 * r, c2, z)?.scale(c2))
        }
        11 => {
            let (a1, b1, a2, b2) = if plus {
                (-r + e + 0.5, -r - e - 0.5, -r + e - 0.5, -r - e - 1.5)
            } else {
                (-r + e - 0.5, -r - e + 0.5, -r + e - 1.5, -r - e - 0.5)
            };
            let z = x.sinh() * ci(1.0);
            let num = x.cosh() * ci(0.5 * (lf - 2.0 * r - 1.0)) * jac(l - 1, a1, b1, z)?;
            ratio(num, jac(l, a2, b2, z)?)
        }
        _ => unreachable!("case ids are validated on construction"),
    })
}
