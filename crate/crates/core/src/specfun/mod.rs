//! Special functions: Jacobi, Laguerre and Hermite polynomials, terminating
//! hypergeometric series, and the Gamma function.
//!
//! The polynomial evaluators are generic over [`Scalar`], so the same code
//! runs on reals, complex numbers and dual numbers (for derivatives).

mod gamma;
mod hyper;
mod poly;
mod scalar;

use num_complex::Complex64;

pub use gamma::{gamma, gamma_abs_complex, ln_gamma_abs_complex, ln_gamma_signed, log_gamma};
pub use hyper::{hyp1f1_terminating, hyp2f1_terminating};
pub use poly::{binom, hermite, jacobi, jacobi_sum, laguerre};
pub use scalar::{Dual, Elementary, Scalar};

use crate::error::Result;

/// Highest polynomial degree accepted.
pub const MAX_DEGREE: usize = 64;

pub fn jacobi_p(k: usize, a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64> {
    jacobi(k, a, b, z)
}

pub fn laguerre_l(k: usize, a: f64, z: f64) -> Result<f64> {
    laguerre(k, a, z)
}

pub fn hermite_h(k: usize, z: f64) -> Result<f64> {
    hermite(k, z)
}
