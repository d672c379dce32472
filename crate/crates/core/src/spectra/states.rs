//! Closed-form eigenfunctions `ζ_k`, assembled in log space so that large
//! envelopes and large polynomial values do not overflow separately.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::{FRAC_PI_4, LN_2, PI};

use super::{check_index, energy_raw, norm_coefficient, NormKind};
use crate::error::{Error, Result};
use crate::families::{FamilyId, FamilyParams};
use crate::specfun::{binom, hermite, jacobi, jacobi_p, laguerre, ln_gamma_abs_complex, ln_gamma_signed, log_gamma};

/// Bound on the relative imaginary residue of complex-path states.
pub const IMAG_TOL: f64 = 1e-9;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn ln_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - LN_2
}

/// `ln sinh x` for `x > 0`.
fn ln_sinh(x: f64) -> f64 {
    if x < 1.0 {
        x.sinh().ln()
    } else {
        x + (-(-2.0 * x).exp()).ln_1p() - LN_2
    }
}

/// `ln(Γ(a) Γ(b) ... / Γ(c) ...)` of a product that must be positive.
fn ln_gamma_ratio(num: &[f64], den: &[f64], context: &str) -> Result<f64> {
    let mut ln = 0.0;
    let mut sign = 1.0;
    for &x in num {
        let (l, s) = ln_gamma_signed(x)?;
        ln += l;
        sign *= s;
    }
    for &x in den {
        let (l, s) = ln_gamma_signed(x)?;
        ln -= l;
        sign *= s;
    }
    if sign < 0.0 {
        return Err(Error::NegativeRadicand { context: context.to_string(), value: -ln.exp() });
    }
    Ok(ln)
}

/// `Σ_s |binom(n+a, n−s) binom(n+b, s) ((z−1)/2)^s ((z+1)/2)^{n−s}|`, the
/// scale of the rounding error in a Jacobi evaluation.
fn jacobi_magnitude(n: usize, a: Complex64, b: Complex64, z: Complex64) -> f64 {
    let (u, v) = (((z - 1.0) * 0.5).norm(), ((z + 1.0) * 0.5).norm());
    (0..=n)
        .map(|s| {
            let c = binom(a + n as f64, n - s) * binom(b + n as f64, s);
            c.norm() * u.powi(s as i32) * v.powi((n - s) as i32)
        })
        .sum()
}

/// A bound state `ζ_k` of one family.
#[derive(Debug, Clone, Serialize)]
pub struct EigenState {
    pub family: FamilyParams,
    pub k: usize,
    pub energy: f64,
    #[serde(skip)]
    ln_c: f64,
    #[serde(skip)]
    phase: Complex64,
}

/// Envelope logarithm and polynomial factor at one point.
struct Body {
    ln_w: f64,
    poly: Complex64,
    /// Rounding scale of `poly` for complex paths.
    scale: f64,
}

impl Body {
    fn real(ln_w: f64, poly: f64) -> Self {
        Body { ln_w, poly: Complex64::new(poly, 0.0), scale: poly.abs() }
    }
}

pub fn wavefunction(fp: &FamilyParams, k: usize) -> Result<EigenState> {
    check_index(fp, k)?;
    let (ln_c, phase) = prefactor(fp, k)?;
    if !ln_c.is_finite() {
        return Err(Error::NonFinite(format!("normalization of {} state {k}", fp.id)));
    }
    Ok(EigenState { family: fp.clone(), k, energy: energy_raw(fp, k), ln_c, phase })
}

fn signed_ln(v: f64) -> (f64, f64) {
    (v.abs().ln(), v.signum())
}

/// `(ln |C|, phase)` of the constant in front of each state.
fn prefactor(fp: &FamilyParams, k: usize) -> Result<(f64, Complex64)> {
    use FamilyId::*;
    let (e, r) = (fp.eps, fp.rho);
    let kf = k as f64;
    let ln_fact = log_gamma(kf + 1.0)?;
    let (ln_n, sign_n) = match NormKind::for_family(fp.id) {
        Some(kind) => signed_ln(norm_coefficient(kind, k, fp)?),
        None => (0.0, 1.0),
    };
    let alt = if k % 2 == 0 { 1.0 } else { -1.0 };
    let ipow = |base: Complex64| (0..k).fold(Complex64::new(1.0, 0.0), |acc, _| acc * base);
    let ctx = |what: &str| format!("{} {what} at k = {k}", fp.id);
    let (ln, phase) = match fp.id {
        Scarf2 => {
            let g = ln_gamma_abs_complex(Complex64::new(0.5 + e - kf, -r))?;
            let ln = (e - 0.5) * LN_2 + g - 0.5 * PI.ln() - 0.5 * log_gamma(2.0 * (e - kf))? + ln_fact + ln_n;
            (ln, ipow(I) * sign_n)
        }
        PoschlTeller => {
            let g = ln_gamma_ratio(&[0.5 - kf + e + r], &[2.0 * (e - kf), 0.5 + kf - e + r], &ctx("Gamma ratio"))?;
            (e * LN_2 + 0.5 * g + ln_fact + ln_n, Complex64::new(sign_n, 0.0))
        }
        Morse | MorseMirror => {
            let lr = if fp.id == Morse { r.ln() } else { (-r).ln() };
            let ln = (e - kf) * (LN_2 + lr) + ln_n + ln_fact - 0.5 * log_gamma(2.0 * (e - kf))?;
            (ln, Complex64::new(alt * sign_n, 0.0))
        }
        RadialOsc => {
            let a = 0.5 + kf - e;
            let ln = 0.5 * (LN_2 + a * r.ln() - log_gamma(a)?) + ln_fact + kf * LN_2 + ln_n;
            (ln, Complex64::new(alt * sign_n, 0.0))
        }
        HarmOsc => {
            let ln = 0.25 * (fp.beta / PI).ln() - 0.5 * (ln_fact + kf * LN_2);
            (ln, Complex64::new(1.0, 0.0))
        }
        Scarf1 | Scarf1Cot => {
            let g = ln_gamma_ratio(&[1.0 + 2.0 * kf - 2.0 * e], &[0.5 + kf - e - r, 0.5 + kf - e + r], &ctx("Gamma ratio"))?;
            (e * LN_2 + ln_fact + 0.5 * g + ln_n, Complex64::new(sign_n, 0.0))
        }
        RosenMorse2 | Eckart => {
            let s = e - kf;
            let (a, b) = (s + r / s, s - r / s);
            let g = if fp.id == RosenMorse2 {
                ln_gamma_ratio(&[2.0 * s], &[b, a], &ctx("Gamma ratio"))?
            } else {
                ln_gamma_ratio(&[1.0 - b], &[1.0 - 2.0 * s, a], &ctx("Gamma ratio"))?
            };
            ((0.5 - s) * LN_2 + ln_fact + 0.5 * g + ln_n, Complex64::new(sign_n, 0.0))
        }
        Coulomb => {
            let s = e - kf;
            let base = r / s;
            if base <= 0.0 {
                return Err(Error::NegativeRadicand { context: ctx("power base rho/(eps - k)"), value: base });
            }
            let (lg, sg) = ln_gamma_signed(-2.0 * s)?;
            let lead = -r * sg;
            if lead <= 0.0 {
                return Err(Error::NegativeRadicand { context: ctx("normalization radicand"), value: lead });
            }
            let ln_rad = lead.abs().ln() - 2.0 * s.abs().ln() - 2.0 * s * base.ln() - lg;
            (ln_fact + 0.5 * ln_rad + ln_n, Complex64::new(alt * sign_n, 0.0))
        }
        RosenMorse1 | RosenMorse1Cot => {
            let g = ln_gamma_abs_complex(Complex64::new(1.0 + kf - e, r / (kf - e)))?;
            let ln = ln_fact + g - 0.5 * (PI.ln() + log_gamma(1.0 + 2.0 * kf - 2.0 * e)?) + ln_n;
            (ln, ipow(-I) * sign_n)
        }
    };
    Ok((ln, phase))
}

impl EigenState {
    /// True for the families whose closed form runs through complex
    /// Jacobi polynomials.
    pub fn is_complex_path(&self) -> bool {
        matches!(self.family.id, FamilyId::Scarf2 | FamilyId::RosenMorse1 | FamilyId::RosenMorse1Cot)
    }

    fn body(&self, x: f64) -> Result<Body> {
        use FamilyId::*;
        let fp = &self.family;
        let (e, r, k) = (fp.eps, fp.rho, self.k);
        let kf = k as f64;
        Ok(match fp.id {
            Scarf2 => {
                let (a, b) = (Complex64::new(-0.5 - e, r), Complex64::new(-0.5 - e, -r));
                let z = -I * x.sinh();
                Body {
                    ln_w: -r * x.sinh().atan() - e * ln_cosh(x),
                    poly: jacobi_p(k, a, b, z)?,
                    scale: jacobi_magnitude(k, a, b, z),
                }
            }
            PoschlTeller => {
                let ln_cm1 = LN_2 + 2.0 * ln_sinh(0.5 * x);
                let ln_cp1 = LN_2 + 2.0 * ln_cosh(0.5 * x);
                let p = jacobi(k, -0.5 - e - r, -0.5 - e + r, -x.cosh())?;
                Body::real(0.5 * (r - e) * ln_cm1 - 0.5 * (e + r) * ln_cp1, p)
            }
            Morse => {
                let y = (-x).exp();
                Body::real(kf * x - r * y - e * x, laguerre(k, 2.0 * e - 2.0 * kf, 2.0 * r * y)?)
            }
            MorseMirror => {
                let y = x.exp();
                Body::real(-kf * x + r * y + e * x, laguerre(k, 2.0 * e - 2.0 * kf, -2.0 * r * y)?)
            }
            RadialOsc => Body::real(-0.5 * r * x * x - e * x.ln(), laguerre(k, -0.5 - e, r * x * x)?),
            HarmOsc => {
                let y = fp.beta.sqrt() * (x + r / fp.beta);
                Body::real(-0.5 * y * y, hermite(k, y)?)
            }
            Scarf1 | Scarf1Cot => {
                // 1 ∓ sin x and 1 ∓ cos x as squares of half-angle functions
                let (ln_m, ln_p, s) = if fp.id == Scarf1 {
                    let h = FRAC_PI_4 - 0.5 * x;
                    (LN_2 + 2.0 * h.sin().abs().ln(), LN_2 + 2.0 * h.cos().abs().ln(), x.sin())
                } else {
                    let h = 0.5 * x;
                    (LN_2 + 2.0 * h.sin().abs().ln(), LN_2 + 2.0 * h.cos().abs().ln(), x.cos())
                };
                let p = jacobi(k, -0.5 - e - r, -0.5 - e + r, s)?;
                Body::real(-0.5 * (e + r) * ln_m - 0.5 * (e - r) * ln_p, p)
            }
            RosenMorse2 => {
                let s = e - kf;
                let (a, b) = (s + r / s, s - r / s);
                Body::real(-s * ln_cosh(x) - r / s * x, jacobi(k, a, b, x.tanh())?)
            }
            Eckart => {
                let s = e - kf;
                let (a, b) = (s + r / s, s - r / s);
                Body::real(-s * ln_sinh(x) - r / s * x, jacobi(k, a, b, 1.0 / x.tanh())?)
            }
            Coulomb => {
                let s = e - kf;
                Body::real(-e * (2.0 * x).ln() - r * x / s, laguerre(k, -1.0 - 2.0 * e, 2.0 * r * x / s)?)
            }
            RosenMorse1 | RosenMorse1Cot => {
                let s = e - kf;
                let (a, b) = (Complex64::new(s, r / s), Complex64::new(s, -r / s));
                let (ln_w, z) = if fp.id == RosenMorse1 {
                    ((kf - e) * (2.0 * x.cos()).ln() - r * x / s, -I * x.tan())
                } else {
                    ((kf - e) * (2.0 * x.sin()).ln() - r * (2.0 * x - PI) / (2.0 * s), I / x.tan())
                };
                Body { ln_w, poly: jacobi_p(k, a, b, z)?, scale: jacobi_magnitude(k, a, b, z) }
            }
        })
    }

    fn check_x(&self, x: f64) -> Result<()> {
        if x.is_finite() && self.family.domain().contains(x) {
            Ok(())
        } else {
            Err(Error::DomainViolation { family: self.family.id.id().to_string(), x })
        }
    }

    /// `(ζ_k(x), rounding scale)` before taking the real part.
    pub fn eval_complex(&self, x: f64) -> Result<(Complex64, f64)> {
        self.check_x(x)?;
        let b = self.body(x)?;
        let ln = self.ln_c + b.ln_w;
        let m = b.poly.norm();
        if !ln.is_finite() && ln != f64::NEG_INFINITY {
            return Err(Error::NonFinite(format!("{} state {} at x = {x}", self.family.id, self.k)));
        }
        if m == 0.0 || ln == f64::NEG_INFINITY {
            return Ok((Complex64::new(0.0, 0.0), (ln + b.scale.ln()).exp()));
        }
        let v = self.phase * (b.poly / m) * (ln + m.ln()).exp();
        let scale = (ln + b.scale.max(m).ln()).exp();
        if !v.is_finite() {
            return Err(Error::NonFinite(format!("{} state {} at x = {x}", self.family.id, self.k)));
        }
        Ok((v, scale))
    }

    /// `|Im ζ_k(x)|` relative to the rounding scale of the evaluation.
    pub fn imaginary_residue(&self, x: f64) -> Result<f64> {
        let (v, scale) = self.eval_complex(x)?;
        Ok(if scale > 0.0 { v.im.abs() / scale } else { 0.0 })
    }

    /// `ζ_k(x)`, after checking the imaginary residue on complex paths.
    pub fn eval(&self, x: f64) -> Result<f64> {
        let (v, scale) = self.eval_complex(x)?;
        if self.is_complex_path() && scale > 0.0 {
            let residue = v.im.abs() / scale;
            if residue > IMAG_TOL {
                return Err(Error::ImaginaryResidue { x, residue, limit: IMAG_TOL });
            }
        }
        Ok(v.re)
    }
}
