//! The two-parameter trigonometric and hyperbolic Poschl-Teller
//! superpotentials rebuilt as `M G(x) + I_1 v_1(x)` at doubled argument.

use std::f64::consts::FRAC_PI_2;

use super::{coth, cot, csc, csch};
use crate::error::{Error, Result};
use crate::invariants::{InvariantExpr, ParamVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classic {
    /// `−m_1 tan x + m_2 cot x` on `(0, π/2)`.
    Pt1,
    /// `m_1 tanh x + m_2 coth x` on `(0, ∞)`.
    Pt2,
}

impl Classic {
    pub fn alpha(self) -> f64 {
        match self {
            Classic::Pt1 => -4.0,
            Classic::Pt2 => 4.0,
        }
    }

    pub fn domain(self) -> (f64, f64) {
        match self {
            Classic::Pt1 => (0.0, FRAC_PI_2),
            Classic::Pt2 => (0.0, f64::INFINITY),
        }
    }

    /// `(G, G', v_1, v_1')` at `x`.
    pub fn g_v(self, x: f64) -> (f64, f64, f64, f64) {
        let y = 2.0 * x;
        match self {
            Classic::Pt2 => (2.0 * coth(y), -4.0 * csch(y).powi(2), 2.0 * csch(y), -4.0 * csch(y) * coth(y)),
            Classic::Pt1 => (2.0 * cot(y), -4.0 * csc(y).powi(2), 2.0 * csc(y), -4.0 * csc(y) * cot(y)),
        }
    }

    fn direct(self, m1: f64, m2: f64, x: f64) -> f64 {
        match self {
            Classic::Pt2 => m1 * x.tanh() + m2 * coth(x),
            Classic::Pt1 => -m1 * x.tan() + m2 * cot(x),
        }
    }
}

/// `(M G(x) + I_1 v_1(x), direct form)` with `I_1 = (m_2 − m_1)/2`.
pub fn classic_reconstruction(which: Classic, m1: f64, m2: f64, x: f64) -> Result<(f64, f64)> {
    let i1 = InvariantExpr::verified("(m2 - m1)/2", 2)?;
    classic_reconstruction_with(which, &ParamVector::new(vec![m1, m2])?, &i1, x)
}

/// As [`classic_reconstruction`] with a caller-supplied invariant in place of
/// `(m_2 − m_1)/2`.
pub fn classic_reconstruction_with(
    which: Classic,
    p: &ParamVector,
    i1: &InvariantExpr,
    x: f64,
) -> Result<(f64, f64)> {
    if p.len() != 2 {
        return Err(Error::InvalidInput(format!("two parameters required, got {}", p.len())));
    }
    if !i1.is_verified_for(2) {
        return Err(Error::UnverifiedInvariant(i1.source().to_string()));
    }
    let (lo, hi) = which.domain();
    if !(x > lo && x < hi) {
        return Err(Error::DomainViolation { family: format!("{which:?}"), x });
    }
    let (g, _, v, _) = which.g_v(x);
    let lhs = p.mean() * g + i1.eval(p)? * v;
    let (m1, m2) = (p.get(0).expect("len 2"), p.get(1).expect("len 2"));
    Ok((lhs, which.direct(m1, m2, x)))
}
