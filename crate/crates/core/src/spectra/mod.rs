//! Eigenenergies, normalization recursions and closed-form eigenfunctions.

mod states;

use serde::Serialize;
use std::fmt;
use std::str::FromStr;

pub use states::{wavefunction, EigenState, IMAG_TOL};

use crate::error::{Error, Result};
use crate::families::{FamilyId, FamilyParams};
use crate::specfun::{ln_gamma_signed, MAX_DEGREE};

/// The normalization recursions, one letter per family group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    A,
    B,
    C,
    D,
    E,
    P,
    U,
}

impl NormKind {
    pub const ALL: [NormKind; 7] = [NormKind::A, NormKind::B, NormKind::C, NormKind::D, NormKind::E, NormKind::P, NormKind::U];

    /// The recursion used by a family's eigenfunctions, if any.
    pub fn for_family(id: FamilyId) -> Option<NormKind> {
        use FamilyId::*;
        Some(match id {
            Scarf2 | Morse | MorseMirror => NormKind::A,
            PoschlTeller => NormKind::B,
            RadialOsc => NormKind::C,
            Scarf1 | Scarf1Cot => NormKind::D,
            RosenMorse2 | Eckart => NormKind::E,
            Coulomb => NormKind::P,
            RosenMorse1 | RosenMorse1Cot => NormKind::U,
            HarmOsc => return None,
        })
    }

    fn letter(self) -> char {
        match self {
            NormKind::A => 'a',
            NormKind::B => 'b',
            NormKind::C => 'c',
            NormKind::D => 'd',
            NormKind::E => 'e',
            NormKind::P => 'p',
            NormKind::U => 'u',
        }
    }
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for NormKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NormKind::ALL
            .into_iter()
            .find(|k| s.len() == 1 && s.starts_with(k.letter()))
            .ok_or_else(|| Error::InvalidInput(format!("unknown normalization kind `{s}`")))
    }
}

fn radicand(kind: NormKind, k: usize, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value.sqrt())
    } else {
        Err(Error::NegativeRadicand { context: format!("{kind}_k recursion at k = {k}"), value })
    }
}

fn nonzero_eps(kind: NormKind, k: usize, e: f64) -> Result<f64> {
    if e == 0.0 {
        Err(Error::NonFinite(format!("{kind}_k recursion divides by eps = 0 at k = {k}")))
    } else {
        Ok(e)
    }
}

/// Unrolls the recursion for `kind` from `k` down to 0, shifting `ε` by −1
/// per step.
pub fn norm_coefficient(kind: NormKind, k: usize, fp: &FamilyParams) -> Result<f64> {
    let (mut e, r) = (fp.eps, fp.rho);
    let mut acc = 1.0;
    for j in (1..=k).rev() {
        let jf = j as f64;
        let step = match kind {
            NormKind::A | NormKind::B => 1.0 / radicand(kind, j, (2.0 * e - jf) * jf)?,
            NormKind::C => 1.0 / radicand(kind, j, 4.0 * r * jf)?,
            NormKind::D => 1.0 / radicand(kind, j, jf * (jf - 2.0 * e))?,
            NormKind::E | NormKind::U => {
                let e0 = nonzero_eps(kind, j, e)?;
                let sign = if kind == NormKind::E { 1.0 } else { -1.0 };
                let rad = sign * jf * (2.0 * e - jf) - r * r / ((jf - e) * (jf - e)) + r * r / (e * e);
                (2.0 * e - jf) / (e0 * radicand(kind, j, rad)?)
            }
            NormKind::P => {
                let e0 = nonzero_eps(kind, j, e)?;
                let rad = (jf - e).powi(2) * e * e / (jf * (jf - 2.0 * e) * r * r);
                (2.0 * e - jf) / e0 * radicand(kind, j, rad)?
            }
        };
        acc *= step;
        e -= 1.0;
    }
    if acc.is_finite() {
        Ok(acc)
    } else {
        Err(Error::NonFinite(format!("{kind}_{k}")))
    }
}

/// Admissible bound-state indices `0..count`, or every `k ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IndexRange {
    Finite(usize),
    Unbounded,
}

impl IndexRange {
    pub fn contains(&self, k: usize) -> bool {
        match *self {
            IndexRange::Finite(n) => k < n,
            IndexRange::Unbounded => true,
        }
    }

    /// The first `n` admissible indices (fewer if the range is shorter).
    pub fn first(&self, n: usize) -> Vec<usize> {
        let end = match *self {
            IndexRange::Finite(c) => c.min(n),
            IndexRange::Unbounded => n,
        };
        (0..end).collect()
    }
}

impl fmt::Display for IndexRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexRange::Finite(0) => write!(f, "{{}}"),
            IndexRange::Finite(n) => write!(f, "{{0..{}}}", n - 1),
            IndexRange::Unbounded => write!(f, "{{0, 1, 2, ...}}"),
        }
    }
}

/// The energy formula with no admissibility check.
fn energy_raw(fp: &FamilyParams, k: usize) -> f64 {
    use FamilyId::*;
    let (e, r, kf) = (fp.eps, fp.rho, k as f64);
    let q = r * r / ((kf - e).powi(2) * e * e);
    match fp.id {
        Scarf2 | PoschlTeller | Morse | MorseMirror => (2.0 * e - kf) * kf,
        RadialOsc => 4.0 * r * kf,
        HarmOsc => 2.0 * fp.beta * kf,
        Scarf1 | Scarf1Cot => (kf - 2.0 * e) * kf,
        RosenMorse2 | Eckart => kf * (kf - 2.0 * e) * (q - 1.0),
        Coulomb => kf * (kf - 2.0 * e) * q,
        RosenMorse1 | RosenMorse1Cot => kf * (kf - 2.0 * e) * (q + 1.0),
    }
}

/// Whether state `k` of a generalized hyperbolic or Coulomb family has
/// positive Gamma arguments (and a decaying envelope for Coulomb).
fn generalized_ok(fp: &FamilyParams, k: usize) -> bool {
    let (e, r) = (fp.eps, fp.rho);
    let s = e - k as f64;
    if s == 0.0 {
        return false;
    }
    let (a, b) = (s + r / s, s - r / s);
    let args_ok = match fp.id {
        FamilyId::RosenMorse2 => s > 0.0 && a > 0.0 && b > 0.0,
        FamilyId::Eckart => 1.0 - b > 0.0 && 1.0 - 2.0 * s > 0.0 && a > 0.0,
        FamilyId::Coulomb => {
            return r / (k as f64 - e) < 0.0 && matches!(ln_gamma_signed(-2.0 * s), Ok((_, g)) if -r * g > 0.0)
        }
        _ => true,
    };
    args_ok && (k == 0 || energy_raw(fp, k) > energy_raw(fp, k - 1))
}

pub fn admissible_range(fp: &FamilyParams) -> IndexRange {
    use FamilyId::*;
    match fp.id {
        RadialOsc | HarmOsc | Scarf1 | Scarf1Cot | RosenMorse1 | RosenMorse1Cot => IndexRange::Unbounded,
        Scarf2 | PoschlTeller | Morse | MorseMirror => {
            IndexRange::Finite((0..=MAX_DEGREE).take_while(|&k| (k as f64) < fp.eps).count())
        }
        RosenMorse2 | Eckart | Coulomb => {
            let n = (0..=MAX_DEGREE).take_while(|&k| generalized_ok(fp, k)).count();
            if n > MAX_DEGREE {
                IndexRange::Unbounded
            } else {
                IndexRange::Finite(n)
            }
        }
    }
}

fn check_index(fp: &FamilyParams, k: usize) -> Result<()> {
    if admissible_range(fp).contains(k) {
        Ok(())
    } else {
        Err(Error::InadmissibleIndex { family: fp.id.id().to_string(), k })
    }
}

pub fn eigenenergy(fp: &FamilyParams, k: usize) -> Result<f64> {
    check_index(fp, k)?;
    Ok(energy_raw(fp, k))
}
