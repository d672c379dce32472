//! The thirteen closed-form superpotential families.
//!
//! Eight families have the form `k = M G(x) + Σ_j I_j v_j(x)` with
//! `G' + G² = α` and `v_j' + v_j G = β_j`; the other five have the form
//! `k = ρ/ε + ε G(x)` with a second invariant `ρ`.

mod classic;

use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

pub use classic::{classic_reconstruction, classic_reconstruction_with, Classic};

use crate::error::{Error, Result};
use crate::invariants::{InvariantExpr, ParamVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "&'static str")]
pub enum FamilyId {
    Scarf2,
    PoschlTeller,
    Morse,
    MorseMirror,
    RadialOsc,
    HarmOsc,
    Scarf1,
    Scarf1Cot,
    RosenMorse2,
    Eckart,
    Coulomb,
    RosenMorse1,
    RosenMorse1Cot,
}

impl FamilyId {
    pub const ALL: [FamilyId; 13] = [
        FamilyId::Scarf2,
        FamilyId::PoschlTeller,
        FamilyId::Morse,
        FamilyId::MorseMirror,
        FamilyId::RadialOsc,
        FamilyId::HarmOsc,
        FamilyId::Scarf1,
        FamilyId::Scarf1Cot,
        FamilyId::RosenMorse2,
        FamilyId::Eckart,
        FamilyId::Coulomb,
        FamilyId::RosenMorse1,
        FamilyId::RosenMorse1Cot,
    ];

    pub fn id(self) -> &'static str {
        match self {
            FamilyId::Scarf2 => "scarf2",
            FamilyId::PoschlTeller => "poschl-teller",
            FamilyId::Morse => "morse",
            FamilyId::MorseMirror => "morse-mirror",
            FamilyId::RadialOsc => "radial-osc",
            FamilyId::HarmOsc => "harm-osc",
            FamilyId::Scarf1 => "scarf1",
            FamilyId::Scarf1Cot => "scarf1-cot",
            FamilyId::RosenMorse2 => "rosen-morse2",
            FamilyId::Eckart => "eckart",
            FamilyId::Coulomb => "coulomb",
            FamilyId::RosenMorse1 => "rosen-morse1",
            FamilyId::RosenMorse1Cot => "rosen-morse1-cot",
        }
    }

    /// Human-readable case label.
    pub fn label(self) -> &'static str {
        match self {
            FamilyId::Scarf2 => "Scarf II type",
            FamilyId::PoschlTeller => "Poschl-Teller type",
            FamilyId::Morse => "Morse type",
            FamilyId::MorseMirror => "Morse type, mirrored",
            FamilyId::RadialOsc => "radial oscillator type",
            FamilyId::HarmOsc => "harmonic oscillator type",
            FamilyId::Scarf1 => "Scarf I type",
            FamilyId::Scarf1Cot => "Scarf I type, cotangent form",
            FamilyId::RosenMorse2 => "Rosen-Morse II type",
            FamilyId::Eckart => "Eckart type",
            FamilyId::Coulomb => "Coulomb type",
            FamilyId::RosenMorse1 => "Rosen-Morse I type",
            FamilyId::RosenMorse1Cot => "Rosen-Morse I type, cotangent form",
        }
    }

    /// `k = ρ/ε + ε G(x)` with a separate ρ invariant.
    pub fn is_generalized(self) -> bool {
        matches!(
            self,
            FamilyId::RosenMorse2
                | FamilyId::Eckart
                | FamilyId::Coulomb
                | FamilyId::RosenMorse1
                | FamilyId::RosenMorse1Cot
        )
    }

    /// The constant `α = G' + G²`.
    pub fn alpha(self) -> f64 {
        use FamilyId::*;
        match self {
            Scarf2 | PoschlTeller | Morse | MorseMirror | RosenMorse2 | Eckart => 1.0,
            RadialOsc | HarmOsc | Coulomb => 0.0,
            Scarf1 | Scarf1Cot | RosenMorse1 | RosenMorse1Cot => -1.0,
        }
    }

    pub fn domain(self) -> Domain {
        use FamilyId::*;
        match self {
            Scarf2 | Morse | MorseMirror | HarmOsc | RosenMorse2 => Domain::new(f64::NEG_INFINITY, f64::INFINITY),
            PoschlTeller | RadialOsc | Eckart | Coulomb => Domain::new(0.0, f64::INFINITY),
            Scarf1 | RosenMorse1 => Domain::new(-FRAC_PI_2, FRAC_PI_2),
            Scarf1Cot | RosenMorse1Cot => Domain::new(0.0, PI),
        }
    }

    /// `(G, G')` at `x`.
    pub fn g_function(self, x: f64) -> (f64, f64) {
        use FamilyId::*;
        match self {
            Scarf2 | RosenMorse2 => (x.tanh(), sech(x).powi(2)),
            PoschlTeller | Eckart => (coth(x), -csch(x).powi(2)),
            Morse => (1.0, 0.0),
            MorseMirror => (-1.0, 0.0),
            RadialOsc | Coulomb => (1.0 / x, -1.0 / (x * x)),
            HarmOsc => (0.0, 0.0),
            Scarf1 | RosenMorse1 => (-x.tan(), -sec(x).powi(2)),
            Scarf1Cot | RosenMorse1Cot => (cot(x), -csc(x).powi(2)),
        }
    }

    /// `(v_j, v_j')` for coupling constants `β_j, d_j`; `None` for the
    /// generalized families, which have no such term.
    pub fn v_function(self, beta: f64, d: f64, x: f64) -> Option<(f64, f64)> {
        use FamilyId::*;
        Some(match self {
            Scarf2 => (beta * x.tanh() + d * sech(x), beta * sech(x).powi(2) - d * sech(x) * x.tanh()),
            PoschlTeller => (beta * coth(x) - d * csch(x), -beta * csch(x).powi(2) + d * csch(x) * coth(x)),
            Morse => (beta - d * (-x).exp(), d * (-x).exp()),
            MorseMirror => (-beta - d * x.exp(), -d * x.exp()),
            RadialOsc => (0.5 * beta * x + d / x, 0.5 * beta - d / (x * x)),
            HarmOsc => (beta * x + d, beta),
            Scarf1 => (beta * x.tan() - d * sec(x), beta * sec(x).powi(2) - d * sec(x) * x.tan()),
            Scarf1Cot => (-beta * cot(x) + d * csc(x), beta * csc(x).powi(2) - d * csc(x) * cot(x)),
            RosenMorse2 | Eckart | Coulomb | RosenMorse1 | RosenMorse1Cot => return None,
        })
    }
}

impl From<FamilyId> for &'static str {
    fn from(f: FamilyId) -> Self {
        f.id()
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for FamilyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FamilyId::ALL
            .into_iter()
            .find(|f| f.id() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown family `{s}`")))
    }
}

pub(crate) fn sech(x: f64) -> f64 {
    1.0 / x.cosh()
}
pub(crate) fn csch(x: f64) -> f64 {
    1.0 / x.sinh()
}
pub(crate) fn coth(x: f64) -> f64 {
    1.0 / x.tanh()
}
pub(crate) fn sec(x: f64) -> f64 {
    1.0 / x.cos()
}
pub(crate) fn csc(x: f64) -> f64 {
    1.0 / x.sin()
}
pub(crate) fn cot(x: f64) -> f64 {
    x.cos() / x.sin()
}

/// An open interval with a safety margin `δ` kept away from finite
/// (singular) endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Domain {
    pub lo: f64,
    pub hi: f64,
    pub delta: f64,
}

impl Domain {
    pub fn new(lo: f64, hi: f64) -> Self {
        let width = hi - lo;
        let delta = if width.is_finite() { 1e-3 * width } else { 1e-3 };
        Self { lo, hi, delta }
    }

    pub fn is_infinite(&self) -> bool {
        !(self.lo.is_finite() && self.hi.is_finite())
    }

    pub fn contains(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }

    /// The domain with `δ` removed at each finite endpoint.
    pub fn clipped(&self) -> (f64, f64) {
        let lo = if self.lo.is_finite() { self.lo + self.delta } else { self.lo };
        let hi = if self.hi.is_finite() { self.hi - self.delta } else { self.hi };
        (lo, hi)
    }

    pub fn contains_clipped(&self, x: f64) -> bool {
        let (lo, hi) = self.clipped();
        x.is_finite() && x >= lo && x <= hi
    }
}

/// One coupling `(I_j, β_j, d_j)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Coupling {
    pub invariant: InvariantExpr,
    pub beta: f64,
    pub d: f64,
}

impl Coupling {
    pub fn new(invariant: InvariantExpr, beta: f64, d: f64) -> Self {
        Self { invariant, beta, d }
    }

    /// `I = 1` with the given constants.
    pub fn constant(beta: f64, d: f64, n: usize) -> Result<Self> {
        Ok(Self { invariant: InvariantExpr::verified("1", n)?, beta, d })
    }
}

/// The user-level description of a superpotential: parameters, couplings and
/// (for the generalized families) the ρ invariant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstructionData {
    pub p: ParamVector,
    pub couplings: Vec<Coupling>,
    pub rho_invariant: Option<InvariantExpr>,
}

impl ConstructionData {
    pub fn new(p: ParamVector, couplings: Vec<Coupling>, rho_invariant: Option<InvariantExpr>) -> Result<Self> {
        let d = Self { p, couplings, rho_invariant };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        if self.couplings.is_empty() {
            return Err(Error::InvalidInput("at least one coupling (I_j, beta_j, d_j) is required".into()));
        }
        let n = self.p.len();
        for c in &self.couplings {
            if !(c.beta.is_finite() && c.d.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "coupling constants for `{}` must be finite",
                    c.invariant.source()
                )));
            }
            if !c.invariant.is_verified_for(n) {
                return Err(Error::UnverifiedInvariant(c.invariant.source().to_string()));
            }
        }
        if let Some(r) = &self.rho_invariant {
            if !r.is_verified_for(n) {
                return Err(Error::UnverifiedInvariant(r.source().to_string()));
            }
        }
        Ok(())
    }

    pub fn translate(&self, t: i64) -> Self {
        Self { p: self.p.translate(t), couplings: self.couplings.clone(), rho_invariant: self.rho_invariant.clone() }
    }

    /// `(M, Σ β_j I_j, Σ d_j I_j)`.
    pub fn fold(&self) -> Result<(f64, f64, f64)> {
        let mut bsum = 0.0;
        let mut dsum = 0.0;
        for c in &self.couplings {
            let i = c.invariant.eval(&self.p)?;
            bsum += c.beta * i;
            dsum += c.d * i;
        }
        Ok((self.p.mean(), bsum, dsum))
    }
}

/// Effective parameters of one family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyParams {
    pub id: FamilyId,
    pub eps: f64,
    pub rho: f64,
    /// `Σ β_j I_j`; the oscillator frequency for the harmonic oscillator.
    pub beta: f64,
    pub mean: f64,
    pub alpha: f64,
    pub provenance: ConstructionData,
}

fn violation(id: FamilyId, condition: impl Into<String>) -> Error {
    Error::RangeViolation { family: id.id().to_string(), condition: condition.into() }
}

pub fn build_family(id: FamilyId, data: &ConstructionData) -> Result<FamilyParams> {
    use FamilyId::*;
    data.validate()?;
    match (id.is_generalized(), &data.rho_invariant) {
        (true, None) => {
            return Err(Error::InvalidInput(format!("{id} requires a rho invariant")));
        }
        (false, Some(_)) => {
            return Err(Error::InvalidInput(format!("{id} takes no rho invariant")));
        }
        _ => {}
    }
    let (m, bsum, dsum) = data.fold()?;
    let (eps, rho) = match id {
        Scarf2 | PoschlTeller | Morse | MorseMirror => (m + bsum, dsum),
        RadialOsc => (m + dsum, 0.5 * bsum),
        HarmOsc => (m, dsum),
        Scarf1 | Scarf1Cot => (m - bsum, dsum),
        RosenMorse2 | Eckart | Coulomb | RosenMorse1 | RosenMorse1Cot => {
            let r = data.rho_invariant.as_ref().expect("checked above").eval(&data.p)?;
            (m + dsum, r)
        }
    };
    let fp = FamilyParams { id, eps, rho, beta: bsum, mean: m, alpha: id.alpha(), provenance: data.clone() };
    fp.validate_range()?;
    Ok(fp)
}

impl FamilyParams {
    /// Build from effective parameters `(ε, ρ)` through the canonical
    /// one-parameter construction `m = (ε)` with the constant invariant `1`.
    pub fn from_effective(id: FamilyId, eps: f64, rho: f64) -> Result<Self> {
        use FamilyId::*;
        if !(eps.is_finite() && rho.is_finite()) {
            return Err(Error::InvalidInput("effective parameters must be finite".into()));
        }
        let p = ParamVector::new(vec![eps])?;
        let data = match id {
            HarmOsc => {
                return Err(Error::InvalidInput("harm-osc is parameterised by (beta, rho); use harm_osc".into()))
            }
            Scarf2 | PoschlTeller | Morse | MorseMirror | Scarf1 | Scarf1Cot => {
                ConstructionData::new(p, vec![Coupling::constant(0.0, rho, 1)?], None)?
            }
            RadialOsc => ConstructionData::new(p, vec![Coupling::constant(2.0 * rho, 0.0, 1)?], None)?,
            RosenMorse2 | Eckart | Coulomb | RosenMorse1 | RosenMorse1Cot => {
                let r = InvariantExpr::verified(&format!("{rho:?}"), 1)?;
                ConstructionData::new(p, vec![Coupling::constant(0.0, 0.0, 1)?], Some(r))?
            }
        };
        build_family(id, &data)
    }

    pub fn harm_osc(beta: f64, rho: f64) -> Result<Self> {
        let p = ParamVector::new(vec![0.0])?;
        let data = ConstructionData::new(p, vec![Coupling::constant(beta, rho, 1)?], None)?;
        build_family(FamilyId::HarmOsc, &data)
    }

    pub fn domain(&self) -> Domain {
        self.id.domain()
    }

    fn validate_range(&self) -> Result<()> {
        use FamilyId::*;
        let (e, r, id) = (self.eps, self.rho, self.id);
        let check = |ok: bool, cond: &str| if ok { Ok(()) } else { Err(violation(id, cond)) };
        if !(e.is_finite() && r.is_finite() && self.beta.is_finite()) {
            return Err(violation(id, "parameters finite"));
        }
        match id {
            Scarf2 => check(e > 0.0, "eps > 0"),
            PoschlTeller => {
                check(e - r < 0.5, "eps - rho < 1/2")?;
                check(e > 0.0, "eps > 0")
            }
            Morse => {
                check(e > 0.0, "eps > 0")?;
                check(r > 0.0, "rho > 0")
            }
            MorseMirror => {
                check(e > 0.0, "eps > 0")?;
                check(r < 0.0, "rho < 0")
            }
            RadialOsc => {
                check(e < 0.5, "eps < 1/2")?;
                check(r > 0.0, "rho > 0")
            }
            HarmOsc => check(self.beta > 0.0, "beta > 0"),
            Scarf1 | Scarf1Cot => {
                check(e < 0.5, "eps < 1/2")?;
                check((2.0 * e - 1.0) / 2.0 < r && r < (1.0 - 2.0 * e) / 2.0, "(2 eps - 1)/2 < rho < (1 - 2 eps)/2")
            }
            RosenMorse2 => {
                check(e != 0.0, "eps != 0")?;
                check(e > r / e, "eps > rho/eps")?;
                check(e + r / e > 0.0, "eps + rho/eps > 0")
            }
            Eckart => {
                check(e != 0.0, "eps != 0")?;
                check(e < 0.5, "eps < 1/2")?;
                check(e + r / e > 0.0, "eps + rho/eps > 0")
            }
            Coulomb => {
                check(e != 0.0, "eps != 0")?;
                check(e < 0.5, "eps < 1/2")?;
                check(r / e > 0.0, "rho/eps > 0")
            }
            RosenMorse1 | RosenMorse1Cot => {
                check(e != 0.0, "eps != 0")?;
                check(e < 0.5, "eps < 1/2")
            }
        }
    }

    fn check_x(&self, x: f64) -> Result<()> {
        if self.domain().contains_clipped(x) {
            Ok(())
        } else {
            Err(Error::DomainViolation { family: self.id.id().to_string(), x })
        }
    }

    /// `(k, k')` without the domain check.
    pub fn k_raw(&self, x: f64) -> (f64, f64) {
        use FamilyId::*;
        let (e, r, b) = (self.eps, self.rho, self.beta);
        match self.id {
            Scarf2 => (e * x.tanh() + r * sech(x), e * sech(x).powi(2) - r * sech(x) * x.tanh()),
            PoschlTeller => (e * coth(x) - r * csch(x), -e * csch(x).powi(2) + r * csch(x) * coth(x)),
            Morse => (e - r * (-x).exp(), r * (-x).exp()),
            MorseMirror => (-e - r * x.exp(), -r * x.exp()),
            RadialOsc => (e / x + r * x, -e / (x * x) + r),
            HarmOsc => (b * x + r, b),
            Scarf1 => (-e * x.tan() - r * sec(x), -e * sec(x).powi(2) - r * sec(x) * x.tan()),
            Scarf1Cot => (e * cot(x) + r * csc(x), -e * csc(x).powi(2) - r * csc(x) * cot(x)),
            RosenMorse2 => (e * x.tanh() + r / e, e * sech(x).powi(2)),
            Eckart => (e * coth(x) + r / e, -e * csch(x).powi(2)),
            Coulomb => (e / x + r / e, -e / (x * x)),
            RosenMorse1 => (-e * x.tan() + r / e, -e * sec(x).powi(2)),
            RosenMorse1Cot => (e * cot(x) + r / e, -e * csc(x).powi(2)),
        }
    }

    /// `V = k² − k'` and `Ṽ = k² + k'` without the domain check.
    pub fn partner_raw(&self, x: f64) -> (f64, f64) {
        let (k, dk) = self.k_raw(x);
        (k * k - dk, k * k + dk)
    }

    pub fn potential(&self, x: f64) -> f64 {
        self.partner_raw(x).0
    }
}

pub fn superpotential(fp: &FamilyParams, x: f64) -> Result<(f64, f64)> {
    fp.check_x(x)?;
    Ok(fp.k_raw(x))
}

pub fn partner_potentials(fp: &FamilyParams, x: f64) -> Result<(f64, f64)> {
    fp.check_x(x)?;
    Ok(fp.partner_raw(x))
}

/// The constant `R` of the shape-invariance relation, evaluated at `fp`.
pub fn remainder(fp: &FamilyParams) -> f64 {
    use FamilyId::*;
    let (e, r) = (fp.eps, fp.rho);
    let tail = (2.0 * e + 1.0) * r * r / (e * e * (e + 1.0) * (e + 1.0));
    match fp.id {
        Scarf2 | PoschlTeller | Morse | MorseMirror => 2.0 * e + 1.0,
        RadialOsc => 4.0 * r,
        HarmOsc => 2.0 * fp.beta,
        Scarf1 | Scarf1Cot => -2.0 * e - 1.0,
        RosenMorse2 | Eckart => 1.0 + 2.0 * e - tail,
        Coulomb => -tail,
        RosenMorse1 | RosenMorse1Cot => -1.0 - 2.0 * e - tail,
    }
}

/// `(2M + 1) α + 2 Σ β_j I_j`, defined for the eight `M G + Σ I_j v_j` families.
pub fn remainder_from_couplings(fp: &FamilyParams) -> Option<f64> {
    (!fp.id.is_generalized()).then(|| (2.0 * fp.mean + 1.0) * fp.alpha + 2.0 * fp.beta)
}

/// Rebuild from the translated parameters `m_i − t`.
pub fn translate_family(fp: &FamilyParams, t: i64) -> Result<FamilyParams> {
    build_family(fp.id, &fp.provenance.translate(t))
}
