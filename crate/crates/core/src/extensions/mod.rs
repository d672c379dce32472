//! Rational extensions `W = W_0 + W_{1+} − W_{1-}` of eleven classical
//! superpotentials, with the gauge function `f` fixed to zero.

mod cases;

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use cases::{w0, w1, D};

use crate::error::{Error, Result};
use crate::families::{ConstructionData, Coupling, Domain};
use crate::invariants::ParamVector;
use crate::specfun::Dual;
use crate::verify::{Grid, GridReport};

/// Largest accepted degree `ℓ`.
pub const MAX_ELL: usize = 8;

/// Half-width used in place of an infinite domain end.
pub const WINDOW: f64 = 8.0;

const SCAN_POINTS: usize = 4001;

/// One of the eleven cases, numbered 1 to 11.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "String")]
pub struct ExtensionCase(u8);

impl ExtensionCase {
    pub fn new(n: u8) -> Result<Self> {
        if (1..=11).contains(&n) {
            Ok(Self(n))
        } else {
            Err(Error::InvalidInput(format!("extension case must be 1..=11, got {n}")))
        }
    }

    pub fn all() -> impl Iterator<Item = ExtensionCase> {
        (1..=11).map(ExtensionCase)
    }

    pub fn number(self) -> u8 {
        self.0
    }

    pub fn id(self) -> String {
        format!("ext-{}", self.0)
    }

    pub fn label(self) -> &'static str {
        match self.0 {
            1 => "Poschl-Teller type, rational in cosh",
            2 => "Poschl-Teller type, Jacobi ratio in cosh x",
            3 => "Poschl-Teller type at 2x, Jacobi ratio in cosh 2x",
            4 => "radial oscillator type, rational in x^2",
            5 => "radial oscillator type, Laguerre ratio",
            6 => "radial oscillator type (rho = -1), Laguerre ratio",
            7 => "radial oscillator type (rho = -1), 1F1 ratio",
            8 => "Scarf I type, rational in sin",
            9 => "Scarf I type at 2x, Jacobi ratio in cos 2x",
            10 => "Scarf I type at 2x, 2F1 ratio in sin^2 x",
            _ => "Scarf II type with imaginary coupling, complex Jacobi ratio",
        }
    }

    pub fn uses_ell(self) -> bool {
        !matches!(self.0, 1 | 4 | 8)
    }

    pub fn uses_rho(self) -> bool {
        !matches!(self.0, 6 | 7)
    }

    pub fn is_complex(self) -> bool {
        self.0 == 11
    }

    pub fn domain(self) -> Domain {
        match self.0 {
            1..=7 => Domain::new(0.0, f64::INFINITY),
            8 => Domain::new(-FRAC_PI_2, FRAC_PI_2),
            9 | 10 => Domain::new(0.0, FRAC_PI_2),
            _ => Domain::new(f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// The domain clipped by `δ`, with infinite ends cut at [`WINDOW`].
    pub fn default_window(self) -> (f64, f64) {
        let (lo, hi) = self.domain().clipped();
        (lo.max(-WINDOW), hi.min(WINDOW))
    }

    /// `(ε, ρ)` folded from the construction data.
    fn fold(self, data: &ConstructionData) -> Result<(f64, f64)> {
        let (m, b, d) = data.fold()?;
        Ok(match self.0 {
            1 | 2 | 3 | 11 => (m + b, d),
            4 | 5 => (m + d, 0.5 * b),
            6 | 7 => (m + d, 0.0),
            _ => (m - b, d),
        })
    }

    /// `R(ε − 1)` of the base superpotential `W_0` after rescaling.
    pub fn remainder_below(self, eps: f64, rho: f64, ell: usize) -> f64 {
        let l = ell as f64;
        match self.0 {
            1 | 2 | 11 => 2.0 * eps - 1.0,
            3 => 4.0 * (2.0 * l + 2.0 * eps - 1.0),
            4 | 5 => 4.0 * rho,
            6 | 7 => -4.0,
            8 => 1.0 - 2.0 * eps,
            9 => -4.0 * (2.0 * eps + 2.0 * l - 1.0),
            _ => -4.0 * (2.0 * eps - 1.0),
        }
    }
}

impl From<ExtensionCase> for String {
    fn from(c: ExtensionCase) -> String {
        c.id()
    }
}

impl fmt::Display for ExtensionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ext-{}", self.0)
    }
}

impl FromStr for ExtensionCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let n = s
            .strip_prefix("ext-")
            .and_then(|n| n.parse::<u8>().ok())
            .ok_or_else(|| Error::InvalidInput(format!("unknown extension case `{s}` (expected ext-1 .. ext-11)")))?;
        Self::new(n)
    }
}

/// `(W_0, W_{1+}, W_{1-})` and their derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Components {
    pub w0: (Complex64, Complex64),
    pub w1_plus: (Complex64, Complex64),
    pub w1_minus: (Complex64, Complex64),
}

impl Components {
    pub fn w(&self) -> (Complex64, Complex64) {
        (
            self.w0.0 + self.w1_plus.0 - self.w1_minus.0,
            self.w0.1 + self.w1_plus.1 - self.w1_minus.1,
        )
    }

    /// `W_{1+}² + W_{1+}' + W_{1-}² + W_{1-}' + 2W_0W_{1+} − 2W_0W_{1-} − 2W_{1+}W_{1-}`.
    pub fn cond1(&self) -> Complex64 {
        let (w0, (p, dp), (m, dm)) = (self.w0.0, self.w1_plus, self.w1_minus);
        p * p + dp + m * m + dm + 2.0 * w0 * p - 2.0 * w0 * m - 2.0 * p * m
    }
}

fn pair(d: D) -> (Complex64, Complex64) {
    (d.v, d.d)
}

/// Evaluates every component at `x` for explicit `(ε, ρ, ℓ)`, without
/// validation. A vanishing denominator is reported as an error.
pub fn components(case: ExtensionCase, x: f64, eps: f64, rho: f64, ell: usize) -> Result<Components> {
    let xd = Dual::variable(Complex64::new(x, 0.0));
    let n = case.number();
    let p = w1(n, true, xd, eps, rho, ell)?;
    let m = w1(n, false, xd, eps, rho, ell)?;
    for (den, which) in [(p.den, "W1+"), (m.den, "W1-")] {
        if den == Complex64::new(0.0, 0.0) {
            return Err(Error::DenominatorZero { context: format!("{case} {which} denominator"), x });
        }
    }
    let out = Components { w0: pair(w0(n, xd, eps, rho, ell)), w1_plus: pair(p.value), w1_minus: pair(m.value) };
    let finite = [out.w0, out.w1_plus, out.w1_minus].iter().all(|(v, d)| v.is_finite() && d.is_finite());
    if !finite {
        return Err(Error::NonFinite(format!("{case} at x = {x}")));
    }
    Ok(out)
}

/// Validated parameters of one extension.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtensionSpec {
    pub case: ExtensionCase,
    pub eps: f64,
    pub rho: f64,
    /// Zero for the cases without a degree.
    pub ell: usize,
    /// Interval scanned for denominator zeros.
    pub window: (f64, f64),
    pub provenance: ConstructionData,
}

pub fn build_extension(case: ExtensionCase, data: &ConstructionData, ell: Option<usize>) -> Result<ExtensionSpec> {
    build_extension_in(case, data, ell, case.default_window())
}

/// As [`build_extension`], scanning `window` for denominator zeros.
pub fn build_extension_in(
    case: ExtensionCase,
    data: &ConstructionData,
    ell: Option<usize>,
    window: (f64, f64),
) -> Result<ExtensionSpec> {
    data.validate()?;
    if data.rho_invariant.is_some() {
        return Err(Error::InvalidInput(format!("{case} takes no separate rho invariant")));
    }
    let ell = match (case.uses_ell(), ell) {
        (true, Some(l)) if (1..=MAX_ELL).contains(&l) => l,
        (true, Some(l)) => return Err(Error::InvalidInput(format!("ell must be in 1..={MAX_ELL}, got {l}"))),
        (true, None) => return Err(Error::InvalidInput(format!("{case} requires a degree ell"))),
        (false, Some(_)) => return Err(Error::InvalidInput(format!("{case} takes no degree ell"))),
        (false, None) => 0,
    };
    let (eps, rho) = case.fold(data)?;
    if !(eps.is_finite() && rho.is_finite()) {
        return Err(Error::NonFinite(format!("{case} parameters")));
    }
    let d = case.domain();
    let (lo, hi) = window;
    if !(lo < hi && d.contains(lo) && d.contains(hi)) {
        return Err(Error::InvalidInput(format!("window [{lo}, {hi}] must lie inside the domain of {case}")));
    }
    let spec = ExtensionSpec { case, eps, rho, ell, window, provenance: data.clone() };
    // cond2 and the shape-invariance check also evaluate at ε − 1
    spec.scan_denominators(eps)?;
    spec.scan_denominators(eps - 1.0)?;
    Ok(spec)
}

impl ExtensionSpec {
    /// Builds from effective parameters with a single constant coupling.
    pub fn from_effective(case: ExtensionCase, eps: f64, rho: f64, ell: Option<usize>) -> Result<Self> {
        if !case.uses_rho() && rho != 0.0 {
            return Err(Error::InvalidInput(format!("{case} has no rho parameter")));
        }
        let p = ParamVector::new(vec![eps])?;
        let coupling = match case.number() {
            1 | 2 | 3 | 11 | 8 | 9 | 10 => Coupling::constant(0.0, rho, 1)?,
            4 | 5 => Coupling::constant(2.0 * rho, 0.0, 1)?,
            _ => Coupling::constant(0.0, 0.0, 1)?,
        };
        build_extension(case, &ConstructionData::new(p, vec![coupling], None)?, ell)
    }

    pub fn default_grid(&self, n: usize) -> Result<Grid> {
        Grid::new(self.window.0, self.window.1, n)
    }

    fn denominators(&self, x: f64, eps: f64) -> Result<[Complex64; 2]> {
        let xd = Dual::variable(Complex64::new(x, 0.0));
        let n = self.case.number();
        Ok([
            w1(n, true, xd, eps, self.rho, self.ell)?.den,
            w1(n, false, xd, eps, self.rho, self.ell)?.den,
        ])
    }

    /// Looks for sign changes (real cases) or near-vanishing modulus
    /// (complex case) of each denominator across the window and reports the
    /// first root found.
    fn scan_denominators(&self, eps: f64) -> Result<()> {
        let (lo, hi) = self.window;
        let h = (hi - lo) / (SCAN_POINTS - 1) as f64;
        let xs: Vec<f64> = (0..SCAN_POINTS).map(|i| lo + h * i as f64).collect();
        let vals = xs.iter().map(|&x| self.denominators(x, eps)).collect::<Result<Vec<_>>>()?;
        for which in 0..2 {
            let name = if which == 0 { "W1+" } else { "W1-" };
            let report = |x: f64| Error::DenominatorZero { context: format!("{} {name} denominator at eps = {eps}", self.case), x };
            if self.case.is_complex() {
                let mags: Vec<f64> = vals.iter().map(|v| v[which].norm()).collect();
                let top = mags.iter().cloned().fold(0.0, f64::max);
                if let Some(i) = mags.iter().position(|&m| m <= 1e-8 * top) {
                    return Err(report(xs[i]));
                }
                continue;
            }
            for i in 0..SCAN_POINTS {
                let v = vals[i][which].re;
                if v == 0.0 {
                    return Err(report(xs[i]));
                }
                if i + 1 < SCAN_POINTS && v.signum() != vals[i + 1][which].re.signum() {
                    let root = self.bisect(xs[i], xs[i + 1], eps, which)?;
                    return Err(report(root));
                }
            }
        }
        Ok(())
    }

    fn bisect(&self, mut a: f64, mut b: f64, eps: f64, which: usize) -> Result<f64> {
        let fa = self.denominators(a, eps)?[which].re;
        for _ in 0..100 {
            let m = 0.5 * (a + b);
            let fm = self.denominators(m, eps)?[which].re;
            if fm == 0.0 || (b - a) < 1e-15 * (1.0 + m.abs()) {
                return Ok(m);
            }
            if fm.signum() == fa.signum() {
                a = m;
            } else {
                b = m;
            }
        }
        Ok(0.5 * (a + b))
    }

    fn check_x(&self, x: f64) -> Result<()> {
        if x.is_finite() && self.case.domain().contains_clipped(x) {
            Ok(())
        } else {
            Err(Error::DomainViolation { family: self.case.id(), x })
        }
    }

    /// Components at `x` with `ε` shifted down by `t`.
    pub fn components_at(&self, x: f64, t: u32) -> Result<Components> {
        self.check_x(x)?;
        components(self.case, x, self.eps - t as f64, self.rho, self.ell)
    }
}

/// `W = W_0 + W_{1+} − W_{1-}` with its derivative.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtendedSuperpotential {
    pub spec: ExtensionSpec,
}

impl ExtendedSuperpotential {
    pub fn new(spec: ExtensionSpec) -> Self {
        Self { spec }
    }

    pub fn eval(&self, x: f64) -> Result<(Complex64, Complex64)> {
        Ok(self.spec.components_at(x, 0)?.w())
    }

    /// `(V_W, Ṽ_W) = (W² − W', W² + W')`.
    pub fn partner_potentials(&self, x: f64) -> Result<(Complex64, Complex64)> {
        partners(&self.spec, x, 0)
    }

    /// `V_W(x)`, rejecting a non-real value.
    pub fn potential(&self, x: f64) -> Result<f64> {
        let (v, _) = self.partner_potentials(x)?;
        if v.im.abs() > 1e-9 * (1.0 + v.re.abs()) {
            return Err(Error::ImaginaryResidue { x, residue: v.im.abs(), limit: 1e-9 });
        }
        Ok(v.re)
    }
}

fn partners(spec: &ExtensionSpec, x: f64, t: u32) -> Result<(Complex64, Complex64)> {
    let (w, dw) = spec.components_at(x, t)?.w();
    Ok((w * w - dw, w * w + dw))
}

/// `|W_{1-}(x; ε) − W_{1+}(x; ε − 1)| / (1 + |W_{1+}(x; ε − 1)|)`.
pub fn check_cond2(spec: &ExtensionSpec, grid: &Grid) -> Result<GridReport> {
    GridReport::scan(grid, |x| {
        let here = spec.components_at(x, 0)?;
        let below = spec.components_at(x, 1)?;
        Ok((here.w1_minus.0 - below.w1_plus.0).norm() / (1.0 + below.w1_plus.0.norm()))
    })
}

/// The largest of `|L(x; ε)|/(1 + |W_0|²)`, the same at `ε − 1`, and
/// `|L(x; ε) − L(x; ε − 1)|`.
pub fn check_cond1(spec: &ExtensionSpec, grid: &Grid) -> Result<GridReport> {
    GridReport::scan(grid, |x| {
        let here = spec.components_at(x, 0)?;
        let below = spec.components_at(x, 1)?;
        let (lh, lb) = (here.cond1(), below.cond1());
        let rh = lh.norm() / (1.0 + here.w0.0.norm_sqr());
        let rb = lb.norm() / (1.0 + below.w0.0.norm_sqr());
        Ok(rh.max(rb).max((lh - lb).norm()))
    })
}

/// `|Ṽ_W(x; ε) − V_W(x; ε − 1) − R(ε − 1)| / (1 + |V_W(x; ε − 1)|)`.
pub fn extended_si_check(spec: &ExtensionSpec, grid: &Grid) -> Result<GridReport> {
    let r = spec.case.remainder_below(spec.eps, spec.rho, spec.ell);
    GridReport::scan(grid, |x| {
        let (_, vt) = partners(spec, x, 0)?;
        let (v, _) = partners(spec, x, 1)?;
        Ok((vt - v - r).norm() / (1.0 + v.norm()))
    })
}

/// `|U(−x) + conj U(x)| / (1 + |U(x)|)` with `U = W_{1+} − W_{1-}`, for
/// the complex case.
pub fn check_symmetry(spec: &ExtensionSpec, grid: &Grid) -> Result<GridReport> {
    if !spec.case.is_complex() {
        return Err(Error::InvalidInput(format!("{} is real; the symmetry check applies to ext-11", spec.case)));
    }
    GridReport::scan(grid, |x| {
        let u = |y: f64| -> Result<Complex64> {
            let c = spec.components_at(y, 0)?;
            Ok(c.w1_plus.0 - c.w1_minus.0)
        };
        let (a, b) = (u(x)?, u(-x)?);
        Ok((b + a.conj()).norm() / (1.0 + a.norm()))
    })
}
