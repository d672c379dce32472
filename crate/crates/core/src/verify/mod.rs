//! Independent numerical checks: grid residuals, quadrature, and a
//! finite-difference eigensolver.

mod eigen;
mod grid;
mod quad;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{partner_potentials, remainder, superpotential, translate_family, Domain, FamilyId, FamilyParams};
use crate::spectra::{wavefunction, EigenState};

pub use eigen::{fd_spectrum, tridiagonal_lowest, OracleSpec};
pub use grid::{Grid, GridReport};
pub use quad::{quadrature, tail_extent, TAIL_CUT};

/// Absolute tolerance used for norms and overlaps.
pub const QUAD_TOL: f64 = 1e-10;

/// Half-width of the default residual grid on infinite domains.
pub const SI_WINDOW: f64 = 8.0;

/// Right end of the default residual grid on `(0, ∞)`.
pub const SI_HALF_LINE: f64 = 20.0;

/// `|Ṽ(x; fp) − V(x; fp↓) − R(fp↓)| / (1 + |V(x; fp↓)|)` over the grid.
pub fn si_residual(fp: &FamilyParams, grid: &Grid) -> Result<GridReport> {
    let down = translate_family(fp, 1)?;
    let r = remainder(&down);
    GridReport::scan(grid, |x| {
        let (_, vt) = partner_potentials(fp, x)?;
        let (v, _) = partner_potentials(&down, x)?;
        Ok((vt - v - r) / (1.0 + v.abs()))
    })
}

/// The δ-clipped domain with infinite ends cut at [`SI_WINDOW`] (or
/// [`SI_HALF_LINE`] on the half line).
pub fn default_grid(domain: Domain, n: usize) -> Result<Grid> {
    let (lo, hi) = domain.clipped();
    let hi_cut = if lo.is_finite() { SI_HALF_LINE } else { SI_WINDOW };
    Grid::new(lo.max(-SI_WINDOW), hi.min(hi_cut), n)
}

/// `[a, b]` where the ground state of `fp` exceeds `1e−12` of its peak,
/// never narrower than `|x| = 8` (25 on the slow side of the Morse pair).
/// Finite ends are the domain endpoints themselves: they are Dirichlet
/// nodes, so `V` is never sampled there.
pub fn oracle_window(fp: &FamilyParams) -> (f64, f64) {
    let d = fp.domain();
    let (lo, hi) = (d.lo, d.hi);
    let ground = wavefunction(fp, 0).ok();
    let extent = |c: f64, dir: f64| match &ground {
        Some(z) => tail_extent(&mut |x| z.eval(x), c, dir, 1e-12),
        None => 0.0,
    };
    let (min_lo, min_hi) = match fp.id {
        FamilyId::Morse => (-8.0, 25.0),
        FamilyId::MorseMirror => (-25.0, 8.0),
        _ => (-8.0, 8.0),
    };
    let c = if lo.is_finite() { lo } else if hi.is_finite() { hi } else { 0.0 };
    let a = if lo.is_finite() { lo } else { (c - extent(c, -1.0)).min(min_lo) };
    let b = if hi.is_finite() { hi } else { (c + extent(c, 1.0)).max(min_hi) };
    (a, b)
}

/// Oracle grid on [`oracle_window`] with `n` points.
pub fn family_oracle(fp: &FamilyParams, n: usize) -> Result<OracleSpec> {
    let (a, b) = oracle_window(fp);
    OracleSpec::new(a, b, n)
}

/// The `m` lowest finite-difference eigenvalues of `V(x; fp)`.
pub fn fd_spectrum_family(fp: &FamilyParams, oracle: &OracleSpec, m: usize) -> Result<Vec<f64>> {
    fd_spectrum(|x| Ok(fp.potential(x)), oracle, m)
}

const H_INTERIOR: f64 = 1e-3;
const H_LOG: f64 = 0.05;

fn stencil(f: &dyn Fn(f64) -> Result<f64>, f0: f64, h: f64) -> Result<(f64, f64)> {
    let (fm2, fm1, fp1, fp2) = (f(-2.0 * h)?, f(-h)?, f(h)?, f(2.0 * h)?);
    let d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
    let d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
    Ok((d1, d2))
}

/// `(f, f', f'')` by 5-point central differences. Within a quarter width
/// of a finite end the stencil runs in `u = ln|x − end|`, at steps `H`, `2H`
/// and `4H` combined by Richardson extrapolation, which resolves power-law
/// behaviour at singular endpoints.
pub fn derivatives(f: &dyn Fn(f64) -> Result<f64>, x: f64, domain: Domain) -> Result<(f64, f64, f64)> {
    let width = if domain.is_infinite() { 1.0 } else { domain.hi - domain.lo };
    let (dl, dr) = (x - domain.lo, domain.hi - x);
    let d = dl.min(dr);
    let f0 = f(x)?;
    if d < 0.25 * width {
        let (end, dir) = if dl <= dr { (domain.lo, 1.0) } else { (domain.hi, -1.0) };
        let u = d.ln();
        let g = |s: f64| f(end + dir * (u + s).exp());
        let (a1, a2) = stencil(&g, f0, H_LOG)?;
        let (b1, b2) = stencil(&g, f0, 2.0 * H_LOG)?;
        let (c1, c2) = stencil(&g, f0, 4.0 * H_LOG)?;
        let rich = |a: f64, b: f64, c: f64| {
            let (ab, bc) = ((16.0 * a - b) / 15.0, (16.0 * b - c) / 15.0);
            (64.0 * ab - bc) / 63.0
        };
        let (g1, g2) = (rich(a1, b1, c1), rich(a2, b2, c2));
        return Ok((f0, dir * g1 / d, (g2 - g1) / (d * d)));
    }
    let h = H_INTERIOR * width.min(1.0);
    let (f1, f2) = stencil(&|s| f(x + s), f0, h)?;
    Ok((f0, f1, f2))
}

/// Grid over the part of the δ-clipped domain where `|ζ|` exceeds `1e−12`
/// of its peak.
pub fn state_grid(state: &EigenState, n: usize) -> Result<Grid> {
    let d = state.family.domain();
    let (lo, hi) = d.clipped();
    let mut f = |x: f64| state.eval(x);
    let c = if lo.is_finite() { lo } else if hi.is_finite() { hi } else { 0.0 };
    let a = if lo.is_finite() { lo } else { c - tail_extent(&mut f, c, -1.0, 1e-12).max(1.0) };
    let b = if hi.is_finite() { hi } else { c + tail_extent(&mut f, c, 1.0, 1e-12).max(1.0) };
    Grid::new(a, b, n)
}

fn max_abs(grid: &Grid, f: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    let mut m = 0.0f64;
    for x in grid.points() {
        match f(x) {
            Ok(v) => m = m.max(v.abs()),
            Err(Error::DomainViolation { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    if m == 0.0 {
        return Err(Error::InvalidInput("function vanishes on the whole grid".into()));
    }
    Ok(m)
}

/// `|−ζ'' + (V − E)ζ| / max|ζ|` over the grid.
pub fn schrodinger_residual(state: &EigenState, grid: &Grid) -> Result<GridReport> {
    let fp = &state.family;
    let f = |x: f64| state.eval(x);
    let top = max_abs(grid, f)?;
    GridReport::scan(grid, |x| {
        let (z, _, z2) = derivatives(&f, x, fp.domain())?;
        let (v, _) = partner_potentials(fp, x)?;
        Ok((-z2 + (v - state.energy) * z) / top)
    })
}

/// Sign changes of `ζ` over the grid, ignoring values below `1e−8` of
/// the largest.
pub fn node_count(state: &EigenState, grid: &Grid) -> Result<usize> {
    let top = max_abs(grid, |x| state.eval(x))?;
    let mut last = 0.0f64;
    let mut nodes = 0;
    for x in grid.points() {
        let v = match state.eval(x) {
            Ok(v) => v,
            Err(Error::DomainViolation { .. }) => continue,
            Err(e) => return Err(e),
        };
        if v.abs() <= 1e-8 * top {
            continue;
        }
        if last != 0.0 && v.signum() != last.signum() {
            nodes += 1;
        }
        last = v;
    }
    Ok(nodes)
}

/// `max |Im ζ| / scale` over the grid.
pub fn imaginary_residue(state: &EigenState, grid: &Grid) -> Result<GridReport> {
    GridReport::scan(grid, |x| state.imaginary_residue(x))
}

/// `∫ ζ_i ζ_j dx` over the full domain.
pub fn overlap(a: &EigenState, b: &EigenState) -> Result<f64> {
    let d = a.family.domain();
    quadrature(|x| Ok(a.eval(x)? * b.eval(x)?), d.lo, d.hi, QUAD_TOL)
}

pub fn norm_squared(state: &EigenState) -> Result<f64> {
    overlap(state, state)
}

/// Gram matrix `∫ ζ_i ζ_j` of the given states.
pub fn gram_matrix(states: &[EigenState]) -> Result<Vec<Vec<f64>>> {
    let n = states.len();
    let mut g = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = overlap(&states[i], &states[j])?;
            g[i][j] = v;
            g[j][i] = v;
        }
    }
    Ok(g)
}

/// Largest entrywise deviation of a Gram matrix from the identity.
pub fn gram_deviation(g: &[Vec<f64>]) -> f64 {
    let mut m = 0.0f64;
    for (i, row) in g.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            m = m.max((v - if i == j { 1.0 } else { 0.0 }).abs());
        }
    }
    m
}

/// Outcome of [`ladder_check`]: the residual and the global sign `s` in
/// `A⁺ζ_{k−1}(fp↓) ≈ s √E_k ζ_k(fp)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LadderReport {
    pub report: GridReport,
    pub sign: f64,
}

/// `|A⁺ζ_{k−1}(x; fp↓) − s √E_k ζ_k(x; fp)| / (√E_k max|ζ_k|)` with
/// `A⁺ = −d/dx + k(x; fp)`.
pub fn ladder_check(fp: &FamilyParams, k: usize, grid: &Grid) -> Result<LadderReport> {
    if k == 0 {
        return Err(Error::InadmissibleIndex { family: fp.id.id().to_string(), k });
    }
    let upper = wavefunction(fp, k)?;
    let lower = wavefunction(&translate_family(fp, 1)?, k - 1)?;
    let root = upper.energy.sqrt();
    let d = fp.domain();
    let psi = |x: f64| lower.eval(x);
    let raised = |x: f64| -> Result<f64> {
        let (p, dp, _) = derivatives(&psi, x, d)?;
        let (w, _) = superpotential(fp, x)?;
        Ok(-dp + w * p)
    };
    let (mut top, mut at) = (0.0f64, f64::NAN);
    for x in grid.points() {
        match upper.eval(x) {
            Ok(v) if v.abs() > top => (top, at) = (v.abs(), x),
            Ok(_) | Err(Error::DomainViolation { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    if top == 0.0 {
        return Err(Error::InvalidInput("state vanishes on the whole grid".into()));
    }
    let sign = if raised(at)? * upper.eval(at)? >= 0.0 { 1.0 } else { -1.0 };
    let report = GridReport::scan(grid, |x| Ok((raised(x)? - sign * root * upper.eval(x)?) / (root * top)))?;
    Ok(LadderReport { report, sign })
}

#[cfg(test)]
mod tests;
