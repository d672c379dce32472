//! Adaptive composite Gauss-Legendre quadrature.

use crate::error::{Error, Result};

const NODES: [f64; 5] = [
    0.148_874_338_981_631_2,
    0.433_395_394_129_247_2,
    0.679_409_568_299_024_4,
    0.865_063_366_688_984_5,
    0.973_906_528_517_171_7,
];
const WEIGHTS: [f64; 5] = [
    0.295_524_224_714_752_9,
    0.269_266_719_309_996_4,
    0.219_086_362_515_982_0,
    0.149_451_349_150_580_6,
    0.066_671_344_308_688_1,
];

const MAX_DEPTH: u32 = 30;

/// Relative magnitude below which an infinite tail is dropped.
pub const TAIL_CUT: f64 = 1e-16;

fn gl10(f: &mut dyn FnMut(f64) -> Result<f64>, a: f64, b: f64) -> Result<f64> {
    let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
    let mut s = 0.0;
    for (x, w) in NODES.iter().zip(WEIGHTS) {
        s += w * (f(c - h * x)? + f(c + h * x)?);
    }
    Ok(s * h)
}

fn adaptive(f: &mut dyn FnMut(f64) -> Result<f64>, a: f64, b: f64, tol: f64) -> Result<f64> {
    struct Piece {
        a: f64,
        b: f64,
        value: f64,
        err: f64,
        depth: u32,
    }
    let split = |f: &mut dyn FnMut(f64) -> Result<f64>, a: f64, b: f64, whole: f64, depth: u32| -> Result<[Piece; 2]> {
        let m = 0.5 * (a + b);
        let (l, r) = (gl10(f, a, m)?, gl10(f, m, b)?);
        let err = 0.5 * (l + r - whole).abs();
        Ok([Piece { a, b: m, value: l, err, depth }, Piece { a: m, b, value: r, err, depth }])
    };
    let whole = gl10(f, a, b)?;
    let mut pieces: Vec<Piece> = split(f, a, b, whole, 1)?.into();
    loop {
        let total: f64 = pieces.iter().map(|p| p.value).sum();
        let err: f64 = pieces.iter().map(|p| p.err).sum();
        if err <= tol.max(1e-15 * total.abs()) {
            return Ok(total);
        }
        let worst = (0..pieces.len()).max_by(|&i, &j| pieces[i].err.total_cmp(&pieces[j].err)).unwrap();
        let p = pieces.swap_remove(worst);
        if p.depth >= MAX_DEPTH {
            return Err(Error::NonConvergence(format!(
                "error estimate {err:e} above {tol:e} with [{}, {}] at depth {MAX_DEPTH}",
                p.a, p.b
            )));
        }
        pieces.extend(split(f, p.a, p.b, p.value, p.depth + 1)?);
    }
}

fn next_up(x: f64) -> f64 {
    if x == 0.0 {
        return f64::from_bits(1);
    }
    f64::from_bits(if x > 0.0 { x.to_bits() + 1 } else { x.to_bits() - 1 })
}

fn next_down(x: f64) -> f64 {
    -next_up(-x)
}

/// `∫_a^b f` for finite `a < b`, through `x = a + (b − a) s(t)` with the
/// degree-7 smoothstep `s`, which flattens integrable endpoint singularities.
fn finite(f: &mut dyn FnMut(f64) -> Result<f64>, a: f64, b: f64, tol: f64) -> Result<f64> {
    let w = b - a;
    let mut g = |t: f64| -> Result<f64> {
        let t4 = t * t * t * t;
        let s = t4 * (35.0 + t * (-84.0 + t * (70.0 - 20.0 * t)));
        let ds = 140.0 * t * t * t * (1.0 - t).powi(3);
        if ds == 0.0 {
            return Ok(0.0);
        }
        let x = (a + w * s).clamp(next_up(a), next_down(b));
        Ok(f(x)? * w * ds)
    };
    adaptive(&mut g, 0.0, 1.0, tol)
}

/// Distance from `c` (in direction `dir`) beyond which `|f|` stays below
/// `cut` times its sampled peak.
pub fn tail_extent(f: &mut dyn FnMut(f64) -> Result<f64>, c: f64, dir: f64, cut: f64) -> f64 {
    let mut samples = Vec::new();
    let mut s = 0.0;
    while s <= 4096.0 {
        let v = f(c + dir * s).map(f64::abs).unwrap_or(0.0);
        samples.push((s, if v.is_finite() { v } else { 0.0 }));
        s = if s < 16.0 { s + 0.125 } else { s * 1.03 };
    }
    let peak = samples.iter().map(|p| p.1).fold(0.0, f64::max);
    let last = samples.iter().rposition(|p| p.1 >= cut * peak).unwrap_or(0);
    samples.get(last + 1).map_or(4096.0, |p| p.0)
}

/// `∫_lo^hi f(x) dx` with infinite ends truncated where `|f|` falls below
/// [`TAIL_CUT`] of its peak.
pub fn quadrature(mut f: impl FnMut(f64) -> Result<f64>, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    if !(lo < hi) || lo.is_nan() || hi.is_nan() {
        return Err(Error::InvalidInput(format!("bad integration interval [{lo}, {hi}]")));
    }
    let f: &mut dyn FnMut(f64) -> Result<f64> = &mut f;
    let (a, b) = match (lo.is_finite(), hi.is_finite()) {
        (true, true) => (lo, hi),
        (true, false) => {
            let c = next_up(lo);
            (lo, c + tail_extent(f, c, 1.0, TAIL_CUT))
        }
        (false, true) => {
            let c = next_down(hi);
            (c - tail_extent(f, c, -1.0, TAIL_CUT), hi)
        }
        (false, false) => (-tail_extent(f, 0.0, -1.0, TAIL_CUT), tail_extent(f, 0.0, 1.0, TAIL_CUT)),
    };
    finite(f, a, b, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gaussian_integral() {
        let v = quadrature(|x| Ok((-x * x).exp()), f64::NEG_INFINITY, f64::INFINITY, 1e-12).unwrap();
        assert!((v - PI.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn polynomial_exact() {
        let v = quadrature(|x| Ok(x.powi(5) - 3.0 * x * x), -1.0, 2.0, 1e-13).unwrap();
        assert!((v - (63.0 / 6.0 - 9.0)).abs() < 1e-12);
    }

    #[test]
    fn endpoint_singularity() {
        // ∫_0^1 x^{-0.6} dx = 2.5
        let v = quadrature(|x| Ok(x.powf(-0.6)), 0.0, 1.0, 1e-12).unwrap();
        assert!((v - 2.5).abs() < 1e-9, "{v}");
    }

    #[test]
    fn odd_function_on_symmetric_domain() {
        let v = quadrature(|x| Ok(x.sin() * (-x * x).exp()), f64::NEG_INFINITY, f64::INFINITY, 1e-12).unwrap();
        assert!(v.abs() <= 1e-12);
    }

    #[test]
    fn semi_infinite_exponential() {
        let v = quadrature(|x| Ok((-2.0 * x).exp()), 0.0, f64::INFINITY, 1e-12).unwrap();
        assert!((v - 0.5).abs() < 1e-10);
    }
}
