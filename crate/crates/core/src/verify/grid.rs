use serde::Serialize;

use crate::error::{Error, Result};

/// `n` equally spaced points on `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub a: f64,
    pub b: f64,
    #[serde(rename = "N")]
    pub n: usize,
}

impl Grid {
    pub fn new(a: f64, b: f64, n: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidInput(format!("grid bounds must be finite with a < b, got [{a}, {b}]")));
        }
        if n < 2 {
            return Err(Error::InvalidInput(format!("grid needs at least 2 points, got {n}")));
        }
        Ok(Self { a, b, n })
    }

    pub fn step(&self) -> f64 {
        (self.b - self.a) / (self.n - 1) as f64
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let h = self.step();
        (0..self.n).map(move |i| if i + 1 == self.n { self.b } else { self.a + h * i as f64 })
    }
}

/// Summary of a pointwise residual over a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridReport {
    pub max_residual: f64,
    pub mean_residual: f64,
    pub argmax_x: f64,
    pub points_used: usize,
    pub points_excluded: usize,
    pub grid: Grid,
}

impl GridReport {
    /// Evaluates `f` at every grid point. Points outside the domain are
    /// excluded; any other failure aborts the scan.
    pub fn scan(grid: &Grid, mut f: impl FnMut(f64) -> Result<f64>) -> Result<Self> {
        let (mut max, mut sum, mut arg) = (0.0f64, 0.0, f64::NAN);
        let (mut used, mut excluded) = (0, 0);
        for x in grid.points() {
            match f(x) {
                Ok(r) => {
                    if !r.is_finite() {
                        return Err(Error::NonFinite(format!("residual at x = {x}")));
                    }
                    let r = r.abs();
                    if used == 0 || r > max {
                        max = r;
                        arg = x;
                    }
                    sum += r;
                    used += 1;
                }
                Err(Error::DomainViolation { .. }) => excluded += 1,
                Err(e) => return Err(e),
            }
        }
        if used == 0 {
            return Err(Error::InvalidInput(format!("no point of [{}, {}] lies in the domain", grid.a, grid.b)));
        }
        Ok(Self {
            max_residual: max,
            mean_residual: sum / used as f64,
            argmax_x: arg,
            points_used: used,
            points_excluded: excluded,
            grid: *grid,
        })
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_residual <= tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_points_hit_both_ends() {
        let g = Grid::new(-1.0, 1.0, 5).unwrap();
        assert_eq!(g.points().collect::<Vec<_>>(), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert!(Grid::new(1.0, 1.0, 5).is_err());
        assert!(Grid::new(0.0, 1.0, 1).is_err());
    }

    #[test]
    fn report_counts_and_excludes() {
        let g = Grid::new(-2.0, 2.0, 5).unwrap();
        let r = GridReport::scan(&g, |x| {
            if x < 0.0 {
                Err(Error::DomainViolation { family: "t".into(), x })
            } else {
                Ok(-x)
            }
        })
        .unwrap();
        assert_eq!((r.points_used, r.points_excluded), (3, 2));
        assert_eq!((r.max_residual, r.argmax_x), (2.0, 2.0));
        assert_eq!(r.mean_residual, 1.0);
        assert!(r.max_residual >= r.mean_residual);
        assert!(GridReport::scan(&g, |_| Err(Error::NonFinite("x".into()))).is_err());
    }
}
