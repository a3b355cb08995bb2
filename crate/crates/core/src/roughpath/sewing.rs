use num_traits::{ToPrimitive, Zero};

use crate::algebra::{int, to_f64, Rational};
use crate::{Error, Result};

/// Deepest supported dyadic refinement.
pub const MAX_DEPTH: u32 = 24;

/// Uniform grid of `2^depth + 1` points on `[start, end]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicGrid {
    start: Rational,
    end: Rational,
    depth: u32,
}

impl DyadicGrid {
    pub fn new(start: Rational, end: Rational, depth: u32) -> Result<Self> {
        if start >= end {
            return Err(Error::Invalid(format!("empty interval [{start}, {end}]")));
        }
        if depth > MAX_DEPTH {
            return Err(Error::Invalid(format!("depth {depth} exceeds {MAX_DEPTH}")));
        }
        Ok(Self { start, end, depth })
    }

    pub fn start(&self) -> &Rational {
        &self.start
    }

    pub fn end(&self) -> &Rational {
        &self.end
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn cells(&self) -> usize {
        1 << self.depth
    }

    pub fn len(&self) -> usize {
        self.cells() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn mesh(&self) -> Rational {
        (&self.end - &self.start) / int(self.cells() as i64)
    }

    pub fn point(&self, i: usize) -> Rational {
        &self.start + (&self.end - &self.start) * int(i as i64) / int(self.cells() as i64)
    }

    pub fn points(&self) -> Vec<Rational> {
        (0..self.len()).map(|i| self.point(i)).collect()
    }

    /// Grid index of `t`, if `t` is a grid point.
    pub fn index(&self, t: &Rational) -> Option<usize> {
        let x = (t - &self.start) / (&self.end - &self.start) * int(self.cells() as i64);
        if !x.is_integer() || x < Rational::zero() || x > int(self.cells() as i64) {
            return None;
        }
        x.to_integer().to_usize()
    }

    /// The same interval at depth `depth`, which must not exceed this one's.
    pub fn coarsen(&self, depth: u32) -> Self {
        assert!(depth <= self.depth);
        Self {
            start: self.start.clone(),
            end: self.end.clone(),
            depth,
        }
    }
}

/// Vector-valued function of two grid indices.
pub type TwoParamFunction<'a> = dyn Fn(usize, usize) -> Result<Vec<f64>> + Sync + 'a;

/// Diagnostics of a sewing run.
#[derive(Clone, Debug)]
pub struct SewingReport {
    pub epsilon: f64,
    pub depth: u32,
    /// `sup |Φ(s,t) − μ(s,t)|` over the dyadic cells of every level.
    pub max_defect: f64,
    /// Fitted `C` in `|δμ_{sut}| ≤ C|t − s|^{1+ε}` on dyadic midpoints.
    pub c_hat: f64,
    /// `C' = C(1 − 2^{−ε})^{−1}`.
    pub c_prime: f64,
    /// `max |Φ − μ| / (C'|t − s|^{1+ε})`; at most 1 when the budget holds.
    pub budget_ratio: f64,
    /// `(n, ‖μ_n(S,T) − μ_{n−1}(S,T)‖)` for `n = 1..=depth`.
    pub differences: Vec<(u32, f64)>,
    /// Least-squares slope of `log₂` of the differences over `n ≥ 4`;
    /// `None` when fewer than two differences are nonzero.
    pub slope: Option<f64>,
}

impl SewingReport {
    pub fn within_budget(&self) -> bool {
        self.budget_ratio <= 1.0 + 1e-9
    }
}

/// Result of [`sew`]: `φ` on every grid point, anchored at `φ(start) = 0`.
#[derive(Clone, Debug)]
pub struct Sewing {
    pub phi: Vec<Vec<f64>>,
    pub report: SewingReport,
}

impl Sewing {
    /// `Φ(s,t) = φ(t) − φ(s)` between grid indices.
    pub fn increment(&self, i: usize, j: usize) -> Vec<f64> {
        self.phi[j].iter().zip(&self.phi[i]).map(|(a, b)| a - b).collect()
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

fn diff(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Least-squares slope of `y` against `x`.
pub fn fit_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Sews `μ` on `grid`: `φ` is the running sum of `μ` over the finest cells,
/// so `Φ(s,t) = φ(t) − φ(s)` is `μ_D(s,t)`. Every dyadic level is visited
/// once to measure the defect, the constant of `δμ` and the convergence of
/// `μ_n(S,T)`.
pub fn sew(grid: &DyadicGrid, epsilon: f64, mu: &TwoParamFunction<'_>) -> Result<Sewing> {
    let depth = grid.depth();
    let cells = grid.cells();
    let span = to_f64(&(grid.end() - grid.start()));

    let mut levels: Vec<Vec<Vec<f64>>> = Vec::with_capacity(depth as usize + 1);
    for n in 0..=depth {
        let step = cells >> n;
        let level = (0..1usize << n)
            .map(|k| mu(k * step, (k + 1) * step))
            .collect::<Result<Vec<_>>>()?;
        levels.push(level);
    }
    let k = levels[0][0].len();

    let finest = &levels[depth as usize];
    let mut phi = Vec::with_capacity(cells + 1);
    let mut acc = vec![0.0; k];
    phi.push(acc.clone());
    for v in finest {
        for (a, x) in acc.iter_mut().zip(v) {
            *a += x;
        }
        phi.push(acc.clone());
    }

    let mut c_hat = 0.0f64;
    for n in 0..depth as usize {
        let len = span / (1u64 << n) as f64;
        for (i, whole) in levels[n].iter().enumerate() {
            let d = diff(&diff(whole, &levels[n + 1][2 * i]), &levels[n + 1][2 * i + 1]);
            c_hat = c_hat.max(norm(&d) / len.powf(1.0 + epsilon));
        }
    }
    let c_prime = if epsilon > 0.0 {
        c_hat / (1.0 - (-epsilon).exp2())
    } else {
        f64::INFINITY
    };

    let mut max_defect = 0.0f64;
    let mut budget_ratio = 0.0f64;
    for (n, level) in levels.iter().enumerate() {
        let step = cells >> n;
        let len = span / (1u64 << n) as f64;
        for (i, m) in level.iter().enumerate() {
            let big_phi = diff(&phi[(i + 1) * step], &phi[i * step]);
            let defect = norm(&diff(&big_phi, m));
            max_defect = max_defect.max(defect);
            if defect > 1e-12 * (1.0 + norm(m)) {
                budget_ratio = budget_ratio.max(defect / (c_prime * len.powf(1.0 + epsilon)));
            }
        }
    }

    let totals: Vec<Vec<f64>> = levels
        .iter()
        .map(|level| {
            let mut s = vec![0.0; k];
            for v in level {
                for (a, x) in s.iter_mut().zip(v) {
                    *a += x;
                }
            }
            s
        })
        .collect();
    let differences: Vec<(u32, f64)> = (1..=depth)
        .map(|n| (n, norm(&diff(&totals[n as usize], &totals[n as usize - 1]))))
        .collect();
    let scale = totals.iter().map(|v| norm(v)).fold(0.0, f64::max).max(1.0);
    let fit: Vec<(f64, f64)> = differences
        .iter()
        .filter(|(n, d)| *n >= 4 && *d > 1e-14 * scale)
        .map(|(n, d)| (*n as f64, d.log2()))
        .collect();

    Ok(Sewing {
        phi,
        report: SewingReport {
            epsilon,
            depth,
            max_defect,
            c_hat,
            c_prime,
            budget_ratio,
            differences,
            slope: fit_slope(&fit),
        },
    })
}

/// Sewing on closed-form `μ` given on rational times.
pub fn sew_fn(
    grid: &DyadicGrid,
    epsilon: f64,
    mu: impl Fn(&Rational, &Rational) -> Vec<f64> + Sync,
) -> Result<Sewing> {
    let pts = grid.points();
    sew(grid, epsilon, &|i, j| Ok(mu(&pts[i], &pts[j])))
}
