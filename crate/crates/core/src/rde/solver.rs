use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;

use super::{ChartModel, CompiledPoly, ElementaryDifferentials};
use crate::algebra::{int, to_f64, Rational};
use crate::forest::{enumerate_forests, PlanarForest};
use crate::roughpath::{fit_slope, Lift, PiecewisePolyPath, PullbackLift, Scalar};
use crate::{Error, Result};

fn check_cap<L: Lift<PlanarForest>>(lift: &L, degree: usize) -> Result<()> {
    if lift.cap() < degree {
        return Err(Error::DegreeCap {
            degree,
            cap: lift.cap(),
        });
    }
    Ok(())
}

/// Every non-empty planar forest over `d` letters with at most `degree` vertices.
pub fn forests_up_to(degree: usize, d: usize) -> Result<Vec<PlanarForest>> {
    let mut out = Vec::new();
    for n in 1..=degree {
        out.extend(enumerate_forests(n, d)?);
    }
    Ok(out)
}

/// One exact Lie–Butcher step: `y_α ↦ Σ_{|σ|≤N} ⟨𝕏_st, σ⟩ (F_σ y_α)(y)`.
pub fn lb_step<L: Lift<PlanarForest, Value = Rational>>(
    diffs: &ElementaryDifferentials,
    lift: &L,
    (s, t): (&Rational, &Rational),
    y: &[Rational],
    degree: usize,
) -> Result<Vec<Rational>> {
    check_cap(lift, degree)?;
    let mut out = y.to_vec();
    for f in forests_up_to(degree, diffs.model().fields())? {
        let coords = diffs.on_coordinates(&f)?;
        if coords.iter().all(|p| p.is_zero()) {
            continue;
        }
        let c = lift.eval(s, t, &f)?;
        if c.is_zero() {
            continue;
        }
        for (o, p) in out.iter_mut().zip(coords.iter()) {
            *o += &c * p.eval(y);
        }
    }
    Ok(out)
}

/// Floating-point Lie–Butcher stepper with the forests and coordinate
/// actions of degree `≤ N` precompiled.
pub struct LbStepper {
    model: Arc<ChartModel>,
    degree: usize,
    terms: Vec<(PlanarForest, Vec<CompiledPoly>)>,
}

impl LbStepper {
    pub fn new(model: Arc<ChartModel>, degree: usize) -> Result<Self> {
        let diffs = ElementaryDifferentials::new(model.clone());
        let mut terms = Vec::new();
        for f in forests_up_to(degree, model.fields())? {
            let coords = diffs.on_coordinates(&f)?;
            if coords.iter().all(|p| p.is_zero()) {
                continue;
            }
            terms.push((f, coords.iter().map(|p| p.compile()).collect()));
        }
        Ok(Self { model, degree, terms })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Forests whose elementary differential moves some coordinate.
    pub fn active_forests(&self) -> impl Iterator<Item = &PlanarForest> {
        self.terms.iter().map(|(f, _)| f)
    }

    pub fn step<L: Lift<PlanarForest>>(&self, lift: &L, s: &Rational, t: &Rational, y: &[f64]) -> Result<Vec<f64>> {
        check_cap(lift, self.degree)?;
        let mut out = y.to_vec();
        for (f, polys) in &self.terms {
            let c = lift.eval(s, t, f)?.to_f64();
            if c == 0.0 {
                continue;
            }
            for (o, p) in out.iter_mut().zip(polys) {
                *o += c * p.eval(y);
            }
        }
        Ok(out)
    }

    pub fn model(&self) -> &Arc<ChartModel> {
        &self.model
    }
}

/// A computed solution on a time grid.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub points: Vec<Vec<f64>>,
    /// `I(y_k) − I(y_0)` for the model invariant `I`; empty without one.
    pub drift: Vec<f64>,
    /// Truncation degree, `None` for the reference integrator.
    pub degree: Option<usize>,
}

impl Trajectory {
    fn new(degree: Option<usize>) -> Self {
        Self {
            times: Vec::new(),
            points: Vec::new(),
            drift: Vec::new(),
            degree,
        }
    }

    fn push(&mut self, invariant: Option<&CompiledPoly>, t: f64, y: Vec<f64>) {
        if let Some(inv) = invariant {
            let base = self.points.first().map_or_else(|| inv.eval(&y), |y0| inv.eval(y0));
            self.drift.push(inv.eval(&y) - base);
        }
        self.times.push(t);
        self.points.push(y);
    }

    pub fn endpoint(&self) -> &[f64] {
        self.points.last().expect("non-empty trajectory")
    }

    /// `max_k |I(y_k) − I(y_0)|`, if the model has an invariant.
    pub fn max_drift(&self) -> Option<f64> {
        (!self.drift.is_empty()).then(|| self.drift.iter().fold(0.0f64, |m, d| m.max(d.abs())))
    }
}

fn check_grid(path: &PiecewisePolyPath, grid: &[Rational]) -> Result<()> {
    if grid.len() < 2 {
        return Err(Error::Invalid("a time grid needs at least two points".into()));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid("the time grid must be strictly increasing".into()));
    }
    path.check_domain(&grid[0])?;
    path.check_domain(grid.last().expect("non-empty"))
}

fn check_dims(model: &ChartModel, path: &PiecewisePolyPath, y0: &[f64]) -> Result<()> {
    if path.dim() != model.fields() {
        return Err(Error::Invalid(format!(
            "the path has {} components but the model has {} fields",
            path.dim(),
            model.fields()
        )));
    }
    if y0.len() != model.chart_dim() {
        return Err(Error::Invalid(format!(
            "the initial point has {} coordinates, expected {}",
            y0.len(),
            model.chart_dim()
        )));
    }
    Ok(())
}

/// Composes truncated Lie–Butcher steps of degree `N` driven by the planar
/// lift of `path` along `grid`.
pub fn solve(
    model: Arc<ChartModel>,
    path: Arc<PiecewisePolyPath>,
    grid: &[Rational],
    degree: usize,
    y0: &[f64],
) -> Result<Trajectory> {
    check_dims(&model, &path, y0)?;
    check_grid(&path, grid)?;
    let lift = PullbackLift::planar(path, degree);
    let stepper = LbStepper::new(model.clone(), degree)?;
    let invariant = model.invariant().map(|p| p.compile());
    let mut tr = Trajectory::new(Some(degree));
    let mut y = y0.to_vec();
    tr.push(invariant.as_ref(), to_f64(&grid[0]), y.clone());
    for w in grid.windows(2) {
        y = stepper.step(&lift, &w[0], &w[1], &y)?;
        tr.push(invariant.as_ref(), to_f64(&w[1]), y.clone());
    }
    Ok(tr)
}

/// `steps + 1` equally spaced rational times on `[start, end]`.
pub fn uniform_grid(start: &Rational, end: &Rational, steps: usize) -> Vec<Rational> {
    (0..=steps)
        .map(|k| start + (end - start) * int(k as i64) / int(steps as i64))
        .collect()
}

const GBS_SEQUENCE: [usize; 4] = [2, 4, 6, 8];

/// Reference solution of `ẏ = Σ_i Ẋ^i(t) #f_i(y)` by Gragg–Bulirsch–Stoer
/// extrapolation of order 8 on `steps` equal macro steps per path piece.
pub fn reference_solve(
    model: &ChartModel,
    path: &PiecewisePolyPath,
    steps_per_piece: usize,
    y0: &[f64],
) -> Result<Trajectory> {
    check_dims(model, path, y0)?;
    let fields = model.compile_fields();
    let invariant = model.invariant().map(|p| p.compile());
    let mut tr = Trajectory::new(None);
    let mut y = y0.to_vec();
    let bps: Vec<f64> = path.breakpoints().iter().map(to_f64).collect();
    tr.push(invariant.as_ref(), bps[0], y.clone());
    for (piece, w) in bps.windows(2).enumerate() {
        let big_h = (w[1] - w[0]) / steps_per_piece as f64;
        let rhs = |t: f64, y: &[f64]| fields.combine(&path.velocity_on(piece, t), y);
        for k in 0..steps_per_piece {
            let t0 = w[0] + k as f64 * big_h;
            y = gbs_step(&rhs, t0, big_h, &y);
            if y.iter().any(|v| !v.is_finite()) {
                return Err(Error::Invalid(format!("reference integrator diverged at t = {t0}")));
            }
            tr.push(invariant.as_ref(), t0 + big_h, y.clone());
        }
    }
    Ok(tr)
}

fn axpy(a: f64, x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(xi, yi)| a * xi + yi).collect()
}

fn gbs_step(rhs: &dyn Fn(f64, &[f64]) -> Vec<f64>, t0: f64, big_h: f64, y: &[f64]) -> Vec<f64> {
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(GBS_SEQUENCE.len());
    for (k, &n) in GBS_SEQUENCE.iter().enumerate() {
        let h = big_h / n as f64;
        let mut prev = y.to_vec();
        let mut cur = axpy(h, &rhs(t0, y), y);
        for m in 1..n {
            let next = axpy(2.0 * h, &rhs(t0 + m as f64 * h, &cur), &prev);
            prev = cur;
            cur = next;
        }
        let end = axpy(h, &rhs(t0 + big_h, &cur), &prev);
        let mut row = vec![cur.iter().zip(&end).map(|(a, b)| 0.5 * (a + b)).collect::<Vec<f64>>()];
        for j in 1..=k {
            let ratio = (n as f64 / GBS_SEQUENCE[k - j] as f64).powi(2) - 1.0;
            let prev_row = &table[j - 1];
            let last = &row[j - 1];
            row.push(last.iter().zip(prev_row).map(|(a, b)| a + (a - b) / ratio).collect());
        }
        table = row;
    }
    table.pop().expect("non-empty table")
}

/// One cell of an order study.
#[derive(Clone, Debug)]
pub struct OrderRow {
    pub degree: usize,
    pub steps: usize,
    pub h: f64,
    pub error: f64,
    /// `max |I(y_k) − I(y_0)|` per unit time, when the model has an invariant.
    pub drift_rate: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct OrderStudy {
    pub rows: Vec<OrderRow>,
    /// Fitted `log error / log h` slope per degree.
    pub slopes: Vec<(usize, f64)>,
    /// Macro steps per path piece of the reference run.
    pub reference_steps: usize,
    pub reference_endpoint: Vec<f64>,
}

/// Endpoint errors of [`solve`] against [`reference_solve`] at a mesh
/// `ratio` times finer than the finest studied step.
pub fn order_study(
    model: Arc<ChartModel>,
    path: Arc<PiecewisePolyPath>,
    y0: &[f64],
    degrees: &[usize],
    steps: &[usize],
    ratio: usize,
) -> Result<OrderStudy> {
    if path.breakpoints().len() != 2 {
        return Err(Error::Invalid("order studies need a single-piece path".into()));
    }
    let finest = *steps.iter().max().ok_or_else(|| Error::Invalid("no step sizes given".into()))?;
    let reference_steps = finest * ratio;
    let reference = reference_solve(&model, &path, reference_steps, y0)?;
    let target = reference.endpoint().to_vec();
    let span = to_f64(&(path.end() - path.start()));
    let cells: Vec<(usize, usize)> = degrees
        .iter()
        .flat_map(|&n| steps.iter().map(move |&k| (n, k)))
        .collect();
    let rows = cells
        .par_iter()
        .map(|&(n, k)| {
            let grid = uniform_grid(path.start(), path.end(), k);
            let tr = solve(model.clone(), path.clone(), &grid, n, y0)?;
            let error = tr
                .endpoint()
                .iter()
                .zip(&target)
                .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
            Ok(OrderRow {
                degree: n,
                steps: k,
                h: span / k as f64,
                error,
                drift_rate: tr.max_drift().map(|d| d / span),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let slopes = degrees
        .iter()
        .filter_map(|&n| {
            let pts: Vec<(f64, f64)> = rows
                .iter()
                .filter(|r| r.degree == n && r.error > 0.0)
                .map(|r| (r.h.log2(), r.error.log2()))
                .collect();
            fit_slope(&pts).map(|s| (n, s))
        })
        .collect();
    Ok(OrderStudy {
        rows,
        slopes,
        reference_steps,
        reference_endpoint: target,
    })
}

/// Defects `|step(s,u)∘step(u,t) − step(s,t)|` with `u` the midpoint of
/// `[s, s + h]`, for a range of `h`.
#[derive(Clone, Debug)]
pub struct CompositionStudy {
    pub degree: usize,
    /// `(h, defect)` pairs.
    pub rows: Vec<(f64, f64)>,
    pub slope: Option<f64>,
    /// `max defect / h^{N+1}` over the rows.
    pub constant: f64,
}

pub fn composition_study(
    model: Arc<ChartModel>,
    path: Arc<PiecewisePolyPath>,
    y0: &[f64],
    degree: usize,
    exponents: &[u32],
) -> Result<CompositionStudy> {
    check_dims(&model, &path, y0)?;
    let lift = PullbackLift::planar(path.clone(), degree);
    let stepper = LbStepper::new(model, degree)?;
    let s = path.start().clone();
    let mut rows = Vec::new();
    for &e in exponents {
        let h = Rational::new(1.into(), num_bigint::BigInt::from(1u64) << e);
        let t = &s + &h;
        path.check_domain(&t)?;
        let u = &s + &h / int(2);
        let whole = stepper.step(&lift, &s, &t, y0)?;
        let half = stepper.step(&lift, &s, &u, y0)?;
        let split = stepper.step(&lift, &u, &t, &half)?;
        let defect = whole.iter().zip(&split).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        rows.push((to_f64(&h), defect));
    }
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.1 > 0.0)
        .map(|(h, d)| (h.log2(), d.log2()))
        .collect();
    let constant = rows
        .iter()
        .fold(0.0f64, |m, (h, d)| m.max(d / h.powi(degree as i32 + 1)));
    Ok(CompositionStudy {
        degree,
        rows,
        slope: fit_slope(&pts),
        constant,
    })
}
