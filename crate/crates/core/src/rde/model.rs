use num_traits::One;

use super::{CompiledPoly, Poly};
use crate::algebra::Rational;
use crate::{Error, Result};

/// Highest polynomial degree accepted in model data.
pub const MAX_MODEL_DEGREE: u32 = 16;

/// A homogeneous space in a chart: generator fields `#E_β = Σ ε^α_β ∂_α`
/// and coefficient maps `f_i = Σ_β f̃_i^β E_β`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartModel {
    pub name: String,
    n: usize,
    lie_dim: usize,
    d: usize,
    /// `epsilon[β][α] = ε^α_β`.
    epsilon: Vec<Vec<Poly>>,
    /// `f[i][β] = f̃_i^β`.
    f: Vec<Vec<Poly>>,
    invariant: Option<Poly>,
}

fn check_poly(p: &Poly, n: usize, what: &str) -> Result<()> {
    if p.nvars() != n {
        return Err(Error::Invalid(format!("{what} has {} variables, expected {n}", p.nvars())));
    }
    if p.degree().is_some_and(|k| k > MAX_MODEL_DEGREE) {
        return Err(Error::Invalid(format!("{what} exceeds degree {MAX_MODEL_DEGREE}")));
    }
    Ok(())
}

impl ChartModel {
    pub fn new(
        name: impl Into<String>,
        epsilon: Vec<Vec<Poly>>,
        f: Vec<Vec<Poly>>,
        invariant: Option<Poly>,
    ) -> Result<Self> {
        let lie_dim = epsilon.len();
        let d = f.len();
        if lie_dim == 0 || d == 0 {
            return Err(Error::Invalid("a model needs at least one generator and one field".into()));
        }
        let n = epsilon[0].len();
        if n == 0 {
            return Err(Error::Invalid("the chart dimension must be positive".into()));
        }
        for (b, row) in epsilon.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Invalid(format!("generator {b} has {} components, expected {n}", row.len())));
            }
            for p in row {
                check_poly(p, n, "a generator component")?;
            }
        }
        for (i, row) in f.iter().enumerate() {
            if row.len() != lie_dim {
                return Err(Error::Invalid(format!(
                    "field {i} has {} coefficients, expected {lie_dim}",
                    row.len()
                )));
            }
            for p in row {
                check_poly(p, n, "a field coefficient")?;
            }
        }
        if let Some(p) = &invariant {
            check_poly(p, n, "the invariant")?;
        }
        Ok(Self {
            name: name.into(),
            n,
            lie_dim,
            d,
            epsilon,
            f,
            invariant,
        })
    }

    /// `ℝⁿ` acting on itself by translations: `#E_β = ∂_β`, so the
    /// fields are `f_i = Σ_β f̃_i^β ∂_β`.
    pub fn translation(f: Vec<Vec<Poly>>) -> Result<Self> {
        let n = f
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::Invalid("at least one field is required".into()))?;
        let epsilon = (0..n)
            .map(|b| {
                (0..n)
                    .map(|a| if a == b { Poly::one(n) } else { Poly::zero(n) })
                    .collect()
            })
            .collect();
        Self::new("translation", epsilon, f, None)
    }

    /// `ẏ = y` on the line, driven by one path.
    pub fn exponential() -> Self {
        Self::translation(vec![vec![Poly::var(1, 0)]]).expect("valid model")
    }

    /// `SO(3)` acting on the sphere, `#E_β(y) = e_β × y`, with invariant
    /// `|y|² − 1`.
    pub fn sphere(f: Vec<Vec<Poly>>) -> Result<Self> {
        let y = |a: usize| Poly::var(3, a);
        let z = Poly::zero(3);
        let neg = |p: Poly| p.scale(&-Rational::one());
        let epsilon = vec![
            vec![z.clone(), neg(y(2)), y(1)],
            vec![y(2), z.clone(), neg(y(0))],
            vec![neg(y(1)), y(0), z],
        ];
        let invariant = (0..3)
            .map(|a| y(a).mul(&y(a)))
            .fold(Poly::constant(3, -Rational::one()), |acc, p| acc.add(&p));
        Self::new("sphere", epsilon, f, Some(invariant))
    }

    /// Sphere model with constant fields `f_i = e_{β_i}`.
    pub fn sphere_constant(generators: &[usize]) -> Result<Self> {
        let f = generators
            .iter()
            .map(|&b| {
                if b >= 3 {
                    return Err(Error::Invalid(format!("generator {b} out of range for so(3)")));
                }
                Ok((0..3)
                    .map(|k| if k == b { Poly::one(3) } else { Poly::zero(3) })
                    .collect())
            })
            .collect::<Result<_>>()?;
        Self::sphere(f)
    }

    /// Chart dimension `n`.
    pub fn chart_dim(&self) -> usize {
        self.n
    }

    /// Lie algebra dimension `N`.
    pub fn lie_dim(&self) -> usize {
        self.lie_dim
    }

    /// Number of driving components `d`.
    pub fn fields(&self) -> usize {
        self.d
    }

    pub fn epsilon(&self) -> &[Vec<Poly>] {
        &self.epsilon
    }

    pub fn coefficients(&self) -> &[Vec<Poly>] {
        &self.f
    }

    pub fn invariant(&self) -> Option<&Poly> {
        self.invariant.as_ref()
    }

    /// `#E_β ψ = Σ_α ε^α_β ∂_α ψ`.
    pub fn apply_generator(&self, beta: usize, psi: &Poly) -> Poly {
        self.epsilon[beta]
            .iter()
            .enumerate()
            .fold(Poly::zero(self.n), |acc, (a, e)| acc.add(&e.mul(&psi.derivative(a))))
    }

    /// `#E_{β_1} ∘ ⋯ ∘ #E_{β_k} ψ`, the rightmost generator acting first.
    pub fn apply_word(&self, word: &[usize], psi: &Poly) -> Poly {
        word.iter()
            .rev()
            .fold(psi.clone(), |acc, &b| self.apply_generator(b, &acc))
    }

    /// Floating-point vector fields `y ↦ #f_i(y)` for the reference solver.
    pub fn compile_fields(&self) -> CompiledFields {
        let fields = self
            .f
            .iter()
            .map(|row| {
                (0..self.n)
                    .map(|a| {
                        row.iter()
                            .zip(&self.epsilon)
                            .fold(Poly::zero(self.n), |acc, (c, e)| acc.add(&c.mul(&e[a])))
                            .compile()
                    })
                    .collect()
            })
            .collect();
        CompiledFields { fields }
    }
}

/// `fields[i][α]` is component `α` of `#f_i`.
#[derive(Clone, Debug)]
pub struct CompiledFields {
    fields: Vec<Vec<CompiledPoly>>,
}

impl CompiledFields {
    /// `Σ_i w_i #f_i(y)`.
    pub fn combine(&self, weights: &[f64], y: &[f64]) -> Vec<f64> {
        let n = y.len();
        let mut out = vec![0.0; n];
        for (w, field) in weights.iter().zip(&self.fields) {
            if *w == 0.0 {
                continue;
            }
            for (o, p) in out.iter_mut().zip(field) {
                *o += w * p.eval(y);
            }
        }
        out
    }
}
