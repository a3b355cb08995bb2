use std::collections::btree_map::{BTreeMap, Entry};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::{ChartModel, Poly};
use crate::algebra::{Rational, Series};
use crate::forest::{PlanarForest, PlanarTree};
use crate::{Error, Result};

/// Finite sum `Σ φ_w(y) E_{w_1}⋯E_{w_k}` of generator words with polynomial
/// coefficients. Words are kept free, without reordering.
#[derive(Clone, PartialEq, Eq)]
pub struct OperatorSeries {
    nvars: usize,
    terms: BTreeMap<Vec<usize>, Poly>,
}

impl OperatorSeries {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// The identity operator (empty word, coefficient 1).
    pub fn identity(nvars: usize) -> Self {
        let mut s = Self::zero(nvars);
        s.add_term(Vec::new(), Poly::one(nvars));
        s
    }

    pub fn add_term(&mut self, word: Vec<usize>, coeff: Poly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(&coeff);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &OperatorSeries) -> OperatorSeries {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> OperatorSeries {
        let mut out = Self::zero(self.nvars);
        for (w, p) in &self.terms {
            out.add_term(w.clone(), p.scale(c));
        }
        out
    }

    /// Concatenation product: coefficients multiply, words concatenate.
    pub fn concat(&self, other: &OperatorSeries) -> OperatorSeries {
        let mut out = Self::zero(self.nvars);
        for (u, p) in &self.terms {
            for (v, q) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, p.mul(q));
            }
        }
        out
    }

    /// `Σ φ_w · (#E_{w_1}∘⋯∘#E_{w_k} ψ)` as a polynomial; coefficients are
    /// frozen, so they multiply the result and are never differentiated.
    pub fn apply(&self, model: &ChartModel, psi: &Poly) -> Poly {
        self.terms
            .iter()
            .fold(Poly::zero(self.nvars), |acc, (w, c)| acc.add(&c.mul(&model.apply_word(w, psi))))
    }

    /// [`OperatorSeries::apply`] evaluated at `y`.
    pub fn apply_at(&self, model: &ChartModel, psi: &Poly, y: &[Rational]) -> Rational {
        self.apply(model, psi).eval(y)
    }
}

impl fmt::Display for OperatorSeries {
    /// Renders `(y1) E1 + (2 y2^2) E1 E3`; generators are numbered from 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if w.is_empty() {
                write!(f, "({c})")?;
            } else {
                let gens: Vec<String> = w.iter().map(|b| format!("E{}", b + 1)).collect();
                write!(f, "({c}) {}", gens.join(" "))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for OperatorSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Memoized elementary differentials `σ ↦ F_σ` of one model, and their
/// action on the coordinate functions.
pub struct ElementaryDifferentials {
    model: Arc<ChartModel>,
    memo: Mutex<HashMap<PlanarTree, OperatorSeries>>,
    coords: Mutex<HashMap<PlanarForest, Arc<Vec<Poly>>>>,
}

impl ElementaryDifferentials {
    pub fn new(model: Arc<ChartModel>) -> Self {
        Self {
            model,
            memo: Mutex::new(HashMap::new()),
            coords: Mutex::new(HashMap::new()),
        }
    }

    pub fn model(&self) -> &Arc<ChartModel> {
        &self.model
    }

    fn letter(&self, t: &PlanarTree) -> Result<usize> {
        match t.root().index() {
            Some(i) if i < self.model.fields() => Ok(i),
            _ => Err(Error::UnknownLetter {
                letter: t.root().to_string(),
                alphabet: self.model.fields(),
            }),
        }
    }

    /// `F(B⁺_a(τ)) = Σ_β ((#F_τ).f̃_a^β) E_β`, with `F(•_a) = f_a`.
    fn tree(&self, t: &PlanarTree) -> Result<OperatorSeries> {
        if let Some(s) = self.memo.lock().expect("memo lock").get(t) {
            return Ok(s.clone());
        }
        let a = self.letter(t)?;
        let inner = self.forest(&t.branches())?;
        let n = self.model.chart_dim();
        let mut out = OperatorSeries::zero(n);
        for (b, coeff) in self.model.coefficients()[a].iter().enumerate() {
            out.add_term(vec![b], inner.apply(&self.model, coeff));
        }
        self.memo.lock().expect("memo lock").insert(t.clone(), out.clone());
        Ok(out)
    }

    /// `F(σ_1⋯σ_k) = F(σ_1)⋯F(σ_k)`, concatenation of the tree operators.
    pub fn forest(&self, f: &PlanarForest) -> Result<OperatorSeries> {
        let mut acc = OperatorSeries::identity(self.model.chart_dim());
        for t in f.trees() {
            acc = acc.concat(&self.tree(t)?);
        }
        Ok(acc)
    }

    /// `F` extended linearly to a forest series.
    pub fn series(&self, s: &Series<PlanarForest>) -> Result<OperatorSeries> {
        let mut acc = OperatorSeries::zero(self.model.chart_dim());
        for (f, c) in s.iter() {
            acc = acc.add(&self.forest(f)?.scale(c));
        }
        Ok(acc)
    }

    /// `F_σ y_α` for every coordinate `α`.
    pub fn on_coordinates(&self, f: &PlanarForest) -> Result<Arc<Vec<Poly>>> {
        if let Some(v) = self.coords.lock().expect("coords lock").get(f) {
            return Ok(v.clone());
        }
        let op = self.forest(f)?;
        let n = self.model.chart_dim();
        let v = Arc::new(
            (0..n)
                .map(|a| op.apply(&self.model, &Poly::var(n, a)))
                .collect::<Vec<_>>(),
        );
        self.coords.lock().expect("coords lock").insert(f.clone(), v.clone());
        Ok(v)
    }
}

/// `F_σ` for a single forest.
pub fn elementary_differential(model: &ChartModel, f: &PlanarForest) -> Result<OperatorSeries> {
    ElementaryDifferentials::new(Arc::new(model.clone())).forest(f)
}

/// Applies `op` to `ψ` and evaluates at `y`.
pub fn apply_operator(model: &ChartModel, op: &OperatorSeries, psi: &Poly, y: &[Rational]) -> Rational {
    op.apply_at(model, psi, y)
}
