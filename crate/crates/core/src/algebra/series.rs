use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::Rational;

/// Objects carrying a non-negative degree.
pub trait Graded {
    fn degree(&self) -> usize;
}

impl<A: Graded, B: Graded> Graded for (A, B) {
    fn degree(&self) -> usize {
        self.0.degree() + self.1.degree()
    }
}

impl<A: Graded, B: Graded, C: Graded> Graded for (A, B, C) {
    fn degree(&self) -> usize {
        self.0.degree() + self.1.degree() + self.2.degree()
    }
}

/// Finite linear combination of basis elements with exact rational
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Series<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for Series<K> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Series<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(key: K) -> Self {
        Self::term(key, Rational::one())
    }

    pub fn term(key: K, coeff: Rational) -> Self {
        let mut s = Self::zero();
        s.add_term(key, coeff);
        s
    }

    /// Adds `coeff · key`, dropping the entry if it cancels.
    pub fn add_term(&mut self, key: K, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn coeff(&self, key: &K) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all coefficients.
    pub fn mass(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |a, v| a + v)
    }

    /// True when every coefficient is a positive integer.
    pub fn has_positive_integer_coefficients(&self) -> bool {
        self.terms.values().all(|v| v.is_integer() && v.is_positive())
    }

    /// Extends `f` linearly.
    pub fn map_linear<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Series<L>) -> Series<L> {
        let mut out = Series::zero();
        for (k, v) in &self.terms {
            out.add_scaled(&f(k), v);
        }
        out
    }

    /// Extends `f` bilinearly to a pair of series.
    pub fn bilinear<L: Ord + Clone, M: Ord + Clone>(
        &self,
        other: &Series<L>,
        mut f: impl FnMut(&K, &L) -> Series<M>,
    ) -> Series<M> {
        let mut out = Series::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_scaled(&f(a, b), &(x * y));
            }
        }
        out
    }

    /// Evaluates a linear functional given on basis elements.
    pub fn pair_with(&self, mut f: impl FnMut(&K) -> Rational) -> Rational {
        self.terms
            .iter()
            .fold(Rational::zero(), |acc, (k, v)| acc + v * f(k))
    }

    pub fn into_terms(self) -> impl Iterator<Item = (K, Rational)> {
        self.terms.into_iter()
    }
}

impl<K: Ord + Clone + Graded> Series<K> {
    /// Homogeneous component of degree `n`.
    pub fn component(&self, n: usize) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.degree() == n)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Largest degree present, `None` for the zero series.
    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Graded::degree).max()
    }

    /// Drops every term of degree above `cap`.
    pub fn truncate(&self, cap: usize) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.degree() <= cap)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }
}

impl<K: Ord + Clone> FromIterator<(K, Rational)> for Series<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        let mut s = Self::zero();
        for (k, v) in iter {
            s.add_term(k, v);
        }
        s
    }
}

impl<K: Ord + Clone> Add for &Series<K> {
    type Output = Series<K>;
    fn add(self, rhs: Self) -> Series<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl<K: Ord + Clone> Sub for &Series<K> {
    type Output = Series<K>;
    fn sub(self, rhs: Self) -> Series<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl<K: Ord + Clone> Neg for &Series<K> {
    type Output = Series<K>;
    fn neg(self) -> Series<K> {
        self.scale(&-Rational::one())
    }
}

impl<K: Ord> Series<K> {
    /// Renders the terms with a custom key formatter; `spaced` selects
    /// `x + y` over `x+y`.
    pub fn render_with(&self, key: impl Fn(&K) -> String, spaced: bool) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let (plus, minus) = if spaced { (" + ", " - ") } else { ("+", "-") };
        let mut out = String::new();
        for (i, (k, v)) in self.terms.iter().enumerate() {
            match (i, v.is_negative()) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(minus),
                (_, false) => out.push_str(plus),
            }
            let a = v.abs();
            if !a.is_one() {
                out.push_str(&format!("{a} "));
            }
            out.push_str(&key(k));
        }
        out
    }
}

impl<K: Ord + fmt::Display> Series<K> {
    /// Unspaced form, e.g. `bca+cba+[b+c]a`.
    pub fn compact(&self) -> String {
        self.render_with(ToString::to_string, false)
    }
}

impl<K: Ord + fmt::Display> fmt::Display for Series<K> {
    /// Renders `bca + cba`, `2 ab - 1/2 b`, or `0` for the zero series.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(ToString::to_string, true))
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for Series<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(|k| format!("{k:?}"), true))
    }
}
