use std::collections::btree_map::{BTreeMap, Entry};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::{int, to_f64, Rational};
use crate::{Error, Result};

/// Polynomial in the chart variables `y_1, …, y_n` with exact coefficients,
/// stored as exponent vector → coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// The coordinate function `y_α` (0-based).
    pub fn var(nvars: usize, alpha: usize) -> Self {
        assert!(alpha < nvars, "variable {alpha} out of range");
        let mut e = vec![0; nvars];
        e[alpha] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(exponents: Vec<u32>, c: Rational) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, c);
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::Invalid(format!(
                    "monomial has {} exponents, expected {nvars}",
                    e.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e = a.iter().zip(b).map(|(p, q)| p + q).collect();
                out.add_term(e, x * y);
            }
        }
        out
    }

    /// `∂ / ∂y_α`.
    pub fn derivative(&self, alpha: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[alpha] > 0 {
                let mut f = e.clone();
                f[alpha] -= 1;
                out.add_term(f, c * int(e[alpha] as i64));
            }
        }
        out
    }

    pub fn eval(&self, y: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (v, &k) in y.iter().zip(e) {
                for _ in 0..k {
                    m *= v;
                }
            }
            acc += m;
        }
        acc
    }

    pub fn eval_f64(&self, y: &[f64]) -> f64 {
        self.compile().eval(y)
    }

    pub fn compile(&self) -> CompiledPoly {
        CompiledPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|&k| k as i32).collect(), to_f64(c)))
                .collect(),
        }
    }
}

/// Floating-point evaluation form of a [`Poly`].
#[derive(Clone, Debug, Default)]
pub struct CompiledPoly {
    terms: Vec<(Vec<i32>, f64)>,
}

impl CompiledPoly {
    pub fn eval(&self, y: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| e.iter().zip(y).fold(*c, |m, (&k, v)| m * v.powi(k)))
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for Poly {
    /// Renders `y1^2 y2 - 3/2 y3`; variables are numbered from 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| if k == 1 { format!("y{}", v + 1) } else { format!("y{}^{k}", v + 1) })
                .collect();
            if vars.is_empty() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a} ")?;
                }
                write!(f, "{}", vars.join(" "))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Every monomial in `nvars` variables of total degree `1..=degree`, in
/// graded lexicographic order.
pub fn monomials_up_to(nvars: usize, degree: u32) -> Vec<Poly> {
    fn go(nvars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == nvars {
            out.push(prefix.clone());
            return;
        }
        for k in (0..=left).rev() {
            prefix.push(k);
            go(nvars, left - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for deg in 1..=degree {
        let mut exps = Vec::new();
        go(nvars, deg, &mut Vec::new(), &mut exps);
        out.extend(
            exps.into_iter()
                .filter(|e| e.iter().sum::<u32>() == deg)
                .map(|e| Poly::monomial(e, Rational::one())),
        );
    }
    out
}
