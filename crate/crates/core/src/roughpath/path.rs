use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use super::UniPoly;
use crate::algebra::{int, to_f64, Rational, Word};
use crate::forest::Letter;
use crate::{Error, Result};

/// Highest polynomial degree accepted in a path piece.
pub const MAX_PIECE_DEGREE: usize = 64;

/// Continuous path in `ℝ^d` that is polynomial between consecutive
/// breakpoints. Polynomials are written in the absolute time variable.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewisePolyPath {
    breakpoints: Vec<Rational>,
    pieces: Vec<Vec<UniPoly>>,
    derivs: Vec<Vec<UniPoly>>,
    dim: usize,
}

impl PiecewisePolyPath {
    /// `pieces[i][a]` is component `a` on `[t_i, t_{i+1}]`.
    pub fn new(breakpoints: Vec<Rational>, pieces: Vec<Vec<UniPoly>>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::Invalid("a path needs at least two breakpoints".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid("breakpoints must be strictly increasing".into()));
        }
        if pieces.len() != breakpoints.len() - 1 {
            return Err(Error::Invalid(format!(
                "{} breakpoints need {} pieces, got {}",
                breakpoints.len(),
                breakpoints.len() - 1,
                pieces.len()
            )));
        }
        let dim = pieces[0].len();
        if dim == 0 {
            return Err(Error::Invalid("a path needs at least one component".into()));
        }
        for (i, p) in pieces.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::Invalid(format!("piece {i} has {} components, expected {dim}", p.len())));
            }
            if let Some(d) = p.iter().filter_map(UniPoly::degree).max() {
                if d > MAX_PIECE_DEGREE {
                    return Err(Error::Invalid(format!("piece {i} has degree {d} > {MAX_PIECE_DEGREE}")));
                }
            }
        }
        for i in 1..pieces.len() {
            let t = &breakpoints[i];
            for a in 0..dim {
                if pieces[i - 1][a].eval(t) != pieces[i][a].eval(t) {
                    return Err(Error::Invalid(format!("component {a} jumps at breakpoint {t}")));
                }
            }
        }
        let derivs = pieces
            .iter()
            .map(|p| p.iter().map(UniPoly::derivative).collect())
            .collect();
        Ok(Self {
            breakpoints,
            pieces,
            derivs,
            dim,
        })
    }

    /// A single polynomial piece on `[start, end]`.
    pub fn polynomial(components: Vec<UniPoly>, start: Rational, end: Rational) -> Result<Self> {
        Self::new(vec![start, end], vec![components])
    }

    /// `X_t = (t, t², …, t^d)` on `[start, end]`.
    pub fn moment_curve(d: usize, start: Rational, end: Rational) -> Self {
        let comps = (1..=d).map(|k| UniPoly::monomial(Rational::one(), k)).collect();
        Self::polynomial(comps, start, end).expect("valid moment curve")
    }

    /// `X_t = (t, …, t)` with `d` components on `[start, end]`.
    pub fn diagonal(d: usize, start: Rational, end: Rational) -> Self {
        let comps = vec![UniPoly::monomial(Rational::one(), 1); d];
        Self::polynomial(comps, start, end).expect("valid diagonal path")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Vec<UniPoly>] {
        &self.pieces
    }

    pub fn start(&self) -> &Rational {
        &self.breakpoints[0]
    }

    pub fn end(&self) -> &Rational {
        self.breakpoints.last().expect("non-empty")
    }

    pub fn check_domain(&self, t: &Rational) -> Result<()> {
        if t < self.start() || t > self.end() {
            return Err(Error::OutOfDomain(t.to_string()));
        }
        Ok(())
    }

    /// Index of the piece used at `t`; breakpoints belong to the piece on their right.
    fn segment(&self, t: &Rational) -> usize {
        let k = self.breakpoints.partition_point(|b| b <= t);
        k.saturating_sub(1).min(self.pieces.len() - 1)
    }

    fn segment_f64(&self, t: f64) -> usize {
        let k = self.breakpoints.partition_point(|b| to_f64(b) <= t);
        k.saturating_sub(1).min(self.pieces.len() - 1)
    }

    pub fn value(&self, t: &Rational) -> Result<Vec<Rational>> {
        self.check_domain(t)?;
        let i = self.segment(t);
        Ok(self.pieces[i].iter().map(|p| p.eval(t)).collect())
    }

    /// Floating-point position; `t` is clamped to the piece grid.
    pub fn value_f64(&self, t: f64) -> Vec<f64> {
        let i = self.segment_f64(t);
        self.pieces[i].iter().map(|p| p.eval_f64(t)).collect()
    }

    /// Floating-point velocity, taken from the piece on the right at breakpoints.
    pub fn velocity_f64(&self, t: f64) -> Vec<f64> {
        self.velocity_on(self.segment_f64(t), t)
    }

    /// Index of the piece containing `t`, clamped to the domain.
    pub fn piece_index(&self, t: f64) -> usize {
        self.segment_f64(t)
    }

    /// Velocity of piece `i` at `t`, extended polynomially beyond the piece.
    pub fn velocity_on(&self, i: usize, t: f64) -> Vec<f64> {
        self.derivs[i].iter().map(|p| p.eval_f64(t)).collect()
    }

    pub fn increment(&self, s: &Rational, t: &Rational, component: usize) -> Result<Rational> {
        let a = self.value(s)?;
        let b = self.value(t)?;
        Ok(&b[component] - &a[component])
    }

    /// Breakpoints strictly between `s` and `t`.
    pub fn interior_breakpoints(&self, s: &Rational, t: &Rational) -> Vec<Rational> {
        let (lo, hi) = if s <= t { (s, t) } else { (t, s) };
        self.breakpoints
            .iter()
            .filter(|b| *b > lo && *b < hi)
            .cloned()
            .collect()
    }

    pub(crate) fn letter_index(&self, l: &Letter) -> Result<usize> {
        match l.index() {
            Some(i) if i < self.dim => Ok(i),
            _ => Err(Error::UnknownLetter {
                letter: l.to_string(),
                alphabet: self.dim,
            }),
        }
    }
}

/// For a fixed start `s`, the functions `u ↦ ⟨X_su, w⟩` as one polynomial
/// per path piece, built letter by letter with a prefix cache.
pub(crate) struct IteratedIntegrals {
    path: Arc<PiecewisePolyPath>,
    cache: Mutex<HashMap<(Rational, Vec<usize>), Arc<Vec<UniPoly>>>>,
}

const CACHE_LIMIT: usize = 200_000;

impl IteratedIntegrals {
    pub(crate) fn new(path: Arc<PiecewisePolyPath>) -> Self {
        Self {
            path,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub(crate) fn path(&self) -> &Arc<PiecewisePolyPath> {
        &self.path
    }

    fn pieces(&self, s: &Rational, w: &[usize]) -> Arc<Vec<UniPoly>> {
        let m = self.path.pieces.len();
        if w.is_empty() {
            return Arc::new(vec![UniPoly::constant(Rational::one()); m]);
        }
        let key = (s.clone(), w.to_vec());
        if let Some(p) = self.cache.lock().expect("cache lock").get(&key) {
            return p.clone();
        }
        let (prefix, last) = w.split_at(w.len() - 1);
        let a = last[0];
        let prev = self.pieces(s, prefix);
        let integrand: Vec<UniPoly> = (0..m).map(|i| prev[i].mul(&self.path.derivs[i][a])).collect();
        let bp = &self.path.breakpoints;
        let k = self.path.segment(s);
        let mut out = vec![UniPoly::zero(); m];
        out[k] = integrand[k].integral_from(s);
        for i in k + 1..m {
            let start = out[i - 1].eval(&bp[i]);
            out[i] = integrand[i].integral_from(&bp[i]).add(&UniPoly::constant(start));
        }
        for i in (0..k).rev() {
            let start = out[i + 1].eval(&bp[i + 1]);
            out[i] = integrand[i].integral_from(&bp[i + 1]).add(&UniPoly::constant(start));
        }
        let out = Arc::new(out);
        let mut cache = self.cache.lock().expect("cache lock");
        if cache.len() >= CACHE_LIMIT {
            cache.clear();
        }
        cache.insert(key, out.clone());
        out
    }

    pub(crate) fn value(&self, s: &Rational, t: &Rational, w: &Word) -> Result<Rational> {
        self.path.check_domain(s)?;
        self.path.check_domain(t)?;
        let idx = w
            .letters()
            .iter()
            .map(|l| self.path.letter_index(l))
            .collect::<Result<Vec<_>>>()?;
        if idx.is_empty() {
            return Ok(Rational::one());
        }
        if s == t {
            return Ok(Rational::zero());
        }
        if idx.len() == 1 {
            return self.path.increment(s, t, idx[0]);
        }
        let p = self.pieces(s, &idx);
        Ok(p[self.path.segment(t)].eval(t))
    }
}

/// Exact iterated integral `⟨X_st, a_{j_1}⋯a_{j_n}⟩` over
/// `s < u_1 < ⋯ < u_n < t`, the last letter carrying the latest time.
/// For `s > t` the same recursion yields the inverse character.
pub fn signature(path: &PiecewisePolyPath, s: &Rational, t: &Rational, w: &Word) -> Result<Rational> {
    IteratedIntegrals::new(Arc::new(path.clone())).value(s, t, w)
}

/// `(t − s)^n / n!`, the signature of `a^n` along `X_t = t`.
pub fn simplex_volume(s: &Rational, t: &Rational, n: usize) -> Rational {
    let mut acc = Rational::one();
    let h = t - s;
    for k in 1..=n {
        acc = acc * &h / int(k as i64);
    }
    acc
}
