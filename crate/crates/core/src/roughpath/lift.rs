use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::{Arc, Mutex};

use num_traits::{One, Signed, Zero};

use super::path::IteratedIntegrals;
use super::PiecewisePolyPath;
use crate::algebra::{to_f64, Graded, LinearFunctional, Rational, Series, Word};
use crate::forest::{NonplanarForest, PlanarForest};
use crate::morphisms::{arborify_nonplanar, arborify_planar};
use crate::{Error, Result};

/// Values a lift can take: exact rationals or floating point.
pub trait Scalar: Clone + Send + Sync + fmt::Debug + fmt::Display + 'static {
    fn from_rational(r: &Rational) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn to_f64(&self) -> f64;
    fn is_exact_zero(&self) -> bool;
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn to_f64(&self) -> f64 {
        to_f64(self)
    }
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
    fn magnitude(&self) -> f64 {
        to_f64(&self.abs())
    }
}

impl Scalar for f64 {
    fn from_rational(r: &Rational) -> Self {
        to_f64(r)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_exact_zero(&self) -> bool {
        *self == 0.0
    }
}

/// How a lift produces its values.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LiftMode {
    ExactSignature,
    Pullback,
    Tabulated,
}

/// The basis a lift is indexed by.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BasisKind {
    Word,
    Planar,
    Nonplanar,
}

impl BasisKind {
    pub fn name(self) -> &'static str {
        match self {
            BasisKind::Word => "word",
            BasisKind::Planar => "planar",
            BasisKind::Nonplanar => "nonplanar",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "word" | "words" | "shuffle" => Ok(BasisKind::Word),
            "planar" | "mkw" => Ok(BasisKind::Planar),
            "nonplanar" | "branched" | "bck" => Ok(BasisKind::Nonplanar),
            other => Err(Error::Invalid(format!("unknown basis kind {other:?}"))),
        }
    }
}

/// A two-parameter family of characters `(s, t) ↦ 𝕏_st` on a graded basis,
/// defined up to a degree cap.
pub trait Lift<B>: Send + Sync {
    type Value: Scalar;

    fn eval(&self, s: &Rational, t: &Rational, x: &B) -> Result<Self::Value>;
    fn cap(&self) -> usize;
    fn mode(&self) -> LiftMode;
}

fn cap_check<B: Graded>(x: &B, cap: usize) -> Result<()> {
    let degree = x.degree();
    if degree > cap {
        return Err(Error::DegreeCap { degree, cap });
    }
    Ok(())
}

/// The signature of a piecewise-polynomial path, on words.
pub struct SignatureLift {
    ints: IteratedIntegrals,
    cap: usize,
}

impl SignatureLift {
    pub fn new(path: Arc<PiecewisePolyPath>, cap: usize) -> Self {
        Self {
            ints: IteratedIntegrals::new(path),
            cap,
        }
    }

    pub fn path(&self) -> &Arc<PiecewisePolyPath> {
        self.ints.path()
    }

    /// `𝕏_st` as a linear functional on words.
    pub fn functional(self: &Arc<Self>, s: Rational, t: Rational) -> LinearFunctional<Word> {
        let me = self.clone();
        LinearFunctional::new(self.cap, move |w: &Word| {
            me.ints.value(&s, &t, w).expect("letters and times checked by caller")
        })
    }
}

impl Lift<Word> for SignatureLift {
    type Value = Rational;

    fn eval(&self, s: &Rational, t: &Rational, w: &Word) -> Result<Rational> {
        cap_check(w, self.cap)?;
        self.ints.value(s, t, w)
    }

    fn cap(&self) -> usize {
        self.cap
    }

    fn mode(&self) -> LiftMode {
        LiftMode::ExactSignature
    }
}

type WordMap<B> = Arc<dyn Fn(&B) -> Series<Word> + Send + Sync>;

/// `𝕏_st ∘ m` for a map `m` into words, such as an arborification.
pub struct PullbackLift<B> {
    signature: Arc<SignatureLift>,
    map: WordMap<B>,
    memo: Mutex<HashMap<B, Series<Word>>>,
    kind: BasisKind,
}

impl<B: Clone + Eq + Hash + Graded + Send + Sync> PullbackLift<B> {
    pub fn new(signature: Arc<SignatureLift>, kind: BasisKind, map: WordMap<B>) -> Self {
        Self {
            signature,
            map,
            memo: Mutex::new(HashMap::new()),
            kind,
        }
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn signature(&self) -> &Arc<SignatureLift> {
        &self.signature
    }

    fn image(&self, x: &B) -> Series<Word> {
        if let Some(s) = self.memo.lock().expect("memo lock").get(x) {
            return s.clone();
        }
        let s = (self.map)(x);
        self.memo.lock().expect("memo lock").insert(x.clone(), s.clone());
        s
    }
}

impl PullbackLift<PlanarForest> {
    /// The planarly branched lift `𝕏_st ∘ 𝔞_≪`.
    pub fn planar(path: Arc<PiecewisePolyPath>, cap: usize) -> Self {
        Self::new(
            Arc::new(SignatureLift::new(path, cap)),
            BasisKind::Planar,
            Arc::new(arborify_planar),
        )
    }
}

impl PullbackLift<NonplanarForest> {
    /// The branched lift `𝕏_st ∘ 𝔞`.
    pub fn branched(path: Arc<PiecewisePolyPath>, cap: usize) -> Self {
        Self::new(
            Arc::new(SignatureLift::new(path, cap)),
            BasisKind::Nonplanar,
            Arc::new(arborify_nonplanar),
        )
    }
}

impl<B: Clone + Eq + Hash + Graded + Send + Sync> Lift<B> for PullbackLift<B> {
    type Value = Rational;

    fn eval(&self, s: &Rational, t: &Rational, x: &B) -> Result<Rational> {
        cap_check(x, self.signature.cap)?;
        let mut acc = Rational::zero();
        for (w, c) in self.image(x).iter() {
            acc += c * self.signature.eval(s, t, w)?;
        }
        Ok(acc)
    }

    fn cap(&self) -> usize {
        self.signature.cap
    }

    fn mode(&self) -> LiftMode {
        LiftMode::Pullback
    }
}

/// `⟨𝕏_st∘𝔞_≪, f⟩` for a planar forest.
pub fn lift_planar(path: &PiecewisePolyPath, s: &Rational, t: &Rational, f: &PlanarForest) -> Result<Rational> {
    PullbackLift::planar(Arc::new(path.clone()), f.degree()).eval(s, t, f)
}

/// `⟨𝕏_st∘𝔞, f⟩` for a non-planar forest.
pub fn lift_branched(
    path: &PiecewisePolyPath,
    s: &Rational,
    t: &Rational,
    f: &NonplanarForest,
) -> Result<Rational> {
    PullbackLift::branched(Arc::new(path.clone()), f.degree()).eval(s, t, f)
}

/// Restricts a lift to degrees `≤ cap`.
pub struct TruncatedLift<L> {
    inner: L,
    cap: usize,
}

impl<L> TruncatedLift<L> {
    pub fn new(inner: L, cap: usize) -> Self {
        Self { inner, cap }
    }

    pub fn inner(&self) -> &L {
        &self.inner
    }
}

impl<B: Graded, L: Lift<B>> Lift<B> for TruncatedLift<L> {
    type Value = L::Value;

    fn eval(&self, s: &Rational, t: &Rational, x: &B) -> Result<L::Value> {
        cap_check(x, self.cap)?;
        self.inner.eval(s, t, x)
    }

    fn cap(&self) -> usize {
        self.cap.min(self.inner.cap())
    }

    fn mode(&self) -> LiftMode {
        self.inner.mode()
    }
}

/// Values stored explicitly at pairs of grid times.
#[derive(Clone, Debug)]
pub struct TabulatedLift<B: Eq + Hash> {
    values: HashMap<(Rational, Rational, B), f64>,
    cap: usize,
}

impl<B: Clone + Eq + Hash + Graded + fmt::Display + Send + Sync> TabulatedLift<B> {
    pub fn new(cap: usize) -> Self {
        Self {
            values: HashMap::new(),
            cap,
        }
    }

    pub fn insert(&mut self, s: Rational, t: Rational, x: B, value: f64) {
        self.values.insert((s, t, x), value);
    }

    /// Samples `lift` at every ordered pair of `times` and every element.
    pub fn tabulate<L: Lift<B>>(lift: &L, times: &[Rational], elements: &[B]) -> Result<Self> {
        let mut out = Self::new(lift.cap());
        for s in times {
            for t in times {
                for x in elements {
                    out.insert(s.clone(), t.clone(), x.clone(), lift.eval(s, t, x)?.to_f64());
                }
            }
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Entries sorted by `(s, t, element text)`.
    pub fn entries(&self) -> Vec<(&Rational, &Rational, &B, f64)> {
        let mut v: Vec<_> = self.values.iter().map(|((s, t, x), v)| (s, t, x, *v)).collect();
        v.sort_by(|a, b| (a.0, a.1, a.2.to_string()).cmp(&(b.0, b.1, b.2.to_string())));
        v
    }
}

impl<B: Clone + Eq + Hash + Graded + fmt::Display + Send + Sync> Lift<B> for TabulatedLift<B> {
    type Value = f64;

    fn eval(&self, s: &Rational, t: &Rational, x: &B) -> Result<f64> {
        cap_check(x, self.cap)?;
        if x.degree() == 0 {
            return Ok(1.0);
        }
        self.values
            .get(&(s.clone(), t.clone(), x.clone()))
            .copied()
            .ok_or_else(|| Error::Resolution {
                s: s.to_string(),
                t: t.to_string(),
            })
    }

    fn cap(&self) -> usize {
        self.cap
    }

    fn mode(&self) -> LiftMode {
        LiftMode::Tabulated
    }
}

/// Lifts behind a shared pointer are lifts.
impl<B, L: Lift<B> + ?Sized> Lift<B> for Arc<L> {
    type Value = L::Value;

    fn eval(&self, s: &Rational, t: &Rational, x: &B) -> Result<L::Value> {
        (**self).eval(s, t, x)
    }

    fn cap(&self) -> usize {
        (**self).cap()
    }

    fn mode(&self) -> LiftMode {
        (**self).mode()
    }
}

pub(crate) fn unit_value<S: Scalar>() -> S {
    S::from_rational(&Rational::one())
}
