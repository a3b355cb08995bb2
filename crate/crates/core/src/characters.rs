//! Inverse-factorial characters, their convolution powers, the
//! γ-deformed functional `q_γ` and the binomial and decay identities.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{binomial, factorial, pow, Graded, LinearFunctional, Rational, Real, Series};
use crate::hopf::{reduced_coproduct, HopfAlgebra};
use crate::{Error, Result};

/// The inverse-factorial character
/// `q(x) = 1/(2^{|x|}−2) Σ' q(x')q(x'')`, equal to 1 on the unit and on
/// every degree-one element. Values are memoized.
pub struct InverseFactorial<H: HopfAlgebra> {
    h: Arc<H>,
    memo: RwLock<HashMap<H::Basis, Rational>>,
}

impl<H: HopfAlgebra + 'static> InverseFactorial<H> {
    pub fn new(h: Arc<H>) -> Self {
        Self {
            h,
            memo: RwLock::default(),
        }
    }

    pub fn algebra(&self) -> &H {
        &self.h
    }

    pub fn value(&self, x: &H::Basis) -> Rational {
        if let Some(v) = self.memo.read().expect("memo poisoned").get(x) {
            return v.clone();
        }
        let n = x.degree();
        let v = if n <= 1 {
            Rational::one()
        } else {
            let sum = reduced_coproduct(&*self.h, x)
                .pair_with(|(l, r)| self.value(l) * self.value(r));
            sum / Rational::from_integer((num_bigint::BigInt::one() << n) - 2)
        };
        self.memo
            .write()
            .expect("memo poisoned")
            .insert(x.clone(), v.clone());
        v
    }

    /// `q` as a linear functional up to `cap`.
    pub fn functional(self: &Arc<Self>, cap: usize) -> LinearFunctional<H::Basis> {
        let me = Arc::clone(self);
        LinearFunctional::new(cap, move |x| me.value(x))
    }

    /// Closed form `q^{∗t}(x) = t^{|x|} q(x)`.
    pub fn power_closed(&self, x: &H::Basis, t: &Rational) -> Rational {
        pow(t, x.degree()) * self.value(x)
    }

    fn phi_power(&self, x: &H::Basis, p: usize, memo: &mut HashMap<(H::Basis, usize), Rational>) -> Rational {
        let unit = x.degree() == 0;
        if p == 0 {
            return if unit { Rational::one() } else { Rational::zero() };
        }
        if unit || p > x.degree() {
            return Rational::zero();
        }
        if let Some(v) = memo.get(&(x.clone(), p)) {
            return v.clone();
        }
        let mut acc = Rational::zero();
        for ((l, r), c) in self.h.coproduct(x).iter() {
            if l.degree() == 0 {
                continue;
            }
            let head = self.value(l);
            if head.is_zero() {
                continue;
            }
            acc += c * head * self.phi_power(r, p - 1, memo);
        }
        memo.insert((x.clone(), p), acc.clone());
        acc
    }

    /// `q^{∗t}(x) = Σ_p C(t,p) (q−ε)^{∗p}(x)`, a finite sum on each degree.
    pub fn power_by_convolution(&self, x: &H::Basis, t: &Rational) -> Rational {
        let mut memo = HashMap::new();
        (0..=x.degree())
            .map(|p| binomial(t, p) * self.phi_power(x, p, &mut memo))
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// `q^{∗t}(x)`, computed both ways; a disagreement is an error.
    pub fn power(&self, x: &H::Basis, t: &Rational) -> Result<Rational> {
        let closed = self.power_closed(x, t);
        let conv = self.power_by_convolution(x, t);
        if closed != conv {
            return Err(Error::Invalid(format!(
                "q^*{t}({x}): closed form {closed} differs from convolution sum {conv}"
            )));
        }
        Ok(closed)
    }

    /// `q(x)(a+b)^{|x|} − Σ q(x₁)q(x₂) a^{|x₁|} b^{|x₂|}`.
    pub fn binomial_residual(&self, x: &H::Basis, a: &Rational, b: &Rational) -> Rational {
        let lhs = self.value(x) * pow(&(a + b), x.degree());
        let rhs = self.h.coproduct(x).pair_with(|(l, r)| {
            self.value(l) * self.value(r) * pow(a, l.degree()) * pow(b, r.degree())
        });
        lhs - rhs
    }
}

/// The γ-deformed functional: `q_γ = q` up to degree `N = ⌊1/γ⌋`, then
/// `q_γ(σ) = 1/(2^{γ|σ|}−2) Σ' q_γ(σ')q_γ(σ'')`.
pub struct QGamma<H: HopfAlgebra> {
    q: Arc<InverseFactorial<H>>,
    gamma: Rational,
    n: usize,
    bits: u32,
    memo: RwLock<HashMap<H::Basis, GammaValue>>,
}

impl<H: HopfAlgebra + 'static> QGamma<H> {
    pub fn new(q: Arc<InverseFactorial<H>>, gamma: Rational, bits: u32) -> Result<Self> {
        if !gamma.is_positive() || gamma > Rational::one() {
            return Err(Error::Gamma(format!("γ = {gamma} is outside (0, 1]")));
        }
        let n = (Rational::one() / &gamma).floor().to_integer().to_usize().expect("small N");
        Ok(Self {
            q,
            gamma,
            n,
            bits,
            memo: RwLock::default(),
        })
    }

    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    /// `N = ⌊1/γ⌋`.
    pub fn truncation(&self) -> usize {
        self.n
    }

    pub fn character(&self) -> &Arc<InverseFactorial<H>> {
        &self.q
    }

    /// The exact value when every step of the recursion stays rational,
    /// i.e. whenever `γ|σ|` is an integer along the way.
    pub fn value_exact(&self, x: &H::Basis) -> Option<Rational> {
        match self.entry(x) {
            GammaValue::Exact(r) => Some(r),
            GammaValue::Approx(_) => None,
        }
    }

    /// `q_γ(x)` enclosed in an interval at the configured precision.
    pub fn value(&self, x: &H::Basis) -> Real {
        match self.entry(x) {
            GammaValue::Exact(r) => Real::exact(r, self.bits),
            GammaValue::Approx(v) => v,
        }
    }

    fn entry(&self, x: &H::Basis) -> GammaValue {
        if let Some(v) = self.memo.read().expect("memo poisoned").get(x) {
            return v.clone();
        }
        let deg = x.degree();
        let v = if deg <= self.n {
            GammaValue::Exact(self.q.value(x))
        } else {
            let e = &self.gamma * Rational::from_integer(deg.into());
            let terms: Vec<_> = reduced_coproduct(self.q.algebra(), x)
                .into_terms()
                .map(|((l, r), c)| (self.entry(&l), self.entry(&r), c))
                .collect();
            let all_exact = e.is_integer()
                && terms
                    .iter()
                    .all(|(a, b, _)| matches!((a, b), (GammaValue::Exact(_), GammaValue::Exact(_))));
            if all_exact {
                let mut sum = Rational::zero();
                for (a, b, c) in &terms {
                    if let (GammaValue::Exact(a), GammaValue::Exact(b)) = (a, b) {
                        sum += a * b * c;
                    }
                }
                let denom = pow(&Rational::from_integer(2.into()), e.to_integer().to_usize().expect("small"))
                    - Rational::from_integer(2.into());
                GammaValue::Exact(sum / denom)
            } else {
                let mut sum = Real::zero(self.bits);
                for (a, b, c) in &terms {
                    let (a, b) = (a.to_real(self.bits), b.to_real(self.bits));
                    sum = sum.add(&a.mul(&b).scale(c));
                }
                let two = Real::exact(Rational::from_integer(2.into()), self.bits);
                let denom = Real::pow2(&e, self.bits).sub(&two);
                GammaValue::Approx(sum.div(&denom).expect("2^{γ|σ|} > 2 beyond the truncation degree"))
            }
        };
        self.memo
            .write()
            .expect("memo poisoned")
            .insert(x.clone(), v.clone());
        v
    }
}

#[derive(Clone)]
enum GammaValue {
    Exact(Rational),
    Approx(Real),
}

impl GammaValue {
    fn to_real(&self, bits: u32) -> Real {
        match self {
            GammaValue::Exact(r) => Real::exact(r.clone(), bits),
            GammaValue::Approx(v) => v.clone(),
        }
    }
}

/// One row of [`gamma_decay_table`].
#[derive(Clone, Debug)]
pub struct DecayRow {
    pub degree: usize,
    pub element: String,
    pub q: Rational,
    pub q_gamma: f64,
    /// `q_γ(σ)·σ!/(|σ|!)^{1−γ}` with `σ! = 1/q(σ)`.
    pub ratio: f64,
}

/// Decay of `q_γ` against `(|σ|!)^{1−γ}/σ!`.
#[derive(Clone, Debug)]
pub struct DecayTable {
    pub gamma: Rational,
    pub rows: Vec<DecayRow>,
    /// Smallest `C_n` with `ratio ≤ C_n^{n−1}` on degree `n`, for `n ≥ 2`.
    pub per_degree: Vec<(usize, f64)>,
    pub fitted_c: f64,
    /// Whether `C_n` is non-decreasing in `n`; reported, not asserted.
    pub rate_monotone: bool,
}

pub fn gamma_decay_table<H: HopfAlgebra + 'static>(qg: &QGamma<H>, max_degree: usize) -> DecayTable {
    let one_minus = 1.0 - qg.gamma().to_f64().expect("finite γ");
    let mut rows = Vec::new();
    let mut per_degree = Vec::new();
    for n in 1..=max_degree {
        let log_nfact = factorial(n).to_f64().expect("finite").ln();
        let mut c_n: f64 = 0.0;
        for x in qg.character().algebra().basis(n) {
            let q = qg.character().value(&x);
            if q.is_zero() {
                continue;
            }
            let q_gamma = qg.value(&x).to_f64();
            let ratio = q_gamma / q.to_f64().expect("finite") / (one_minus * log_nfact).exp();
            if n >= 2 {
                c_n = c_n.max(ratio.abs().powf(1.0 / (n - 1) as f64));
            }
            rows.push(DecayRow {
                degree: n,
                element: x.to_string(),
                q,
                q_gamma,
                ratio,
            });
        }
        if n >= 2 {
            per_degree.push((n, c_n));
        }
    }
    let fitted_c = per_degree.iter().map(|&(_, c)| c).fold(0.0, f64::max);
    let rate_monotone = per_degree.windows(2).all(|w| w[1].1 >= w[0].1 - 1e-12);
    DecayTable {
        gamma: qg.gamma().clone(),
        rows,
        per_degree,
        fitted_c,
        rate_monotone,
    }
}

/// `q` extended linearly.
pub fn q_series<H: HopfAlgebra + 'static>(q: &InverseFactorial<H>, s: &Series<H::Basis>) -> Rational {
    s.pair_with(|x| q.value(x))
}
