use std::fmt;

use super::lift::{unit_value, Lift, Scalar};
use crate::algebra::{to_f64, Graded, Rational};
use crate::hopf::HopfAlgebra;
use crate::Result;

/// Outcome of an exhaustive residual check.
#[derive(Clone, Debug)]
pub struct ResidualReport {
    pub check: String,
    pub checked: usize,
    pub max_residual: f64,
    /// Zero means residuals must vanish exactly.
    pub tolerance: f64,
    /// The first element (or pair) whose residual is out of tolerance.
    pub witness: Option<String>,
}

impl ResidualReport {
    fn new(check: &str, tolerance: f64) -> Self {
        Self {
            check: check.into(),
            checked: 0,
            max_residual: 0.0,
            tolerance,
            witness: None,
        }
    }

    fn record<S: Scalar>(&mut self, residual: &S, label: impl FnOnce() -> String) {
        self.checked += 1;
        let m = residual.magnitude();
        self.max_residual = self.max_residual.max(m);
        let bad = if self.tolerance == 0.0 {
            !residual.is_exact_zero()
        } else {
            !(m <= self.tolerance)
        };
        if bad && self.witness.is_none() {
            self.witness = Some(format!("{}: residual {residual}", label()));
        }
    }

    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

impl fmt::Display for ResidualReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(
                f,
                "{}: pass ({} checks, max residual {:e})",
                self.check, self.checked, self.max_residual
            ),
            Some(w) => write!(f, "{}: FAIL at {w}", self.check),
        }
    }
}

fn value_of<B, L: Lift<B>>(h: &impl HopfAlgebra<Basis = B>, lift: &L, s: &Rational, t: &Rational, x: &B) -> Result<L::Value>
where
    B: PartialEq,
{
    if *x == h.one() {
        return Ok(unit_value());
    }
    lift.eval(s, t, x)
}

/// Multiplicativity `⟨𝕏_st, xy⟩ = ⟨𝕏_st, x⟩⟨𝕏_st, y⟩` on every pair of
/// basis elements of positive degree with `|x| + |y| ≤ cap`.
pub fn check_character<H: HopfAlgebra, L: Lift<H::Basis>>(
    h: &H,
    lift: &L,
    s: &Rational,
    t: &Rational,
    cap: usize,
    tolerance: f64,
) -> Result<ResidualReport> {
    let mut report = ResidualReport::new("character", tolerance);
    let basis: Vec<Vec<H::Basis>> = (0..=cap).map(|n| h.basis(n)).collect();
    for n in 1..cap {
        for m in 1..=cap - n {
            for x in &basis[n] {
                for y in &basis[m] {
                    if h.is_commutative() && (n, x) > (m, y) {
                        continue;
                    }
                    let lhs = value_of(h, lift, s, t, x)?.times(&value_of(h, lift, s, t, y)?);
                    let mut rhs = L::Value::from_rational(&Rational::from_integer(0.into()));
                    for (z, c) in h.product(x, y).iter() {
                        rhs = rhs.plus(&L::Value::from_rational(c).times(&value_of(h, lift, s, t, z)?));
                    }
                    report.record(&lhs.minus(&rhs), || format!("x = {x}, y = {y}"));
                }
            }
        }
    }
    Ok(report)
}

/// Chen's relation `𝕏_st = 𝕏_su ∗ 𝕏_ut` on every basis element of degree
/// `1..=cap`. Any `u` is allowed, inside or outside `[s, t]`.
pub fn check_chen<H: HopfAlgebra, L: Lift<H::Basis>>(
    h: &H,
    lift: &L,
    (s, u, t): (&Rational, &Rational, &Rational),
    cap: usize,
    tolerance: f64,
) -> Result<ResidualReport> {
    let mut report = ResidualReport::new("chen", tolerance);
    for n in 1..=cap {
        for x in h.basis(n) {
            let lhs = value_of(h, lift, s, t, &x)?;
            let mut rhs = L::Value::from_rational(&Rational::from_integer(0.into()));
            for ((l, r), c) in h.coproduct(&x).iter() {
                let term = value_of(h, lift, s, u, l)?.times(&value_of(h, lift, u, t, r)?);
                rhs = rhs.plus(&L::Value::from_rational(c).times(&term));
            }
            report.record(&lhs.minus(&rhs), || format!("x = {x}"));
        }
    }
    Ok(report)
}

/// One line of a Hölder table.
#[derive(Clone, Debug)]
pub struct HolderRow {
    pub element: String,
    pub degree: usize,
    /// `max |⟨𝕏_st, σ⟩| / |t − s|^{γ|σ|}` over the sampled pairs.
    pub sup_ratio: f64,
    pub q_gamma: f64,
    /// `c^{|σ|} q_γ(σ)` with the fitted `c`.
    pub bound: f64,
}

#[derive(Clone, Debug)]
pub struct HolderTable {
    pub gamma: f64,
    pub pairs: usize,
    /// Smallest `c` with `sup_ratio ≤ c^{|σ|} q_γ(σ)` on every row.
    pub fitted_c: f64,
    pub rows: Vec<HolderRow>,
}

/// Empirical Hölder constants of `lift` over `pairs`; pairs with `s = t`
/// are skipped.
pub fn holder_table<B: Graded + fmt::Display, L: Lift<B>>(
    lift: &L,
    gamma: f64,
    pairs: &[(Rational, Rational)],
    elements: &[B],
    q_gamma: impl Fn(&B) -> f64,
) -> Result<HolderTable> {
    let pairs: Vec<_> = pairs.iter().filter(|(s, t)| s != t).collect();
    let mut rows = Vec::with_capacity(elements.len());
    let mut c = 0.0f64;
    for x in elements {
        let n = x.degree();
        let mut sup = 0.0f64;
        for (s, t) in &pairs {
            let v = lift.eval(s, t, x)?.magnitude();
            let h = to_f64(&(t - s)).abs();
            sup = sup.max(v / h.powf(gamma * n as f64));
        }
        let q = q_gamma(x);
        if n > 0 && q > 0.0 {
            c = c.max((sup / q).powf(1.0 / n as f64));
        }
        rows.push(HolderRow {
            element: x.to_string(),
            degree: n,
            sup_ratio: sup,
            q_gamma: q,
            bound: 0.0,
        });
    }
    for r in &mut rows {
        r.bound = c.powi(r.degree as i32) * r.q_gamma;
    }
    Ok(HolderTable {
        gamma,
        pairs: pairs.len(),
        fitted_c: c,
        rows,
    })
}
