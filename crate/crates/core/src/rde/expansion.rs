use std::sync::Arc;

use num_traits::{One, Zero};

use super::{monomials_up_to, ChartModel, ElementaryDifferentials, Poly};
use crate::algebra::{int, Rational, Series, Word};
use crate::forest::{enumerate_forests, enumerate_words, Letter, PlanarForest, PlanarTree};
use crate::hopf::iterated_gl_word;
use crate::morphisms::arborify_planar;
use crate::roughpath::{Lift, PiecewisePolyPath, PullbackLift, SignatureLift};
use crate::Result;

use super::solver::forests_up_to;

/// `Σ_{|w|≤N} ⟨X_st, w⟩ · (•_{w_1} ∗ ⋯ ∗ •_{w_n})`, the Chen–Fliess series
/// written in the Grossman–Larson algebra; the earliest letter is grafted last.
pub fn word_expansion(path: &Arc<PiecewisePolyPath>, s: &Rational, t: &Rational, degree: usize) -> Result<Series<PlanarForest>> {
    let sig = SignatureLift::new(path.clone(), degree);
    let mut out = Series::single(PlanarForest::unit());
    for n in 1..=degree {
        for w in enumerate_words(n, path.dim()) {
            let c = sig.eval(s, t, &w)?;
            if !c.is_zero() {
                out.add_scaled(&iterated_gl_word(&w.reversed()), &c);
            }
        }
    }
    Ok(out)
}

/// `Σ_{|σ|≤N} ⟨𝕏_st, σ⟩ σ` for the planar lift `𝕏 = X ∘ 𝔞_≪`.
pub fn forest_expansion(path: &Arc<PiecewisePolyPath>, s: &Rational, t: &Rational, degree: usize) -> Result<Series<PlanarForest>> {
    let lift = PullbackLift::planar(path.clone(), degree);
    let mut out = Series::single(PlanarForest::unit());
    for f in forests_up_to(degree, path.dim())? {
        out.add_term(f.clone(), lift.eval(s, t, &f)?);
    }
    Ok(out)
}

/// `Σ_σ c_σ (F_σ y_α)(y)` for each coordinate `α`.
pub fn evaluate_expansion(diffs: &ElementaryDifferentials, series: &Series<PlanarForest>, y: &[Rational]) -> Result<Vec<Rational>> {
    let mut out = vec![Rational::zero(); diffs.model().chart_dim()];
    for (f, c) in series.iter() {
        for (o, p) in out.iter_mut().zip(diffs.on_coordinates(f)?.iter()) {
            *o += c * p.eval(y);
        }
    }
    Ok(out)
}

/// `Σ_σ c_σ F_σ ψ` as a polynomial.
pub fn expansion_action(diffs: &ElementaryDifferentials, series: &Series<PlanarForest>, psi: &Poly) -> Result<Poly> {
    let mut out = Poly::zero(diffs.model().chart_dim());
    for (f, c) in series.iter() {
        out = out.add(&diffs.forest(f)?.apply(diffs.model(), psi).scale(c));
    }
    Ok(out)
}

/// Both sides of the arborification–coarborification identity, as forest
/// series and evaluated through the elementary differentials of `model`.
/// Values are taken on every monomial of degree `≤ N`, since products of
/// several trees act as higher-order operators that kill the coordinates.
#[derive(Clone, Debug)]
pub struct ExpansionComparison {
    pub degree: usize,
    pub word_side: Series<PlanarForest>,
    pub forest_side: Series<PlanarForest>,
    pub word_values: Vec<Rational>,
    pub forest_values: Vec<Rational>,
}

impl ExpansionComparison {
    pub fn series_agree(&self) -> bool {
        self.word_side == self.forest_side
    }

    pub fn values_agree(&self) -> bool {
        self.word_values == self.forest_values
    }

    /// First forest where the two series differ.
    pub fn witness(&self) -> Option<String> {
        let diff = &self.word_side - &self.forest_side;
        let out = diff.iter().next().map(|(f, c)| {
            format!(
                "{f}: word side {}, forest side {} (difference {c})",
                self.word_side.coeff(f),
                self.forest_side.coeff(f)
            )
        });
        out
    }
}

pub fn compare_expansions(
    model: Arc<ChartModel>,
    path: &Arc<PiecewisePolyPath>,
    (s, t): (&Rational, &Rational),
    y: &[Rational],
    degree: usize,
) -> Result<ExpansionComparison> {
    let diffs = ElementaryDifferentials::new(model);
    let word_side = word_expansion(path, s, t, degree)?;
    let forest_side = forest_expansion(path, s, t, degree)?;
    let tests = monomials_up_to(diffs.model().chart_dim(), degree as u32);
    let values = |series: &Series<PlanarForest>| {
        tests
            .iter()
            .map(|psi| Ok(expansion_action(&diffs, series, psi)?.eval(y)))
            .collect::<Result<Vec<_>>>()
    };
    let word_values = values(&word_side)?;
    let forest_values = values(&forest_side)?;
    Ok(ExpansionComparison {
        degree,
        word_side,
        forest_side,
        word_values,
        forest_values,
    })
}

fn leaf(l: &Letter) -> PlanarTree {
    PlanarTree::leaf(l.clone())
}

fn node(l: &Letter, children: Vec<PlanarTree>) -> PlanarTree {
    PlanarTree::new(l.clone(), children)
}

fn forest(trees: Vec<PlanarTree>) -> PlanarForest {
    PlanarForest::new(trees)
}

/// The six forests multiplying `⟨X, a_k a_j a_i⟩` in the third-order term:
/// `k j i`, `j[k] i`, `i[k,j]`, `i[j[k]]`, `j i[k]`, `k i[j]`.
pub fn six_term_display(k: &Letter, j: &Letter, i: &Letter) -> Series<PlanarForest> {
    [
        forest(vec![leaf(k), leaf(j), leaf(i)]),
        forest(vec![node(j, vec![leaf(k)]), leaf(i)]),
        forest(vec![node(i, vec![leaf(k), leaf(j)])]),
        forest(vec![node(i, vec![node(j, vec![leaf(k)])])]),
        forest(vec![leaf(j), node(i, vec![leaf(k)])]),
        forest(vec![leaf(k), node(i, vec![leaf(j)])]),
    ]
    .into_iter()
    .map(|f| (f, Rational::one()))
    .collect()
}

/// Third-order term in the regrouped form: for every triple `(i, j, k)`,
/// `a_k a_j a_i` carries the first four shapes and `a_k a_j a_i + a_j a_k a_i`
/// carries `j i[k]`. Returns the operator series per word.
pub fn five_forest_display(d: usize) -> Vec<(Word, Series<PlanarForest>)> {
    let words = enumerate_words(3, d);
    let mut out: Vec<(Word, Series<PlanarForest>)> = words.iter().map(|w| (w.clone(), Series::zero())).collect();
    let slot = |w: &Word| words.iter().position(|x| x == w).expect("enumerated word");
    let letters: Vec<Letter> = (0..d).map(Letter::new).collect();
    for i in &letters {
        for j in &letters {
            for k in &letters {
                let kji = Word::new(vec![k.clone(), j.clone(), i.clone()]);
                let jki = Word::new(vec![j.clone(), k.clone(), i.clone()]);
                let four: Series<PlanarForest> = [
                    forest(vec![leaf(k), leaf(j), leaf(i)]),
                    forest(vec![node(j, vec![leaf(k)]), leaf(i)]),
                    forest(vec![node(i, vec![leaf(k), leaf(j)])]),
                    forest(vec![node(i, vec![node(j, vec![leaf(k)])])]),
                ]
                .into_iter()
                .map(|f| (f, Rational::one()))
                .collect();
                let fifth = Series::single(forest(vec![leaf(j), node(i, vec![leaf(k)])]));
                let a = slot(&kji);
                out[a].1.add_scaled(&four, &Rational::one());
                out[a].1.add_scaled(&fifth, &Rational::one());
                out[slot(&jki)].1.add_scaled(&fifth, &Rational::one());
            }
        }
    }
    out
}

/// `Σ_σ ⟨𝔞_≪(σ), w⟩ σ` over forests of degree `|w|`: the operator paired
/// with `⟨X, w⟩` in the Lie–Butcher expansion.
pub fn lb_coefficient(w: &Word, d: usize) -> Result<Series<PlanarForest>> {
    let mut out = Series::zero();
    for f in enumerate_forests(w.len(), d)? {
        let c = arborify_planar(&f).coeff(w);
        if !c.is_zero() {
            out.add_term(f, c);
        }
    }
    Ok(out)
}

/// Translation model on `ℝ²` with two quadratic coefficient maps, chosen so
/// that the elementary differentials of all degree-3 shapes are distinct.
pub fn intro_model() -> ChartModel {
    let p = |terms: &[([u32; 2], i64)]| {
        Poly::from_terms(2, terms.iter().map(|(e, c)| (e.to_vec(), int(*c)))).expect("two variables")
    };
    ChartModel::translation(vec![
        vec![p(&[([1, 1], 1), ([0, 0], 1)]), p(&[([0, 2], 1), ([1, 0], 2)])],
        vec![p(&[([2, 0], 1), ([0, 1], -1)]), p(&[([1, 0], 3), ([1, 1], 1), ([0, 0], 2)])],
    ])
    .expect("valid model")
}

/// One word `w` of the intro comparison. Each operator is recorded by its
/// action on every monomial of degree `≤ |w|`, which determines it.
#[derive(Clone, Debug)]
pub struct IntroRow {
    pub word: Word,
    /// From `Σ_σ ⟨𝔞_≪(σ), w⟩ F_σ`.
    pub lie_butcher: Vec<Poly>,
    /// From `F(•_{w_n} ∗ ⋯ ∗ •_{w_1})`.
    pub grossman_larson: Vec<Poly>,
    /// From the displayed forests (degree 3: six-term form).
    pub display: Vec<Poly>,
    /// Degree 3 only: the five-forest regrouping.
    pub regrouped: Option<Vec<Poly>>,
}

impl IntroRow {
    pub fn agrees(&self) -> bool {
        self.lie_butcher == self.grossman_larson
            && self.lie_butcher == self.display
            && self.regrouped.as_ref().is_none_or(|r| *r == self.lie_butcher)
    }
}

#[derive(Clone, Debug)]
pub struct IntroReport {
    pub rows: Vec<IntroRow>,
}

impl IntroReport {
    pub fn passed(&self) -> bool {
        !self.rows.is_empty() && self.rows.iter().all(IntroRow::agrees)
    }

    pub fn first_mismatch(&self) -> Option<&IntroRow> {
        self.rows.iter().find(|r| !r.agrees())
    }
}

fn actions(diffs: &ElementaryDifferentials, s: &Series<PlanarForest>, degree: usize) -> Result<Vec<Poly>> {
    monomials_up_to(diffs.model().chart_dim(), degree as u32)
        .iter()
        .map(|psi| expansion_action(diffs, s, psi))
        .collect()
}

/// Compares, word by word up to degree 3, the operator multiplying
/// `⟨X_st, w⟩` in the formal solution against the displayed low-order terms:
/// `F(•_i)`, `F(j i) + F(i[j])`, and the six- and five-forest forms.
pub fn intro_expansion_check(model: Arc<ChartModel>) -> Result<IntroReport> {
    let d = model.fields();
    let diffs = ElementaryDifferentials::new(model);
    let five = five_forest_display(d);
    let mut rows = Vec::new();
    for n in 1..=3 {
        for w in enumerate_words(n, d) {
            let l = w.letters();
            let display = match n {
                1 => Series::single(forest(vec![leaf(&l[0])])),
                2 => {
                    let (j, i) = (&l[0], &l[1]);
                    [forest(vec![leaf(j), leaf(i)]), forest(vec![node(i, vec![leaf(j)])])]
                        .into_iter()
                        .map(|f| (f, Rational::one()))
                        .collect()
                }
                _ => six_term_display(&l[0], &l[1], &l[2]),
            };
            let regrouped = five
                .iter()
                .find(|(v, _)| *v == w)
                .map(|(_, s)| actions(&diffs, s, n))
                .transpose()?;
            rows.push(IntroRow {
                lie_butcher: actions(&diffs, &lb_coefficient(&w, d)?, n)?,
                grossman_larson: actions(&diffs, &iterated_gl_word(&w.reversed()), n)?,
                display: actions(&diffs, &display, n)?,
                regrouped,
                word: w,
            });
        }
    }
    Ok(IntroReport { rows })
}
