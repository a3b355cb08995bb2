use std::collections::{BTreeMap, HashMap};

use num_traits::One;

use super::{HopfAlgebra, Mkw};
use crate::algebra::{Graded, Rational, Series, Word};
use crate::forest::{enumerate_forests_capped, order_relations, Letter, PlanarForest, PlanarTree, Relation};

fn tree_grafts(sigma: &PlanarTree, t: &PlanarTree, out: &mut Vec<PlanarTree>) {
    let mut at_root = Vec::with_capacity(t.children().len() + 1);
    at_root.push(sigma.clone());
    at_root.extend(t.children().iter().cloned());
    out.push(PlanarTree::new(t.root().clone(), at_root));
    for (i, c) in t.children().iter().enumerate() {
        let mut inner = Vec::new();
        tree_grafts(sigma, c, &mut inner);
        for g in inner {
            let mut children = t.children().to_vec();
            children[i] = g;
            out.push(PlanarTree::new(t.root().clone(), children));
        }
    }
}

/// `σ ▷ τ`: the sum over the vertices of `τ` of grafting `σ` there as the
/// new leftmost branch.
pub fn left_graft(sigma: &PlanarTree, tau: &PlanarForest) -> Series<PlanarForest> {
    let mut out = Series::zero();
    for (i, t) in tau.trees().iter().enumerate() {
        let mut grafts = Vec::new();
        tree_grafts(sigma, t, &mut grafts);
        for g in grafts {
            let mut trees = tau.trees().to_vec();
            trees[i] = g;
            out.add_term(PlanarForest::new(trees), Rational::one());
        }
    }
    out
}

/// [`left_graft`] extended linearly in the second argument.
pub fn left_graft_series(sigma: &PlanarTree, s: &Series<PlanarForest>) -> Series<PlanarForest> {
    s.map_linear(|t| left_graft(sigma, t))
}

type GlMemo = HashMap<(PlanarForest, PlanarForest), Series<PlanarForest>>;

fn gl_rec(u: &PlanarForest, v: &PlanarForest, memo: &mut GlMemo) -> Series<PlanarForest> {
    if u.is_unit() {
        return Series::single(v.clone());
    }
    if v.is_unit() {
        return Series::single(u.clone());
    }
    let key = (u.clone(), v.clone());
    if let Some(s) = memo.get(&key) {
        return s.clone();
    }
    let (a, rest) = u.trees().split_first().expect("non-unit");
    let rest = PlanarForest::new(rest.to_vec());
    let inner = gl_rec(&rest, v, memo);
    let mut out: Series<PlanarForest> = inner
        .iter()
        .map(|(f, c)| (a.clone().into_forest().concat(f), c.clone()))
        .collect();
    out.add_scaled(&left_graft_series(a, &inner), &Rational::one());
    for (x, c) in left_graft(a, &rest).iter() {
        out.add_scaled(&gl_rec(x, v, memo), &-c.clone());
    }
    memo.insert(key, out.clone());
    out
}

/// Grossman–Larson product of basis forests through the D-algebra
/// recursion `(a·u')∗v = a·(u'∗v) + a▷(u'∗v) − (a▷u')∗v` for a tree `a`.
pub fn gl_product_recursive(u: &PlanarForest, v: &PlanarForest) -> Series<PlanarForest> {
    gl_rec(u, v, &mut HashMap::new())
}

/// Grossman–Larson product of series.
pub fn gl_product(u: &Series<PlanarForest>, v: &Series<PlanarForest>) -> Series<PlanarForest> {
    let mut memo = HashMap::new();
    u.bilinear(v, |x, y| gl_rec(x, y, &mut memo))
}

fn letter_multiset(f: &PlanarForest) -> BTreeMap<Letter, usize> {
    let mut m = BTreeMap::new();
    for l in f.letters() {
        *m.entry(l).or_default() += 1;
    }
    m
}

/// Grossman–Larson product of basis forests by duality: the coefficient of
/// `ρ` is the coefficient of `u⊗v` in `Δ_MKW(ρ)`.
pub fn gl_product_dual(u: &PlanarForest, v: &PlanarForest) -> Series<PlanarForest> {
    let joined = u.concat(v);
    let n = joined.degree();
    let d = joined
        .letters()
        .iter()
        .flat_map(|l| l.parts().collect::<Vec<_>>())
        .max()
        .map_or(1, |m| m + 1);
    let target = letter_multiset(&joined);
    let mkw = Mkw::new(d);
    let key = (u.clone(), v.clone());
    enumerate_forests_capped(n, d, usize::MAX)
        .expect("no cap")
        .into_iter()
        .filter(|rho| letter_multiset(rho) == target)
        .map(|rho| {
            let c = mkw.coproduct(&rho).coeff(&key);
            (rho, c)
        })
        .collect()
}

/// All Grossman–Larson products up to a total degree, read off the
/// coproducts of every forest.
#[derive(Clone, Debug, Default)]
pub struct GlDualTable {
    table: HashMap<(PlanarForest, PlanarForest), Series<PlanarForest>>,
}

impl GlDualTable {
    pub fn build(max_degree: usize, alphabet: usize) -> Self {
        let mkw = Mkw::new(alphabet);
        let mut table: HashMap<_, Series<PlanarForest>> = HashMap::new();
        for n in 0..=max_degree {
            for rho in mkw.basis(n) {
                for ((l, r), c) in mkw.coproduct(&rho).into_terms() {
                    table.entry((l, r)).or_default().add_term(rho.clone(), c);
                }
            }
        }
        Self { table }
    }

    pub fn product(&self, u: &PlanarForest, v: &PlanarForest) -> Series<PlanarForest> {
        self.table
            .get(&(u.clone(), v.clone()))
            .cloned()
            .unwrap_or_default()
    }
}

/// `•_{i_n} ∗ ⋯ ∗ •_{i_1}` for `w = a_{i_1}⋯a_{i_n}`, by repeated products.
pub fn iterated_gl_word(w: &Word) -> Series<PlanarForest> {
    let mut memo = HashMap::new();
    let mut acc = Series::single(PlanarForest::unit());
    for l in w.letters() {
        let dot = PlanarForest::single(l.clone());
        acc = acc.map_linear(|x| gl_rec(&dot, x, &mut memo));
    }
    acc
}

/// Same as [`iterated_gl_word`], summed over all forest shapes with `n`
/// vertices and all `≪`-linear extensions, the `j`-th least vertex
/// decorated by the `j`-th letter of `w`.
pub fn iterated_gl_word_by_extensions(w: &Word) -> Series<PlanarForest> {
    let n = w.len();
    let mut out = Series::zero();
    for shape in enumerate_forests_capped(n, 1, usize::MAX).expect("no cap") {
        let view = order_relations(&shape);
        for ext in view.linear_extensions(Relation::Planar) {
            let mut letters = vec![Letter::new(0); n];
            for (j, &v) in ext.iter().enumerate() {
                letters[v] = w.letters()[j].clone();
            }
            out.add_term(view.relabeled(&letters), Rational::one());
        }
    }
    out
}
