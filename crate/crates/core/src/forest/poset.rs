use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{Letter, PlanarForest, PlanarTree};

/// Vertex sets are `u64` bitmasks, so forests are limited to 64 vertices.
pub const MAX_VERTICES: usize = 64;

/// The three vertex orders of a planar forest.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Relation {
    /// `<`: `v < w` when `v` is a strict ancestor of `w`.
    Ancestor,
    /// `≪`: generated by `<`, right sibling before left sibling, and right
    /// root before left root.
    Planar,
    /// `⋘`: the right-to-left depth-first exploration order.
    Total,
}

/// A planar forest flattened into vertices addressed by their `⋘`-rank,
/// together with the relation tables.
#[derive(Clone, Debug)]
pub struct PosetView {
    letters: Vec<Letter>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    roots: Vec<usize>,
    planar_pos: Vec<usize>,
    pred_lt: Vec<u64>,
    pred_ll: Vec<u64>,
}

#[inline]
fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Iterates the indices of set bits.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// Builds the poset view of `f`.
///
/// # Panics
/// If `f` has more than [`MAX_VERTICES`] vertices.
pub fn order_relations(f: &PlanarForest) -> PosetView {
    PosetView::new(f)
}

impl PosetView {
    pub fn new(f: &PlanarForest) -> Self {
        let n = crate::algebra::Graded::degree(f);
        assert!(n <= MAX_VERTICES, "forest has {n} vertices, at most {MAX_VERTICES} supported");
        let mut view = Self {
            letters: Vec::with_capacity(n),
            parent: Vec::with_capacity(n),
            children: Vec::with_capacity(n),
            roots: Vec::new(),
            planar_pos: vec![0; n],
            pred_lt: vec![0; n],
            pred_ll: vec![0; n],
        };
        let mut roots: Vec<usize> = f
            .trees()
            .iter()
            .rev()
            .map(|t| view.visit(t, None))
            .collect();
        roots.reverse();
        view.roots = roots;

        let mut counter = 0;
        for r in view.roots.clone() {
            view.number_planar(r, &mut counter);
        }

        // Siblings strictly to the right of each vertex.
        let mut right = vec![0u64; n];
        let mut fill = |list: &[usize]| {
            let mut acc = 0u64;
            for &c in list.iter().rev() {
                right[c] = acc;
                acc |= bit(c);
            }
        };
        fill(&view.roots);
        for v in 0..n {
            fill(&view.children[v]);
        }
        let mut acc_right = vec![0u64; n];
        for w in 0..n {
            match view.parent[w] {
                Some(p) => {
                    view.pred_lt[w] = view.pred_lt[p] | bit(p);
                    acc_right[w] = acc_right[p] | right[w];
                }
                None => acc_right[w] = right[w],
            }
            view.pred_ll[w] = view.pred_lt[w] | acc_right[w];
        }
        view
    }

    fn visit(&mut self, t: &PlanarTree, parent: Option<usize>) -> usize {
        let v = self.letters.len();
        self.letters.push(t.root().clone());
        self.parent.push(parent);
        self.children.push(Vec::new());
        let mut kids: Vec<usize> = t
            .children()
            .iter()
            .rev()
            .map(|c| self.visit(c, Some(v)))
            .collect();
        kids.reverse();
        self.children[v] = kids;
        v
    }

    fn number_planar(&mut self, v: usize, counter: &mut usize) {
        self.planar_pos[v] = *counter;
        *counter += 1;
        for c in self.children[v].clone() {
            self.number_planar(c, counter);
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letter(&self, v: usize) -> &Letter {
        &self.letters[v]
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// Children of `v`, left to right.
    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Roots, left to right.
    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    /// Position of `v` in the left-to-right preorder.
    pub fn planar_position(&self, v: usize) -> usize {
        self.planar_pos[v]
    }

    pub fn full_mask(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            bit(self.len()) - 1
        }
    }

    /// Bitmask of all `v` with `v rel w`.
    pub fn predecessors(&self, rel: Relation, w: usize) -> u64 {
        match rel {
            Relation::Ancestor => self.pred_lt[w],
            Relation::Planar => self.pred_ll[w],
            Relation::Total => bit(w) - 1,
        }
    }

    pub fn less(&self, rel: Relation, v: usize, w: usize) -> bool {
        self.predecessors(rel, w) & bit(v) != 0
    }

    /// All related pairs `(v, w)` with `v rel w`, sorted.
    pub fn pairs(&self, rel: Relation) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for v in 0..self.len() {
            for w in 0..self.len() {
                if self.less(rel, v, w) {
                    out.push((v, w));
                }
            }
        }
        out
    }

    /// The planar forest induced on a vertex subset: each kept vertex hangs
    /// from its nearest kept ancestor, and the original left-to-right order
    /// is preserved.
    pub fn induced_forest(&self, mask: u64) -> PlanarForest {
        let mut order: Vec<usize> = bits(mask).collect();
        order.sort_by_key(|&v| self.planar_pos[v]);
        let mut kids: HashMap<Option<usize>, Vec<usize>> = HashMap::new();
        for &v in &order {
            let mut p = self.parent[v];
            while let Some(q) = p {
                if mask & bit(q) != 0 {
                    break;
                }
                p = self.parent[q];
            }
            kids.entry(p).or_default().push(v);
        }
        fn build(view: &PosetView, v: usize, kids: &HashMap<Option<usize>, Vec<usize>>) -> PlanarTree {
            let children = kids
                .get(&Some(v))
                .map(|ks| ks.iter().map(|&c| build(view, c, kids)).collect())
                .unwrap_or_default();
            PlanarTree::new(view.letters[v].clone(), children)
        }
        PlanarForest::new(
            kids.get(&None)
                .map(|rs| rs.iter().map(|&r| build(self, r, &kids)).collect())
                .unwrap_or_default(),
        )
    }

    /// The whole forest with vertex `v` redecorated by `letters[v]`.
    pub fn relabeled(&self, letters: &[Letter]) -> PlanarForest {
        assert_eq!(letters.len(), self.len(), "one letter per vertex");
        let mut view = self.clone();
        view.letters = letters.to_vec();
        view.induced_forest(view.full_mask())
    }

    /// Connected components of the comparability graph of `rel` restricted
    /// to `mask`, each as a bitmask, ordered by lowest rank.
    pub fn components(&self, rel: Relation, mask: u64) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for start in bits(mask) {
            if seen & bit(start) != 0 {
                continue;
            }
            let mut comp = bit(start);
            let mut frontier = vec![start];
            while let Some(v) = frontier.pop() {
                let mut nb = self.predecessors(rel, v) & mask;
                for w in bits(mask) {
                    if self.less(rel, v, w) {
                        nb |= bit(w);
                    }
                }
                for w in bits(nb & !comp) {
                    comp |= bit(w);
                    frontier.push(w);
                }
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// All down-sets (order ideals) of `rel`, as bitmasks.
    pub fn down_sets(&self, rel: Relation) -> Vec<u64> {
        let mut out = Vec::new();
        self.down_sets_rec(rel, 0, 0, &mut out);
        out
    }

    fn down_sets_rec(&self, rel: Relation, v: usize, current: u64, out: &mut Vec<u64>) {
        if v == self.len() {
            out.push(current);
            return;
        }
        // Ranks extend every relation, so predecessors of v are already decided.
        self.down_sets_rec(rel, v + 1, current, out);
        if self.predecessors(rel, v) & !current == 0 {
            self.down_sets_rec(rel, v + 1, current | bit(v), out);
        }
    }

    /// Number of linear extensions of `rel`.
    pub fn linear_extension_count(&self, rel: Relation) -> BigUint {
        let mut counts: HashMap<u64, BigUint> = HashMap::new();
        counts.insert(0, BigUint::one());
        let mut layer = vec![0u64];
        for _ in 0..self.len() {
            let mut next: HashMap<u64, BigUint> = HashMap::new();
            for s in &layer {
                let c = counts[s].clone();
                for v in 0..self.len() {
                    if s & bit(v) == 0 && self.predecessors(rel, v) & !s == 0 {
                        *next.entry(s | bit(v)).or_insert_with(BigUint::zero) += &c;
                    }
                }
            }
            layer = next.keys().copied().collect();
            counts.extend(next);
        }
        counts.remove(&self.full_mask()).unwrap_or_else(BigUint::one)
    }

    /// Every linear extension of `rel`, as vertex sequences listed from the
    /// least element upwards.
    pub fn linear_extensions(&self, rel: Relation) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut seq = Vec::with_capacity(self.len());
        self.extensions_rec(rel, 0, &mut seq, &mut out);
        out
    }

    fn extensions_rec(&self, rel: Relation, placed: u64, seq: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if seq.len() == self.len() {
            out.push(seq.clone());
            return;
        }
        for v in 0..self.len() {
            if placed & bit(v) == 0 && self.predecessors(rel, v) & !placed == 0 {
                seq.push(v);
                self.extensions_rec(rel, placed | bit(v), seq, out);
                seq.pop();
            }
        }
    }
}
