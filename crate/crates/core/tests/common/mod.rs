#![allow(dead_code)]

use planar_rough::forest::{Letter, PlanarForest, PlanarTree};
use proptest::prelude::*;

/// Builds a planar forest from a parent list in preorder: entry `i` is
/// `None` for a new root or `Some(p)` with `p < i` to become the next
/// child of vertex `p`.
pub fn forest_from_parents(parents: &[(Option<usize>, usize)]) -> PlanarForest {
    let n = parents.len();
    let mut kids: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut roots = Vec::new();
    for (i, (p, _)) in parents.iter().enumerate() {
        match p {
            Some(p) => kids[*p].push(i),
            None => roots.push(i),
        }
    }
    fn build(v: usize, kids: &[Vec<usize>], parents: &[(Option<usize>, usize)]) -> PlanarTree {
        PlanarTree::new(
            Letter::new(parents[v].1),
            kids[v].iter().map(|&c| build(c, kids, parents)).collect(),
        )
    }
    PlanarForest::new(roots.iter().map(|&r| build(r, &kids, parents)).collect())
}

/// Random planar forests with `1..=max_n` vertices over `d` letters.
pub fn arb_forest(max_n: usize, d: usize) -> impl Strategy<Value = PlanarForest> {
    (1..=max_n)
        .prop_flat_map(move |n| {
            let steps: Vec<_> = (0..n)
                .map(|i| (proptest::option::of(0..i.max(1)), 0..d))
                .collect();
            steps
        })
        .prop_map(|raw| {
            let fixed: Vec<(Option<usize>, usize)> = raw
                .into_iter()
                .enumerate()
                .map(|(i, (p, a))| (if i == 0 { None } else { p }, a))
                .collect();
            forest_from_parents(&fixed)
        })
}

pub fn pf(s: &str) -> PlanarForest {
    PlanarForest::parse(s, 26).unwrap()
}

/// All permutations of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Every sibling reordering (roots included) of a planar forest, with
/// multiplicity.
pub fn all_orderings(trees: &[PlanarTree]) -> Vec<Vec<PlanarTree>> {
    let per_tree: Vec<Vec<PlanarTree>> = trees
        .iter()
        .map(|t| {
            all_orderings(t.children())
                .into_iter()
                .map(|c| PlanarTree::new(t.root().clone(), c))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for perm in permutations(trees.len()) {
        let mut partial: Vec<Vec<PlanarTree>> = vec![Vec::new()];
        for &i in &perm {
            let mut next = Vec::new();
            for pre in &partial {
                for t in &per_tree[i] {
                    let mut v = pre.clone();
                    v.push(t.clone());
                    next.push(v);
                }
            }
            partial = next;
        }
        out.extend(partial);
    }
    out
}
