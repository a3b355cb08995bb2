use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;

use super::{forget_planarity, NonplanarForest, NonplanarTree, PlanarForest, PlanarTree};
use crate::algebra::factorial;

/// Planar forest factorial, by `σ! = |σ₁|·|σ₁σ₂|⋯|σ₁⋯σ_k| · τ₁!⋯τ_k!`
/// where `σ_j = B⁺(τ_j)`.
pub fn planar_factorial(f: &PlanarForest) -> BigUint {
    let mut acc = BigUint::one();
    let mut prefix = 0usize;
    for t in f.trees() {
        prefix += t.degree();
        acc *= prefix;
        acc *= planar_factorial(&t.branches());
    }
    acc
}

/// Tree factorial: product of subtree sizes over all vertices.
pub fn nonplanar_factorial(f: &NonplanarForest) -> BigUint {
    fn hook(t: &NonplanarTree) -> (usize, BigUint) {
        let mut size = 1;
        let mut prod = BigUint::one();
        for c in t.children() {
            let (s, p) = hook(c);
            size += s;
            prod *= p;
        }
        (size, prod * size)
    }
    f.trees().iter().map(|t| hook(t).1).product()
}

fn class_factor<T: Ord>(items: &[T]) -> BigUint {
    let mut counts: BTreeMap<&T, usize> = BTreeMap::new();
    for x in items {
        *counts.entry(x).or_default() += 1;
    }
    counts.values().map(|&m| factorial(m)).product()
}

fn tree_symmetry(t: &NonplanarTree) -> BigUint {
    class_factor(t.children()) * t.children().iter().map(tree_symmetry).product::<BigUint>()
}

/// Order of the automorphism group of a non-planar forest.
pub fn nonplanar_symmetry(f: &NonplanarForest) -> BigUint {
    class_factor(f.trees()) * f.trees().iter().map(tree_symmetry).product::<BigUint>()
}

/// Number of sibling orderings of the underlying non-planar forest that
/// produce the planar forest `f`. Every planar representative of a given
/// non-planar forest receives the same count, the order of its
/// automorphism group.
pub fn symmetry_factor(f: &PlanarForest) -> BigUint {
    nonplanar_symmetry(&forget_planarity(f))
}

/// Distinct permutations of a sorted slice, in lexicographic order.
fn multiset_permutations<T: Ord + Clone>(items: &[T]) -> Vec<Vec<T>> {
    let mut cur: Vec<T> = items.to_vec();
    cur.sort();
    let mut out = vec![cur.clone()];
    loop {
        let n = cur.len();
        if n < 2 {
            return out;
        }
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

fn product_of<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for options in choices {
        let mut next = Vec::with_capacity(out.len() * options.len());
        for prefix in &out {
            for o in options {
                let mut p = prefix.clone();
                p.push(o.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn arrangements(trees: &[NonplanarTree]) -> Vec<Vec<PlanarTree>> {
    let mut out = Vec::new();
    for perm in multiset_permutations(trees) {
        let choices: Vec<Vec<PlanarTree>> = perm.iter().map(tree_representatives).collect();
        out.extend(product_of(&choices));
    }
    out
}

fn tree_representatives(t: &NonplanarTree) -> Vec<PlanarTree> {
    arrangements(t.children())
        .into_iter()
        .map(|children| PlanarTree::new(t.root().clone(), children))
        .collect()
}

/// The distinct planar forests whose non-planar shape is `f`.
pub fn planar_representatives(f: &NonplanarForest) -> Vec<PlanarForest> {
    arrangements(f.trees())
        .into_iter()
        .map(PlanarForest::new)
        .collect()
}
