use num_bigint::BigUint;

use super::{forget_planarity, Letter, NonplanarForest, PlanarForest, PlanarTree};
use crate::algebra::Word;
use crate::{Error, Result};

/// Default refusal threshold for exhaustive enumeration.
pub const DEFAULT_DEGREE_CAP: usize = 10;

/// Catalan number `C_n`, the number of planar forest shapes of degree `n`.
pub fn catalan(n: usize) -> BigUint {
    let mut c = BigUint::from(1u32);
    for k in 0..n as u64 {
        c = c * (2 * (2 * k + 1)) / (k + 2);
    }
    c
}

/// Number of decorated planar forests of degree `n` over `d` letters.
pub fn count_forests(n: usize, d: usize) -> BigUint {
    catalan(n) * num_traits::pow(BigUint::from(d), n)
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::DegreeCap { degree: n, cap })
    } else {
        Ok(())
    }
}

/// Trees and forests of every degree up to `n`, unsorted.
fn tables(n: usize, d: usize) -> (Vec<Vec<PlanarTree>>, Vec<Vec<PlanarForest>>) {
    let mut trees: Vec<Vec<PlanarTree>> = vec![Vec::new()];
    let mut forests: Vec<Vec<PlanarForest>> = vec![vec![PlanarForest::unit()]];
    for k in 1..=n {
        let mut tk = Vec::new();
        for a in 0..d {
            for f in &forests[k - 1] {
                tk.push(PlanarTree::new(Letter::new(a), f.trees().to_vec()));
            }
        }
        trees.push(tk);
        let mut fk = Vec::new();
        for first in 1..=k {
            for t in &trees[first] {
                for g in &forests[k - first] {
                    let mut v = Vec::with_capacity(g.num_trees() + 1);
                    v.push(t.clone());
                    v.extend(g.trees().iter().cloned());
                    fk.push(PlanarForest::new(v));
                }
            }
        }
        forests.push(fk);
    }
    (trees, forests)
}

fn sorted<T: ToString>(mut v: Vec<T>) -> Vec<T> {
    v.sort_by_cached_key(|x| x.to_string());
    v
}

/// All decorated planar forests of degree `n` over `d` letters, sorted by
/// their text form. Refuses degrees above [`DEFAULT_DEGREE_CAP`].
pub fn enumerate_forests(n: usize, d: usize) -> Result<Vec<PlanarForest>> {
    enumerate_forests_capped(n, d, DEFAULT_DEGREE_CAP)
}

pub fn enumerate_forests_capped(n: usize, d: usize, cap: usize) -> Result<Vec<PlanarForest>> {
    check_cap(n, cap)?;
    let (_, mut forests) = tables(n, d);
    Ok(sorted(forests.swap_remove(n)))
}

/// All decorated planar trees of degree `n`.
pub fn enumerate_trees(n: usize, d: usize) -> Result<Vec<PlanarTree>> {
    check_cap(n, DEFAULT_DEGREE_CAP)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let (mut trees, _) = tables(n, d);
    Ok(sorted(trees.swap_remove(n)))
}

/// The slice of [`enumerate_forests`] whose first tree has degree `first`;
/// the slices for `first = 1..=n` partition the full list.
pub fn enumerate_forests_shard(n: usize, d: usize, first: usize) -> Result<Vec<PlanarForest>> {
    Ok(enumerate_forests(n, d)?
        .into_iter()
        .filter(|f| f.trees().first().map(PlanarTree::degree) == Some(first))
        .collect())
}

/// All decorated non-planar forests of degree `n`, sorted.
pub fn enumerate_nonplanar(n: usize, d: usize) -> Result<Vec<NonplanarForest>> {
    let set: std::collections::BTreeSet<NonplanarForest> =
        enumerate_forests(n, d)?.iter().map(forget_planarity).collect();
    Ok(sorted(set.into_iter().collect()))
}

/// All words of length `n` over `d` plain letters, in lexicographic order.
pub fn enumerate_words(n: usize, d: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * d);
        for w in &out {
            for a in 0..d {
                let mut w = w.clone();
                w.push(Letter::new(a));
                next.push(w);
            }
        }
        out = next;
    }
    out
}
