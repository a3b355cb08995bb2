use std::collections::BTreeMap;

use num_traits::One;

use super::{deconcat, HopfAlgebra, Tensor};
use crate::algebra::{Rational, Series, Word};
use crate::forest::Letter;
use crate::{Error, Result};

/// An abelian semigroup structure on letters.
pub trait Semigroup: Send + Sync {
    fn sum(&self, a: &Letter, b: &Letter) -> Result<Letter>;
}

/// The free commutative semigroup: `[a+b]` is the multiset union.
#[derive(Clone, Copy, Debug)]
pub struct FreeCommutative {
    pub generators: usize,
}

impl FreeCommutative {
    pub fn new(generators: usize) -> Self {
        Self { generators }
    }

    /// Every element of weight `w`, i.e. every multiset of `w` generators.
    pub fn elements_of_weight(&self, w: usize) -> Vec<Letter> {
        fn go(start: usize, left: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Letter>) {
            if left == 0 {
                out.push(Letter::contracted(cur.iter().copied()));
                return;
            }
            for g in start..d {
                cur.push(g);
                go(g, left - 1, d, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if w > 0 {
            go(0, w, self.generators, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl Semigroup for FreeCommutative {
    fn sum(&self, a: &Letter, b: &Letter) -> Result<Letter> {
        Ok(a.merge(b))
    }
}

/// A finite, explicitly tabulated commutative sum.
#[derive(Clone, Debug, Default)]
pub struct SumTable {
    table: BTreeMap<(Letter, Letter), Letter>,
}

impl SumTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `a + b = c` (and `b + a = c`).
    pub fn insert(&mut self, a: Letter, b: Letter, c: Letter) {
        self.table.insert((b.clone(), a.clone()), c.clone());
        self.table.insert((a, b), c);
    }
}

impl Semigroup for SumTable {
    fn sum(&self, a: &Letter, b: &Letter) -> Result<Letter> {
        self.table
            .get(&(a.clone(), b.clone()))
            .cloned()
            .ok_or_else(|| Error::UndefinedSum(a.to_string(), b.to_string()))
    }
}

/// The quasi-shuffle product
/// `av ⧢̄ bw = a(v ⧢̄ bw) + b(av ⧢̄ w) + [a+b](v ⧢̄ w)`.
pub fn quasi_shuffle(v: &Word, w: &Word, semigroup: &dyn Semigroup) -> Result<Series<Word>> {
    fn go(
        a: &[Letter],
        b: &[Letter],
        s: &dyn Semigroup,
        prefix: &mut Vec<Letter>,
        out: &mut Series<Word>,
    ) -> Result<()> {
        if a.is_empty() || b.is_empty() {
            let mut w = prefix.clone();
            w.extend_from_slice(a);
            w.extend_from_slice(b);
            out.add_term(Word::new(w), Rational::one());
            return Ok(());
        }
        prefix.push(a[0].clone());
        go(&a[1..], b, s, prefix, out)?;
        prefix.pop();
        prefix.push(b[0].clone());
        go(a, &b[1..], s, prefix, out)?;
        prefix.pop();
        prefix.push(s.sum(&a[0], &b[0])?);
        go(&a[1..], &b[1..], s, prefix, out)?;
        prefix.pop();
        Ok(())
    }
    let mut out = Series::zero();
    go(v.letters(), w.letters(), semigroup, &mut Vec::new(), &mut out)?;
    Ok(out)
}

/// Quasi-shuffle Hopf algebra over the free commutative semigroup, graded
/// by total weight.
#[derive(Clone, Copy, Debug)]
pub struct QuasiShuffle {
    pub semigroup: FreeCommutative,
}

impl QuasiShuffle {
    pub fn new(generators: usize) -> Self {
        Self {
            semigroup: FreeCommutative::new(generators),
        }
    }
}

impl HopfAlgebra for QuasiShuffle {
    type Basis = Word;

    fn name(&self) -> String {
        "quasi-shuffle".into()
    }

    fn one(&self) -> Word {
        Word::empty()
    }

    fn product(&self, x: &Word, y: &Word) -> Series<Word> {
        quasi_shuffle(x, y, &self.semigroup).expect("free semigroup sums are total")
    }

    fn coproduct(&self, x: &Word) -> Tensor<Word> {
        deconcat(x)
    }

    fn basis(&self, n: usize) -> Vec<Word> {
        if n == 0 {
            return vec![Word::empty()];
        }
        let mut out = Vec::new();
        for first in 1..=n {
            for rest in self.basis(n - first) {
                for l in self.semigroup.elements_of_weight(first) {
                    out.push(Word::new(std::iter::once(l).chain(rest.letters().iter().cloned()).collect()));
                }
            }
        }
        out.sort();
        out
    }

    fn is_commutative(&self) -> bool {
        true
    }
}
