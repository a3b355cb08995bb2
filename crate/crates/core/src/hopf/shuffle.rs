use num_traits::One;

use super::{HopfAlgebra, Tensor};
use crate::algebra::{Rational, Series, Word};
use crate::forest::enumerate_words;

/// All interleavings of `a` and `b`, with multiplicity.
pub fn shuffle_sequences<T: Clone + Ord>(a: &[T], b: &[T]) -> Series<Vec<T>> {
    fn go<T: Clone + Ord>(a: &[T], b: &[T], prefix: &mut Vec<T>, out: &mut Series<Vec<T>>) {
        if a.is_empty() || b.is_empty() {
            let mut w = prefix.clone();
            w.extend_from_slice(a);
            w.extend_from_slice(b);
            out.add_term(w, Rational::one());
            return;
        }
        prefix.push(a[0].clone());
        go(&a[1..], b, prefix, out);
        prefix.pop();
        prefix.push(b[0].clone());
        go(a, &b[1..], prefix, out);
        prefix.pop();
    }
    let mut out = Series::zero();
    go(a, b, &mut Vec::with_capacity(a.len() + b.len()), &mut out);
    out
}

/// The shuffle product of two words.
pub fn shuffle(v: &Word, w: &Word) -> Series<Word> {
    shuffle_sequences(v.letters(), w.letters())
        .into_terms()
        .map(|(k, c)| (Word::new(k), c))
        .collect()
}

/// Deconcatenation `Σ_{v'v''=w} v'⊗v''`.
pub fn deconcat(w: &Word) -> Tensor<Word> {
    (0..=w.len()).map(|k| (w.split_at(k), Rational::one())).collect()
}

/// Shuffle Hopf algebra over `d` letters.
#[derive(Clone, Copy, Debug)]
pub struct Shuffle {
    pub alphabet: usize,
}

impl Shuffle {
    pub fn new(alphabet: usize) -> Self {
        Self { alphabet }
    }
}

impl HopfAlgebra for Shuffle {
    type Basis = Word;

    fn name(&self) -> String {
        "shuffle".into()
    }

    fn one(&self) -> Word {
        Word::empty()
    }

    fn product(&self, x: &Word, y: &Word) -> Series<Word> {
        shuffle(x, y)
    }

    fn coproduct(&self, x: &Word) -> Tensor<Word> {
        deconcat(x)
    }

    fn basis(&self, n: usize) -> Vec<Word> {
        enumerate_words(n, self.alphabet)
    }

    fn is_commutative(&self) -> bool {
        true
    }
}
