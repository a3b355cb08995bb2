//! The shuffle, quasi-shuffle, Butcher–Connes–Kreimer and
//! Munthe-Kaas–Wright Hopf algebras, grafting and Grossman–Larson products.

mod axioms;
mod bck;
mod graft;
mod mkw;
mod quasi;
mod shuffle;

use std::collections::HashMap;
use std::fmt::Display;
use std::hash::Hash;
use std::sync::Arc;

use crate::algebra::{Graded, LinearFunctional, Series};

pub use axioms::{check_hopf_axioms, AxiomReport, Corrupted, Violation};
pub use bck::{bck_coproduct, bck_product, Bck};
pub use graft::{
    gl_product, gl_product_dual, gl_product_recursive, iterated_gl_word,
    iterated_gl_word_by_extensions, left_graft, left_graft_series, GlDualTable,
};
pub use mkw::{mkw_coproduct, mkw_product, Mkw};
pub use quasi::{quasi_shuffle, FreeCommutative, QuasiShuffle, Semigroup, SumTable};
pub use shuffle::{deconcat, shuffle, shuffle_sequences, Shuffle};

/// Element of `H ⊗ H` in the tensor basis.
pub type Tensor<B> = Series<(B, B)>;

/// A graded connected Hopf algebra given on a basis.
pub trait HopfAlgebra: Send + Sync {
    type Basis: Clone + Ord + Hash + Graded + Display + Send + Sync + 'static;

    fn name(&self) -> String;
    fn one(&self) -> Self::Basis;
    fn product(&self, x: &Self::Basis, y: &Self::Basis) -> Series<Self::Basis>;
    fn coproduct(&self, x: &Self::Basis) -> Tensor<Self::Basis>;
    /// All basis elements of degree `n`.
    fn basis(&self, n: usize) -> Vec<Self::Basis>;
    fn is_commutative(&self) -> bool;
}

pub fn product_series<H: HopfAlgebra + ?Sized>(
    h: &H,
    u: &Series<H::Basis>,
    v: &Series<H::Basis>,
) -> Series<H::Basis> {
    u.bilinear(v, |x, y| h.product(x, y))
}

pub fn coproduct_series<H: HopfAlgebra + ?Sized>(h: &H, u: &Series<H::Basis>) -> Tensor<H::Basis> {
    u.map_linear(|x| h.coproduct(x))
}

/// Product in `H ⊗ H`: `(x₁⊗x₂)(y₁⊗y₂) = x₁y₁ ⊗ x₂y₂`.
pub fn tensor_product<H: HopfAlgebra + ?Sized>(
    h: &H,
    a: &Tensor<H::Basis>,
    b: &Tensor<H::Basis>,
) -> Tensor<H::Basis> {
    a.bilinear(b, |(x1, x2), (y1, y2)| {
        h.product(x1, y1)
            .bilinear(&h.product(x2, y2), |l, r| Series::single((l.clone(), r.clone())))
    })
}

/// `Δ(x) − x⊗1 − 1⊗x` for `x ≠ 1`.
pub fn reduced_coproduct<H: HopfAlgebra + ?Sized>(h: &H, x: &H::Basis) -> Tensor<H::Basis> {
    let one = h.one();
    h.coproduct(x)
        .into_terms()
        .filter(|((l, r), _)| *l != one && *r != one)
        .collect()
}

/// Antipode with a caller-owned memo table.
pub fn antipode_memo<H: HopfAlgebra + ?Sized>(
    h: &H,
    x: &H::Basis,
    memo: &mut HashMap<H::Basis, Series<H::Basis>>,
) -> Series<H::Basis> {
    if let Some(s) = memo.get(x) {
        return s.clone();
    }
    let one = h.one();
    let out = if *x == one {
        Series::single(one)
    } else {
        let mut acc = Series::zero();
        for ((l, r), c) in h.coproduct(x).iter() {
            if *r == one {
                continue;
            }
            let sl = antipode_memo(h, l, memo);
            acc.add_scaled(&product_series(h, &sl, &Series::single(r.clone())), &-c.clone());
        }
        acc
    };
    memo.insert(x.clone(), out.clone());
    out
}

/// The antipode `S`, from `m(S⊗id)Δ = ηε`.
pub fn antipode<H: HopfAlgebra + ?Sized>(h: &H, x: &H::Basis) -> Series<H::Basis> {
    antipode_memo(h, x, &mut HashMap::new())
}

/// Convolution `(φ∗ψ)(x) = Σ φ(x₁)ψ(x₂)`; the cap is the smaller of the two.
pub fn convolution<H: HopfAlgebra + 'static>(
    h: Arc<H>,
    phi: &LinearFunctional<H::Basis>,
    psi: &LinearFunctional<H::Basis>,
) -> LinearFunctional<H::Basis> {
    let (phi, psi) = (phi.clone(), psi.clone());
    let cap = phi.cap().min(psi.cap());
    LinearFunctional::new(cap, move |x| {
        h.coproduct(x)
            .pair_with(|(l, r)| phi.raw(l) * psi.raw(r))
    })
}

/// Renders a tensor as `x ⊗ y + …`.
pub fn fmt_tensor<B: Ord + Display>(t: &Tensor<B>) -> String {
    t.render_with(|(l, r)| format!("{l} ⊗ {r}"), true)
}
