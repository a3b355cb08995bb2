use num_traits::One;

use super::{HopfAlgebra, Tensor};
use crate::algebra::{Rational, Series};
use crate::forest::{enumerate_nonplanar, forget_planarity, order_relations, NonplanarForest, Relation};

/// Disjoint union.
pub fn bck_product(f: &NonplanarForest, g: &NonplanarForest) -> Series<NonplanarForest> {
    Series::single(f.union(g))
}

/// Admissible cuts: for each `<`-down-set (trunk) the pruned branches go
/// left and the trunk goes right.
pub fn bck_coproduct(f: &NonplanarForest) -> Tensor<NonplanarForest> {
    let view = order_relations(&f.to_planar());
    let full = view.full_mask();
    view.down_sets(Relation::Ancestor)
        .into_iter()
        .map(|trunk| {
            let pruned = forget_planarity(&view.induced_forest(full & !trunk));
            let kept = forget_planarity(&view.induced_forest(trunk));
            ((pruned, kept), Rational::one())
        })
        .collect()
}

/// The Butcher–Connes–Kreimer Hopf algebra of non-planar forests.
#[derive(Clone, Copy, Debug)]
pub struct Bck {
    pub alphabet: usize,
}

impl Bck {
    pub fn new(alphabet: usize) -> Self {
        Self { alphabet }
    }
}

impl HopfAlgebra for Bck {
    type Basis = NonplanarForest;

    fn name(&self) -> String {
        "bck".into()
    }

    fn one(&self) -> NonplanarForest {
        NonplanarForest::unit()
    }

    fn product(&self, x: &NonplanarForest, y: &NonplanarForest) -> Series<NonplanarForest> {
        bck_product(x, y)
    }

    fn coproduct(&self, x: &NonplanarForest) -> Tensor<NonplanarForest> {
        bck_coproduct(x)
    }

    fn basis(&self, n: usize) -> Vec<NonplanarForest> {
        enumerate_nonplanar(n, self.alphabet).expect("degree within cap")
    }

    fn is_commutative(&self) -> bool {
        true
    }
}
