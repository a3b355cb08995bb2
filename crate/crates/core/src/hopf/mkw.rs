use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::{shuffle_sequences, HopfAlgebra, Tensor};
use crate::algebra::Series;
use crate::forest::{enumerate_forests_capped, order_relations, PlanarForest, Relation};

/// Shuffle of the tree sequences of two forests.
pub fn mkw_product(f: &PlanarForest, g: &PlanarForest) -> Series<PlanarForest> {
    shuffle_sequences(f.trees(), g.trees())
        .into_terms()
        .map(|(t, c)| (PlanarForest::new(t), c))
        .collect()
}

fn mkw_product_of_all(parts: &[PlanarForest]) -> Series<PlanarForest> {
    parts.iter().fold(Series::single(PlanarForest::unit()), |acc, p| {
        acc.map_linear(|x| mkw_product(x, p))
    })
}

/// Left-admissible cut coproduct: for each `≪`-down-set `V''`, the induced
/// forest on `V''` goes right and the shuffle of the `≪`-components of the
/// complement goes left.
pub fn mkw_coproduct(f: &PlanarForest) -> Tensor<PlanarForest> {
    let view = order_relations(f);
    let full = view.full_mask();
    let mut out = Series::zero();
    for lower in view.down_sets(Relation::Planar) {
        let right = view.induced_forest(lower);
        let parts: Vec<PlanarForest> = view
            .components(Relation::Planar, full & !lower)
            .into_iter()
            .map(|c| view.induced_forest(c))
            .collect();
        for (left, c) in mkw_product_of_all(&parts).into_terms() {
            out.add_term((left, right.clone()), c);
        }
    }
    out
}

/// The Munthe-Kaas–Wright Hopf algebra of planar forests over `d` letters.
/// Coproducts are memoized in a shared cache.
#[derive(Clone, Debug)]
pub struct Mkw {
    pub alphabet: usize,
    cache: Arc<RwLock<HashMap<PlanarForest, Tensor<PlanarForest>>>>,
}

impl Mkw {
    pub fn new(alphabet: usize) -> Self {
        Self {
            alphabet,
            cache: Arc::default(),
        }
    }
}

impl HopfAlgebra for Mkw {
    type Basis = PlanarForest;

    fn name(&self) -> String {
        "mkw".into()
    }

    fn one(&self) -> PlanarForest {
        PlanarForest::unit()
    }

    fn product(&self, x: &PlanarForest, y: &PlanarForest) -> Series<PlanarForest> {
        mkw_product(x, y)
    }

    fn coproduct(&self, x: &PlanarForest) -> Tensor<PlanarForest> {
        if let Some(t) = self.cache.read().expect("cache poisoned").get(x) {
            return t.clone();
        }
        let t = mkw_coproduct(x);
        self.cache
            .write()
            .expect("cache poisoned")
            .insert(x.clone(), t.clone());
        t
    }

    fn basis(&self, n: usize) -> Vec<PlanarForest> {
        enumerate_forests_capped(n, self.alphabet, usize::MAX).expect("no cap")
    }

    fn is_commutative(&self) -> bool {
        false
    }
}
