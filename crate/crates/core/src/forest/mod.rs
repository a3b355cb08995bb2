//! Decorated planar rooted forests: the text grammar, enumeration, the
//! vertex orders `<`, `≪`, `⋘`, factorials and symmetry factors.

mod enumerate;
mod factorial;
mod letter;
mod montecarlo;
mod nonplanar;
mod planar;
mod poset;

pub use enumerate::{
    catalan, count_forests, enumerate_forests, enumerate_forests_capped, enumerate_forests_shard,
    enumerate_nonplanar, enumerate_trees, enumerate_words, DEFAULT_DEGREE_CAP,
};
pub use factorial::{
    nonplanar_factorial, nonplanar_symmetry, planar_factorial, planar_representatives,
    symmetry_factor,
};
pub use letter::{Letter, MAX_ALPHABET};
pub use montecarlo::{monte_carlo_volume, VolumeEstimate};
pub use nonplanar::{forget_planarity, NonplanarForest, NonplanarTree};
pub use planar::{b_plus, decompose, parse_forest, PlanarForest, PlanarTree};
pub use poset::{bits, order_relations, PosetView, Relation, MAX_VERTICES};
