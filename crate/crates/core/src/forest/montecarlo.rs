use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{order_relations, PlanarForest, Relation};

/// Monte Carlo estimate with its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VolumeEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: u64,
}

/// Fraction of uniform points of `[0,1]^V` with `t_v ≥ t_w` whenever
/// `v rel w`; an unbiased estimate of the inverse factorial.
pub fn monte_carlo_volume(f: &PlanarForest, rel: Relation, samples: u64, seed: u64) -> VolumeEstimate {
    assert!(samples > 0, "at least one sample is required");
    let view = order_relations(f);
    let pairs = view.pairs(rel);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = vec![0.0f64; view.len()];
    let mut hits = 0u64;
    for _ in 0..samples {
        for x in t.iter_mut() {
            *x = rng.gen();
        }
        if pairs.iter().all(|&(v, w)| t[v] >= t[w]) {
            hits += 1;
        }
    }
    let p = hits as f64 / samples as f64;
    VolumeEstimate {
        estimate: p,
        stderr: (p * (1.0 - p) / samples as f64).sqrt(),
        samples,
    }
}
