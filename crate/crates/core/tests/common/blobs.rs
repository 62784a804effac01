use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cad_augment::dataset::{Dataset, Provenance, Role, Row};
use cad_augment::features::{FeatureSchema, Shape};
use cad_augment::OrderingLabel;

/// Six Gaussian-ish blobs in 3 * `shapes` dimensions; centers sit 10 apart
/// along distinct axes, noise is uniform in [-1, 1].
pub fn blobs(n: usize, shapes: usize, seed: u64, prefix: &str) -> Dataset {
    let schema = FeatureSchema::from_shapes(Shape::all()[..shapes].to_vec());
    let d = schema.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..n)
        .map(|i| {
            let c = i % 6;
            let features = (0..d)
                .map(|j| {
                    let center = if j % 6 == c { 10.0 } else { 0.0 };
                    center + rng.random_range(-1.0..1.0)
                })
                .collect();
            Row {
                id: format!("{prefix}{i:04}"),
                features,
                label: OrderingLabel::ALL[c],
            }
        })
        .collect();
    Dataset::new(rows, Provenance::Unbalanced, Role::Train, schema).unwrap()
}
