use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::matrix::{majority, Matrix};
use super::tree::{DecisionTree, TreeParams};
use crate::seed::splitmix64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomForest {
    pub trees: Vec<DecisionTree>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ForestParams {
    pub trees: usize,
    pub tree: TreeParams,
    pub bootstrap: bool,
}

/// Seed of tree `t` of a forest seeded with `seed`.
pub fn tree_seed(seed: u64, t: usize) -> u64 {
    splitmix64(seed.wrapping_add(t as u64))
}

impl RandomForest {
    pub fn fit(x: &Matrix, y: &[u8], params: ForestParams, seed: u64) -> Self {
        let n = x.rows();
        let trees = (0..params.trees.max(1))
            .into_par_iter()
            .map(|t| {
                let mut rng = ChaCha8Rng::seed_from_u64(tree_seed(seed, t));
                let idx: Vec<usize> = if params.bootstrap {
                    (0..n).map(|_| rng.random_range(0..n)).collect()
                } else {
                    (0..n).collect()
                };
                DecisionTree::fit(x, y, &idx, params.tree, Some(&mut rng))
            })
            .collect();
        RandomForest { trees }
    }

    pub fn predict(&self, q: &[f64]) -> u8 {
        let mut counts = [0usize; 6];
        for t in &self.trees {
            counts[t.predict(q) as usize] += 1;
        }
        majority(&counts)
    }
}
