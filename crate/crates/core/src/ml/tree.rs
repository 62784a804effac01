use rand::seq::index::sample;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::matrix::{majority, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Node {
    Leaf { label: u8 },
    Split { feature: usize, threshold: f64, left: usize, right: usize },
}

/// CART classification tree with Gini impurity. Rows with
/// `x[feature] <= threshold` go left.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionTree {
    pub nodes: Vec<Node>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeParams {
    pub max_depth: Option<usize>,
    pub min_leaf: usize,
    /// Features tried per split; `None` tries all of them in order.
    pub max_features: Option<usize>,
}

struct Builder<'a> {
    x: &'a Matrix,
    y: &'a [u8],
    params: TreeParams,
    rng: Option<&'a mut ChaCha8Rng>,
    nodes: Vec<Node>,
    pairs: Vec<(f64, u8)>,
}

struct Best {
    score: f64,
    feature: usize,
    threshold: f64,
}

fn class_counts(y: &[u8], idx: &[usize]) -> [usize; 6] {
    let mut c = [0usize; 6];
    for &i in idx {
        c[y[i] as usize] += 1;
    }
    c
}

fn purity(counts: &[usize; 6], n: usize) -> f64 {
    counts.iter().map(|&c| (c * c) as f64).sum::<f64>() / n as f64
}

impl Builder<'_> {
    fn build(&mut self, idx: &mut [usize], depth: usize) -> usize {
        let counts = class_counts(self.y, idx);
        let n = idx.len();
        let id = self.nodes.len();
        self.nodes.push(Node::Leaf { label: majority(&counts) });
        let pure = counts.iter().filter(|&&c| c > 0).count() <= 1;
        let depth_ok = self.params.max_depth.is_none_or(|d| depth < d);
        if pure || !depth_ok || n < 2 * self.params.min_leaf.max(1) {
            return id;
        }
        let Some(best) = self.best_split(idx, purity(&counts, n)) else {
            return id;
        };
        let mut mid = 0;
        for i in 0..n {
            if self.x.get(idx[i], best.feature) <= best.threshold {
                idx.swap(i, mid);
                mid += 1;
            }
        }
        let (l, r) = idx.split_at_mut(mid);
        let left = self.build(l, depth + 1);
        let right = self.build(r, depth + 1);
        self.nodes[id] = Node::Split {
            feature: best.feature,
            threshold: best.threshold,
            left,
            right,
        };
        id
    }

    fn candidate_features(&mut self) -> Vec<usize> {
        let d = self.x.cols;
        match (self.params.max_features, self.rng.as_deref_mut()) {
            (Some(m), Some(rng)) if m < d => {
                let mut f = sample(rng, d, m).into_vec();
                f.sort_unstable();
                f
            }
            _ => (0..d).collect(),
        }
    }

    fn best_split(&mut self, idx: &[usize], parent: f64) -> Option<Best> {
        let n = idx.len();
        let min_leaf = self.params.min_leaf.max(1);
        let total = class_counts(self.y, idx);
        let mut best: Option<Best> = None;
        for f in self.candidate_features() {
            self.pairs.clear();
            self.pairs.extend(idx.iter().map(|&i| (self.x.get(i, f), self.y[i])));
            self.pairs.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            let mut left = [0usize; 6];
            let (mut sl, mut sr) = (0f64, total.iter().map(|&c| (c * c) as f64).sum::<f64>());
            for i in 0..n - 1 {
                let c = self.pairs[i].1 as usize;
                sl += (2 * left[c] + 1) as f64;
                sr -= (2 * (total[c] - left[c]) - 1) as f64;
                left[c] += 1;
                let (a, b) = (self.pairs[i].0, self.pairs[i + 1].0);
                let nl = i + 1;
                if a == b || nl < min_leaf || n - nl < min_leaf {
                    continue;
                }
                let score = sl / nl as f64 + sr / (n - nl) as f64;
                if score > parent + 1e-12 && best.as_ref().is_none_or(|bb| score > bb.score) {
                    let mut t = a + (b - a) / 2.0;
                    if t >= b {
                        t = a;
                    }
                    best = Some(Best {
                        score,
                        feature: f,
                        threshold: t,
                    });
                }
            }
        }
        best
    }
}

impl DecisionTree {
    pub fn fit(x: &Matrix, y: &[u8], idx: &[usize], params: TreeParams, rng: Option<&mut ChaCha8Rng>) -> Self {
        let mut b = Builder {
            x,
            y,
            params,
            rng,
            nodes: Vec::new(),
            pairs: Vec::with_capacity(idx.len()),
        };
        let mut idx = idx.to_vec();
        b.build(&mut idx, 0);
        DecisionTree { nodes: b.nodes }
    }

    pub fn predict(&self, q: &[f64]) -> u8 {
        let mut at = 0;
        loop {
            match self.nodes[at] {
                Node::Leaf { label } => return label,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => at = if q[feature] <= threshold { left } else { right },
            }
        }
    }

    /// Edges on the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        fn go(nodes: &[Node], at: usize) -> usize {
            match nodes[at] {
                Node::Leaf { .. } => 0,
                Node::Split { left, right, .. } => 1 + go(nodes, left).max(go(nodes, right)),
            }
        }
        go(&self.nodes, 0)
    }

    pub fn leaves(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, Node::Leaf { .. })).count()
    }
}
