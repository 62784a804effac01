use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::matrix::Matrix;

/// Stored (already standardized) training points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Knn {
    pub k: usize,
    pub points: Vec<Vec<f64>>,
    pub labels: Vec<u8>,
}

impl Knn {
    pub fn fit(k: usize, x: &Matrix, y: &[u8]) -> Self {
        Knn {
            k: k.max(1),
            points: (0..x.rows()).map(|i| x.row(i).to_vec()).collect(),
            labels: y.to_vec(),
        }
    }

    /// Nearest training indices by (distance, index), closest first.
    fn neighbours(&self, q: &[f64], k: usize) -> Vec<usize> {
        let mut d: Vec<(f64, usize)> = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum::<f64>(), i))
            .collect();
        let k = k.min(d.len());
        let cmp = |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
        if k < d.len() {
            d.select_nth_unstable_by(k, cmp);
            d.truncate(k);
        }
        d.sort_by(cmp);
        d.into_iter().map(|(_, i)| i).collect()
    }

    fn vote(&self, idx: &[usize]) -> u8 {
        let mut counts = [0usize; 6];
        for &i in idx {
            counts[self.labels[i] as usize] += 1;
        }
        super::matrix::majority(&counts)
    }

    pub fn predict(&self, q: &[f64]) -> u8 {
        self.vote(&self.neighbours(q, self.k))
    }

    /// Predictions for several `k` at once, sharing the neighbour search.
    pub fn predict_many_k(&self, x: &Matrix, ks: &[usize]) -> Vec<Vec<u8>> {
        let kmax = ks.iter().copied().max().unwrap_or(1);
        let per_row: Vec<Vec<u8>> = (0..x.rows())
            .into_par_iter()
            .map(|i| {
                let nb = self.neighbours(x.row(i), kmax);
                ks.iter().map(|&k| self.vote(&nb[..k.min(nb.len())])).collect()
            })
            .collect();
        (0..ks.len()).map(|j| per_row.iter().map(|r| r[j]).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_nn_memorizes() {
        let x = Matrix::from_rows(1, [[0.0].as_slice(), &[1.0], &[2.0], &[3.0]]);
        let y = [0, 3, 5, 1];
        let m = Knn::fit(1, &x, &y);
        for i in 0..4 {
            assert_eq!(m.predict(x.row(i)), y[i]);
        }
    }

    #[test]
    fn vote_ties_go_low() {
        let x = Matrix::from_rows(1, [[0.0].as_slice(), &[1.0]]);
        let m = Knn::fit(2, &x, &[4, 2]);
        assert_eq!(m.predict(&[0.0]), 2);
        assert_eq!(m.predict_many_k(&x, &[1, 2]), vec![vec![4, 2], vec![2, 2]]);
    }
}
