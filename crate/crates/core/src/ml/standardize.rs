use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use crate::error::{Error, Result};

/// Per-feature z-score statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardizer {
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
}

impl Standardizer {
    pub fn fit(x: &Matrix) -> Result<Self> {
        let n = x.rows();
        if n < 2 {
            return Err(Error::EmptyMatrix(format!("standardization needs at least 2 rows, got {n}")));
        }
        let mut mean = vec![0.0; x.cols];
        for i in 0..n {
            for (m, v) in mean.iter_mut().zip(x.row(i)) {
                *m += v;
            }
        }
        mean.iter_mut().for_each(|m| *m /= n as f64);
        let mut var = vec![0.0; x.cols];
        for i in 0..n {
            for ((s, v), m) in var.iter_mut().zip(x.row(i)).zip(&mean) {
                *s += (v - m) * (v - m);
            }
        }
        let std = var.into_iter().map(|s| (s / n as f64).sqrt()).collect();
        Ok(Standardizer { mean, std })
    }

    pub fn apply_into(&self, row: &[f64], out: &mut Vec<f64>) {
        out.clear();
        out.extend(row.iter().zip(&self.mean).zip(&self.std).map(|((v, m), s)| {
            if *s > 0.0 && s.is_finite() {
                (v - m) / s
            } else {
                0.0
            }
        }));
    }

    pub fn apply(&self, row: &[f64]) -> Vec<f64> {
        let mut out = Vec::with_capacity(row.len());
        self.apply_into(row, &mut out);
        out
    }

    pub fn apply_matrix(&self, x: &Matrix) -> Matrix {
        let mut out = Matrix::new(x.cols);
        let mut buf = Vec::with_capacity(x.cols);
        for i in 0..x.rows() {
            self.apply_into(x.row(i), &mut buf);
            out.push(&buf);
        }
        out
    }
}
