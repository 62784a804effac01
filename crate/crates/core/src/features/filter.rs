//! Orbit-wise removal of affinely dependent features.

use super::FeatureSchema;
use crate::error::{Error, Result};
use crate::symmetry::Variable;

/// Relative residual below which a column counts as dependent.
pub const RANK_TOLERANCE: f64 = 1e-9;

/// Orthonormal basis grown one column at a time.
struct Basis {
    vectors: Vec<Vec<f64>>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl Basis {
    /// Component of `col` orthogonal to the basis (two Gram-Schmidt sweeps).
    fn residual(&self, col: &[f64]) -> Vec<f64> {
        let mut r = col.to_vec();
        for _ in 0..2 {
            for b in &self.vectors {
                let c = dot(b, &r);
                r.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        r
    }

    /// Whether `col` lies outside the span, and its normalized residual.
    fn test(&self, col: &[f64], tol: f64) -> Option<Vec<f64>> {
        let norm = dot(col, col).sqrt();
        if norm == 0.0 {
            return None;
        }
        let mut r = self.residual(col);
        let rn = dot(&r, &r).sqrt();
        if rn <= tol * norm {
            return None;
        }
        r.iter_mut().for_each(|x| *x /= rn);
        Some(r)
    }
}

/// Keeps the shapes of `schema` that add rank over the constant column and
/// the shapes kept before them, judged on `rows`.
///
/// Shapes are scanned in schema order and decided for all three variables
/// at once: a shape survives when any of its three columns is independent,
/// so the result stays block-symmetric.
pub fn fit_distinct_filter(schema: &FeatureSchema, rows: &[Vec<f64>], tol: f64) -> Result<FeatureSchema> {
    if rows.len() < 2 {
        return Err(Error::EmptyMatrix(format!(
            "need at least 2 rows to fit the feature filter, got {}",
            rows.len()
        )));
    }
    for r in rows {
        schema.check_len(r.len())?;
    }
    let n = rows.len() as f64;
    let mut basis = Basis {
        vectors: vec![vec![1.0 / n.sqrt(); rows.len()]],
    };
    let mut kept = Vec::new();
    for (s, shape) in schema.shapes().iter().enumerate() {
        let cols: Vec<Vec<f64>> = Variable::ALL
            .iter()
            .map(|&v| {
                let j = schema.position(s, v);
                rows.iter().map(|r| r[j]).collect()
            })
            .collect();
        if !cols.iter().any(|c| basis.test(c, tol).is_some()) {
            continue;
        }
        kept.push(*shape);
        for c in &cols {
            if let Some(r) = basis.test(c, tol) {
                basis.vectors.push(r);
            }
        }
    }
    Ok(FeatureSchema::from_shapes(kept))
}
