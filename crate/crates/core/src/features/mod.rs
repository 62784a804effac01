//! Polynomial-set descriptors: a 384-feature grammar, its action under
//! variable renaming, and a linear-dependence filter.
//!
//! A schema is a list of variable-free [`Shape`]s evaluated once per
//! variable. Feature vectors are laid out in three equal blocks, one per
//! variable (`x1` block first), each listing the shapes in schema order.
//! Renaming variables therefore permutes whole blocks.

mod descriptor;
mod filter;
mod io;

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::smtlib::ProblemInstance;
use crate::symmetry::{Variable, VariablePermutation};

pub use descriptor::{Aggregate, Base, Descriptor, Shape};
pub use filter::{fit_distinct_filter, RANK_TOLERANCE};
pub use io::{format_value, read_feature_csv, write_feature_csv, FeatureRow};

/// Ordered descriptor list, block-symmetric by construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureSchema {
    shapes: Vec<Shape>,
}

impl FeatureSchema {
    /// The full grammar: 128 shapes, 384 descriptors.
    pub fn raw() -> Self {
        FeatureSchema { shapes: Shape::all() }
    }

    pub fn from_shapes(shapes: Vec<Shape>) -> Self {
        FeatureSchema { shapes }
    }

    pub fn shapes(&self) -> &[Shape] {
        &self.shapes
    }

    /// Number of features (three per shape).
    pub fn len(&self) -> usize {
        3 * self.shapes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }

    /// Position of shape number `shape` evaluated at `v`.
    #[inline]
    pub fn position(&self, shape: usize, v: Variable) -> usize {
        v.pos() * self.shapes.len() + shape
    }

    /// Feature positions of each shape's orbit, as `[x1, x2, x3]`.
    pub fn orbit_index(&self) -> Vec<[usize; 3]> {
        (0..self.shapes.len())
            .map(|s| Variable::ALL.map(|v| self.position(s, v)))
            .collect()
    }

    pub fn descriptors(&self) -> impl Iterator<Item = Descriptor> + '_ {
        Variable::ALL
            .into_iter()
            .flat_map(move |v| self.shapes.iter().map(move |s| s.at(v)))
    }

    pub fn check_len(&self, got: usize) -> Result<()> {
        if got != self.len() {
            return Err(Error::SchemaMismatch {
                expected: self.len(),
                got,
            });
        }
        Ok(())
    }

    /// Picks this schema's columns out of a vector laid out by `source`.
    pub fn select_from<T: Clone>(&self, source: &FeatureSchema, values: &[T]) -> Result<Vec<T>> {
        source.check_len(values.len())?;
        let index: HashMap<Shape, usize> = source.shapes.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut out = Vec::with_capacity(self.len());
        for v in Variable::ALL {
            for s in &self.shapes {
                let i = index
                    .get(s)
                    .ok_or_else(|| Error::Data(format!("shape {s} missing from source schema")))?;
                out.push(values[source.position(*i, v)].clone());
            }
        }
        Ok(out)
    }

    /// JSON sidecar listing every descriptor in order.
    pub fn to_json(&self) -> Result<String> {
        let descriptors: Vec<Descriptor> = self.descriptors().collect();
        Ok(serde_json::to_string_pretty(&SchemaFile { descriptors })?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SchemaFile = serde_json::from_str(text)?;
        let n = file.descriptors.len();
        if n % 3 != 0 {
            return Err(Error::Data(format!("schema length {n} is not a multiple of 3")));
        }
        let shapes: Vec<Shape> = file.descriptors[..n / 3].iter().map(|d| d.shape).collect();
        let schema = FeatureSchema { shapes };
        if schema.descriptors().ne(file.descriptors.iter().copied()) {
            return Err(Error::Data("schema descriptors are not block-symmetric".into()));
        }
        Ok(schema)
    }
}

#[derive(Serialize, Deserialize)]
struct SchemaFile {
    descriptors: Vec<Descriptor>,
}

/// Feature values of one instance, as floats.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub instance_id: String,
    pub values: Vec<f64>,
}

/// Exact value of one descriptor on an instance.
pub fn evaluate_descriptor(instance: &ProblemInstance, d: &Descriptor) -> BigRational {
    d.evaluate(instance.polynomials())
}

/// Exact feature values of `instance` under `schema`.
pub fn featurize_exact(instance: &ProblemInstance, schema: &FeatureSchema) -> Vec<BigRational> {
    schema.descriptors().map(|d| evaluate_descriptor(instance, &d)).collect()
}

pub fn featurize(instance: &ProblemInstance, schema: &FeatureSchema) -> FeatureVector {
    FeatureVector {
        instance_id: instance.id.clone(),
        values: featurize_exact(instance, schema)
            .iter()
            .map(|x| x.to_f64().expect("feature values are finite"))
            .collect(),
    }
}

/// Moves the value of shape `s` at variable `v` to position `(s, σ(v))`.
pub fn permute_values<T: Clone>(values: &[T], sigma: &VariablePermutation, schema: &FeatureSchema) -> Result<Vec<T>> {
    schema.check_len(values.len())?;
    let n = schema.shapes.len();
    let mut out = values.to_vec();
    for v in Variable::ALL {
        let (src, dst) = (v.pos() * n, sigma.apply(v).pos() * n);
        out[dst..dst + n].clone_from_slice(&values[src..src + n]);
    }
    Ok(out)
}

pub fn permute_feature_vector(
    fv: &FeatureVector,
    sigma: &VariablePermutation,
    schema: &FeatureSchema,
) -> Result<FeatureVector> {
    Ok(FeatureVector {
        instance_id: fv.instance_id.clone(),
        values: permute_values(&fv.values, sigma, schema)?,
    })
}
