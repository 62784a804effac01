//! Labelled feature datasets and their on-disk form.

use std::fmt;
use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{read_feature_csv, write_feature_csv, FeatureRow, FeatureSchema};
use crate::symmetry::{OrderingLabel, VariablePermutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Unbalanced,
    Balanced,
    Augmented,
}

impl Provenance {
    pub const ALL: [Provenance; 3] = [Provenance::Unbalanced, Provenance::Balanced, Provenance::Augmented];

    pub fn name(self) -> &'static str {
        match self {
            Provenance::Unbalanced => "unbalanced",
            Provenance::Balanced => "balanced",
            Provenance::Augmented => "augmented",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Provenance::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown provenance `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Train,
    Test,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Train => "train",
            Role::Test => "test",
        })
    }
}

/// One labelled example.
///
/// Ids of renamed images carry the accumulated permutation as a suffix,
/// `<instance>#<σ>`; the identity image has the bare instance id.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub id: String,
    pub features: Vec<f64>,
    pub label: OrderingLabel,
}

impl Row {
    /// Instance id and accumulated permutation of this row.
    pub fn origin(&self) -> (&str, VariablePermutation) {
        match self.id.rsplit_once('#') {
            Some((base, code)) => match VariablePermutation::from_code(code) {
                Some(sigma) => (base, sigma),
                None => (&self.id, VariablePermutation::IDENTITY),
            },
            None => (&self.id, VariablePermutation::IDENTITY),
        }
    }

    pub fn instance_id(&self) -> &str {
        self.origin().0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub rows: Vec<Row>,
    pub provenance: Provenance,
    pub role: Role,
    pub schema: FeatureSchema,
}

/// Metadata stored next to a dataset CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProvenanceSidecar {
    pub provenance: Provenance,
    pub role: Role,
    pub seed: Option<u64>,
    pub mode: Option<String>,
    pub rows: usize,
    pub class_counts: [usize; 6],
}

impl Dataset {
    pub fn new(rows: Vec<Row>, provenance: Provenance, role: Role, schema: FeatureSchema) -> Result<Self> {
        for r in &rows {
            if r.features.len() != schema.len() {
                return Err(Error::SchemaMismatch {
                    expected: schema.len(),
                    got: r.features.len(),
                });
            }
        }
        Ok(Dataset {
            rows,
            provenance,
            role,
            schema,
        })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn class_counts(&self) -> [usize; 6] {
        let mut counts = [0; 6];
        for r in &self.rows {
            counts[r.label.index()] += 1;
        }
        counts
    }

    pub fn labels(&self) -> Vec<OrderingLabel> {
        self.rows.iter().map(|r| r.label).collect()
    }

    /// Restricts every row to the columns of `target`, which must be a
    /// sub-schema of the current one.
    pub fn project(&self, target: &FeatureSchema) -> Result<Dataset> {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                Ok(Row {
                    id: r.id.clone(),
                    features: target.select_from(&self.schema, &r.features)?,
                    label: r.label,
                })
            })
            .collect::<Result<_>>()?;
        Dataset::new(rows, self.provenance, self.role, target.clone())
    }

    pub fn sidecar(&self, seed: Option<u64>, mode: Option<String>) -> ProvenanceSidecar {
        ProvenanceSidecar {
            provenance: self.provenance,
            role: self.role,
            seed,
            mode,
            rows: self.len(),
            class_counts: self.class_counts(),
        }
    }

    /// Writes `<stem>.csv`, `<stem>.schema.json` and `<stem>.provenance.json`.
    pub fn save(&self, csv_path: &Path, sidecar: &ProvenanceSidecar) -> Result<()> {
        let rows: Vec<FeatureRow> = self
            .rows
            .iter()
            .map(|r| FeatureRow {
                id: r.id.clone(),
                label: r.label,
                values: r.features.clone(),
            })
            .collect();
        let file = File::create(csv_path).map_err(|e| Error::from(e).in_file(csv_path))?;
        write_feature_csv(BufWriter::new(file), self.schema.len(), &rows)?;
        std::fs::write(schema_path(csv_path), self.schema.to_json()?)?;
        std::fs::write(provenance_path(csv_path), serde_json::to_string_pretty(sidecar)?)?;
        Ok(())
    }

    pub fn load(csv_path: &Path) -> Result<(Dataset, ProvenanceSidecar)> {
        let wrap = |e: Error| e.in_file(csv_path);
        let file = File::open(csv_path).map_err(|e| wrap(e.into()))?;
        let (width, rows) = read_feature_csv(BufReader::new(file)).map_err(wrap)?;
        let schema_text = std::fs::read_to_string(schema_path(csv_path)).map_err(|e| wrap(e.into()))?;
        let schema = FeatureSchema::from_json(&schema_text).map_err(wrap)?;
        if schema.len() != width {
            return Err(wrap(Error::SchemaMismatch {
                expected: schema.len(),
                got: width,
            }));
        }
        let side_text = std::fs::read_to_string(provenance_path(csv_path)).map_err(|e| wrap(e.into()))?;
        let sidecar: ProvenanceSidecar = serde_json::from_str(&side_text).map_err(|e| wrap(e.into()))?;
        let rows = rows
            .into_iter()
            .map(|r| Row {
                id: r.id,
                features: r.values,
                label: r.label,
            })
            .collect();
        Ok((Dataset::new(rows, sidecar.provenance, sidecar.role, schema)?, sidecar))
    }
}

fn sibling(csv_path: &Path, suffix: &str) -> PathBuf {
    let stem = csv_path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    csv_path.with_file_name(format!("{stem}.{suffix}"))
}

pub fn schema_path(csv_path: &Path) -> PathBuf {
    sibling(csv_path, "schema.json")
}

pub fn provenance_path(csv_path: &Path) -> PathBuf {
    sibling(csv_path, "provenance.json")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::Shape;

    #[test]
    fn row_origin_parses_suffix() {
        let row = |id: &str| Row {
            id: id.into(),
            features: vec![],
            label: OrderingLabel::ALL[0],
        };
        assert_eq!(row("abc").origin(), ("abc", VariablePermutation::IDENTITY));
        let r = row("dir/abc#231");
        let (base, s) = r.origin();
        assert_eq!((base, s.code().as_str()), ("dir/abc", "231"));
        assert_eq!(row("odd#name").instance_id(), "odd#name");
    }

    #[test]
    fn save_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let schema = FeatureSchema::from_shapes(vec![Shape::all()[9]]);
        let ds = Dataset::new(
            vec![Row {
                id: "a#213".into(),
                features: vec![0.5, 1.0, 2.0],
                label: OrderingLabel::ALL[3],
            }],
            Provenance::Balanced,
            Role::Test,
            schema,
        )
        .unwrap();
        let path = dir.path().join("test.csv");
        let side = ds.sidecar(Some(3), Some("exact".into()));
        ds.save(&path, &side).unwrap();
        assert!(dir.path().join("test.schema.json").exists());
        let (back, side_back) = Dataset::load(&path).unwrap();
        assert_eq!(back, ds);
        assert_eq!(side_back, side);
    }
}
