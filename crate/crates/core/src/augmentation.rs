//! The symmetric group acting on labelled data: balancing, full
//! augmentation and instance-level train/test splitting.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dataset::{Dataset, Provenance, Role, Row};
use crate::error::{Error, Result};
use crate::features::{permute_values, FeatureSchema};
use crate::symmetry::{OrderingLabel, VariablePermutation};

/// Relabelled ordering after renaming variables by `σ`.
pub fn permute_ordering_label(l: OrderingLabel, sigma: &VariablePermutation) -> OrderingLabel {
    l.permute(sigma)
}

/// Renames the row's underlying problem by `σ` without recomputing
/// anything: features move block-wise and the label is remapped.
pub fn apply_permutation(row: &Row, sigma: &VariablePermutation, schema: &FeatureSchema) -> Result<Row> {
    let (base, acc) = row.origin();
    let acc = sigma.compose(&acc);
    let id = if acc == VariablePermutation::IDENTITY {
        base.to_string()
    } else {
        format!("{base}#{}", acc.code())
    };
    Ok(Row {
        id,
        features: permute_values(&row.features, sigma, schema)?,
        label: row.label.permute(sigma),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BalanceMode {
    /// An independent uniformly random permutation per row.
    #[default]
    Random,
    /// Permutations chosen so class counts differ by at most one.
    Exact,
}

impl std::str::FromStr for BalanceMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(BalanceMode::Random),
            "exact" => Ok(BalanceMode::Exact),
            _ => Err(Error::Config(format!("unknown balance mode `{s}`"))),
        }
    }
}

impl std::fmt::Display for BalanceMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BalanceMode::Random => "random",
            BalanceMode::Exact => "exact",
        })
    }
}

/// Same rows, each renamed by one permutation, so that labels are spread
/// over the six classes.
pub fn balance(ds: &Dataset, mode: BalanceMode, seed: u64) -> Result<Dataset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let perms = VariablePermutation::all();
    let sigmas: Vec<VariablePermutation> = match mode {
        BalanceMode::Random => ds.rows.iter().map(|_| perms[rng.random_range(0..6)]).collect(),
        BalanceMode::Exact => {
            let n = ds.len();
            let (q, r) = (n / 6, n % 6);
            let mut classes = OrderingLabel::ALL;
            classes.shuffle(&mut rng);
            let mut targets: Vec<OrderingLabel> = Vec::with_capacity(n);
            for (i, c) in classes.iter().enumerate() {
                let count = q + usize::from(i < r);
                targets.extend(std::iter::repeat_n(*c, count));
            }
            targets.shuffle(&mut rng);
            ds.rows
                .iter()
                .zip(targets)
                .map(|(row, t)| VariablePermutation::between(row.label, t))
                .collect()
        }
    };
    let rows = ds
        .rows
        .iter()
        .zip(&sigmas)
        .map(|(row, s)| apply_permutation(row, s, &ds.schema))
        .collect::<Result<_>>()?;
    Dataset::new(rows, Provenance::Balanced, ds.role, ds.schema.clone())
}

/// Replaces each row by its six images, in permutation enumeration order.
pub fn augment_full(ds: &Dataset) -> Result<Dataset> {
    if ds.provenance == Provenance::Augmented {
        return Err(Error::Data("dataset is already augmented".into()));
    }
    let perms = VariablePermutation::all();
    let mut rows = Vec::with_capacity(ds.len() * 6);
    for row in &ds.rows {
        for s in &perms {
            rows.push(apply_permutation(row, s, &ds.schema)?);
        }
    }
    Dataset::new(rows, Provenance::Augmented, ds.role, ds.schema.clone())
}

/// Number of test instances for `n` instances at `fraction`: rounded to the
/// nearest integer and kept within `1..n` so both sides are non-empty.
pub fn test_count(n: usize, fraction: f64) -> usize {
    let k = (n as f64 * fraction).round() as usize;
    if n < 2 {
        k.min(n)
    } else {
        k.clamp(1, n - 1)
    }
}

/// Random split by instance id.
pub fn split(ds: &Dataset, test_fraction: f64, seed: u64) -> Result<(Dataset, Dataset)> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(Error::Config(format!("test fraction {test_fraction} outside (0, 1)")));
    }
    if ds.provenance == Provenance::Augmented {
        return Err(Error::Data("split must run before augmentation".into()));
    }
    let mut ids: Vec<&str> = ds.rows.iter().map(Row::instance_id).collect();
    ids.sort_unstable();
    ids.dedup();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ids.shuffle(&mut rng);
    let k = test_count(ids.len(), test_fraction);
    let test_ids: HashSet<&str> = ids[..k].iter().copied().collect();
    let (test, train): (Vec<Row>, Vec<Row>) = ds
        .rows
        .iter()
        .cloned()
        .partition(|r| test_ids.contains(r.instance_id()));
    Ok((
        Dataset::new(train, ds.provenance, Role::Train, ds.schema.clone())?,
        Dataset::new(test, ds.provenance, Role::Test, ds.schema.clone())?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::Shape;

    fn schema() -> FeatureSchema {
        FeatureSchema::from_shapes(Shape::all()[..2].to_vec())
    }

    fn dataset(labels: &[usize]) -> Dataset {
        let rows = labels
            .iter()
            .enumerate()
            .map(|(i, &l)| Row {
                id: format!("p{i:04}"),
                features: (0..6).map(|j| (i * 10 + j) as f64).collect(),
                label: OrderingLabel::ALL[l],
            })
            .collect();
        Dataset::new(rows, Provenance::Unbalanced, Role::Train, schema()).unwrap()
    }

    #[test]
    fn swap_example_row() {
        let ds = dataset(&[2]);
        let sigma = VariablePermutation::swap(crate::Variable::X1, crate::Variable::X2);
        let out = apply_permutation(&ds.rows[0], &sigma, &ds.schema).unwrap();
        assert_eq!(out.label.index(), 0);
        assert_eq!(out.id, "p0000#213");
        assert_eq!(out.features, vec![2.0, 3.0, 0.0, 1.0, 4.0, 5.0]);
        let back = apply_permutation(&out, &sigma.inverse(), &ds.schema).unwrap();
        assert_eq!(back, ds.rows[0]);
    }

    #[test]
    fn exact_balance_of_single_class() {
        let ds = dataset(&[0; 6]);
        let out = balance(&ds, BalanceMode::Exact, 11).unwrap();
        assert_eq!(out.class_counts(), [1; 6]);
        assert_eq!(out.provenance, Provenance::Balanced);
    }

    #[test]
    fn random_balance_is_reproducible() {
        let ds = dataset(&[0, 0, 1, 4, 4, 4, 5, 2, 0, 0]);
        let a = balance(&ds, BalanceMode::Random, 5).unwrap();
        let b = balance(&ds, BalanceMode::Random, 5).unwrap();
        assert_eq!(a, b);
        let ids: Vec<_> = a.rows.iter().map(|r| r.instance_id().to_string()).collect();
        let orig: Vec<_> = ds.rows.iter().map(|r| r.id.clone()).collect();
        assert_eq!(ids, orig);
    }

    #[test]
    fn augment_single_row() {
        let out = augment_full(&dataset(&[3])).unwrap();
        assert_eq!(out.len(), 6);
        assert_eq!(out.class_counts(), [1; 6]);
        assert_eq!(out.rows[0].id, "p0000");
        assert_eq!(out.rows[5].id, "p0000#321");
        assert!(matches!(augment_full(&out), Err(Error::Data(_))));
    }

    #[test]
    fn split_counts() {
        assert_eq!(test_count(1019, 0.2), 204);
        assert_eq!(test_count(2, 0.5), 1);
        let ds = dataset(&[0, 1]);
        let (train, test) = split(&ds, 0.5, 1).unwrap();
        assert_eq!((train.len(), test.len()), (1, 1));
        assert_eq!((train.role, test.role), (Role::Train, Role::Test));
        assert!(matches!(split(&ds, 1.0, 1), Err(Error::Config(_))));
        assert!(matches!(split(&ds, 0.0, 1), Err(Error::Config(_))));
    }

    #[test]
    fn split_is_seeded() {
        let ds = dataset(&[0; 50]);
        let a = split(&ds, 0.2, 9).unwrap();
        let b = split(&ds, 0.2, 9).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.1.len(), 10);
    }
}
