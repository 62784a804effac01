use std::collections::BTreeSet;

use proptest::prelude::*;

use cad_augment::augmentation::{apply_permutation, augment_full, balance, split, BalanceMode};
use cad_augment::dataset::{Dataset, Provenance, Role, Row};
use cad_augment::features::{FeatureSchema, Shape};
use cad_augment::{OrderingLabel, VariablePermutation};

fn schema() -> FeatureSchema {
    FeatureSchema::from_shapes(Shape::all()[..4].to_vec())
}

fn dataset(labels: &[usize]) -> Dataset {
    let rows = labels
        .iter()
        .enumerate()
        .map(|(i, &l)| Row {
            id: format!("i{i:05}"),
            features: (0..12).map(|j| ((i * 31 + j * 7) % 17) as f64).collect(),
            label: OrderingLabel::ALL[l],
        })
        .collect();
    Dataset::new(rows, Provenance::Unbalanced, Role::Train, schema()).unwrap()
}

fn labels() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..6, 1..120)
}

fn perm() -> impl Strategy<Value = VariablePermutation> {
    (0usize..6).prop_map(|i| VariablePermutation::all()[i])
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn permutation_acts_on_rows(ls in labels(), s in perm(), t in perm()) {
        let ds = dataset(&ls);
        for row in &ds.rows {
            let st = apply_permutation(&apply_permutation(row, &t, &ds.schema).unwrap(), &s, &ds.schema).unwrap();
            prop_assert_eq!(&st, &apply_permutation(row, &s.compose(&t), &ds.schema).unwrap());
            let back = apply_permutation(&apply_permutation(row, &s, &ds.schema).unwrap(), &s.inverse(), &ds.schema).unwrap();
            prop_assert_eq!(&back, row);
        }
    }

    #[test]
    fn augmentation_is_uniform(ls in labels()) {
        let ds = dataset(&ls);
        let aug = augment_full(&ds).unwrap();
        prop_assert_eq!(aug.len(), 6 * ds.len());
        prop_assert_eq!(aug.class_counts(), [ds.len(); 6]);
        let ids: BTreeSet<&str> = aug.rows.iter().map(|r| r.id.as_str()).collect();
        prop_assert_eq!(ids.len(), aug.len());
        for (k, row) in ds.rows.iter().enumerate() {
            let orbit: BTreeSet<usize> = aug.rows[6 * k..6 * k + 6].iter().map(|r| r.label.index()).collect();
            prop_assert_eq!(orbit.len(), 6);
            prop_assert_eq!(&aug.rows[6 * k], row);
        }
    }

    #[test]
    fn exact_balance_counts(ls in labels(), seed in any::<u64>()) {
        let ds = dataset(&ls);
        let bal = balance(&ds, BalanceMode::Exact, seed).unwrap();
        let q = ds.len() / 6;
        prop_assert!(bal.class_counts().iter().all(|&c| c == q || c == q + 1));
        let before: Vec<&str> = ds.rows.iter().map(|r| r.instance_id()).collect();
        let after: Vec<&str> = bal.rows.iter().map(|r| r.instance_id()).collect();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn random_balance_preserves_ids(ls in labels(), seed in any::<u64>()) {
        let ds = dataset(&ls);
        let bal = balance(&ds, BalanceMode::Random, seed).unwrap();
        prop_assert_eq!(bal.len(), ds.len());
        for (a, b) in ds.rows.iter().zip(&bal.rows) {
            prop_assert_eq!(a.instance_id(), b.instance_id());
        }
    }

    #[test]
    fn split_partitions_instances(ls in prop::collection::vec(0usize..6, 2..120), frac in 0.05f64..0.95, seed in any::<u64>()) {
        let ds = dataset(&ls);
        let (train, test) = split(&ds, frac, seed).unwrap();
        prop_assert_eq!(train.len() + test.len(), ds.len());
        prop_assert!(!train.is_empty() && !test.is_empty());
        let a: BTreeSet<&str> = train.rows.iter().map(|r| r.instance_id()).collect();
        let b: BTreeSet<&str> = test.rows.iter().map(|r| r.instance_id()).collect();
        prop_assert!(a.is_disjoint(&b));
        // images of either side never cross over
        let aug_test = augment_full(&test).unwrap();
        prop_assert!(aug_test.rows.iter().all(|r| !a.contains(r.instance_id())));
    }
}

#[test]
fn reference_class_counts() {
    let counts = [406usize, 93, 135, 51, 202, 132];
    let labels: Vec<usize> = counts.iter().enumerate().flat_map(|(l, &c)| std::iter::repeat_n(l, c)).collect();
    let ds = dataset(&labels);
    assert_eq!(ds.len(), 1019);
    let aug = augment_full(&ds).unwrap();
    assert_eq!((aug.len(), aug.class_counts()), (6114, [1019; 6]));
    let bal = balance(&ds, BalanceMode::Exact, 3).unwrap();
    assert!(bal.class_counts().iter().all(|&c| c == 169 || c == 170));
    let (train, test) = split(&ds, 0.2, 9).unwrap();
    assert_eq!((train.len(), test.len()), (815, 204));
}
