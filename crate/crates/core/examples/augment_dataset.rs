//! Balances and augments a skewed labelled dataset using the variable
//! renaming symmetry, without recomputing any features.
//!
//! cargo run --example augment_dataset -- [seed]

use cad_augment::augmentation::{augment_full, balance, split, BalanceMode};
use cad_augment::dataset::{Dataset, Provenance, Role, Row};
use cad_augment::features::{FeatureSchema, Shape};
use cad_augment::OrderingLabel;

fn main() -> cad_augment::Result<()> {
    let seed = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(1);
    let counts = [406usize, 93, 135, 51, 202, 132];
    let schema = FeatureSchema::from_shapes(Shape::all()[..4].to_vec());
    let rows = counts
        .iter()
        .enumerate()
        .flat_map(|(l, &c)| std::iter::repeat_n(l, c))
        .enumerate()
        .map(|(i, l)| Row {
            id: format!("inst{i:04}"),
            features: (0..schema.len()).map(|j| ((i + 3 * j) % 7) as f64).collect(),
            label: OrderingLabel::ALL[l],
        })
        .collect();
    let ds = Dataset::new(rows, Provenance::Unbalanced, Role::Train, schema)?;
    println!("unbalanced    {:>5} rows {:?}", ds.len(), ds.class_counts());

    let (train, test) = split(&ds, 0.2, seed)?;
    println!("train/test    {:>5} / {} rows", train.len(), test.len());

    for mode in [BalanceMode::Random, BalanceMode::Exact] {
        let bal = balance(&ds, mode, seed)?;
        println!("balanced {mode:<6}{:>5} rows {:?}", bal.len(), bal.class_counts());
    }
    let aug = augment_full(&ds)?;
    println!("augmented     {:>5} rows {:?}", aug.len(), aug.class_counts());
    for row in &aug.rows[..6] {
        println!("  {:<10} label {} features {:?}", row.id, row.label, &row.features[..6]);
    }
    Ok(())
}
