//! Trains KNN, a decision tree and a random forest with grouped
//! cross-validation on a labelled synthetic corpus and evaluates them on a
//! balanced held-out set.
//!
//! cargo run --release --example train_models -- [instances] [seed]

use cad_augment::augmentation::{augment_full, balance, split, BalanceMode};
use cad_augment::corpus::{generate, CorpusConfig};
use cad_augment::experiment::labelled_dataset;
use cad_augment::features::{fit_distinct_filter, RANK_TOLERANCE};
use cad_augment::labelling::{label_all, SotdLabeller};
use cad_augment::ml::{train, uniform_random_accuracy, CvPlan, ModelKind};
use cad_augment::seed::{derive_seed, stages};
use cad_augment::smtlib::parse_script;

fn main() -> cad_augment::Result<()> {
    let mut args = std::env::args().skip(1);
    let instances = args.next().and_then(|a| a.parse().ok()).unwrap_or(300);
    let seed = args.next().and_then(|a| a.parse().ok()).unwrap_or(7);

    let parsed = generate(&CorpusConfig {
        instances,
        seed,
        ..CorpusConfig::default()
    })?
    .into_iter()
    .map(|(name, text)| parse_script(&name, &text))
    .collect::<cad_augment::Result<Vec<_>>>()?;
    let outcomes = label_all(&SotdLabeller::default(), &parsed)?;
    let labelled = labelled_dataset(&parsed, &outcomes)?;

    let (train_raw, test_raw) = split(&labelled, 0.2, derive_seed(seed, stages::SPLIT))?;
    let rows: Vec<Vec<f64>> = train_raw.rows.iter().map(|r| r.features.clone()).collect();
    let schema = fit_distinct_filter(&train_raw.schema, &rows, RANK_TOLERANCE)?;
    println!("{} of {} features kept", schema.len(), train_raw.schema.len());
    let train_ds = augment_full(&train_raw.project(&schema)?)?;
    let test_ds = balance(&test_raw.project(&schema)?, BalanceMode::Random, derive_seed(seed, stages::BALANCE_TEST))?;

    let plan = CvPlan {
        seed,
        ..CvPlan::default()
    };
    for kind in ModelKind::ALL {
        let model = train(kind, &train_ds, &plan)?;
        println!("{:<55} accuracy {:.3}", format!("{kind} {}", model.hyperparameters), model.accuracy(&test_ds)?);
    }
    println!("{:<55} accuracy {:.3}", "uniform random", uniform_random_accuracy(&test_ds, seed)?);
    Ok(())
}
