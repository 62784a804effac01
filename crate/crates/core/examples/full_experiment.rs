//! Generates a synthetic corpus and runs the whole experiment on it,
//! printing the report.
//!
//! cargo run --release --example full_experiment -- [instances] [seed] [out-dir]

use std::path::PathBuf;
use std::time::Instant;

use cad_augment::corpus::{write_corpus, CorpusConfig};
use cad_augment::experiment::{improvement_summary, render_markdown, run_pipeline, ExperimentConfig};

fn main() -> cad_augment::Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let mut args = std::env::args().skip(1);
    let instances = args.next().and_then(|a| a.parse().ok()).unwrap_or(300);
    let seed = args.next().and_then(|a| a.parse().ok()).unwrap_or(7);
    let out = args.next().map(PathBuf::from).unwrap_or_else(|| PathBuf::from("target/full-experiment"));

    let corpus = out.join("corpus");
    write_corpus(
        &corpus,
        &CorpusConfig {
            instances,
            seed,
            ..CorpusConfig::default()
        },
    )?;
    let cfg = ExperimentConfig {
        input: corpus,
        seed,
        out: out.clone(),
        ..ExperimentConfig::default()
    };
    let start = Instant::now();
    let matrix = run_pipeline(&cfg)?;
    println!("{}", render_markdown(&matrix));
    let imp = improvement_summary(&matrix);
    println!(
        "balanced training {:+.1}%, augmented training {:+.1}% ({:.1?}, artifacts in {})",
        100.0 * imp.balanced_vs_unbalanced,
        100.0 * imp.augmented_vs_unbalanced,
        start.elapsed(),
        out.display()
    );
    Ok(())
}
