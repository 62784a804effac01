//! Generates a synthetic corpus, labels it by projection cost and prints
//! the resulting class balance.
//!
//! cargo run --release --example synthetic_corpus -- [instances] [seed]

use std::time::Instant;

use cad_augment::corpus::{generate, CorpusConfig};
use cad_augment::labelling::{label_all, SotdLabeller};
use cad_augment::smtlib::parse_script;

fn main() -> cad_augment::Result<()> {
    let mut args = std::env::args().skip(1);
    let instances = args.next().and_then(|a| a.parse().ok()).unwrap_or(200);
    let seed = args.next().and_then(|a| a.parse().ok()).unwrap_or(0);
    let cfg = CorpusConfig {
        instances,
        seed,
        ..CorpusConfig::default()
    };
    let start = Instant::now();
    let parsed = generate(&cfg)?
        .into_iter()
        .map(|(name, text)| parse_script(&name, &text))
        .collect::<cad_augment::Result<Vec<_>>>()?;
    let outcomes = label_all(&SotdLabeller::default(), &parsed)?;
    let mut counts = [0usize; 6];
    let mut discarded = 0;
    for o in &outcomes {
        match o.label() {
            Some(l) => counts[l.index()] += 1,
            None => discarded += 1,
        }
    }
    println!("class counts {counts:?}, discarded {discarded}");
    println!("labelled in {:.2?}", start.elapsed());
    Ok(())
}
