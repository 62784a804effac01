//! Seeded synthetic QF_NRA corpus with a chosen label imbalance.
//!
//! Each instance starts as random polynomials whose degree in `x1`, `x2`
//! and `x3` is capped separately. Its projection-cost label is computed,
//! and the instance is then renamed by the permutation carrying that label
//! to a target label drawn from `label_weights`. Projection cost is
//! invariant under renaming, so the corpus ends up with the requested class
//! proportions (up to ties between orderings).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::distr::{weighted::WeightedIndex, Distribution};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::labelling::{Labeller, ProjectionBudget, SotdLabeller};
use crate::poly::{Monomial, Polynomial};
use crate::smtlib::{smt_term, ProblemInstance};
use crate::symmetry::{OrderingLabel, Variable, VariablePermutation};

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusConfig {
    pub instances: usize,
    pub seed: u64,
    /// Relative frequency of each target label.
    pub label_weights: [u32; 6],
    /// Largest exponent of `x1`, `x2`, `x3` before renaming.
    pub degree_caps: [u32; 3],
    pub polys: (usize, usize),
    pub terms: (usize, usize),
    pub max_coefficient: i64,
    pub budget: ProjectionBudget,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            instances: 300,
            seed: 0,
            label_weights: [406, 93, 135, 51, 202, 132],
            degree_caps: [3, 1, 1],
            polys: (2, 2),
            terms: (2, 3),
            max_coefficient: 9,
            budget: ProjectionBudget::default(),
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, cfg: &CorpusConfig) -> Polynomial {
    loop {
        let nterms = rng.random_range(cfg.terms.0..=cfg.terms.1);
        let mut terms = Vec::with_capacity(nterms);
        for _ in 0..nterms {
            let e = cfg.degree_caps.map(|cap| rng.random_range(0..=cap));
            let mut c = rng.random_range(1..=cfg.max_coefficient);
            if rng.random_bool(0.5) {
                c = -c;
            }
            terms.push((BigRational::from_integer(BigInt::from(c)), Monomial::new(e)));
        }
        let p = Polynomial::from_terms(terms);
        if !p.is_constant() {
            return p;
        }
    }
}

/// Random polynomials mentioning all three variables.
pub fn random_template(rng: &mut ChaCha8Rng, cfg: &CorpusConfig) -> Vec<Polynomial> {
    loop {
        let n = rng.random_range(cfg.polys.0..=cfg.polys.1);
        let polys: Vec<Polynomial> = (0..n).map(|_| random_poly(rng, cfg)).collect();
        if Variable::ALL.iter().all(|v| polys.iter().any(|p| p.contains(*v))) {
            return polys;
        }
    }
}

/// One instance renamed towards a target label drawn from the weights.
/// Returns the polynomials and the target.
pub fn generate_polynomials(rng: &mut ChaCha8Rng, cfg: &CorpusConfig) -> Result<(Vec<Polynomial>, OrderingLabel)> {
    let targets = WeightedIndex::new(cfg.label_weights).map_err(|e| Error::Config(format!("label weights: {e}")))?;
    let target = OrderingLabel::ALL[targets.sample(rng)];
    let polys = random_template(rng, cfg);
    let inst = ProblemInstance::new("template", polys.iter().map(Polynomial::primitive))?;
    let labeller = SotdLabeller { budget: cfg.budget };
    let sigma = match labeller.label(&inst)?.label() {
        Some(l) => VariablePermutation::between(l, target),
        None => VariablePermutation::IDENTITY,
    };
    Ok((polys.iter().map(|p| p.rename(&sigma)).collect(), target))
}

/// An SMT-LIB script whose atoms compare each polynomial with zero.
pub fn render_script(rng: &mut ChaCha8Rng, polys: &[Polynomial]) -> String {
    const RELS: [&str; 5] = ["=", "<", ">", "<=", ">="];
    let mut s = String::from("(set-logic QF_NRA)\n(set-info :source |synthetic|)\n");
    for v in Variable::ALL {
        let _ = writeln!(s, "(declare-fun {v} () Real)");
    }
    let atoms: Vec<String> = polys
        .iter()
        .map(|p| format!("({} {} 0)", RELS[rng.random_range(0..RELS.len())], smt_term(p)))
        .collect();
    if atoms.len() > 1 && rng.random_bool(0.5) {
        let _ = writeln!(s, "(assert (or {}))", atoms.join(" "));
    } else {
        for a in atoms {
            let _ = writeln!(s, "(assert {a})");
        }
    }
    s.push_str("(check-sat)\n(exit)\n");
    s
}

/// `(file name, script)` pairs, deterministic in the config.
pub fn generate(cfg: &CorpusConfig) -> Result<Vec<(String, String)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    (0..cfg.instances)
        .map(|i| {
            let (polys, _) = generate_polynomials(&mut rng, cfg)?;
            Ok((format!("synthetic-{i:05}.smt2"), render_script(&mut rng, &polys)))
        })
        .collect()
}

pub fn write_corpus(dir: &Path, cfg: &CorpusConfig) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::from(e).in_file(dir))?;
    generate(cfg)?
        .into_iter()
        .map(|(name, text)| {
            let path = dir.join(name);
            std::fs::write(&path, text).map_err(|e| Error::from(e).in_file(&path))?;
            Ok(path)
        })
        .collect()
}
