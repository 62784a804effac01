//! Parses an SMT-LIB script, shows the canonical polynomials and a few of
//! the 384 descriptors, then checks that renaming variables only permutes
//! the feature blocks.
//!
//! cargo run --example parse_and_featurize -- [script.smt2]

use cad_augment::features::{featurize, featurize_exact, permute_values, FeatureSchema};
use cad_augment::smtlib::parse_script;
use cad_augment::VariablePermutation;

const SCRIPT: &str = "(set-logic QF_NRA)
(declare-fun a () Real)
(declare-fun b () Real)
(declare-fun c () Real)
(assert (and (> (- (* b b) (* b a)) 0) (or (< (+ (* c c c a) 1) (* a a)) (= c 2))))
(check-sat)";

fn main() -> cad_augment::Result<()> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(&path)?,
        None => SCRIPT.to_string(),
    };
    let inst = parse_script("example", &text)?;
    for (name, v) in inst.variable_map() {
        println!("{name} -> {v}");
    }
    for p in inst.polynomials() {
        println!("  {p}");
    }

    let schema = FeatureSchema::raw();
    let fv = featurize(&inst, &schema);
    for (d, x) in schema.descriptors().zip(&fv.values).take(8) {
        println!("{d} = {x}");
    }
    let nonzero = fv.values.iter().filter(|&&x| x != 0.0).count();
    println!("{} features, {nonzero} non-zero", fv.values.len());

    let exact = featurize_exact(&inst, &schema);
    for sigma in VariablePermutation::all() {
        let renamed = featurize_exact(&inst.rename(&sigma), &schema);
        assert_eq!(renamed, permute_values(&exact, &sigma, &schema)?);
    }
    println!("renaming by each of the 6 permutations permutes the blocks exactly");
    Ok(())
}
