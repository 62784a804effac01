//! Runs the McCallum projection chain for every variable ordering and
//! labels the instance with the ordering of least total degree.
//!
//! cargo run --example projection_labels -- ["poly; poly; ..."]

use cad_augment::labelling::{projection_chain, sotd, sotd_profile, Labeller, ProjectionBudget, SotdLabeller};
use cad_augment::smtlib::ProblemInstance;
use cad_augment::{OrderingLabel, Polynomial};

fn main() -> cad_augment::Result<()> {
    let input = std::env::args().nth(1).unwrap_or_else(|| "x1^2 - x2; x3^3*x1 - x2 + 1; x2*x3 - 2".into());
    let polys = input
        .split(';')
        .map(|s| s.trim().parse::<Polynomial>().map(|p| p.primitive()))
        .collect::<cad_augment::Result<Vec<_>>>()?;
    let inst = ProblemInstance::new("cli", polys)?;
    let budget = ProjectionBudget::default();

    let profile = sotd_profile(inst.polynomials(), &budget)?;
    for o in OrderingLabel::ALL {
        let chain = projection_chain(inst.polynomials(), o, &budget)?;
        let sizes: Vec<usize> = chain.iter().map(|level| level.len()).collect();
        let order: Vec<String> = o.variables().iter().map(|v| v.to_string()).collect();
        println!("{o} (eliminate {}): levels {sizes:?}, sotd {}", order.join(", "), sotd(&chain));
        assert_eq!(profile[o.index()], Some(sotd(&chain)));
    }
    match SotdLabeller::default().label(&inst)?.label() {
        Some(l) => println!("label {l}"),
        None => println!("discarded: projection budget exceeded"),
    }
    Ok(())
}
