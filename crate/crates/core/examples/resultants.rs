//! Sylvester resultants and discriminants over exact rationals.
//!
//! cargo run --example resultants -- ["p"] ["q"] [variable]

use cad_augment::poly::{discriminant, resultant, resultant_bareiss, sylvester_matrix};
use cad_augment::{Polynomial, Variable};

fn main() -> cad_augment::Result<()> {
    let mut args = std::env::args().skip(1);
    let p: Polynomial = args.next().as_deref().unwrap_or("x1^2*x2 - x3 + 1").parse()?;
    let q: Polynomial = args.next().as_deref().unwrap_or("x1*x3 + x2^2 - 2").parse()?;
    let v = match args.next().as_deref() {
        Some("x2") => Variable::X2,
        Some("x3") => Variable::X3,
        _ => Variable::X1,
    };

    println!("p = {p}\nq = {q}\nSylvester matrix in {v}:");
    for row in sylvester_matrix(&p, &q, v)? {
        let cells: Vec<String> = row.iter().map(|c| format!("{:>10}", c.to_string())).collect();
        println!("  [{}]", cells.join(" "));
    }
    let r = resultant(&p, &q, v)?;
    assert_eq!(r, resultant_bareiss(&p, &q, v)?);
    println!("res_{v}(p, q) = {r}");
    for (name, f) in [("p", &p), ("q", &q)] {
        match discriminant(f, v) {
            Ok(d) => println!("disc_{v}({name}) = {d}"),
            Err(e) => println!("disc_{v}({name}): {e}"),
        }
    }
    Ok(())
}
