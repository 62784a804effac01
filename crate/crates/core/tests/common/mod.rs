#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use cad_augment::smtlib::ProblemInstance;
use cad_augment::{Monomial, Polynomial, Variable, VariablePermutation};

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Polynomials with up to `max_terms` terms, each exponent at most
/// `max_exp` and total degree at most `max_deg`.
pub fn poly(max_terms: usize, max_exp: u32, max_deg: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(((-6i64..=6), [0..=max_exp, 0..=max_exp, 0..=max_exp]), 0..=max_terms).prop_map(
        move |terms| {
            Polynomial::from_terms(
                terms
                    .into_iter()
                    .filter(|(_, e)| e.iter().sum::<u32>() <= max_deg)
                    .map(|(c, e)| (rat(c), Monomial::new(e))),
            )
        },
    )
}

pub fn permutation() -> impl Strategy<Value = VariablePermutation> {
    (0usize..6).prop_map(|i| VariablePermutation::all()[i])
}

pub fn variable() -> impl Strategy<Value = Variable> {
    (0usize..3).prop_map(|i| Variable::ALL[i])
}

/// Valid three-variable instances: 1..=max_polys non-constant polynomials
/// that together mention every variable.
pub fn instance(max_polys: usize, max_deg: u32) -> impl Strategy<Value = ProblemInstance> {
    prop::collection::vec(poly(4, max_deg, max_deg), 1..=max_polys)
        .prop_map(|ps| {
            let mut ps: Vec<Polynomial> = ps.into_iter().filter(|p| !p.is_constant()).collect();
            for v in Variable::ALL {
                if !ps.iter().any(|p| p.contains(v)) {
                    ps.push(&Polynomial::var(v) + &Polynomial::integer(1));
                }
            }
            ProblemInstance::new("p", ps.into_iter().map(|p| p.primitive())).expect("valid instance")
        })
}
