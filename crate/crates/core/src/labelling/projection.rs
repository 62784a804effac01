//! McCallum-style projection and the sum-of-total-degrees cost proxy.

use std::collections::BTreeSet;

use super::{argmin_ordering, LabelOutcome, Labeller};
use crate::error::{Error, Result};
use crate::poly::{discriminant, resultant, Polynomial};
use crate::smtlib::ProblemInstance;
use crate::symmetry::{OrderingLabel, Variable};

/// Limits standing in for a wall-clock timeout: an ordering whose projection
/// produces a level with more polynomials, or a polynomial of higher total
/// degree, is abandoned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProjectionBudget {
    pub max_polys: usize,
    pub max_degree: u32,
}

impl Default for ProjectionBudget {
    fn default() -> Self {
        ProjectionBudget {
            max_polys: 512,
            max_degree: 200,
        }
    }
}

impl ProjectionBudget {
    pub const UNLIMITED: ProjectionBudget = ProjectionBudget {
        max_polys: usize::MAX,
        max_degree: u32::MAX,
    };

    fn check_degree(&self, p: &Polynomial) -> Result<()> {
        let d = p.total_degree();
        if d > self.max_degree {
            return Err(Error::Budget(format!("total degree {d} > {}", self.max_degree)));
        }
        Ok(())
    }
}

fn insert_normalized(out: &mut BTreeSet<Polynomial>, p: &Polynomial, budget: &ProjectionBudget) -> Result<()> {
    if p.is_constant() {
        return Ok(());
    }
    budget.check_degree(p)?;
    out.insert(p.primitive());
    if out.len() > budget.max_polys {
        return Err(Error::Budget(format!("more than {} projection factors", budget.max_polys)));
    }
    Ok(())
}

/// Projects `polys` eliminating `v`: coefficients and discriminants of each
/// polynomial containing `v`, pairwise resultants, and pass-through of the
/// polynomials free of `v`. Constants are dropped and every result is
/// normalized to its primitive form.
pub fn mccallum_projection(polys: &BTreeSet<Polynomial>, v: Variable, budget: &ProjectionBudget) -> Result<BTreeSet<Polynomial>> {
    let mut out = BTreeSet::new();
    let (with_v, without_v): (Vec<&Polynomial>, Vec<&Polynomial>) = polys.iter().partition(|p| p.contains(v));
    for p in without_v {
        insert_normalized(&mut out, p, budget)?;
    }
    for p in &with_v {
        for c in p.coefficients_wrt(v) {
            insert_normalized(&mut out, &c, budget)?;
        }
        if p.degree_in(v) >= 2 {
            insert_normalized(&mut out, &discriminant(p, v)?, budget)?;
        }
    }
    for (i, p) in with_v.iter().enumerate() {
        for q in &with_v[i + 1..] {
            insert_normalized(&mut out, &resultant(p, q, v)?, budget)?;
        }
    }
    Ok(out)
}

/// Levels 3, 2 and 1 of the projection for `ordering`: the input set, then
/// the greatest variable eliminated, then the middle one.
pub fn projection_chain(
    polys: &BTreeSet<Polynomial>,
    ordering: OrderingLabel,
    budget: &ProjectionBudget,
) -> Result<Vec<BTreeSet<Polynomial>>> {
    let [first, second, _] = ordering.variables();
    let level2 = mccallum_projection(polys, first, budget)?;
    let level1 = mccallum_projection(&level2, second, budget)?;
    Ok(vec![polys.clone(), level2, level1])
}

/// Sum of total degrees of every monomial of every polynomial in the chain.
pub fn sotd(chain: &[BTreeSet<Polynomial>]) -> u64 {
    chain
        .iter()
        .flatten()
        .flat_map(Polynomial::monomials)
        .map(|m| m.total_degree() as u64)
        .sum()
}

/// sotd for each of the six orderings; `None` where the budget ran out.
pub fn sotd_profile(polys: &BTreeSet<Polynomial>, budget: &ProjectionBudget) -> Result<[Option<u64>; 6]> {
    let mut out = [None; 6];
    for o in OrderingLabel::ALL {
        out[o.index()] = match projection_chain(polys, o, budget) {
            Ok(chain) => Some(sotd(&chain)),
            Err(Error::Budget(msg)) => {
                log::debug!("ordering {o} over budget: {msg}");
                None
            }
            Err(e) => return Err(e),
        };
    }
    Ok(out)
}

/// Labels an instance with the ordering of least projection sotd.
#[derive(Debug, Clone, Copy, Default)]
pub struct SotdLabeller {
    pub budget: ProjectionBudget,
}

impl Labeller for SotdLabeller {
    fn label(&self, instance: &ProblemInstance) -> Result<LabelOutcome> {
        Ok(argmin_ordering(&sotd_profile(instance.polynomials(), &self.budget)?))
    }
}
