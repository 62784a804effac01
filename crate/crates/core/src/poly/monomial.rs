use std::cmp::Ordering;
use std::fmt;

use crate::symmetry::{Variable, VariablePermutation};

/// A power product `x1^a * x2^b * x3^c`.
///
/// Ordered graded-lexicographically with `x1 < x2 < x3`: higher total degree
/// is greater, ties are decided by the exponent of `x3`, then `x2`, then `x1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn new(exponents: [u32; 3]) -> Self {
        Monomial(exponents)
    }

    pub fn var(v: Variable) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Variable, e: u32) -> Self {
        let mut exps = [0; 3];
        exps[v.pos()] = e;
        Monomial(exps)
    }

    pub fn exponents(&self) -> [u32; 3] {
        self.0
    }

    #[inline]
    pub fn degree_of(&self, v: Variable) -> u32 {
        self.0[v.pos()]
    }

    #[inline]
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0, 0, 0]
    }

    /// Total degree of the monomial when `v` occurs in it, otherwise 0.
    pub fn sv(&self, v: Variable) -> u32 {
        if self.degree_of(v) > 0 {
            self.total_degree()
        } else {
            0
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial([self.0[0] + other.0[0], self.0[1] + other.0[1], self.0[2] + other.0[2]])
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        Some(Monomial([
            self.0[0].checked_sub(other.0[0])?,
            self.0[1].checked_sub(other.0[1])?,
            self.0[2].checked_sub(other.0[2])?,
        ]))
    }

    pub fn with_degree(&self, v: Variable, e: u32) -> Monomial {
        let mut exps = self.0;
        exps[v.pos()] = e;
        Monomial(exps)
    }

    /// Exponent of `v` moves to `σ(v)`.
    pub fn rename(&self, sigma: &VariablePermutation) -> Monomial {
        let mut exps = [0; 3];
        for v in Variable::ALL {
            exps[sigma.apply(v).pos()] = self.degree_of(v);
        }
        Monomial(exps)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then(self.0[2].cmp(&other.0[2]))
            .then(self.0[1].cmp(&other.0[1]))
            .then(self.0[0].cmp(&other.0[0]))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for v in Variable::ALL {
            let e = self.degree_of(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            match e {
                1 => write!(f, "{v}")?,
                _ => write!(f, "{v}^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sv_measure() {
        assert_eq!(Monomial::new([1, 1, 2]).sv(Variable::X1), 4);
        assert_eq!(Monomial::new([0, 3, 1]).sv(Variable::X1), 0);
        assert_eq!(Monomial::ONE.sv(Variable::X2), 0);
    }

    #[test]
    fn degree_of_variable() {
        assert_eq!(Monomial::new([1, 0, 3]).degree_of(Variable::X1), 1);
        assert_eq!(Monomial::new([0, 2, 0]).degree_of(Variable::X1), 0);
    }

    #[test]
    fn grlex_order() {
        let x1 = Monomial::var(Variable::X1);
        let x2 = Monomial::var(Variable::X2);
        let x3 = Monomial::var(Variable::X3);
        assert!(Monomial::ONE < x1);
        assert!(x1 < x2 && x2 < x3);
        assert!(x3 < Monomial::new([2, 0, 0]));
        assert!(Monomial::new([2, 0, 0]) < Monomial::new([1, 1, 0]));
        assert!(Monomial::new([0, 2, 0]) < Monomial::new([1, 0, 1]));
    }

    #[test]
    fn rename_cycle() {
        let cyc = VariablePermutation::from_images([Variable::X2, Variable::X3, Variable::X1]).unwrap();
        assert_eq!(Monomial::new([1, 0, 1]).rename(&cyc), Monomial::new([1, 1, 0]));
    }
}
