use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Monomial;
use crate::symmetry::{Variable, VariablePermutation};

pub type Coefficient = BigRational;

/// A polynomial as a map from monomials to non-zero rational coefficients.
///
/// The representation is canonical: zero coefficients are never stored, so
/// two equal polynomials always have identical term maps, and the zero
/// polynomial is the empty map. Terms iterate in increasing graded-lex order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Coefficient>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Coefficient::one())
    }

    pub fn constant(c: Coefficient) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(Coefficient::from_integer(BigInt::from(n)))
    }

    pub fn var(v: Variable) -> Self {
        Self::term(Coefficient::one(), Monomial::var(v))
    }

    pub fn term(c: Coefficient, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    /// Sums the given terms, merging repeated monomials.
    pub fn from_terms(terms: impl IntoIterator<Item = (Coefficient, Monomial)>) -> Self {
        let mut p = Polynomial::zero();
        for (c, m) in terms {
            p.add_term(c, m);
        }
        p
    }

    fn add_term(&mut self, c: Coefficient, m: Monomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for the zero polynomial and for non-zero constants.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coefficient)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl DoubleEndedIterator<Item = &Monomial> + ExactSizeIterator {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Coefficient> {
        self.terms.get(m)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Coefficient)> {
        self.terms.iter().next_back()
    }

    pub fn degree_in(&self, v: Variable) -> u32 {
        self.terms.keys().map(|m| m.degree_of(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    pub fn contains(&self, v: Variable) -> bool {
        self.terms.keys().any(|m| m.degree_of(v) > 0)
    }

    pub fn variables(&self) -> Vec<Variable> {
        Variable::ALL.into_iter().filter(|&v| self.contains(v)).collect()
    }

    pub fn scale(&self, c: &Coefficient) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to `v`.
    pub fn derivative(&self, v: Variable) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let e = m.degree_of(v);
            (e > 0).then(|| (c * Coefficient::from_integer(e.into()), m.with_degree(v, e - 1)))
        }))
    }

    /// Coefficients of `v^0, ..., v^d` where `d` is the degree in `v`.
    /// Each coefficient is a polynomial free of `v`.
    pub fn coefficients_wrt(&self, v: Variable) -> Vec<Polynomial> {
        let mut out = vec![Polynomial::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            out[m.degree_of(v) as usize].add_term(c.clone(), m.with_degree(v, 0));
        }
        out
    }

    /// Inverse of [`Polynomial::coefficients_wrt`]: `Σ coeffs[i] · v^i`.
    pub fn from_coefficients(coeffs: &[Polynomial], v: Variable) -> Polynomial {
        let mut p = Polynomial::zero();
        for (i, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                p.add_term(a.clone(), m.mul(&Monomial::var_pow(v, i as u32)));
            }
        }
        p
    }

    /// Substitutes the rational `value` for `v`.
    pub fn substitute(&self, v: Variable, value: &Coefficient) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| {
            let mut f = c.clone();
            for _ in 0..m.degree_of(v) {
                f *= value;
            }
            (f, m.with_degree(v, 0))
        }))
    }

    /// Renames every variable `v` to `σ(v)`.
    pub fn rename(&self, sigma: &VariablePermutation) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.rename(sigma), c.clone())).collect(),
        }
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder (or the divisor is zero).
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = divisor.leading_term()?;
        let (lm, lc) = (*lm, lc.clone());
        let mut rem = self.clone();
        let mut quot = Polynomial::zero();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.checked_div(&lm)?;
            let qc = c / &lc;
            rem = &rem - &divisor.mul_monomial(&qm).scale(&qc);
            quot.add_term(qc, qm);
        }
        Some(quot)
    }

    /// Integer-coefficient primitive part with a positive leading coefficient.
    ///
    /// Denominators are cleared, the gcd of the numerators is divided out and
    /// the sign is fixed so the greatest monomial has a positive coefficient.
    /// Non-zero constants normalize to `1`.
    pub fn primitive(&self) -> Polynomial {
        let Some((_, lc)) = self.leading_term() else {
            return Polynomial::zero();
        };
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        let mut content = Coefficient::new(num_gcd, den_lcm);
        if lc.is_negative() {
            content = -content;
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, c / &content)).collect(),
        }
    }

    pub fn is_primitive(&self) -> bool {
        *self == self.primitive()
    }
}

impl From<Variable> for Polynomial {
    fn from(v: Variable) -> Self {
        Polynomial::var(v)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(c.clone(), *m);
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(-c.clone(), *m);
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                out.add_term(a * b, m.mul(n));
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}
