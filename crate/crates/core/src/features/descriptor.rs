use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::{Monomial, Polynomial};
use crate::symmetry::Variable;

/// Per-monomial measurement of one variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Base {
    /// Exponent of the variable in the monomial.
    VarDegree,
    /// Total degree of the monomial if the variable occurs in it, else 0.
    SvDegree,
}

impl Base {
    pub const ALL: [Base; 2] = [Base::VarDegree, Base::SvDegree];

    pub fn measure(self, m: &Monomial, v: Variable) -> u32 {
        match self {
            Base::VarDegree => m.degree_of(v),
            Base::SvDegree => m.sv(v),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Aggregate {
    Max,
    Sum,
    Avg,
    /// Average over the non-zero entries; 0 when every entry is zero.
    AvgNonzero,
}

impl Aggregate {
    pub const ALL: [Aggregate; 4] = [Aggregate::Max, Aggregate::Sum, Aggregate::Avg, Aggregate::AvgNonzero];

    pub fn apply(self, xs: &[BigRational]) -> BigRational {
        match self {
            Aggregate::Max => xs.iter().max().cloned().unwrap_or_else(BigRational::zero),
            Aggregate::Sum => xs.iter().sum(),
            Aggregate::Avg if xs.is_empty() => BigRational::zero(),
            Aggregate::Avg => xs.iter().sum::<BigRational>() / BigRational::from_integer(xs.len().into()),
            Aggregate::AvgNonzero => {
                let nz: Vec<&BigRational> = xs.iter().filter(|x| !x.is_zero()).collect();
                if nz.is_empty() {
                    BigRational::zero()
                } else {
                    nz.iter().copied().sum::<BigRational>() / BigRational::from_integer(nz.len().into())
                }
            }
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Aggregate::Max => "max",
            Aggregate::Sum => "sum",
            Aggregate::Avg => "avg",
            Aggregate::AvgNonzero => "avgnz",
        }
    }
}

fn signum(x: BigRational) -> BigRational {
    if x.is_zero() {
        x
    } else if x.is_positive() {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// A descriptor with its variable left open; the same shape is evaluated
/// once per variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Shape {
    pub base: Base,
    pub monomial_agg: Aggregate,
    pub sign_after_monomial: bool,
    pub polynomial_agg: Aggregate,
    pub sign_after_polynomial: bool,
}

impl Shape {
    /// Every shape in grammar order (128 of them).
    pub fn all() -> Vec<Shape> {
        let mut out = Vec::with_capacity(128);
        for base in Base::ALL {
            for monomial_agg in Aggregate::ALL {
                for sign_after_monomial in [false, true] {
                    for polynomial_agg in Aggregate::ALL {
                        for sign_after_polynomial in [false, true] {
                            out.push(Shape {
                                base,
                                monomial_agg,
                                sign_after_monomial,
                                polynomial_agg,
                                sign_after_polynomial,
                            });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn at(self, variable: Variable) -> Descriptor {
        Descriptor { variable, shape: self }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self.base {
            Base::VarDegree => "deg",
            Base::SvDegree => "sv",
        };
        write!(f, "{base}.{}", self.monomial_agg.tag())?;
        if self.sign_after_monomial {
            f.write_str(".sign")?;
        }
        write!(f, ".{}", self.polynomial_agg.tag())?;
        if self.sign_after_polynomial {
            f.write_str(".sign")?;
        }
        Ok(())
    }
}

/// `outer_agg` over polynomials of `[sign of] inner_agg` over monomials of
/// `base(monomial, variable)`, optionally followed by a final sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Descriptor {
    #[serde(with = "variable_name")]
    pub variable: Variable,
    #[serde(flatten)]
    pub shape: Shape,
}

impl Descriptor {
    pub fn evaluate<'a>(&self, polys: impl IntoIterator<Item = &'a Polynomial>) -> BigRational {
        let s = &self.shape;
        let inner: Vec<BigRational> = polys
            .into_iter()
            .map(|p| {
                let xs: Vec<BigRational> = p
                    .monomials()
                    .map(|m| BigRational::from_integer(s.base.measure(m, self.variable).into()))
                    .collect();
                let a = s.monomial_agg.apply(&xs);
                if s.sign_after_monomial {
                    signum(a)
                } else {
                    a
                }
            })
            .collect();
        let out = s.polynomial_agg.apply(&inner);
        if s.sign_after_polynomial {
            signum(out)
        } else {
            out
        }
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.variable, self.shape)
    }
}

mod variable_name {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::symmetry::Variable;

    pub fn serialize<S: Serializer>(v: &Variable, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Variable, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn aggregates() {
        let xs = [q(0, 1), q(2, 1), q(0, 1), q(4, 1)];
        assert_eq!(Aggregate::Max.apply(&xs), q(4, 1));
        assert_eq!(Aggregate::Sum.apply(&xs), q(6, 1));
        assert_eq!(Aggregate::Avg.apply(&xs), q(3, 2));
        assert_eq!(Aggregate::AvgNonzero.apply(&xs), q(3, 1));
        assert_eq!(Aggregate::AvgNonzero.apply(&[q(0, 1), q(0, 1)]), q(0, 1));
    }

    #[test]
    fn grammar_has_128_shapes() {
        let shapes = Shape::all();
        assert_eq!(shapes.len(), 128);
        let unique: std::collections::HashSet<_> = shapes.iter().collect();
        assert_eq!(unique.len(), 128);
    }

    #[test]
    fn names() {
        let shapes = Shape::all();
        assert_eq!(shapes[0].to_string(), "deg.max.max");
        assert_eq!(shapes[127].at(Variable::X2).to_string(), "x2:sv.avgnz.sign.avgnz.sign");
    }
}
