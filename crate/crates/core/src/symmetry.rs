//! The three variables, the six orderings of them, and the symmetric group
//! acting on both.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the three canonical variables `x1`, `x2`, `x3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable(u8);

impl Variable {
    pub const X1: Variable = Variable(0);
    pub const X2: Variable = Variable(1);
    pub const X3: Variable = Variable(2);
    pub const ALL: [Variable; 3] = [Variable::X1, Variable::X2, Variable::X3];

    /// Variable from its 1-based name index (`x1` is 1).
    pub fn new(index: usize) -> Option<Variable> {
        (1..=3).contains(&index).then(|| Variable((index - 1) as u8))
    }

    /// 0-based position, usable as an array index.
    #[inline]
    pub fn pos(self) -> usize {
        self.0 as usize
    }

    /// 1-based index as it appears in the name.
    pub fn index(self) -> usize {
        self.0 as usize + 1
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.index())
    }
}

impl FromStr for Variable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.strip_prefix('x')
            .and_then(|d| d.parse::<usize>().ok())
            .and_then(Variable::new)
            .ok_or_else(|| Error::Data(format!("not a canonical variable: `{s}`")))
    }
}

/// A bijection of `{x1, x2, x3}`, stored as the images of `x1`, `x2`, `x3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VariablePermutation([Variable; 3]);

impl VariablePermutation {
    pub const IDENTITY: VariablePermutation =
        VariablePermutation([Variable::X1, Variable::X2, Variable::X3]);

    /// Builds a permutation from the images of `x1`, `x2`, `x3`.
    pub fn from_images(images: [Variable; 3]) -> Option<Self> {
        let mut seen = [false; 3];
        for v in images {
            if std::mem::replace(&mut seen[v.pos()], true) {
                return None;
            }
        }
        Some(VariablePermutation(images))
    }

    /// The transposition exchanging `a` and `b`.
    pub fn swap(a: Variable, b: Variable) -> Self {
        let mut images = Variable::ALL;
        images.swap(a.pos(), b.pos());
        VariablePermutation(images)
    }

    /// All six permutations in lexicographic order of their image triples;
    /// the identity comes first.
    pub fn all() -> [VariablePermutation; 6] {
        OrderingLabel::ALL.map(|l| VariablePermutation(l.variables()))
    }

    #[inline]
    pub fn apply(&self, v: Variable) -> Variable {
        self.0[v.pos()]
    }

    pub fn images(&self) -> [Variable; 3] {
        self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = Variable::ALL;
        for v in Variable::ALL {
            inv[self.apply(v).pos()] = v;
        }
        VariablePermutation(inv)
    }

    /// `self ∘ inner`: apply `inner` first, then `self`.
    pub fn compose(&self, inner: &VariablePermutation) -> Self {
        VariablePermutation(Variable::ALL.map(|v| self.apply(inner.apply(v))))
    }

    /// Position of this permutation in [`VariablePermutation::all`].
    pub fn rank(&self) -> usize {
        OrderingLabel::from_variables(self.0).index()
    }

    /// Compact name made of the image indices, e.g. `213` for `x1 <-> x2`.
    pub fn code(&self) -> String {
        self.0.iter().map(|v| v.index().to_string()).collect()
    }

    pub fn from_code(code: &str) -> Option<Self> {
        let images: Vec<Variable> = code
            .chars()
            .map(|c| c.to_digit(10).and_then(|d| Variable::new(d as usize)))
            .collect::<Option<_>>()?;
        let images: [Variable; 3] = images.try_into().ok()?;
        Self::from_images(images)
    }

    /// The unique permutation carrying ordering `from` onto ordering `to`.
    pub fn between(from: OrderingLabel, to: OrderingLabel) -> Self {
        let (src, dst) = (from.variables(), to.variables());
        let mut images = Variable::ALL;
        for i in 0..3 {
            images[src[i].pos()] = dst[i];
        }
        VariablePermutation(images)
    }
}

impl fmt::Display for VariablePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code())
    }
}

/// A CAD variable ordering, encoded as in the standard six-way table:
///
/// | label | ordering      |
/// |-------|---------------|
/// | 0     | x1 ≻ x2 ≻ x3  |
/// | 1     | x1 ≻ x3 ≻ x2  |
/// | 2     | x2 ≻ x1 ≻ x3  |
/// | 3     | x2 ≻ x3 ≻ x1  |
/// | 4     | x3 ≻ x1 ≻ x2  |
/// | 5     | x3 ≻ x2 ≻ x1  |
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct OrderingLabel(u8);

const ORDERINGS: [[Variable; 3]; 6] = [
    [Variable::X1, Variable::X2, Variable::X3],
    [Variable::X1, Variable::X3, Variable::X2],
    [Variable::X2, Variable::X1, Variable::X3],
    [Variable::X2, Variable::X3, Variable::X1],
    [Variable::X3, Variable::X1, Variable::X2],
    [Variable::X3, Variable::X2, Variable::X1],
];

impl OrderingLabel {
    pub const COUNT: usize = 6;
    pub const ALL: [OrderingLabel; 6] = [
        OrderingLabel(0),
        OrderingLabel(1),
        OrderingLabel(2),
        OrderingLabel(3),
        OrderingLabel(4),
        OrderingLabel(5),
    ];

    pub fn new(index: usize) -> Option<Self> {
        (index < Self::COUNT).then(|| OrderingLabel(index as u8))
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Variables from greatest to least; the greatest is projected first.
    pub fn variables(self) -> [Variable; 3] {
        ORDERINGS[self.index()]
    }

    pub fn from_variables(vars: [Variable; 3]) -> Self {
        let i = ORDERINGS
            .iter()
            .position(|o| *o == vars)
            .expect("ordering triple must be a permutation");
        OrderingLabel(i as u8)
    }

    /// Image of this ordering when variables are renamed by `sigma`:
    /// `a ≻ b ≻ c` becomes `σ(a) ≻ σ(b) ≻ σ(c)`.
    pub fn permute(self, sigma: &VariablePermutation) -> Self {
        Self::from_variables(self.variables().map(|v| sigma.apply(v)))
    }
}

impl TryFrom<u8> for OrderingLabel {
    type Error = String;

    fn try_from(value: u8) -> std::result::Result<Self, String> {
        OrderingLabel::new(value as usize).ok_or_else(|| format!("ordering label {value} out of range 0..=5"))
    }
}

impl From<OrderingLabel> for u8 {
    fn from(l: OrderingLabel) -> u8 {
        l.0
    }
}

impl fmt::Display for OrderingLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for OrderingLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .parse::<usize>()
            .ok()
            .and_then(OrderingLabel::new)
            .ok_or_else(|| Error::Data(format!("invalid ordering label `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_example_relabels_two_to_zero() {
        let sigma = VariablePermutation::swap(Variable::X1, Variable::X2);
        let l = OrderingLabel::new(2).unwrap();
        assert_eq!(l.permute(&sigma), OrderingLabel::new(0).unwrap());
    }

    #[test]
    fn orbit_is_all_six_labels() {
        for l in OrderingLabel::ALL {
            let mut images: Vec<_> = VariablePermutation::all().iter().map(|s| l.permute(s).index()).collect();
            images.sort();
            assert_eq!(images, vec![0, 1, 2, 3, 4, 5]);
        }
    }

    #[test]
    fn between_maps_source_to_target() {
        for a in OrderingLabel::ALL {
            for b in OrderingLabel::ALL {
                assert_eq!(a.permute(&VariablePermutation::between(a, b)), b);
            }
        }
    }

    #[test]
    fn codes_round_trip() {
        for s in VariablePermutation::all() {
            assert_eq!(VariablePermutation::from_code(&s.code()), Some(s));
        }
        assert_eq!(VariablePermutation::from_code("112"), None);
        assert_eq!(VariablePermutation::IDENTITY.code(), "123");
    }

    #[test]
    fn inverse_and_rank() {
        for (i, s) in VariablePermutation::all().iter().enumerate() {
            assert_eq!(s.rank(), i);
            assert_eq!(s.compose(&s.inverse()), VariablePermutation::IDENTITY);
        }
    }
}
