pub mod augmentation;
pub mod corpus;
pub mod dataset;
pub mod error;
pub mod experiment;
pub mod features;
pub mod labelling;
pub mod ml;
pub mod poly;
pub mod seed;
pub mod smtlib;
pub mod symmetry;

pub use error::{Error, ErrorClass, Result};
pub use poly::{Monomial, Polynomial};
pub use symmetry::{OrderingLabel, Variable, VariablePermutation};
