//! Exact sparse polynomials in `x1`, `x2`, `x3` over the rationals.

mod monomial;
mod polynomial;
mod sylvester;
mod text;

pub use monomial::Monomial;
pub use polynomial::{Coefficient, Polynomial};
pub use sylvester::{determinant, discriminant, resultant, resultant_bareiss, sylvester_matrix};
