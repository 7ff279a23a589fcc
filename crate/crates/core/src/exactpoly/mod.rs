//! Exact rational arithmetic and sparse multivariate polynomials.

mod division;
pub mod factor;
pub(crate) mod gcd;
mod monomial;
mod parse;
mod poly;
mod vars;

pub use division::{divide, s_polynomial};
pub use factor::factor_rational;
pub use gcd::{exact_quotient, gcd_poly};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_poly, parse_rational};
pub use poly::{arith, ArithOp, MultiPoly};
pub use vars::{Ring, VarTable};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub(crate) use poly::rational_to_f64;
