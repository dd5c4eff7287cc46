//! Multivariate polynomials over [`crate::coeff`] fields.

mod gcd;
mod matrix;
mod monomial;
mod order;
mod parse;
mod polynomial;
mod ring;

pub use gcd::{gcd, gcd_all};
pub use matrix::{jacobian, PolyMatrix};
pub use monomial::{Exponents, Monomial};
pub use order::{BlockInner, MonomialOrder, OrderBlock};
pub use parse::parse_polynomial;
pub use polynomial::{poly_arithmetic, Bidegree, PolyOp, Polynomial, Term};
pub use ring::{same_ring, Ring, RingContext};

pub(crate) use ring::fresh_name;
