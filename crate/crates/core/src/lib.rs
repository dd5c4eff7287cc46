pub mod analysis;
pub mod biratio;
pub mod coeff;
pub mod corpus;
pub mod error;
pub mod groebner;
pub mod mapfile;
pub mod poly;
pub mod rees;
pub mod resolve;

pub use coeff::{FieldSpec, Rat, Scalar};
pub use error::{Error, Result};
pub use groebner::{GroebnerBasis, Ideal};
pub use poly::{parse_polynomial, Bidegree, MonomialOrder, PolyMatrix, Polynomial, Ring, RingContext};
