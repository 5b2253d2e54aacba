//! Exact arithmetic: rationals, polynomials and rational functions in `x`.

mod bigrat;
mod intpoly;
mod poly;
mod ratfunc;
mod scalar;

pub use bigrat::BigRat;
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use scalar::{Mode, Scalar};

pub(crate) use intpoly::{content as int_content, gcd as int_gcd, lcm as nat_lcm};
