//! Exact evaluation of weighted sums over the Boolean lattice.
//!
//! A chain `0 < j_1 < ... < j_q` carries a multiplicative weight `W` built
//! from `f1` and `f2`, and an additive value `V` built from `g1` and `g2`.
//! The crate evaluates
//!
//! * `b_p`: sum of `W` over chains whose maximum is `p`,
//! * `d_p`: sum of `W * V` over the same chains,
//! * `a_p`, `c_p`: the prefix sums of `b` and `d` over `p' < p`,
//!
//! both by brute-force enumeration ([`oracle`]) and in quadratic time
//! ([`dp`]), exactly, either with `x` as a formal variable or fixed to a
//! rational. [`weights::Bcmv`] is the built-in weight system; [`closedform`]
//! checks its closed forms and the identities `A_p(p) = -p` and
//! `C_p(p) = p(p+1)^2`; [`recguess`] guesses P-recursive recurrences for the
//! resulting sequences.

pub mod closedform;
pub mod dp;
pub mod error;
pub mod exact;
pub mod exec;
pub mod oracle;
pub mod recguess;
pub mod record;
pub mod weights;

pub use error::{Error, Result};
pub use exact::{BigRat, Mode, Poly, RatFunc, Scalar};
pub use exec::Exec;
