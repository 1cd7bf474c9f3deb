//! GF(2^k), sparse polynomials over it, and rational functions.

mod field;
mod identity;
pub mod moduli;
mod parse;
mod poly;
mod ratfn;
mod surface;

use thiserror::Error;

pub use field::{gf2x, multiplicative_order_of_two, prime_factors, FieldElement, FieldError, FiniteField};
pub use identity::{failure_bound, is_zero_identity, IdentityMode};
pub use parse::{ParseError, Scope};
pub use poly::{Monomial, MultiPoly, PolyRing, Ring};
pub use ratfn::RationalFunction;
pub use surface::SurfaceEquation;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("expected {expected} substitution slots, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("surface equation must be monic of degree 2 in {var}: {detail}")]
    NotMonicQuadratic { var: String, detail: String },
    #[error(transparent)]
    Field(#[from] FieldError),
}
