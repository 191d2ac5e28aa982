//! Exact arithmetic tower and exact linear algebra.

pub mod laurent;
pub mod linsolve;
pub mod matrix;
pub mod ratfunc;
pub mod rational;

pub use laurent::{poly_arith, LaurentPoly, PolyOp, Ring, RingRef};
pub use linsolve::{kernel_exact, rref_rows, solve_in_span, symmetric_signature, QMatrix, Rref};
pub use matrix::{matrix_inverse_exact, PolyMatrix, RatFuncMatrix};
pub use ratfunc::RationalFunction;
pub use rational::{int, rat, Rational};
