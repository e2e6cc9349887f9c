//! Exact arithmetic substrate: rationals, dense linear algebra and sparse
//! polynomials.

pub mod linalg;
pub mod poly;
pub mod rational;

pub use linalg::{
    determinant, dot, int_vec, inverse, lattice_length, mat_vec, nullspace, primitive, primitive_direction, rank, rref,
    solve_linear, to_rational_vec, transpose, IntVector, LinearSolution, QMatrix, QVector,
};
pub use poly::{poly_add, poly_eval, poly_is_zero, poly_mul, Monomial, MultiPoly, MAX_VARS};
pub use rational::{parse_rational_list, q, qi, ParseRationalError, Rational};
