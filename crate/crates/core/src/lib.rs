//! Exact mass linearity for smooth lattice polytopes.
//!
//! Polytopes are given by primitive integer conormals and rational support
//! numbers. Volumes and moments are computed as exact polynomials in the
//! support numbers, which drives the mass linearity test, the facet
//! equivalence calculus, bundle recognition and the blowup/blowdown
//! reduction used by the four-dimensional classifier.

#![allow(clippy::needless_range_loop)]

pub mod classify;
pub mod construct;
pub mod error;
pub mod kernel;
pub mod masslinear;
pub mod measure;
pub mod polytope;
pub mod recognize;

pub use error::{Error, Result};
pub use kernel::{q, qi, IntVector, Monomial, MultiPoly, QMatrix, QVector, Rational};
pub use polytope::{Face, FacetMask, HPolytope, Vertex};
