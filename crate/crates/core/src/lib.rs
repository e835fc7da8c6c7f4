//! Exact computational algebra for finite étale algebras and their
//! generators.
//!
//! The crate works over Q, prime fields F_p, and one-variable rational
//! function fields over these. It provides:
//!
//! * structure-constant algebras with étale testing and a closure-based
//!   generation oracle ([`algebra`]);
//! * the row/column separation criterion for split algebras, with explicit
//!   separating polynomials ([`algebra`]);
//! * canonical orbit points classifying an algebra together with a
//!   generating tuple, stabilization, and path verification over F(t)
//!   ([`classify`]);
//! * the degree-2 correspondence between quadratic algebras and trace-zero
//!   lines ([`quadratic`]);
//! * presented coordinate rings with sign actions, point enumeration over
//!   extension fields, symbolic subalgebra certificates, and fiberwise
//!   generation scans ([`families`]);
//! * finite graded rings (mod-2 projective-space cohomology, deleted-quadric
//!   motivic and Chow rings) and the generator lower-bound certificates they
//!   support ([`cohomology`]).
//!
//! All arithmetic is exact; all values are immutable after construction and
//! every operation is a pure function, so everything here is safe to share
//! across threads.

// Gaussian-elimination style code indexes several rows at once; iterator
// rewrites of those loops obscure the pivoting.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod classify;
pub mod cohomology;
pub mod error;
pub mod families;
pub mod field;
mod gfq;
pub mod linalg;
pub mod poly;
pub mod quadratic;

pub use error::{Error, Result};
pub use field::{FieldDescriptor, FieldElem};
