//! Reciprocal complements of polynomial rings.
//!
//! The reciprocal complement `R(D)` of a domain `D` is the subring of its
//! fraction field generated by the reciprocals of nonzero elements; every
//! element is a finite sum of unit fractions `1/d`. This crate decides and
//! certifies membership of rational functions in `R(D)` for `D = K[x1..xn]`
//! and monomial subalgebras, decomposes members into unit fractions, inverts
//! units, and computes factroid closures and related prime-spectrum data.

pub mod budget;
pub mod cert;
pub mod error;
pub mod factor;
pub mod factroid;
pub mod field;
pub mod linalg;
pub mod member;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod recip;
pub mod ring;
pub mod spectrum;
pub mod suite;

pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use poly::{Degree, Monomial, Poly};
pub use ring::{AmbientRing, WeightVector};
