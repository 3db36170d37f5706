//! Toric evaluation codes over finite fields.
//!
//! A lattice polytope `P ⊂ R^r` and a finite field `F_q` determine a linear
//! code of length `(q-1)^r`: evaluate every Laurent monomial with exponent in
//! `P ∩ Z^r` at every point of the torus `(F_q^*)^r`. This crate builds those
//! codes exactly, computes their dimension, and brackets their minimum
//! distance between an intersection-number lower bound and a box-embedding
//! upper bound, with an exhaustive search for small instances.

pub mod cli;
pub mod code;
pub mod distance;
pub mod error;
pub mod field;
pub mod geometry;
pub mod verify;

pub use error::{Error, Result};
