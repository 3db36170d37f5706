//! Exact geometry of lattice polytopes.
//!
//! Points of the character lattice `M` and of the dual lattice `N` are both
//! stored as [`LatticePoint`]; [`pairing`] is the integer dot product between
//! them. Everything downstream of a vertex list is computed with arbitrary
//! precision integers and rationals.

mod halfspace;
pub(crate) mod hull;
pub mod linalg;
mod measure;
mod polytope;

pub use halfspace::{Halfspace, HalfspaceSystem};
pub use hull::MAX_DIM;
pub use linalg::Rat;
pub use measure::{mixed_volume, pick_count, volume};
pub use polytope::{
    axis_segment, minkowski_sum, width, LatticePolytope, Polytope, RationalPolytope, DEFAULT_LATTICE_GUARD,
};

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticePoint(coords)
    }

    pub fn zero(dim: usize) -> Self {
        LatticePoint(vec![0; dim])
    }

    /// The `i`-th standard basis vector, 1-based.
    pub fn unit(dim: usize, axis: usize) -> Result<Self> {
        if axis == 0 || axis > dim {
            return Err(Error::AxisOutOfRange { axis, dim });
        }
        let mut v = vec![0; dim];
        v[axis - 1] = 1;
        Ok(LatticePoint(v))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn to_rational(&self) -> Vec<Rat> {
        self.0.iter().map(|&x| linalg::rat(x)).collect()
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(v: Vec<i64>) -> Self {
        LatticePoint(v)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// The dual pairing `<u, v>` between a point of `M` and a point of `N`.
pub fn pairing(u: &LatticePoint, v: &LatticePoint) -> Result<i64> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch { expected: u.dim(), found: v.dim() });
    }
    Ok(u.0.iter().zip(&v.0).map(|(a, b)| a * b).sum())
}
