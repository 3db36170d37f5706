//! Box-embedding upper bound.
//!
//! If the reductions of a box `u + [0,l_1] x ... x [0,l_r]` all lie in the
//! reduced exponent set of `P`, the code contains the product of `l_i`
//! distinct one-variable factors per axis, a word with exactly
//! `prod(q - 1 - l_i)` nonzero entries.

use std::collections::HashSet;

use serde::Serialize;

use crate::code::reduce_exponent;
use crate::error::{Error, Result};
use crate::geometry::{LatticePoint, LatticePolytope, Polytope, DEFAULT_LATTICE_GUARD};

/// Cap on membership tests spent on the full box search.
pub const DEFAULT_BOX_GUARD: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UpperBound {
    pub bound: u64,
    pub anchor: LatticePoint,
    pub lengths: Vec<i64>,
    /// Set when the full search hit its cap and only axis segments were tried.
    pub segments_only: bool,
}

struct Search {
    side: i64,
    members: HashSet<Vec<i64>>,
    budget: u128,
    best: u64,
    anchor: Vec<i64>,
    lengths: Vec<i64>,
}

impl Search {
    /// Whether all reductions of `anchor + box(l)` are in the reduced set.
    fn admissible(&mut self, anchor: &[i64], l: &[i64]) -> Option<bool> {
        let r = anchor.len();
        let mut offset = vec![0i64; r];
        loop {
            if self.budget == 0 {
                return None;
            }
            self.budget -= 1;
            let point: Vec<i64> = (0..r).map(|i| (anchor[i] + offset[i]).rem_euclid(self.side)).collect();
            if !self.members.contains(&point) {
                return Some(false);
            }
            let mut i = r;
            loop {
                if i == 0 {
                    return Some(true);
                }
                i -= 1;
                if offset[i] < l[i] {
                    offset[i] += 1;
                    break;
                }
                offset[i] = 0;
            }
        }
    }

    fn value(&self, l: &[i64]) -> u64 {
        l.iter().map(|&x| (self.side - x) as u64).product()
    }

    fn offer(&mut self, anchor: &[i64], l: &[i64]) {
        let v = self.value(l);
        if v < self.best {
            self.best = v;
            self.anchor = anchor.to_vec();
            self.lengths = l.to_vec();
        }
    }

    /// Depth-first over `l`, axis by axis; admissibility is monotone in `l`,
    /// so each axis grows until the first failure. `None` when the budget runs out.
    fn grow(&mut self, anchor: &[i64], l: &mut Vec<i64>, axis: usize) -> Option<()> {
        if axis == l.len() {
            return Some(());
        }
        for v in 0..self.side {
            l[axis] = v;
            if v > 0 && !self.admissible(anchor, l)? {
                break;
            }
            self.offer(anchor, l);
            self.grow(anchor, l, axis + 1)?;
        }
        l[axis] = 0;
        Some(())
    }
}

/// `min prod(q - 1 - l_i)` over admissible boxes, with the first minimizing box
/// in lexicographic order of anchor then lengths.
pub fn box_upper_bound(p: &LatticePolytope, q: u64, guard: u128) -> Result<UpperBound> {
    if q < 2 {
        return Err(Error::InvalidInput("field size must be at least 2".into()));
    }
    let r = p.dim();
    let side = (q - 1) as i64;
    let members: HashSet<Vec<i64>> =
        p.lattice_points_guarded(DEFAULT_LATTICE_GUARD)?.iter().map(|u| reduce_exponent(u, q).0).collect();
    let mut anchors: Vec<Vec<i64>> = members.iter().cloned().collect();
    anchors.sort();
    let n = (side as u64).pow(r as u32);
    let fresh = |budget| Search {
        side,
        members: members.clone(),
        budget,
        best: n,
        anchor: anchors[0].clone(),
        lengths: vec![0; r],
    };

    let mut search = fresh(guard);
    let mut complete = true;
    for a in &anchors {
        let mut l = vec![0; r];
        if search.grow(a, &mut l, 0).is_none() {
            complete = false;
            break;
        }
    }
    if !complete {
        search = fresh(u128::MAX);
        for a in &anchors {
            for axis in 0..r {
                let mut l = vec![0; r];
                search.offer(a, &l);
                for v in 1..side {
                    l[axis] = v;
                    if search.admissible(a, &l) != Some(true) {
                        break;
                    }
                    search.offer(a, &l);
                }
            }
        }
    }
    Ok(UpperBound {
        bound: search.best,
        anchor: LatticePoint::new(search.anchor),
        lengths: search.lengths,
        segments_only: !complete,
    })
}
