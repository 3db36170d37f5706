//! Intersection-number lower bounds on the minimum distance.
//!
//! A nonzero `f` with exponents in `P` is cut into the torus lines along the
//! last axis. On a line where `f` does not vanish identically it has at most
//! `m` zeros, `m` an intersection number computed as a mixed volume; the
//! lines where it does vanish are counted by `a`, itself a zero bound one
//! dimension down. The resulting zero count `Z` gives `d >= n - Z`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{
    mixed_volume, HalfspaceSystem, LatticePoint, LatticePolytope, Polytope, Rat, RationalPolytope, MAX_DIM,
};

/// Per-dimension data of the recursion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Level {
    pub r: usize,
    /// Axis (1-based, in the coordinates of this level) along which the lines run.
    pub line_axis: usize,
    /// Number of lines on which a codeword may vanish identically, after clamping.
    pub a: i128,
    /// Intersection number, clamped to `q - 1`.
    pub m: i128,
    pub zeros: i128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerBound {
    /// `n - Z`; may be zero, never clamped upward.
    pub bound: i64,
    pub trivial: bool,
    /// Outermost level first.
    pub levels: Vec<Level>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bound2d {
    pub bound: i64,
    pub a: i64,
    pub m: i64,
}

/// Longest horizontal fiber `max{u_1 - u'_1 : u_2 = u'_2}` over the lattice points of `P`.
pub fn a_bound_2d(p: &LatticePolytope) -> Result<i64> {
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: p.dim() });
    }
    let points = p.lattice_points()?;
    let mut best = 0;
    let mut spans: std::collections::BTreeMap<i64, (i64, i64)> = std::collections::BTreeMap::new();
    for u in &points {
        let (x, y) = (u.coords()[0], u.coords()[1]);
        let e = spans.entry(y).or_insert((x, x));
        e.0 = e.0.min(x);
        e.1 = e.1.max(x);
    }
    for (lo, hi) in spans.values() {
        best = best.max(hi - lo);
    }
    Ok(best)
}

fn floor_int(x: &Rat) -> Result<i128> {
    x.floor().to_integer().to_i128().ok_or_else(|| Error::Internal("intersection number overflows".into()))
}

/// `r! V_r(P, Q_1, ..., Q_{r-1})` with `Q_i` the zero polytope of `chi^{e_i}` on the fan of `P`.
fn intersection_number(p: &LatticePolytope) -> Result<i128> {
    let r = p.dim();
    let system = HalfspaceSystem::supporting(p)?;
    let mut args: Vec<RationalPolytope> = vec![p.to_rational()];
    for i in 1..r {
        args.push(system.char_zero_divisor_system(&LatticePoint::unit(r, i)?)?.vertex_enumeration()?);
    }
    let v = mixed_volume(&args)? * BigInt::from((1..=r as u64).product::<u64>());
    if v.is_negative() {
        return Err(Error::Internal("negative mixed volume".into()));
    }
    floor_int(&v)
}

/// The 2-D bound with lines `t_1 = const` running along axis 2.
pub fn intersection_lower_bound_2d(p: &LatticePolytope, q: u64) -> Result<Bound2d> {
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: p.dim() });
    }
    let side = (q - 1) as i128;
    let a = (a_bound_2d(p)? as i128).clamp(0, side);
    let m = intersection_number(p)?.min(side);
    let zeros = a * side + (side - a) * m;
    Ok(Bound2d { bound: to_i64(side * side - zeros)?, a: a as i64, m: m as i64 })
}

/// Variant that shrinks the polytope by `a'` copies of the zero divisor of `chi^{e_1}`
/// before taking the intersection number, maximized over `0 <= a' <= a`.
/// Reported for comparison only.
pub fn shifted_lower_bound_2d(p: &LatticePolytope, q: u64) -> Result<i64> {
    let side = (q - 1) as i128;
    let a = (a_bound_2d(p)? as i128).clamp(0, side);
    let system = HalfspaceSystem::supporting(p)?;
    let e1 = LatticePoint::unit(2, 1)?;
    let zero_part = system.char_zero_divisor_system(&e1)?.vertex_enumeration()?;
    let mut worst = 0;
    for shift in 0..=a {
        let shifted = match system.divisor_shift_system(&e1, shift as u64)?.vertex_enumeration() {
            Ok(s) => s,
            Err(Error::EmptyRegion) => p.to_rational(),
            Err(e) => return Err(e),
        };
        let m = floor_int(&(mixed_volume(&[shifted, zero_part.clone()])? * BigInt::from(2)))?.min(side);
        worst = worst.max(shift * side + (side - shift) * m);
    }
    to_i64(side * side - worst)
}

fn to_i64(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Internal("bound does not fit in 64 bits".into()))
}

/// Zero bound for a nonzero function with exponents in `p`, minimized over line directions.
fn zero_bound(p: &LatticePolytope, q: u64) -> Result<(i128, Vec<Level>)> {
    let r = p.dim();
    let side = (q - 1) as i128;
    let mut best: Option<(i128, Vec<Level>)> = None;
    for axis in (1..=r).rev() {
        let oriented = if axis == r { p.clone() } else { p.swap_axes(axis, r)? };
        let (a, deeper) = if r == 2 {
            ((a_bound_2d(&oriented)? as i128).clamp(0, side), Vec::new())
        } else {
            let (z, levels) = zero_bound(&oriented.project(r)?, q)?;
            (z.clamp(0, side.pow(r as u32 - 1)), levels)
        };
        let m = intersection_number(&oriented)?.min(side);
        let zeros = a * side + (side.pow(r as u32 - 1) - a) * m;
        if best.as_ref().is_none_or(|(z, _)| zeros < *z) {
            let mut levels = vec![Level { r, line_axis: axis, a, m, zeros }];
            levels.extend(deeper);
            best = Some((zeros, levels));
        }
    }
    best.ok_or_else(|| Error::Internal("no line direction".into()))
}

/// `n - Z_r` for `2 <= r <= 4`.
pub fn intersection_lower_bound(p: &LatticePolytope, q: u64) -> Result<LowerBound> {
    let r = p.dim();
    if r < 2 {
        return Err(Error::InvalidInput(format!("lower bound needs dimension r >= 2, got {r}")));
    }
    if r > MAX_DIM {
        return Err(Error::DimensionCap { dim: r, max: MAX_DIM });
    }
    let (zeros, levels) = zero_bound(p, q)?;
    let bound = to_i64(((q - 1) as i128).pow(r as u32) - zeros)?;
    Ok(LowerBound { bound, trivial: bound <= 0, levels })
}
