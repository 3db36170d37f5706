//! Minimum distance: exhaustive search and the two-sided bounds.

mod exact;
mod lower;
mod upper;

pub use exact::{exact_min_distance, message_count, DEFAULT_MESSAGE_LIMIT};
pub use lower::{
    a_bound_2d, intersection_lower_bound, intersection_lower_bound_2d, shifted_lower_bound_2d, Bound2d, Level,
    LowerBound,
};
pub use upper::{box_upper_bound, UpperBound, DEFAULT_BOX_GUARD};

use serde::Serialize;

use crate::code::ToricCode;
use crate::error::{Error, Result};
use crate::field::GaloisField;
use crate::geometry::LatticePolytope;

#[derive(Clone, Debug, Default, Serialize)]
pub struct Witnesses {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower: Option<LowerWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper: Option<UpperBound>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LowerWitness {
    pub levels: Vec<Level>,
    /// The 2-D variant with a shifted divisor, when `r = 2`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shifted_2d: Option<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DistanceReport {
    pub n: usize,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower_bound: Option<i64>,
    /// `max(1, lower_bound)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower_bound_effective: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper_bound: Option<u64>,
    pub witnesses: Witnesses,
    pub trivial_lower: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct DistanceOptions {
    pub exact: bool,
    pub bounds: bool,
    pub message_limit: u128,
    pub box_guard: u128,
    pub jobs: Option<usize>,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        DistanceOptions {
            exact: true,
            bounds: true,
            message_limit: DEFAULT_MESSAGE_LIMIT,
            box_guard: DEFAULT_BOX_GUARD,
            jobs: None,
        }
    }
}

impl DistanceReport {
    pub fn compute(code: &ToricCode, opts: &DistanceOptions) -> Result<Self> {
        let q = code.field.order();
        let mut report = DistanceReport {
            n: code.n,
            k: code.k,
            exact: None,
            lower_bound: None,
            lower_bound_effective: None,
            upper_bound: None,
            witnesses: Witnesses::default(),
            trivial_lower: false,
        };
        if opts.bounds {
            let lb = intersection_lower_bound(&code.polytope, q)?;
            let shifted_2d = match code.dim() {
                2 => Some(shifted_lower_bound_2d(&code.polytope, q)?),
                _ => None,
            };
            report.lower_bound = Some(lb.bound);
            report.lower_bound_effective = Some(lb.bound.max(1));
            report.trivial_lower = lb.trivial;
            report.witnesses.lower = Some(LowerWitness { levels: lb.levels, shifted_2d });
            let ub = box_upper_bound(&code.polytope, q, opts.box_guard)?;
            report.upper_bound = Some(ub.bound);
            report.witnesses.upper = Some(ub);
        }
        if opts.exact {
            report.exact = Some(exact_min_distance(code, opts.message_limit, opts.jobs)?);
        }
        if let (Some(l), Some(d), Some(u)) = (report.lower_bound_effective, report.exact, report.upper_bound) {
            if l > d as i64 || d as u64 > u {
                return Err(Error::Internal(format!("bounds {l} <= {d} <= {u} violated")));
            }
        }
        Ok(report)
    }
}

/// `[(q-1)^r, prod(b_i + 1), prod(q - 1 - b_i)]` for the box with sides `b`.
pub fn hypercube_params(b: &[i64], q: u64) -> Result<(u128, u128, u128)> {
    let side = q as i128 - 1;
    if let Some(&bad) = b.iter().find(|&&x| x < 0 || x as i128 >= side) {
        return Err(Error::InvalidInput(format!("box side {bad} must lie in [0, q-2] = [0, {}]", side - 1)));
    }
    let n = (side as u128).pow(b.len() as u32);
    let k = b.iter().map(|&x| x as u128 + 1).product();
    let d = b.iter().map(|&x| (side - x as i128) as u128).product();
    Ok((n, k, d))
}

#[derive(Clone, Debug, Serialize)]
pub struct Joyner42Report {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    /// `N = q - 2`.
    pub big_n: i64,
    pub window_lower: i64,
    pub window_upper: i64,
    pub window_holds: bool,
    /// `n - 2 N vol_2(P)`.
    pub conjectured_bound: i64,
    pub exact: usize,
    pub refuted: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Joyner43Report {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub lattice_points: usize,
    /// `n - r! #(P ∩ M)`.
    pub conjectured_bound: i64,
    pub exact: usize,
    pub refuted: bool,
}

fn triangle_code(points: &[&[i64]], q: u64) -> Result<ToricCode> {
    let field = GaloisField::from_order(q, crate::field::DEFAULT_FIELD_GUARD)?;
    ToricCode::build(&LatticePolytope::from_coords(points)?, &field)
}

/// Checks the conjectured bound `d >= n - 2N vol(P)` on the triangle `(0,0), (1,1), (0,2)`.
pub fn joyner_42_check(q: u64, limit: u128) -> Result<Joyner42Report> {
    let code = triangle_code(&[&[0, 0], &[1, 1], &[0, 2]], q)?;
    let vol = crate::geometry::volume(&code.polytope)?;
    let vol: i64 =
        vol.to_integer().try_into().map_err(|_| Error::Internal("triangle volume is not integral".into()))?;
    let big_n = q as i64 - 2;
    let n = code.n as i64;
    let (window_lower, window_upper) = (2 * big_n * vol, 2 * big_n * big_n * vol);
    let window_holds = big_n > 1 && window_lower <= n && n <= window_upper;
    let conjectured_bound = n - 2 * big_n * vol;
    let exact = exact_min_distance(&code, limit, None)?;
    Ok(Joyner42Report {
        q,
        n: code.n,
        k: code.k,
        big_n,
        window_lower,
        window_upper,
        window_holds,
        conjectured_bound,
        exact,
        refuted: window_holds && conjectured_bound > exact as i64,
    })
}

/// Checks the conjectured bound `d >= n - r! #(P ∩ M)` on the unit triangle.
pub fn joyner_43_check(q: u64, limit: u128) -> Result<Joyner43Report> {
    let code = triangle_code(&[&[0, 0], &[1, 0], &[0, 1]], q)?;
    let points = code.lattice_point_count();
    let r = code.dim();
    let factorial: usize = (1..=r).product();
    let conjectured_bound = code.n as i64 - (factorial * points) as i64;
    let exact = exact_min_distance(&code, limit, None)?;
    Ok(Joyner43Report {
        q,
        n: code.n,
        k: code.k,
        lattice_points: points,
        conjectured_bound,
        exact,
        refuted: conjectured_bound > exact as i64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypercube_closed_form() {
        assert_eq!(hypercube_params(&[1, 2], 5).unwrap(), (16, 6, 6));
        assert_eq!(hypercube_params(&[1, 1, 1], 4).unwrap(), (27, 8, 8));
        assert_eq!(hypercube_params(&[0, 0, 0], 5).unwrap(), (64, 1, 64));
        assert!(hypercube_params(&[4, 0], 5).is_err());
    }

    #[test]
    fn joyner_42() {
        let r = joyner_42_check(5, DEFAULT_MESSAGE_LIMIT).unwrap();
        assert!(r.window_holds);
        assert_eq!((r.exact, r.conjectured_bound, r.refuted), (8, 10, true));
        let r = joyner_42_check(7, DEFAULT_MESSAGE_LIMIT).unwrap();
        assert_eq!((r.k, r.exact, r.conjectured_bound, r.refuted), (4, 24, 26, true));
        let r = joyner_42_check(4, DEFAULT_MESSAGE_LIMIT).unwrap();
        assert!(!r.window_holds);
        assert!(!r.refuted);
    }

    #[test]
    fn joyner_43() {
        let r = joyner_43_check(8, DEFAULT_MESSAGE_LIMIT).unwrap();
        assert_eq!((r.k, r.exact, r.conjectured_bound, r.refuted), (3, 42, 43, true));
        let r = joyner_43_check(9, DEFAULT_MESSAGE_LIMIT).unwrap();
        assert_eq!((r.k, r.exact, r.conjectured_bound, r.refuted), (3, 56, 58, true));
        let r = joyner_43_check(5, DEFAULT_MESSAGE_LIMIT).unwrap();
        assert_eq!((r.exact, r.conjectured_bound, r.refuted), (12, 10, false));
    }

    #[test]
    fn report_sandwich_on_hexagon() {
        let f = GaloisField::new(5, 1).unwrap();
        let hex = LatticePolytope::from_coords(&[&[0, 0], &[1, 0], &[2, 1], &[2, 2], &[1, 2], &[0, 1]]).unwrap();
        let code = ToricCode::build(&hex, &f).unwrap();
        let r = DistanceReport::compute(&code, &DistanceOptions::default()).unwrap();
        assert_eq!((r.k, r.lower_bound, r.upper_bound), (7, Some(4), Some(8)));
        let d = r.exact.unwrap();
        assert!((4..=8).contains(&d));
    }
}
