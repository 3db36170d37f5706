use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::hull::{Hull, MAX_DIM};
use super::linalg::{self, Rat};
use super::polytope::{LatticePolytope, RationalPolytope};
use super::{pairing, LatticePoint};
use crate::error::{Error, Result};

/// The halfspace `{x : <x, normal> >= -offset}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: LatticePoint,
    pub offset: Rat,
}

/// Intersection of halfspaces with primitive inward normals.
///
/// Rows are kept in a canonical order: in the plane by the angle of the
/// normal measured counterclockwise from the positive first axis, in other
/// dimensions by decreasing lexicographic normal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfspaceSystem {
    dim: usize,
    rows: Vec<Halfspace>,
}

fn angle_cmp(a: &[i64], b: &[i64]) -> Ordering {
    let half = |v: &[i64]| if v[1] > 0 || (v[1] == 0 && v[0] > 0) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| {
        let cross = a[0] as i128 * b[1] as i128 - a[1] as i128 * b[0] as i128;
        0.cmp(&cross)
    })
}

fn to_i64(v: &[BigInt]) -> Result<LatticePoint> {
    v.iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::Internal("normal exceeds 64 bits".into())))
        .collect::<Result<Vec<_>>>()
        .map(LatticePoint)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl HalfspaceSystem {
    pub fn new(dim: usize, mut rows: Vec<Halfspace>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.normal.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: r.normal.dim() });
        }
        if dim == 2 {
            rows.sort_by(|a, b| angle_cmp(&a.normal.0, &b.normal.0));
        } else {
            rows.sort_by(|a, b| b.normal.cmp(&a.normal));
        }
        Ok(HalfspaceSystem { dim, rows })
    }

    pub fn from_rows(dim: usize, rows: &[(&[i64], i64)]) -> Result<Self> {
        Self::new(
            dim,
            rows.iter()
                .map(|(n, a)| Halfspace { normal: LatticePoint::new(n.to_vec()), offset: linalg::rat(*a) })
                .collect(),
        )
    }

    /// Irredundant facet description of a full-dimensional lattice polytope.
    pub fn facet_representation(p: &LatticePolytope) -> Result<Self> {
        let hull = p.hull()?;
        if !hull.is_full_dimensional() {
            return Err(Error::NotFullDimensional { dim: hull.ambient, affine_dim: hull.affine_dim });
        }
        Self::from_hull(&hull)
    }

    /// Like [`Self::facet_representation`], but also accepts polytopes that
    /// are not full-dimensional: each affine equation of the hull enters as a
    /// pair of opposite rows.
    pub fn supporting(p: &LatticePolytope) -> Result<Self> {
        Self::from_hull(&p.hull()?)
    }

    fn from_hull(hull: &Hull) -> Result<Self> {
        let mut rows = Vec::new();
        for (e, v) in &hull.equations {
            let n = to_i64(e)?;
            let neg = LatticePoint(n.0.iter().map(|x| -x).collect());
            rows.push(Halfspace { normal: n, offset: -v.clone() });
            rows.push(Halfspace { normal: neg, offset: v.clone() });
        }
        for f in &hull.facets {
            rows.push(Halfspace { normal: to_i64(&f.normal)?, offset: f.offset.clone() });
        }
        Self::new(hull.ambient, rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Halfspace] {
        &self.rows
    }

    pub fn offsets(&self) -> Vec<Rat> {
        self.rows.iter().map(|r| r.offset.clone()).collect()
    }

    pub fn with_offsets(&self, offsets: Vec<Rat>) -> Result<Self> {
        if offsets.len() != self.rows.len() {
            return Err(Error::DimensionMismatch { expected: self.rows.len(), found: offsets.len() });
        }
        let rows =
            self.rows.iter().zip(offsets).map(|(r, offset)| Halfspace { normal: r.normal.clone(), offset }).collect();
        Ok(HalfspaceSystem { dim: self.dim, rows })
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.rows.iter().all(|r| !self.slack(r, x).is_negative())
    }

    fn slack(&self, r: &Halfspace, x: &[Rat]) -> Rat {
        r.normal.0.iter().zip(x).fold(r.offset.clone(), |acc, (a, b)| acc + b * BigInt::from(*a))
    }

    /// The polytope of the zero part of `div(χ^u)`: offsets `max(<u, v_F>, 0)`.
    pub fn char_zero_divisor_system(&self, u: &LatticePoint) -> Result<Self> {
        self.divisor_rows(u, |_, p| linalg::rat(p.max(0)))
    }

    /// Offsets `a_F - a·max(<u, v_F>, 0)`.
    pub fn divisor_shift_system(&self, u: &LatticePoint, a: u64) -> Result<Self> {
        let a = a as i64;
        self.divisor_rows(u, |off, p| off - linalg::rat(a * p.max(0)))
    }

    fn divisor_rows(&self, u: &LatticePoint, f: impl Fn(&Rat, i64) -> Rat) -> Result<Self> {
        let offsets = self.rows.iter().map(|r| Ok(f(&r.offset, pairing(u, &r.normal)?))).collect::<Result<Vec<_>>>()?;
        self.with_offsets(offsets)
    }

    fn normal_matrix(&self) -> Vec<Vec<Rat>> {
        self.rows.iter().map(|r| r.normal.to_rational()).collect()
    }

    /// Feasible intersection points of `dim` independent boundary hyperplanes.
    fn basic_solutions(&self) -> Vec<Vec<Rat>> {
        let mut out: Vec<Vec<Rat>> = Vec::new();
        let normals = self.normal_matrix();
        for combo in combinations(self.rows.len(), self.dim) {
            let a: Vec<Vec<Rat>> = combo.iter().map(|&i| normals[i].clone()).collect();
            let b: Vec<Rat> = combo.iter().map(|&i| -self.rows[i].offset.clone()).collect();
            if let Some(x) = linalg::solve(&a, &b) {
                if self.contains(&x) && !out.contains(&x) {
                    out.push(x);
                }
            }
        }
        out
    }

    fn has_recession_direction(&self) -> bool {
        let normals = self.normal_matrix();
        for combo in combinations(self.rows.len(), self.dim - 1) {
            let a: Vec<Vec<Rat>> = combo.iter().map(|&i| normals[i].clone()).collect();
            let ns = linalg::nullspace(&a, self.dim);
            if ns.len() != 1 {
                continue;
            }
            for sign in [1, -1] {
                let d: Vec<Rat> = ns[0].iter().map(|x| x * BigInt::from(sign)).collect();
                let ok = normals
                    .iter()
                    .all(|n| !n.iter().zip(&d).fold(Rat::zero(), |acc, (a, b)| acc + a * b).is_negative());
                if ok {
                    return true;
                }
            }
        }
        false
    }

    /// Exact vertex set of the region.
    pub fn vertex_enumeration(&self) -> Result<RationalPolytope> {
        if self.dim > MAX_DIM {
            return Err(Error::DimensionCap { dim: self.dim, max: MAX_DIM });
        }
        let normals = self.normal_matrix();
        let rank = linalg::rank(&normals, self.dim);
        if rank < self.dim {
            // the region is invariant under the kernel of the normals; pin it
            // to the orthogonal complement to decide emptiness
            let mut rows = self.rows.clone();
            for k in linalg::nullspace(&normals, self.dim) {
                let k = to_i64(&linalg::primitive_int(&k))?;
                let neg = LatticePoint(k.0.iter().map(|x| -x).collect());
                rows.push(Halfspace { normal: k, offset: Rat::zero() });
                rows.push(Halfspace { normal: neg, offset: Rat::zero() });
            }
            let pinned = HalfspaceSystem { dim: self.dim, rows };
            return Err(if pinned.basic_solutions().is_empty() { Error::EmptyRegion } else { Error::UnboundedRegion });
        }
        let points = self.basic_solutions();
        if points.is_empty() {
            return Err(Error::EmptyRegion);
        }
        if self.has_recession_direction() {
            return Err(Error::UnboundedRegion);
        }
        RationalPolytope::from_points(&points)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::linalg::rat;
    use crate::geometry::{volume, Polytope};

    fn normals(h: &HalfspaceSystem) -> Vec<Vec<i64>> {
        h.rows().iter().map(|r| r.normal.0.clone()).collect()
    }

    fn hexagon(b: i64) -> LatticePolytope {
        LatticePolytope::from_coords(&[&[0, 0], &[b, 0], &[2 * b, b], &[2 * b, 2 * b], &[b, 2 * b], &[0, b]]).unwrap()
    }

    #[test]
    fn square_facets() {
        let (b1, b2) = (3, 2);
        let h = HalfspaceSystem::facet_representation(&LatticePolytope::hyperbox(&[b1, b2]).unwrap()).unwrap();
        assert_eq!(normals(&h), vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]]);
        assert_eq!(h.offsets(), vec![rat(0), rat(0), rat(b1), rat(b2)]);
    }

    #[test]
    fn hexagon_facets() {
        let b = 2;
        let h = HalfspaceSystem::facet_representation(&hexagon(b)).unwrap();
        assert_eq!(normals(&h), vec![vec![1, 0], vec![0, 1], vec![-1, 1], vec![-1, 0], vec![0, -1], vec![1, -1]]);
        assert_eq!(h.offsets(), vec![rat(0), rat(0), rat(b), rat(2 * b), rat(2 * b), rat(b)]);
    }

    #[test]
    fn unit_segment_facets() {
        let h = HalfspaceSystem::facet_representation(&LatticePolytope::hyperbox(&[1]).unwrap()).unwrap();
        assert_eq!(normals(&h), vec![vec![1], vec![-1]]);
        assert_eq!(h.offsets(), vec![rat(0), rat(1)]);
    }

    #[test]
    fn lower_dimensional_input_is_rejected() {
        let seg = LatticePolytope::from_coords(&[&[0, 0], &[3, 0]]).unwrap();
        assert!(matches!(
            HalfspaceSystem::facet_representation(&seg),
            Err(Error::NotFullDimensional { dim: 2, affine_dim: 1 })
        ));
        let sup = HalfspaceSystem::supporting(&seg).unwrap();
        assert_eq!(sup.vertex_enumeration().unwrap(), seg.to_rational());
    }

    #[test]
    fn square_round_trip() {
        let p = LatticePolytope::hyperbox(&[4, 1]).unwrap();
        let h = HalfspaceSystem::facet_representation(&p).unwrap();
        assert_eq!(h.vertex_enumeration().unwrap(), p.to_rational());
    }

    #[test]
    fn shifted_hexagon_vertices() {
        // shoelace on the listed vertices must give 3b^2 - 2ab
        for (b, a) in [(2, 1), (3, 1), (3, 2), (4, 3)] {
            let h = HalfspaceSystem::facet_representation(&hexagon(b)).unwrap();
            let mut off = h.offsets();
            off[0] = rat(-a);
            off[5] = rat(b - a);
            let got = h.with_offsets(off).unwrap().vertex_enumeration().unwrap();
            let expected = LatticePolytope::from_coords(&[
                &[a, 0],
                &[b, 0],
                &[2 * b, b],
                &[2 * b, 2 * b],
                &[b + a, 2 * b],
                &[a, b],
            ])
            .unwrap();
            assert_eq!(got, expected.to_rational());
            let ring = [(a, 0), (b, 0), (2 * b, b), (2 * b, 2 * b), (b + a, 2 * b), (a, b)];
            let twice: i64 = (0..6)
                .map(|i| {
                    let (x0, y0) = ring[i];
                    let (x1, y1) = ring[(i + 1) % 6];
                    x0 * y1 - x1 * y0
                })
                .sum();
            assert_eq!(twice, 2 * (3 * b * b - 2 * a * b));
            assert_eq!(volume(&got).unwrap(), rat(3 * b * b - 2 * a * b));
        }
    }

    #[test]
    fn degenerate_segment_system() {
        let h = HalfspaceSystem::from_rows(2, &[(&[1, 0], 1), (&[-1, 0], 0), (&[0, 1], 0), (&[0, -1], 0)]).unwrap();
        let seg = h.vertex_enumeration().unwrap();
        assert_eq!(seg.rational_vertices(), vec![vec![rat(-1), rat(0)], vec![rat(0), rat(0)]]);
    }

    #[test]
    fn empty_and_unbounded_regions() {
        let empty =
            HalfspaceSystem::from_rows(2, &[(&[1, 0], -2), (&[-1, 0], 1), (&[0, 1], 0), (&[0, -1], 0)]).unwrap();
        assert!(matches!(empty.vertex_enumeration(), Err(Error::EmptyRegion)));
        let quadrant = HalfspaceSystem::from_rows(2, &[(&[1, 0], 0), (&[0, 1], 0)]).unwrap();
        assert!(matches!(quadrant.vertex_enumeration(), Err(Error::UnboundedRegion)));
        let slab = HalfspaceSystem::from_rows(2, &[(&[1, 0], 0), (&[-1, 0], 1)]).unwrap();
        assert!(matches!(slab.vertex_enumeration(), Err(Error::UnboundedRegion)));
        let empty_slab = HalfspaceSystem::from_rows(2, &[(&[1, 0], -3), (&[-1, 0], 1)]).unwrap();
        assert!(matches!(empty_slab.vertex_enumeration(), Err(Error::EmptyRegion)));
    }

    #[test]
    fn char_zero_systems() {
        let sq = HalfspaceSystem::facet_representation(&LatticePolytope::hyperbox(&[2, 3]).unwrap()).unwrap();
        let e1 = LatticePoint::unit(2, 1).unwrap();
        let z = sq.char_zero_divisor_system(&e1).unwrap();
        assert_eq!(z.offsets(), vec![rat(1), rat(0), rat(0), rat(0)]);
        assert_eq!(
            z.vertex_enumeration().unwrap().rational_vertices(),
            vec![vec![rat(-1), rat(0)], vec![rat(0), rat(0)]]
        );

        let hex = HalfspaceSystem::facet_representation(&hexagon(2)).unwrap();
        let z = hex.char_zero_divisor_system(&e1).unwrap();
        assert_eq!(z.offsets(), vec![rat(1), rat(0), rat(0), rat(0), rat(0), rat(1)]);

        let zero = hex.char_zero_divisor_system(&LatticePoint::zero(2)).unwrap();
        assert!(zero.offsets().iter().all(|o| o.is_zero()));
    }

    #[test]
    fn divisor_shifts() {
        let (b1, b2) = (5, 3);
        let sq = HalfspaceSystem::facet_representation(&LatticePolytope::hyperbox(&[b1, b2]).unwrap()).unwrap();
        let e1 = LatticePoint::unit(2, 1).unwrap();
        assert_eq!(sq.divisor_shift_system(&e1, 0).unwrap(), sq);
        for a in 0..=b1 {
            let p = sq.divisor_shift_system(&e1, a as u64).unwrap().vertex_enumeration().unwrap();
            assert_eq!(volume(&p).unwrap(), rat((b1 - a) * b2));
        }
        let b = 3;
        let hex = HalfspaceSystem::facet_representation(&hexagon(b)).unwrap();
        for a in 0..=b {
            let p = hex.divisor_shift_system(&e1, a as u64).unwrap().vertex_enumeration().unwrap();
            assert_eq!(volume(&p).unwrap(), rat(3 * b * b - 2 * a * b));
        }
    }

    #[test]
    fn cube_round_trip_in_three_dimensions() {
        let p = LatticePolytope::hyperbox(&[1, 2, 3]).unwrap();
        let h = HalfspaceSystem::facet_representation(&p).unwrap();
        assert_eq!(h.rows().len(), 6);
        assert_eq!(h.vertex_enumeration().unwrap(), p.to_rational());
    }
}
