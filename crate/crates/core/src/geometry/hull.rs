//! Exact convex hulls of small rational point sets.
//!
//! Facets of a full-dimensional point set are the extreme rays of the cone of
//! valid inequalities `{(w, c) : w·p + c >= 0 for every p}`. Those rays are
//! enumerated with the double description method over the integers, so there
//! is no tolerance anywhere. Point sets that are not full-dimensional are
//! handled by projecting onto a set of pivot coordinates that parametrize
//! their affine hull.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::linalg::{self, Rat};
use crate::error::{Error, Result};

pub const MAX_DIM: usize = 4;

#[derive(Clone, Debug)]
pub struct Facet {
    /// Primitive integer normal in ambient coordinates; `normal·x >= -offset`.
    pub normal: Vec<BigInt>,
    pub offset: Rat,
    /// Indices into `Hull::vertices` of the vertices lying on this facet.
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Hull {
    pub ambient: usize,
    pub affine_dim: usize,
    /// Extreme points, lexicographically sorted.
    pub vertices: Vec<Vec<Rat>>,
    /// `normal·x = value` for every point of the affine hull.
    pub equations: Vec<(Vec<BigInt>, Rat)>,
    /// Facets relative to the affine hull.
    pub facets: Vec<Facet>,
}

impl Hull {
    pub fn new(points: &[Vec<Rat>]) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::EmptyPointSet);
        };
        let ambient = first.len();
        if ambient == 0 {
            return Err(Error::InvalidInput("points must have at least one coordinate".into()));
        }
        if ambient > MAX_DIM {
            return Err(Error::DimensionCap { dim: ambient, max: MAX_DIM });
        }
        if let Some(p) = points.iter().find(|p| p.len() != ambient) {
            return Err(Error::DimensionMismatch { expected: ambient, found: p.len() });
        }
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();

        let base = pts[0].clone();
        let diffs: Vec<Vec<Rat>> = pts[1..].iter().map(|p| p.iter().zip(&base).map(|(a, b)| a - b).collect()).collect();
        let mut echelon = diffs.clone();
        let pivots = linalg::rref(&mut echelon, ambient);
        let affine_dim = pivots.len();
        let equations = linalg::nullspace(&diffs, ambient)
            .into_iter()
            .map(|e| {
                let e = linalg::primitive_int(&e);
                let value = linalg::dot_int_rat(&e, &base);
                (e, value)
            })
            .collect();

        if affine_dim == 0 {
            return Ok(Hull { ambient, affine_dim, vertices: vec![base], equations, facets: Vec::new() });
        }

        let projected: Vec<Vec<Rat>> = pts.iter().map(|p| pivots.iter().map(|&i| p[i].clone()).collect()).collect();
        let local = if affine_dim == 1 { interval_facets(&projected) } else { dd_facets(&projected)? };

        // A point is a vertex iff the normals of the facets through it span.
        let tight: Vec<Vec<usize>> = projected
            .iter()
            .map(|p| {
                local
                    .iter()
                    .enumerate()
                    .filter(|(_, (w, a))| (linalg::dot_int_rat(w, p) + a).is_zero())
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let mut vertex_of_point = vec![None; pts.len()];
        let mut vertices = Vec::new();
        for (i, t) in tight.iter().enumerate() {
            let normals: Vec<Vec<Rat>> =
                t.iter().map(|&f| local[f].0.iter().map(|x| Rat::from_integer(x.clone())).collect()).collect();
            if linalg::rank(&normals, affine_dim) == affine_dim {
                vertex_of_point[i] = Some(vertices.len());
                vertices.push(pts[i].clone());
            }
        }

        let facets = local
            .iter()
            .enumerate()
            .map(|(f, (w, a))| {
                let mut normal = vec![BigInt::zero(); ambient];
                for (j, &axis) in pivots.iter().enumerate() {
                    normal[axis] = w[j].clone();
                }
                let vertices = tight
                    .iter()
                    .enumerate()
                    .filter(|(_, t)| t.contains(&f))
                    .filter_map(|(i, _)| vertex_of_point[i])
                    .collect();
                Facet { normal, offset: a.clone(), vertices }
            })
            .collect();

        Ok(Hull { ambient, affine_dim, vertices, equations, facets })
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.ambient
    }

    #[cfg(test)]
    pub fn contains(&self, x: &[Rat]) -> bool {
        self.equations.iter().all(|(e, v)| &linalg::dot_int_rat(e, x) == v)
            && self.facets.iter().all(|f| !(linalg::dot_int_rat(&f.normal, x) + &f.offset).is_negative())
    }

    /// Integer form of the membership test, for scanning lattice points.
    pub fn integer_tester(&self) -> Result<IntegerTester> {
        let row = |normal: &[BigInt], rhs: &Rat| -> Result<(Vec<i128>, Rat)> {
            let coeffs = normal.iter().map(|x| x.to_i128().ok_or_else(overflow)).collect::<Result<Vec<_>>>()?;
            Ok((coeffs, rhs.clone()))
        };
        let mut equations = Vec::new();
        for (e, v) in &self.equations {
            let (c, v) = row(e, v)?;
            // no integer point satisfies an equation with fractional value
            if !v.is_integer() {
                return Ok(IntegerTester { equations: Vec::new(), inequalities: Vec::new(), empty: true });
            }
            equations.push((c, v.to_integer().to_i128().ok_or_else(overflow)?));
        }
        let mut inequalities = Vec::new();
        for f in &self.facets {
            let (c, a) = row(&f.normal, &f.offset)?;
            // normal·x >= -a with integer left side  <=>  normal·x >= ceil(-a)
            let bound = (-a).ceil().to_integer();
            inequalities.push((c, bound.to_i128().ok_or_else(overflow)?));
        }
        Ok(IntegerTester { equations, inequalities, empty: false })
    }
}

fn overflow() -> Error {
    Error::Internal("coefficient does not fit in 128 bits".into())
}

pub struct IntegerTester {
    equations: Vec<(Vec<i128>, i128)>,
    inequalities: Vec<(Vec<i128>, i128)>,
    empty: bool,
}

impl IntegerTester {
    pub fn contains(&self, x: &[i64]) -> bool {
        let dot = |c: &[i128]| -> i128 { c.iter().zip(x).map(|(a, &b)| a * b as i128).sum() };
        !self.empty
            && self.equations.iter().all(|(c, v)| dot(c) == *v)
            && self.inequalities.iter().all(|(c, b)| dot(c) >= *b)
    }
}

fn interval_facets(points: &[Vec<Rat>]) -> Vec<(Vec<BigInt>, Rat)> {
    let lo = points.iter().map(|p| &p[0]).min().unwrap().clone();
    let hi = points.iter().map(|p| &p[0]).max().unwrap().clone();
    vec![(vec![BigInt::one()], -lo), (vec![-BigInt::one()], hi)]
}

/// Fixed-width bitset over constraint indices.
#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

struct Ray {
    v: Vec<BigInt>,
    zeros: Bits,
}

fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = linalg::gcd_all(&v);
    if g.is_zero() || g.is_one() {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

/// Facet inequalities `(w, a)` with `w·p >= -a` of a full-dimensional point set in `Q^k`.
fn dd_facets(points: &[Vec<Rat>]) -> Result<Vec<(Vec<BigInt>, Rat)>> {
    let k = points[0].len();
    let d = k + 1;
    // homogenized constraint rows, scaled to integers
    let rows: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| {
            let l = p.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let mut row: Vec<BigInt> = p.iter().map(|x| x.numer() * (&l / x.denom())).collect();
            row.push(l);
            row
        })
        .collect();
    let as_rat = |r: &[BigInt]| -> Vec<Rat> { r.iter().map(|x| Rat::from_integer(x.clone())).collect() };

    let mut basis: Vec<usize> = Vec::with_capacity(d);
    let mut basis_rows: Vec<Vec<Rat>> = Vec::with_capacity(d);
    for (i, r) in rows.iter().enumerate() {
        basis_rows.push(as_rat(r));
        if linalg::rank(&basis_rows, d) == basis_rows.len() {
            basis.push(i);
            if basis.len() == d {
                break;
            }
        } else {
            basis_rows.pop();
        }
    }
    if basis.len() < d {
        return Err(Error::Internal("point set is not full-dimensional".into()));
    }

    // columns of the inverse of the basis matrix are the initial rays
    let mut aug: Vec<Vec<Rat>> = basis_rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..d).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            row
        })
        .collect();
    linalg::rref(&mut aug, d);
    let n = rows.len();
    let mut rays: Vec<Ray> = (0..d)
        .map(|j| {
            let col: Vec<Rat> = (0..d).map(|i| aug[i][d + j].clone()).collect();
            let mut zeros = Bits::new(n);
            for (jj, &b) in basis.iter().enumerate() {
                if jj != j {
                    zeros.set(b);
                }
            }
            Ray { v: linalg::primitive_int(&col), zeros }
        })
        .collect();

    for (i, row) in rows.iter().enumerate() {
        if basis.contains(&i) {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|r| dot_int(row, &r.v)).collect();
        let mut fresh = Vec::new();
        for (p, vp) in values.iter().enumerate().filter(|(_, v)| v.is_positive()) {
            for (q, vq) in values.iter().enumerate().filter(|(_, v)| v.is_negative()) {
                let common = rays[p].zeros.and(&rays[q].zeros);
                if (common.count() as usize) + 2 < d {
                    continue;
                }
                let blocked = rays.iter().enumerate().any(|(o, r)| o != p && o != q && common.subset_of(&r.zeros));
                if blocked {
                    continue;
                }
                let v: Vec<BigInt> = rays[q].v.iter().zip(&rays[p].v).map(|(a, b)| vp * a - vq * b).collect();
                let mut zeros = common;
                zeros.set(i);
                fresh.push(Ray { v: normalize(v), zeros });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (mut r, v) in rays.into_iter().zip(values) {
            if v.is_negative() {
                continue;
            }
            if v.is_zero() {
                r.zeros.set(i);
            }
            kept.push(r);
        }
        kept.extend(fresh);
        rays = kept;
    }

    rays.into_iter()
        .map(|r| {
            let (w, c) = r.v.split_at(k);
            let g = linalg::gcd_all(w);
            if g.is_zero() {
                return Err(Error::Internal("degenerate facet normal".into()));
            }
            let w: Vec<BigInt> = w.iter().map(|x| x / &g).collect();
            Ok((w, Rat::new(c[0].clone(), g)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::linalg::rat;

    fn pts(raw: &[&[i64]]) -> Vec<Vec<Rat>> {
        raw.iter().map(|p| p.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn square_with_interior_and_edge_points() {
        let h = Hull::new(&pts(&[&[0, 0], &[2, 0], &[2, 2], &[0, 2], &[1, 1], &[1, 0]])).unwrap();
        assert_eq!(h.vertices, pts(&[&[0, 0], &[0, 2], &[2, 0], &[2, 2]]));
        assert_eq!(h.facets.len(), 4);
        assert!(h.facets.iter().all(|f| f.vertices.len() == 2));
    }

    #[test]
    fn cube_has_six_facets() {
        let mut raw = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    raw.push(vec![rat(x), rat(y), rat(z)]);
                }
            }
        }
        raw.push(vec![Rat::new(1.into(), 2.into()), rat(0), rat(0)]);
        let h = Hull::new(&raw).unwrap();
        assert_eq!(h.vertices.len(), 8);
        assert_eq!(h.facets.len(), 6);
        assert!(h.facets.iter().all(|f| f.vertices.len() == 4));
    }

    #[test]
    fn octahedron_in_four_dimensions_style_cross_polytope() {
        let mut raw = Vec::new();
        for i in 0..4 {
            for s in [-1, 1] {
                let mut p = vec![rat(0); 4];
                p[i] = rat(s);
                raw.push(p);
            }
        }
        let h = Hull::new(&raw).unwrap();
        assert_eq!(h.vertices.len(), 8);
        assert_eq!(h.facets.len(), 16);
    }

    #[test]
    fn segment_in_plane_keeps_its_equation() {
        let h = Hull::new(&pts(&[&[0, 0], &[2, 1], &[4, 2]])).unwrap();
        assert_eq!(h.affine_dim, 1);
        assert_eq!(h.vertices, pts(&[&[0, 0], &[4, 2]]));
        assert_eq!(h.equations.len(), 1);
        assert!(h.contains(&[rat(2), rat(1)]));
        assert!(!h.contains(&[rat(2), rat(2)]));
        let t = h.integer_tester().unwrap();
        assert!(t.contains(&[2, 1]));
        assert!(!t.contains(&[1, 1]));
    }

    #[test]
    fn single_point() {
        let h = Hull::new(&pts(&[&[3, -1], &[3, -1]])).unwrap();
        assert_eq!(h.affine_dim, 0);
        assert_eq!(h.vertices.len(), 1);
    }

    #[test]
    fn rejects_five_dimensions() {
        let e = Hull::new(&[vec![rat(0); 5]]).unwrap_err();
        assert!(matches!(e, Error::DimensionCap { .. }));
    }
}
