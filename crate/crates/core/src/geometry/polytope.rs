use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::hull::Hull;
use super::linalg::Rat;
use super::LatticePoint;
use crate::error::{Error, Result};

/// Default cap on the number of bounding-box points scanned by lattice-point enumeration.
pub const DEFAULT_LATTICE_GUARD: u128 = 10_000_000;

/// Anything with an exact vertex list.
pub trait Polytope {
    fn dim(&self) -> usize;
    fn rational_vertices(&self) -> Vec<Vec<Rat>>;
}

/// Convex hull of finitely many points of `Z^r`, stored by its vertices in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<LatticePoint>,
}

/// Convex polytope with rational vertices, e.g. the region cut out by a
/// shifted halfspace system.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPolytope {
    dim: usize,
    vertices: Vec<Vec<Rat>>,
}

#[derive(Serialize, Deserialize)]
struct PolytopeFile {
    vertices: Vec<Vec<i64>>,
}

impl Polytope for LatticePolytope {
    fn dim(&self) -> usize {
        self.dim
    }
    fn rational_vertices(&self) -> Vec<Vec<Rat>> {
        self.vertices.iter().map(LatticePoint::to_rational).collect()
    }
}

impl Polytope for RationalPolytope {
    fn dim(&self) -> usize {
        self.dim
    }
    fn rational_vertices(&self) -> Vec<Vec<Rat>> {
        self.vertices.clone()
    }
}

fn integral(v: &[Rat]) -> Result<LatticePoint> {
    v.iter()
        .map(|x| {
            if !x.is_integer() {
                return Err(Error::Internal(format!("non-integral vertex coordinate {x}")));
            }
            x.to_integer().to_i64().ok_or_else(|| Error::Internal("vertex coordinate exceeds 64 bits".into()))
        })
        .collect::<Result<Vec<_>>>()
        .map(LatticePoint)
}

impl LatticePolytope {
    /// Convex hull of the given points; non-extreme points are dropped.
    pub fn from_points<I: IntoIterator<Item = LatticePoint>>(points: I) -> Result<Self> {
        let pts: Vec<Vec<Rat>> = points.into_iter().map(|p| p.to_rational()).collect();
        let hull = Hull::new(&pts)?;
        let vertices = hull.vertices.iter().map(|v| integral(v)).collect::<Result<Vec<_>>>()?;
        Ok(LatticePolytope { dim: hull.ambient, vertices })
    }

    pub fn from_coords(points: &[&[i64]]) -> Result<Self> {
        Self::from_points(points.iter().map(|p| LatticePoint::new(p.to_vec())))
    }

    /// The box `[0,b_1] x ... x [0,b_r]`.
    pub fn hyperbox(sides: &[i64]) -> Result<Self> {
        if sides.iter().any(|&b| b < 0) {
            return Err(Error::InvalidInput("box sides must be nonnegative".into()));
        }
        let r = sides.len();
        let corners = (0..1usize << r)
            .map(|mask| LatticePoint::new((0..r).map(|i| if mask >> i & 1 == 1 { sides[i] } else { 0 }).collect()));
        Self::from_points(corners)
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub(crate) fn hull(&self) -> Result<Hull> {
        Hull::new(&self.rational_vertices())
    }

    pub fn affine_dim(&self) -> Result<usize> {
        Ok(self.hull()?.affine_dim)
    }

    pub fn to_rational(&self) -> RationalPolytope {
        RationalPolytope { dim: self.dim, vertices: self.rational_vertices() }
    }

    pub fn lattice_points(&self) -> Result<Vec<LatticePoint>> {
        lattice_points(self, DEFAULT_LATTICE_GUARD)
    }

    pub fn lattice_points_guarded(&self, guard: u128) -> Result<Vec<LatticePoint>> {
        lattice_points(self, guard)
    }

    pub fn minkowski_sum(&self, other: &LatticePolytope) -> Result<LatticePolytope> {
        let sum = minkowski_sum(self, other)?;
        Ok(LatticePolytope { dim: sum.dim, vertices: sum.vertices.iter().map(|v| integral(v)).collect::<Result<_>>()? })
    }

    /// Hull of the vertices with coordinate `drop_axis` (1-based) deleted.
    pub fn project(&self, drop_axis: usize) -> Result<LatticePolytope> {
        if self.dim < 2 {
            return Err(Error::InvalidInput("projection needs dimension at least 2".into()));
        }
        if drop_axis == 0 || drop_axis > self.dim {
            return Err(Error::AxisOutOfRange { axis: drop_axis, dim: self.dim });
        }
        Self::from_points(self.vertices.iter().map(|v| {
            let mut c = v.0.clone();
            c.remove(drop_axis - 1);
            LatticePoint(c)
        }))
    }

    /// Exchanges two coordinates (1-based).
    pub fn swap_axes(&self, i: usize, j: usize) -> Result<LatticePolytope> {
        for axis in [i, j] {
            if axis == 0 || axis > self.dim {
                return Err(Error::AxisOutOfRange { axis, dim: self.dim });
            }
        }
        Self::from_points(self.vertices.iter().map(|v| {
            let mut c = v.0.clone();
            c.swap(i - 1, j - 1);
            LatticePoint(c)
        }))
    }

    pub fn translate(&self, by: &LatticePoint) -> Result<LatticePolytope> {
        if by.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: by.dim() });
        }
        Self::from_points(
            self.vertices.iter().map(|v| LatticePoint(v.0.iter().zip(&by.0).map(|(a, b)| a + b).collect())),
        )
    }

    /// `max - min` of each coordinate over the vertices.
    pub fn extents(&self) -> Vec<i64> {
        (0..self.dim)
            .map(|i| {
                let lo = self.vertices.iter().map(|v| v.0[i]).min().unwrap();
                let hi = self.vertices.iter().map(|v| v.0[i]).max().unwrap();
                hi - lo
            })
            .collect()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PolytopeFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("polytope JSON: {e}")))?;
        let Some(first) = file.vertices.first() else {
            return Err(Error::InvalidInput("polytope JSON has no vertices".into()));
        };
        let r = first.len();
        if r == 0 {
            return Err(Error::InvalidInput("polytope vertices must have at least one coordinate".into()));
        }
        if file.vertices.iter().any(|v| v.len() != r) {
            return Err(Error::InvalidInput("polytope vertex rows differ in length".into()));
        }
        Self::from_points(file.vertices.into_iter().map(LatticePoint))
    }

    pub fn to_json(&self) -> String {
        let file = PolytopeFile { vertices: self.vertices.iter().map(|v| v.0.clone()).collect() };
        serde_json::to_string(&file).expect("polytope serializes")
    }
}

impl RationalPolytope {
    pub fn from_points(points: &[Vec<Rat>]) -> Result<Self> {
        let hull = Hull::new(points)?;
        Ok(RationalPolytope { dim: hull.ambient, vertices: hull.vertices })
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn lattice_points(&self) -> Result<Vec<LatticePoint>> {
        lattice_points(self, DEFAULT_LATTICE_GUARD)
    }

    /// `Some` when every vertex is integral.
    pub fn to_lattice(&self) -> Option<LatticePolytope> {
        let vertices = self.vertices.iter().map(|v| integral(v).ok()).collect::<Option<Vec<_>>>()?;
        Some(LatticePolytope { dim: self.dim, vertices })
    }
}

impl From<&LatticePolytope> for RationalPolytope {
    fn from(p: &LatticePolytope) -> Self {
        p.to_rational()
    }
}

/// All points of `P ∩ Z^r` in lexicographic order.
pub fn lattice_points<P: Polytope + ?Sized>(p: &P, guard: u128) -> Result<Vec<LatticePoint>> {
    let verts = p.rational_vertices();
    let hull = Hull::new(&verts)?;
    let r = hull.ambient;
    let mut lo = Vec::with_capacity(r);
    let mut hi = Vec::with_capacity(r);
    for i in 0..r {
        let min = verts.iter().map(|v| &v[i]).min().unwrap().ceil().to_integer();
        let max = verts.iter().map(|v| &v[i]).max().unwrap().floor().to_integer();
        let conv =
            |x: num_bigint::BigInt| x.to_i64().ok_or_else(|| Error::Internal("bounding box exceeds 64 bits".into()));
        lo.push(conv(min)?);
        hi.push(conv(max)?);
    }
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return Ok(Vec::new());
    }
    let count = lo.iter().zip(&hi).try_fold(1u128, |acc, (l, h)| acc.checked_mul((h - l + 1) as u128));
    match count {
        Some(c) if c <= guard => {}
        c => {
            return Err(Error::GuardExceeded { guard: "lattice-box", requested: c.unwrap_or(u128::MAX), limit: guard })
        }
    }
    let tester = hull.integer_tester()?;
    let mut out = Vec::new();
    let mut cur = lo.clone();
    loop {
        if tester.contains(&cur) {
            out.push(LatticePoint(cur.clone()));
        }
        // odometer with the last coordinate fastest keeps lexicographic order
        let mut i = r;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if cur[i] < hi[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = lo[i];
        }
    }
}

/// Convex hull of all pairwise vertex sums.
pub fn minkowski_sum<A, B>(a: &A, b: &B) -> Result<RationalPolytope>
where
    A: Polytope + ?Sized,
    B: Polytope + ?Sized,
{
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    let bv = b.rational_vertices();
    let sums: Vec<Vec<Rat>> = a
        .rational_vertices()
        .iter()
        .flat_map(|x| bv.iter().map(move |y| x.iter().zip(y).map(|(s, t)| s + t).collect()))
        .collect();
    RationalPolytope::from_points(&sums)
}

/// `max - min` of coordinate `axis` (1-based) over the vertices.
pub fn width<P: Polytope + ?Sized>(p: &P, axis: usize) -> Result<Rat> {
    if axis == 0 || axis > p.dim() {
        return Err(Error::AxisOutOfRange { axis, dim: p.dim() });
    }
    let v = p.rational_vertices();
    let lo = v.iter().map(|x| &x[axis - 1]).min().unwrap();
    let hi = v.iter().map(|x| &x[axis - 1]).max().unwrap();
    Ok(hi - lo)
}

/// The segment `conv{0, -e_axis}` in `Z^dim`.
pub fn axis_segment(axis: usize, dim: usize) -> Result<LatticePolytope> {
    let e = LatticePoint::unit(dim, axis)?;
    let neg = LatticePoint(e.0.iter().map(|x| -x).collect());
    LatticePolytope::from_points([neg, LatticePoint::zero(dim)])
}
