use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::hull::Hull;
use super::linalg::{self, Rat};
use super::polytope::{LatticePolytope, Polytope};
use crate::error::{Error, Result};

/// Vertices of a full-dimensional polygon in counterclockwise order.
fn cyclic_order(mut verts: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    let n = BigInt::from(verts.len());
    let cx = verts.iter().fold(Rat::zero(), |acc, v| acc + &v[0]) / &n;
    let cy = verts.iter().fold(Rat::zero(), |acc, v| acc + &v[1]) / &n;
    let half = |x: &Rat, y: &Rat| if y.is_positive() || (y.is_zero() && x.is_positive()) { 0 } else { 1 };
    verts.sort_by(|a, b| {
        let (ax, ay) = (&a[0] - &cx, &a[1] - &cy);
        let (bx, by) = (&b[0] - &cx, &b[1] - &cy);
        half(&ax, &ay).cmp(&half(&bx, &by)).then_with(|| {
            let cross = &ax * &by - &ay * &bx;
            if cross.is_positive() {
                Ordering::Less
            } else if cross.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    });
    verts
}

fn shoelace(ring: &[Vec<Rat>]) -> Rat {
    let n = ring.len();
    let twice = (0..n).fold(Rat::zero(), |acc, i| {
        let (p, q) = (&ring[i], &ring[(i + 1) % n]);
        acc + &p[0] * &q[1] - &q[0] * &p[1]
    });
    (twice / BigInt::from(2)).abs()
}

/// Simplices (as vertex lists) triangulating the polytope: every facet
/// avoiding the base vertex is triangulated recursively and coned over it.
fn triangulate(points: &[Vec<Rat>]) -> Result<Vec<Vec<Vec<Rat>>>> {
    let hull = Hull::new(points)?;
    if hull.affine_dim == 0 {
        return Ok(vec![vec![hull.vertices[0].clone()]]);
    }
    let base = &hull.vertices[0];
    let mut out = Vec::new();
    for f in &hull.facets {
        if f.vertices.contains(&0) {
            continue;
        }
        let face: Vec<Vec<Rat>> = f.vertices.iter().map(|&i| hull.vertices[i].clone()).collect();
        for mut s in triangulate(&face)? {
            s.push(base.clone());
            out.push(s);
        }
    }
    Ok(out)
}

/// Lebesgue volume via a coning triangulation; works in any dimension up to the cap.
pub fn volume_by_triangulation<P: Polytope + ?Sized>(p: &P) -> Result<Rat> {
    let verts = p.rational_vertices();
    let r = p.dim();
    let hull = Hull::new(&verts)?;
    if !hull.is_full_dimensional() {
        return Ok(Rat::zero());
    }
    let total = triangulate(&hull.vertices)?.iter().fold(Rat::zero(), |acc, s| {
        let apex = &s[r];
        let m: Vec<Vec<Rat>> = s[..r].iter().map(|v| v.iter().zip(apex).map(|(a, b)| a - b).collect()).collect();
        acc + linalg::det_rat(&m).abs()
    });
    Ok(total / linalg::factorial(r))
}

/// Exact `r`-dimensional Lebesgue volume; zero for polytopes that are not full-dimensional.
pub fn volume<P: Polytope + ?Sized>(p: &P) -> Result<Rat> {
    let verts = p.rational_vertices();
    let hull = Hull::new(&verts)?;
    if !hull.is_full_dimensional() {
        return Ok(Rat::zero());
    }
    match hull.ambient {
        1 => Ok(&hull.vertices[1][0] - &hull.vertices[0][0]),
        2 => Ok(shoelace(&cyclic_order(hull.vertices))),
        _ => volume_by_triangulation(p),
    }
}

/// Mixed volume `V_r(P_1, ..., P_r)` by inclusion-exclusion over Minkowski sums.
pub fn mixed_volume<P: Polytope>(polytopes: &[P]) -> Result<Rat> {
    let r = polytopes.len();
    if r == 0 {
        return Err(Error::InvalidInput("mixed volume of no polytopes".into()));
    }
    if let Some(p) = polytopes.iter().find(|p| p.dim() != r) {
        return Err(Error::DimensionMismatch { expected: r, found: p.dim() });
    }
    if r > super::MAX_DIM {
        return Err(Error::DimensionCap { dim: r, max: super::MAX_DIM });
    }
    let verts: Vec<Vec<Vec<Rat>>> = polytopes.iter().map(|p| p.rational_vertices()).collect();
    let mut total = Rat::zero();
    for mask in 1usize..1 << r {
        let mut sum: Vec<Vec<Rat>> = vec![vec![Rat::zero(); r]];
        for (i, vs) in verts.iter().enumerate() {
            if mask >> i & 1 == 0 {
                continue;
            }
            let pts: Vec<Vec<Rat>> = sum
                .iter()
                .flat_map(|a| vs.iter().map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect()))
                .collect();
            sum = Hull::new(&pts)?.vertices;
        }
        let vol = volume(&super::RationalPolytope::from_points(&sum)?)?;
        if (r - mask.count_ones() as usize) % 2 == 0 {
            total += vol;
        } else {
            total -= vol;
        }
    }
    Ok(total / linalg::factorial(r))
}

/// `vol_2(P) + perimeter/2 + 1`, with the perimeter measured in lattice length.
pub fn pick_count(p: &LatticePolytope) -> Result<i64> {
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: p.dim() });
    }
    let area = volume(p)?;
    if area.is_zero() {
        return Err(Error::InvalidInput("Pick's formula needs a polygon of positive area".into()));
    }
    let ring = cyclic_order(p.rational_vertices());
    let n = ring.len();
    let perimeter = (0..n).fold(BigInt::zero(), |acc, i| {
        let dx = (&ring[(i + 1) % n][0] - &ring[i][0]).to_integer();
        let dy = (&ring[(i + 1) % n][1] - &ring[i][1]).to_integer();
        acc + dx.gcd(&dy)
    });
    let count = area + Rat::new(perimeter, BigInt::from(2)) + linalg::rat(1);
    if !count.is_integer() {
        return Err(Error::Internal("Pick count is not an integer".into()));
    }
    count.to_integer().to_i64().ok_or_else(|| Error::Internal("Pick count exceeds 64 bits".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::linalg::rat;
    use crate::geometry::{axis_segment, RationalPolytope};

    fn hexagon(b: i64) -> LatticePolytope {
        LatticePolytope::from_coords(&[&[0, 0], &[b, 0], &[2 * b, b], &[2 * b, 2 * b], &[b, 2 * b], &[0, b]]).unwrap()
    }

    #[test]
    fn basic_volumes() {
        let seg = LatticePolytope::from_coords(&[&[0, 0], &[3, 1]]).unwrap();
        assert_eq!(volume(&seg).unwrap(), rat(0));
        for b in 1..5 {
            assert_eq!(volume(&hexagon(b)).unwrap(), rat(3 * b * b));
        }
        let cube = LatticePolytope::hyperbox(&[2, 3, 5]).unwrap();
        assert_eq!(volume(&cube).unwrap(), rat(30));
        let tesseract = LatticePolytope::hyperbox(&[1, 2, 1, 3]).unwrap();
        assert_eq!(volume(&tesseract).unwrap(), rat(6));
        let simplex = LatticePolytope::from_coords(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(volume(&simplex).unwrap(), Rat::new(1.into(), 6.into()));
    }

    #[test]
    fn shoelace_matches_triangulation() {
        let p = LatticePolytope::from_coords(&[&[0, 0], &[4, 1], &[5, 3], &[2, 6], &[-1, 2]]).unwrap();
        assert_eq!(volume(&p).unwrap(), volume_by_triangulation(&p).unwrap());
    }

    #[test]
    fn mixed_volume_examples() {
        let tri = LatticePolytope::from_coords(&[&[0, 0], &[1, 1], &[0, 2]]).unwrap().to_rational();
        assert_eq!(mixed_volume(&[tri.clone(), tri.clone()]).unwrap(), volume(&tri).unwrap());

        let seg1 = axis_segment(1, 2).unwrap().to_rational();
        for b in 1..4 {
            let hex = hexagon(b).to_rational();
            assert_eq!(mixed_volume(&[hex, seg1.clone()]).unwrap() * BigInt::from(2), rat(2 * b));
        }

        let (b1, b2, b3) = (2, 3, 4);
        let cube = LatticePolytope::hyperbox(&[b1, b2, b3]).unwrap().to_rational();
        let s1 = axis_segment(1, 3).unwrap().to_rational();
        let s2 = axis_segment(2, 3).unwrap().to_rational();
        assert_eq!(mixed_volume(&[cube.clone(), s1.clone(), s2]).unwrap() * BigInt::from(6), rat(b3));
        assert_eq!(volume(&crate::geometry::minkowski_sum(&cube, &s1).unwrap()).unwrap(), rat((b1 + 1) * b2 * b3));
    }

    #[test]
    fn mixed_volume_argument_errors() {
        let a = LatticePolytope::hyperbox(&[1, 1]).unwrap().to_rational();
        assert!(mixed_volume(&[a.clone()]).is_err());
        assert!(mixed_volume::<RationalPolytope>(&[]).is_err());
    }

    #[test]
    fn hexagon_plus_segment_area() {
        for b in 1..4 {
            let sum = hexagon(b).minkowski_sum(&axis_segment(1, 2).unwrap()).unwrap();
            assert_eq!(sum.vertices().len(), 6);
            assert_eq!(volume(&sum).unwrap(), rat(3 * b * b + 2 * b));
        }
    }

    #[test]
    fn pick_examples() {
        let tri = LatticePolytope::from_coords(&[&[0, 0], &[1, 1], &[0, 2]]).unwrap();
        assert_eq!(pick_count(&tri).unwrap(), 4);
        for b in 1..5 {
            assert_eq!(pick_count(&hexagon(b)).unwrap(), 3 * b * b + 3 * b + 1);
        }
        assert_eq!(pick_count(&LatticePolytope::hyperbox(&[1, 1]).unwrap()).unwrap(), 4);
        let seg = LatticePolytope::from_coords(&[&[0, 0], &[2, 2]]).unwrap();
        assert!(pick_count(&seg).is_err());
    }
}
