//! Toric codes: reduced exponents, evaluation, generator matrices.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FieldElement, GaloisField, TorusPoint};
use crate::geometry::{LatticePoint, LatticePolytope, Polytope, DEFAULT_LATTICE_GUARD};

/// Cap on `k * n`, the number of generator matrix entries.
pub const DEFAULT_MATRIX_GUARD: u128 = 1 << 22;

#[derive(Clone, Copy, Debug)]
pub struct Guards {
    pub lattice_points: u128,
    pub matrix_entries: u128,
}

impl Default for Guards {
    fn default() -> Self {
        Guards { lattice_points: DEFAULT_LATTICE_GUARD, matrix_entries: DEFAULT_MATRIX_GUARD }
    }
}

/// The representative of `u` modulo `q-1` with every coordinate in `[0, q-2]`.
pub fn reduce_exponent(u: &LatticePoint, q: u64) -> LatticePoint {
    let m = (q - 1) as i64;
    LatticePoint::new(u.coords().iter().map(|x| x.rem_euclid(m)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedExponent {
    pub c: LatticePoint,
    /// Lattice points of `P` reducing to `c`, lexicographically sorted.
    pub sources: Vec<LatticePoint>,
}

impl ReducedExponent {
    pub fn representative(&self) -> &LatticePoint {
        &self.sources[0]
    }
}

fn group(points: Vec<LatticePoint>, q: u64) -> Vec<ReducedExponent> {
    let mut classes: BTreeMap<LatticePoint, Vec<LatticePoint>> = BTreeMap::new();
    for u in points {
        classes.entry(reduce_exponent(&u, q)).or_default().push(u);
    }
    classes
        .into_iter()
        .map(|(c, mut sources)| {
            sources.sort();
            ReducedExponent { c, sources }
        })
        .collect()
}

/// `P ∩ M` grouped by reduced exponent, ordered by the reduced exponent.
pub fn reduced_set(p: &LatticePolytope, q: u64, guard: u128) -> Result<Vec<ReducedExponent>> {
    if q < 2 {
        return Err(Error::InvalidInput("field size must be at least 2".into()));
    }
    Ok(group(p.lattice_points_guarded(guard)?, q))
}

/// Spanning pairs `(u, u')` of the kernel of the evaluation map.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KernelBasis {
    pub pairs: Vec<(LatticePoint, LatticePoint)>,
}

pub fn kernel_basis(p: &LatticePolytope, q: u64, guard: u128) -> Result<KernelBasis> {
    Ok(kernel_of(&reduced_set(p, q, guard)?))
}

fn kernel_of(classes: &[ReducedExponent]) -> KernelBasis {
    let pairs = classes
        .iter()
        .flat_map(|c| c.sources[1..].iter().map(move |u| (u.clone(), c.representative().clone())))
        .collect();
    KernelBasis { pairs }
}

pub fn injectivity_check(p: &LatticePolytope, q: u64, guard: u128) -> Result<bool> {
    Ok(reduced_set(p, q, guard)?.iter().all(|c| c.sources.len() == 1))
}

#[derive(Clone, Debug)]
pub struct ToricCode {
    pub field: GaloisField,
    pub polytope: LatticePolytope,
    pub reduced: Vec<ReducedExponent>,
    pub n: usize,
    pub k: usize,
    /// Row `i` evaluates `chi^{c_i}` at the torus points in lexicographic log order.
    pub generator: Vec<Vec<FieldElement>>,
}

impl ToricCode {
    pub fn build(p: &LatticePolytope, field: &GaloisField) -> Result<Self> {
        Self::build_guarded(p, field, Guards::default())
    }

    pub fn build_guarded(p: &LatticePolytope, field: &GaloisField, guards: Guards) -> Result<Self> {
        let r = p.dim();
        if r < 2 {
            return Err(Error::InvalidInput(format!("toric codes need dimension r >= 2, got {r}")));
        }
        let q = field.order();
        let n128 = field.torus_size(r);
        let reduced = reduced_set(p, q, guards.lattice_points)?;
        let k = reduced.len();
        let entries = n128.saturating_mul(k as u128);
        if entries > guards.matrix_entries {
            return Err(Error::GuardExceeded {
                guard: "matrix-entries",
                requested: entries,
                limit: guards.matrix_entries,
            });
        }
        let torus: Vec<TorusPoint> = field.torus_points(r, n128)?.collect();
        let generator: Vec<Vec<FieldElement>> =
            reduced.par_iter().map(|class| torus.iter().map(|t| field.eval_monomial(&class.c, t)).collect()).collect();
        let rank = Echelon::new(field, &generator).rank();
        if rank != k {
            return Err(Error::Internal(format!("generator matrix has rank {rank}, expected {k}")));
        }
        Ok(ToricCode { field: field.clone(), polytope: p.clone(), reduced, n: n128 as usize, k, generator })
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    pub fn lattice_point_count(&self) -> usize {
        self.reduced.iter().map(|c| c.sources.len()).sum()
    }

    pub fn kernel(&self) -> KernelBasis {
        kernel_of(&self.reduced)
    }

    pub fn is_injective(&self) -> bool {
        self.reduced.iter().all(|c| c.sources.len() == 1)
    }

    /// Checks that every shift `t_i -> g t_i` maps the code to itself.
    pub fn multicyclic_check(&self) -> bool {
        let r = self.dim();
        let side = (self.field.order() - 1) as usize;
        let echelon = Echelon::new(&self.field, &self.generator);
        (0..r).all(|axis| {
            // stride of log coordinate `axis` in lexicographic torus order
            let stride = side.pow((r - 1 - axis) as u32);
            self.generator.iter().all(|row| {
                let shifted: Vec<FieldElement> = (0..self.n)
                    .map(|j| {
                        let digit = j / stride % side;
                        let src = j - digit * stride + (digit + 1) % side * stride;
                        row[src]
                    })
                    .collect();
                echelon.contains(&shifted)
            })
        })
    }

    pub fn generator_text(&self, format: MatrixFormat) -> Result<String> {
        let mut out = String::new();
        let _ = writeln!(out, "q={} r={} n={} k={}", self.field.order(), self.dim(), self.n, self.k);
        for row in &self.generator {
            let mut line = String::with_capacity(row.len() * 3);
            for (j, &x) in row.iter().enumerate() {
                if j > 0 {
                    line.push(' ');
                }
                let v = match format {
                    MatrixFormat::Int => x.encoding() as u64,
                    MatrixFormat::Log => self.field.log_of(x)?,
                };
                let _ = write!(line, "{v}");
            }
            out.push_str(&line);
            out.push('\n');
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixFormat {
    Int,
    Log,
}

/// Reduced row echelon form over a finite field.
pub struct Echelon<'a> {
    field: &'a GaloisField,
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl<'a> Echelon<'a> {
    pub fn new(field: &'a GaloisField, rows: &[Vec<FieldElement>]) -> Self {
        let mut e = Echelon { field, rows: Vec::new(), pivots: Vec::new() };
        for row in rows {
            e.insert(row.clone());
        }
        e
    }

    fn reduce(&self, v: &mut [FieldElement]) {
        let f = self.field;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let x = v[c];
            if x.is_zero() {
                continue;
            }
            for (a, &b) in v.iter_mut().zip(row) {
                *a = f.sub(*a, f.mul(x, b));
            }
        }
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, mut v: Vec<FieldElement>) -> bool {
        self.reduce(&mut v);
        let Some(c) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let f = self.field;
        let inv = f.inv(v[c]).expect("pivot is nonzero");
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let y = row[c];
            if !y.is_zero() {
                for (a, &b) in row.iter_mut().zip(&v) {
                    *a = f.sub(*a, f.mul(y, b));
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(c);
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        v.iter().all(|x| x.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(v: &[i64]) -> LatticePoint {
        LatticePoint::new(v.to_vec())
    }

    #[test]
    fn exponent_reduction() {
        assert_eq!(reduce_exponent(&lp(&[5, 2]), 5), lp(&[1, 2]));
        assert_eq!(reduce_exponent(&lp(&[4, 4]), 5), lp(&[0, 0]));
        assert_eq!(reduce_exponent(&lp(&[-1, 0]), 3), lp(&[1, 0]));
    }

    #[test]
    fn unit_square_over_gf3() {
        let f = GaloisField::new(3, 1).unwrap();
        let code = ToricCode::build(&LatticePolytope::hyperbox(&[1, 1]).unwrap(), &f).unwrap();
        let rows: Vec<Vec<u16>> = code.generator.iter().map(|r| r.iter().map(|x| x.0).collect()).collect();
        // rows follow lexicographic c: (0,0), (0,1), (1,0), (1,1)
        assert_eq!(rows, vec![vec![1, 1, 1, 1], vec![1, 2, 1, 2], vec![1, 1, 2, 2], vec![1, 2, 2, 1]]);
        assert_eq!((code.n, code.k), (4, 4));
        assert!(code.multicyclic_check());
    }

    #[test]
    fn repetition_code() {
        let f = GaloisField::new(5, 1).unwrap();
        let code = ToricCode::build(&LatticePolytope::from_coords(&[&[0, 0]]).unwrap(), &f).unwrap();
        assert_eq!(code.k, 1);
        assert!(code.generator[0].iter().all(|&x| x == FieldElement::ONE));
        assert!(code.multicyclic_check());
        assert!(code.kernel().pairs.is_empty());
    }

    #[test]
    fn box_dimension() {
        let f = GaloisField::new(5, 1).unwrap();
        let code = ToricCode::build(&LatticePolytope::hyperbox(&[1, 2]).unwrap(), &f).unwrap();
        assert_eq!((code.n, code.k), (16, 6));
        assert!(code.is_injective());
    }

    #[test]
    fn collisions_mod_q_minus_one() {
        let seg = LatticePolytope::from_coords(&[&[0, 0], &[4, 0]]).unwrap();
        let classes = reduced_set(&seg, 5, 1000).unwrap();
        let origin = classes.iter().find(|c| c.c == lp(&[0, 0])).unwrap();
        assert_eq!(origin.sources, vec![lp(&[0, 0]), lp(&[4, 0])]);
        let kernel = kernel_basis(&seg, 5, 1000).unwrap();
        assert_eq!(kernel.pairs, vec![(lp(&[4, 0]), lp(&[0, 0]))]);
        assert!(!injectivity_check(&seg, 5, 1000).unwrap());
        assert!(injectivity_check(&LatticePolytope::hyperbox(&[3, 3]).unwrap(), 5, 1000).unwrap());
        assert!(!injectivity_check(&LatticePolytope::hyperbox(&[4, 1]).unwrap(), 5, 1000).unwrap());
    }

    #[test]
    fn rejects_dimension_one() {
        let f = GaloisField::new(5, 1).unwrap();
        let seg = LatticePolytope::from_coords(&[&[0], &[2]]).unwrap();
        assert!(matches!(ToricCode::build(&seg, &f), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn generator_file_format() {
        let f = GaloisField::new(3, 1).unwrap();
        let code = ToricCode::build(&LatticePolytope::hyperbox(&[1, 1]).unwrap(), &f).unwrap();
        let text = code.generator_text(MatrixFormat::Int).unwrap();
        assert_eq!(text, "q=3 r=2 n=4 k=4\n1 1 1 1\n1 2 1 2\n1 1 2 2\n1 2 2 1\n");
        let logs = code.generator_text(MatrixFormat::Log).unwrap();
        assert_eq!(logs, "q=3 r=2 n=4 k=4\n0 0 0 0\n0 1 0 1\n0 0 1 1\n0 1 1 0\n");
    }
}
