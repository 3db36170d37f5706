//! Arithmetic in `GF(p^m)` and the algebraic torus `(F_q^*)^r`.
//!
//! Elements are encoded as integers in `[0, q)`: the base-`p` digits of the
//! encoding are the coefficients of the residue polynomial, least significant
//! digit = constant term. For `m = 1` this is the usual residue mod `p`.

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::LatticePoint;

pub const DEFAULT_FIELD_GUARD: u64 = 256;
/// Hard ceiling for the field size; above it the add table stops being small.
pub const MAX_FIELD_SIZE: u64 = 1024;
pub const DEFAULT_TORUS_GUARD: u128 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(pub u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn encoding(self) -> u16 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A point `(g^{l_1}, ..., g^{l_r})` of the torus, stored by its discrete logs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorusPoint {
    pub logs: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct GaloisField {
    p: u64,
    m: u32,
    q: u64,
    modulus: Vec<u64>,
    generator: FieldElement,
    exp: Vec<u16>,
    log: Vec<u16>,
    add: Vec<u16>,
    neg: Vec<u16>,
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m
    }
}

impl Eq for GaloisField {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `(p, m)` with `p^m = q`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut rest, mut m) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

// Polynomials over GF(p) as coefficient vectors, constant term first.

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = mod_pow(b[db], p - 2, p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let f = r[r.len() - 1] * lead_inv % p;
        for (i, &c) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - f * c % p) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_rem(&out, modulus, p)
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn decode(mut x: u64, p: u64, m: u32) -> Vec<u64> {
    let mut c = Vec::with_capacity(m as usize);
    for _ in 0..m {
        c.push(x % p);
        x /= p;
    }
    trim(c)
}

fn encode(c: &[u64], p: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Monic polynomials of degree `d`, in low-degree-first lexicographic order.
fn monic(d: u32, p: u64) -> impl Iterator<Item = Vec<u64>> {
    (0..p.pow(d)).map(move |x| {
        let mut c = vec![0; d as usize + 1];
        let mut x = x;
        // the first coefficient varies slowest: lexicographic with c_0 leading
        for i in (0..d as usize).rev() {
            c[i] = x % p;
            x /= p;
        }
        c[d as usize] = 1;
        c
    })
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = (f.len() - 1) as u32;
    (1..=d / 2).all(|e| monic(e, p).all(|g| !poly_rem(f, &g, p).is_empty()))
}

impl GaloisField {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        Self::with_guard(p, m, DEFAULT_FIELD_GUARD)
    }

    pub fn with_guard(p: u64, m: u32, guard: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidInput("extension degree must be at least 1".into()));
        }
        let limit = guard.min(MAX_FIELD_SIZE);
        let q = p.checked_pow(m).filter(|&q| q <= limit).ok_or(Error::GuardExceeded {
            guard: "field-size",
            requested: (p as u128).saturating_pow(m),
            limit: limit as u128,
        })?;

        let modulus = monic(m, p)
            .find(|f| is_irreducible(f, p))
            .ok_or_else(|| Error::Internal(format!("no irreducible polynomial of degree {m} over GF({p})")))?;

        let order = |x: u64| -> u64 {
            let base = decode(x, p, m);
            let mut acc = base.clone();
            let mut k = 1;
            while acc != [1] {
                acc = poly_mul_mod(&acc, &base, &modulus, p);
                k += 1;
            }
            k
        };
        let g = (1..q)
            .find(|&x| order(x) == q - 1)
            .ok_or_else(|| Error::Internal(format!("GF({q}) has no primitive element")))?;

        let size = q as usize;
        let mut exp = vec![0u16; size - 1];
        let mut log = vec![0u16; size];
        let base = decode(g, p, m);
        let mut acc = vec![1];
        for (i, slot) in exp.iter_mut().enumerate() {
            let e = encode(&acc, p);
            *slot = e as u16;
            log[e as usize] = i as u16;
            acc = poly_mul_mod(&acc, &base, &modulus, p);
        }

        let mut add = vec![0u16; size * size];
        let mut neg = vec![0u16; size];
        for a in 0..q {
            let da = decode(a, p, m);
            for b in 0..q {
                let db = decode(b, p, m);
                let sum: Vec<u64> =
                    (0..m as usize).map(|i| (da.get(i).unwrap_or(&0) + db.get(i).unwrap_or(&0)) % p).collect();
                add[(a * q + b) as usize] = encode(&sum, p) as u16;
            }
            let n: Vec<u64> = (0..m as usize).map(|i| (p - da.get(i).unwrap_or(&0)) % p).collect();
            neg[a as usize] = encode(&n, p) as u16;
        }

        Ok(GaloisField { p, m, q, modulus, generator: FieldElement(g as u16), exp, log, add, neg })
    }

    /// Parses `q=<int>` or `p=<int>,m=<int>`.
    pub fn from_spec(spec: &str, guard: u64) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("field spec `{spec}`: expected q=<int> or p=<int>,m=<int>"));
        let mut p = None;
        let mut m = None;
        let mut q = None;
        for part in spec.split(',') {
            let (key, value) = part.trim().split_once('=').ok_or_else(bad)?;
            let value: u64 = value.trim().parse().map_err(|_| bad())?;
            match key.trim() {
                "p" => p = Some(value),
                "m" => m = Some(value),
                "q" => q = Some(value),
                _ => return Err(bad()),
            }
        }
        match (q, p, m) {
            (Some(q), None, None) => Self::from_order(q, guard),
            (None, Some(p), Some(m)) => {
                let m = u32::try_from(m).map_err(|_| bad())?;
                Self::with_guard(p, m, guard)
            }
            _ => Err(bad()),
        }
    }

    pub fn from_order(q: u64, guard: u64) -> Result<Self> {
        let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::with_guard(p, m, guard)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    /// Coefficients of the defining polynomial, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn element(&self, encoding: u64) -> Result<FieldElement> {
        if encoding >= self.q {
            return Err(Error::InvalidInput(format!("{encoding} is not an element of GF({})", self.q)));
        }
        Ok(FieldElement(encoding as u16))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q as u16).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[a.0 as usize * self.q as usize + b.0 as usize])
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.0 as usize])
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let e = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % (self.q - 1);
        FieldElement(self.exp[e as usize])
    }

    /// `a^e`; negative exponents are allowed for nonzero `a`.
    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement> {
        if a.is_zero() {
            return match e {
                0 => Ok(FieldElement::ONE),
                e if e > 0 => Ok(FieldElement::ZERO),
                _ => Err(Error::ZeroInverse),
            };
        }
        let l = self.log[a.0 as usize] as i128 * e as i128;
        Ok(self.exp_of(l.rem_euclid((self.q - 1) as i128) as u64))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let l = self.log[a.0 as usize] as u64;
        Ok(self.exp_of((self.q - 1 - l) % (self.q - 1)))
    }

    /// `g^e` for `e` in `[0, q-1)`.
    pub fn exp_of(&self, e: u64) -> FieldElement {
        FieldElement(self.exp[(e % (self.q - 1)) as usize])
    }

    pub fn log_of(&self, a: FieldElement) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::InvalidInput("zero has no discrete logarithm".into()));
        }
        Ok(self.log[a.0 as usize] as u64)
    }

    /// `(q-1)^r`, the number of torus points.
    pub fn torus_size(&self, r: usize) -> u128 {
        ((self.q - 1) as u128).saturating_pow(r as u32)
    }

    /// Torus points in lexicographic order of their log vectors.
    pub fn torus_points(&self, r: usize, guard: u128) -> Result<TorusPoints> {
        if r == 0 {
            return Err(Error::InvalidInput("torus dimension must be at least 1".into()));
        }
        let size = self.torus_size(r);
        if size > guard {
            return Err(Error::GuardExceeded { guard: "torus-size", requested: size, limit: guard });
        }
        Ok(TorusPoints { modulus: (self.q - 1) as u32, next: Some(vec![0; r]) })
    }

    /// `chi^u(t)`; exponents are reduced mod `q-1`, so any integer `u` works.
    pub fn eval_monomial(&self, u: &LatticePoint, t: &TorusPoint) -> FieldElement {
        let order = (self.q - 1) as i128;
        let e =
            u.coords().iter().zip(&t.logs).fold(0i128, |acc, (&a, &l)| (acc + a as i128 * l as i128).rem_euclid(order));
        self.exp_of(e as u64)
    }
}

impl fmt::Display for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

pub struct TorusPoints {
    modulus: u32,
    next: Option<Vec<u32>>,
}

impl Iterator for TorusPoints {
    type Item = TorusPoint;

    fn next(&mut self) -> Option<TorusPoint> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.modulus {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(TorusPoint { logs: cur })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_prime_fields() {
        let f = GaloisField::new(5, 1).unwrap();
        assert_eq!(f.generator(), FieldElement(2));
        assert_eq!(f.mul(FieldElement(2), FieldElement(3)), FieldElement::ONE);
        assert_eq!(GaloisField::new(2, 1).unwrap().generator(), FieldElement::ONE);
        assert_eq!(GaloisField::new(3, 1).unwrap().generator(), FieldElement(2));
        assert_eq!(GaloisField::new(7, 1).unwrap().generator(), FieldElement(3));
    }

    #[test]
    fn gf8_modulus_and_generator() {
        let f = GaloisField::new(2, 3).unwrap();
        // x^3 + x^2 + 1 precedes x^3 + x + 1 when c_0 is compared first
        assert_eq!(f.modulus(), &[1, 0, 1, 1]);
        let g = f.generator();
        assert_eq!(f.mul(g, f.pow(g, 6).unwrap()), FieldElement::ONE);
        assert_eq!(f.pow(g, 7).unwrap(), FieldElement::ONE);
    }

    #[test]
    fn gf9_and_gf4() {
        let f = GaloisField::new(3, 2).unwrap();
        assert_eq!(f.order(), 9);
        for a in f.elements().skip(1) {
            assert_eq!(f.pow(a, 8).unwrap(), FieldElement::ONE);
        }
        let f4 = GaloisField::from_spec("q=4", 256).unwrap();
        assert_eq!((f4.characteristic(), f4.degree()), (2, 2));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(GaloisField::new(6, 1), Err(Error::NotPrime(6))));
        assert!(matches!(GaloisField::from_order(12, 256), Err(Error::NotPrimePower(12))));
        assert!(matches!(GaloisField::new(2, 9), Err(Error::GuardExceeded { .. })));
        assert!(GaloisField::with_guard(2, 9, 512).is_ok());
        assert!(matches!(GaloisField::with_guard(2, 11, 1 << 20), Err(Error::GuardExceeded { .. })));
        assert!(GaloisField::from_spec("p=5", 256).is_err());
        assert!(GaloisField::from_spec("q=5,p=5", 256).is_err());
        assert!(GaloisField::from_spec("z=5", 256).is_err());
        let f = GaloisField::new(5, 1).unwrap();
        assert!(matches!(f.inv(FieldElement::ZERO), Err(Error::ZeroInverse)));
    }

    #[test]
    fn torus_enumeration() {
        let f = GaloisField::new(3, 1).unwrap();
        let logs: Vec<Vec<u32>> = f.torus_points(2, 100).unwrap().map(|t| t.logs).collect();
        assert_eq!(logs, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(GaloisField::new(5, 1).unwrap().torus_points(2, 100).unwrap().count(), 16);
        assert_eq!(GaloisField::new(2, 1).unwrap().torus_points(3, 100).unwrap().count(), 1);
        assert!(f.torus_points(3, 7).is_err());
    }

    #[test]
    fn monomial_evaluation() {
        let f = GaloisField::new(5, 1).unwrap();
        let t = TorusPoint { logs: vec![1, 1] };
        assert_eq!(f.eval_monomial(&LatticePoint::new(vec![1, 1]), &t), FieldElement(4));
        assert_eq!(f.eval_monomial(&LatticePoint::new(vec![0, 0]), &t), FieldElement::ONE);
        for t in f.torus_points(2, 100).unwrap() {
            let a = f.eval_monomial(&LatticePoint::new(vec![3, -2]), &t);
            let b = f.eval_monomial(&LatticePoint::new(vec![7, -2]), &t);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn exp_and_log_are_inverse() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32] {
            let f = GaloisField::from_order(q, 256).unwrap();
            let mut seen = vec![false; q as usize];
            for e in 0..q - 1 {
                let x = f.exp_of(e);
                assert!(!x.is_zero());
                assert!(!seen[x.0 as usize]);
                seen[x.0 as usize] = true;
                assert_eq!(f.log_of(x).unwrap(), e);
            }
        }
    }
}
