//! Exhaustive minimum distance.
//!
//! Messages are visited in modular q-ary Gray order: gray digit `i` of index
//! `x` is `(d_i - d_{i+1}) mod q` where `d` are the base-`q` digits of `x`.
//! Consecutive indices differ in exactly one gray digit, by `+1 mod q`, so
//! each step adds one precomputed multiple of a generator row.

use rayon::prelude::*;

use crate::code::ToricCode;
use crate::error::{Error, Result};

pub const DEFAULT_MESSAGE_LIMIT: u128 = 100_000_000;

/// Number of nonzero messages, `q^k - 1`.
pub fn message_count(code: &ToricCode) -> u128 {
    (code.field.order() as u128).checked_pow(code.k as u32).map_or(u128::MAX, |x| x - 1)
}

/// Minimum weight of a nonzero codeword; `jobs = None` uses every core.
pub fn exact_min_distance(code: &ToricCode, limit: u128, jobs: Option<usize>) -> Result<usize> {
    let messages = message_count(code);
    if messages > limit {
        return Err(Error::GuardExceeded { guard: "messages", requested: messages, limit });
    }
    if code.k == 0 {
        return Err(Error::Internal("code has dimension 0".into()));
    }
    let kernel = Kernel::new(code);
    let total = messages as u64 + 1;
    let run = || {
        let workers = rayon::current_num_threads() as u64;
        let chunks = (workers * 8).min(total).max(1);
        let step = total.div_ceil(chunks);
        (0..chunks)
            .into_par_iter()
            .map(|c| kernel.scan(c * step, ((c + 1) * step).min(total)))
            .min()
            .unwrap_or(usize::MAX)
    };
    let best = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };
    Ok(best)
}

struct Kernel {
    q: usize,
    k: usize,
    n: usize,
    add: Vec<u16>,
    /// `multiples[(j * q + x) * n ..][..n]` is `x · G_j`.
    multiples: Vec<u16>,
    /// Field difference between gray values `v + 1 mod q` and `v`.
    step_delta: Vec<u16>,
}

impl Kernel {
    fn new(code: &ToricCode) -> Self {
        let f = &code.field;
        let (q, k, n) = (f.order() as usize, code.k, code.n);
        let mut add = vec![0u16; q * q];
        for a in f.elements() {
            for b in f.elements() {
                add[a.0 as usize * q + b.0 as usize] = f.add(a, b).0;
            }
        }
        let mut multiples = Vec::with_capacity(k * q * n);
        for row in &code.generator {
            for x in f.elements() {
                multiples.extend(row.iter().map(|&g| f.mul(x, g).0));
            }
        }
        let step_delta = (0..q as u16)
            .map(|v| {
                let next = f.element(((v as usize + 1) % q) as u64).expect("in range");
                f.sub(next, crate::field::FieldElement(v)).0
            })
            .collect();
        Kernel { q, k, n, add, multiples, step_delta }
    }

    fn multiple(&self, j: usize, x: u16) -> &[u16] {
        let start = (j * self.q + x as usize) * self.n;
        &self.multiples[start..start + self.n]
    }

    /// Minimum weight over message indices in `[start, end)`, skipping index 0.
    fn scan(&self, start: u64, end: u64) -> usize {
        if start >= end {
            return usize::MAX;
        }
        let (q, k, n) = (self.q, self.k, self.n);
        let mut digits = vec![0usize; k];
        let mut x = start;
        for d in digits.iter_mut() {
            *d = (x % q as u64) as usize;
            x /= q as u64;
        }
        let mut gray: Vec<u16> =
            (0..k).map(|i| ((digits[i] + q - digits.get(i + 1).copied().unwrap_or(0)) % q) as u16).collect();
        let mut word = vec![0u16; n];
        for (j, &g) in gray.iter().enumerate() {
            for (w, &m) in word.iter_mut().zip(self.multiple(j, g)) {
                *w = self.add[*w as usize * q + m as usize];
            }
        }
        let mut best = usize::MAX;
        if start != 0 {
            best = word.iter().filter(|&&w| w != 0).count();
        }
        for _ in start + 1..end {
            let mut j = 0;
            while digits[j] == q - 1 {
                digits[j] = 0;
                j += 1;
            }
            digits[j] += 1;
            let delta = self.step_delta[gray[j] as usize];
            gray[j] = ((gray[j] as usize + 1) % q) as u16;
            let mut weight = 0;
            for (w, &m) in word.iter_mut().zip(self.multiple(j, delta)) {
                *w = self.add[*w as usize * q + m as usize];
                weight += (*w != 0) as usize;
            }
            best = best.min(weight);
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GaloisField;
    use crate::geometry::LatticePolytope;

    fn code(points: &[&[i64]], q: u64) -> ToricCode {
        let f = GaloisField::from_order(q, 256).unwrap();
        ToricCode::build(&LatticePolytope::from_coords(points).unwrap(), &f).unwrap()
    }

    /// Plain enumeration of all messages in counting order.
    fn naive(code: &ToricCode) -> usize {
        let f = &code.field;
        let q = f.order() as usize;
        let mut best = usize::MAX;
        for idx in 1..q.pow(code.k as u32) {
            let mut x = idx;
            let mut word = vec![crate::field::FieldElement::ZERO; code.n];
            for row in &code.generator {
                let c = f.element((x % q) as u64).unwrap();
                x /= q;
                for (w, &g) in word.iter_mut().zip(row) {
                    *w = f.add(*w, f.mul(c, g));
                }
            }
            best = best.min(word.iter().filter(|w| !w.is_zero()).count());
        }
        best
    }

    #[test]
    fn repetition_code_has_full_weight() {
        let c = code(&[&[0, 0]], 5);
        assert_eq!(exact_min_distance(&c, 1000, None).unwrap(), 16);
    }

    #[test]
    fn paper_triangle_over_gf5() {
        let c = code(&[&[0, 0], &[1, 1], &[0, 2]], 5);
        assert_eq!(exact_min_distance(&c, 1000, Some(2)).unwrap(), 8);
    }

    #[test]
    fn unit_square_over_gf4() {
        let c = code(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]], 4);
        assert_eq!(exact_min_distance(&c, 1000, Some(1)).unwrap(), 4);
    }

    #[test]
    fn gray_scan_matches_naive_enumeration() {
        for (pts, q) in [
            (vec![vec![0, 0], vec![2, 0], vec![0, 1]], 4),
            (vec![vec![0, 0], vec![1, 0], vec![1, 2]], 5),
            (vec![vec![0, 0], vec![3, 0], vec![0, 3]], 3),
            (vec![vec![0, 0], vec![1, 1]], 8),
            (vec![vec![0, 0], vec![2, 1], vec![1, 2]], 9),
        ] {
            let refs: Vec<&[i64]> = pts.iter().map(|p| p.as_slice()).collect();
            let c = code(&refs, q);
            for jobs in [1, 3] {
                assert_eq!(exact_min_distance(&c, 1 << 20, Some(jobs)).unwrap(), naive(&c));
            }
        }
    }

    #[test]
    fn limit_is_enforced() {
        let c = code(&[&[0, 0], &[1, 1], &[0, 2]], 5);
        let e = exact_min_distance(&c, 100, None).unwrap_err();
        assert!(matches!(e, Error::GuardExceeded { guard: "messages", requested: 624, limit: 100 }));
    }
}
