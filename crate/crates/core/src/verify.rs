//! Mechanical checks of the worked examples and the two refuted conjectures.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::ToricCode;
use crate::distance::{self, DistanceOptions, DistanceReport, DEFAULT_MESSAGE_LIMIT};
use crate::error::{Error, Result};
use crate::field::{GaloisField, DEFAULT_FIELD_GUARD};
use crate::geometry::{pick_count, LatticePoint, LatticePolytope, DEFAULT_LATTICE_GUARD};

/// Exhaustive minimum distance of the hexagon code with `b = 1` over `GF(5)`.
pub const HEXAGON_B1_Q5_DISTANCE: usize = 6;

pub const CASES: [&str; 6] = ["hypercube", "hexagon", "joyner42", "joyner43", "pick", "all"];

#[derive(Clone, Debug, serde::Serialize)]
pub struct Check {
    pub case: &'static str,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(case: &'static str, name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
    Check { case, name: name.into(), pass, detail: detail.into() }
}

pub fn hexagon(b: i64) -> Result<LatticePolytope> {
    LatticePolytope::from_coords(&[&[0, 0], &[b, 0], &[2 * b, b], &[2 * b, 2 * b], &[b, 2 * b], &[0, b]])
}

/// Side vectors `b` with `b_i < q - 1` and `q^k` at most `max_messages`.
pub fn hypercube_family(q: u64, r: usize, max_messages: u128) -> Vec<Vec<i64>> {
    let side = q as i64 - 1;
    let mut out = Vec::new();
    let mut b = vec![0i64; r];
    loop {
        let k: u32 = b.iter().map(|&x| x as u32 + 1).product();
        if (q as u128).checked_pow(k).is_some_and(|m| m <= max_messages) {
            out.push(b.clone());
        }
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            b[i] += 1;
            if b[i] < side {
                break;
            }
            b[i] = 0;
        }
    }
}

pub fn run_hypercube(jobs: Option<usize>) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for q in [3u64, 4, 5] {
        let field = GaloisField::from_order(q, DEFAULT_FIELD_GUARD)?;
        for r in [2usize, 3] {
            for b in hypercube_family(q, r, 10_000_000) {
                let (n, k, d) = distance::hypercube_params(&b, q)?;
                let code = ToricCode::build(&LatticePolytope::hyperbox(&b)?, &field)?;
                let opts = DistanceOptions { jobs, ..DistanceOptions::default() };
                let rep = DistanceReport::compute(&code, &opts)?;
                let got = (rep.n as u128, rep.k as u128, rep.exact.map(|x| x as u128));
                let lower = rep.lower_bound.map(|x| x as i128);
                let upper = rep.upper_bound.map(|x| x as i128);
                let pass = got == (n, k, Some(d))
                    && lower == Some(d as i128)
                    && upper == Some(d as i128)
                    && code.multicyclic_check();
                out.push(check(
                    "hypercube",
                    format!("q={q} b={b:?}"),
                    pass,
                    format!(
                        "expected [{n},{k},{d}], got n={} k={} d={:?} lower={:?} upper={:?}",
                        rep.n, rep.k, rep.exact, rep.lower_bound, rep.upper_bound
                    ),
                ));
            }
        }
    }
    Ok(out)
}

pub fn run_hexagon(jobs: Option<usize>) -> Result<Vec<Check>> {
    let (b, q) = (1i64, 5u64);
    let s = q as i64 - 1;
    let field = GaloisField::from_order(q, DEFAULT_FIELD_GUARD)?;
    let code = ToricCode::build(&hexagon(b)?, &field)?;
    let rep = DistanceReport::compute(&code, &DistanceOptions { jobs, ..DistanceOptions::default() })?;
    let lower = rep.lower_bound.unwrap_or(i64::MIN);
    let upper = rep.upper_bound.map_or(i64::MAX, |u| u as i64);
    let square = s * s - (2 * b * s - b * b);
    let exact = rep.exact.unwrap_or(0);
    Ok(vec![
        check("hexagon", "k = 3b^2+3b+1", code.k == 7, format!("k={}", code.k)),
        check("hexagon", "lower bound", lower == s * s - 4 * b * s + 4 * b * b, format!("lower={lower}")),
        check("hexagon", "upper bound", upper == s * s - 2 * b * s, format!("upper={upper}")),
        check("hexagon", "strict chain", lower < upper && upper < square, format!("{lower} < {upper} < {square}")),
        check(
            "hexagon",
            "exact distance",
            (lower..=upper).contains(&(exact as i64)) && exact == HEXAGON_B1_Q5_DISTANCE,
            format!("d={exact}, baseline {HEXAGON_B1_Q5_DISTANCE}"),
        ),
        check("hexagon", "multicyclic", code.multicyclic_check(), ""),
    ])
}

pub fn run_joyner42() -> Result<Vec<Check>> {
    let r = distance::joyner_42_check(5, DEFAULT_MESSAGE_LIMIT)?;
    Ok(vec![
        check(
            "joyner42",
            "window 2N vol <= n <= 2N^2 vol",
            r.window_holds,
            format!("{} <= {} <= {}", r.window_lower, r.n, r.window_upper),
        ),
        check("joyner42", "exact d", r.exact == 8, format!("d={}", r.exact)),
        check("joyner42", "conjectured bound", r.conjectured_bound == 10, format!("{}", r.conjectured_bound)),
        check("joyner42", "refuted", r.refuted, format!("bound {} > exact {}", r.conjectured_bound, r.exact)),
    ])
}

pub fn run_joyner43() -> Result<Vec<Check>> {
    let r = distance::joyner_43_check(8, DEFAULT_MESSAGE_LIMIT)?;
    Ok(vec![
        check("joyner43", "k", r.k == 3, format!("k={}", r.k)),
        check("joyner43", "exact d", r.exact == 42, format!("d={}", r.exact)),
        check("joyner43", "conjectured bound", r.conjectured_bound == 43, format!("{}", r.conjectured_bound)),
        check("joyner43", "refuted", r.refuted, format!("bound {} > exact {}", r.conjectured_bound, r.exact)),
    ])
}

/// Hull of 3 to 8 random points in `[0, side]^2` with positive area.
pub fn random_polygon(rng: &mut impl Rng, side: i64) -> Result<LatticePolytope> {
    loop {
        let count = rng.gen_range(3..=8);
        let pts = (0..count).map(|_| LatticePoint::new(vec![rng.gen_range(0..=side), rng.gen_range(0..=side)]));
        let p = LatticePolytope::from_points(pts)?;
        if p.affine_dim()? == 2 {
            return Ok(p);
        }
    }
}

pub fn run_pick(seed: u64, samples: usize) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for _ in 0..samples {
        let p = random_polygon(&mut rng, 12)?;
        let pick = pick_count(&p)?;
        let count = p.lattice_points_guarded(DEFAULT_LATTICE_GUARD)?.len() as i64;
        if pick != count {
            bad.push(format!("{} pick={pick} count={count}", p.to_json()));
        }
    }
    let hex_ok = (1..=4).all(|b| hexagon(b).and_then(|h| pick_count(&h)).ok() == Some(3 * b * b + 3 * b + 1));
    Ok(vec![
        check("pick", format!("{samples} random polygons"), bad.is_empty(), bad.first().cloned().unwrap_or_default()),
        check("pick", "hexagon 3b^2+3b+1", hex_ok, ""),
    ])
}

pub fn run_case(case: &str, seed: u64, jobs: Option<usize>) -> Result<Vec<Check>> {
    match case {
        "hypercube" => run_hypercube(jobs),
        "hexagon" => run_hexagon(jobs),
        "joyner42" => run_joyner42(),
        "joyner43" => run_joyner43(),
        "pick" => run_pick(seed, 200),
        "all" => {
            let mut out = Vec::new();
            for c in &CASES[..5] {
                out.extend(run_case(c, seed, jobs)?);
            }
            Ok(out)
        }
        other => Err(Error::InvalidInput(format!("unknown case `{other}`; expected one of {}", CASES.join(", ")))),
    }
}
