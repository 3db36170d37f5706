//! Command implementations behind the `toric` binary.
//!
//! Each command renders its result to a string; the binary decides where it
//! goes and which exit code to use.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::code::{Guards, MatrixFormat, ToricCode};
use crate::distance::{DistanceOptions, DistanceReport};
use crate::error::{Error, Result};
use crate::field::GaloisField;
use crate::geometry::{pick_count, LatticePolytope};
use crate::verify::{self, Check};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(Error::InvalidInput(format!("unknown format `{other}`; expected json, csv or text"))),
        }
    }
}

/// Polytope and field shared by the code-building commands.
#[derive(Clone, Debug)]
pub struct Input {
    pub polytope_path: PathBuf,
    pub field_spec: String,
    pub field_guard: u64,
    pub guards: Guards,
}

impl Input {
    pub fn load(&self) -> Result<(LatticePolytope, GaloisField)> {
        let text = read(&self.polytope_path)?;
        let polytope = LatticePolytope::from_json(&text)?;
        let field = GaloisField::from_spec(&self.field_spec, self.field_guard)?;
        Ok((polytope, field))
    }

    pub fn build(&self) -> Result<ToricCode> {
        let (p, f) = self.load()?;
        ToricCode::build_guarded(&p, &f, self.guards)
    }
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

pub fn write(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Error::Internal(format!("serialization: {e}")))
}

fn opt<T: std::fmt::Display>(x: &Option<T>) -> String {
    x.as_ref().map(|v| v.to_string()).unwrap_or_default()
}

#[derive(Clone, Debug, Serialize)]
pub struct Params {
    pub q: u64,
    pub r: usize,
    pub n: usize,
    pub k: usize,
    pub lattice_points: usize,
    pub injective: bool,
    pub kernel_pairs: usize,
    /// Pick's formula value, for full-dimensional polygons.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pick: Option<i64>,
}

pub fn cmd_params(input: &Input, format: OutputFormat) -> Result<String> {
    let code = input.build()?;
    let r = code.dim();
    let pick = match (r, code.polytope.affine_dim()?) {
        (2, 2) => Some(pick_count(&code.polytope)?),
        _ => None,
    };
    let params = Params {
        q: code.field.order(),
        r,
        n: code.n,
        k: code.k,
        lattice_points: code.lattice_point_count(),
        injective: code.is_injective(),
        kernel_pairs: code.kernel().pairs.len(),
        pick,
    };
    if let Some(v) = pick {
        if v != params.lattice_points as i64 {
            return Err(Error::Internal(format!("Pick count {v} != {} lattice points", params.lattice_points)));
        }
    }
    Ok(match format {
        OutputFormat::Json => json(&params)?,
        OutputFormat::Csv => format!(
            "q,r,n,k,lattice_points,injective,kernel_pairs,pick\n{},{},{},{},{},{},{},{}\n",
            params.q,
            params.r,
            params.n,
            params.k,
            params.lattice_points,
            params.injective,
            params.kernel_pairs,
            opt(&params.pick)
        ),
        OutputFormat::Text => {
            let mut s = format!(
                "q              {}\nr              {}\nn              {}\nk              {}\nlattice points {}\ninjective      {}\nkernel pairs   {}\n",
                params.q, params.r, params.n, params.k, params.lattice_points, params.injective, params.kernel_pairs
            );
            if let Some(v) = params.pick {
                let _ = writeln!(s, "pick           {v}");
            }
            s
        }
    })
}

pub fn cmd_genmat(input: &Input, format: MatrixFormat) -> Result<String> {
    input.build()?.generator_text(format)
}

pub fn cmd_distance(input: &Input, opts: &DistanceOptions, format: OutputFormat) -> Result<String> {
    let code = input.build()?;
    let report = DistanceReport::compute(&code, opts)?;
    Ok(match format {
        OutputFormat::Json => json(&report)?,
        OutputFormat::Csv => format!(
            "n,k,exact,lower_bound,lower_bound_effective,upper_bound,trivial_lower\n{},{},{},{},{},{},{}\n",
            report.n,
            report.k,
            opt(&report.exact),
            opt(&report.lower_bound),
            opt(&report.lower_bound_effective),
            opt(&report.upper_bound),
            report.trivial_lower
        ),
        OutputFormat::Text => {
            let mut s = format!("n      {}\nk      {}\n", report.n, report.k);
            if let Some(d) = report.exact {
                let _ = writeln!(s, "exact  {d}");
            }
            if let (Some(l), Some(e)) = (report.lower_bound, report.lower_bound_effective) {
                let flag = if report.trivial_lower { " (trivial)" } else { "" };
                let _ = writeln!(s, "lower  {e} (raw {l}){flag}");
            }
            if let Some(u) = &report.witnesses.upper {
                let _ = writeln!(s, "upper  {} (anchor {}, lengths {:?})", u.bound, u.anchor, u.lengths);
            }
            s
        }
    })
}

/// Rendered suite report and whether every check passed.
pub fn cmd_verify_paper(case: &str, seed: u64, jobs: Option<usize>, format: OutputFormat) -> Result<(String, bool)> {
    let checks = verify::run_case(case, seed, jobs)?;
    let ok = checks.iter().all(|c| c.pass);
    let text = match format {
        OutputFormat::Json => json(&checks)?,
        OutputFormat::Csv => {
            let mut s = String::from("case,check,pass,detail\n");
            for c in &checks {
                let _ = writeln!(s, "{},\"{}\",{},\"{}\"", c.case, c.name, c.pass, c.detail.replace('"', "'"));
            }
            s
        }
        OutputFormat::Text => render_checks(&checks),
    };
    Ok((text, ok))
}

fn render_checks(checks: &[Check]) -> String {
    let mut s = String::new();
    for c in checks {
        let mark = if c.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{mark} {:<10} {}  {}", c.case, c.name, c.detail);
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    let _ = writeln!(s, "{passed}/{} checks passed", checks.len());
    s
}
