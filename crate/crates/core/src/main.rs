use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use toric_core::cli::{self, Input, OutputFormat};
use toric_core::code::{Guards, MatrixFormat, DEFAULT_MATRIX_GUARD};
use toric_core::distance::{DistanceOptions, DEFAULT_BOX_GUARD, DEFAULT_MESSAGE_LIMIT};
use toric_core::field::DEFAULT_FIELD_GUARD;
use toric_core::geometry::DEFAULT_LATTICE_GUARD;
use toric_core::{Error, Result};

/// Toric evaluation codes: parameters, generator matrices and minimum distance.
///
/// Exit codes: 0 ok, 1 failed verification, 2 input error, 3 guard exceeded,
/// 4 I/O error, 5 internal error.
#[derive(Parser)]
#[command(name = "toric", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Length, dimension, lattice point count and injectivity of a toric code.
    Params {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Write the generator matrix: a header line, then one row per reduced exponent.
    Genmat {
        #[command(flatten)]
        common: Common,
        /// `text` writes element encodings, `log` writes discrete logs to the fixed generator.
        #[arg(long, value_enum, default_value = "text")]
        format: MatrixFormatArg,
    },
    /// Exact minimum distance and/or the lower and upper bounds, as a JSON report.
    Distance {
        #[command(flatten)]
        common: Common,
        /// Run the exhaustive search.
        #[arg(long)]
        exact: bool,
        /// Compute the lower and upper bounds.
        #[arg(long)]
        bounds: bool,
        /// Largest number of nonzero messages the exhaustive search may visit.
        #[arg(long, default_value_t = DEFAULT_MESSAGE_LIMIT)]
        limit: u128,
        /// Worker threads for the exhaustive search (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Membership tests the box search may spend before falling back to segments.
        #[arg(long, default_value_t = DEFAULT_BOX_GUARD)]
        box_guard: u128,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Re-run the worked examples and the conjecture checks.
    VerifyPaper {
        #[arg(long, value_enum, default_value = "all")]
        case: Case,
        /// Seed for the randomized Pick check.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Args)]
struct Common {
    /// Polytope file: {"vertices": [[int, ...], ...]}.
    #[arg(long)]
    polytope: PathBuf,
    /// Field size; must be a prime power.
    #[arg(long, conflicts_with = "field", required_unless_present = "field")]
    q: Option<u64>,
    /// Field as p=<prime>,m=<degree>. Elements are written as integers whose
    /// base-p digits are the polynomial coefficients, constant term last digit.
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_FIELD_GUARD)]
    field_guard: u64,
    #[arg(long, default_value_t = DEFAULT_LATTICE_GUARD)]
    lattice_guard: u128,
    #[arg(long, default_value_t = DEFAULT_MATRIX_GUARD)]
    matrix_guard: u128,
}

impl Common {
    fn input(&self) -> Input {
        let field_spec = match (&self.q, &self.field) {
            (Some(q), _) => format!("q={q}"),
            (None, Some(f)) => f.clone(),
            (None, None) => unreachable!("clap requires one of --q and --field"),
        };
        Input {
            polytope_path: self.polytope.clone(),
            field_spec,
            field_guard: self.field_guard,
            guards: Guards { lattice_points: self.lattice_guard, matrix_entries: self.matrix_guard },
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
            Format::Text => OutputFormat::Text,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixFormatArg {
    Text,
    Log,
}

#[derive(Clone, Copy, ValueEnum)]
enum Case {
    Hypercube,
    Hexagon,
    Joyner42,
    Joyner43,
    Pick,
    All,
}

impl Case {
    fn name(self) -> &'static str {
        match self {
            Case::Hypercube => "hypercube",
            Case::Hexagon => "hexagon",
            Case::Joyner42 => "joyner42",
            Case::Joyner43 => "joyner43",
            Case::Pick => "pick",
            Case::All => "all",
        }
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => cli::write(path, text),
        None => {
            std::io::stdout().write_all(text.as_bytes()).map_err(|source| Error::Io { path: "<stdout>".into(), source })
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Params { common, format } => {
            let text = cli::cmd_params(&common.input(), format.into())?;
            emit(common.out.as_ref(), &text)?;
        }
        Command::Genmat { common, format } => {
            let format = match format {
                MatrixFormatArg::Text => MatrixFormat::Int,
                MatrixFormatArg::Log => MatrixFormat::Log,
            };
            let text = cli::cmd_genmat(&common.input(), format)?;
            emit(common.out.as_ref(), &text)?;
        }
        Command::Distance { common, exact, bounds, limit, jobs, box_guard, format } => {
            let both = !exact && !bounds;
            let opts =
                DistanceOptions { exact: exact || both, bounds: bounds || both, message_limit: limit, box_guard, jobs };
            let text = cli::cmd_distance(&common.input(), &opts, format.into())?;
            emit(common.out.as_ref(), &text)?;
        }
        Command::VerifyPaper { case, seed, jobs, out, format } => {
            let (text, ok) = cli::cmd_verify_paper(case.name(), seed, jobs, format.into())?;
            emit(out.as_ref(), &text)?;
            return Ok(ok);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
