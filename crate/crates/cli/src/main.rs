//! `netcurve`: realize network codes as osculating spaces of rational curves.
//!
//! Exit status:
//!
//! | code | meaning                                             |
//! |------|-----------------------------------------------------|
//! | 0    | success (for `realize`: every verification passed)  |
//! | 1    | verification failed or internal construction defect |
//! | 2    | Hall's condition fails; no distinct marked points   |
//! | 3    | more members than rational points of `P^1`          |
//! | 4    | a member is too large for ordinary mode             |
//! | 5    | unparsable or invalid input, bad flags              |
//! | 6    | file could not be read or written                   |

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use netcurve::curve::P1Point;
use netcurve::format::{
    inspect_curve, parse_points, to_canonical_string, CodeSpecFile, CurveFile, DistanceTable, FormatError,
    RealizationFile,
};
use netcurve::netcode::NetcodeError;
use netcurve::realize::{construct, verify_realization, Mode, RealizeError};

#[derive(Parser)]
#[command(name = "netcurve", version, about = "Realize network codes as osculating spaces of rational curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and verify a curve realizing the code in INPUT.
    Realize {
        input: PathBuf,
        /// Where to write the realization; standard output when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Overrides `options.mode` from the input file.
        #[arg(long)]
        mode: Option<Mode>,
        /// Comma-separated points such as `t=0,t=3,inf`; overrides `options.points`.
        #[arg(long, value_delimiter = ',')]
        points: Option<Vec<String>>,
    },
    /// Print pairwise subspace distances and the minimum distance.
    Distances { input: PathBuf },
    /// Report local expansions, order sequences and osculating spaces of a curve.
    Inspect {
        /// A curve document, or a realization document (its curve is used).
        curve: PathBuf,
        /// Comma-separated points; all of P^1(F_q) when omitted.
        #[arg(long, value_delimiter = ',')]
        points: Option<Vec<String>>,
        /// Comma-separated osculating dimensions; the whole flag when omitted.
        #[arg(long, value_delimiter = ',')]
        x: Option<Vec<usize>>,
    },
}

enum Failure {
    Io(PathBuf, std::io::Error),
    Format(FormatError),
    Realize(RealizeError),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Format(e)
    }
}

impl From<RealizeError> for Failure {
    fn from(e: RealizeError) -> Self {
        Failure::Realize(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(..) => 6,
            Failure::Format(_) => 5,
            Failure::Realize(e) => match e {
                RealizeError::Netcode(NetcodeError::HallViolation(_)) => 2,
                RealizeError::TooManyMembers { .. } => 3,
                RealizeError::OrdinaryModeDimension { .. } => 4,
                RealizeError::VerificationFailed(_) | RealizeError::RankDeficientBlocks { .. } => 1,
                RealizeError::Netcode(_)
                | RealizeError::AmbientTooSmall(_)
                | RealizeError::NotFullyMarked(_)
                | RealizeError::PointCountMismatch { .. }
                | RealizeError::DuplicateExplicitPoints(_)
                | RealizeError::PointOutsideField(_)
                | RealizeError::DegreeTooSmall { .. } => 5,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Io(path, e) => format!("{}: {e}", path.display()),
            Failure::Format(e) => e.to_string(),
            Failure::Realize(e) => e.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn run_realize(
    input: &Path,
    output: Option<&Path>,
    mode: Option<Mode>,
    points: Option<Vec<String>>,
) -> Result<u8, Failure> {
    let spec = CodeSpecFile::parse(&read(input)?)?;
    let code = spec.to_code()?;
    let mut opts = spec.plan_options()?;
    if let Some(mode) = mode {
        opts.mode = mode;
    }
    if let Some(points) = points {
        opts.points = Some(parse_points(&points)?);
    }
    let realization = construct(&code, &opts)?;
    let report = verify_realization(&realization);
    let text = to_canonical_string(&RealizationFile::new(&realization, &report));
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Io(path.to_path_buf(), e))?,
        None => print!("{text}"),
    }
    if report.all_pass() {
        Ok(0)
    } else {
        for row in report.members.iter().filter(|m| !m.passed()) {
            eprintln!("verification failed for member `{}` at {}", row.label, row.point);
        }
        Ok(1)
    }
}

fn run_distances(input: &Path) -> Result<u8, Failure> {
    let code = CodeSpecFile::parse(&read(input)?)?.to_code()?;
    print!("{}", to_canonical_string(&DistanceTable::new(&code)));
    Ok(0)
}

fn run_inspect(path: &Path, points: Option<Vec<String>>, xs: Option<Vec<usize>>) -> Result<u8, Failure> {
    let curve = CurveFile::parse_any(&read(path)?)?.to_curve()?;
    let points: Option<Vec<P1Point>> = points.map(|p| parse_points(&p)).transpose()?;
    if let Some(bad) = points.iter().flatten().find(|p| !p.in_field(curve.field())) {
        return Err(FormatError::Invalid(format!("point {bad} is not in the field")).into());
    }
    let report = inspect_curve(&curve, points.as_deref(), xs.as_deref());
    print!("{}", to_canonical_string(&report));
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 5 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Realize { input, output, mode, points } => run_realize(&input, output.as_deref(), mode, points),
        Command::Distances { input } => run_distances(&input),
        Command::Inspect { curve, points, x } => run_inspect(&curve, points, x),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}
