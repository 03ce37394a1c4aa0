//! Command-line driver for the grassflow checks.
//!
//! [`run`] parses arguments, dispatches to a subcommand and renders the
//! resulting [`CheckReport`]s. Exit codes: 0 when every check passes, 1 when
//! any fails, 2 on usage errors.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grassflow::exactalg::{parse_rational, parse_rational_list, RationalScalar, MAX_N};
use grassflow::linalg::MatrixQ;
use grassflow::model::parse_point;
use grassflow::Error;

mod commands;
mod oracles;
pub mod report;
mod suite;

pub use report::{CheckReport, Kind, Status};

#[derive(Parser, Debug)]
#[command(name = "grassflow", version, about = "Exact checks for deformations of the flat (2,n)-almost-Grassmannian structure")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Apply z^t to a point; with --s also check the group law and cocycle there.
    Flow,
    /// Coefficients of the deformation Φ_c and its structural checks.
    Phi,
    /// Torsion bracket and the harmonic-torsion verdict at sampled points.
    Torsion,
    /// The κ^{111}_{2'1'r} component and its closed form.
    Curvature,
    /// Ranks and dimensions of ∂₁ and the trace components.
    Reptheory,
    /// Run acceptance criteria (--all, or --check with ids).
    Verify,
}

#[derive(Args, Debug, Clone)]
struct Options {
    /// Rank n of the Grassmannian Gr(2, n).
    #[arg(long, global = true, default_value_t = 3)]
    n: usize,
    /// Deformation parameters c_2..c_n as comma-separated rationals.
    #[arg(long, global = true, allow_hyphen_values = true)]
    c: Option<String>,
    /// Chart point as rows separated by ';', entries by ','.
    #[arg(long, global = true, allow_hyphen_values = true)]
    point: Option<String>,
    /// Flow parameter.
    #[arg(long, global = true, allow_hyphen_values = true)]
    t: Option<String>,
    /// Second flow parameter.
    #[arg(long = "s", global = true, allow_hyphen_values = true)]
    s_param: Option<String>,
    /// Component index r in 2..n.
    #[arg(long, global = true)]
    r: Option<usize>,
    /// Torsion index s in 2..n.
    #[arg(long, global = true)]
    sindex: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true, value_enum, default_value_t = Emit::None)]
    emit: Emit,
    /// Sampling seed.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of balls of radius 2^-1, 2^-2, ... to sample from.
    #[arg(long = "sample-balls", global = true, default_value_t = 8)]
    sample_balls: u32,
    /// Sample points per ball.
    #[arg(long = "points-per-ball", global = true, default_value_t = 100)]
    points_per_ball: usize,
    /// Run every check of the subcommand.
    #[arg(long, global = true)]
    all: bool,
    /// Select checks by name (comma-separated).
    #[arg(long, global = true, value_delimiter = ',')]
    check: Vec<String>,
    /// Record wall-clock time per check (makes output nondeterministic).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Emit {
    Latex,
    None,
}

/// Exit code and captured output streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl RunOutput {
    fn usage(message: String) -> Self {
        RunOutput {
            code: 2,
            stdout: String::new(),
            stderr: message,
        }
    }
}

/// Validated parameters shared by the subcommands.
pub(crate) struct Params {
    pub n: usize,
    pub c: Option<Vec<RationalScalar>>,
    pub point: Option<MatrixQ>,
    pub t: Option<RationalScalar>,
    pub s: Option<RationalScalar>,
    pub r: Option<usize>,
    pub sindex: Option<usize>,
    pub latex: bool,
    pub seed: u64,
    pub sample_balls: u32,
    pub points_per_ball: usize,
    pub all: bool,
    pub checks: Vec<String>,
    pub timings: bool,
}

fn validate(opts: &Options) -> grassflow::Result<Params> {
    if !(2..=MAX_N).contains(&opts.n) {
        return Err(Error::Usage(format!("--n must lie in 2..={MAX_N}, got {}", opts.n)));
    }
    let n = opts.n;
    let c = opts.c.as_deref().map(parse_rational_list).transpose()?;
    if let Some(c) = &c {
        if c.len() + 1 != n {
            return Err(Error::Usage(format!("--c needs {} values for n = {n}, got {}", n - 1, c.len())));
        }
    }
    let point = opts.point.as_deref().map(parse_point).transpose()?;
    if let Some(p) = &point {
        if p.rows() != n {
            return Err(Error::Usage(format!("--point has {} rows, expected {n}", p.rows())));
        }
    }
    let index = |name: &str, v: Option<usize>| -> grassflow::Result<Option<usize>> {
        match v {
            Some(k) if !(2..=n).contains(&k) => Err(Error::Usage(format!("--{name} must lie in 2..={n}, got {k}"))),
            _ => Ok(v),
        }
    };
    if opts.sample_balls == 0 || opts.sample_balls > 20 {
        return Err(Error::Usage(format!("--sample-balls must lie in 1..=20, got {}", opts.sample_balls)));
    }
    Ok(Params {
        n,
        c,
        point,
        t: opts.t.as_deref().map(parse_rational).transpose()?,
        s: opts.s_param.as_deref().map(parse_rational).transpose()?,
        r: index("r", opts.r)?,
        sindex: index("sindex", opts.sindex)?,
        latex: opts.emit == Emit::Latex,
        seed: opts.seed,
        sample_balls: opts.sample_balls,
        points_per_ball: opts.points_per_ball,
        all: opts.all,
        checks: opts.check.clone(),
        timings: opts.timings,
    })
}

fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Usage(_) | Error::Parse { .. } | Error::PoleAtPoint { .. } | Error::DimensionMismatch { .. }
    )
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                RunOutput {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                RunOutput::usage(text)
            };
        }
    };
    let params = match validate(&cli.opts) {
        Ok(p) => p,
        Err(e) => return RunOutput::usage(format!("error: {e}\n")),
    };
    let result = match cli.command {
        Command::Flow => commands::flow(&params),
        Command::Phi => commands::phi(&params),
        Command::Torsion => commands::torsion(&params),
        Command::Curvature => commands::curvature(&params),
        Command::Reptheory => commands::reptheory(&params),
        Command::Verify => suite::verify(&params),
    };
    let reports = match result {
        Ok(r) => report::finalize(r),
        Err(e) if is_input_error(&e) => return RunOutput::usage(format!("error: {e}\n")),
        Err(e) => {
            return RunOutput {
                code: 1,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    let stdout = match cli.opts.format {
        Format::Json => report::render_json(&reports),
        Format::Text if cli.command == Command::Flow => commands::flow_text(&reports),
        Format::Text => report::render_text(&reports),
    };
    RunOutput {
        code: if reports.iter().all(CheckReport::passed) { 0 } else { 1 },
        stdout,
        stderr: String::new(),
    }
}
