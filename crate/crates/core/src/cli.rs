//! Command-line front end.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand};

use crate::aggregate::{verify_all, Analyzer, ClassSum, CycleClass, Statistic, Status};
use crate::error::Error;
use crate::generators::{moment_curve, random_embedding};
use crate::geometry::{Direction, PLEmbedding};
use crate::report::{render_reports, render_sums, Format};
use crate::selftest;

#[derive(Debug, Parser)]
#[command(name = "spatial-linking", version, about = "Linking numbers and a2 over spatial complete graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, env = "SPATIAL_LINKING_JOBS", default_value_t = 0)]
    pub jobs: usize,

    #[arg(long, global = true, default_value = "csv", value_parser = parse_format)]
    pub format: Format,

    /// Omit the timestamp header (`--deterministic false` adds it).
    #[arg(long, global = true, default_value_t = true, action = ArgAction::Set)]
    pub deterministic: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write an embedding file.
    Gen(GenArgs),
    /// Class sums of one or more statistics.
    Sums(SumsArgs),
    /// Check every identity, congruence, bound and parity.
    Verify(VerifyArgs),
    /// Run the built-in acceptance suite.
    Selftest,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Vertices on the moment curve (t, t², t³).
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    pub moment: bool,
    /// Moment-curve parameters; defaults to 1..n.
    #[arg(long, value_delimiter = ',', requires = "moment", allow_hyphen_values = true)]
    pub params: Option<Vec<i64>>,
    /// Seeded random integer vertices.
    #[arg(long, requires_all = ["seed"])]
    pub random: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Coordinates drawn from [-bound, bound].
    #[arg(long, default_value_t = 100)]
    pub bound: i64,
    #[arg(short = 'n')]
    pub n: usize,
    /// Output path; stdout when absent.
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ProjectionArgs {
    #[arg(short = 'i', long)]
    pub input: PathBuf,
    /// Projection direction `dx,dy,dz`, components as integers or `a/b`.
    #[arg(long, value_parser = parse_direction)]
    pub direction: Option<Direction>,
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SumsArgs {
    #[command(flatten)]
    pub common: ProjectionArgs,
    #[arg(long, value_delimiter = ',', default_value = "lk2", value_parser = parse_statistic)]
    pub stat: Vec<Statistic>,
    /// `P,Q` for a link class or `P` for a knot class; all legal classes when absent.
    #[arg(long, value_parser = parse_pq)]
    pub pq: Option<(usize, Option<usize>)>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: ProjectionArgs,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_statistic(s: &str) -> Result<Statistic, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_direction(s: &str) -> Result<Direction, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_pq(s: &str) -> Result<(usize, Option<usize>), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<usize>().map_err(|_| format!("expected P,Q or P, got {s:?}"));
    match parts.as_slice() {
        [p] => Ok((num(p)?, None)),
        [p, q] => Ok((num(p)?, Some(num(q)?))),
        _ => Err(format!("expected P,Q or P, got {s:?}")),
    }
}

/// Exit status: 0 success, 1 violations, 2 input or usage error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Violations,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::Violations => 1,
        }
    }
}

/// Runs one command; `out` receives anything not written to a file.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, Error> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| Error::Parameter(format!("thread pool: {e}")))?;
    let mut buf = Vec::new();
    let outcome = pool.install(|| dispatch(cli, &mut buf));
    out.write_all(&buf).map_err(io_error)?;
    outcome
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Gen(args) => {
            let e = if args.moment {
                let t = args.params.clone().unwrap_or_else(|| (1..=args.n as i64).collect());
                moment_curve(args.n, &t)?
            } else {
                random_embedding(args.n, args.seed.unwrap_or_default(), args.bound)?
            };
            emit(args.output.as_ref(), &e.to_json(), out)?;
            Ok(Outcome::Success)
        }
        Command::Sums(args) => {
            let analyzer = load(&args.common)?;
            let n = analyzer.n();
            let mut rows: Vec<ClassSum> = Vec::new();
            for &stat in &args.stat {
                for class in classes_for(n, stat, args.pq)? {
                    rows.push(analyzer.class_sum(class, stat)?);
                }
            }
            let text = render_sums(&rows, cli.format, cli.deterministic)?;
            emit(args.common.output.as_ref(), &text, out)?;
            Ok(Outcome::Success)
        }
        Command::Verify(args) => {
            let analyzer = load(&args.common)?;
            let reports = verify_all(&analyzer)?;
            let text = render_reports(&reports, cli.format, cli.deterministic)?;
            emit(args.common.output.as_ref(), &text, out)?;
            if reports.iter().any(|r| r.status == Status::Violated) {
                Ok(Outcome::Violations)
            } else {
                Ok(Outcome::Success)
            }
        }
        Command::Selftest => {
            let results = selftest::run_all();
            for r in &results {
                writeln!(out, "{r}").map_err(io_error)?;
            }
            let passed = results.iter().filter(|r| r.passed).count();
            writeln!(out, "{passed}/{} criteria passed", results.len()).map_err(io_error)?;
            Ok(if passed == results.len() { Outcome::Success } else { Outcome::Violations })
        }
    }
}

fn classes_for(n: usize, stat: Statistic, pq: Option<(usize, Option<usize>)>) -> Result<Vec<CycleClass>, Error> {
    match (pq, stat) {
        (Some((p, Some(q))), _) => Ok(vec![CycleClass::pair(p, q)]),
        (Some((p, None)), _) => Ok(vec![CycleClass::knot(p)]),
        (None, Statistic::A2) => Ok((3..=n).map(CycleClass::knot).collect()),
        (None, _) => Ok((3..=n / 2)
            .flat_map(|p| (p..=n - p).map(move |q| CycleClass::pair(p, q)))
            .collect()),
    }
}

fn load(args: &ProjectionArgs) -> Result<Analyzer, Error> {
    let text = fs::read_to_string(&args.input)
        .map_err(|e| Error::Format(format!("{}: {e}", args.input.display())))?;
    let e = PLEmbedding::from_json(&text).map_err(|e| match e {
        Error::Format(m) => Error::Format(format!("{}: {m}", args.input.display())),
        other => other,
    })?;
    match &args.direction {
        Some(d) => Analyzer::with_direction(e, d),
        None => Analyzer::new(e),
    }
}

fn emit(path: Option<&PathBuf>, text: &str, out: &mut dyn Write) -> Result<(), Error> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Format(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(io_error),
    }
}

fn io_error(e: std::io::Error) -> Error {
    Error::Format(e.to_string())
}

/// Parses `args` (without the program name) and runs the command, returning
/// the exit code and captured stdout.
pub fn run_captured<I, S>(args: I) -> (u8, Vec<u8>, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("spatial-linking")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => return (2, Vec::new(), e.to_string()),
    };
    let mut buf = Vec::new();
    match run(&cli, &mut buf) {
        Ok(outcome) => (outcome.code(), buf, String::new()),
        Err(e) => (2, buf, format!("error: {e}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pq_parsing() {
        assert_eq!(parse_pq("3,4").unwrap(), (3, Some(4)));
        assert_eq!(parse_pq("7").unwrap(), (7, None));
        assert!(parse_pq("3,4,5").is_err());
        assert!(parse_pq("x").is_err());
    }

    #[test]
    fn default_classes() {
        let c = classes_for(8, Statistic::Lk2, None).unwrap();
        assert_eq!(
            c,
            vec![CycleClass::pair(3, 3), CycleClass::pair(3, 4), CycleClass::pair(3, 5), CycleClass::pair(4, 4)]
        );
        assert_eq!(classes_for(5, Statistic::A2, None).unwrap().len(), 3);
    }

    #[test]
    fn usage_errors_exit_two() {
        let (code, _, err) = run_captured(["gen", "-n", "6"]);
        assert_eq!(code, 2, "{err}");
        let (code, _, _) = run_captured(["sums", "-i", "/nonexistent.json"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn gen_to_stdout() {
        let (code, out, _) = run_captured(["gen", "--moment", "-n", "4"]);
        assert_eq!(code, 0);
        let e = PLEmbedding::from_json(std::str::from_utf8(&out).unwrap()).unwrap();
        assert_eq!(e.n(), 4);
    }
}
