use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use supersplit::model::{build_model, build_w_eta, build_y_eta, default_points, nowhere_split_acs, nowhere_split_metric};
use supersplit::splitting::SplitOptions;
use supersplit::suite::{parse_tensor_file, run_paper_suite, run_split, SuiteConfig, SuiteKind};
use supersplit::tensor::{check_acs, check_metric, tensor_to_json, AnyTensor};
use supersplit::{Rational, Scalar};

const EXIT_OK: u8 = 0;
const EXIT_FAILED: u8 = 1;
const EXIT_OBSTRUCTED: u8 = 2;
const EXIT_INVALID_INPUT: u8 = 3;
const EXIT_USAGE: u8 = 4;

const REPORT_DIR_VAR: &str = "SUPERSPLIT_REPORT_DIR";

/// Exact split-obstruction engine for almost complex structures and metrics
/// on split supermanifold models.
#[derive(Parser, Debug)]
#[command(name = "supersplit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Output {
    /// Write the JSON report here. Without it the report goes to
    /// `$SUPERSPLIT_REPORT_DIR/<command>.json` if that is set, else stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the verification suite.
    Suite {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        degree_bound: Option<u32>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of sample points.
        #[arg(long, default_value_t = 10)]
        points: usize,
        /// Random instances per randomized check.
        #[arg(long, default_value_t = 5)]
        trials: usize,
        /// Restrict to these suites (lemma, theorem, solver, paths).
        #[arg(long = "suite", value_delimiter = ',')]
        suites: Vec<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Remove the nilpotent part of a tensor degree by degree.
    Split {
        file: PathBuf,
        #[arg(long)]
        degree_bound: Option<u32>,
        #[arg(long, default_value_t = 10)]
        points: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Validity report for an almost complex structure or metric.
    Check {
        file: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Write one of the model tensors.
    BuildExample {
        #[arg(value_enum)]
        example: Example,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate a tensor's entries at points of the body.
    Eval {
        file: PathBuf,
        /// A point as comma separated fractions, e.g. `1/2,0,3`; repeatable.
        #[arg(long = "at")]
        at: Vec<String>,
        /// Number of default sample points, used when no `--at` is given.
        #[arg(long, default_value_t = 3)]
        points: usize,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Example {
    #[value(name = "j-r")]
    JR,
    #[value(name = "g-r")]
    GR,
    YEta,
    WEta,
    NowhereSplitAcs,
    NowhereSplitMetric,
}

/// An error together with the exit status it maps to.
struct Failure(u8, anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(EXIT_INVALID_INPUT, e.into())
    }
}

fn usage(e: impl Into<anyhow::Error>) -> Failure {
    Failure(EXIT_USAGE, e.into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Suite { n, degree_bound, seed, points, trials, suites, output } => {
            let suites = if suites.is_empty() {
                SuiteKind::ALL.to_vec()
            } else {
                suites.iter().map(|s| s.parse()).collect::<Result<_, _>>().map_err(usage)?
            };
            let config = SuiteConfig { n, degree_bound, seed, points, trials, suites };
            let report = run_paper_suite(&config).map_err(usage)?;
            emit(&output, "suite", &report.to_json(), &report.summary())?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Split { file, degree_bound, points, output } => {
            let bytes = read(&file)?;
            let dim = match parse_tensor_file(&bytes)? {
                AnyTensor::Endo(t) => t.p(),
                AnyTensor::Metric(g) => g.p(),
            };
            let opts = SplitOptions { degree_bound, points: default_points::<Rational>(dim, points) };
            let report = run_split(&bytes, &opts)?;
            let summary = match report.obstructed_degree() {
                Some(d) => format!("OBSTRUCTED at degree {d}\n"),
                None if report.is_split() => "SPLIT\n".to_string(),
                None => "INCOMPLETE\n".to_string(),
            };
            emit(&output, "split", &report.to_json(), &summary)?;
            Ok(if report.obstructed_degree().is_some() {
                EXIT_OBSTRUCTED
            } else if report.is_split() {
                EXIT_OK
            } else {
                EXIT_FAILED
            })
        }
        Command::Check { file, output } => {
            let (value, valid) = match parse_tensor_file(&read(&file)?)? {
                AnyTensor::Endo(j) => {
                    let r = check_acs(&j);
                    (json!({"kind": "acs", "report": r.to_json()}), r.valid())
                }
                AnyTensor::Metric(g) => {
                    let r = check_metric(&g);
                    (json!({"kind": "metric", "report": r.to_json()}), r.valid())
                }
            };
            emit(&output, "check", &value, if valid { "VALID\n" } else { "INVALID\n" })?;
            Ok(if valid { EXIT_OK } else { EXIT_FAILED })
        }
        Command::BuildExample { example, n, output } => {
            let model = build_model::<Rational>(n).map_err(usage)?;
            let tensor = match example {
                Example::JR => AnyTensor::Endo(model.j_r.clone()),
                Example::GR => AnyTensor::Metric(model.g_r.clone()),
                Example::YEta => AnyTensor::Endo(build_y_eta(&model)?),
                Example::WEta => AnyTensor::Endo(build_w_eta(&model)?),
                Example::NowhereSplitAcs => AnyTensor::Endo(nowhere_split_acs(&model)?),
                Example::NowhereSplitMetric => AnyTensor::Metric(nowhere_split_metric(&model)?),
            };
            let v = tensor_to_json(&tensor);
            emit(&output, "build-example", &v, &format!("{} for n = {n}\n", example.to_possible_value().expect("no skipped variants").get_name()))?;
            Ok(EXIT_OK)
        }
        Command::Eval { file, at, points, output } => {
            let tensor = parse_tensor_file(&read(&file)?)?;
            let p = match &tensor {
                AnyTensor::Endo(t) => t.p(),
                AnyTensor::Metric(g) => g.p(),
            };
            let pts = if at.is_empty() {
                default_points::<Rational>(p, points)
            } else {
                at.iter().map(|s| parse_point(s, p)).collect::<Result<_, _>>().map_err(usage)?
            };
            let mut values = Vec::new();
            for pt in &pts {
                let t = match &tensor {
                    AnyTensor::Endo(t) => AnyTensor::Endo(t.evaluate_at_point(pt)?),
                    AnyTensor::Metric(g) => AnyTensor::Metric(g.evaluate_at_point(pt)?),
                };
                let point: Vec<Value> = pt
                    .iter()
                    .map(|c| {
                        let (n, d) = c.to_fraction();
                        json!({"num": n, "den": d})
                    })
                    .collect();
                values.push(json!({"point": point, "tensor": tensor_to_json(&t)}));
            }
            let v = json!({"evaluations": values});
            emit(&output, "eval", &v, &format!("evaluated at {} points\n", pts.len()))?;
            Ok(EXIT_OK)
        }
    }
}

fn read(path: &Path) -> anyhow::Result<Vec<u8>> {
    std::fs::read(path).with_context(|| format!("reading {}", path.display()))
}

fn parse_point(s: &str, p: usize) -> anyhow::Result<Vec<Rational>> {
    let coords: Vec<Rational> = s
        .split(',')
        .map(|c| {
            let (n, d) = c.split_once('/').unwrap_or((c, "1"));
            Rational::parse_fraction(n, d).with_context(|| format!("bad coordinate \"{c}\""))
        })
        .collect::<anyhow::Result<_>>()?;
    anyhow::ensure!(coords.len() == p, "point has {} coordinates, expected {p}", coords.len());
    Ok(coords)
}

/// Writes the report to `--out`, the report directory, or stdout; the summary
/// goes to stdout whenever the report went to a file.
fn emit(output: &Output, command: &str, report: &Value, summary: &str) -> Result<(), Failure> {
    let target = output
        .out
        .clone()
        .or_else(|| std::env::var_os(REPORT_DIR_VAR).map(|d| PathBuf::from(d).join(format!("{command}.json"))));
    let text = serde_json::to_string_pretty(report).map_err(|e| Failure(EXIT_FAILED, e.into()))?;
    match target {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(|e| usage(anyhow::Error::from(e)))?;
            }
            std::fs::write(&path, text + "\n")
                .with_context(|| format!("writing {}", path.display()))
                .map_err(usage)?;
            write_stdout(summary);
        }
        None => write_stdout(&(text + "\n")),
    }
    Ok(())
}

/// A closed stdout (e.g. piping into `head`) is not an error.
fn write_stdout(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}
