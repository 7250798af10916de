//! The `schober` command line.
//!
//! Exit codes: 0 when every check passes, 1 on a check failure, 2 on
//! malformed input, 64 on usage errors.

pub mod io;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use schober_core::homalg::ProbeSet;
use schober_core::laurent::parse_rational;
use schober_core::moduli::{self, InertiaPoint, ModuliError};
use schober_core::report::Report;
use schober_core::schober::HypersurfaceSchober;
use schober_core::sections::CylinderSchober;
use schober_core::{Rational, TorusPoint};

use crate::io::{AnyQuintuple, IoError, PointJson, ReportJson};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "schober",
    version,
    about = "Exact wall-crossing for the hypersurface schober on the torus"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Common {
    /// Rank of the torus; the pants lives in n - 1 variables.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Framing index, 1..=n (defaults to n).
    #[arg(long)]
    pub k: Option<usize>,
    /// Emit JSON instead of report lines.
    #[arg(long)]
    pub json: bool,
    /// Also write the output to this file.
    #[arg(long = "out")]
    pub out: Option<String>,
}

#[derive(Debug, Args, Clone)]
pub struct PointArgs {
    /// Torus point, comma-separated rationals `a` or `a/b`.
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Monodromy scalar.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply the closed-form wall-crossing to one point `(p; λ)`.
    Wallcross {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        point: PointArgs,
    },
    /// Print the wall-crossing birational map.
    Map {
        #[command(flatten)]
        common: Common,
    },
    /// Check `K_𝔪 ≃ F_Cl⁻¹ ∘ F♯ ∘ F_Ch` on a skyscraper or an inertia file.
    VerifyCorollary {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        point: PointArgs,
        /// Inertia-object JSON.
        #[arg(long = "in")]
        input: Option<String>,
    },
    /// Run the spherical-functor axiom checks on sample objects.
    CheckSpherical {
        #[command(flatten)]
        common: Common,
        /// Sample-list JSON; defaults to the built-in samples.
        #[arg(long = "in")]
        input: Option<String>,
    },
    /// Mutate a quintuple (or unmutate a mutated one) read from JSON.
    Mutate {
        #[command(flatten)]
        common: Common,
        /// Quintuple JSON.
        #[arg(long = "in")]
        input: String,
    },
    /// Compare the categorical route against the formula on random points.
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Write(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {}", m),
            CliError::Input(m) => write!(f, "input error: {}", m),
            CliError::Write(m) => write!(f, "write error: {}", m),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) | CliError::Write(_) => EXIT_INPUT,
        }
    }
}

/// What a command produced: text for stdout and whether its checks passed.
struct Outcome {
    text: String,
    pass: bool,
    artifact: Option<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            pass: true,
            artifact: None,
        }
    }
}

fn framing(common: &Common) -> Result<(usize, usize), CliError> {
    let n = common.n;
    let k = common.k.unwrap_or(n);
    if n < 2 {
        return Err(CliError::Usage(format!("--n must be at least 2, got {}", n)));
    }
    if k < 1 || k > n {
        return Err(CliError::Usage(format!("--k must lie in 1..={}, got {}", n, k)));
    }
    Ok((n, k))
}

fn parse_point_arg(s: &str, nv: usize) -> Result<TorusPoint, CliError> {
    let coords = s
        .split(',')
        .map(|c| parse_rational(c.trim()).map_err(|e| CliError::Input(format!("--point: {}", e))))
        .collect::<Result<Vec<Rational>, _>>()?;
    if coords.len() != nv {
        return Err(CliError::Input(format!(
            "--point needs {} coordinates, got {}",
            nv,
            coords.len()
        )));
    }
    TorusPoint::new(coords).map_err(|e| CliError::Input(format!("--point: {}", e)))
}

fn inertia_point(args: &PointArgs, n: usize) -> Result<InertiaPoint, CliError> {
    let p = args
        .point
        .as_deref()
        .ok_or_else(|| CliError::Usage("--point is required".into()))?;
    let l = args
        .lambda
        .as_deref()
        .ok_or_else(|| CliError::Usage("--lambda is required".into()))?;
    let point = parse_point_arg(p, n - 1)?;
    let lambda = parse_rational(l.trim()).map_err(|e| CliError::Input(format!("--lambda: {}", e)))?;
    InertiaPoint::new(point, lambda).map_err(|e| CliError::Input(e.to_string()))
}

fn moduli_input(e: ModuliError) -> CliError {
    CliError::Input(e.to_string())
}

fn io_err(e: IoError) -> Result<Outcome, CliError> {
    match e {
        IoError::Invalid(r) => Ok(Outcome {
            text: r.to_string(),
            pass: false,
            artifact: None,
        }),
        other => Err(CliError::Input(other.to_string())),
    }
}

fn report_text(r: &Report, json: bool) -> String {
    if json {
        io::to_json(&ReportJson::from(r))
    } else {
        r.to_string()
    }
}

fn report_outcome(r: Report, json: bool) -> Outcome {
    Outcome {
        text: report_text(&r, json),
        pass: r.passed(),
        artifact: None,
    }
}

#[derive(Serialize)]
struct MapJson {
    n: usize,
    k: usize,
    components: Vec<String>,
}

#[derive(Serialize)]
struct CompareJson {
    n: usize,
    k: usize,
    trials: usize,
    seed: u64,
    passed: usize,
    total: usize,
    report: ReportJson,
}

#[derive(Serialize)]
struct MutateJson {
    report: ReportJson,
    result: io::QuintupleJson,
}

fn cylinder(n: usize, k: usize) -> CylinderSchober {
    let s = HypersurfaceSchober::new(n, k)
        .expect("validated framing")
        .with_probes(ProbeSet::default());
    CylinderSchober::trivial(s)
}

fn dispatch(cmd: &Command) -> Result<(Outcome, Option<String>), CliError> {
    match cmd {
        Command::Wallcross { common, point } => {
            let (n, k) = framing(common)?;
            let ip = inertia_point(point, n)?;
            let w = moduli::wallcross_point(&ip, k).map_err(moduli_input)?;
            let text = if common.json {
                io::to_json(&PointJson::from(&w))
            } else {
                format!("{}\n", w)
            };
            Ok((Outcome::ok(text), common.out.clone()))
        }
        Command::Map { common } => {
            let (n, k) = framing(common)?;
            let m = moduli::wallcross_map(n, k).map_err(moduli_input)?;
            let text = if common.json {
                io::to_json(&MapJson {
                    n,
                    k,
                    components: m.components().iter().map(ToString::to_string).collect(),
                })
            } else {
                m.to_string()
            };
            Ok((Outcome::ok(text), common.out.clone()))
        }
        Command::VerifyCorollary { common, point, input } => {
            let (n, k) = framing(common)?;
            let cyl = cylinder(n, k);
            let obj = match input {
                Some(path) => {
                    if point.point.is_some() || point.lambda.is_some() {
                        return Err(CliError::Usage("--in excludes --point/--lambda".into()));
                    }
                    let loaded = io::read_file(path)
                        .and_then(|t| io::from_json::<io::InertiaJson>(&t))
                        .and_then(|j| io::inertia_from_json(&j, n - 1, "."));
                    match loaded {
                        Ok(o) => o,
                        Err(e) => return Ok((io_err(e)?, common.out.clone())),
                    }
                }
                None => {
                    let ip = inertia_point(point, n)?;
                    schober_core::sections::skyscraper_inertia(&ip.point, &ip.lambda)
                }
            };
            Ok((
                report_outcome(cyl.verify_corollary(&obj), common.json),
                common.out.clone(),
            ))
        }
        Command::CheckSpherical { common, input } => {
            let (schober, samples) = match input {
                Some(path) => {
                    let doc = io::read_file(path).and_then(|t| io::from_json::<io::SamplesJson>(&t));
                    let doc = match doc {
                        Ok(d) => d,
                        Err(e) => return Ok((io_err(e)?, common.out.clone())),
                    };
                    let (n, k) = framing(&Common {
                        n: doc.schober.n,
                        k: Some(doc.schober.framing_index),
                        ..common.clone()
                    })
                    .map_err(|e| CliError::Input(format!("schober: {}", e)))?;
                    let s = HypersurfaceSchober::new(n, k).expect("validated framing");
                    let samples = doc
                        .samples
                        .iter()
                        .enumerate()
                        .map(|(i, j)| io::sample_from_json(j, n - 1, &format!(".samples[{}]", i)))
                        .collect::<Result<Vec<_>, _>>();
                    match samples {
                        Ok(v) => (s, v),
                        Err(e) => return Ok((io_err(e)?, common.out.clone())),
                    }
                }
                None => {
                    let (n, k) = framing(common)?;
                    let s = HypersurfaceSchober::new(n, k).expect("validated framing");
                    let v = s.default_samples();
                    (s, v)
                }
            };
            Ok((
                report_outcome(schober.check_sf_axioms(&samples), common.json),
                common.out.clone(),
            ))
        }
        Command::Mutate { common, input } => {
            let (n, k) = framing(common)?;
            let cyl = cylinder(n, k);
            let loaded = io::read_file(input)
                .and_then(|t| io::from_json::<io::QuintupleJson>(&t))
                .and_then(|j| io::quintuple_from_json(&j, &cyl));
            let q = match loaded {
                Ok(q) => q,
                Err(e) => return Ok((io_err(e)?, None)),
            };
            let mut report = Report::new();
            let result = match &q {
                AnyQuintuple::Ordinary(q) => {
                    prefix(&mut report, "input", cyl.validate_quintuple(q));
                    if !report.passed() {
                        return Ok((report_outcome(report, common.json), None));
                    }
                    let mq = cyl.mutate(q).map_err(|e| CliError::Input(e.to_string()))?;
                    prefix(&mut report, "output", cyl.validate_mutated(&mq));
                    AnyQuintuple::Mutated(mq)
                }
                AnyQuintuple::Mutated(mq) => {
                    prefix(&mut report, "input", cyl.validate_mutated(mq));
                    if !report.passed() {
                        return Ok((report_outcome(report, common.json), None));
                    }
                    let q = cyl.unmutate(mq).map_err(|e| CliError::Input(e.to_string()))?;
                    prefix(&mut report, "output", cyl.validate_quintuple(&q));
                    AnyQuintuple::Ordinary(q)
                }
            };
            let result = io::quintuple_to_json(&result);
            let artifact = io::to_json(&result);
            let text = if common.json {
                io::to_json(&MutateJson {
                    report: ReportJson::from(&report),
                    result,
                })
            } else {
                report.to_string()
            };
            Ok((
                Outcome {
                    text,
                    pass: report.passed(),
                    artifact: Some(artifact),
                },
                common.out.clone(),
            ))
        }
        Command::Compare { common, trials, seed } => {
            let (n, k) = framing(common)?;
            if *trials == 0 {
                return Err(CliError::Usage("--trials must be at least 1".into()));
            }
            let r = moduli::compare_suite(n, k, *trials, *seed).map_err(moduli_input)?;
            let (passed, total) = moduli::tally(&r);
            let pass = passed == total;
            let text = if common.json {
                io::to_json(&CompareJson {
                    n,
                    k,
                    trials: *trials,
                    seed: *seed,
                    passed,
                    total,
                    report: ReportJson::from(&r),
                })
            } else {
                let mut s = String::new();
                for l in r.failures() {
                    s.push_str(&format!("{}\n", l));
                }
                s.push_str(&format!(
                    "{}/{} {}\n",
                    passed,
                    total,
                    if pass { "PASS" } else { "FAIL" }
                ));
                s
            };
            Ok((
                Outcome {
                    text,
                    pass,
                    artifact: None,
                },
                common.out.clone(),
            ))
        }
    }
}

fn prefix(into: &mut Report, tag: &str, r: Report) {
    for l in r.lines {
        into.check(format!("{}:{}", tag, l.name), l.pass, l.witness);
    }
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e);
                    EXIT_PASS
                }
                _ => {
                    let _ = write!(err, "{}", e);
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(&cli.command).and_then(|(o, path)| {
        if let Some(p) = path {
            let body = o.artifact.as_deref().unwrap_or(&o.text);
            std::fs::write(&p, body).map_err(|e| CliError::Write(format!("{}: {}", p, e)))?;
        }
        Ok(o)
    }) {
        Ok(o) => {
            let _ = write!(out, "{}", o.text);
            if o.pass {
                EXIT_PASS
            } else {
                EXIT_CHECK
            }
        }
        Err(e) => {
            let _ = writeln!(err, "{}", e);
            e.exit_code()
        }
    }
}
