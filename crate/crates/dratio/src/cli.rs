//! The `dratio` command line.
//!
//! Exit status: 0 when every check passes, 1 on any violated check or
//! failed solve, 2 on unusable input.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::anyhow;
use clap::{Parser, Subcommand, ValueEnum};
use dratio_core::john::{john_inscribed, JohnResult, DEFAULT_EPS};
use dratio_core::ratio::{chain_check, ratio, ChainReport, RatioReport};
use dratio_core::sphere::BaumReport;
use dratio_core::trial::SweepSpec;
use dratio_core::{witness_remark2, BodyKind, Error as CoreError, Instance, SymmetricBody};
use serde::Serialize;

use crate::baum::baum_sweep;
use crate::io::{self, InstanceFile};
use crate::search::{search_max_ratio, SearchConfig};
use crate::sweep::verify_sweep;

#[derive(Debug, Parser)]
#[command(name = "dratio", version, about = "Disagreement-coefficient ratio of symmetric convex bodies")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Polytope,
    Ellipsoid,
}

impl From<KindArg> for BodyKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Polytope => BodyKind::Polytope,
            KindArg::Ellipsoid => BodyKind::Ellipsoid,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ratio report for an instance file, with the chain check for polytopes.
    Ratio {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
        #[arg(long, default_value_t = 1000)]
        n_dirs: usize,
        #[arg(long, env = "DR_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// John ellipsoid of a V-polytope instance and its certificates.
    John {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
        #[arg(long, default_value_t = 10_000)]
        n_dirs: usize,
        #[arg(long, env = "DR_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Randomized sweep over every inequality.
    Verify {
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Inclusive dimension range, `LO..HI` or a single dimension.
        #[arg(long, default_value = "2..8", value_parser = parse_dims)]
        dims: (usize, usize),
        #[arg(long, env = "DR_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
        #[arg(long, default_value_t = 12)]
        max_vectors: usize,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [KindArg::Polytope, KindArg::Ellipsoid])]
        kinds: Vec<KindArg>,
        #[arg(long, default_value_t = 200)]
        n_dirs: usize,
    },
    /// Cross-polytope witness instance (JSON) or its ratio report (text).
    Witness {
        #[arg(long)]
        m: usize,
    },
    /// Hill-climbing search for large ratios.
    Search {
        #[arg(long)]
        m: usize,
        /// Generators per instance (default `m`).
        #[arg(long)]
        k: Option<usize>,
        /// Vectors per instance (default `m`).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 50)]
        restarts: u64,
        #[arg(long, default_value_t = 200)]
        steps: usize,
        #[arg(long, default_value_t = 0.05)]
        step_size: f64,
        #[arg(long, env = "DR_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Monte-Carlo check of the sphere expectation bound for m = 2..=m_max.
    Baum {
        #[arg(long, default_value_t = 32)]
        m_max: usize,
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
        #[arg(long, env = "DR_SEED", default_value_t = 0)]
        seed: u64,
    },
}

fn parse_dims(s: &str) -> Result<(usize, usize), String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let d = parse(s)?;
            (d, d)
        }
    };
    if lo < 2 || hi < lo {
        return Err(format!("dimension range {s:?} must satisfy 2 ≤ lo ≤ hi"));
    }
    Ok((lo, hi))
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// Unusable input; exit status 2.
    Input(anyhow::Error),
    /// A check failed or a solve broke down; exit status 1.
    Check(anyhow::Error),
}

impl Failure {
    fn from_core(e: CoreError) -> Self {
        match e {
            CoreError::BoundViolated { .. }
            | CoreError::NotConverged { .. }
            | CoreError::Indeterminate(_) => Self::Check(e.into()),
            _ => Self::Input(e.into()),
        }
    }
}

/// Rendered output and whether every check passed.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub pass: bool,
}

#[derive(Serialize)]
struct RatioDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    #[serde(flatten)]
    report: RatioReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    chain: Option<ChainReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    john_outer_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    john_inner_ok: Option<bool>,
}

#[derive(Serialize)]
struct JohnDoc {
    dim: usize,
    eps: f64,
    outer_ok: bool,
    inner_ok: bool,
    n_dirs: usize,
    iterations: usize,
    outer_scale: f64,
    inner_shape: Vec<Vec<f64>>,
    factor: Vec<Vec<f64>>,
    weights: Vec<f64>,
}

impl JohnDoc {
    fn new(j: &JohnResult) -> Self {
        let rows = |m: &dratio_core::linalg::Matrix| {
            (0..m.nrows())
                .map(|i| m.row(i).iter().copied().collect())
                .collect()
        };
        Self {
            dim: j.dim,
            eps: j.eps,
            outer_ok: j.outer_ok,
            inner_ok: j.inner_ok,
            n_dirs: j.n_dirs,
            iterations: j.iterations,
            outer_scale: j.outer_scale(),
            inner_shape: rows(j.inner.shape()),
            factor: rows(&j.factor),
            weights: j.weights.clone(),
        }
    }
}

#[derive(Serialize)]
struct SearchDoc {
    m: usize,
    k: usize,
    n: usize,
    restarts: u64,
    steps: usize,
    step_size: f64,
    seed: u64,
    restart: u64,
    climb_seed: u64,
    ratio_over_m: f64,
    exceeds_m: bool,
    report: RatioReport,
    instance: InstanceFile,
}

#[derive(Serialize)]
struct BaumDoc {
    seed: u64,
    samples: usize,
    all_pass: bool,
    rows: Vec<BaumReport>,
}

fn render<T: Serialize>(format: Format, doc: &T) -> Result<String, Failure> {
    match format {
        Format::Json => io::to_canonical_string(doc),
        Format::Text => io::to_text(doc),
    }
    .map_err(Failure::Input)
}

fn load(file: &Path) -> Result<Instance, Failure> {
    io::read_instance(file).map_err(Failure::Input)
}

fn ratio_doc(inst: &Instance, eps: f64, n_dirs: usize, seed: u64) -> Result<RatioDoc, Failure> {
    let report = ratio(&inst.vectors, &inst.body).map_err(Failure::from_core)?;
    let (chain, john) = match &inst.body {
        SymmetricBody::Polytope(_) => {
            let john = john_inscribed(&inst.body, eps, n_dirs, seed).map_err(Failure::from_core)?;
            let chain = chain_check(&inst.vectors, &inst.body, &john).map_err(Failure::from_core)?;
            (Some(chain), Some(john))
        }
        SymmetricBody::Ellipsoid(_) => (None, None),
    };
    Ok(RatioDoc {
        label: inst.label.clone(),
        report,
        chain,
        john_outer_ok: john.as_ref().map(|j| j.outer_ok),
        john_inner_ok: john.as_ref().map(|j| j.inner_ok),
    })
}

impl RatioDoc {
    fn pass(&self) -> bool {
        self.report.within_bound()
            && self.chain.is_none_or(|c| c.passed())
            && self.john_outer_ok.unwrap_or(true)
            && self.john_inner_ok.unwrap_or(true)
    }
}

/// Executes one parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let format = cli.format;
    match &cli.command {
        Command::Ratio {
            file,
            eps,
            n_dirs,
            seed,
        } => {
            let inst = load(file)?;
            let doc = ratio_doc(&inst, *eps, *n_dirs, *seed)?;
            Ok(Outcome {
                pass: doc.pass(),
                output: render(format, &doc)?,
            })
        }
        Command::John {
            file,
            eps,
            n_dirs,
            seed,
        } => {
            let inst = load(file)?;
            let john =
                john_inscribed(&inst.body, *eps, *n_dirs, *seed).map_err(Failure::from_core)?;
            Ok(Outcome {
                pass: john.outer_ok && john.inner_ok,
                output: render(format, &JohnDoc::new(&john))?,
            })
        }
        Command::Verify {
            trials,
            dims,
            seed,
            eps,
            max_vectors,
            kinds,
            n_dirs,
        } => {
            if *trials == 0 || *max_vectors == 0 || kinds.is_empty() || !(*eps > 0.0) {
                return Err(Failure::Input(anyhow!(
                    "trials, max-vectors, kinds and eps must be positive"
                )));
            }
            let spec = SweepSpec {
                min_dim: dims.0,
                max_dim: dims.1,
                kinds: kinds.iter().map(|&k| k.into()).collect(),
                max_vectors: *max_vectors,
                n_dirs: *n_dirs,
                eps: *eps,
            };
            let summary = verify_sweep(*trials, &spec, *seed);
            Ok(Outcome {
                pass: summary.passed(),
                output: render(format, &summary)?,
            })
        }
        Command::Witness { m } => {
            let inst = witness_remark2(*m).map_err(Failure::from_core)?;
            let report = ratio(&inst.vectors, &inst.body).map_err(Failure::from_core)?;
            let pass = (report.ratio - *m as f64).abs() <= 1e-9;
            let output = match format {
                Format::Json => io::serialize_instance(&inst).map_err(Failure::Input)?,
                Format::Text => io::to_text(&report).map_err(Failure::Input)?,
            };
            Ok(Outcome { output, pass })
        }
        Command::Search {
            m,
            k,
            n,
            restarts,
            steps,
            step_size,
            seed,
        } => {
            let cfg = SearchConfig {
                m: *m,
                k: k.unwrap_or(*m),
                n: n.unwrap_or(*m),
                restarts: *restarts,
                steps: *steps,
                step_size: *step_size,
                seed: *seed,
            };
            let out = search_max_ratio(&cfg).map_err(Failure::from_core)?;
            if out.exceeds_m() {
                eprintln!(
                    "note: ratio {} exceeds m = {} (restart {}, climb seed {})",
                    out.report.ratio, cfg.m, out.restart, out.climb_seed
                );
            }
            let doc = SearchDoc {
                m: cfg.m,
                k: cfg.k,
                n: cfg.n,
                restarts: cfg.restarts,
                steps: cfg.steps,
                step_size: cfg.step_size,
                seed: cfg.seed,
                restart: out.restart,
                climb_seed: out.climb_seed,
                ratio_over_m: out.ratio_over_m(),
                exceeds_m: out.exceeds_m(),
                report: out.report,
                instance: InstanceFile::from_instance(&out.best),
            };
            Ok(Outcome {
                pass: out.report.within_bound(),
                output: render(format, &doc)?,
            })
        }
        Command::Baum {
            m_max,
            samples,
            seed,
        } => {
            let rows = baum_sweep(*m_max, *samples, *seed).map_err(Failure::from_core)?;
            let all_pass = rows.iter().all(|r| r.pass);
            let doc = BaumDoc {
                seed: *seed,
                samples: *samples,
                all_pass,
                rows,
            };
            Ok(Outcome {
                pass: all_pass,
                output: render(format, &doc)?,
            })
        }
    }
}

/// Parses `args`, runs the command, writes its output and maps the result
/// to an exit status.
pub fn main_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &outcome.output)
                    .map_err(|e| anyhow!("writing {}: {e}", path.display())),
                None => {
                    print!("{}", outcome.output);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if outcome.pass {
                ExitCode::SUCCESS
            } else {
                eprintln!("check failed");
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Check(e)) => {
            eprintln!("check failed: {e:#}");
            ExitCode::from(1)
        }
    }
}
