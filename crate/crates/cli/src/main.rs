//! `dcx`: build truncated complexes of curves and domains, query them, and run
//! the verification suites.
//!
//! Exit codes: 0 ok, 1 counterexample found, 2 unsupported surface or a suite
//! that does not apply to the bundle kind, 3 I/O error or corrupt input,
//! 4 unknown vertex.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dcx_core::{is_exchangeable, ComplexError, VertexId};
use dcx_surface::{BundleKind, ComplexBundle, Surface, SurfaceError, SurfaceSig};
use dcx_verify::{Report, Suite, VerifyError, VerifyOptions};
use serde_json::json;
use thiserror::Error;

#[derive(Parser)]
#[command(name = "dcx", version, about = "Truncated curve and domain complexes of small surfaces")]
struct Cli {
    /// worker threads (default: all cores)
    #[arg(long, global = true, env = "DCX_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a bundle and write it as JSON.
    Build {
        /// genus and hole count, e.g. 0,5
        #[arg(long, value_parser = parse_sig)]
        surface: SurfaceSig,
        #[arg(long)]
        weight: u32,
        /// C, D or D2
        #[arg(long, value_parser = parse_kind)]
        kind: BundleKind,
        /// output file (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Query a bundle; prints JSON.
    Query {
        bundle: PathBuf,
        #[command(subcommand)]
        op: Query,
    },
    /// Run a verification suite and write the report.
    Verify {
        bundle: PathBuf,
        /// one of all, annular, annlink, star, boolean, fibers, nesting, slopes
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = VerifyOptions::default().samples)]
        samples: usize,
        /// extra weight allowed for annuli that break suspect containments
        #[arg(long, default_value_t = VerifyOptions::default().extra)]
        extra: u32,
        /// record per-check wall-clock time (output is then not reproducible)
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-run the check behind each witness of a report and confirm it reappears.
    Replay {
        bundle: PathBuf,
        report: PathBuf,
        /// check id, e.g. equal_stars.only_if
        check: String,
    },
    /// Write the 1-skeleton in Graphviz format.
    ExportDot {
        bundle: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Query {
    /// closed star of a vertex (id or label)
    Star { vertex: String },
    /// link of a vertex
    Link { vertex: String },
    /// whether two vertices are exchangeable
    Exchangeable { x: String, y: String },
    /// projection fibers of a D bundle
    Fibers,
}

fn parse_sig(s: &str) -> std::result::Result<SurfaceSig, String> {
    s.parse()
}

fn parse_kind(s: &str) -> std::result::Result<BundleKind, String> {
    s.parse()
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Corrupt(String),
    #[error("no vertex with label {0:?}")]
    UnknownLabel(String),
}

impl From<SurfaceError> for CliError {
    fn from(e: SurfaceError) -> Self {
        CliError::Verify(e.into())
    }
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        CliError::Verify(e.into())
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Verify(VerifyError::WrongKind { .. }) => 2,
            CliError::Verify(VerifyError::Surface(e)) => match e {
                SurfaceError::Unsupported(..) | SurfaceError::KindMismatch { .. } => 2,
                SurfaceError::Complex(ComplexError::UnknownVertex(_)) => 4,
                _ => 3,
            },
            CliError::UnknownLabel(_) => 4,
            _ => 3,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

fn load(path: &Path) -> Result<ComplexBundle> {
    ComplexBundle::from_json_str(&read(path)?).map_err(|e| match e {
        SurfaceError::Malformed(m) => CliError::Corrupt(format!("{}: {m}", path.display())),
        e => e.into(),
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.into(), source }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.write_all(b"\n"))
                .map_err(|source| CliError::Io { path: "<stdout>".into(), source })
        }
    }
}

/// A vertex given by numeric id or by label.
fn vertex(b: &ComplexBundle, s: &str) -> Result<VertexId> {
    let k = b.complex();
    if let Some(v) = k.find(s) {
        return Ok(v);
    }
    match s.parse::<u32>() {
        Ok(i) if (i as usize) < k.len() => Ok(VertexId(i)),
        Ok(i) => Err(ComplexError::UnknownVertex(i).into()),
        Err(_) => Err(CliError::UnknownLabel(s.into())),
    }
}

fn ids(b: &ComplexBundle, vs: &[VertexId]) -> serde_json::Value {
    vs.iter().map(|&v| json!({"id": v.0, "label": b.complex().label(v)})).collect()
}

fn query(b: &ComplexBundle, op: &Query) -> Result<serde_json::Value> {
    let k = b.complex();
    Ok(match op {
        Query::Star { vertex: v } => ids(b, &k.star0(vertex(b, v)?)?),
        Query::Link { vertex: v } => ids(b, &k.link0(vertex(b, v)?)?),
        Query::Exchangeable { x, y } => {
            let (x, y) = (vertex(b, x)?, vertex(b, y)?);
            json!(x != y && is_exchangeable(k, x, y)?)
        }
        Query::Fibers => {
            let p = b.projection()?;
            b.fibers()?
                .iter()
                .enumerate()
                .map(|(i, f)| json!({"d2_vertex": p.d2_vertices[i].0, "fiber": ids(b, f)}))
                .collect()
        }
    })
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Build { surface, weight, kind, out } => {
            let s = Surface::new(surface)?;
            let b = ComplexBundle::build(&s, kind, weight)?;
            emit(out.as_deref(), &b.to_json_string())?;
            eprintln!("{surface} {kind} W={weight}: {} vertices, {} edges", b.len(), b.complex().edge_count());
        }
        Cmd::Query { bundle, op } => {
            let b = load(&bundle)?;
            emit(None, &query(&b, &op)?.to_string())?;
        }
        Cmd::Verify { bundle, suite, seed, samples, extra, timing, out } => {
            let b = load(&bundle)?;
            let opts = VerifyOptions { seed, samples, extra, timing };
            let report = dcx_verify::run(&b, suite, &opts)?;
            emit(out.as_deref(), &report.to_json_string())?;
            for c in &report.checks {
                eprintln!("{:<44} {}", c.id, json!(c.status).as_str().unwrap_or_default());
            }
            if report.has_counterexample() {
                return Ok(1);
            }
        }
        Cmd::Replay { bundle, report, check } => {
            let b = load(&bundle)?;
            let r: Report = serde_json::from_str(&read(&report)?).map_err(|e| CliError::Corrupt(e.to_string()))?;
            let opts = VerifyOptions { seed: r.seed, ..Default::default() };
            let c = r
                .checks
                .iter()
                .find(|c| c.id == check)
                .ok_or_else(|| VerifyError::UnknownCheck(check.clone()))?;
            let mut all = true;
            for w in c.witnesses.iter().chain(&c.flagged) {
                let ok = dcx_verify::replay(&b, &check, w, &opts)?;
                eprintln!("{:?}: {}", w.vertices, if ok { "reproduced" } else { "not reproduced" });
                all &= ok;
            }
            if !all {
                return Ok(1);
            }
        }
        Cmd::ExportDot { bundle, out } => {
            let b = load(&bundle)?;
            let name = format!("{} {} W={}", b.surface(), b.kind(), b.weight_bound());
            emit(out.as_deref(), b.complex().to_dot(&name).trim_end())?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("dcx: {e}");
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("dcx: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
