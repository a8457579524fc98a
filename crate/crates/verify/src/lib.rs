//! Machine checks of the exchange and star characterizations, run against
//! built bundles and small abstract fixtures.
//!
//! Every check yields a [`CheckReport`]. Directions of a biconditional whose
//! witnesses are constructed inside the truncation are asserted exactly
//! (`verified`); universal directions are bounded scans. A pair satisfying a
//! containment in the truncation but matching no listed configuration is a
//! *suspect*: the checker looks for an annulus of slightly larger weight that
//! breaks the containment, and flags (does not fail) suspects it cannot
//! break.

pub mod annlink;
pub mod annular;
pub mod boolean;
pub mod context;
pub mod fixtures;
pub mod laws;
pub mod report;
pub mod stars;
pub mod structure;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use dcx_surface::{BundleKind, ComplexBundle, SurfaceError};
use rayon::prelude::*;
use thiserror::Error;

pub use report::{CheckReport, Report, Status, Witness, REPORT_SCHEMA_VERSION};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("suite {suite} does not apply to a {kind} bundle")]
    WrongKind { suite: Suite, kind: BundleKind },
    #[error("no check named {0:?} applies to this bundle")]
    UnknownCheck(String),
}

impl From<dcx_core::ComplexError> for VerifyError {
    fn from(e: dcx_core::ComplexError) -> Self {
        VerifyError::Surface(e.into())
    }
}

pub type Result<T, E = VerifyError> = std::result::Result<T, E>;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    /// random subsets, words, and symmetry samples per sampled check
    pub samples: usize,
    /// weight above the bundle's bound allowed for breaking witnesses
    pub extra: u32,
    /// record wall-clock time per check (makes reports non-reproducible)
    pub timing: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 0, samples: 200, extra: 4, timing: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    All,
    Annular,
    AnnLink,
    Star,
    Boolean,
    Fibers,
    Nesting,
    Slopes,
}

impl Suite {
    pub const NAMES: [&'static str; 8] = ["all", "annular", "annlink", "star", "boolean", "fibers", "nesting", "slopes"];

    const SINGLE: [Suite; 7] =
        [Suite::Annular, Suite::AnnLink, Suite::Star, Suite::Boolean, Suite::Fibers, Suite::Nesting, Suite::Slopes];

    fn accepts(self, kind: BundleKind) -> bool {
        match self {
            Suite::All => true,
            Suite::Annular | Suite::Nesting => kind != BundleKind::C,
            Suite::AnnLink | Suite::Star | Suite::Boolean | Suite::Fibers => kind == BundleKind::D,
            Suite::Slopes => kind == BundleKind::C,
        }
    }

    /// The single suites a run covers: `all` expands to every suite that
    /// applies to the bundle's kind.
    pub fn expand(self, kind: BundleKind) -> Result<Vec<Suite>> {
        match self {
            Suite::All => Ok(Self::SINGLE.iter().copied().filter(|s| s.accepts(kind)).collect()),
            s if s.accepts(kind) => Ok(vec![s]),
            s => Err(VerifyError::WrongKind { suite: s, kind }),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = [Suite::All].iter().chain(&Self::SINGLE).position(|s| s == self).unwrap();
        f.write_str(Self::NAMES[i])
    }
}

impl FromStr for Suite {
    type Err = VerifyError;
    fn from_str(s: &str) -> Result<Self> {
        let i = Self::NAMES.iter().position(|n| *n == s).ok_or_else(|| VerifyError::UnknownSuite(s.into()))?;
        Ok(if i == 0 { Suite::All } else { Self::SINGLE[i - 1] })
    }
}

fn run_single(bundle: &ComplexBundle, suite: Suite, opts: &VerifyOptions) -> Result<Vec<CheckReport>> {
    let start = opts.timing.then(Instant::now);
    let reports = match suite {
        Suite::Annular => {
            if bundle.kind() == BundleKind::D {
                annular::check_annular_characterization(&bundle.d2_bundle()?, opts)?
            } else {
                annular::check_annular_characterization(bundle, opts)?
            }
        }
        Suite::AnnLink => annlink::check_ann_link_suite(bundle, opts)?,
        Suite::Star => stars::check_star_suite(bundle, opts)?,
        Suite::Boolean => boolean::check_boolean_and_kernel(bundle, opts)?,
        Suite::Fibers => vec![structure::check_fibers(bundle)?],
        Suite::Nesting => vec![structure::check_nesting(bundle, opts)?],
        Suite::Slopes => vec![structure::check_slopes(bundle)?],
        Suite::All => unreachable!("expanded"),
    };
    Ok(reports.into_iter().map(|r| r.timed(start)).collect())
}

/// Runs a suite on a bundle. Suites run in parallel; the report lists
/// checks in suite order regardless of scheduling.
pub fn run(bundle: &ComplexBundle, suite: Suite, opts: &VerifyOptions) -> Result<Report> {
    let suites = suite.expand(bundle.kind())?;
    let parts: Vec<Vec<CheckReport>> =
        suites.par_iter().map(|&s| run_single(bundle, s, opts)).collect::<Result<_>>()?;
    Ok(Report::for_bundle(bundle, opts.seed, parts.into_iter().flatten().collect()))
}

/// Re-runs the check that produced `witness` and reports whether the same
/// witness (vertex ids and labels) reappears among its counterexamples or
/// flags. Fails if the witness labels do not match the bundle.
pub fn replay(bundle: &ComplexBundle, check_id: &str, witness: &Witness, opts: &VerifyOptions) -> Result<bool> {
    for (i, &v) in witness.vertices.iter().enumerate() {
        if v as usize >= bundle.len() {
            return Err(dcx_core::ComplexError::UnknownVertex(v).into());
        }
        if let Some(label) = witness.labels.get(i) {
            if bundle.complex().label(dcx_core::VertexId(v)) != label {
                return Err(SurfaceError::Malformed(format!("witness label {label} does not match vertex {v}")).into());
            }
        }
    }
    let report = run(bundle, Suite::All, opts)?;
    let check = report
        .checks
        .iter()
        .find(|c| c.id == check_id)
        .ok_or_else(|| VerifyError::UnknownCheck(check_id.into()))?;
    Ok(check.witnesses.iter().chain(&check.flagged).any(|w| w.vertices == witness.vertices))
}
