use dcx_core::ComplexError;
use thiserror::Error;

use crate::triangulation::SurfaceSig;

pub type Result<T, E = SurfaceError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("unsupported surface {0}: {1}")]
    Unsupported(SurfaceSig, &'static str),
    #[error("weight vector has {got} entries, triangulation has {expected} edges")]
    WrongLength { expected: usize, got: usize },
    #[error("inadmissible weights: {0}")]
    Inadmissible(String),
    #[error("weights do not describe a single connected curve")]
    Disconnected,
    #[error("curve is peripheral around hole {0}")]
    NotEssential(u32),
    #[error("invalid system of curves: {0}")]
    InvalidSystem(String),
    #[error("the selection is the whole surface")]
    WholeSurface,
    #[error("selection index {0} is out of range")]
    BadSelection(usize),
    #[error("curve is not a member of the given collection")]
    NotInCollection,
    #[error("domain could not be located in the refined cut: {0}")]
    Locate(String),
    #[error("bundle of kind {found} where {expected} was required")]
    KindMismatch { expected: String, found: String },
    #[error("truncation is not fiber-closed: {0}")]
    NotFiberClosed(String),
    #[error("map does not preserve the biperipheral edges or the projection fibers")]
    FiberViolation,
    #[error("surfaces differ: {0} vs {1}")]
    SurfaceMismatch(SurfaceSig, SurfaceSig),
    #[error("malformed bundle: {0}")]
    Malformed(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}
