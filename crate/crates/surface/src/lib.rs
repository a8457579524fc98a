//! Surfaces in normal coordinates and the bounded complexes built on them.

pub mod bundle;
pub mod curve;
pub mod cut;
pub mod domain;
pub mod error;
pub mod normal;
pub mod surface;
pub mod symmetry;
pub mod triangulation;

pub use bundle::{BundleJson, BundleKind, ComplexBundle, Projection, VertexClass};
pub use curve::{CurveClass, CurveStatus, MultiCurve};
pub use cut::{Cut, Piece};
pub use domain::{Codomain, Codomains, DomainClass, DomainKind, Located, Selection};
pub use error::{Result, SurfaceError};
pub use surface::Surface;
pub use symmetry::{symmetries, Symmetry};
pub use triangulation::{Side, SurfaceSig, Triangulation, TriangulationJson};
