//! Weight-bounded truncations of C(S), D(S) and D²(S).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use dcx_core::{ExchangePair, ExchangeSet, FlagComplex, VertexId, VertexMap};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::CurveClass;
use crate::domain::DomainClass;
use crate::error::{Result, SurfaceError};
use crate::surface::Surface;
use crate::triangulation::SurfaceSig;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BundleKind {
    C,
    D,
    D2,
}

impl fmt::Display for BundleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BundleKind::C => "C",
            BundleKind::D => "D",
            BundleKind::D2 => "D2",
        })
    }
}

impl std::str::FromStr for BundleKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "C" | "c" => Ok(BundleKind::C),
            "D" | "d" => Ok(BundleKind::D),
            "D2" | "d2" => Ok(BundleKind::D2),
            _ => Err(format!("unknown bundle kind {s:?} (expected C, D or D2)")),
        }
    }
}

/// What a vertex stands for.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexClass {
    Curve(CurveClass),
    Domain(DomainClass),
}

impl VertexClass {
    pub fn as_domain(&self) -> Option<&DomainClass> {
        match self {
            VertexClass::Domain(d) => Some(d),
            VertexClass::Curve(_) => None,
        }
    }

    pub fn as_curve(&self) -> Option<&CurveClass> {
        match self {
            VertexClass::Curve(c) => Some(c),
            VertexClass::Domain(_) => None,
        }
    }
}

impl fmt::Display for VertexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexClass::Curve(c) => c.fmt(f),
            VertexClass::Domain(d) => d.fmt(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleVertex {
    pub id: u32,
    pub label: String,
    pub class: VertexClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BiperipheralJson {
    /// `[pants, annulus]` vertex pairs
    pub pairs: Vec<[u32; 2]>,
    pub vertex_disjoint: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleJson {
    pub schema_version: u32,
    pub kind: BundleKind,
    pub surface: [u32; 2],
    #[serde(rename = "W")]
    pub weight_bound: u32,
    pub vertices: Vec<BundleVertex>,
    pub edges: Vec<[u32; 2]>,
    pub biperipheral_edges: Option<BiperipheralJson>,
    /// D vertex ↦ D² vertex
    pub projection: Option<Vec<u32>>,
    /// D vertices making up D², in D² order
    pub d2_vertices: Option<Vec<u32>>,
}

/// D-specific structure: biperipheral edges and the projection to D².
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    /// `(pants, annulus)` pairs, sorted by pants
    pub biperipheral: Vec<(VertexId, VertexId)>,
    /// D² vertex ↦ D vertex
    pub d2_vertices: Vec<VertexId>,
    /// D vertex ↦ D² vertex
    pub pi: Vec<u32>,
    pub d2: FlagComplex,
}

/// A built truncation with labels, and for kind D its projection data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBundle {
    kind: BundleKind,
    surface: SurfaceSig,
    weight_bound: u32,
    complex: FlagComplex,
    classes: Vec<VertexClass>,
    projection: Option<Projection>,
}

fn edges_by<F>(n: usize, f: F) -> Result<Vec<(usize, usize)>>
where
    F: Fn(usize, usize) -> Result<bool> + Sync,
{
    let rows: Vec<Vec<(usize, usize)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut row = Vec::new();
            for j in i + 1..n {
                if f(i, j)? {
                    row.push((i, j));
                }
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

impl ComplexBundle {
    pub fn build(surface: &Surface, kind: BundleKind, weight_bound: u32) -> Result<Self> {
        match kind {
            BundleKind::C => Self::build_c(surface, weight_bound),
            BundleKind::D => Self::build_d(surface, weight_bound),
            BundleKind::D2 => Ok(Self::build_d(surface, weight_bound)?.d2_bundle()?),
        }
    }

    fn build_c(surface: &Surface, weight_bound: u32) -> Result<Self> {
        let curves = surface.enumerate_curves(weight_bound);
        let edges = edges_by(curves.len(), |i, j| surface.disjoint(&curves[i], &curves[j]))?;
        let classes: Vec<VertexClass> = curves.into_iter().map(VertexClass::Curve).collect();
        Self::assemble(surface.sig(), BundleKind::C, weight_bound, classes, edges)
    }

    fn build_d(surface: &Surface, weight_bound: u32) -> Result<Self> {
        let curves = surface.enumerate_curves(weight_bound);
        let domains = surface.domains_over(&curves)?;
        // boundary disjointness from a curve table first
        let cidx: HashMap<&CurveClass, usize> = curves.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let cdis: Vec<Vec<bool>> = (0..curves.len())
            .into_par_iter()
            .map(|i| (0..curves.len()).map(|j| surface.disjoint(&curves[i], &curves[j]).unwrap_or(false)).collect())
            .collect();
        let bidx: Vec<Vec<usize>> = domains.iter().map(|d| d.boundary().iter().map(|c| cidx[c]).collect()).collect();
        let edges = edges_by(domains.len(), |i, j| {
            if !bidx[i].iter().all(|&a| bidx[j].iter().all(|&b| cdis[a][b])) {
                return Ok(false);
            }
            surface.domains_disjoint(&domains[i], &domains[j])
        })?;
        let classes: Vec<VertexClass> = domains.into_iter().map(VertexClass::Domain).collect();
        let mut b = Self::assemble(surface.sig(), BundleKind::D, weight_bound, classes, edges)?;
        b.projection = Some(b.compute_projection()?);
        Ok(b)
    }

    fn assemble(
        surface: SurfaceSig,
        kind: BundleKind,
        weight_bound: u32,
        classes: Vec<VertexClass>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let labels = classes.iter().map(|c| c.to_string()).collect();
        let complex = FlagComplex::from_indexed(labels, edges)?;
        Ok(ComplexBundle { kind, surface, weight_bound, complex, classes, projection: None })
    }

    fn compute_projection(&self) -> Result<Projection> {
        let mut biperipheral = Vec::new();
        let mut d2_vertices = Vec::new();
        let mut d2_index = vec![u32::MAX; self.len()];
        for (i, c) in self.classes.iter().enumerate() {
            let d = c.as_domain().ok_or_else(|| SurfaceError::Malformed("D bundle with curve labels".into()))?;
            if !d.is_biperipheral_pants() {
                d2_index[i] = d2_vertices.len() as u32;
                d2_vertices.push(VertexId(i as u32));
            }
        }
        let mut pi = d2_index.clone();
        for (i, c) in self.classes.iter().enumerate() {
            let d = c.as_domain().unwrap();
            if d.is_biperipheral_pants() {
                let core = d.boundary().remove(0);
                let a = self
                    .index_of(&VertexClass::Domain(DomainClass::Annulus { core }))
                    .ok_or_else(|| SurfaceError::NotFiberClosed(format!("{d} has no boundary annulus")))?;
                if !self.complex.adjacent(VertexId(i as u32), a) {
                    return Err(SurfaceError::NotFiberClosed(format!("{d} is not joined to its boundary annulus")));
                }
                biperipheral.push((VertexId(i as u32), a));
                pi[i] = d2_index[a.index()];
            }
        }
        let d2 = self.complex.induced(&d2_vertices)?;
        Ok(Projection { biperipheral, d2_vertices, pi, d2 })
    }

    /// The D² truncation induced by a D bundle.
    pub fn d2_bundle(&self) -> Result<Self> {
        let p = self.require_d()?;
        let classes = p.d2_vertices.iter().map(|v| self.classes[v.index()].clone()).collect();
        Ok(ComplexBundle {
            kind: BundleKind::D2,
            surface: self.surface,
            weight_bound: self.weight_bound,
            complex: p.d2.clone(),
            classes,
            projection: None,
        })
    }

    pub fn kind(&self) -> BundleKind {
        self.kind
    }

    pub fn surface(&self) -> SurfaceSig {
        self.surface
    }

    pub fn weight_bound(&self) -> u32 {
        self.weight_bound
    }

    pub fn complex(&self) -> &FlagComplex {
        &self.complex
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[VertexClass] {
        &self.classes
    }

    pub fn class(&self, v: VertexId) -> &VertexClass {
        &self.classes[v.index()]
    }

    pub fn domain(&self, v: VertexId) -> Option<&DomainClass> {
        self.classes[v.index()].as_domain()
    }

    /// Vertex carrying `c`; vertices are in sorted class order.
    pub fn index_of(&self, c: &VertexClass) -> Option<VertexId> {
        self.classes.binary_search(c).ok().map(|i| VertexId(i as u32))
    }

    pub fn require_kind(&self, kind: BundleKind) -> Result<()> {
        if self.kind != kind {
            return Err(SurfaceError::KindMismatch { expected: kind.to_string(), found: self.kind.to_string() });
        }
        Ok(())
    }

    fn require_d(&self) -> Result<&Projection> {
        self.require_kind(BundleKind::D)?;
        Ok(self.projection.as_ref().expect("D bundles carry their projection"))
    }

    pub fn projection(&self) -> Result<&Projection> {
        self.require_d()
    }

    /// The biperipheral edges as `(pants, annulus)` pairs.
    pub fn biperipheral_pairs(&self) -> Result<&[(VertexId, VertexId)]> {
        Ok(&self.require_d()?.biperipheral)
    }

    pub fn biperipheral_vertex_disjoint(&self) -> Result<bool> {
        let pairs = self.biperipheral_pairs()?;
        let mut seen = std::collections::HashSet::new();
        Ok(pairs.iter().all(|&(a, b)| seen.insert(a) && seen.insert(b)))
    }

    /// The biperipheral edges as an exchange set; fails when two of them
    /// share a vertex, as on the four-holed sphere.
    pub fn biperipheral_edge_set(&self) -> Result<ExchangeSet> {
        let pairs = self
            .biperipheral_pairs()?
            .iter()
            .map(|&(a, b)| ExchangePair::new(a, b))
            .collect::<dcx_core::Result<Vec<_>>>()?;
        Ok(ExchangeSet::new(pairs)?)
    }

    /// π as a vertex-to-vertex map D → D².
    pub fn project(&self, v: VertexId) -> Result<VertexId> {
        let p = self.require_d()?;
        Ok(VertexId(p.pi[v.index()]))
    }

    /// Fibers of π, indexed by D² vertex: the D vertices over each.
    pub fn fibers(&self) -> Result<Vec<Vec<VertexId>>> {
        let p = self.require_d()?;
        let mut out = vec![Vec::new(); p.d2_vertices.len()];
        for (i, &t) in p.pi.iter().enumerate() {
            out[t as usize].push(VertexId(i as u32));
        }
        Ok(out)
    }

    /// The map φ_* on D² with φ_* ∘ π = π ∘ φ.
    pub fn push_forward(&self, phi: &VertexMap) -> Result<VertexMap> {
        let p = self.require_d()?;
        if !self.complex.is_automorphism(phi)? {
            return Err(SurfaceError::Complex(dcx_core::ComplexError::NotAutomorphism));
        }
        let pairs: std::collections::BTreeSet<(VertexId, VertexId)> = p.biperipheral.iter().copied().collect();
        for &(a, b) in &pairs {
            let (fa, fb) = (phi.image(a), phi.image(b));
            if !pairs.contains(&(fa, fb)) && !pairs.contains(&(fb, fa)) {
                return Err(SurfaceError::FiberViolation);
            }
        }
        let star: Vec<VertexId> = p
            .d2_vertices
            .iter()
            .map(|&u| VertexId(p.pi[phi.image(u).index()]))
            .collect();
        let star = VertexMap::new(star);
        for v in self.complex.vertices() {
            let lhs = star.image(VertexId(p.pi[v.index()]));
            let rhs = VertexId(p.pi[phi.image(v).index()]);
            if lhs != rhs {
                return Err(SurfaceError::FiberViolation);
            }
        }
        if !p.d2.is_automorphism(&star)? {
            return Err(SurfaceError::FiberViolation);
        }
        Ok(star)
    }

    /// Checks that every annulus over the essential boundary of a
    /// biperipheral pants present in the enumeration has its pants present,
    /// and conversely.
    pub fn check_fiber_closed(&self, surface: &Surface) -> Result<()> {
        let p = self.require_d()?;
        let partners: BTreeMap<VertexId, usize> = p.biperipheral.iter().map(|&(_, a)| (a, 0)).collect();
        for (i, c) in self.classes.iter().enumerate() {
            if let Some(DomainClass::Annulus { core }) = c.as_domain() {
                let cut = surface.cut(std::slice::from_ref(core))?;
                let bounds_bi = cut.pieces.iter().any(|q| q.genus == 0 && q.holes.len() == 2 && q.sides[0] == 1);
                if bounds_bi != partners.contains_key(&VertexId(i as u32)) {
                    return Err(SurfaceError::NotFiberClosed(format!("{c}")));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> BundleJson {
        let vertices = self
            .classes
            .iter()
            .enumerate()
            .map(|(i, c)| BundleVertex { id: i as u32, label: self.complex.label(VertexId(i as u32)).to_string(), class: c.clone() })
            .collect();
        let edges = self.complex.edges().into_iter().map(|(a, b)| [a.0, b.0]).collect();
        let (biperipheral_edges, projection, d2_vertices) = match &self.projection {
            Some(p) => {
                let disjoint = self.biperipheral_vertex_disjoint().unwrap_or(false);
                (
                    Some(BiperipheralJson {
                        pairs: p.biperipheral.iter().map(|&(a, b)| [a.0, b.0]).collect(),
                        vertex_disjoint: disjoint,
                    }),
                    Some(p.pi.clone()),
                    Some(p.d2_vertices.iter().map(|v| v.0).collect()),
                )
            }
            None => (None, None, None),
        };
        BundleJson {
            schema_version: SCHEMA_VERSION,
            kind: self.kind,
            surface: self.surface.as_array(),
            weight_bound: self.weight_bound,
            vertices,
            edges,
            biperipheral_edges,
            projection,
            d2_vertices,
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("bundle serializes")
    }

    /// Strict load: the structure derived from the labels must match what
    /// the file records.
    pub fn from_json(json: &BundleJson) -> Result<Self> {
        let bad = |m: String| SurfaceError::Malformed(m);
        if json.schema_version != SCHEMA_VERSION {
            return Err(bad(format!("unsupported schema version {}", json.schema_version)));
        }
        let sig = SurfaceSig::new(json.surface[0], json.surface[1]);
        sig.check_supported()?;
        let mut classes = Vec::with_capacity(json.vertices.len());
        for (i, v) in json.vertices.iter().enumerate() {
            if v.id as usize != i {
                return Err(bad(format!("vertex ids must be dense and ordered, found {} at {i}", v.id)));
            }
            let ok = match json.kind {
                BundleKind::C => v.class.as_curve().is_some(),
                _ => v.class.as_domain().is_some(),
            };
            if !ok {
                return Err(bad(format!("vertex {i} has the wrong class type for a {} bundle", json.kind)));
            }
            if v.label != v.class.to_string() {
                return Err(bad(format!("vertex {i} label does not match its class")));
            }
            if classes.last().is_some_and(|p| p >= &v.class) {
                return Err(bad("vertices are not in sorted class order".into()));
            }
            classes.push(v.class.clone());
        }
        let cj = dcx_core::ComplexJson {
            vertices: json.vertices.iter().map(|v| dcx_core::simplicial::JsonVertex { id: v.id, label: v.label.clone() }).collect(),
            edges: json.edges.clone(),
        };
        let complex = FlagComplex::from_json(&cj)?;
        let mut b = ComplexBundle { kind: json.kind, surface: sig, weight_bound: json.weight_bound, complex, classes, projection: None };
        match json.kind {
            BundleKind::D => {
                let p = b.compute_projection()?;
                b.projection = Some(p);
                let recorded = (&json.biperipheral_edges, &json.projection, &json.d2_vertices);
                let expect = b.to_json();
                if recorded != (&expect.biperipheral_edges, &expect.projection, &expect.d2_vertices) {
                    return Err(bad("projection data does not match the vertex labels".into()));
                }
            }
            _ => {
                if json.biperipheral_edges.is_some() || json.projection.is_some() || json.d2_vertices.is_some() {
                    return Err(bad(format!("a {} bundle carries no projection data", json.kind)));
                }
            }
        }
        Ok(b)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: BundleJson = serde_json::from_str(s).map_err(|e| SurfaceError::Malformed(e.to_string()))?;
        Self::from_json(&json)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bundle(g: u32, b: u32, kind: BundleKind, w: u32) -> ComplexBundle {
        ComplexBundle::build(&Surface::new(SurfaceSig::new(g, b)).unwrap(), kind, w).unwrap()
    }

    #[test]
    fn zero_bound_is_empty() {
        for kind in [BundleKind::C, BundleKind::D, BundleKind::D2] {
            let b = bundle(0, 5, kind, 0);
            assert!(b.is_empty());
            assert_eq!(b.complex().edge_count(), 0);
        }
    }

    #[test]
    fn slope_surfaces_have_no_curve_edges() {
        for (g, b) in [(1, 1), (0, 4)] {
            let c = bundle(g, b, BundleKind::C, 3);
            assert!(c.len() > 3);
            assert_eq!(c.complex().edge_count(), 0);
        }
    }

    #[test]
    fn one_hole_means_d2_equals_d() {
        let d = bundle(1, 1, BundleKind::D, 2);
        let d2 = d.d2_bundle().unwrap();
        assert_eq!(d2.classes(), d.classes());
        assert_eq!(d2.complex(), d.complex());
        assert!(d.biperipheral_pairs().unwrap().is_empty());
    }

    #[test]
    fn biperipheral_edges_on_five_holed_sphere() {
        let d = bundle(0, 5, BundleKind::D, 1);
        let pairs = d.biperipheral_pairs().unwrap();
        assert!(!pairs.is_empty());
        assert!(d.biperipheral_vertex_disjoint().unwrap());
        for &(p, a) in pairs {
            assert!(d.complex().adjacent(p, a));
            assert!(d.domain(p).unwrap().is_biperipheral_pants());
            assert!(d.domain(a).unwrap().is_annulus());
        }
        d.check_fiber_closed(&Surface::new(SurfaceSig::new(0, 5)).unwrap()).unwrap();
    }

    #[test]
    fn four_holed_sphere_fibers_are_triangles() {
        let d = bundle(0, 4, BundleKind::D, 2);
        assert!(!d.biperipheral_vertex_disjoint().unwrap());
        assert!(d.biperipheral_edge_set().is_err());
        for f in d.fibers().unwrap() {
            assert_eq!(f.len(), 3);
            assert!(d.complex().is_simplex(&f).unwrap());
        }
    }

    #[test]
    fn json_round_trip_and_determinism() {
        let d = bundle(0, 5, BundleKind::D, 1);
        let s = d.to_json_string();
        assert_eq!(s, bundle(0, 5, BundleKind::D, 1).to_json_string());
        let back = ComplexBundle::from_json_str(&s).unwrap();
        assert_eq!(back, d);
        let c = bundle(1, 2, BundleKind::C, 1);
        assert_eq!(ComplexBundle::from_json_str(&c.to_json_string()).unwrap(), c);
    }

    #[test]
    fn strict_parsing() {
        let d = bundle(0, 5, BundleKind::D, 1);
        let mut j = d.to_json();
        j.schema_version = 2;
        assert!(ComplexBundle::from_json(&j).is_err());
        let mut j = d.to_json();
        j.projection.as_mut().unwrap()[0] += 1;
        assert!(ComplexBundle::from_json(&j).is_err());
        let mut v: serde_json::Value = serde_json::from_str(&d.to_json_string()).unwrap();
        v["extra"] = serde_json::json!(1);
        assert!(ComplexBundle::from_json_str(&v.to_string()).is_err());
        assert!(ComplexBundle::from_json_str("{").is_err());
    }

    #[test]
    fn push_forward_of_identity() {
        let d = bundle(0, 5, BundleKind::D, 1);
        let id = VertexMap::identity(d.len());
        assert!(d.push_forward(&id).unwrap().is_identity());
        assert!(matches!(bundle(0, 5, BundleKind::C, 1).fibers(), Err(SurfaceError::KindMismatch { .. })));
    }
}
