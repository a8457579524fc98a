//! Combinatorial symmetries of the standard triangulation.
//!
//! Each is realized by a self-homeomorphism of the surface, so its action on
//! coordinates is a geometric automorphism of every truncation (truncations
//! are defined by max edge weight, which a permutation of edges preserves).

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use dcx_core::{VertexId, VertexMap};
use serde::{Deserialize, Serialize};

use crate::bundle::{ComplexBundle, VertexClass};
use crate::curve::CurveClass;
use crate::domain::DomainClass;
use crate::error::{Result, SurfaceError};
use crate::triangulation::Triangulation;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Symmetry {
    /// edge `e` goes to `edges[e]`
    pub edges: Vec<usize>,
    /// hole `h` goes to `holes[h]`
    pub holes: Vec<u32>,
    pub orientation_preserving: bool,
}

impl Symmetry {
    pub fn apply_weights(&self, w: &[u32]) -> Vec<u32> {
        let mut out = vec![0; w.len()];
        for (e, &x) in w.iter().enumerate() {
            out[self.edges[e]] = x;
        }
        out
    }

    pub fn apply_curve(&self, c: &CurveClass) -> CurveClass {
        CurveClass::from_weights_unchecked(self.apply_weights(c.weights()))
    }

    pub fn apply_domain(&self, d: &DomainClass) -> DomainClass {
        match d {
            DomainClass::Annulus { core } => DomainClass::Annulus { core: self.apply_curve(core) },
            DomainClass::Piece { boundary, sides, genus, holes } => {
                let mut pairs: Vec<(CurveClass, u8)> =
                    boundary.iter().zip(sides).map(|(c, &s)| (self.apply_curve(c), s)).collect();
                pairs.sort();
                let mut hs: Vec<u32> = holes.iter().map(|&h| self.holes[h as usize]).collect();
                hs.sort();
                let (boundary, sides) = pairs.into_iter().unzip();
                DomainClass::Piece { boundary, sides, genus: *genus, holes: hs }
            }
        }
    }

    pub fn apply_class(&self, c: &VertexClass) -> VertexClass {
        match c {
            VertexClass::Curve(c) => VertexClass::Curve(self.apply_curve(c)),
            VertexClass::Domain(d) => VertexClass::Domain(self.apply_domain(d)),
        }
    }

    /// The induced vertex map on a bundle.
    pub fn on_bundle(&self, b: &ComplexBundle) -> Result<VertexMap> {
        let images = b
            .classes()
            .iter()
            .map(|c| {
                b.index_of(&self.apply_class(c))
                    .ok_or_else(|| SurfaceError::Malformed(format!("image of {c} is outside the truncation")))
            })
            .collect::<Result<Vec<VertexId>>>()?;
        Ok(VertexMap::new(images))
    }
}

/// Corner map of one triangle: corner `c` goes to `(target, f(c))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct CornerMap {
    target: usize,
    shift: usize,
    reflect: bool,
}

impl CornerMap {
    fn corner(&self, c: usize) -> usize {
        if self.reflect {
            (self.shift + 3 - c % 3) % 3
        } else {
            (c + self.shift) % 3
        }
    }

    /// Image of side `i` (corner `i` to `i+1`).
    fn side(&self, i: usize) -> usize {
        if self.reflect {
            // corners i, i+1 go to s-i, s-i-1: the side starting at s-i-1
            (self.shift + 6 - i - 1) % 3
        } else {
            (i + self.shift) % 3
        }
    }
}

fn extend(tri: &Triangulation, start: CornerMap) -> Option<Symmetry> {
    let n = tri.triangle_count();
    let mut maps: Vec<Option<CornerMap>> = vec![None; n];
    maps[0] = Some(start);
    let mut queue = VecDeque::from([0usize]);
    let partner = |t: usize, i: usize| {
        let e = tri.side(t, i).edge;
        let [a, b] = tri.edge_sides(e);
        if a == (t, i) {
            b
        } else {
            a
        }
    };
    while let Some(t) = queue.pop_front() {
        let m = maps[t].unwrap();
        for i in 0..3 {
            let (u, k) = partner(t, i);
            let j = m.side(i);
            let (u2, k2) = partner(m.target, j);
            let mu = if m.reflect {
                CornerMap { target: u2, shift: (k + k2 + 1) % 3, reflect: true }
            } else {
                CornerMap { target: u2, shift: (k2 + 3 - k) % 3, reflect: false }
            };
            match maps[u] {
                Some(prev) if prev != mu => return None,
                Some(_) => {}
                None => {
                    maps[u] = Some(mu);
                    queue.push_back(u);
                }
            }
        }
    }
    let maps: Vec<CornerMap> = maps.into_iter().collect::<Option<_>>()?;
    // bijective on triangles
    if maps.iter().map(|m| m.target).collect::<BTreeSet<_>>().len() != n {
        return None;
    }
    let mut edges = vec![usize::MAX; tri.edge_count()];
    for (t, m) in maps.iter().enumerate() {
        for i in 0..3 {
            let e = tri.side(t, i).edge;
            let e2 = tri.side(m.target, m.side(i)).edge;
            if edges[e] != usize::MAX && edges[e] != e2 {
                return None;
            }
            edges[e] = e2;
        }
    }
    if edges.iter().collect::<BTreeSet<_>>().len() != edges.len() {
        return None;
    }
    let mut holes: BTreeMap<u32, u32> = BTreeMap::new();
    for (t, m) in maps.iter().enumerate() {
        for c in 0..3 {
            let (h, h2) = (tri.corner_hole(t, c), tri.corner_hole(m.target, m.corner(c)));
            if *holes.entry(h).or_insert(h2) != h2 {
                return None;
            }
        }
    }
    let holes: Vec<u32> = holes.into_values().collect();
    if holes.iter().collect::<BTreeSet<_>>().len() != holes.len() {
        return None;
    }
    Some(Symmetry { edges, holes, orientation_preserving: !start.reflect })
}

/// All symmetries of the triangulation, deduplicated by their action on
/// edges and holes, sorted; the identity comes first.
pub fn symmetries(tri: &Triangulation) -> Vec<Symmetry> {
    let mut out = BTreeSet::new();
    for target in 0..tri.triangle_count() {
        for shift in 0..3 {
            for reflect in [false, true] {
                if let Some(s) = extend(tri, CornerMap { target, shift, reflect }) {
                    out.insert(s);
                }
            }
        }
    }
    let mut v: Vec<Symmetry> = out.into_iter().collect();
    let id = v.iter().position(|s| s.edges.iter().enumerate().all(|(i, &e)| i == e));
    if let Some(i) = id {
        let s = v.remove(i);
        v.insert(0, s);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::BundleKind;
    use crate::surface::Surface;
    use crate::triangulation::SurfaceSig;

    #[test]
    fn identity_first_and_group_closed() {
        for (g, b) in [(0, 4), (0, 5), (1, 1), (1, 2)] {
            let tri = Triangulation::standard(SurfaceSig::new(g, b)).unwrap();
            let syms = symmetries(&tri);
            assert!(syms[0].edges.iter().enumerate().all(|(i, &e)| i == e));
            let set: BTreeSet<Vec<usize>> = syms.iter().map(|s| s.edges.clone()).collect();
            for a in &syms {
                for b in &syms {
                    let comp: Vec<usize> = (0..tri.edge_count()).map(|e| a.edges[b.edges[e]]).collect();
                    assert!(set.contains(&comp));
                }
            }
        }
    }

    #[test]
    fn tetrahedron_symmetries() {
        let tri = Triangulation::standard(SurfaceSig::new(0, 4)).unwrap();
        // the full symmetry group of the tetrahedron, acting on its four vertices
        assert_eq!(symmetries(&tri).len(), 24);
    }

    #[test]
    fn symmetries_map_curves_to_curves_and_preserve_disjointness() {
        for (g, b) in [(0, 5), (1, 2)] {
            let s = Surface::new(SurfaceSig::new(g, b)).unwrap();
            let cs = s.enumerate_curves(2);
            let set: BTreeSet<&CurveClass> = cs.iter().collect();
            for sym in symmetries(s.triangulation()) {
                for a in &cs {
                    let fa = sym.apply_curve(a);
                    assert!(set.contains(&fa));
                    for b in cs.iter().take(10) {
                        assert_eq!(s.disjoint(a, b).unwrap(), s.disjoint(&fa, &sym.apply_curve(b)).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn symmetries_are_bundle_automorphisms() {
        let s = Surface::new(SurfaceSig::new(0, 5)).unwrap();
        let d = ComplexBundle::build(&s, BundleKind::D, 2).unwrap();
        let syms = symmetries(s.triangulation());
        assert!(syms.len() > 1);
        for sym in syms {
            let m = sym.on_bundle(&d).unwrap();
            assert!(d.complex().is_automorphism(&m).unwrap());
            let star = d.push_forward(&m).unwrap();
            assert!(d.projection().unwrap().d2.is_automorphism(&star).unwrap());
        }
    }
}
