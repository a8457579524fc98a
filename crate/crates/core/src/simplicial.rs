use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{ComplexError, Result};

/// Dense vertex label. Ids are assigned in sorted order of the vertex payloads.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for VertexId {
    fn from(i: usize) -> Self {
        VertexId(i as u32)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite flag complex: a vertex set with a symmetric irreflexive adjacency
/// relation. Its simplices are exactly the cliques, including the empty one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagComplex {
    labels: Vec<String>,
    neighbors: Vec<Vec<VertexId>>,
    adjacency: Vec<FixedBitSet>,
}

/// On-disk form of a complex: `{"vertices":[{"id","label"}],"edges":[[u,v]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub vertices: Vec<JsonVertex>,
    pub edges: Vec<[u32; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonVertex {
    pub id: u32,
    pub label: String,
}

impl FlagComplex {
    pub fn empty() -> Self {
        FlagComplex { labels: Vec::new(), neighbors: Vec::new(), adjacency: Vec::new() }
    }

    /// Builds the flag complex of a labeled graph. Vertices are numbered in
    /// sorted label order so the result does not depend on input order.
    pub fn from_graph<L, V, E>(vertices: V, edges: E) -> Result<Self>
    where
        L: Ord + fmt::Display,
        V: IntoIterator<Item = L>,
        E: IntoIterator<Item = (L, L)>,
    {
        let mut index: BTreeMap<L, usize> = BTreeMap::new();
        for v in vertices {
            let shown = v.to_string();
            if index.insert(v, 0).is_some() {
                return Err(ComplexError::DuplicateLabel(shown));
            }
        }
        let mut labels = Vec::with_capacity(index.len());
        for (i, (label, slot)) in index.iter_mut().enumerate() {
            *slot = i;
            labels.push(label.to_string());
        }
        let mut pairs = Vec::new();
        for (a, b) in edges {
            let ia = *index.get(&a).ok_or_else(|| ComplexError::DanglingEdge(a.to_string()))?;
            let ib = *index.get(&b).ok_or_else(|| ComplexError::DanglingEdge(b.to_string()))?;
            if ia == ib {
                return Err(ComplexError::SelfLoop(a.to_string()));
            }
            pairs.push((ia, ib));
        }
        Self::from_indexed(labels, pairs)
    }

    /// Builds a complex whose vertex `i` carries `labels[i]`.
    pub fn from_indexed<E>(labels: Vec<String>, edges: E) -> Result<Self>
    where
        E: IntoIterator<Item = (usize, usize)>,
    {
        let n = labels.len();
        let mut adjacency = vec![FixedBitSet::with_capacity(n); n];
        for (a, b) in edges {
            if a >= n {
                return Err(ComplexError::DanglingEdge(a.to_string()));
            }
            if b >= n {
                return Err(ComplexError::DanglingEdge(b.to_string()));
            }
            if a == b {
                return Err(ComplexError::SelfLoop(labels[a].clone()));
            }
            adjacency[a].insert(b);
            adjacency[b].insert(a);
        }
        let neighbors = adjacency
            .iter()
            .map(|row| row.ones().map(VertexId::from).collect())
            .collect();
        Ok(FlagComplex { labels, neighbors, adjacency })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.len()).map(VertexId::from)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v.index() < self.len()
    }

    fn check(&self, v: VertexId) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(ComplexError::UnknownVertex(v.0))
        }
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Looks a vertex up by its label.
    pub fn find(&self, label: &str) -> Option<VertexId> {
        self.labels.iter().position(|l| l == label).map(VertexId::from)
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.neighbors[v.index()]
    }

    pub fn neighbor_bits(&self, v: VertexId) -> &FixedBitSet {
        &self.adjacency[v.index()]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors[v.index()].len()
    }

    #[inline]
    pub fn adjacent(&self, a: VertexId, b: VertexId) -> bool {
        self.adjacency[a.index()].contains(b.index())
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for (i, row) in self.neighbors.iter().enumerate() {
            for &j in row {
                if j.index() > i {
                    out.push((VertexId::from(i), j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// True iff the vertices are pairwise adjacent. The empty set is a simplex.
    pub fn is_simplex(&self, s: &[VertexId]) -> Result<bool> {
        for &v in s {
            self.check(v)?;
        }
        for (i, &a) in s.iter().enumerate() {
            for &b in &s[i + 1..] {
                if a != b && !self.adjacent(a, b) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Zero-skeleton of the star: `x` together with its neighbors, sorted.
    pub fn star0(&self, x: VertexId) -> Result<Vec<VertexId>> {
        self.check(x)?;
        let mut out = self.neighbors(x).to_vec();
        let pos = out.binary_search(&x).unwrap_err();
        out.insert(pos, x);
        Ok(out)
    }

    /// Zero-skeleton of the link: the neighbors of `x`, sorted.
    pub fn link0(&self, x: VertexId) -> Result<Vec<VertexId>> {
        self.check(x)?;
        Ok(self.neighbors(x).to_vec())
    }

    pub fn star_bits(&self, x: VertexId) -> FixedBitSet {
        let mut bits = self.adjacency[x.index()].clone();
        bits.insert(x.index());
        bits
    }

    /// Star equality. In a flag complex this is equivalent to equality of the
    /// full stars, so only zero-skeleta are compared.
    pub fn stars_equal(&self, x: VertexId, y: VertexId) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.star_bits(x) == self.star_bits(y))
    }

    /// True iff `St(x)` is contained in `St(y)`.
    pub fn star_contained(&self, x: VertexId, y: VertexId) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.star_bits(x).is_subset(&self.star_bits(y)))
    }

    /// The subcomplex induced on `w`. Vertices of the result are renumbered
    /// in increasing order of their ids here and keep their labels.
    pub fn induced(&self, w: &[VertexId]) -> Result<FlagComplex> {
        let mut keep: Vec<VertexId> = w.to_vec();
        keep.sort_unstable();
        keep.dedup();
        for &v in &keep {
            self.check(v)?;
        }
        let mut renumber = vec![usize::MAX; self.len()];
        for (i, v) in keep.iter().enumerate() {
            renumber[v.index()] = i;
        }
        let labels = keep.iter().map(|&v| self.labels[v.index()].clone()).collect();
        let mut edges = Vec::new();
        for (i, &v) in keep.iter().enumerate() {
            for &u in self.neighbors(v) {
                let j = renumber[u.index()];
                if j != usize::MAX && j > i {
                    edges.push((i, j));
                }
            }
        }
        Self::from_indexed(labels, edges)
    }

    /// True iff `m` is a bijection carrying edges to edges and non-edges to
    /// non-edges, which for a flag complex is the same as being a simplicial
    /// automorphism.
    pub fn is_automorphism(&self, m: &VertexMap) -> Result<bool> {
        if m.len() != self.len() {
            return Err(ComplexError::NotTotal { expected: self.len(), got: m.len() });
        }
        if !m.is_bijective() {
            return Ok(false);
        }
        for v in self.vertices() {
            let mv = m.image(v);
            if self.degree(v) != self.degree(mv) {
                return Ok(false);
            }
            if self.neighbors(v).iter().any(|&u| !self.adjacent(mv, m.image(u))) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            vertices: self
                .labels
                .iter()
                .enumerate()
                .map(|(i, l)| JsonVertex { id: i as u32, label: l.clone() })
                .collect(),
            edges: self.edges().into_iter().map(|(a, b)| [a.0, b.0]).collect(),
        }
    }

    pub fn from_json(json: &ComplexJson) -> Result<Self> {
        let mut labels = Vec::with_capacity(json.vertices.len());
        for (i, v) in json.vertices.iter().enumerate() {
            if v.id as usize != i {
                return Err(ComplexError::Malformed(format!(
                    "vertex ids must be dense and ordered, found {} at position {i}",
                    v.id
                )));
            }
            labels.push(v.label.clone());
        }
        let mut prev: Option<[u32; 2]> = None;
        for e in &json.edges {
            if e[0] >= e[1] {
                return Err(ComplexError::Malformed(format!("edge {:?} is not ordered", e)));
            }
            if prev.is_some_and(|p| p >= *e) {
                return Err(ComplexError::Malformed("edges are not sorted".into()));
            }
            prev = Some(*e);
        }
        Self::from_indexed(labels, json.edges.iter().map(|e| (e[0] as usize, e[1] as usize)))
    }

    /// Graphviz rendering of the 1-skeleton.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph \"{}\" {{", name.replace('"', "'"));
        for v in self.vertices() {
            let _ = writeln!(out, "  {} [label=\"{}\"];", v.0, self.label(v).replace('"', "'"));
        }
        for (a, b) in self.edges() {
            let _ = writeln!(out, "  {} -- {};", a.0, b.0);
        }
        out.push_str("}\n");
        out
    }
}

/// A total function on the vertex set of a complex, stored as an image table.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexMap(Vec<VertexId>);

impl VertexMap {
    pub fn new(images: Vec<VertexId>) -> Self {
        VertexMap(images)
    }

    pub fn identity(n: usize) -> Self {
        VertexMap((0..n).map(VertexId::from).collect())
    }

    pub fn from_array(images: &[u32]) -> Self {
        VertexMap(images.iter().map(|&i| VertexId(i)).collect())
    }

    pub fn to_array(&self) -> Vec<u32> {
        self.0.iter().map(|v| v.0).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn image(&self, v: VertexId) -> VertexId {
        self.0[v.index()]
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &VertexMap) -> VertexMap {
        VertexMap(other.0.iter().map(|&v| self.image(v)).collect())
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = FixedBitSet::with_capacity(self.len());
        for &v in &self.0 {
            if v.index() >= self.len() || seen.put(v.index()) {
                return false;
            }
        }
        true
    }

    pub fn inverse(&self) -> Result<VertexMap> {
        if !self.is_bijective() {
            return Err(ComplexError::NotBijective);
        }
        let mut inv = vec![VertexId(0); self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v.index()] = VertexId::from(i);
        }
        Ok(VertexMap(inv))
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, v)| v.index() == i)
    }

    /// Vertices moved by the map, sorted.
    pub fn moved(&self) -> Vec<VertexId> {
        self.0
            .iter()
            .enumerate()
            .filter(|(i, v)| v.index() != *i)
            .map(|(i, _)| VertexId::from(i))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    fn triangle() -> FlagComplex {
        FlagComplex::from_graph(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")]).unwrap()
    }

    fn path() -> FlagComplex {
        FlagComplex::from_graph(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap()
    }

    fn complete(n: usize) -> FlagComplex {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        FlagComplex::from_indexed((1..=n).map(|i| i.to_string()).collect(), edges).unwrap()
    }

    #[test]
    fn hollow_triangle_fills_in() {
        let k = triangle();
        assert!(k.is_simplex(&[v(0), v(1), v(2)]).unwrap());
        assert_eq!(k.edge_count(), 3);
    }

    #[test]
    fn single_vertex() {
        let k = FlagComplex::from_graph(["a"], Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(k.star0(v(0)).unwrap(), vec![v(0)]);
        assert!(k.link0(v(0)).unwrap().is_empty());
    }

    #[test]
    fn complete_four_is_one_tetrahedron() {
        let k = complete(4);
        let all: Vec<_> = k.vertices().collect();
        assert!(k.is_simplex(&all).unwrap());
        assert_eq!(k.edge_count(), 6);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            FlagComplex::from_graph(["a"], [("a", "z")]),
            Err(ComplexError::DanglingEdge(_))
        ));
        assert!(matches!(
            FlagComplex::from_graph(["a", "b"], [("a", "a")]),
            Err(ComplexError::SelfLoop(_))
        ));
        assert!(matches!(
            FlagComplex::from_graph(["a", "a"], Vec::<(&str, &str)>::new()),
            Err(ComplexError::DuplicateLabel(_))
        ));
    }

    #[test]
    fn labels_sorted_before_numbering() {
        let k = FlagComplex::from_graph(["c", "a", "b"], [("c", "a")]).unwrap();
        assert_eq!(k.labels(), &["a", "b", "c"]);
        assert!(k.adjacent(v(0), v(2)));
    }

    #[test]
    fn simplex_queries() {
        let p = path();
        assert!(!p.is_simplex(&[v(0), v(2)]).unwrap());
        assert!(p.is_simplex(&[]).unwrap());
        assert_eq!(p.is_simplex(&[v(7)]), Err(ComplexError::UnknownVertex(7)));
    }

    #[test]
    fn stars_and_links() {
        let k3 = complete(3);
        assert_eq!(k3.star0(v(0)).unwrap(), vec![v(0), v(1), v(2)]);
        assert_eq!(k3.link0(v(0)).unwrap(), vec![v(1), v(2)]);
        assert!(k3.stars_equal(v(0), v(2)).unwrap());
        let p = path();
        assert!(!p.stars_equal(v(0), v(2)).unwrap());
        assert!(p.star_contained(v(0), v(1)).unwrap());
        assert!(!p.star_contained(v(1), v(0)).unwrap());
        assert_eq!(p.star0(v(9)), Err(ComplexError::UnknownVertex(9)));
    }

    #[test]
    fn induced_subcomplexes() {
        let k4 = complete(4);
        let e = k4.induced(&[v(1), v(3)]).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e.edge_count(), 1);
        let all: Vec<_> = k4.vertices().collect();
        assert_eq!(k4.induced(&all).unwrap(), k4);
        assert!(k4.induced(&[v(4)]).is_err());
    }

    #[test]
    fn automorphism_examples() {
        let k = path();
        assert!(k.is_automorphism(&VertexMap::identity(3)).unwrap());
        let edge = FlagComplex::from_graph(["a", "b"], [("a", "b")]).unwrap();
        assert!(edge.is_automorphism(&VertexMap::from_array(&[1, 0])).unwrap());
        // vertex 0 of the star+tail graph has degree 3, vertex 1 degree 4
        let g = FlagComplex::from_indexed(
            (0..6).map(|i| i.to_string()).collect(),
            [(0, 2), (0, 3), (0, 1), (1, 4), (1, 5), (1, 2)],
        )
        .unwrap();
        assert!(!g.is_automorphism(&VertexMap::from_array(&[1, 0, 2, 3, 4, 5])).unwrap());
        assert!(matches!(
            k.is_automorphism(&VertexMap::identity(2)),
            Err(ComplexError::NotTotal { .. })
        ));
    }

    #[test]
    fn json_round_trip_and_strictness() {
        let k = complete(4);
        let json = k.to_json();
        assert_eq!(FlagComplex::from_json(&json).unwrap(), k);
        let mut bad = json.clone();
        bad.edges.swap(0, 1);
        assert!(FlagComplex::from_json(&bad).is_err());
        let text = serde_json::to_string(&json).unwrap();
        assert!(text.starts_with("{\"vertices\":[{\"id\":0,\"label\":\"1\"}"));
    }

    #[test]
    fn dot_export() {
        let dot = path().to_dot("p");
        assert!(dot.contains("0 -- 1;"));
        assert!(dot.contains("1 -- 2;"));
    }

    #[test]
    fn vertex_map_algebra() {
        let a = VertexMap::from_array(&[1, 2, 0]);
        let inv = a.inverse().unwrap();
        assert!(a.compose(&inv).is_identity());
        assert_eq!(a.compose(&a).compose(&a), VertexMap::identity(3));
        assert!(VertexMap::from_array(&[0, 0, 1]).inverse().is_err());
        assert_eq!(a.moved(), vec![v(0), v(1), v(2)]);
    }
}
