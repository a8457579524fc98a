//! Signatures and the canonical ideal triangulations.
//!
//! Holes are punctures, i.e. ideal vertices of the triangulation. Only
//! surfaces with at least one hole are triangulated this way.

use std::fmt;
use std::str::FromStr;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SurfaceError};

/// Genus and number of holes of a compact orientable surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SurfaceSig {
    pub genus: u32,
    pub holes: u32,
}

impl SurfaceSig {
    pub const fn new(genus: u32, holes: u32) -> Self {
        SurfaceSig { genus, holes }
    }

    pub fn euler(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.holes as i64
    }

    /// Spheres with at most three holes carry no essential curves.
    pub fn has_essential_curves(&self) -> bool {
        self.genus > 0 || self.holes >= 4
    }

    pub fn is_sphere_with_four_holes(&self) -> bool {
        self.genus == 0 && self.holes == 4
    }

    pub fn is_torus_with_at_most_one_hole(&self) -> bool {
        self.genus == 1 && self.holes <= 1
    }

    pub fn check_supported(&self) -> Result<()> {
        if !self.has_essential_curves() {
            return Err(SurfaceError::Unsupported(*self, "no essential curves"));
        }
        if self.holes == 0 {
            return Err(SurfaceError::Unsupported(*self, "closed surfaces are not modelled"));
        }
        Ok(())
    }

    pub fn as_array(&self) -> [u32; 2] {
        [self.genus, self.holes]
    }
}

impl fmt::Display for SurfaceSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S_{{{},{}}}", self.genus, self.holes)
    }
}

impl FromStr for SurfaceSig {
    type Err = String;

    /// Parses `"g,b"`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let (g, b) = s.split_once(',').ok_or_else(|| format!("expected \"g,b\", got {s:?}"))?;
        let g = g.trim().parse().map_err(|e| format!("bad genus: {e}"))?;
        let b = b.trim().parse().map_err(|e| format!("bad hole count: {e}"))?;
        Ok(SurfaceSig::new(g, b))
    }
}

/// One side of a triangle: the edge it lies on, and whether walking the side
/// from its first corner to its second follows the edge's orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Side {
    pub edge: usize,
    pub forward: bool,
}

/// An ideal triangulation. Side `i` of a triangle runs from corner `i` to
/// corner `i + 1 (mod 3)`; triangles are oriented consistently, so each edge
/// appears once as a forward side and once as a reverse side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    sig: SurfaceSig,
    triangles: Vec<[Side; 3]>,
    /// `(triangle, side)` of the forward and the reverse occurrence of each edge
    edge_sides: Vec<[(usize, usize); 2]>,
    /// hole at each corner
    corner_hole: Vec<[u32; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangulationJson {
    pub surface: [u32; 2],
    /// per triangle, per side: `[edge, 1 if forward else 0]`
    pub triangles: Vec<[[usize; 2]; 3]>,
    /// per edge: forward and reverse occurrence as `[triangle, side]`
    pub gluings: Vec<[[usize; 2]; 2]>,
    /// hole label at each corner
    pub corner_holes: Vec<[u32; 3]>,
}

/// A polygon side labelled by an edge label and a traversal sign.
type PolySide = (usize, bool);

struct Polygon {
    sides: Vec<PolySide>,
    apex: usize,
}

impl Triangulation {
    pub fn sig(&self) -> SurfaceSig {
        self.sig
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_sides.len()
    }

    pub fn hole_count(&self) -> usize {
        self.sig.holes as usize
    }

    pub fn triangles(&self) -> &[[Side; 3]] {
        &self.triangles
    }

    pub fn side(&self, t: usize, i: usize) -> Side {
        self.triangles[t][i]
    }

    pub fn edge_sides(&self, e: usize) -> [(usize, usize); 2] {
        self.edge_sides[e]
    }

    pub fn corner_hole(&self, t: usize, c: usize) -> u32 {
        self.corner_hole[t][c]
    }

    /// Number of ends of each edge at hole `h` (0, 1 or 2); this is also the
    /// normal coordinate vector of the curve linking `h`.
    pub fn hole_link(&self, h: u32) -> Vec<u32> {
        let mut w = vec![0u32; self.edge_count()];
        for (e, sides) in self.edge_sides.iter().enumerate() {
            let (t, i) = sides[0];
            w[e] += (self.corner_hole[t][i] == h) as u32 + (self.corner_hole[t][(i + 1) % 3] == h) as u32;
        }
        w
    }

    pub fn to_json(&self) -> TriangulationJson {
        TriangulationJson {
            surface: self.sig.as_array(),
            triangles: self
                .triangles
                .iter()
                .map(|t| t.map(|s| [s.edge, s.forward as usize]))
                .collect(),
            gluings: self.edge_sides.iter().map(|s| s.map(|(t, i)| [t, i])).collect(),
            corner_holes: self.corner_hole.clone(),
        }
    }

    /// The canonical triangulation of `sig`.
    ///
    /// Genus 0: two copies of a `b`-gon glued along their boundary, the top
    /// fanned from vertex 0 and the bottom (vertex order `1, 0, b-1, …, 2`)
    /// fanned from vertex 1; polygon vertex `k` is hole `k`.
    ///
    /// Genus ≥ 1: the polygon `a1 b1 a1⁻¹ b1⁻¹ … c1 c1⁻¹ … c_{b-1} c_{b-1}⁻¹`,
    /// fanned from the tip of `c1` (or from vertex 0 when `b = 1`); the
    /// common vertex is hole 0 and the tip of `c_j` is hole `j`.
    pub fn standard(sig: SurfaceSig) -> Result<Self> {
        sig.check_supported()?;
        let (g, b) = (sig.genus as usize, sig.holes as usize);
        if g == 0 {
            let top = Polygon { sides: (0..b).map(|k| (k, true)).collect(), apex: 0 };
            let bottom = Polygon {
                sides: (0..b).map(|j| ((b - j) % b, false)).collect(),
                apex: 0,
            };
            let holes: Vec<(usize, usize)> = (0..b).map(|k| (0, k)).collect();
            Self::from_polygons(sig, &[top, bottom], &holes)
        } else {
            let mut sides = Vec::with_capacity(4 * g + 2 * (b - 1));
            for i in 0..g {
                let (a, bb) = (2 * i, 2 * i + 1);
                sides.extend([(a, true), (bb, true), (a, false), (bb, false)]);
            }
            for j in 1..b {
                let c = 2 * g + j - 1;
                sides.extend([(c, true), (c, false)]);
            }
            let apex = if b >= 2 { 4 * g + 1 } else { 0 };
            let mut holes = vec![(0, 0)];
            holes.extend((1..b).map(|j| (0, 4 * g + 2 * (j - 1) + 1)));
            Self::from_polygons(sig, &[Polygon { sides, apex }], &holes)
        }
    }

    fn from_polygons(sig: SurfaceSig, polys: &[Polygon], holes: &[(usize, usize)]) -> Result<Self> {
        // fan triangulate; diagonals get labels after all polygon labels
        let mut next_label = polys.iter().flat_map(|p| p.sides.iter().map(|s| s.0)).max().unwrap_or(0) + 1;
        let mut raw: Vec<[PolySide; 3]> = Vec::new();
        // (polygon, polygon vertex) -> (triangle, corner)
        let mut vertex_corner: Vec<Vec<(usize, usize)>> = Vec::new();
        for p in polys {
            let n = p.sides.len();
            let a = p.apex;
            let first = raw.len();
            let diag: Vec<usize> = (0..n)
                .map(|j| if (2..=n - 2).contains(&j) { next_label += 1; next_label - 1 } else { usize::MAX })
                .collect();
            for j in 1..=n - 2 {
                let s0 = if j == 1 { p.sides[a] } else { (diag[j], true) };
                let s1 = p.sides[(a + j) % n];
                let s2 = if j < n - 2 { (diag[j + 1], false) } else { p.sides[(a + n - 1) % n] };
                raw.push([s0, s1, s2]);
            }
            let corners = (0..n)
                .map(|v| {
                    let j = (v + n - a) % n;
                    match j {
                        0 => (first, 0),
                        j if j <= n - 2 => (first + j - 1, 1),
                        _ => (first + n - 3, 2),
                    }
                })
                .collect();
            vertex_corner.push(corners);
        }

        // edge ids in order of first occurrence
        let mut ids = std::collections::HashMap::new();
        let mut triangles = Vec::with_capacity(raw.len());
        for tri in &raw {
            triangles.push(tri.map(|(label, fwd)| {
                let n = ids.len();
                Side { edge: *ids.entry(label).or_insert(n), forward: fwd }
            }));
        }
        let edge_count = ids.len();
        let mut fwd = vec![None; edge_count];
        let mut rev = vec![None; edge_count];
        for (t, tri) in triangles.iter().enumerate() {
            for (i, s) in tri.iter().enumerate() {
                let slot = if s.forward { &mut fwd[s.edge] } else { &mut rev[s.edge] };
                if slot.replace((t, i)).is_some() {
                    return Err(SurfaceError::Unsupported(sig, "edge glued more than twice"));
                }
            }
        }
        let edge_sides = fwd
            .into_iter()
            .zip(rev)
            .map(|(f, r)| match (f, r) {
                (Some(f), Some(r)) => Ok([f, r]),
                _ => Err(SurfaceError::Unsupported(sig, "unglued edge")),
            })
            .collect::<Result<Vec<_>>>()?;

        let mut uf = UnionFind::<usize>::new(3 * triangles.len());
        for &[(t, i), (u, k)] in &edge_sides {
            uf.union(3 * t + i, 3 * u + (k + 1) % 3);
            uf.union(3 * t + (i + 1) % 3, 3 * u + k);
        }
        let mut hole_of_root = std::collections::HashMap::new();
        for (h, &(p, v)) in holes.iter().enumerate() {
            let (t, c) = vertex_corner[p][v];
            if hole_of_root.insert(uf.find(3 * t + c), h as u32).is_some() {
                return Err(SurfaceError::Unsupported(sig, "two holes share a vertex"));
            }
        }
        let corner_hole = (0..triangles.len())
            .map(|t| {
                let mut out = [0u32; 3];
                for (c, slot) in out.iter_mut().enumerate() {
                    *slot = *hole_of_root
                        .get(&uf.find(3 * t + c))
                        .ok_or(SurfaceError::Unsupported(sig, "vertex without a hole label"))?;
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;

        let tri = Triangulation { sig, triangles, edge_sides, corner_hole };
        if tri.triangle_count() as i64 - tri.edge_count() as i64 != sig.euler() {
            return Err(SurfaceError::Unsupported(sig, "Euler characteristic mismatch"));
        }
        Ok(tri)
    }
}
