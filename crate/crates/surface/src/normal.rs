//! Normal arcs, admissibility and tracing.
//!
//! A weight vector puts `x_e` points on edge `e`. Inside a triangle with side
//! weights `x0, x1, x2` the corner at corner `i` (between sides `i-1` and `i`)
//! carries `c_i = (x_{i-1} + x_i - x_{i+1}) / 2` arcs. Arc `(i, d)` (depth `d`
//! counted from the corner) meets side `i` at position `d` and side `i-1` at
//! position `x_{i-1} - 1 - d`, positions measured along the side.

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;

use crate::error::{Result, SurfaceError};
use crate::triangulation::Triangulation;

/// Corner arc counts of triangle `t`, or `None` if the triangle is
/// inadmissible.
pub fn corner_counts(tri: &Triangulation, w: &[u32], t: usize) -> Option<[u32; 3]> {
    let x = tri.triangles()[t].map(|s| w[s.edge] as i64);
    let mut c = [0u32; 3];
    for i in 0..3 {
        let v = x[(i + 2) % 3] + x[i] - x[(i + 1) % 3];
        if v < 0 || v % 2 != 0 {
            return None;
        }
        c[i] = (v / 2) as u32;
    }
    Some(c)
}

pub fn check_admissible(tri: &Triangulation, w: &[u32]) -> Result<()> {
    if w.len() != tri.edge_count() {
        return Err(SurfaceError::WrongLength { expected: tri.edge_count(), got: w.len() });
    }
    for t in 0..tri.triangle_count() {
        if corner_counts(tri, w, t).is_none() {
            return Err(SurfaceError::Inadmissible(format!("triangle {t} violates the matching conditions")));
        }
    }
    Ok(())
}

/// Points of a weight vector, indexed edge by edge.
pub(crate) struct Points {
    offset: Vec<usize>,
    weights: Vec<u32>,
}

impl Points {
    pub fn new(w: &[u32]) -> Self {
        let mut offset = Vec::with_capacity(w.len() + 1);
        let mut acc = 0;
        for &x in w {
            offset.push(acc);
            acc += x as usize;
        }
        offset.push(acc);
        Points { offset, weights: w.to_vec() }
    }

    pub fn len(&self) -> usize {
        *self.offset.last().unwrap()
    }

    /// Global index of the point at position `p` along side `(t, i)`.
    pub fn on_side(&self, tri: &Triangulation, t: usize, i: usize, p: u32) -> usize {
        let s = tri.side(t, i);
        let x = self.weights[s.edge];
        let q = if s.forward { p } else { x - 1 - p };
        self.offset[s.edge] + q as usize
    }

    pub fn edge_of(&self, point: usize) -> usize {
        self.offset.partition_point(|&o| o <= point) - 1
    }
}

/// One normal arc: triangle, corner, depth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Arc {
    pub t: usize,
    pub corner: usize,
    pub depth: u32,
}

/// All arcs of an admissible vector, with their two endpoints.
pub(crate) fn arcs(tri: &Triangulation, w: &[u32], pts: &Points) -> Vec<(Arc, usize, usize)> {
    let mut out = Vec::with_capacity(pts.len());
    for t in 0..tri.triangle_count() {
        let c = corner_counts(tri, w, t).expect("admissible");
        let x = tri.triangles()[t].map(|s| w[s.edge]);
        for i in 0..3 {
            let prev = (i + 2) % 3;
            for d in 0..c[i] {
                let a = pts.on_side(tri, t, i, d);
                let b = pts.on_side(tri, t, prev, x[prev] - 1 - d);
                out.push((Arc { t, corner: i, depth: d }, a, b));
            }
        }
    }
    out
}

/// Union-find over points joined by arcs; each class is one closed component.
pub(crate) fn components(tri: &Triangulation, w: &[u32]) -> (Points, UnionFind<usize>, Vec<(Arc, usize, usize)>) {
    let pts = Points::new(w);
    let mut uf = UnionFind::new(pts.len());
    let arcs = arcs(tri, w, &pts);
    for &(_, a, b) in &arcs {
        uf.union(a, b);
    }
    (pts, uf, arcs)
}

/// Decomposes `w` into connected components, returning component weight
/// vectors with multiplicities.
pub fn trace(tri: &Triangulation, w: &[u32]) -> Result<BTreeMap<Vec<u32>, u32>> {
    check_admissible(tri, w)?;
    let (pts, uf, _) = components(tri, w);
    let mut per_root: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
    for p in 0..pts.len() {
        let e = pts.edge_of(p);
        per_root.entry(uf.find(p)).or_insert_with(|| vec![0; w.len()])[e] += 1;
    }
    let mut out = BTreeMap::new();
    for v in per_root.into_values() {
        *out.entry(v).or_insert(0) += 1;
    }
    Ok(out)
}
