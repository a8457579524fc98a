//! Cutting along a system of curves.
//!
//! The curves of the system are drawn together in normal position. Each
//! triangle is divided by its arcs into one central region plus one region
//! per corner arc (the region between that arc and the previous one, or the
//! corner itself for depth 0). Regions glue across edge segments; the classes
//! are the complementary pieces. Every region is a disk and every segment an
//! open interval, so `χ(piece) = #regions − #segments`.

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::curve::CurveClass;
use crate::error::{Result, SurfaceError};
use crate::normal::{check_admissible, components, corner_counts};
use crate::triangulation::Triangulation;

/// A complementary component of a system of curves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub genus: u32,
    /// holes contained in the piece
    pub holes: Vec<u32>,
    /// for each curve of the system (in order), how many of its sides lie in
    /// this piece: 0, 1 or 2
    pub sides: Vec<u8>,
    pub euler: i64,
}

impl Piece {
    pub fn boundary_count(&self) -> usize {
        self.holes.len() + self.essential_sides()
    }

    pub fn essential_sides(&self) -> usize {
        self.sides.iter().map(|&s| s as usize).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    /// the system, sorted
    pub curves: Vec<CurveClass>,
    pub pieces: Vec<Piece>,
    /// the pieces on the two sides of each curve
    pub curve_sides: Vec<[usize; 2]>,
}

impl Cut {
    pub fn index_of(&self, c: &CurveClass) -> Option<usize> {
        self.curves.binary_search(c).ok()
    }
}

/// Cuts along `curves`, which must be distinct, pairwise disjoint, connected
/// and essential (not checked beyond what tracing reveals).
pub fn cut(tri: &Triangulation, curves: &[CurveClass]) -> Result<Cut> {
    let mut curves = curves.to_vec();
    curves.sort();
    if curves.windows(2).any(|p| p[0] == p[1]) {
        return Err(SurfaceError::InvalidSystem("repeated curve".into()));
    }
    let mut x = vec![0u32; tri.edge_count()];
    for c in &curves {
        if c.weights().len() != x.len() {
            return Err(SurfaceError::WrongLength { expected: x.len(), got: c.weights().len() });
        }
        for (a, b) in x.iter_mut().zip(c.weights()) {
            *a += b;
        }
    }
    check_admissible(tri, &x)?;
    let (pts, mut uf, arcs) = components(tri, &x);

    // assign each component to its curve
    let mut comp_weights: std::collections::BTreeMap<usize, Vec<u32>> = Default::default();
    for p in 0..pts.len() {
        comp_weights.entry(uf.find_mut(p)).or_insert_with(|| vec![0; x.len()])[pts.edge_of(p)] += 1;
    }
    if comp_weights.len() != curves.len() {
        return Err(SurfaceError::InvalidSystem(format!(
            "{} curves drawn together give {} components",
            curves.len(),
            comp_weights.len()
        )));
    }
    let mut curve_of_root = std::collections::HashMap::new();
    for (root, w) in comp_weights {
        let j = curves
            .iter()
            .position(|c| c.weights() == &w[..])
            .ok_or_else(|| SurfaceError::InvalidSystem("curves are not disjoint".into()))?;
        if curve_of_root.values().any(|&k| k == j) {
            return Err(SurfaceError::InvalidSystem("curves are not disjoint".into()));
        }
        curve_of_root.insert(root, j);
    }

    // regions
    let corners: Vec<[u32; 3]> = (0..tri.triangle_count())
        .map(|t| corner_counts(tri, &x, t).expect("admissible"))
        .collect();
    let mut base = Vec::with_capacity(corners.len() + 1);
    let mut acc = 0usize;
    for c in &corners {
        base.push(acc);
        acc += 1 + c.iter().map(|&k| k as usize).sum::<usize>();
    }
    let region_count = acc;
    let central = |t: usize| base[t];
    let corner_region = |t: usize, i: usize, k: u32| {
        let c = corners[t];
        let off: u32 = c[..i].iter().sum();
        base[t] + 1 + (off + k) as usize
    };
    let segment_region = |t: usize, i: usize, s: u32| {
        let c = corners[t];
        let xi = x[tri.side(t, i).edge];
        if s < c[i] {
            corner_region(t, i, s)
        } else if s == c[i] {
            central(t)
        } else {
            corner_region(t, (i + 1) % 3, xi - s)
        }
    };

    let mut ruf = UnionFind::<usize>::new(region_count);
    let mut segments = Vec::new();
    for e in 0..tri.edge_count() {
        let [(t, i), (u, k)] = tri.edge_sides(e);
        for q in 0..=x[e] {
            let a = segment_region(t, i, q);
            let b = segment_region(u, k, x[e] - q);
            ruf.union(a, b);
            segments.push(a);
        }
    }

    // number pieces by smallest region
    let mut piece_of_root = std::collections::HashMap::new();
    let mut piece_of_region = vec![0usize; region_count];
    for (r, slot) in piece_of_region.iter_mut().enumerate() {
        let root = ruf.find_mut(r);
        let n = piece_of_root.len();
        *slot = *piece_of_root.entry(root).or_insert(n);
    }
    let n_pieces = piece_of_root.len();
    let mut euler = vec![0i64; n_pieces];
    for &p in &piece_of_region {
        euler[p] += 1;
    }
    for &r in &segments {
        euler[piece_of_region[r]] -= 1;
    }

    let mut holes = vec![Vec::new(); n_pieces];
    for h in 0..tri.hole_count() as u32 {
        let (t, i) = (0..tri.triangle_count())
            .flat_map(|t| (0..3).map(move |i| (t, i)))
            .find(|&(t, i)| tri.corner_hole(t, i) == h)
            .expect("every hole has a corner");
        let r = if corners[t][i] > 0 { corner_region(t, i, 0) } else { central(t) };
        holes[piece_of_region[r]].push(h);
    }

    let mut curve_sides: Vec<Option<[usize; 2]>> = vec![None; curves.len()];
    for &(arc, a, _) in &arcs {
        let j = curve_of_root[&uf.find_mut(a)];
        if curve_sides[j].is_some() {
            continue;
        }
        let inner = corner_region(arc.t, arc.corner, arc.depth);
        let outer = if arc.depth + 1 < corners[arc.t][arc.corner] {
            corner_region(arc.t, arc.corner, arc.depth + 1)
        } else {
            central(arc.t)
        };
        curve_sides[j] = Some([piece_of_region[inner], piece_of_region[outer]]);
    }
    let curve_sides: Vec<[usize; 2]> = curve_sides.into_iter().map(|s| s.expect("curve has arcs")).collect();

    let mut pieces = Vec::with_capacity(n_pieces);
    for p in 0..n_pieces {
        let sides: Vec<u8> = curve_sides.iter().map(|s| s.iter().filter(|&&q| q == p).count() as u8).collect();
        let nb = holes[p].len() as i64 + sides.iter().map(|&s| s as i64).sum::<i64>();
        let twice_genus = 2 - euler[p] - nb;
        if twice_genus < 0 || twice_genus % 2 != 0 {
            return Err(SurfaceError::InvalidSystem(format!("piece {p} has impossible topology")));
        }
        pieces.push(Piece { genus: (twice_genus / 2) as u32, holes: std::mem::take(&mut holes[p]), sides, euler: euler[p] });
    }
    Ok(Cut { curves, pieces, curve_sides })
}
