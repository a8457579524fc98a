//! Domain classes, their relative position, and codomains.
//!
//! A non-annular domain is a component of the complement of its essential
//! boundary; with at least one hole on the surface it is pinned down by
//! (boundary curves, sides of each boundary curve it occupies, genus, holes).
//! Relative questions are answered in the cut along the union of the two
//! boundaries, where each domain is a union of fine pieces ("support") and
//! may contain some of the other domain's boundary curves ("internal").

use std::collections::BTreeSet;
use std::fmt;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::CurveClass;
use crate::cut::Cut;
use crate::error::{Result, SurfaceError};
use crate::surface::Surface;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum DomainClass {
    Annulus {
        core: CurveClass,
    },
    Piece {
        /// essential boundary classes, sorted
        boundary: Vec<CurveClass>,
        /// sides of each boundary class occupied by the piece (1 or 2)
        sides: Vec<u8>,
        genus: u32,
        holes: Vec<u32>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DomainKind {
    Annulus,
    /// pair of pants with `peripheral` boundary circles on the boundary of
    /// the surface
    Pants { peripheral: u8 },
    Nonelementary { genus: u32, essential: u32, peripheral: u32 },
}

impl DomainKind {
    pub fn is_elementary(&self) -> bool {
        !matches!(self, DomainKind::Nonelementary { .. })
    }
}

/// How to select a domain from a system of curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Selection {
    Piece(usize),
    Annulus(CurveClass),
}

impl DomainClass {
    pub fn is_annulus(&self) -> bool {
        matches!(self, DomainClass::Annulus { .. })
    }

    /// Essential boundary classes, sorted.
    pub fn boundary(&self) -> Vec<CurveClass> {
        match self {
            DomainClass::Annulus { core } => vec![core.clone()],
            DomainClass::Piece { boundary, .. } => boundary.clone(),
        }
    }

    pub fn classify(&self) -> DomainKind {
        match self {
            DomainClass::Annulus { .. } => DomainKind::Annulus,
            DomainClass::Piece { sides, genus, holes, .. } => {
                let e: u32 = sides.iter().map(|&s| s as u32).sum();
                let p = holes.len() as u32;
                if *genus == 0 && e + p == 3 {
                    DomainKind::Pants { peripheral: p as u8 }
                } else {
                    DomainKind::Nonelementary { genus: *genus, essential: e, peripheral: p }
                }
            }
        }
    }

    pub fn is_biperipheral_pants(&self) -> bool {
        self.classify() == DomainKind::Pants { peripheral: 2 }
    }

    /// Maximum edge weight over the boundary classes.
    pub fn weight(&self) -> u32 {
        self.boundary().iter().map(|c| c.max_weight()).max().unwrap_or(0)
    }
}

impl fmt::Display for DomainClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainClass::Annulus { core } => write!(f, "A({core})"),
            DomainClass::Piece { boundary, sides, genus, holes } => {
                write!(f, "P(g={genus};h={holes:?}")?;
                for (c, s) in boundary.iter().zip(sides) {
                    write!(f, ";{c}x{s}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A domain seen inside a finer cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located {
    /// fine pieces making up the domain; empty for annuli
    pub support: BTreeSet<usize>,
    /// curves of the cut lying in the interior of the domain
    pub internal: BTreeSet<usize>,
    /// indices of the domain's boundary classes (the core, for an annulus)
    pub boundary: Vec<usize>,
}

/// One complementary component of a pair of disjoint domains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Codomain {
    pub annular: bool,
    pub touches_x: bool,
    pub touches_y: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Codomains {
    pub list: Vec<Codomain>,
    /// for each essential boundary side of X, the codomain it faces
    pub x_faces: Vec<usize>,
    pub y_faces: Vec<usize>,
}

impl Codomains {
    /// Annular codomains joining X to Y.
    pub fn joined(&self) -> usize {
        self.list.iter().filter(|c| c.annular && c.touches_x && c.touches_y).count()
    }

    pub fn annular_count(&self) -> usize {
        self.list.iter().filter(|c| c.annular).count()
    }
}

fn union_boundaries(x: &DomainClass, y: &DomainClass) -> Vec<CurveClass> {
    let mut m = x.boundary();
    m.extend(y.boundary());
    m.sort();
    m.dedup();
    m
}

impl Surface {
    /// The domain given by a piece of the cut along `curves`, or an annulus.
    pub fn domain_from_selection(&self, curves: &[CurveClass], sel: &Selection) -> Result<DomainClass> {
        match sel {
            Selection::Annulus(c) => {
                self.curve(c.weights())?;
                Ok(DomainClass::Annulus { core: c.clone() })
            }
            Selection::Piece(i) => {
                let cut = self.cut(curves)?;
                Self::piece_domain(&cut, *i)
            }
        }
    }

    pub(crate) fn piece_domain(cut: &Cut, i: usize) -> Result<DomainClass> {
        let p = cut.pieces.get(i).ok_or(SurfaceError::BadSelection(i))?;
        let mut boundary = Vec::new();
        let mut sides = Vec::new();
        for (c, &s) in cut.curves.iter().zip(&p.sides) {
            if s > 0 {
                boundary.push(c.clone());
                sides.push(s);
            }
        }
        if boundary.is_empty() {
            return Err(SurfaceError::WholeSurface);
        }
        Ok(DomainClass::Piece { boundary, sides, genus: p.genus, holes: p.holes.clone() })
    }

    /// Locates `x` in a cut whose curves include the boundary of `x`.
    pub fn locate(&self, cut: &Cut, x: &DomainClass) -> Result<Located> {
        let index = |c: &CurveClass| cut.index_of(c).ok_or_else(|| SurfaceError::Locate(format!("{c} not in cut")));
        match x {
            DomainClass::Annulus { core } => Ok(Located {
                support: BTreeSet::new(),
                internal: BTreeSet::new(),
                boundary: vec![index(core)?],
            }),
            DomainClass::Piece { boundary, sides, genus, holes } => {
                let bidx: Vec<usize> = boundary.iter().map(index).collect::<Result<_>>()?;
                let mut uf = UnionFind::<usize>::new(cut.pieces.len());
                for (j, s) in cut.curve_sides.iter().enumerate() {
                    if !bidx.contains(&j) {
                        uf.union(s[0], s[1]);
                    }
                }
                let labels = uf.into_labeling();
                let roots: BTreeSet<usize> = labels.iter().copied().collect();
                for r in roots {
                    let support: BTreeSet<usize> = (0..cut.pieces.len()).filter(|&p| labels[p] == r).collect();
                    let mut hs: Vec<u32> = support.iter().flat_map(|&p| cut.pieces[p].holes.iter().copied()).collect();
                    hs.sort();
                    if &hs != holes {
                        continue;
                    }
                    let csides: Vec<u8> = bidx
                        .iter()
                        .map(|&j| cut.curve_sides[j].iter().filter(|p| support.contains(p)).count() as u8)
                        .collect();
                    if &csides != sides {
                        continue;
                    }
                    let chi: i64 = support.iter().map(|&p| cut.pieces[p].euler).sum();
                    let nb = holes.len() as i64 + sides.iter().map(|&s| s as i64).sum::<i64>();
                    if 2 - chi - nb != 2 * *genus as i64 {
                        continue;
                    }
                    let internal = (0..cut.curves.len())
                        .filter(|j| !bidx.contains(j))
                        .filter(|&j| cut.curve_sides[j].iter().all(|p| support.contains(p)))
                        .collect();
                    return Ok(Located { support, internal, boundary: bidx });
                }
                Err(SurfaceError::Locate(format!("no component matches {x:?}")))
            }
        }
    }

    /// Whether two boundary systems consist of pairwise disjoint curves.
    fn boundaries_disjoint(&self, x: &DomainClass, y: &DomainClass) -> Result<bool> {
        for a in x.boundary() {
            for b in y.boundary() {
                if !self.disjoint(&a, &b)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether `x` and `y` have disjoint representatives. By convention a
    /// class is disjoint from itself (parallel copies); complexes never join a
    /// vertex to itself.
    pub fn domains_disjoint(&self, x: &DomainClass, y: &DomainClass) -> Result<bool> {
        if x == y {
            return Ok(true);
        }
        if !self.boundaries_disjoint(x, y)? {
            return Ok(false);
        }
        let cut = self.cut(&union_boundaries(x, y))?;
        let (lx, ly) = (self.locate(&cut, x)?, self.locate(&cut, y)?);
        Ok(match (x.is_annulus(), y.is_annulus()) {
            (true, true) => true,
            (true, false) => !ly.internal.contains(&lx.boundary[0]),
            (false, true) => !lx.internal.contains(&ly.boundary[0]),
            (false, false) => lx.support.is_disjoint(&ly.support),
        })
    }

    /// Whether `y` is (isotopic to) a domain on `x`, not isotopic to `x`.
    pub fn subdomain_of(&self, y: &DomainClass, x: &DomainClass) -> Result<bool> {
        if x == y || x.is_annulus() {
            return Ok(false);
        }
        if !self.boundaries_disjoint(x, y)? {
            return Ok(false);
        }
        let cut = self.cut(&union_boundaries(x, y))?;
        let (lx, ly) = (self.locate(&cut, x)?, self.locate(&cut, y)?);
        Ok(if y.is_annulus() {
            lx.internal.contains(&ly.boundary[0])
        } else {
            ly.support.is_subset(&lx.support) && ly.internal.is_empty()
        })
    }

    /// Codomains of two distinct disjoint domains.
    pub fn codomains(&self, x: &DomainClass, y: &DomainClass) -> Result<Codomains> {
        if x == y || !self.domains_disjoint(x, y)? {
            return Err(SurfaceError::InvalidSystem("codomains need distinct disjoint domains".into()));
        }
        let cut = self.cut(&union_boundaries(x, y))?;
        let (lx, ly) = (self.locate(&cut, x)?, self.locate(&cut, y)?);
        let np = cut.pieces.len();
        #[derive(Clone, Copy, PartialEq)]
        enum Owner {
            X,
            Y,
            Free,
        }
        let owner = |p: usize| {
            if lx.support.contains(&p) {
                Owner::X
            } else if ly.support.contains(&p) {
                Owner::Y
            } else {
                Owner::Free
            }
        };
        // nodes: fine pieces, then curve nodes appended as we go
        struct Node {
            free_piece: bool,
            tx: bool,
            ty: bool,
        }
        let mut nodes: Vec<Node> = (0..np)
            .map(|p| Node { free_piece: owner(p) == Owner::Free, tx: false, ty: false })
            .collect();
        let mut links: Vec<(usize, usize)> = Vec::new();
        let mut x_faces = Vec::new();
        let mut y_faces = Vec::new();
        let annulus_core = |l: &Located, d: &DomainClass| d.is_annulus().then(|| l.boundary[0]);
        let (cx, cy) = (annulus_core(&lx, x), annulus_core(&ly, y));
        for j in 0..cut.curves.len() {
            if lx.internal.contains(&j) || ly.internal.contains(&j) {
                continue;
            }
            let sides = cut.curve_sides[j];
            let core_owner = if cx == Some(j) {
                Some(Owner::X)
            } else if cy == Some(j) {
                Some(Owner::Y)
            } else {
                None
            };
            match core_owner {
                Some(o) => {
                    for &p in &sides {
                        let n = nodes.len();
                        let mut node = Node { free_piece: false, tx: o == Owner::X, ty: o == Owner::Y };
                        match owner(p) {
                            Owner::Free => links.push((n, p)),
                            Owner::X => {
                                node.tx = true;
                                x_faces.push(n);
                            }
                            Owner::Y => {
                                node.ty = true;
                                y_faces.push(n);
                            }
                        }
                        if o == Owner::X {
                            x_faces.push(n);
                        } else {
                            y_faces.push(n);
                        }
                        nodes.push(node);
                    }
                }
                None => {
                    let n = nodes.len();
                    let mut node = Node { free_piece: false, tx: false, ty: false };
                    for &p in &sides {
                        match owner(p) {
                            Owner::Free => links.push((n, p)),
                            Owner::X => {
                                node.tx = true;
                                x_faces.push(n);
                            }
                            Owner::Y => {
                                node.ty = true;
                                y_faces.push(n);
                            }
                        }
                    }
                    nodes.push(node);
                }
            }
        }
        let mut uf = UnionFind::<usize>::new(nodes.len());
        for &(a, b) in &links {
            uf.union(a, b);
        }
        // keep only components containing a free piece or a curve node
        let mut comp_index = std::collections::BTreeMap::new();
        let mut list: Vec<Codomain> = Vec::new();
        let mut node_comp = vec![usize::MAX; nodes.len()];
        for (n, node) in nodes.iter().enumerate() {
            if n < np && !node.free_piece {
                continue;
            }
            let r = uf.find_mut(n);
            let k = *comp_index.entry(r).or_insert_with(|| {
                list.push(Codomain { annular: true, touches_x: false, touches_y: false });
                list.len() - 1
            });
            node_comp[n] = k;
            let c = &mut list[k];
            c.annular &= !node.free_piece;
            c.touches_x |= node.tx;
            c.touches_y |= node.ty;
        }
        Ok(Codomains {
            list,
            x_faces: x_faces.into_iter().map(|n| node_comp[n]).collect(),
            y_faces: y_faces.into_iter().map(|n| node_comp[n]).collect(),
        })
    }

    /// All domain classes whose boundary curves have weight at most `bound`:
    /// annuli over every enumerated curve, and every complementary piece of
    /// every system of enumerated curves that is bounded by the whole system.
    pub fn enumerate_domains(&self, bound: u32) -> Result<Vec<DomainClass>> {
        let curves = self.enumerate_curves(bound);
        self.domains_over(&curves)
    }

    /// Domains whose boundary curves all belong to `curves`.
    pub fn domains_over(&self, curves: &[CurveClass]) -> Result<Vec<DomainClass>> {
        let n = curves.len();
        let adj: Vec<Vec<bool>> = (0..n)
            .into_par_iter()
            .map(|i| (0..n).map(|j| i != j && self.disjoint(&curves[i], &curves[j]).unwrap_or(false)).collect())
            .collect();
        // systems = cliques, listed in increasing index order
        let mut systems: Vec<Vec<usize>> = Vec::new();
        let mut stack: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        while let Some(s) = stack.pop() {
            let last = *s.last().unwrap();
            for k in last + 1..n {
                if s.iter().all(|&i| adj[i][k]) {
                    let mut t = s.clone();
                    t.push(k);
                    stack.push(t);
                }
            }
            systems.push(s);
        }
        let pieces: Vec<Vec<DomainClass>> = systems
            .par_iter()
            .map(|s| {
                let m: Vec<CurveClass> = s.iter().map(|&i| curves[i].clone()).collect();
                let cut = crate::cut::cut(self.triangulation(), &m)?;
                let mut out = Vec::new();
                for (i, p) in cut.pieces.iter().enumerate() {
                    if p.sides.iter().all(|&k| k > 0) {
                        out.push(Self::piece_domain(&cut, i)?);
                    }
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
        let mut all: BTreeSet<DomainClass> = curves.iter().map(|c| DomainClass::Annulus { core: c.clone() }).collect();
        all.extend(pieces.into_iter().flatten());
        Ok(all.into_iter().collect())
    }
}
