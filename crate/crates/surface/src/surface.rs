use rayon::prelude::*;

use crate::curve::{CurveClass, CurveStatus, MultiCurve};
use crate::cut::{self, Cut};
use crate::error::{Result, SurfaceError};
use crate::normal;
use crate::triangulation::{SurfaceSig, Triangulation};

/// A supported surface together with its standard triangulation.
#[derive(Clone, Debug)]
pub struct Surface {
    sig: SurfaceSig,
    tri: Triangulation,
    links: Vec<Vec<u32>>,
}

impl Surface {
    pub fn new(sig: SurfaceSig) -> Result<Self> {
        let tri = Triangulation::standard(sig)?;
        let links = (0..sig.holes).map(|h| tri.hole_link(h)).collect();
        Ok(Surface { sig, tri, links })
    }

    pub fn sig(&self) -> SurfaceSig {
        self.sig
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.tri
    }

    pub fn edge_count(&self) -> usize {
        self.tri.edge_count()
    }

    pub fn hole_link(&self, h: u32) -> &[u32] {
        &self.links[h as usize]
    }

    pub fn trace(&self, w: &[u32]) -> Result<MultiCurve> {
        normal::trace(&self.tri, w)
    }

    /// Status of a connected weight vector.
    pub fn status(&self, w: &[u32]) -> Result<CurveStatus> {
        let m = self.trace(w)?;
        if m.len() != 1 || m.values().next() != Some(&1) {
            return Err(SurfaceError::Disconnected);
        }
        Ok(match self.links.iter().position(|l| l == w) {
            Some(h) => CurveStatus::VertexLinking(h as u32),
            None => CurveStatus::Essential,
        })
    }

    /// Checked construction of an essential curve class.
    pub fn curve(&self, w: &[u32]) -> Result<CurveClass> {
        match self.status(w)? {
            CurveStatus::Essential => Ok(CurveClass::from_weights_unchecked(w.to_vec())),
            CurveStatus::VertexLinking(h) => Err(SurfaceError::NotEssential(h)),
        }
    }

    pub fn is_essential(&self, c: &CurveClass) -> Result<bool> {
        Ok(self.status(c.weights())? == CurveStatus::Essential)
    }

    /// Whether `a` and `b` have disjoint representatives: the sum of their
    /// coordinates traces to exactly `{a, b}`.
    pub fn disjoint(&self, a: &CurveClass, b: &CurveClass) -> Result<bool> {
        let n = self.edge_count();
        for c in [a, b] {
            if c.weights().len() != n {
                return Err(SurfaceError::WrongLength { expected: n, got: c.weights().len() });
            }
        }
        if a == b {
            return Ok(true);
        }
        let sum: Vec<u32> = a.weights().iter().zip(b.weights()).map(|(x, y)| x + y).collect();
        let m = self.trace(&sum)?;
        Ok(m.len() == 2 && m.get(a.weights()) == Some(&1) && m.get(b.weights()) == Some(&1))
    }

    /// All admissible weight vectors with entries in `0..=bound`, excluding 0.
    fn admissible_vectors(&self, bound: u32) -> Vec<Vec<u32>> {
        let n = self.edge_count();
        // triangles become checkable once their largest edge is assigned
        let mut ready: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (t, tri) in self.tri.triangles().iter().enumerate() {
            ready[tri.iter().map(|s| s.edge).max().unwrap()].push(t);
        }
        let mut out = Vec::new();
        let mut w = vec![0u32; n];
        fn go(s: &Surface, k: usize, bound: u32, w: &mut Vec<u32>, ready: &[Vec<usize>], out: &mut Vec<Vec<u32>>) {
            if k == w.len() {
                if w.iter().any(|&x| x > 0) {
                    out.push(w.clone());
                }
                return;
            }
            for v in 0..=bound {
                w[k] = v;
                if ready[k].iter().all(|&t| normal::corner_counts(&s.tri, w, t).is_some()) {
                    go(s, k + 1, bound, w, ready, out);
                }
            }
            w[k] = 0;
        }
        go(self, 0, bound, &mut w, &ready, &mut out);
        out
    }

    /// All essential curve classes with every edge weight at most `bound`,
    /// sorted.
    pub fn enumerate_curves(&self, bound: u32) -> Vec<CurveClass> {
        let vectors = self.admissible_vectors(bound);
        let mut out: Vec<CurveClass> = vectors
            .into_par_iter()
            .filter(|w| matches!(self.status(w), Ok(CurveStatus::Essential)))
            .map(CurveClass::from_weights_unchecked)
            .collect();
        out.sort();
        out
    }

    /// Searches curves up to `bound` for one that meets `alpha` and misses
    /// every other member of `family`. `None` is a search failure only.
    pub fn find_distinguishing_curve(
        &self,
        family: &[CurveClass],
        alpha: &CurveClass,
        bound: u32,
    ) -> Result<Option<CurveClass>> {
        if !family.contains(alpha) {
            return Err(SurfaceError::NotInCollection);
        }
        for g in self.enumerate_curves(bound) {
            if self.disjoint(&g, alpha)? {
                continue;
            }
            let mut ok = true;
            for b in family.iter().filter(|b| *b != alpha) {
                if !self.disjoint(&g, b)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(Some(g));
            }
        }
        Ok(None)
    }

    /// Complementary pieces of a system of curves.
    pub fn cut(&self, curves: &[CurveClass]) -> Result<Cut> {
        for c in curves {
            self.curve(c.weights()).map_err(|e| SurfaceError::InvalidSystem(e.to_string()))?;
        }
        cut::cut(&self.tri, curves)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(g: u32, b: u32) -> Surface {
        Surface::new(SurfaceSig::new(g, b)).unwrap()
    }

    #[test]
    fn zero_bound_gives_no_curves() {
        assert!(s(0, 5).enumerate_curves(0).is_empty());
        assert!(s(1, 1).enumerate_curves(0).is_empty());
    }

    #[test]
    fn unsupported_surface() {
        assert!(matches!(Surface::new(SurfaceSig::new(0, 3)), Err(SurfaceError::Unsupported(..))));
    }

    #[test]
    fn hole_links_are_not_essential() {
        let s = s(0, 4);
        for h in 0..4 {
            assert_eq!(s.status(s.hole_link(h)).unwrap(), CurveStatus::VertexLinking(h));
            assert_eq!(s.curve(s.hole_link(h)), Err(SurfaceError::NotEssential(h)));
        }
    }

    #[test]
    fn enumerated_curves_are_sorted_and_bounded() {
        let s = s(1, 2);
        let cs = s.enumerate_curves(2);
        assert!(!cs.is_empty());
        assert!(cs.windows(2).all(|p| p[0] < p[1]));
        assert!(cs.iter().all(|c| c.max_weight() <= 2 && s.is_essential(c).unwrap()));
    }

    #[test]
    fn disjointness_is_reflexive_and_symmetric() {
        let s = s(0, 5);
        let cs = s.enumerate_curves(2);
        for a in &cs {
            assert!(s.disjoint(a, a).unwrap());
            for b in &cs {
                assert_eq!(s.disjoint(a, b).unwrap(), s.disjoint(b, a).unwrap());
            }
        }
    }

    #[test]
    fn distinguishing_curve_search() {
        let s = s(0, 5);
        let cs = s.enumerate_curves(2);
        let a = &cs[0];
        let b = cs.iter().find(|b| *b != a && s.disjoint(a, b).unwrap()).unwrap();
        let fam = vec![a.clone(), b.clone()];
        let g = s.find_distinguishing_curve(&fam, a, 2).unwrap().unwrap();
        assert!(!s.disjoint(&g, a).unwrap());
        assert!(s.disjoint(&g, b).unwrap());
        assert_eq!(s.find_distinguishing_curve(&fam, a, 0).unwrap(), None);
        assert_eq!(
            s.find_distinguishing_curve(&fam, cs.iter().find(|c| !fam.contains(c)).unwrap(), 2).unwrap_err(),
            SurfaceError::NotInCollection
        );
    }
}
