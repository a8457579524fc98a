//! Fibers of the projection, the nesting order on domains, and the slope
//! model of the two sporadic surfaces.

use dcx_core::VertexId;
use dcx_surface::{BundleKind, ComplexBundle, Result, Surface, SurfaceSig};

use crate::context::Context;
use crate::report::{CheckReport, Witness};
use crate::VerifyOptions;

const FIBERS: &str = "fibers of the projection to D2 are singletons or biperipheral edges; on the sphere with four holes, triangles";

pub fn check_fibers(d: &ComplexBundle) -> Result<CheckReport> {
    d.require_kind(BundleKind::D)?;
    let k = d.complex();
    let s04 = d.surface().is_sphere_with_four_holes();
    let pairs = d.biperipheral_pairs()?;
    let mut r = CheckReport::new("projection_fibers", FIBERS);
    for fiber in d.fibers()? {
        match fiber.len() {
            1 => r.count("singletons", 1),
            2 => {
                let (a, b) = (fiber[0], fiber[1]);
                if pairs.contains(&(a, b)) || pairs.contains(&(b, a)) {
                    r.count("biperipheral_edges", 1);
                } else {
                    r.fail(Witness::new(d, &fiber, "two-point fiber that is not a biperipheral edge"));
                }
            }
            3 if s04 => {
                let clique = fiber.iter().all(|&a| fiber.iter().all(|&b| a == b || k.adjacent(a, b)));
                let annuli = fiber.iter().filter(|&&v| d.domain(v).is_some_and(|x| x.is_annulus())).count();
                if clique && annuli == 1 {
                    r.count("triangles", 1);
                    if r.witnesses.len() < 4 {
                        r.witnesses.push(Witness::new(d, &fiber, "triangle fiber: annulus and the pants on both sides"));
                    }
                } else {
                    r.fail(Witness::new(d, &fiber, "three-point fiber that is not a triangle"));
                }
            }
            _ => r.fail(Witness::new(d, &fiber, "unexpected fiber")),
        }
    }
    Ok(r)
}

const NESTING: &str = "'is a domain on' is irreflexive, antisymmetric and transitive on enumerated domains";

/// Antisymmetry over all pairs; transitivity over every chain `z ⊂ y ⊂ x`
/// in the truncation.
pub fn check_nesting(d: &ComplexBundle, opts: &VerifyOptions) -> Result<CheckReport> {
    if d.kind() == BundleKind::C {
        d.require_kind(BundleKind::D)?;
    }
    let ctx = Context::new(d, opts.extra)?;
    let sub = ctx.nesting();
    let mut r = CheckReport::new("nesting_order", NESTING);
    for x in d.complex().vertices() {
        let row = &sub[x.index()];
        if row.contains(x.index()) {
            r.fail(Witness::new(d, &[x], "domain on itself"));
        }
        for y in row.ones() {
            r.count("nested_pairs", 1);
            if sub[y].contains(x.index()) {
                r.fail(Witness::new(d, &[x, VertexId(y as u32)], "nested both ways"));
            }
            r.count("chains", sub[y].count_ones(..) as u64);
            if let Some(z) = sub[y].difference(row).next() {
                r.fail(Witness::new(d, &[x, VertexId(y as u32), VertexId(z as u32)], "z in y in x but not z in x"));
            }
        }
    }
    Ok(r)
}

/// Slope read off three edge weights `(x, y, z)`, one of which is the sum
/// or difference of the other two.
fn slope(x: u32, y: u32, z: u32) -> Option<(i64, i64)> {
    let (x, y, z) = (x as i64, y as i64, z as i64);
    if z == (x - y).abs() && z != x + y {
        Some((x, y))
    } else if z == x + y {
        Some((x, -y))
    } else {
        None
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Primitive `(p, q)` up to sign with `max(|p|, |q|, |p - q|) ≤ w`.
pub fn slope_count(w: u32) -> usize {
    let w = w as i64;
    let mut n = 0;
    for p in -w..=w {
        for q in -w..=w {
            if gcd(p, q) == 1 && (p - q).abs() <= w && (p > 0 || (p == 0 && q > 0)) {
                n += 1;
            }
        }
    }
    n
}

/// One edge from each pair of edges whose weights always agree (opposite
/// edges of the tetrahedron), or all three edges of the torus.
fn slope_edges(s: &Surface) -> Vec<usize> {
    let t = s.triangulation();
    if s.sig() == SurfaceSig::new(1, 1) {
        return vec![0, 1, 2];
    }
    let ends = |e: usize| {
        let (tt, i) = t.edge_sides(e)[0];
        [t.corner_hole(tt, i), t.corner_hole(tt, (i + 1) % 3)]
    };
    let mut reps: Vec<usize> = Vec::new();
    for e in 0..t.edge_count() {
        let opposite = (0..t.edge_count()).find(|&f| ends(f).iter().all(|h| !ends(e).contains(h)));
        if !opposite.is_some_and(|o| reps.contains(&o)) {
            reps.push(e);
        }
    }
    reps
}

const SLOPES: &str = "on the torus with one hole and the sphere with four holes, curves are slopes and distinct slopes always meet";

/// Curve count and disjointness on a C bundle against the slope model.
pub fn check_slopes(c: &ComplexBundle) -> Result<CheckReport> {
    c.require_kind(BundleKind::C)?;
    let sig = c.surface();
    if sig != SurfaceSig::new(1, 1) && !sig.is_sphere_with_four_holes() {
        return Ok(CheckReport::skipped("slope_model", SLOPES, "surface is not classified by slopes"));
    }
    let s = Surface::new(sig)?;
    let reps = slope_edges(&s);
    let mut r = CheckReport::new("slope_model", SLOPES);
    if c.len() != slope_count(c.weight_bound()) {
        r.fail(Witness::plain(vec![c.len() as u32], format!("expected {} slopes", slope_count(c.weight_bound()))));
    }
    let mut slopes = Vec::with_capacity(c.len());
    for v in c.complex().vertices() {
        let w = c.class(v).as_curve().expect("curve bundle").weights();
        match slope(w[reps[0]], w[reps[1]], w[reps[2]]) {
            Some(p) => slopes.push(p),
            None => {
                r.fail(Witness::new(c, &[v], "weights are not a slope triple"));
                return Ok(r);
            }
        }
    }
    for a in c.complex().vertices() {
        for b in c.complex().vertices() {
            let (p, q) = (slopes[a.index()], slopes[b.index()]);
            let oracle = p.0 * q.1 - p.1 * q.0 == 0;
            let ca = c.class(a).as_curve().unwrap();
            let cb = c.class(b).as_curve().unwrap();
            r.count("pairs", 1);
            let adjacent_or_equal = a == b || c.complex().adjacent(a, b);
            if s.disjoint(ca, cb)? != oracle || adjacent_or_equal != oracle {
                r.fail(Witness::new(c, &[a, b], "disjointness disagrees with the slope determinant"));
            }
        }
    }
    r.count("edges", c.complex().edge_count() as u64);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Status;

    fn bundle(g: u32, b: u32, kind: BundleKind, w: u32) -> ComplexBundle {
        ComplexBundle::build(&Surface::new(SurfaceSig::new(g, b)).unwrap(), kind, w).unwrap()
    }

    #[test]
    fn slope_counts() {
        assert_eq!(slope_count(1), 3);
        assert_eq!(slope_count(2), 6);
        assert_eq!(slope(1, 1, 0), Some((1, 1)));
        assert_eq!(slope(1, 1, 2), Some((1, -1)));
        assert_eq!(slope(1, 1, 1), None);
    }

    #[test]
    fn fibers() {
        let r = check_fibers(&bundle(0, 5, BundleKind::D, 1)).unwrap();
        assert_eq!(r.status, Status::Verified);
        assert_eq!(r.counts["biperipheral_edges"], 9);
        let r = check_fibers(&bundle(0, 4, BundleKind::D, 1)).unwrap();
        assert_eq!(r.counts["triangles"], 3);
    }

    #[test]
    fn nesting_on_a_deeper_surface() {
        let r = check_nesting(&bundle(1, 3, BundleKind::D, 1), &VerifyOptions::default()).unwrap();
        assert!(r.passed());
        assert!(r.counts["chains"] > 0);
    }

    #[test]
    fn slopes_on_curve_complexes() {
        for (g, b) in [(1, 1), (0, 4)] {
            let r = check_slopes(&bundle(g, b, BundleKind::C, 3)).unwrap();
            assert_eq!(r.status, Status::Verified);
            assert_eq!(r.counts["edges"], 0);
        }
        let r = check_slopes(&bundle(0, 5, BundleKind::C, 1)).unwrap();
        assert_eq!(r.status, Status::Skipped);
    }
}
