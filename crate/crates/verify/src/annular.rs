//! Star containment singles out annular vertices of D².

use dcx_core::VertexId;
use dcx_surface::{BundleKind, ComplexBundle, DomainClass, Result, SurfaceSig, VertexClass};
use rayon::prelude::*;

use crate::context::{settle, Context, Relation};
use crate::report::{CheckReport, Witness};
use crate::VerifyOptions;

const NONANNULAR: &str = "every non-annular vertex x has y != x with St(x) in St(y): the annulus over any essential boundary component of x";
const ANNULAR: &str = "an annular vertex x has St(x) contained in St(y) for no y != x";

pub(crate) fn excluded(sig: SurfaceSig) -> Option<&'static str> {
    (sig.genus == 1 && sig.holes == 1).then_some("torus with one hole")
}

/// Both directions of the characterization on a D² bundle. The first report
/// is exact (its witnesses are boundary annuli, always inside the
/// truncation); the second is a bounded scan.
/// A candidate pair and the heavier annulus (with its level) separating it, if any.
type Separation = (VertexId, Option<(DomainClass, u32)>);

pub fn check_annular_characterization(d2: &ComplexBundle, opts: &VerifyOptions) -> Result<Vec<CheckReport>> {
    d2.require_kind(BundleKind::D2)?;
    let ids = ["annular_characterization.nonannular", "annular_characterization.annular"];
    if let Some(why) = excluded(d2.surface()) {
        return Ok(vec![CheckReport::skipped(ids[0], NONANNULAR, why), CheckReport::skipped(ids[1], ANNULAR, why)]);
    }
    let ctx = Context::new(d2, opts.extra)?;
    let k = d2.complex();
    let vertices: Vec<VertexId> = k.vertices().collect();

    let mut exact = CheckReport::new(ids[0], NONANNULAR);
    for &x in &vertices {
        let dx = ctx.domain(x);
        if dx.is_annulus() {
            continue;
        }
        exact.count("nonannular", 1);
        for core in dx.boundary() {
            let y = d2.index_of(&VertexClass::Domain(DomainClass::Annulus { core }));
            match y {
                Some(y) if k.star_contained(x, y)? => exact.count("boundary_witnesses", 1),
                Some(y) => exact.fail(Witness::new(d2, &[x, y], "boundary annulus does not contain the star")),
                None => exact.fail(Witness::new(d2, &[x], "boundary annulus missing from the truncation")),
            }
        }
    }

    let mut scan = CheckReport::new(ids[1], ANNULAR);
    let per_x: Vec<(VertexId, Vec<Separation>)> = vertices
        .par_iter()
        .filter(|&&x| ctx.domain(x).is_annulus())
        .map(|&x| {
            let suspects = vertices
                .iter()
                .filter(|&&y| y != x && k.star_contained(x, y).unwrap_or(false))
                .map(|&y| Ok((y, ctx.separating_annulus(Relation::Star, ctx.domain(x), ctx.domain(y))?)))
                .collect::<Result<Vec<_>>>()?;
            Ok((x, suspects))
        })
        .collect::<Result<_>>()?;
    for (x, suspects) in per_x {
        scan.count("annular", 1);
        scan.count("pairs_scanned", vertices.len() as u64 - 1);
        if suspects.is_empty() {
            scan.count("separated_in_truncation", 1);
        }
        for (y, z) in suspects {
            scan.count("suspects", 1);
            settle(&mut scan, z, || Witness::new(d2, &[x, y], "containment not broken by extended annuli"));
        }
    }
    Ok(vec![exact, scan.bounded()])
}
