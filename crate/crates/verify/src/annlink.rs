//! Annular links `Ann(x)` in D: nesting and equality.

use dcx_core::VertexId;
use dcx_surface::{BundleKind, Codomains, ComplexBundle, DomainClass, DomainKind, Result, SurfaceSig};
use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::context::{settle, Context, Relation};
use crate::report::{CheckReport, Witness};
use crate::VerifyOptions;

pub(crate) fn sphere4_or_small_torus(sig: SurfaceSig) -> Option<&'static str> {
    if sig.is_sphere_with_four_holes() {
        Some("sphere with four holes")
    } else if sig.is_torus_with_at_most_one_hole() {
        Some("torus with at most one hole")
    } else {
        None
    }
}

/// Annulus `x`, biperipheral pants `y`, two codomains of which exactly one is
/// an annulus joining them.
pub fn biperipheral_configuration(dx: &DomainClass, dy: &DomainClass, c: &Codomains) -> bool {
    dx.is_annulus() && dy.is_biperipheral_pants() && c.list.len() == 2 && c.annular_count() == 1 && c.joined() == 1
}

/// `y` a pants each of whose essential boundary components faces an annular
/// codomain touching `x`.
pub fn pants_joined_configuration(dy: &DomainClass, c: &Codomains) -> bool {
    matches!(dy.classify(), DomainKind::Pants { .. })
        && !c.y_faces.is_empty()
        && c.y_faces.iter().all(|&k| c.list[k].annular && c.list[k].touches_x)
}

/// Two monoperipheral pants on the torus with two holes with exactly two
/// codomains, both annuli joining them.
pub fn twin_pants_configuration(sig: SurfaceSig, dx: &DomainClass, dy: &DomainClass, c: &Codomains) -> bool {
    let mono = DomainKind::Pants { peripheral: 1 };
    sig == SurfaceSig::new(1, 2)
        && dx.classify() == mono
        && dy.classify() == mono
        && c.list.len() == 2
        && c.joined() == 2
}

struct Pair {
    x: VertexId,
    y: VertexId,
    adjacent: bool,
    x_in_y: bool,
    y_in_x: bool,
}

const STATEMENTS: [(&str, &str); 9] = [
    ("nested_annular_links.if", "annulus x and biperipheral pants y joined by the unique annular codomain: Ann(x) in Ann(y)"),
    ("nested_annular_links.only_if", "annular x, y != x, Ann(x) in Ann(y): (x, y) is an annulus and a biperipheral pants so joined"),
    ("equal_annular_links.only_if", "annular x with Ann(x) = Ann(y) forces x = y"),
    ("nested_annular_links_on_edges.if", "edge (x, y) with y a pants whose essential boundary is joined to x by annuli: Ann(x) in Ann(y)"),
    ("nested_annular_links_on_edges.only_if", "edge (x, y) with Ann(x) in Ann(y): y is a pants joined to x by annuli along its essential boundary"),
    ("nested_annular_links_off_edges.if", "non-adjacent x, y with y a domain on x: Ann(x) in Ann(y)"),
    ("nested_annular_links_off_edges.only_if", "non-adjacent x, y with Ann(x) in Ann(y): y is a domain on x"),
    ("equal_annular_links.if", "twin monoperipheral pants on the torus with two holes: Ann(x) = Ann(y)"),
    ("equal_annular_links_general.only_if", "x != y with Ann(x) = Ann(y): twin monoperipheral pants on the torus with two holes"),
];

fn report(i: usize) -> CheckReport {
    CheckReport::new(STATEMENTS[i].0, STATEMENTS[i].1)
}

/// Records a suspect pair: containment (or equality) holds in the
/// truncation but no listed configuration applies. Tries to break it with an
/// extended annulus in `Ann(x) \ Ann(y)` (or either difference when
/// `both`).
fn suspect(ctx: &Context, r: &mut CheckReport, x: VertexId, y: VertexId, both: bool) -> Result<()> {
    r.count("suspects", 1);
    let (dx, dy) = (ctx.domain(x), ctx.domain(y));
    let mut z = ctx.separating_annulus(Relation::Ann, dx, dy)?;
    if z.is_none() && both {
        z = ctx.separating_annulus(Relation::Ann, dy, dx)?;
    }
    settle(r, z, || Witness::new(ctx.bundle, &[x, y], "relation not broken by extended annuli"));
    Ok(())
}

/// The annular-link statements on a D bundle.
pub fn check_ann_link_suite(d: &ComplexBundle, opts: &VerifyOptions) -> Result<Vec<CheckReport>> {
    d.require_kind(BundleKind::D)?;
    let sig = d.surface();
    let ctx = Context::new(d, opts.extra)?;
    let k = d.complex();
    let mask = ctx.annular_mask();
    let ann: Vec<FixedBitSet> = ctx.ann_bits(&mask);
    let sub = ctx.nesting();
    let vertices: Vec<VertexId> = k.vertices().collect();

    // every ordered pair where some relation of interest holds
    let pairs: Vec<Pair> = vertices
        .par_iter()
        .flat_map_iter(|&x| {
            let ann = &ann;
            vertices.iter().filter(move |&&y| y != x).filter_map(move |&y| {
                let adjacent = k.adjacent(x, y);
                let x_in_y = ann[x.index()].is_subset(&ann[y.index()]);
                let y_in_x = ann[y.index()].is_subset(&ann[x.index()]);
                let relevant = x_in_y || adjacent || sub[x.index()].contains(y.index());
                relevant.then_some(Pair { x, y, adjacent, x_in_y, y_in_x })
            })
        })
        .collect();

    let excluded = sphere4_or_small_torus(sig);
    let mut r: Vec<CheckReport> = (0..STATEMENTS.len()).map(report).collect();
    for p in &pairs {
        let (x, y) = (p.x, p.y);
        let (dx, dy) = (ctx.domain(x), ctx.domain(y));
        let cod = if p.adjacent { ctx.codomains(x, y) } else { None };
        let bip = cod.as_ref().is_some_and(|c| biperipheral_configuration(dx, dy, c));
        let joined = cod.as_ref().is_some_and(|c| pants_joined_configuration(dy, c));
        let nested = sub[x.index()].contains(y.index());
        let twin = cod.as_ref().is_some_and(|c| twin_pants_configuration(sig, dx, dy, c));
        let equal = p.x_in_y && p.y_in_x;

        if excluded.is_none() {
            if bip {
                r[0].count("configured_pairs", 1);
                if !p.x_in_y {
                    r[0].fail(Witness::new(d, &[x, y], "configured pair without containment"));
                }
            }
            if dx.is_annulus() && p.x_in_y {
                r[1].count("containments", 1);
                if !bip {
                    suspect(&ctx, &mut r[1], x, y, false)?;
                }
            }
            if dx.is_annulus() && equal {
                r[2].count("equalities", 1);
                suspect(&ctx, &mut r[2], x, y, true)?;
            }
            if !p.adjacent && nested {
                r[5].count("configured_pairs", 1);
                if !p.x_in_y {
                    r[5].fail(Witness::new(d, &[x, y], "domain on x without containment"));
                }
            }
            if !p.adjacent && p.x_in_y {
                r[6].count("containments", 1);
                if !nested {
                    suspect(&ctx, &mut r[6], x, y, false)?;
                }
            }
            if twin && x < y {
                r[7].count("configured_pairs", 1);
                if !equal {
                    r[7].fail(Witness::new(d, &[x, y], "twin pants without equal annular links"));
                }
            }
            if equal && x < y {
                r[8].count("equalities", 1);
                if twin {
                    r[8].count("twin_pants", 1);
                    r[8].witnesses.push(Witness::new(d, &[x, y], "twin monoperipheral pants"));
                } else {
                    suspect(&ctx, &mut r[8], x, y, true)?;
                }
            }
        }
        if p.adjacent {
            if joined {
                r[3].count("configured_pairs", 1);
                if !p.x_in_y {
                    r[3].fail(Witness::new(d, &[x, y], "configured edge without containment"));
                }
            }
            if p.x_in_y {
                r[4].count("containments", 1);
                if !joined {
                    suspect(&ctx, &mut r[4], x, y, false)?;
                }
            }
        }
    }
    if let Some(why) = excluded {
        for i in [0, 1, 2, 5, 6, 7, 8] {
            r[i] = CheckReport::skipped(STATEMENTS[i].0, STATEMENTS[i].1, why);
        }
    }
    // witness lists keep a bounded sample
    r[8].witnesses.truncate(16);
    for i in [1, 2, 4, 6, 8] {
        r[i] = std::mem::replace(&mut r[i], report(i)).bounded();
    }
    Ok(r)
}
