//! Nested and equal stars in D.

use dcx_core::VertexId;
use dcx_surface::{BundleKind, Codomains, ComplexBundle, DomainClass, DomainKind, Result, SurfaceSig};
use rayon::prelude::*;

use crate::context::{settle, Context, Relation};
use crate::report::{CheckReport, Witness};
use crate::VerifyOptions;

/// Case of an edge `(x, y)` among the configurations giving
/// `St(x) ⊆ St(y)`.
pub fn nested_case(dx: &DomainClass, dy: &DomainClass, c: &Codomains) -> Option<char> {
    let j = c.joined();
    if dy.is_annulus() {
        return match (dx.is_annulus(), j) {
            (false, 1) => Some('a'),
            (false, 2) => Some('b'),
            _ => None,
        };
    }
    let DomainKind::Pants { peripheral } = dy.classify() else {
        return None;
    };
    if !c.y_faces.iter().all(|&k| c.list[k].annular && c.list[k].touches_x) {
        return None;
    }
    match (peripheral, j) {
        (2, 1) => Some('c'),
        (1, 2) => Some('d'),
        (0, 3) => Some('e'),
        _ => None,
    }
}

/// Case of an edge `(x, y)` among the configurations giving
/// `St(x) = St(y)`. The closed genus-two case cannot arise on a surface
/// with holes.
pub fn equal_case(sig: SurfaceSig, dx: &DomainClass, dy: &DomainClass, c: &Codomains) -> Option<char> {
    let bi = |d: &DomainClass| d.is_biperipheral_pants();
    let mono = |d: &DomainClass| d.classify() == DomainKind::Pants { peripheral: 1 };
    let (len, ann, j) = (c.list.len(), c.annular_count(), c.joined());
    let one_joining = len == 2 && ann == 1 && j == 1;
    let two_joining = len == 2 && ann == 2 && j == 2;
    if bi(dx) && dy.is_annulus() && one_joining {
        Some('a')
    } else if dx.is_annulus() && bi(dy) && one_joining {
        Some('b')
    } else if sig.is_sphere_with_four_holes() && bi(dx) && bi(dy) && len == 1 && j == 1 {
        Some('c')
    } else if sig == SurfaceSig::new(1, 2) && mono(dx) && mono(dy) && two_joining {
        Some('d')
    } else if sig == SurfaceSig::new(1, 1) && mono(dx) && dy.is_annulus() && two_joining {
        Some('f')
    } else if sig == SurfaceSig::new(1, 1) && dx.is_annulus() && mono(dy) && two_joining {
        Some('g')
    } else {
        None
    }
}

const NESTED_IF: &str = "edge (x, y) in one of the five nested configurations: St(x) in St(y)";
const NESTED_ONLY_IF: &str = "x != y with St(x) in St(y): x, y disjoint and in one of the five nested configurations";
const EQUAL_IF: &str = "edge (x, y) in one of the equal-star configurations: St(x) = St(y)";
const EQUAL_ONLY_IF: &str = "x != y with St(x) = St(y): one of the equal-star configurations";

struct Row {
    x: VertexId,
    y: VertexId,
    contained: bool,
    equal: bool,
    nested: Option<char>,
    equal_case: Option<char>,
    /// nested case of the reversed pair, when stars are equal
    reverse: Option<char>,
}

/// Star containments on a D bundle, classified against the listed
/// configurations.
pub fn check_star_suite(d: &ComplexBundle, opts: &VerifyOptions) -> Result<Vec<CheckReport>> {
    d.require_kind(BundleKind::D)?;
    let sig = d.surface();
    let ctx = Context::new(d, opts.extra)?;
    let k = d.complex();

    // containment forces adjacency, so only edges need classifying
    let rows: Vec<Row> = k
        .edges()
        .into_par_iter()
        .flat_map_iter(|(a, b)| [(a, b), (b, a)])
        .map(|(x, y)| {
            let c = ctx.codomains(x, y).expect("edge");
            let (dx, dy) = (ctx.domain(x), ctx.domain(y));
            let equal = k.stars_equal(x, y)?;
            let reverse = if equal {
                nested_case(dy, dx, &ctx.codomains(y, x).expect("edge"))
            } else {
                None
            };
            Ok(Row {
                x,
                y,
                contained: k.star_contained(x, y)?,
                equal,
                nested: nested_case(dx, dy, &c),
                equal_case: equal_case(sig, dx, dy, &c),
                reverse,
            })
        })
        .collect::<Result<_>>()?;

    let mut nested_if = CheckReport::new("nested_stars.if", NESTED_IF);
    let mut nested_only = CheckReport::new("nested_stars.only_if", NESTED_ONLY_IF);
    let mut equal_if = CheckReport::new("equal_stars.if", EQUAL_IF);
    let mut equal_only = CheckReport::new("equal_stars.only_if", EQUAL_ONLY_IF);
    for r in &rows {
        let (x, y) = (r.x, r.y);
        if let Some(case) = r.nested {
            nested_if.count(&format!("case_{case}"), 1);
            if !r.contained {
                nested_if.fail(Witness::new(d, &[x, y], format!("case ({case}) without star containment")));
            }
        }
        if let Some(case) = r.equal_case {
            equal_if.count(&format!("case_{case}"), 1);
            if !r.equal {
                equal_if.fail(Witness::new(d, &[x, y], format!("case ({case}) without equal stars")));
            }
        }
        if r.contained {
            nested_only.count("containments", 1);
            match r.nested {
                Some(case) => nested_only.count(&format!("case_{case}"), 1),
                None => {
                    nested_only.count("suspects", 1);
                    let z = ctx.separating_annulus(Relation::Star, ctx.domain(x), ctx.domain(y))?;
                    settle(&mut nested_only, z, || Witness::new(d, &[x, y], "containment matches no case"));
                }
            }
        }
        if r.equal && x < y {
            equal_only.count("equalities", 1);
            match r.equal_case {
                Some(case) => {
                    equal_only.count(&format!("case_{case}"), 1);
                    // an equal-star configuration is nested both ways
                    if r.nested.is_none() || r.reverse.is_none() {
                        equal_only.fail(Witness::new(d, &[x, y], format!("case ({case}) not nested both ways")));
                    }
                    if case == 'd' && equal_only.witnesses.len() < 4 {
                        equal_only.witnesses.push(Witness::new(d, &[x, y], "case (d)"));
                    }
                }
                None => {
                    equal_only.count("suspects", 1);
                    let (dx, dy) = (ctx.domain(x), ctx.domain(y));
                    let z = match ctx.separating_annulus(Relation::Star, dx, dy)? {
                        Some(z) => Some(z),
                        None => ctx.separating_annulus(Relation::Star, dy, dx)?,
                    };
                    settle(&mut equal_only, z, || Witness::new(d, &[x, y], "equal stars match no case"));
                }
            }
        }
    }
    Ok(vec![nested_if, nested_only.bounded(), equal_if, equal_only.bounded()])
}
