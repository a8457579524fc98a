//! Checks on abstract complexes: symmetric groups, lines of edges, and the
//! algebra of generalized exchanges.

use dcx_core::{
    all_automorphisms, compose_exchanges, exchangeable_pairs, generalized_exchange, is_exchangeable_by_simplices,
    is_normal, BooleanSubgroup, ExchangePair, ExchangeSet, FlagComplex, PermGroup, VertexId, DEFAULT_BUDGET,
};
use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fixtures;
use crate::report::{CheckReport, Witness};

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Every pair `{x, y}` passing the general simplex criterion, by exhaustive
/// enumeration of simplices.
pub fn brute_force_pairs(k: &FlagComplex) -> Vec<ExchangePair> {
    let mut out = Vec::new();
    for a in 0..k.len() {
        for b in a + 1..k.len() {
            let (x, y) = (VertexId(a as u32), VertexId(b as u32));
            if is_exchangeable_by_simplices(k, x, y).expect("vertices exist") {
                out.push(ExchangePair::new(x, y).expect("distinct"));
            }
        }
    }
    out
}

/// The automorphism group of the complete graph `K(n)` is the symmetric
/// group, and every pair of its vertices is exchangeable.
pub fn check_symmetric_group(ns: &[usize]) -> CheckReport {
    let mut r = CheckReport::new(
        "symmetric_group",
        "Aut of the full simplex on n vertices has order n!, and every vertex pair is exchangeable",
    );
    for &n in ns {
        let k = fixtures::complete(n);
        match all_automorphisms(&k, DEFAULT_BUDGET) {
            Ok(g) if g.order() == factorial(n) => r.count("groups_matched", 1),
            Ok(g) => r.fail(Witness::plain(vec![n as u32, g.order() as u32], format!("K({n}): order {}", g.order()))),
            Err(e) => r.fail(Witness::plain(vec![n as u32], format!("K({n}): {e}"))),
        }
        let pairs = exchangeable_pairs(&k);
        r.count("pairs_checked", (n * (n - 1) / 2) as u64);
        if pairs.len() != n * (n - 1) / 2 {
            r.fail(Witness::plain(vec![n as u32, pairs.len() as u32], format!("K({n}): exchangeable pair count")));
        }
    }
    r
}

/// Summary of one line-of-edges fixture.
#[derive(Clone, Debug)]
pub struct LineOfEdges {
    pub m: usize,
    pub complex: FlagComplex,
    pub pairs: Vec<ExchangePair>,
    pub end_effects: Vec<ExchangePair>,
    pub boolean: PermGroup,
    pub aut: PermGroup,
}

pub fn line_of_edges(m: usize) -> dcx_core::Result<LineOfEdges> {
    let complex = fixtures::line_of_edges(m);
    let pairs = exchangeable_pairs(&complex);
    let columns = fixtures::column_pairs(m);
    let end_effects = pairs.iter().filter(|p| !columns.contains(p)).copied().collect();
    let e = ExchangeSet::new(columns)?;
    let b = BooleanSubgroup::new(&complex, &e)?;
    let boolean = PermGroup::from_elements(complex.len(), b.elements(DEFAULT_BUDGET)?)?;
    let aut = all_automorphisms(&complex, DEFAULT_BUDGET)?;
    Ok(LineOfEdges { m, complex, pairs, end_effects, boolean, aut })
}

/// On a line of `m` edge columns: the exchangeable pairs are the columns
/// (plus end effects, compared against exhaustive enumeration), the Boolean
/// subgroup on the columns has order 2^m and is normal in Aut.
pub fn check_line_of_edges(ms: &[usize]) -> CheckReport {
    let mut r = CheckReport::new(
        "line_of_edges",
        "column pairs are exactly the exchangeable pairs up to end effects; B has order 2^m, lies in Aut, and is normal",
    );
    for &m in ms {
        let l = match line_of_edges(m) {
            Ok(l) => l,
            Err(e) => {
                r.fail(Witness::plain(vec![m as u32], e.to_string()));
                continue;
            }
        };
        let oracle = brute_force_pairs(&l.complex);
        if oracle != l.pairs {
            r.fail(Witness::plain(vec![m as u32], "exchangeable pairs disagree with exhaustive enumeration"));
        }
        if !fixtures::column_pairs(m).iter().all(|p| l.pairs.contains(p)) {
            r.fail(Witness::plain(vec![m as u32], "a column pair is not exchangeable"));
        }
        r.count("end_effect_pairs", l.end_effects.len() as u64);
        if l.boolean.order() != 1 << m {
            r.fail(Witness::plain(vec![m as u32, l.boolean.order() as u32], "Boolean subgroup order"));
        }
        if !l.boolean.elements().iter().all(|b| l.aut.contains(b)) {
            r.fail(Witness::plain(vec![m as u32], "Boolean element outside Aut"));
            continue;
        }
        match is_normal(&l.boolean, &l.aut) {
            Ok(true) => r.count("normal", 1),
            Ok(false) => r.fail(Witness::plain(vec![m as u32], "Boolean subgroup is not normal")),
            Err(e) => r.fail(Witness::plain(vec![m as u32], e.to_string())),
        }
        r.count(&format!("aut_order_m{m}"), l.aut.order() as u64);
    }
    r
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    for i in 0..n {
        s.set(i, rng.gen_bool(0.5));
    }
    s
}

/// `Φ_F ∘ Φ_G = Φ_{F△G}` and `Φ_F ∘ Φ_F = id` on `samples` seeded random
/// pairs of subsets of `e`.
pub fn check_exchange_laws(k: &FlagComplex, e: &ExchangeSet, samples: usize, seed: u64) -> CheckReport {
    let mut r = CheckReport::new(
        "exchange_laws",
        "generalized exchanges compose by symmetric difference of supports and are involutions",
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let (f, g) = (random_subset(&mut rng, e.len()), random_subset(&mut rng, e.len()));
        let (sf, sg) = (e.subset(&f), e.subset(&g));
        let result = (|| -> dcx_core::Result<(bool, bool)> {
            let (pf, pg) = (generalized_exchange(k, &sf)?, generalized_exchange(k, &sg)?);
            let composed = pf.map().compose(pg.map());
            let direct = generalized_exchange(k, &sf.symmetric_difference(&sg)?)?;
            let law = composed == *direct.map() && compose_exchanges(&pf, &pg)?.map() == direct.map();
            let inv = pf.map().compose(pf.map()).is_identity() && k.is_automorphism(pf.map())?;
            Ok((law, inv))
        })();
        r.count("pairs", 1);
        match result {
            Ok((true, true)) => {}
            Ok(_) => r.fail(Witness::plain(
                f.ones().chain(g.ones().map(|i| i + e.len())).map(|i| i as u32).collect(),
                "law violated for subsets (F indices, then G indices offset by |E|)",
            )),
            Err(err) => r.fail(Witness::plain(vec![], err.to_string())),
        }
    }
    r
}
