use std::collections::BTreeSet;

use dcx_core::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph(max_n: usize) -> impl Strategy<Value = FlagComplex> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |mask| {
            let edges = pairs.iter().zip(&mask).filter(|(_, &m)| m).map(|(&p, _)| p);
            FlagComplex::from_indexed((0..n).map(|i| format!("v{i:02}")).collect(), edges).unwrap()
        })
    })
}

fn permutations(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut p: Vec<u32> = (0..n as u32).collect();
    fn heap(k: usize, p: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k <= 1 {
            out.push(p.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, p, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            p.swap(j, k - 1);
        }
    }
    heap(n, &mut p, &mut out);
    out
}

/// Greedy disjoint family drawn from the exchangeable pairs.
fn disjoint_family(k: &FlagComplex) -> ExchangeSet {
    let mut used = BTreeSet::new();
    let mut out = Vec::new();
    for p in exchangeable_pairs(k) {
        if !used.contains(&p.x()) && !used.contains(&p.y()) {
            used.insert(p.x());
            used.insert(p.y());
            out.push(p);
        }
    }
    ExchangeSet::new(out).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn star_and_link_basics(k in graph(12)) {
        for x in k.vertices() {
            let star = k.star0(x).unwrap();
            prop_assert!(star.contains(&x));
            let link: Vec<_> = star.iter().copied().filter(|&v| v != x).collect();
            prop_assert_eq!(k.link0(x).unwrap(), link);
        }
    }

    #[test]
    fn equal_stars_is_an_equivalence(k in graph(10)) {
        let vs: Vec<_> = k.vertices().collect();
        for &a in &vs {
            prop_assert!(k.stars_equal(a, a).unwrap());
            for &b in &vs {
                let ab = k.stars_equal(a, b).unwrap();
                prop_assert_eq!(ab, k.stars_equal(b, a).unwrap());
                for &c in &vs {
                    if ab && k.stars_equal(b, c).unwrap() {
                        prop_assert!(k.stars_equal(a, c).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn simplices_are_cliques(k in graph(12), seed in any::<u64>()) {
        let edges: BTreeSet<_> = k.edges().into_iter().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vs: Vec<_> = k.vertices().collect();
        for size in 0..=vs.len().min(5) {
            for _ in 0..20 {
                let s: Vec<VertexId> = vs.choose_multiple(&mut rng, size).copied().collect();
                let clique = s.iter().all(|&a| s.iter().all(|&b| a >= b || edges.contains(&(a, b))));
                prop_assert_eq!(k.is_simplex(&s).unwrap(), clique);
            }
        }
    }

    #[test]
    fn induced_on_everything_is_identity(k in graph(12)) {
        let all: Vec<_> = k.vertices().collect();
        prop_assert_eq!(k.induced(&all).unwrap(), k);
    }

    #[test]
    fn automorphism_search_matches_brute_force(k in graph(6)) {
        let g = all_automorphisms(&k, DEFAULT_BUDGET).unwrap();
        let brute: Vec<VertexMap> = permutations(k.len())
            .into_iter()
            .map(|p| VertexMap::from_array(&p))
            .filter(|m| k.is_automorphism(m).unwrap())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        prop_assert_eq!(g.elements(), &brute[..]);
        prop_assert!(g.is_closed());
    }

    #[test]
    fn automorphisms_respect_stars_and_exchangeability(k in graph(9)) {
        let g = all_automorphisms(&k, DEFAULT_BUDGET).unwrap();
        let pairs: BTreeSet<ExchangePair> = exchangeable_pairs(&k).into_iter().collect();
        for phi in g.elements().iter().take(64) {
            for a in k.vertices() {
                for b in k.vertices() {
                    prop_assert_eq!(
                        k.stars_equal(a, b).unwrap(),
                        k.stars_equal(phi.image(a), phi.image(b)).unwrap()
                    );
                }
            }
            let moved: BTreeSet<ExchangePair> = pairs
                .iter()
                .map(|p| ExchangePair::new(phi.image(p.x()), phi.image(p.y())).unwrap())
                .collect();
            prop_assert_eq!(&moved, &pairs);
        }
    }

    #[test]
    fn exchangeability_shortcuts_agree_with_general_condition(k in graph(10)) {
        for x in k.vertices() {
            for y in k.vertices().filter(|&y| y > x) {
                let ex = is_exchangeable(&k, x, y).unwrap();
                prop_assert_eq!(ex, is_exchangeable_by_simplices(&k, x, y).unwrap());
                if ex && k.adjacent(x, y) {
                    prop_assert_eq!(k.star0(x).unwrap(), k.star0(y).unwrap());
                }
                if ex && !k.adjacent(x, y) {
                    prop_assert_eq!(k.link0(x).unwrap(), k.link0(y).unwrap());
                }
                // exchangeable iff the transposition is an automorphism
                let mut t: Vec<u32> = (0..k.len() as u32).collect();
                t.swap(x.index(), y.index());
                prop_assert_eq!(ex, k.is_automorphism(&VertexMap::from_array(&t)).unwrap());
            }
        }
    }

    #[test]
    fn exchange_laws(k in graph(12), seed in any::<u64>()) {
        let e = disjoint_family(&k);
        let b = BooleanSubgroup::new(&k, &e).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let random_subset = |rng: &mut ChaCha8Rng| {
            let mut m = b.empty_subset();
            for i in 0..b.rank() {
                m.set(i, rand::Rng::gen_bool(rng, 0.5));
            }
            m
        };
        for _ in 0..16 {
            let (mf, mg) = (random_subset(&mut rng), random_subset(&mut rng));
            let f = b.element(&mf).unwrap();
            let g = b.element(&mg).unwrap();
            prop_assert!(k.is_automorphism(f.map()).unwrap());
            prop_assert!(f.is_involution());
            let fg = compose_exchanges(&f, &g).unwrap();
            prop_assert_eq!(fg.map(), &f.map().compose(g.map()));
            let h = b.element(&b.multiply(&mf, &mg)).unwrap();
            prop_assert_eq!(fg.support(), h.support());
            if mf != mg {
                prop_assert_ne!(f.map(), g.map());
            }
            // product of simple exchanges
            let mut prod = VertexMap::identity(k.len());
            for p in f.support().pairs() {
                prod = prod.compose(simple_exchange(&k, p.x(), p.y()).unwrap().map());
            }
            prop_assert_eq!(&prod, f.map());
        }
    }

    #[test]
    fn conjugation_and_normality(k in graph(8)) {
        let aut = all_automorphisms(&k, DEFAULT_BUDGET).unwrap();
        let e = disjoint_family(&k);
        let b = BooleanSubgroup::new(&k, &e).unwrap();
        for phi in aut.elements() {
            for f in e.pairs() {
                let single = ExchangeSet::new([*f]).unwrap();
                conjugate_exchange(&k, phi, &single).unwrap();
            }
            conjugate_exchange(&k, phi, &e).unwrap();
        }
        let belems = b.elements(DEFAULT_BUDGET).unwrap();
        for m in &belems {
            prop_assert!(aut.contains(m));
        }
        let bg = PermGroup::generated_by(k.len(), &belems, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(bg.order() as u128, b.order().unwrap());
        // B is normal in the group generated by B and Aut only when it is
        // Aut-stable; the full set of exchangeable pairs always is.
        let all_pairs = exchangeable_pairs(&k);
        let mut gens: Vec<VertexMap> = all_pairs.iter().map(|p| simple_exchange(&k, p.x(), p.y()).unwrap().map().clone()).collect();
        let ex_group = PermGroup::generated_by(k.len(), &gens, DEFAULT_BUDGET).unwrap();
        gens.extend(aut.generators().cloned());
        let ambient = PermGroup::generated_by(k.len(), &gens, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(ambient.order(), aut.order());
        prop_assert!(is_normal(&ex_group, &ambient).unwrap());
    }
}
