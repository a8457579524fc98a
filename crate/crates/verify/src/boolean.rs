//! The Boolean subgroup of exchanges along biperipheral edges, its
//! interaction with geometric automorphisms, and the kernel of φ ↦ φ_*.

use dcx_core::{conjugate_exchange, generalized_exchange, is_exchangeable, ExchangeSet, VertexMap};
use dcx_surface::{symmetries, BundleKind, ComplexBundle, Result, Surface};
use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{CheckReport, Witness};
use crate::VerifyOptions;

const EDGES: &str = "biperipheral edges are vertex-disjoint, and their ends have equal stars and are exchangeable";
const EXCHANGES: &str = "for F in E, the exchange along F is an automorphism, composes by symmetric difference, and pushes forward to the identity";
const CONJUGATION: &str = "h Phi_F h^-1 = Phi_h(F) for geometric h, and h Phi_F factors uniquely as geometric times Boolean";
const KERNEL: &str = "an automorphism pushing forward to the identity of D2 is a Boolean exchange";

/// The subset of `e` swapped by `m`, when `m` is a Boolean exchange.
pub fn boolean_support(m: &VertexMap, e: &ExchangeSet) -> Option<FixedBitSet> {
    let mut bits = FixedBitSet::with_capacity(e.len());
    let mut moved = 0usize;
    for (i, p) in e.pairs().iter().enumerate() {
        let (x, y) = (p.x(), p.y());
        if m.image(x) == y && m.image(y) == x {
            bits.insert(i);
            moved += 2;
        } else if m.image(x) != x || m.image(y) != y {
            return None;
        }
    }
    (m.moved().len() == moved).then_some(bits)
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    for i in 0..n {
        s.set(i, rng.gen_bool(0.5));
    }
    s
}

fn full(n: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert_range(..);
    s
}

fn subset_note(f: &FixedBitSet) -> String {
    format!("F = {:?}", f.ones().collect::<Vec<_>>())
}

pub fn check_boolean_and_kernel(d: &ComplexBundle, opts: &VerifyOptions) -> Result<Vec<CheckReport>> {
    d.require_kind(BundleKind::D)?;
    let ids = ["biperipheral_edges", "boolean_exchanges", "geometric_conjugation", "boolean_kernel"];
    let texts = [EDGES, EXCHANGES, CONJUGATION, KERNEL];
    let sig = d.surface();
    if sig.is_sphere_with_four_holes() {
        return Ok(ids
            .iter()
            .zip(texts)
            .map(|(i, t)| CheckReport::skipped(i, t, "sphere with four holes: biperipheral edges share vertices"))
            .collect());
    }
    let surface = Surface::new(sig)?;
    let k = d.complex();
    let n = d.len();
    let mut edges = CheckReport::new(ids[0], EDGES);
    if let Err(e) = d.check_fiber_closed(&surface) {
        edges.fail(Witness::plain(vec![], format!("truncation is not fiber-closed: {e}")));
    }
    if !d.biperipheral_vertex_disjoint()? {
        edges.fail(Witness::plain(vec![], "biperipheral edges share a vertex"));
        return Ok(vec![edges]);
    }
    for &(p, a) in d.biperipheral_pairs()? {
        edges.count("pairs", 1);
        if !k.stars_equal(p, a)? || !is_exchangeable(k, p, a)? {
            edges.fail(Witness::new(d, &[p, a], "biperipheral edge with different stars"));
        }
    }
    let e = d.biperipheral_edge_set()?;
    let r = e.len();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    // subsets: empty, full, then random
    let exhaustive = r < 16 && (1usize << r) <= opts.samples;
    let subsets: Vec<FixedBitSet> = if exhaustive {
        (0..1u64 << r)
            .map(|bits| {
                let mut s = FixedBitSet::with_capacity(r);
                (0..r).for_each(|i| s.set(i, bits >> i & 1 == 1));
                s
            })
            .collect()
    } else {
        let mut v = vec![FixedBitSet::with_capacity(r), full(r)];
        v.extend((2..opts.samples.max(2)).map(|_| random_subset(&mut rng, r)));
        v
    };
    let mut exchanges = CheckReport::new(ids[1], EXCHANGES);
    let id_d2 = VertexMap::identity(d.projection()?.d2.len());
    for (i, f) in subsets.iter().enumerate() {
        let sf = e.subset(f);
        let phi = generalized_exchange(k, &sf)?;
        exchanges.count("subsets", 1);
        if !k.is_automorphism(phi.map())? || !phi.is_involution() {
            exchanges.fail(Witness::plain(f.ones().map(|i| i as u32).collect(), "not an involutive automorphism"));
            continue;
        }
        match d.push_forward(phi.map()) {
            Ok(star) if star == id_d2 => {}
            Ok(_) => exchanges.fail(Witness::plain(f.ones().map(|i| i as u32).collect(), "push-forward is not the identity")),
            Err(err) => exchanges.fail(Witness::plain(f.ones().map(|i| i as u32).collect(), err.to_string())),
        }
        let g = &subsets[(i * 7 + 3) % subsets.len()];
        let sg = e.subset(g);
        let lhs = phi.map().compose(&sg.as_map(n));
        if lhs != sf.symmetric_difference(&sg)?.as_map(n) {
            exchanges.fail(Witness::plain(vec![], format!("composition law: {} and {}", subset_note(f), subset_note(g))));
        }
        exchanges.count("compositions", 1);
    }
    if !exhaustive {
        exchanges = exchanges.bounded();
    }

    // geometric automorphisms from symmetries of the triangulation
    let mut geometric: Vec<VertexMap> =
        symmetries(surface.triangulation()).iter().map(|s| s.on_bundle(d)).collect::<Result<_>>()?;
    geometric.sort();
    geometric.dedup();
    let mut conj = CheckReport::new(ids[2], CONJUGATION);
    conj.count("geometric_maps", geometric.len() as u64);
    for _ in 0..opts.samples {
        let h = &geometric[rng.gen_range(0..geometric.len())];
        let f = random_subset(&mut rng, r);
        let sf = e.subset(&f);
        conj.count("samples", 1);
        match conjugate_exchange(k, h, &sf) {
            Ok(hf) if hf.pairs().iter().all(|p| e.contains(p)) => {}
            Ok(_) => conj.fail(Witness::plain(vec![], format!("h(F) leaves E for {}", subset_note(&f)))),
            Err(err) => conj.fail(Witness::plain(vec![], format!("{err} for {}", subset_note(&f)))),
        }
        let g = h.compose(&sf.as_map(n));
        let mut solutions = 0;
        for h2 in &geometric {
            let m = h2.inverse()?.compose(&g);
            if boolean_support(&m, &e).is_some() {
                solutions += 1;
            }
        }
        if solutions != 1 {
            conj.fail(Witness::plain(vec![solutions], format!("factorizations of h Phi_F for {}", subset_note(&f))));
        }
    }

    // random words in geometric maps and single exchanges
    let mut kernel = CheckReport::new(ids[3], KERNEL);
    let singles: Vec<VertexMap> = e
        .pairs()
        .iter()
        .map(|p| Ok(ExchangeSet::new([*p])?.as_map(n)))
        .collect::<dcx_core::Result<_>>()?;
    let gens: Vec<&VertexMap> = geometric.iter().chain(&singles).collect();
    for _ in 0..opts.samples {
        let len = rng.gen_range(1..=6);
        let mut w = VertexMap::identity(n);
        let mut word = Vec::with_capacity(len);
        for _ in 0..len {
            let i = rng.gen_range(0..gens.len());
            word.push(i as u32);
            w = gens[i].compose(&w);
        }
        // the word itself, and its conjugate of a random Boolean element,
        // which always lies in the kernel
        let f = e.subset(&random_subset(&mut rng, r)).as_map(n);
        let conjugate = w.compose(&f).compose(&w.inverse()?);
        for g in [w, conjugate] {
            kernel.count("words", 1);
            match d.push_forward(&g) {
                Ok(star) if star == id_d2 => {
                    kernel.count("kernel_members", 1);
                    if boolean_support(&g, &e).is_none() {
                        kernel.fail(Witness::plain(word.clone(), "non-Boolean kernel element (generator indices)"));
                    }
                }
                Ok(_) => {}
                Err(err) => kernel.fail(Witness::plain(word.clone(), err.to_string())),
            }
        }
    }
    Ok(vec![edges, exchanges, conj.bounded(), kernel.bounded()])
}
