//! Exact automorphism search and explicit permutation groups.

use std::collections::{BTreeMap, HashSet};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ComplexError, Result};
use crate::exchange::{is_exchangeable, ExchangePair};
use crate::simplicial::{FlagComplex, VertexId, VertexMap};

/// Default cap on the number of group elements enumerated explicitly.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// A finite permutation group stored as a sorted element list, with a
/// subset of elements marked as generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<VertexMap>,
    generators: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub degree: usize,
    pub order: usize,
    pub generators: Vec<usize>,
    pub elements: Vec<Vec<u32>>,
}

impl PermGroup {
    /// The group generated by `gens`, enumerated by breadth-first closure.
    pub fn generated_by(degree: usize, gens: &[VertexMap], budget: usize) -> Result<Self> {
        for g in gens {
            if g.len() != degree {
                return Err(ComplexError::NotTotal { expected: degree, got: g.len() });
            }
            if !g.is_bijective() {
                return Err(ComplexError::NotBijective);
            }
        }
        let elements = close(degree, gens, budget)?;
        let mut group = PermGroup { degree, elements, generators: Vec::new() };
        group.generators = gens.iter().filter_map(|g| group.index_of(g)).collect();
        group.generators.sort_unstable();
        group.generators.dedup();
        Ok(group)
    }

    /// Wraps an element list that is already known to be a group; picks a
    /// small generating set greedily.
    pub fn from_elements(degree: usize, mut elements: Vec<VertexMap>) -> Result<Self> {
        elements.sort();
        elements.dedup();
        let mut group = PermGroup { degree, elements, generators: Vec::new() };
        if !group.is_closed() {
            return Err(ComplexError::NotSubgroup);
        }
        group.generators = group.greedy_generators();
        Ok(group)
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, elements: vec![VertexMap::identity(degree)], generators: Vec::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[VertexMap] {
        &self.elements
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn generators(&self) -> impl Iterator<Item = &VertexMap> {
        self.generators.iter().map(|&i| &self.elements[i])
    }

    pub fn contains(&self, m: &VertexMap) -> bool {
        self.elements.binary_search(m).is_ok()
    }

    pub fn index_of(&self, m: &VertexMap) -> Option<usize> {
        self.elements.binary_search(m).ok()
    }

    /// Contains the identity and is closed under composition and inverses.
    pub fn is_closed(&self) -> bool {
        if !self.contains(&VertexMap::identity(self.degree)) {
            return false;
        }
        self.elements.par_iter().all(|a| {
            a.inverse().is_ok_and(|inv| self.contains(&inv))
                && self.elements.iter().all(|b| self.contains(&a.compose(b)))
        })
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson {
            degree: self.degree,
            order: self.order(),
            generators: self.generators.clone(),
            elements: self.elements.iter().map(VertexMap::to_array).collect(),
        }
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens: Vec<VertexMap> = Vec::new();
        let mut span: HashSet<VertexMap> = HashSet::from([VertexMap::identity(self.degree)]);
        let mut out = Vec::new();
        for (i, e) in self.elements.iter().enumerate() {
            if span.contains(e) {
                continue;
            }
            gens.push(e.clone());
            out.push(i);
            // closure never exceeds the ambient group, so the budget is moot
            span = close(self.degree, &gens, usize::MAX).unwrap_or_default().into_iter().collect();
        }
        out
    }
}

fn close(degree: usize, gens: &[VertexMap], budget: usize) -> Result<Vec<VertexMap>> {
    let id = VertexMap::identity(degree);
    let mut seen: HashSet<VertexMap> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                if seen.len() > budget {
                    return Err(ComplexError::BudgetExceeded(budget));
                }
                frontier.push(y);
            }
        }
    }
    let mut out: Vec<VertexMap> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// `true` iff `g h g⁻¹ ∈ H` for every `h ∈ H` and every generator `g` of `G`
/// (which suffices, since normalizers are subgroups and `H` is finite).
pub fn is_normal(h: &PermGroup, g: &PermGroup) -> Result<bool> {
    if h.degree != g.degree || !h.elements.iter().all(|x| g.contains(x)) {
        return Err(ComplexError::NotSubgroup);
    }
    let conj: Vec<&VertexMap> =
        if g.generators.is_empty() { g.elements.iter().collect() } else { g.generators().collect() };
    Ok(conj.par_iter().all(|gg| {
        let inv = gg.inverse().expect("group elements are bijections");
        h.elements.iter().all(|x| h.contains(&gg.compose(x).compose(&inv)))
    }))
}

/// All unordered exchangeable pairs, sorted.
pub fn exchangeable_pairs(k: &FlagComplex) -> Vec<ExchangePair> {
    let n = k.len();
    let mut out: Vec<ExchangePair> = (0..n)
        .into_par_iter()
        .flat_map_iter(|a| {
            let x = VertexId::from(a);
            (a + 1..n)
                .map(VertexId::from)
                // exchangeable vertices have equal degree
                .filter(move |&y| k.degree(x) == k.degree(y))
                .filter(move |&y| is_exchangeable(k, x, y).unwrap_or(false))
                .map(move |y| ExchangePair::new(x, y).expect("distinct"))
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort_unstable();
    out
}

/// Every automorphism of `k`, found by exact backtracking. Fails once more
/// than `budget` automorphisms have been found.
pub fn all_automorphisms(k: &FlagComplex, budget: usize) -> Result<PermGroup> {
    let n = k.len();
    if n == 0 {
        return Ok(PermGroup::trivial(0));
    }
    let search = Search::new(k);
    let first = search.order[0];
    let candidates: Vec<VertexId> =
        k.vertices().filter(|&w| search.class[w.index()] == search.class[first.index()]).collect();

    let found = AtomicUsize::new(0);
    let over = AtomicBool::new(false);
    let results: Vec<Vec<VertexMap>> = candidates
        .par_iter()
        .map(|&w| {
            let mut img = vec![None; n];
            let mut used = vec![false; n];
            img[first.index()] = Some(w);
            used[w.index()] = true;
            let mut out = Vec::new();
            search.extend(1, &mut img, &mut used, &mut out, &found, &over, budget);
            out
        })
        .collect();
    if over.load(Ordering::Relaxed) {
        return Err(ComplexError::BudgetExceeded(budget));
    }
    PermGroup::from_elements(n, results.into_iter().flatten().collect())
}

struct Search<'a> {
    k: &'a FlagComplex,
    /// vertices in assignment order: each one has as many earlier neighbours as possible
    order: Vec<VertexId>,
    /// invariant class: vertices may only map within their class
    class: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(k: &'a FlagComplex) -> Self {
        let n = k.len();
        // signature: degree, sorted neighbour degrees, size of star-equivalence class
        let star_class_size: Vec<usize> = {
            let mut by_star: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
            let stars: Vec<Vec<usize>> =
                k.vertices().map(|v| k.star_bits(v).ones().collect()).collect();
            for s in &stars {
                *by_star.entry(s.clone()).or_default() += 1;
            }
            stars.iter().map(|s| by_star[s]).collect()
        };
        let sigs: Vec<(usize, Vec<usize>, usize)> = k
            .vertices()
            .map(|v| {
                let mut nd: Vec<usize> = k.neighbors(v).iter().map(|&u| k.degree(u)).collect();
                nd.sort_unstable();
                (k.degree(v), nd, star_class_size[v.index()])
            })
            .collect();
        let mut ids: BTreeMap<&(usize, Vec<usize>, usize), usize> = BTreeMap::new();
        for s in &sigs {
            let next = ids.len();
            ids.entry(s).or_insert(next);
        }
        let class: Vec<usize> = sigs.iter().map(|s| ids[s]).collect();

        let mut class_size = vec![0usize; ids.len()];
        for &c in &class {
            class_size[c] += 1;
        }
        let mut placed = vec![false; n];
        let mut links = vec![0usize; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            // most placed neighbours, then smallest class, then highest degree
            let v = (0..n)
                .filter(|&v| !placed[v])
                .min_by_key(|&v| {
                    (usize::MAX - links[v], class_size[class[v]], usize::MAX - k.degree(v.into()), v)
                })
                .expect("unplaced vertex");
            placed[v] = true;
            order.push(VertexId::from(v));
            for &u in k.neighbors(v.into()) {
                links[u.index()] += 1;
            }
        }
        Search { k, order, class }
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        depth: usize,
        img: &mut Vec<Option<VertexId>>,
        used: &mut Vec<bool>,
        out: &mut Vec<VertexMap>,
        found: &AtomicUsize,
        over: &AtomicBool,
        budget: usize,
    ) {
        if over.load(Ordering::Relaxed) {
            return;
        }
        if depth == self.order.len() {
            if found.fetch_add(1, Ordering::Relaxed) >= budget {
                over.store(true, Ordering::Relaxed);
                return;
            }
            out.push(VertexMap::new(img.iter().map(|m| m.expect("total")).collect()));
            return;
        }
        let v = self.order[depth];
        let k = self.k;
        for w in k.vertices() {
            if used[w.index()] || self.class[w.index()] != self.class[v.index()] {
                continue;
            }
            let consistent = self.order[..depth]
                .iter()
                .all(|&u| k.adjacent(u, v) == k.adjacent(img[u.index()].expect("assigned"), w));
            if !consistent {
                continue;
            }
            img[v.index()] = Some(w);
            used[w.index()] = true;
            self.extend(depth + 1, img, used, out, found, over, budget);
            img[v.index()] = None;
            used[w.index()] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> FlagComplex {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        FlagComplex::from_indexed((0..n).map(|i| i.to_string()).collect(), edges).unwrap()
    }

    fn line_of_edges(columns: usize) -> FlagComplex {
        let id = |m: usize, t: usize| 3 * m + t;
        let labels = (0..columns).flat_map(|m| [-1, 0, 1].map(|t| format!("({m},{t})"))).collect();
        let mut edges = Vec::new();
        for m in 0..columns {
            edges.push((id(m, 1), id(m, 0)));
            edges.push((id(m, 1), id(m, 2)));
            if m + 1 < columns {
                edges.push((id(m, 1), id(m + 1, 1)));
            }
        }
        FlagComplex::from_indexed(labels, edges).unwrap()
    }

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn symmetric_groups() {
        for n in 1..=6 {
            let g = all_automorphisms(&complete(n), DEFAULT_BUDGET).unwrap();
            assert_eq!(g.order(), factorial(n));
        }
    }

    #[test]
    fn single_edge_and_empty() {
        assert_eq!(all_automorphisms(&complete(2), DEFAULT_BUDGET).unwrap().order(), 2);
        assert_eq!(all_automorphisms(&FlagComplex::empty(), 10).unwrap().order(), 1);
    }

    #[test]
    fn budget_is_enforced() {
        assert_eq!(
            all_automorphisms(&complete(5), 100),
            Err(ComplexError::BudgetExceeded(100))
        );
    }

    #[test]
    fn output_is_closed_and_all_automorphisms() {
        let k = line_of_edges(3);
        let g = all_automorphisms(&k, DEFAULT_BUDGET).unwrap();
        assert_eq!(g.order(), 16);
        assert!(g.is_closed());
        for e in g.elements() {
            assert!(k.is_automorphism(e).unwrap());
        }
        let regen = PermGroup::generated_by(k.len(), &g.generators().cloned().collect::<Vec<_>>(), DEFAULT_BUDGET)
            .unwrap();
        assert_eq!(regen.elements(), g.elements());
    }

    #[test]
    fn exchangeable_pair_scan() {
        assert_eq!(exchangeable_pairs(&complete(3)).len(), 3);
        let path = FlagComplex::from_indexed(
            vec!["a".into(), "b".into(), "c".into()],
            [(0, 1), (1, 2)],
        )
        .unwrap();
        let pairs = exchangeable_pairs(&path);
        assert_eq!(pairs, vec![ExchangePair::new(VertexId(0), VertexId(2)).unwrap()]);
        let cols: Vec<[u32; 2]> = exchangeable_pairs(&line_of_edges(3)).iter().map(|p| p.as_array()).collect();
        assert_eq!(cols, vec![[0, 2], [3, 5], [6, 8]]);
    }

    #[test]
    fn normality() {
        let k = complete(3);
        let s3 = all_automorphisms(&k, DEFAULT_BUDGET).unwrap();
        assert!(is_normal(&PermGroup::trivial(3), &s3).unwrap());
        let transposition = PermGroup::generated_by(3, &[VertexMap::from_array(&[1, 0, 2])], 10).unwrap();
        assert!(!is_normal(&transposition, &s3).unwrap());
        let a3 = PermGroup::generated_by(3, &[VertexMap::from_array(&[1, 2, 0])], 10).unwrap();
        assert!(is_normal(&a3, &s3).unwrap());
        let foreign = PermGroup::generated_by(3, &[VertexMap::from_array(&[1, 0, 2])], 10).unwrap();
        assert_eq!(is_normal(&s3, &foreign), Err(ComplexError::NotSubgroup));
    }

    #[test]
    fn from_elements_rejects_non_groups() {
        let bad = vec![VertexMap::identity(3), VertexMap::from_array(&[1, 2, 0])];
        assert_eq!(PermGroup::from_elements(3, bad), Err(ComplexError::NotSubgroup));
    }

    #[test]
    fn json_export() {
        let g = all_automorphisms(&complete(2), DEFAULT_BUDGET).unwrap();
        let j = g.to_json();
        assert_eq!(j.order, 2);
        assert_eq!(j.elements, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(j.generators, vec![1]);
    }
}
