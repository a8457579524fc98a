//! Exchangeable pairs and the automorphisms that swap them.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{ComplexError, Result};
use crate::simplicial::{FlagComplex, VertexId, VertexMap};

/// Unordered pair of distinct vertices, stored with `x < y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExchangePair {
    x: VertexId,
    y: VertexId,
}

impl ExchangePair {
    pub fn new(a: VertexId, b: VertexId) -> Result<Self> {
        if a == b {
            return Err(ComplexError::SameVertex(a.0));
        }
        Ok(ExchangePair { x: a.min(b), y: a.max(b) })
    }

    pub fn x(&self) -> VertexId {
        self.x
    }

    pub fn y(&self) -> VertexId {
        self.y
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.x == v || self.y == v
    }

    pub fn as_array(&self) -> [u32; 2] {
        [self.x.0, self.y.0]
    }
}

/// A family of pairwise vertex-disjoint exchange pairs, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExchangeSet {
    pairs: Vec<ExchangePair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExchangeSetJson {
    pub pairs: Vec<[u32; 2]>,
}

impl ExchangeSet {
    pub fn new(pairs: impl IntoIterator<Item = ExchangePair>) -> Result<Self> {
        let mut pairs: Vec<ExchangePair> = pairs.into_iter().collect();
        pairs.sort_unstable();
        pairs.dedup();
        let mut seen = std::collections::BTreeSet::new();
        for p in &pairs {
            for v in [p.x, p.y] {
                if !seen.insert(v) {
                    return Err(ComplexError::SharedVertex(v.0));
                }
            }
        }
        Ok(ExchangeSet { pairs })
    }

    pub fn from_arrays(pairs: &[[u32; 2]]) -> Result<Self> {
        let pairs = pairs
            .iter()
            .map(|p| ExchangePair::new(VertexId(p[0]), VertexId(p[1])))
            .collect::<Result<Vec<_>>>()?;
        Self::new(pairs)
    }

    pub fn empty() -> Self {
        ExchangeSet::default()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[ExchangePair] {
        &self.pairs
    }

    pub fn contains(&self, p: &ExchangePair) -> bool {
        self.pairs.binary_search(p).is_ok()
    }

    /// The pairs selected by `mask` (bit `i` selects `pairs()[i]`).
    pub fn subset(&self, mask: &FixedBitSet) -> ExchangeSet {
        ExchangeSet { pairs: mask.ones().filter_map(|i| self.pairs.get(i).copied()).collect() }
    }

    /// Symmetric difference. The two families must agree wherever they touch
    /// the same vertex, otherwise the result would not be vertex-disjoint.
    pub fn symmetric_difference(&self, other: &ExchangeSet) -> Result<ExchangeSet> {
        for p in &self.pairs {
            for q in &other.pairs {
                if p != q {
                    if let Some(v) = [p.x, p.y].into_iter().find(|&v| q.contains(v)) {
                        return Err(ComplexError::IncompatibleSupports(v.0));
                    }
                }
            }
        }
        let mut out: Vec<ExchangePair> =
            self.pairs.iter().filter(|p| !other.contains(p)).copied().collect();
        out.extend(other.pairs.iter().filter(|p| !self.contains(p)).copied());
        ExchangeSet::new(out)
    }

    /// The involution swapping every pair, on a vertex set of size `n`.
    pub fn as_map(&self, n: usize) -> VertexMap {
        let mut images: Vec<VertexId> = (0..n).map(VertexId::from).collect();
        for p in &self.pairs {
            images[p.x.index()] = p.y;
            images[p.y.index()] = p.x;
        }
        VertexMap::new(images)
    }

    pub fn to_json(&self) -> ExchangeSetJson {
        ExchangeSetJson { pairs: self.pairs.iter().map(ExchangePair::as_array).collect() }
    }
}

/// `x` and `y` are exchangeable iff their links agree (non-adjacent case) or
/// their stars agree (adjacent case, valid because the complex is flag).
pub fn is_exchangeable(k: &FlagComplex, x: VertexId, y: VertexId) -> Result<bool> {
    if x == y {
        return Err(ComplexError::SameVertex(x.0));
    }
    if k.adjacent(x, y) {
        k.stars_equal(x, y)
    } else {
        Ok(k.link0(x)? == k.link0(y)?)
    }
}

/// Exchangeability tested against the general criterion: for every simplex
/// `σ` avoiding both `x` and `y`, `σ ∪ {x}` is a simplex iff `σ ∪ {y}` is.
/// Enumerates simplices explicitly, so only suitable for small complexes.
pub fn is_exchangeable_by_simplices(k: &FlagComplex, x: VertexId, y: VertexId) -> Result<bool> {
    if x == y {
        return Err(ComplexError::SameVertex(x.0));
    }
    k.star0(x)?;
    k.star0(y)?;
    let mut pool: Vec<VertexId> =
        k.neighbors(x).iter().chain(k.neighbors(y)).copied().filter(|&v| v != x && v != y).collect();
    pool.sort_unstable();
    pool.dedup();

    fn walk(
        k: &FlagComplex,
        pool: &[VertexId],
        start: usize,
        sigma: &mut Vec<VertexId>,
        x: VertexId,
        y: VertexId,
    ) -> bool {
        let with_x = sigma.iter().all(|&v| k.adjacent(v, x));
        let with_y = sigma.iter().all(|&v| k.adjacent(v, y));
        if with_x != with_y {
            return false;
        }
        for i in start..pool.len() {
            let v = pool[i];
            if sigma.iter().all(|&u| k.adjacent(u, v)) {
                sigma.push(v);
                let ok = walk(k, pool, i + 1, sigma, x, y);
                sigma.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    Ok(walk(k, &pool, 0, &mut Vec::new(), x, y))
}

/// An involutive automorphism swapping each pair of its support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeAutomorphism {
    support: ExchangeSet,
    map: VertexMap,
}

impl ExchangeAutomorphism {
    pub fn support(&self) -> &ExchangeSet {
        &self.support
    }

    pub fn map(&self) -> &VertexMap {
        &self.map
    }

    pub fn apply(&self, v: VertexId) -> VertexId {
        self.map.image(v)
    }

    pub fn is_involution(&self) -> bool {
        self.map.compose(&self.map).is_identity()
    }
}

pub fn simple_exchange(k: &FlagComplex, x: VertexId, y: VertexId) -> Result<ExchangeAutomorphism> {
    if !is_exchangeable(k, x, y)? {
        return Err(ComplexError::NotExchangeable(x.0, y.0));
    }
    let support = ExchangeSet::new([ExchangePair::new(x, y)?])?;
    let map = support.as_map(k.len());
    Ok(ExchangeAutomorphism { support, map })
}

pub fn generalized_exchange(k: &FlagComplex, f: &ExchangeSet) -> Result<ExchangeAutomorphism> {
    for p in f.pairs() {
        if !is_exchangeable(k, p.x, p.y)? {
            return Err(ComplexError::NotExchangeable(p.x.0, p.y.0));
        }
    }
    Ok(ExchangeAutomorphism { support: f.clone(), map: f.as_map(k.len()) })
}

/// `Φ_F ∘ Φ_G = Φ_{F △ G}`.
pub fn compose_exchanges(
    f: &ExchangeAutomorphism,
    g: &ExchangeAutomorphism,
) -> Result<ExchangeAutomorphism> {
    if f.map.len() != g.map.len() {
        return Err(ComplexError::NotTotal { expected: f.map.len(), got: g.map.len() });
    }
    let support = f.support.symmetric_difference(&g.support)?;
    let map = support.as_map(f.map.len());
    debug_assert_eq!(map, f.map.compose(&g.map));
    Ok(ExchangeAutomorphism { support, map })
}

/// The group `{Φ_F : F ⊆ E}`; elements are indexed by subsets of `E`.
#[derive(Clone, Debug)]
pub struct BooleanSubgroup {
    base: ExchangeSet,
    n: usize,
}

impl BooleanSubgroup {
    pub fn new(k: &FlagComplex, base: &ExchangeSet) -> Result<Self> {
        generalized_exchange(k, base)?;
        Ok(BooleanSubgroup { base: base.clone(), n: k.len() })
    }

    pub fn base(&self) -> &ExchangeSet {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.base.len()
    }

    /// `2^|E|`, or `None` when it does not fit in a `u128`.
    pub fn order(&self) -> Option<u128> {
        1u128.checked_shl(self.rank() as u32)
    }

    pub fn empty_subset(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.rank())
    }

    pub fn element(&self, subset: &FixedBitSet) -> Result<ExchangeAutomorphism> {
        if let Some(i) = subset.ones().find(|&i| i >= self.rank()) {
            return Err(ComplexError::SubsetOutOfRange { index: i, size: self.rank() });
        }
        let support = self.base.subset(subset);
        let map = support.as_map(self.n);
        Ok(ExchangeAutomorphism { support, map })
    }

    /// Group multiplication on subset indices: symmetric difference.
    pub fn multiply(&self, a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
        let mut out = a.clone();
        out.grow(self.rank());
        out.symmetric_difference_with(b);
        out
    }

    /// Every element, in binary-counter order of subsets. Fails when the
    /// group has more than `budget` elements.
    pub fn elements(&self, budget: usize) -> Result<Vec<VertexMap>> {
        match self.order() {
            Some(o) if o <= budget as u128 => {}
            _ => return Err(ComplexError::BudgetExceeded(budget)),
        }
        let r = self.rank();
        Ok((0u64..(1u64 << r))
            .map(|bits| {
                let mut mask = FixedBitSet::with_capacity(r);
                for i in 0..r {
                    mask.set(i, bits >> i & 1 == 1);
                }
                self.base.subset(&mask).as_map(self.n)
            })
            .collect())
    }
}

/// Image of `F` under an automorphism `φ`. Also checks the conjugation law
/// `φ ∘ Φ_F ∘ φ⁻¹ = Φ_{φ(F)}` on vertex maps.
pub fn conjugate_exchange(
    k: &FlagComplex,
    phi: &VertexMap,
    f: &ExchangeSet,
) -> Result<ExchangeSet> {
    if !k.is_automorphism(phi)? {
        return Err(ComplexError::NotAutomorphism);
    }
    let g = ExchangeSet::new(
        f.pairs()
            .iter()
            .map(|p| ExchangePair::new(phi.image(p.x), phi.image(p.y)))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let lhs = phi.compose(&f.as_map(k.len())).compose(&phi.inverse()?);
    if lhs != g.as_map(k.len()) {
        return Err(ComplexError::Malformed("conjugation law violated".into()));
    }
    Ok(g)
}
