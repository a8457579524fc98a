//! Shared state for the surface checks: the surface, the bundle under test,
//! and an extended pool of annuli used to break containments that only hold
//! because of the weight bound.

use std::collections::HashMap;
use std::sync::OnceLock;

use dcx_core::{FlagComplex, VertexId};
use dcx_surface::{Codomain, Codomains, ComplexBundle, DomainClass, Result, Surface};
use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::report::{CheckReport, Witness};

/// Which vertex set a witness must separate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `z ∈ St(x)`: `z = x` or `z` disjoint from `x`
    Star,
    /// `z ∈ Ann(x)`: `z` an annulus, `z ≠ x`, `z` disjoint from `x`
    Ann,
}

pub struct Context<'a> {
    pub surface: Surface,
    pub bundle: &'a ComplexBundle,
    /// extra weight allowed for witnesses beyond the bundle's bound
    pub extra: u32,
    /// annuli of weight exactly `W + 1 + i`, built on demand
    annuli: Vec<OnceLock<Vec<DomainClass>>>,
    codomains: OnceLock<HashMap<(VertexId, VertexId), Codomains>>,
    nesting: OnceLock<Vec<FixedBitSet>>,
}

impl<'a> Context<'a> {
    pub fn new(bundle: &'a ComplexBundle, extra: u32) -> Result<Self> {
        Ok(Context { surface: Surface::new(bundle.surface())?, bundle, extra, annuli: (0..extra).map(|_| OnceLock::new()).collect(), codomains: OnceLock::new(), nesting: OnceLock::new() })
    }

    pub fn complex(&self) -> &FlagComplex {
        self.bundle.complex()
    }

    pub fn domain(&self, v: VertexId) -> &DomainClass {
        self.bundle.domain(v).expect("domain bundle")
    }

    /// Annuli over every curve of weight at most `W`, or exactly `W + level`
    /// for `level ≥ 1`.
    fn annuli_at(&self, level: u32) -> &[DomainClass] {
        self.annuli[level as usize - 1].get_or_init(|| {
            let w = self.bundle.weight_bound() + level;
            self.surface
                .enumerate_curves(w)
                .into_iter()
                .filter(|c| c.max_weight() == w)
                .map(|core| DomainClass::Annulus { core })
                .collect()
        })
    }

    fn member(&self, rel: Relation, z: &DomainClass, x: &DomainClass) -> Result<bool> {
        Ok(match rel {
            Relation::Star => self.surface.domains_disjoint(z, x)?,
            Relation::Ann => z != x && self.surface.domains_disjoint(z, x)?,
        })
    }

    /// An annulus above the weight bound in `R(x) \ R(y)`, searched by
    /// increasing weight up to `W + extra`; returns it with its excess
    /// weight. Lighter annuli are already vertices of the bundle, where the
    /// relation was computed exactly.
    pub fn separating_annulus(&self, rel: Relation, x: &DomainClass, y: &DomainClass) -> Result<Option<(DomainClass, u32)>> {
        for level in 1..=self.extra {
            let found = self.annuli_at(level).par_iter().find_first(|z| {
                matches!(self.member(rel, z, x), Ok(true)) && matches!(self.member(rel, z, y), Ok(false))
            });
            if let Some(z) = found {
                return Ok(Some((z.clone(), level)));
            }
        }
        Ok(None)
    }

    /// Bitset of annular vertices.
    pub fn annular_mask(&self) -> FixedBitSet {
        let mut m = FixedBitSet::with_capacity(self.bundle.len());
        for v in self.complex().vertices() {
            m.set(v.index(), self.domain(v).is_annulus());
        }
        m
    }

    /// `Ann(v)` as a bitset: annular vertices of the link.
    pub fn ann_bits(&self, mask: &FixedBitSet) -> Vec<FixedBitSet> {
        self.complex()
            .vertices()
            .map(|v| {
                let mut b = self.complex().neighbor_bits(v).clone();
                b.intersect_with(mask);
                b
            })
            .collect()
    }
}

/// Codomains of `(x, y)` read from the table entry of `(y, x)`.
fn flip(c: &Codomains) -> Codomains {
    Codomains {
        list: c
            .list
            .iter()
            .map(|k| Codomain { annular: k.annular, touches_x: k.touches_y, touches_y: k.touches_x })
            .collect(),
        x_faces: c.y_faces.clone(),
        y_faces: c.x_faces.clone(),
    }
}

impl Context<'_> {
    fn codomain_table(&self) -> &HashMap<(VertexId, VertexId), Codomains> {
        self.codomains.get_or_init(|| {
            self.complex()
                .edges()
                .into_par_iter()
                .map(|(a, b)| {
                    let c = self.surface.codomains(self.domain(a), self.domain(b)).expect("edges join disjoint domains");
                    ((a, b), c)
                })
                .collect()
        })
    }

    /// Codomains of an edge, oriented as `(x, y)`.
    pub fn codomains(&self, x: VertexId, y: VertexId) -> Option<Codomains> {
        let t = self.codomain_table();
        t.get(&(x, y)).cloned().or_else(|| t.get(&(y, x)).map(flip))
    }

    /// `sub[x]` = vertices `y` with `Y` a domain on `X`.
    pub fn nesting(&self) -> &[FixedBitSet] {
        self.nesting.get_or_init(|| {
            let n = self.bundle.len();
            self.complex()
                .vertices()
                .collect::<Vec<_>>()
                .into_par_iter()
                .map(|x| {
                    let mut row = FixedBitSet::with_capacity(n);
                    let dx = self.domain(x);
                    if !dx.is_annulus() {
                        for y in self.complex().vertices() {
                            // nested domains are never joined
                            if y != x
                                && !self.complex().adjacent(x, y)
                                && self.surface.subdomain_of(self.domain(y), dx).expect("valid domains")
                            {
                                row.insert(y.index());
                            }
                        }
                    }
                    row
                })
                .collect()
        })
    }
}

/// Records the outcome of a witness search for a suspect pair.
pub(crate) fn settle(r: &mut CheckReport, found: Option<(DomainClass, u32)>, witness: impl FnOnce() -> Witness) {
    match found {
        Some((_, level)) => {
            r.count("broken_by_extended_witness", 1);
            r.count(&format!("broken_at_weight_bound_plus_{level}"), 1);
        }
        None => r.flag(witness()),
    }
}
