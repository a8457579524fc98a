//! Finite flag complexes and their exchange automorphisms.
//!
//! A [`FlagComplex`] is stored as a graph; its simplices are the cliques of
//! that graph. On top of it this crate provides:
//!
//! - star/link queries, induced subcomplexes and simplicial maps ([`simplicial`]),
//! - exchangeable pairs, simple and generalized exchanges, Boolean subgroups
//!   and the conjugation law ([`exchange`]),
//! - exact backtracking automorphism search and small permutation-group
//!   utilities ([`automorphism`]).

pub mod automorphism;
mod error;
pub mod exchange;
pub mod simplicial;

pub use automorphism::{all_automorphisms, exchangeable_pairs, is_normal, PermGroup, DEFAULT_BUDGET};
pub use error::{ComplexError, Result};
pub use exchange::{
    compose_exchanges, conjugate_exchange, generalized_exchange, is_exchangeable,
    is_exchangeable_by_simplices, simple_exchange, BooleanSubgroup, ExchangeAutomorphism,
    ExchangePair, ExchangeSet,
};
pub use simplicial::{ComplexJson, FlagComplex, VertexId, VertexMap};
