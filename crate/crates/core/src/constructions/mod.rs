//! Explicit injections, bijections and finite-to-one maps on finite carriers.
//!
//! Maps between carriers are image vectors: `f[z]` is the image of `z`.
//! Naturals adjoined to a carrier are [`Tagged::Nat`] values below a
//! truncation bound `W`; nothing wraps silently.
//!
//! [`Tagged::Nat`]: crate::perm::Tagged

mod bernstein;
mod lexorder;
mod orbits;
mod pairing;
mod sequences;
mod small_support;
mod witness;

pub use bernstein::{absorb_omega, cantor_bernstein, Absorption};
pub use lexorder::{fiber_rank_injection, lex_subset_order, LexCarrier};
pub use orbits::{
    diagonal_escape, fold_union_mov, mov_map, powerset_of_orbits_injection, s2_bijection,
    sfin_rank_surjection, union_mov,
};
pub use pairing::{cantor_pair, cantor_unpair, decode_seq, encode_seq, triple, untriple};
pub use sequences::{
    constant_seq_injection, seq_collapse, seq_expand, seqinj_join, seqinj_split,
    seqinj_to_nat_sfin, seqinj_to_sfin, sfin_from_seqinj_ordered, sfin_to_seqinj_ordered,
};
pub use small_support::{
    pair_pairs, pairpairs_to_s5, seq_to_sfin_assembly, tuples_to_s2n1, PairPair, TupleCoder,
};
pub use witness::{MapKind, MapStats, MapWitness};

use thiserror::Error;

use crate::perm::PermError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("map is not injective: {0} and {1} share an image")]
    NotInjective(String, String),
    #[error("{0} has no preimage")]
    NotSurjective(String),
    #[error("domain value {0} is listed twice")]
    NotAFunction(String),
    #[error("fiber over {value} has {size} elements, bound is {bound}")]
    FiberBound {
        value: String,
        size: usize,
        bound: usize,
    },
    #[error("carrier has {have} elements, {need} are required")]
    CarrierTooSmall { need: usize, have: usize },
    #[error("truncation bound W={w} is too small, {need} is required")]
    Truncation { need: u64, w: u32 },
    #[error("pairing value does not fit in 128 bits")]
    PairingOverflow,
    #[error("precondition fails at {t}: {reason}")]
    Precondition { t: String, reason: String },
    #[error("the supplied order is not a total order of the carrier")]
    OrderNotTotal,
    #[error("cannot decode {0}")]
    Decode(String),
}
