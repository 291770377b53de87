//! Hereditarily finite sets over atoms and the permutation-model kernel.
//!
//! Atoms are carrier indices `0..n`. Supports are checked against generators
//! of the pointwise stabilizer, never against the whole stabilizer.

mod group;
mod hfa;
mod n23;
mod plmap;

pub use group::{
    is_support, min_support, transitivity_witness, GroupSpec, Rule, Support, CARRIER_CAP,
    DEPTH_CAP, SUBGROUP_CAP,
};
pub use hfa::{act, Hfa};
pub use n23::{n23_projection, N23Projection, N23_EXHAUSTIVE_BLOCKS};
pub use plmap::{mostowski_witness, PLMap, Q};

use thiserror::Error;

use crate::constructions::ConstructionError;
use crate::perm::PermError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("atom {atom} is outside a carrier of {carrier} atoms")]
    ForeignAtom { atom: usize, carrier: usize },
    #[error("depth {depth} exceeds the cap {cap}")]
    DepthCap { depth: usize, cap: usize },
    #[error("carrier of {n} atoms exceeds the cap {cap}")]
    CarrierCap { n: usize, cap: usize },
    #[error("generated subgroup exceeds {cap} elements")]
    SubgroupCap { cap: usize },
    #[error("|p| = {p} but |q| = {q}")]
    SizeMismatch { p: usize, q: usize },
    #[error("atom {0} lies in B")]
    Overlap(usize),
    #[error("{0} is one of the points that must stay fixed")]
    FixedPoint(String),
    #[error("not strictly increasing: {0}")]
    NotIncreasing(String),
    #[error("malformed blocks: {0}")]
    MalformedBlocks(String),
    #[error("parse error: {0}")]
    Parse(String),
}
