//! Finite lattices built from the atom construction, the building-block
//! verifiers, and the automorphism engine acting on them.

mod export;
mod extend;
mod frame;
mod join;
mod level;
mod poset;

use thiserror::Error;

use crate::report::Report;

pub use export::{level_json, to_dot};
pub use extend::{extend_to_level, separation_suite, LatticeModel};
pub use frame::{BlockFrame, FiberKey, FiberPerms, Labels};
pub use join::{join_map, verify_join_map, JOIN_EXHAUSTIVE_CAP};
pub use level::{build_level, ElemId, LatticeElem, LatticeLevel, Tower, DEFAULT_LEVEL_CAP};
pub use poset::{
    verify_building_block, verify_fiber_rule, verify_flcc, verify_height_two_rule,
    verify_jordan_dedekind, verify_lattice, Poset,
};

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("level {n} exceeds the cap {cap}")]
    LevelCap { n: usize, cap: usize },
    #[error("{what} exceed the cap {cap}")]
    Cap { what: &'static str, cap: usize },
    #[error("element {elem} outside a poset of {len} elements")]
    OutOfRange { elem: usize, len: usize },
    #[error("relation is cyclic at element {elem}")]
    NotAPoset { elem: usize },
    #[error("{lower} ⋖ {upper} is implied by other covers")]
    TransitiveEdge { lower: usize, upper: usize },
    #[error("not a building block: {0}")]
    NotABuildingBlock(&'static str),
    #[error("labels are not a bijection on the fiber of ({b}, {c:?})")]
    BadLabels { b: usize, c: Option<usize> },
    #[error("fiber ({b}, {c:?}) has {fiber} members but the permutation has length {len}")]
    BadFiberPerm {
        b: usize,
        c: Option<usize>,
        len: usize,
        fiber: usize,
    },
    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(&'static str),
    #[error("order oracle rejects the pair ({a}, {b})")]
    OracleRejected { a: usize, b: usize },
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("levels {m} and {n} differ in parity")]
    Parity { m: usize, n: usize },
    #[error("separation needs k + 2 ≤ N, got k = {k}, N = {n}")]
    MarginInsufficient { k: usize, n: usize },
    #[error("verification failed: {}", .0.check)]
    Verification(Box<Report>),
}
