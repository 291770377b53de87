//! A lazy model of the three-sibling atom hierarchy.
//!
//! `A₀` is a finite sample of base atoms. A node `(n, u, i)` carries a
//! finite-support permutation `u` of `A_n` and a tag `i < 3`. No level above
//! the first is ever enumerated; automorphisms are descriptors evaluated
//! along the structure of whatever atom they are applied to.
//!
//! Text form: `(base 3)` and `(node 0 (((base 0)→(base 1)) ((base 1)→(base 0))) 2)`.

mod atom;
mod auto;
mod sample;

pub use atom::{ShelahAtom, ShelahPerm};
pub use auto::{
    closure, extend_automorphism, is_closed, sibling_swap_witness, triple_injection, LevelAuto,
    SiblingSwap,
};
pub use sample::{Universe, DEFAULT_BASE};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShelahError {
    #[error("tag {0} is not below 3")]
    BadTag(u8),
    #[error("{0}")]
    BadPerm(String),
    #[error("{atom} does not lie in A_{level}")]
    LevelTooHigh { atom: String, level: u32 },
    #[error("{0} is not a node")]
    NotANode(String),
    #[error("{0} lies in C")]
    InClosed(String),
    #[error("a and b coincide")]
    SameAtom,
    #[error("the set is not closed")]
    NotClosed,
    #[error("g moves {0}, a member of C")]
    MovesClosed(String),
    #[error("the base permutation breaks the group condition at {0}")]
    NotInGroup(String),
    #[error("{atom} uses a base atom outside the sample of {base}")]
    ForeignBase { atom: String, base: u32 },
    #[error("witness check failed: {0}")]
    ClauseViolated(String),
    #[error("parse error: {0}")]
    Parse(String),
}
