//! Finite carriers, total permutations and the orbit algebra built on them.
//!
//! Every element of a carrier is a dense index `0..n`. The index order is the
//! canonical total order: whenever a construction asks for "the least" element
//! with some property, it is resolved against this order.

mod carrier;
pub mod count;
pub mod enumerate;
mod permutation;
mod seq;

pub use carrier::Carrier;
pub use enumerate::{enumerate, Kind, Value, DEFAULT_CAP};
pub use permutation::{Perm, SubPerm};
pub use seq::{check_injective, Tagged, TaggedSeq, DEFAULT_W};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("image is not a bijection of 0..{len}")]
    NotBijection { len: usize },
    #[error("element {elem} is outside a carrier of size {len}")]
    OutOfCarrier { elem: usize, len: usize },
    #[error("duplicate entry {0}")]
    DuplicateEntry(usize),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("carrier sizes differ ({left} vs {right})")]
    CarrierMismatch { left: usize, right: usize },
    #[error("enumeration of {kind} would produce {count:?} values, cap is {cap}")]
    CapExceeded {
        kind: String,
        count: Option<u128>,
        cap: u128,
    },
    #[error("natural {value} is not below the truncation bound W={w}")]
    TruncationBound { value: u64, w: u32 },
}
