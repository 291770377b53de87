use std::fmt;

use serde::{Deserialize, Serialize};

use super::PermError;

/// Default truncation bound for the naturals adjoined to a carrier.
pub const DEFAULT_W: u32 = 64;

/// An element of `x ∪ ω_W`: either a carrier element or a natural below `W`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tagged {
    Atom(usize),
    Nat(u32),
}

impl fmt::Display for Tagged {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tagged::Atom(z) => write!(f, "x{z}"),
            Tagged::Nat(n) => write!(f, "{n}"),
        }
    }
}

/// A finite sequence over `x ∪ ω_W`; `w` travels with the value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TaggedSeq {
    pub w: u32,
    pub entries: Vec<Tagged>,
}

impl TaggedSeq {
    pub fn new(w: u32, entries: Vec<Tagged>) -> Result<Self, PermError> {
        for e in &entries {
            if let Tagged::Nat(n) = *e {
                if n >= w {
                    return Err(PermError::TruncationBound { value: n as u64, w });
                }
            }
        }
        Ok(TaggedSeq { w, entries })
    }

    pub fn atoms(w: u32, t: &[usize]) -> Self {
        TaggedSeq {
            w,
            entries: t.iter().map(|&z| Tagged::Atom(z)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_injective(&self) -> bool {
        let mut sorted = self.entries.clone();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    }
}

/// Rejects sequences with a repeated entry.
pub fn check_injective<T: Ord + Copy + Into<usize>>(t: &[T]) -> Result<(), PermError> {
    let mut sorted = t.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(PermError::DuplicateEntry(w[0].into()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nat_values_respect_w() {
        assert!(TaggedSeq::new(3, vec![Tagged::Nat(2), Tagged::Atom(7)]).is_ok());
        assert_eq!(
            TaggedSeq::new(3, vec![Tagged::Nat(3)]),
            Err(PermError::TruncationBound { value: 3, w: 3 })
        );
    }

    #[test]
    fn injectivity() {
        assert!(check_injective(&[1usize, 2, 3]).is_ok());
        assert_eq!(
            check_injective(&[1usize, 2, 1]),
            Err(PermError::DuplicateEntry(1))
        );
        assert!(!TaggedSeq::atoms(4, &[0, 0]).is_injective());
    }
}
