use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use super::PermError;

/// A named finite universe. Elements are the indices `0..len()`; labels are
/// only used for display and lookup.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Carrier {
    labels: Arc<[String]>,
}

impl Carrier {
    /// Carrier `{0, .., n-1}` labelled by the decimal indices.
    pub fn new(n: usize) -> Self {
        Carrier {
            labels: (0..n).map(|i| i.to_string()).collect(),
        }
    }

    pub fn labeled<I, S>(labels: I) -> Result<Self, PermError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(PermError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Carrier {
            labels: labels.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, elem: usize) -> Option<&str> {
        self.labels.get(elem).map(String::as_str)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn contains(&self, elem: usize) -> bool {
        elem < self.len()
    }

    pub fn check(&self, elem: usize) -> Result<(), PermError> {
        if self.contains(elem) {
            Ok(())
        } else {
            Err(PermError::OutOfCarrier {
                elem,
                len: self.len(),
            })
        }
    }
}

impl fmt::Debug for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.labels.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_must_be_unique() {
        assert!(Carrier::labeled(["a", "b", "c"]).is_ok());
        assert_eq!(
            Carrier::labeled(["a", "b", "a"]),
            Err(PermError::DuplicateLabel("a".into()))
        );
    }

    #[test]
    fn lookup() {
        let c = Carrier::labeled(["z", "a", "b"]).unwrap();
        assert_eq!(c.index_of("a"), Some(1));
        assert_eq!(c.label(2), Some("b"));
        assert!(c.check(3).is_err());
    }
}
