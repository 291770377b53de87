use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value as Json;

use super::SymError;
use crate::perm::Perm;

/// A hereditarily finite set over atoms.
///
/// The derived order puts atoms before sets, atoms by id and sets
/// lexicographically by their sorted child lists. `Set` children are always
/// kept sorted and duplicate-free, so derived equality is set equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Hfa {
    Atom(usize),
    Set(Vec<Hfa>),
}

impl Hfa {
    pub fn atom(a: usize) -> Self {
        Hfa::Atom(a)
    }

    pub fn set(children: impl IntoIterator<Item = Hfa>) -> Self {
        let mut v: Vec<Hfa> = children.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Hfa::Set(v)
    }

    pub fn empty() -> Self {
        Hfa::Set(Vec::new())
    }

    /// The set of the given atoms.
    pub fn atoms_set(atoms: &[usize]) -> Self {
        Hfa::set(atoms.iter().map(|&a| Hfa::Atom(a)))
    }

    /// The von Neumann natural `k`, a pure set.
    pub fn ordinal(k: usize) -> Self {
        (0..k).fold(Hfa::empty(), |acc, _| {
            let Hfa::Set(mut v) = acc.clone() else {
                unreachable!()
            };
            v.push(acc);
            Hfa::set(v)
        })
    }

    pub fn pair(a: Hfa, b: Hfa) -> Self {
        Hfa::set([Hfa::set([a.clone()]), Hfa::set([a, b])])
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Hfa::Atom(_))
    }

    /// Atom nesting depth: atoms have depth 0 and `{}` has depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Hfa::Atom(_) => 0,
            Hfa::Set(v) => 1 + v.iter().map(Hfa::depth).max().unwrap_or(0),
        }
    }

    /// Atoms occurring anywhere in the transitive closure.
    pub fn atoms(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<usize>) {
        match self {
            Hfa::Atom(a) => {
                out.insert(*a);
            }
            Hfa::Set(v) => v.iter().for_each(|c| c.collect_atoms(out)),
        }
    }

    pub fn is_pure(&self) -> bool {
        match self {
            Hfa::Atom(_) => false,
            Hfa::Set(v) => v.iter().all(Hfa::is_pure),
        }
    }

    /// `π(x) = π[x]`, re-canonicalized.
    pub fn act(&self, pi: &Perm) -> Result<Hfa, SymError> {
        match self {
            Hfa::Atom(a) => pi
                .try_apply(*a)
                .map(Hfa::Atom)
                .map_err(|_| SymError::ForeignAtom {
                    atom: *a,
                    carrier: pi.len(),
                }),
            Hfa::Set(v) => Ok(Hfa::set(
                v.iter().map(|c| c.act(pi)).collect::<Result<Vec<_>, _>>()?,
            )),
        }
    }

    pub fn to_json(&self) -> Json {
        match self {
            Hfa::Atom(a) => Json::String(format!("a{a}")),
            Hfa::Set(v) => Json::Array(v.iter().map(Hfa::to_json).collect()),
        }
    }

    pub fn from_json(j: &Json) -> Result<Hfa, SymError> {
        match j {
            Json::String(s) => s
                .strip_prefix('a')
                .and_then(|n| n.parse().ok())
                .map(Hfa::Atom)
                .ok_or_else(|| SymError::Parse(format!("bad atom {s:?}"))),
            Json::Array(v) => Ok(Hfa::set(
                v.iter()
                    .map(Hfa::from_json)
                    .collect::<Result<Vec<_>, _>>()?,
            )),
            other => Err(SymError::Parse(format!("unexpected {other}"))),
        }
    }
}

/// Acts on `x` by `π`.
pub fn act(pi: &Perm, x: &Hfa) -> Result<Hfa, SymError> {
    x.act(pi)
}

impl fmt::Display for Hfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hfa::Atom(a) => write!(f, "a{a}"),
            Hfa::Set(v) => {
                f.write_str("{")?;
                for (i, c) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str("}")
            }
        }
    }
}

impl fmt::Debug for Hfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Hfa {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Hfa {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = Json::deserialize(d)?;
        Hfa::from_json(&j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let x = Hfa::set([Hfa::atom(2), Hfa::atom(0), Hfa::atom(2)]);
        assert_eq!(x, Hfa::atoms_set(&[0, 2]));
        assert!(Hfa::atom(5) < Hfa::empty());
        assert_eq!(Hfa::ordinal(2).to_string(), "{{}, {{}}}");
    }

    #[test]
    fn swap_moves_singleton() {
        let swap = Perm::transposition(3, 0, 1).unwrap();
        assert_eq!(
            act(&swap, &Hfa::atoms_set(&[0])).unwrap(),
            Hfa::atoms_set(&[1])
        );
    }

    #[test]
    fn pure_sets_are_fixed() {
        let pi = Perm::cycle(4, &[0, 1, 2, 3]).unwrap();
        for k in 0..5 {
            let x = Hfa::ordinal(k);
            assert!(x.is_pure());
            assert_eq!(x.act(&pi).unwrap(), x);
        }
    }

    #[test]
    fn foreign_atom_is_rejected() {
        let pi = Perm::identity(2);
        assert_eq!(
            Hfa::atoms_set(&[3]).act(&pi),
            Err(SymError::ForeignAtom {
                atom: 3,
                carrier: 2
            })
        );
    }

    #[test]
    fn json_round_trip() {
        let x = Hfa::pair(Hfa::atom(1), Hfa::set([Hfa::atom(0), Hfa::empty()]));
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"[["a1"],["a1",["a0",[]]]]"#);
        assert_eq!(serde_json::from_str::<Hfa>(&s).unwrap(), x);
        assert!(serde_json::from_str::<Hfa>(r#"["b1"]"#).is_err());
    }
}
