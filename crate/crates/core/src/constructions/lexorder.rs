use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::{ConstructionError, MapKind, MapWitness};
use crate::perm::{Perm, PermError};

/// `z < v` iff the least natural in exactly one of them lies in `v`.
pub fn lex_subset_order(z: &[u32], v: &[u32], w: u32) -> Result<Ordering, ConstructionError> {
    if let Some(&n) = z.iter().chain(v).find(|&&n| n >= w) {
        return Err(PermError::TruncationBound { value: n as u64, w }.into());
    }
    let least = z
        .iter()
        .filter(|n| !v.contains(n))
        .chain(v.iter().filter(|n| !z.contains(n)))
        .min();
    Ok(match least {
        None => Ordering::Equal,
        Some(n) if v.contains(n) => Ordering::Less,
        Some(_) => Ordering::Greater,
    })
}

/// A carrier whose elements are distinct finite subsets of `[0, W)`, together
/// with the rank of each element under [`lex_subset_order`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexCarrier {
    w: u32,
    sets: Vec<Vec<u32>>,
    rank: Vec<usize>,
}

impl LexCarrier {
    pub fn new(w: u32, sets: Vec<Vec<u32>>) -> Result<Self, ConstructionError> {
        let mut sets = sets;
        for s in &mut sets {
            s.sort_unstable();
            s.dedup();
            if let Some(&n) = s.iter().find(|&&n| n >= w) {
                return Err(PermError::TruncationBound { value: n as u64, w }.into());
            }
        }
        let mut order: Vec<usize> = (0..sets.len()).collect();
        order.sort_by(|&a, &b| {
            lex_subset_order(&sets[a], &sets[b], w).expect("bounds checked above")
        });
        if let Some(pair) = order.windows(2).find(|p| sets[p[0]] == sets[p[1]]) {
            return Err(PermError::DuplicateEntry(pair[1]).into());
        }
        let mut rank = vec![0; sets.len()];
        for (i, &z) in order.iter().enumerate() {
            rank[z] = i;
        }
        Ok(LexCarrier { w, sets, rank })
    }

    /// All subsets of `[0, k)` that have exactly `size` elements, as a carrier.
    pub fn subsets_of(k: u32, size: usize, w: u32) -> Result<Self, ConstructionError> {
        let sets = crate::perm::enumerate::Combinations::new(k as usize, size)
            .map(|c| c.into_iter().map(|n| n as u32).collect())
            .collect();
        Self::new(w, sets)
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn w(&self) -> u32 {
        self.w
    }

    pub fn set(&self, z: usize) -> &[u32] {
        &self.sets[z]
    }

    /// Carrier indices from r-least to r-greatest.
    pub fn order(&self) -> Vec<usize> {
        let mut order = vec![0; self.len()];
        for (z, &r) in self.rank.iter().enumerate() {
            order[r] = z;
        }
        order
    }

    pub fn cmp_elems(&self, a: usize, b: usize) -> Ordering {
        self.rank[a].cmp(&self.rank[b])
    }

    /// Compares `t` and `u` at the r-least point where they disagree.
    pub fn cmp_perms(&self, t: &Perm, u: &Perm) -> Result<Ordering, ConstructionError> {
        t.same_carrier(u)?;
        if t.len() != self.len() {
            return Err(PermError::CarrierMismatch {
                left: t.len(),
                right: self.len(),
            }
            .into());
        }
        Ok(self
            .order()
            .into_iter()
            .find(|&z| t.apply(z) != u.apply(z))
            .map_or(Ordering::Equal, |z| self.cmp_elems(t.apply(z), u.apply(z))))
    }

    /// `h(t) = (rank of t inside f⁻¹[{f(t)}] under cmp_perms, f(t))`.
    ///
    /// `f` must be declared finite-to-one; a declared fiber bound is enforced.
    pub fn fiber_rank_injection(
        &self,
        f: &MapWitness<Perm, usize>,
    ) -> Result<MapWitness<Perm, (usize, usize)>, ConstructionError> {
        if !matches!(f.kind, MapKind::FiniteToOne | MapKind::Injection) {
            return Err(ConstructionError::Precondition {
                t: f.domain.clone(),
                reason: format!("f is declared {:?}, not finite-to-one", f.kind),
            });
        }
        f.verify()?;
        let mut fibers: BTreeMap<usize, Vec<&Perm>> = BTreeMap::new();
        for (t, z) in &f.graph {
            if *z >= self.len() {
                return Err(PermError::OutOfCarrier {
                    elem: *z,
                    len: self.len(),
                }
                .into());
            }
            fibers.entry(*z).or_default().push(t);
        }
        let mut graph = Vec::with_capacity(f.len());
        for (z, mut fiber) in fibers {
            let mut err = None;
            fiber.sort_by(|a, b| {
                self.cmp_perms(a, b).unwrap_or_else(|e| {
                    err.get_or_insert(e);
                    Ordering::Equal
                })
            });
            if let Some(e) = err {
                return Err(e);
            }
            graph.extend(
                fiber
                    .into_iter()
                    .enumerate()
                    .map(|(i, t)| (t.clone(), (i, z))),
            );
        }
        Ok(MapWitness::new(MapKind::Injection, "S(x)", "ω × x").with_graph(graph))
    }
}

/// See [`LexCarrier::fiber_rank_injection`].
pub fn fiber_rank_injection(
    x: &LexCarrier,
    f: &MapWitness<Perm, usize>,
) -> Result<MapWitness<Perm, (usize, usize)>, ConstructionError> {
    x.fiber_rank_injection(f)
}
