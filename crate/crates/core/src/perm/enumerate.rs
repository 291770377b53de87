//! Bounded enumerators for `S(x)`, `S_k(x)`, `[x]^k`, `fin(x)`, `seq(x)` and
//! `seq¹⁻¹(x)`.
//!
//! Permutations come out in lexicographic order of their image vectors.
//! Sets and sequences of varying size come out in shortlex order (by size,
//! then lexicographically). Every stream is duplicate-free, and the cap is
//! checked against the closed-form count before any value is produced.

use std::fmt;

use serde::Serialize;

use super::count;
use super::{Perm, PermError};

pub const DEFAULT_CAP: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// `S(x)`.
    Sym,
    /// `S_k(x)`: permutations moving at most `k` points.
    SymAtMost(usize),
    /// `S_fin(x)`; equal to `S(x)` on a finite carrier.
    SymFin,
    /// `[x]^k`.
    Subsets(usize),
    /// `fin(x)`.
    Fin,
    /// `seq(x)` up to the length bound.
    Seq,
    /// `seq¹⁻¹(x)` up to the length bound.
    InjSeq,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Sym => f.write_str("S"),
            Kind::SymAtMost(k) => write!(f, "S_{k}"),
            Kind::SymFin => f.write_str("S_fin"),
            Kind::Subsets(k) => write!(f, "[x]^{k}"),
            Kind::Fin => f.write_str("fin"),
            Kind::Seq => f.write_str("seq"),
            Kind::InjSeq => f.write_str("seq_inj"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(untagged)]
pub enum Value {
    Perm(Perm),
    Set(Vec<usize>),
    Seq(Vec<usize>),
}

/// Exact number of values `enumerate` would produce, when it fits in `u128`.
pub fn cardinality(kind: Kind, n: usize, bound: usize) -> Option<u128> {
    let (n, b) = (n as u64, bound as u64);
    match kind {
        Kind::Sym | Kind::SymFin => count::factorial(n),
        Kind::SymAtMost(k) => count::perms_moving_at_most(n, k as u64),
        Kind::Subsets(k) => count::binomial(n, k as u64),
        Kind::Fin => count::subsets(n),
        Kind::Seq => count::sequences(n, b),
        Kind::InjSeq => count::injective_sequences(n, b),
    }
}

fn check_cap(kind: Kind, n: usize, bound: usize, cap: u128) -> Result<(), PermError> {
    match cardinality(kind, n, bound) {
        Some(c) if c <= cap => Ok(()),
        count => Err(PermError::CapExceeded {
            kind: kind.to_string(),
            count,
            cap,
        }),
    }
}

/// Stream every value of `kind` over a carrier of size `n`. `bound` is the
/// maximum sequence length for the sequence kinds and is ignored otherwise.
pub fn enumerate(
    kind: Kind,
    n: usize,
    bound: usize,
    w: u32,
    cap: u128,
) -> Result<Box<dyn Iterator<Item = Value>>, PermError> {
    if matches!(kind, Kind::Seq | Kind::InjSeq) && bound as u64 >= w as u64 {
        return Err(PermError::TruncationBound {
            value: bound as u64,
            w,
        });
    }
    check_cap(kind, n, bound, cap)?;
    Ok(match kind {
        Kind::Sym | Kind::SymFin => Box::new(Permutations::new(n).map(Value::Perm)),
        Kind::SymAtMost(k) => Box::new(perms_moving_at_most(n, k).into_iter().map(Value::Perm)),
        Kind::Subsets(k) => Box::new(Combinations::new(n, k).map(Value::Set)),
        Kind::Fin => Box::new(
            (0..=n)
                .flat_map(move |k| Combinations::new(n, k))
                .map(Value::Set),
        ),
        Kind::Seq => Box::new(
            (0..=bound)
                .flat_map(move |l| Sequences::new(n, l))
                .map(Value::Seq),
        ),
        Kind::InjSeq => Box::new(
            (0..=bound.min(n))
                .flat_map(move |l| InjectiveSequences::new(n, l))
                .map(Value::Seq),
        ),
    })
}

/// All of `S(x)` as a vector, with the default cap.
pub fn all_perms(n: usize) -> Result<Vec<Perm>, PermError> {
    check_cap(Kind::Sym, n, 0, DEFAULT_CAP)?;
    Ok(Permutations::new(n).collect())
}

/// `S_k(x)` built from supports and derangements, then sorted.
pub fn perms_moving_at_most(n: usize, k: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    for j in 0..=k.min(n) {
        let derangements: Vec<Vec<usize>> = Permutations::new(j)
            .filter(|p| p.mov_len() == j)
            .map(Perm::into_images)
            .collect();
        for support in Combinations::new(n, j) {
            for d in &derangements {
                let mut image: Vec<usize> = (0..n).collect();
                for (i, &z) in support.iter().enumerate() {
                    image[z] = support[d[i]];
                }
                out.push(Perm::from_images_unchecked(image));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Lexicographic permutations of `0..n`.
pub struct Permutations {
    next: Option<Vec<usize>>,
}

impl Permutations {
    pub fn new(n: usize) -> Self {
        Permutations {
            next: Some((0..n).collect()),
        }
    }
}

impl Iterator for Permutations {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Perm::from_images_unchecked(cur))
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Lexicographic `k`-subsets of `0..n` as ascending vectors.
pub struct Combinations {
    n: usize,
    next: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            next: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.next.take()?;
        let k = cur.len();
        let mut succ = cur.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if succ[i] < self.n - k + i {
                succ[i] += 1;
                for j in i + 1..k {
                    succ[j] = succ[j - 1] + 1;
                }
                self.next = Some(succ);
                break;
            }
        }
        Some(cur)
    }
}

/// Lexicographic sequences of fixed length over `0..n`.
pub struct Sequences {
    n: usize,
    next: Option<Vec<usize>>,
}

impl Sequences {
    pub fn new(n: usize, len: usize) -> Self {
        Sequences {
            n,
            next: (n > 0 || len == 0).then(|| vec![0; len]),
        }
    }
}

impl Iterator for Sequences {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut i = succ.len();
        while i > 0 {
            i -= 1;
            if succ[i] + 1 < self.n {
                succ[i] += 1;
                for s in &mut succ[i + 1..] {
                    *s = 0;
                }
                self.next = Some(succ);
                break;
            }
        }
        Some(cur)
    }
}

/// Lexicographic injective sequences of fixed length over `0..n`.
pub struct InjectiveSequences {
    n: usize,
    next: Option<Vec<usize>>,
}

impl InjectiveSequences {
    pub fn new(n: usize, len: usize) -> Self {
        InjectiveSequences {
            n,
            next: (len <= n).then(|| (0..len).collect()),
        }
    }
}

impl Iterator for InjectiveSequences {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.next.take()?;
        let len = cur.len();
        let mut used = vec![false; self.n];
        for &z in &cur {
            used[z] = true;
        }
        // Find the rightmost position that can be bumped to a larger unused
        // value, then refill the tail with the smallest unused values.
        let mut i = len;
        while i > 0 {
            i -= 1;
            used[cur[i]] = false;
            if let Some(v) = (cur[i] + 1..self.n).find(|&v| !used[v]) {
                let mut succ = cur[..i].to_vec();
                succ.push(v);
                used[v] = true;
                let mut free = (0..self.n).filter(|&z| !used[z]);
                for _ in i + 1..len {
                    succ.push(free.next().expect("enough unused values"));
                }
                self.next = Some(succ);
                break;
            }
        }
        Some(cur)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::DEFAULT_W;

    fn collect(kind: Kind, n: usize, bound: usize) -> Vec<Value> {
        enumerate(kind, n, bound, DEFAULT_W, DEFAULT_CAP)
            .unwrap()
            .collect()
    }

    fn is_strictly_sorted<T: Ord>(v: &[T]) -> bool {
        v.windows(2).all(|w| w[0] < w[1])
    }

    #[test]
    fn counts_match_examples() {
        assert_eq!(collect(Kind::SymAtMost(2), 4, 0).len(), 7);
        assert_eq!(collect(Kind::Sym, 3, 0).len(), 6);
        assert_eq!(collect(Kind::Subsets(2), 5, 0).len(), 10);
    }

    #[test]
    fn s_k_matches_filter_of_s() {
        // Oracle: filter all of S(x) directly.
        for n in 0..=7 {
            let all = all_perms(n).unwrap();
            for k in 0..=n {
                let direct: Vec<Perm> = all.iter().filter(|p| p.mov_len() <= k).cloned().collect();
                let built = perms_moving_at_most(n, k);
                assert_eq!(built, direct, "n={n} k={k}");
                assert_eq!(
                    built.len() as u128,
                    count::perms_moving_at_most(n as u64, k as u64).unwrap()
                );
            }
        }
    }

    #[test]
    fn streams_are_sorted_and_match_counts() {
        for n in 0..=4 {
            let perms: Vec<Perm> = Permutations::new(n).collect();
            assert!(is_strictly_sorted(&perms));
            assert_eq!(perms.len() as u128, count::factorial(n as u64).unwrap());
            for k in 0..=n + 1 {
                let c: Vec<_> = Combinations::new(n, k).collect();
                assert!(is_strictly_sorted(&c));
                assert_eq!(
                    c.len() as u128,
                    count::binomial(n as u64, k as u64).unwrap()
                );
            }
            for l in 0..=3 {
                let s: Vec<_> = Sequences::new(n, l).collect();
                assert!(is_strictly_sorted(&s));
                assert_eq!(s.len(), n.pow(l as u32));
                let inj: Vec<_> = InjectiveSequences::new(n, l).collect();
                assert!(is_strictly_sorted(&inj));
                let expect: Vec<_> = s
                    .iter()
                    .filter(|t| {
                        let mut u = t.to_vec();
                        u.sort();
                        u.dedup();
                        u.len() == t.len()
                    })
                    .cloned()
                    .collect();
                assert_eq!(inj, expect);
            }
        }
    }

    #[test]
    fn shortlex_for_variable_sizes() {
        let fin = collect(Kind::Fin, 3, 0);
        assert_eq!(fin.len(), 8);
        assert_eq!(fin[0], Value::Set(vec![]));
        assert_eq!(fin[7], Value::Set(vec![0, 1, 2]));
        let seq = collect(Kind::Seq, 2, 2);
        assert_eq!(seq.len(), 7);
        assert_eq!(collect(Kind::InjSeq, 3, 5).len(), 16);
    }

    #[test]
    fn cap_and_truncation_errors() {
        let err = enumerate(Kind::Sym, 12, 0, DEFAULT_W, DEFAULT_CAP)
            .err()
            .unwrap();
        assert_eq!(
            err,
            PermError::CapExceeded {
                kind: "S".into(),
                count: Some(479_001_600),
                cap: DEFAULT_CAP
            }
        );
        assert!(matches!(
            enumerate(Kind::Seq, 2, 5, 5, DEFAULT_CAP),
            Err(PermError::TruncationBound { .. })
        ));
    }
}
