use super::sequences::{seq_collapse, seq_expand};
use super::{ConstructionError, MapKind, MapWitness};
use crate::perm::enumerate::{Combinations, Sequences};
use crate::perm::{check_injective, Perm, PermError, Tagged, TaggedSeq, DEFAULT_CAP};

/// An element of `[[x]²]² ∪ {∅}`: empty, or two distinct sorted pairs in
/// ascending order.
pub type PairPair = Vec<[usize; 2]>;

/// All of `[[x]²]² ∪ {∅}`, the empty value first.
pub fn pair_pairs(n: usize) -> Vec<PairPair> {
    let pairs: Vec<[usize; 2]> = Combinations::new(n, 2).map(|c| [c[0], c[1]]).collect();
    std::iter::once(Vec::new())
        .chain(Combinations::new(pairs.len(), 2).map(|c| vec![pairs[c[0]], pairs[c[1]]]))
        .collect()
}

fn check_anchors(n: usize, anchors: &[usize], need: usize) -> Result<(), ConstructionError> {
    if n < need {
        return Err(ConstructionError::CarrierTooSmall { need, have: n });
    }
    if anchors.len() != need {
        return Err(ConstructionError::Precondition {
            t: format!("{anchors:?}"),
            reason: format!("exactly {need} anchors are required"),
        });
    }
    check_injective(anchors)?;
    if let Some(&z) = anchors.iter().find(|&&z| z >= n) {
        return Err(PermError::OutOfCarrier { elem: z, len: n }.into());
    }
    Ok(())
}

/// Image of one pair of pairs. `anchors` is `[z₀, z₁, z₂, z₃, v₀, v₁, v₂, v₃]`.
pub fn pairpair_image(
    n: usize,
    anchors: &[usize],
    pp: &[[usize; 2]],
) -> Result<Perm, ConstructionError> {
    match pp {
        [] => Ok(Perm::identity(n)),
        [p, q] => {
            let shared: Vec<usize> = p.iter().filter(|z| q.contains(z)).copied().collect();
            match shared.as_slice() {
                [] => Ok(Perm::transposition(n, p[0], p[1])?
                    .compose(&Perm::transposition(n, q[0], q[1])?)?),
                [a] => {
                    let b = if p[0] == *a { p[1] } else { p[0] };
                    let c = if q[0] == *a { q[1] } else { q[0] };
                    let k = (0..4)
                        .find(|&k| {
                            ![*a, b, c]
                                .iter()
                                .any(|e| *e == anchors[k] || *e == anchors[4 + k])
                        })
                        .expect("three points meet at most three of four disjoint anchor pairs");
                    Ok(Perm::cycle(n, &[*a, anchors[k], anchors[4 + k]])?
                        .compose(&Perm::transposition(n, b, c)?)?)
                }
                _ => Err(ConstructionError::Precondition {
                    t: format!("{pp:?}"),
                    reason: "the two pairs must be distinct".into(),
                }),
            }
        }
        _ => Err(ConstructionError::Precondition {
            t: format!("{pp:?}"),
            reason: "expected zero or two pairs".into(),
        }),
    }
}

/// The injection `[[x]²]² ∪ {∅} -> S₅(x)`.
pub fn pairpairs_to_s5(
    n: usize,
    anchors: &[usize],
) -> Result<MapWitness<PairPair, Perm>, ConstructionError> {
    check_anchors(n, anchors, 8)?;
    let graph = pair_pairs(n)
        .into_iter()
        .map(|pp| {
            let img = pairpair_image(n, anchors, &pp)?;
            Ok((pp, img))
        })
        .collect::<Result<Vec<_>, ConstructionError>>()?;
    Ok(MapWitness::new(MapKind::Injection, "[[x]²]² ∪ {∅}", "S₅(x)").with_graph(graph))
}

/// The injection `xⁿ -> S₂ₙ₊₁(x) ∖ S₂ₙ(x)` for a fixed `n ≥ 1` and an
/// injection `f: 2n(n+1) -> x`.
///
/// Block `i ≤ n` consists of `z_{i,j} = f(2ni+j)` for `j ≤ n` and
/// `v_{i,k} = f(2ni+n+k+1)` for `k < n−1`.
#[derive(Clone, Debug)]
pub struct TupleCoder {
    carrier: usize,
    n: usize,
    z: Vec<Vec<usize>>,
    v: Vec<Vec<usize>>,
}

impl TupleCoder {
    pub fn new(carrier: usize, n: usize, f: &[usize]) -> Result<Self, ConstructionError> {
        if n == 0 {
            return Err(ConstructionError::Precondition {
                t: "n = 0".into(),
                reason: "n must be positive".into(),
            });
        }
        let need = 2 * n * (n + 1);
        check_anchors(carrier, f, need)?;
        let z = (0..=n)
            .map(|i| (0..=n).map(|j| f[2 * n * i + j]).collect())
            .collect();
        let v = (0..=n)
            .map(|i| (0..n - 1).map(|k| f[2 * n * i + n + k + 1]).collect())
            .collect();
        Ok(TupleCoder { carrier, n, z, v })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn block_meets(&self, i: usize, t: &[usize]) -> bool {
        t.iter()
            .any(|x| self.z[i].contains(x) || self.v[i].contains(x))
    }

    /// `m_t`: the least block disjoint from `ran t`.
    pub fn block(&self, t: &[usize]) -> usize {
        (0..=self.n)
            .find(|&i| !self.block_meets(i, t))
            .expect("n values meet at most n of the n+1 disjoint blocks")
    }

    pub fn encode(&self, t: &[usize]) -> Result<Perm, ConstructionError> {
        if t.len() != self.n {
            return Err(ConstructionError::Precondition {
                t: format!("{t:?}"),
                reason: format!("expected a tuple of length {}", self.n),
            });
        }
        if let Some(&x) = t.iter().find(|&&x| x >= self.carrier) {
            return Err(PermError::OutOfCarrier {
                elem: x,
                len: self.carrier,
            }
            .into());
        }
        let m = self.block(t);
        let h = seq_collapse(t, self.n as u32)?;
        let mut cycle: Vec<usize> = h
            .entries
            .iter()
            .map(|e| match *e {
                Tagged::Atom(x) => x,
                Tagged::Nat(k) => self.v[m][k as usize],
            })
            .collect();
        cycle.extend_from_slice(&self.z[m]);
        Ok(Perm::cycle(self.carrier, &cycle)?)
    }

    pub fn decode(&self, p: &Perm) -> Result<Vec<usize>, ConstructionError> {
        let bad = || ConstructionError::Decode(p.to_string());
        let m = (0..=self.n)
            .find(|&i| self.z[i].iter().all(|&z| p.moves(z)))
            .ok_or_else(bad)?;
        let mut cur = self.z[m][self.n];
        let mut entries = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            cur = p.apply(cur);
            entries.push(match self.v[m].iter().position(|&v| v == cur) {
                Some(k) => Tagged::Nat(k as u32),
                None => Tagged::Atom(cur),
            });
        }
        let t = seq_expand(&TaggedSeq::new(self.n as u32, entries)?)?;
        if self.encode(&t)? != *p {
            return Err(bad());
        }
        Ok(t)
    }
}

/// [`TupleCoder`] tabulated over all of `xⁿ`.
pub fn tuples_to_s2n1(
    carrier: usize,
    n: usize,
    f: &[usize],
) -> Result<MapWitness<Vec<usize>, Perm>, ConstructionError> {
    let coder = TupleCoder::new(carrier, n, f)?;
    let size = (carrier as u128).checked_pow(n as u32);
    if size.is_none_or(|s| s > DEFAULT_CAP) {
        return Err(PermError::CapExceeded {
            kind: format!("x^{n}"),
            count: size,
            cap: DEFAULT_CAP,
        }
        .into());
    }
    let graph = Sequences::new(carrier, n)
        .map(|t| {
            let p = coder.encode(&t)?;
            Ok((t, p))
        })
        .collect::<Result<Vec<_>, ConstructionError>>()?;
    Ok(MapWitness::new(
        MapKind::Injection,
        format!("x^{n}"),
        format!("S_{}(x) ∖ S_{}(x)", 2 * n + 1, 2 * n),
    )
    .with_graph(graph))
}

/// The assembled injection `seq(x)≤N -> S_fin(x)`: the empty sequence goes to
/// the identity and length-`l` tuples go through the coder for `l` built on
/// `f ↾ 2l(l+1)`.
pub fn seq_to_sfin_assembly(
    carrier: usize,
    f: &[usize],
    max_len: usize,
    w: u32,
) -> Result<MapWitness<Vec<usize>, Perm>, ConstructionError> {
    let need = 2 * max_len * (max_len + 1);
    if need as u64 > w as u64 {
        return Err(ConstructionError::Truncation {
            need: need as u64,
            w,
        });
    }
    if need > carrier {
        return Err(ConstructionError::CarrierTooSmall {
            need,
            have: carrier,
        });
    }
    if f.len() < need {
        return Err(ConstructionError::Precondition {
            t: format!("{f:?}"),
            reason: format!("f must be defined below {need}"),
        });
    }
    let mut graph = vec![(Vec::new(), Perm::identity(carrier))];
    for l in 1..=max_len {
        graph.extend(tuples_to_s2n1(carrier, l, &f[..2 * l * (l + 1)])?.graph);
    }
    Ok(
        MapWitness::new(MapKind::Injection, format!("seq(x)≤{max_len}"), "S_fin(x)")
            .with_graph(graph),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    const ANCHORS: [usize; 8] = [0, 1, 2, 3, 4, 5, 6, 7];

    #[test]
    fn pair_pair_count() {
        assert_eq!(pair_pairs(8).len(), 379);
        assert_eq!(pair_pairs(4).len(), 16);
    }

    #[test]
    fn pairpair_images() {
        let n = 10;
        assert!(pairpair_image(n, &ANCHORS, &[]).unwrap().is_identity());
        let p = pairpair_image(n, &ANCHORS, &[[0, 8], [1, 9]]).unwrap();
        assert_eq!(p, Perm::from_cycles(n, &[vec![0, 8], vec![1, 9]]).unwrap());
        // {{8,9},{8,0}}: a = 8, b = 9, c = 0; k = 1 since z₀ = 0 is hit.
        let p = pairpair_image(n, &ANCHORS, &[[0, 8], [8, 9]]).unwrap();
        let expect = Perm::cycle(n, &[8, 1, 5])
            .unwrap()
            .compose(&Perm::transposition(n, 9, 0).unwrap())
            .unwrap();
        assert_eq!(p, expect);
        assert_eq!(p.mov_len(), 5);
    }

    #[test]
    fn pairpairs_need_eight_points() {
        assert_eq!(
            pairpairs_to_s5(7, &ANCHORS[..7]).unwrap_err(),
            ConstructionError::CarrierTooSmall { need: 8, have: 7 }
        );
    }

    #[test]
    fn tuple_coder_examples() {
        let c = TupleCoder::new(5, 1, &[0, 1, 2, 3]).unwrap();
        assert_eq!(c.block(&[4]), 0);
        assert_eq!(c.encode(&[4]).unwrap(), Perm::cycle(5, &[4, 0, 1]).unwrap());
        assert_eq!(c.block(&[0]), 1);
        assert_eq!(c.encode(&[0]).unwrap(), Perm::cycle(5, &[0, 2, 3]).unwrap());
        assert_eq!(
            c.decode(&Perm::cycle(5, &[0, 2, 3]).unwrap()).unwrap(),
            vec![0]
        );
    }

    #[test]
    fn tuple_coder_handles_repeats() {
        let f: Vec<usize> = (0..12).collect();
        let c = TupleCoder::new(14, 2, &f).unwrap();
        let t = [13, 13];
        let p = c.encode(&t).unwrap();
        assert_eq!(p.mov_len(), 5);
        // Block 0 is free; the repeat becomes v_{0,0} = f(3).
        assert_eq!(p, Perm::cycle(14, &[13, 3, 0, 1, 2]).unwrap());
        assert_eq!(c.decode(&p).unwrap(), t);
    }

    #[test]
    fn decode_rejects_foreign_permutations() {
        let c = TupleCoder::new(5, 1, &[0, 1, 2, 3]).unwrap();
        assert!(c.decode(&Perm::identity(5)).is_err());
        assert_eq!(
            c.decode(&Perm::cycle(5, &[0, 1, 2]).unwrap()).unwrap(),
            vec![2]
        );
        assert!(c.decode(&Perm::transposition(5, 0, 1).unwrap()).is_err());
    }

    #[test]
    fn assembly_small() {
        let f: Vec<usize> = (0..12).collect();
        let w = seq_to_sfin_assembly(12, &f, 2, 64).unwrap();
        assert_eq!(w.len(), 1 + 12 + 144);
        w.verify().unwrap();
        for (t, p) in &w.graph {
            let expect = if t.is_empty() { 0 } else { 2 * t.len() + 1 };
            assert_eq!(p.mov_len(), expect);
        }
        assert!(seq_to_sfin_assembly(11, &f, 2, 64).is_err());
        assert!(seq_to_sfin_assembly(12, &f, 2, 8).is_err());
    }
}
