use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use super::{Hfa, SymError};
use crate::perm::enumerate::Combinations;
use crate::perm::Perm;

pub const DEPTH_CAP: usize = 6;
pub const CARRIER_CAP: usize = 12;
pub const SUBGROUP_CAP: usize = 100_000;

/// A group given by a rule that produces generators of `fix(B)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// Permutations of `0..n` that map each consecutive block of `size` atoms
    /// onto some block.
    Blockwise { n: usize, size: usize },
}

impl Rule {
    pub fn carrier(&self) -> usize {
        match self {
            Rule::Blockwise { n, .. } => *n,
        }
    }

    /// Generators of the pointwise stabilizer of `b`.
    pub fn fix_generators(&self, b: &BTreeSet<usize>) -> Result<Vec<Perm>, SymError> {
        match *self {
            Rule::Blockwise { n, size } => {
                if size == 0 || n % size != 0 {
                    return Err(SymError::MalformedBlocks(format!(
                        "{n} atoms do not split into blocks of {size}"
                    )));
                }
                let blocks: Vec<Vec<usize>> = (0..n / size)
                    .map(|i| (i * size..(i + 1) * size).collect())
                    .collect();
                let mut gens = Vec::new();
                for blk in &blocks {
                    let free: Vec<usize> = blk.iter().copied().filter(|a| !b.contains(a)).collect();
                    for w in free.windows(2) {
                        gens.push(Perm::transposition(n, w[0], w[1])?);
                    }
                }
                let untouched: Vec<&Vec<usize>> = blocks
                    .iter()
                    .filter(|blk| blk.iter().all(|a| !b.contains(a)))
                    .collect();
                for w in untouched.windows(2) {
                    let mut image: Vec<usize> = (0..n).collect();
                    for (&p, &q) in w[0].iter().zip(w[1].iter()) {
                        image[p] = q;
                        image[q] = p;
                    }
                    gens.push(Perm::from_images(image)?);
                }
                Ok(gens)
            }
        }
    }
}

/// A permutation group of the atoms `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupSpec {
    FullSymmetric(usize),
    Generated(Vec<Perm>),
    RuleBased(Rule),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Support {
    Holds,
    /// A member of `fix(B)` that moves `x`.
    Fails(Perm),
}

impl Support {
    pub fn holds(&self) -> bool {
        matches!(self, Support::Holds)
    }
}

impl GroupSpec {
    pub fn carrier(&self) -> Result<usize, SymError> {
        match self {
            GroupSpec::FullSymmetric(n) => Ok(*n),
            GroupSpec::RuleBased(r) => Ok(r.carrier()),
            GroupSpec::Generated(gens) => {
                let n = gens.first().map_or(0, Perm::len);
                for g in gens {
                    if g.len() != n {
                        return Err(SymError::Perm(crate::perm::PermError::CarrierMismatch {
                            left: n,
                            right: g.len(),
                        }));
                    }
                }
                Ok(n)
            }
        }
    }

    /// Elements (for `Generated`) or generators (otherwise) of `fix(B)`;
    /// either way `x` is fixed by `fix(B)` iff it is fixed by all of them.
    fn fix_family(&self, b: &BTreeSet<usize>) -> Result<Vec<Perm>, SymError> {
        match self {
            GroupSpec::FullSymmetric(n) => {
                let free: Vec<usize> = (0..*n).filter(|a| !b.contains(a)).collect();
                free.windows(2)
                    .map(|w| Ok(Perm::transposition(*n, w[0], w[1])?))
                    .collect()
            }
            GroupSpec::RuleBased(r) => r.fix_generators(b),
            GroupSpec::Generated(gens) => Ok(closure(gens, self.carrier()?)?
                .into_iter()
                .filter(|p| b.iter().all(|&a| p.apply(a) == a))
                .collect()),
        }
    }
}

fn closure(gens: &[Perm], n: usize) -> Result<Vec<Perm>, SymError> {
    let id = Perm::identity(n);
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = g.compose(&p)?;
            if seen.insert(q.clone()) {
                if seen.len() > SUBGROUP_CAP {
                    return Err(SymError::SubgroupCap { cap: SUBGROUP_CAP });
                }
                queue.push_back(q);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

fn check_x(x: &Hfa, n: usize) -> Result<(), SymError> {
    if x.depth() > DEPTH_CAP {
        return Err(SymError::DepthCap {
            depth: x.depth(),
            cap: DEPTH_CAP,
        });
    }
    if let Some(&a) = x.atoms().iter().find(|&&a| a >= n) {
        return Err(SymError::ForeignAtom {
            atom: a,
            carrier: n,
        });
    }
    Ok(())
}

/// Decides whether `fix(B) ⊆ sym(x)`.
pub fn is_support(b: &BTreeSet<usize>, x: &Hfa, g: &GroupSpec) -> Result<Support, SymError> {
    let n = g.carrier()?;
    check_x(x, n)?;
    for p in g.fix_family(b)? {
        if x.act(&p)? != *x {
            return Ok(Support::Fails(p));
        }
    }
    Ok(Support::Holds)
}

/// A support of least size, searched smallest-first over subsets of the
/// carrier of a full symmetric group.
pub fn min_support(x: &Hfa, n: usize) -> Result<BTreeSet<usize>, SymError> {
    if n > CARRIER_CAP {
        return Err(SymError::CarrierCap {
            n,
            cap: CARRIER_CAP,
        });
    }
    let g = GroupSpec::FullSymmetric(n);
    for k in 0..=n {
        for c in Combinations::new(n, k) {
            let b: BTreeSet<usize> = c.into_iter().collect();
            if is_support(&b, x, &g)?.holds() {
                return Ok(b);
            }
        }
    }
    unreachable!("the whole carrier is always a support")
}

/// `τ ∈ fix(B)` with `τ[p] = q`: the elements of `p ∖ q` and `q ∖ p` are
/// paired off in increasing order and swapped.
pub fn transitivity_witness(
    n: usize,
    b: &BTreeSet<usize>,
    p: &BTreeSet<usize>,
    q: &BTreeSet<usize>,
) -> Result<Perm, SymError> {
    if p.len() != q.len() {
        return Err(SymError::SizeMismatch {
            p: p.len(),
            q: q.len(),
        });
    }
    if let Some(&a) = p.iter().chain(q).find(|a| b.contains(a)) {
        return Err(SymError::Overlap(a));
    }
    let mut image: Vec<usize> = (0..n).collect();
    for (&s, &t) in p.difference(q).zip(q.difference(p)) {
        if s >= n || t >= n {
            return Err(SymError::ForeignAtom {
                atom: s.max(t),
                carrier: n,
            });
        }
        image[s] = t;
        image[t] = s;
    }
    Ok(Perm::from_images(image)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn support_examples() {
        let g = GroupSpec::FullSymmetric(3);
        let x = Hfa::atoms_set(&[0]);
        assert!(is_support(&set(&[0, 1, 2]), &x, &g).unwrap().holds());
        assert!(is_support(&set(&[0]), &x, &g).unwrap().holds());
        let Support::Fails(pi) = is_support(&set(&[]), &x, &g).unwrap() else {
            panic!("∅ does not support {{a0}}")
        };
        assert_ne!(x.act(&pi).unwrap(), x);
    }

    #[test]
    fn min_support_examples() {
        assert!(min_support(&Hfa::ordinal(3), 4).unwrap().is_empty());
        assert_eq!(min_support(&Hfa::atoms_set(&[2]), 4).unwrap(), set(&[2]));
        let ab = Hfa::set([Hfa::atoms_set(&[0, 1])]);
        assert!(min_support(&ab, 2).unwrap().is_empty());
        assert_eq!(min_support(&ab, 3).unwrap(), set(&[2]));
        // {a0,a1} is also supported by its complement.
        assert_eq!(min_support(&Hfa::atoms_set(&[0, 1]), 3).unwrap(), set(&[2]));
        assert!(min_support(&ab, 13).is_err());
    }

    #[test]
    fn generated_group_support() {
        // The cyclic group of a 3-cycle: {a0} has no proper support.
        let g = GroupSpec::Generated(vec![Perm::cycle(3, &[0, 1, 2]).unwrap()]);
        let x = Hfa::atoms_set(&[0]);
        assert!(!is_support(&set(&[]), &x, &g).unwrap().holds());
        // fix({1}) is trivial in this group.
        assert!(is_support(&set(&[1]), &x, &g).unwrap().holds());
    }

    #[test]
    fn blockwise_rule() {
        let g = GroupSpec::RuleBased(Rule::Blockwise { n: 6, size: 3 });
        // The block {a0,a1,a2} is moved only by block swaps.
        let blk = Hfa::atoms_set(&[0, 1, 2]);
        assert!(!is_support(&set(&[]), &blk, &g).unwrap().holds());
        assert!(is_support(&set(&[3]), &blk, &g).unwrap().holds());
    }

    #[test]
    fn transitivity_examples() {
        let b = set(&[0]);
        let tau = transitivity_witness(6, &b, &set(&[1, 2]), &set(&[3, 4])).unwrap();
        assert_eq!(
            tau,
            Perm::from_cycles(6, &[vec![1, 3], vec![2, 4]]).unwrap()
        );
        assert!(transitivity_witness(6, &b, &set(&[1]), &set(&[1]))
            .unwrap()
            .is_identity());
        assert_eq!(
            transitivity_witness(6, &b, &set(&[0]), &set(&[1])),
            Err(SymError::Overlap(0))
        );
        assert!(transitivity_witness(6, &b, &set(&[1]), &set(&[2, 3])).is_err());
    }
}
