use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde_json::json;

use super::level::{ElemId, LatticeLevel};
use super::poset::{verify_jordan_dedekind, Poset};
use super::LatticeError;
use crate::perm::Perm;
use crate::report::Report;

/// The fiber an element of `P ∖ (Q ∪ {e})` belongs to: `cov(b) ∖ Q` when `c`
/// is `None`, otherwise `{a ∈ cov(b) | inf cov(a) = c} ∖ Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiberKey {
    pub b: ElemId,
    pub c: Option<ElemId>,
}

/// How the fiber bijections `σ(b)` and `τ(b, c)` number their fibers.
#[derive(Clone, Debug)]
pub enum Labels {
    /// Ascending element order within each fiber.
    Canonical,
    /// A given label per element, such as the tag of a tuple.
    Given(Vec<u8>),
}

/// A building block with `e`, `o`, `Q = ↓inf cov(e)` and the fiber bijections.
#[derive(Clone, Debug)]
pub struct BlockFrame {
    poset: Poset,
    e: ElemId,
    o: ElemId,
    hght: Vec<usize>,
    inf_cov: Vec<Option<ElemId>>,
    q: FixedBitSet,
    /// Unique upper cover of each element of `P ∖ (Q ∪ {e})`.
    scc: Vec<Option<ElemId>>,
    /// `σ(b)(a)` or `τ(b, c)(a)` for each `a` outside `Q ∪ {e}`.
    label: Vec<Option<usize>>,
    /// Fiber members indexed by label.
    fibers: BTreeMap<FiberKey, Vec<ElemId>>,
}

/// Permutations of individual fibers; fibers not listed stay fixed.
pub type FiberPerms = BTreeMap<FiberKey, Perm>;

impl BlockFrame {
    pub fn new(poset: Poset, labels: Labels) -> Result<Self, LatticeError> {
        let e = poset
            .greatest()
            .ok_or(LatticeError::NotABuildingBlock("no greatest element"))?;
        let o = poset
            .least()
            .ok_or(LatticeError::NotABuildingBlock("no least element"))?;
        let (_, hght) = verify_jordan_dedekind(&poset);
        let hght = hght.ok_or(LatticeError::NotABuildingBlock("no height function"))?;
        let len = poset.len();
        let inf_cov: Vec<Option<ElemId>> = (0..len).map(|b| poset.inf_cov(b)).collect();
        let q = match inf_cov[e] {
            Some(top) => poset.down_set(top).clone(),
            None => {
                let mut q = FixedBitSet::with_capacity(len);
                q.insert(o);
                q
            }
        };
        let mut scc = vec![None; len];
        let mut members: BTreeMap<FiberKey, Vec<ElemId>> = BTreeMap::new();
        for a in (0..len).filter(|&a| a != e && !q.contains(a)) {
            let ups = poset.upper_covers(a);
            let [b] = ups else {
                return Err(LatticeError::NotABuildingBlock("upper cover not unique"));
            };
            scc[a] = Some(*b);
            let c = if hght[a] == 1 { None } else { inf_cov[a] };
            members.entry(FiberKey { b: *b, c }).or_default().push(a);
        }
        let mut label = vec![None; len];
        let mut fibers = BTreeMap::new();
        for (key, ms) in members {
            let mut slots = vec![None; ms.len()];
            for (i, &a) in ms.iter().enumerate() {
                let l = match &labels {
                    Labels::Canonical => i,
                    Labels::Given(tags) => tags[a] as usize,
                };
                match slots.get_mut(l) {
                    Some(slot @ None) => *slot = Some(a),
                    _ => return Err(LatticeError::BadLabels { b: key.b, c: key.c }),
                }
                label[a] = Some(l);
            }
            fibers.insert(key, slots.into_iter().map(|s| s.expect("filled")).collect());
        }
        Ok(BlockFrame {
            poset,
            e,
            o,
            hght,
            inf_cov,
            q,
            scc,
            label,
            fibers,
        })
    }

    /// The frame of `A_n`, labelled by tags, whose `Q` must be `A_{n-2}`.
    pub fn for_level(level: &LatticeLevel) -> Result<Self, LatticeError> {
        let tags = (0..level.len())
            .map(|a| level.proj4(a).unwrap_or(0))
            .collect();
        let frame = Self::new(level.poset.clone(), Labels::Given(tags))?;
        if level.n >= 2 {
            let prefix = level.sizes[level.n - 2];
            if !frame.q.ones().eq(0..prefix) {
                return Err(LatticeError::NotABuildingBlock(
                    "Q differs from the level two below",
                ));
            }
        }
        Ok(frame)
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn e(&self) -> ElemId {
        self.e
    }

    pub fn o(&self) -> ElemId {
        self.o
    }

    pub fn height(&self, a: ElemId) -> usize {
        self.hght[a]
    }

    pub fn in_q(&self, a: ElemId) -> bool {
        self.q.contains(a)
    }

    pub fn q(&self) -> impl Iterator<Item = ElemId> + '_ {
        self.q.ones()
    }

    pub fn fibers(&self) -> &BTreeMap<FiberKey, Vec<ElemId>> {
        &self.fibers
    }

    /// `C`: elements of height 2 outside `Q`.
    pub fn c_set(&self) -> Vec<ElemId> {
        (0..self.len())
            .filter(|&b| self.hght[b] == 2 && !self.in_q(b))
            .collect()
    }

    /// `D`: pairs `(b, c)` with `b ∉ Q`, `hght(b) > 2` and `c ⋖ inf cov(b)`.
    pub fn d_set(&self) -> Vec<(ElemId, ElemId)> {
        (0..self.len())
            .filter(|&b| self.hght[b] > 2 && !self.in_q(b))
            .flat_map(|b| {
                let i = self.inf_cov[b].expect("height above 2");
                self.poset.lower_covers(i).iter().map(move |&c| (b, c))
            })
            .collect()
    }

    pub fn k(&self, b: ElemId) -> usize {
        self.fiber_len(FiberKey { b, c: None })
    }

    pub fn l(&self, b: ElemId, c: ElemId) -> usize {
        self.fiber_len(FiberKey { b, c: Some(c) })
    }

    fn fiber_len(&self, key: FiberKey) -> usize {
        self.fibers.get(&key).map_or(0, Vec::len)
    }

    /// `(scc(a), prd(a))`.
    pub fn scc_prd(&self, a: ElemId) -> Result<(ElemId, ElemId), LatticeError> {
        let s = self
            .scc
            .get(a)
            .copied()
            .flatten()
            .ok_or(LatticeError::Precondition("element lies in Q ∪ {e}"))?;
        Ok((s, self.inf_cov[s].expect("scc has height at least 2")))
    }

    fn key(&self, a: ElemId) -> FiberKey {
        let b = self.scc[a].expect("outside Q ∪ {e}");
        let c = if self.hght[a] == 1 {
            None
        } else {
            self.inf_cov[a]
        };
        FiberKey { b, c }
    }

    /// The expected fiber sizes: `k_b` is 4 at `e` and 3 elsewhere; `l_{b,c}`
    /// is 3 when `b ≠ e` and `inf cov(prd(b)) = c`, and 4 otherwise.
    pub fn verify_counts(&self) -> Report {
        const CHECK: &str = "frame-counts";
        let mut cases = 0;
        for b in self.c_set() {
            cases += 1;
            let want = if b == self.e { 4 } else { 3 };
            if self.k(b) != want {
                return Report::fail(CHECK, json!({ "b": b, "k": self.k(b), "expected": want }));
            }
        }
        for (b, c) in self.d_set() {
            cases += 1;
            let want = if b != self.e
                && self.inf_cov[self.scc_prd(b).expect("b ∉ Q ∪ {e}").1] == Some(c)
            {
                3
            } else {
                4
            };
            if self.l(b, c) != want {
                return Report::fail(
                    CHECK,
                    json!({ "b": b, "c": c, "l": self.l(b, c), "expected": want }),
                );
            }
        }
        // Every element outside Q ∪ {e} sits in one of the fibers above.
        let covered: usize = self.fibers.values().map(Vec::len).sum();
        let outside = (0..self.len())
            .filter(|&a| a != self.e && !self.in_q(a))
            .count();
        if covered != outside {
            return Report::fail(CHECK, json!({ "covered": covered, "outside": outside }));
        }
        Report::pass(CHECK).with_cases(cases)
    }

    fn check_q_automorphism(&self, f: &Perm) -> Result<(), LatticeError> {
        if f.len() != self.len() {
            return Err(LatticeError::NotAnAutomorphism("length differs from P"));
        }
        for d in self.q() {
            if !self.in_q(f.apply(d)) {
                return Err(LatticeError::NotAnAutomorphism("does not preserve Q"));
            }
            for x in self.q() {
                if self.poset.leq(x, d) != self.poset.leq(f.apply(x), f.apply(d)) {
                    return Err(LatticeError::NotAnAutomorphism("not order preserving on Q"));
                }
            }
        }
        Ok(())
    }

    /// Extends the automorphism `f` of `Q` (given on all of `P`; values outside
    /// `Q` are ignored) by permuting fibers with `perms`.
    pub fn phi_extend(&self, perms: &FiberPerms, f: &Perm) -> Result<Perm, LatticeError> {
        self.check_q_automorphism(f)?;
        for (key, p) in perms {
            let n = self.fiber_len(*key);
            if n == 0 || p.len() != n {
                return Err(LatticeError::BadFiberPerm {
                    b: key.b,
                    c: key.c,
                    len: p.len(),
                    fiber: n,
                });
            }
        }
        let len = self.len();
        let mut g = vec![usize::MAX; len];
        for d in self.q() {
            g[d] = f.apply(d);
        }
        g[self.e] = self.e;
        let mut rest: Vec<ElemId> = (0..len).filter(|&a| g[a] == usize::MAX).collect();
        rest.sort_by_key(|&a| (std::cmp::Reverse(self.hght[a]), a));
        for a in rest {
            let key = self.key(a);
            let gb = g[key.b];
            let target = FiberKey {
                b: gb,
                c: key.c.map(|c| f.apply(c)),
            };
            let i = self.label[a].expect("labelled");
            let j = perms.get(&key).map_or(i, |p| p.apply(i));
            g[a] = *self
                .fibers
                .get(&target)
                .and_then(|fiber| fiber.get(j))
                .ok_or(LatticeError::NotAnAutomorphism(
                    "fiber sizes differ under f",
                ))?;
        }
        let g =
            Perm::from_images(g).map_err(|_| LatticeError::NotAnAutomorphism("not injective"))?;
        self.check_extension(&g, f)?;
        Ok(g)
    }

    /// `phi_extend` with every fiber left in place.
    pub fn psi_extend(&self, f: &Perm) -> Result<Perm, LatticeError> {
        self.phi_extend(&FiberPerms::new(), f)
    }

    /// Re-checks an extension with the pairwise order oracle and the frame
    /// identities it must satisfy.
    fn check_extension(&self, g: &Perm, f: &Perm) -> Result<(), LatticeError> {
        if let Some((a, b)) = self.poset.automorphism_violation(g) {
            return Err(LatticeError::OracleRejected { a, b });
        }
        if self.q().any(|d| g.apply(d) != f.apply(d)) || g.apply(self.e) != self.e {
            return Err(LatticeError::NotAnAutomorphism("does not extend f"));
        }
        for b in (0..self.len()).filter(|&b| !self.in_q(b)) {
            let gb = g.apply(b);
            if self.in_q(gb)
                || self.hght[gb] != self.hght[b]
                || self.inf_cov[gb] != self.inf_cov[b].map(|c| f.apply(c))
            {
                return Err(LatticeError::NotAnAutomorphism("frame identities fail"));
            }
        }
        Ok(())
    }

    /// An automorphism fixing `Q ∪ {d}` pointwise and moving `a`, obtained by
    /// swapping `a` with the first other member of its fiber that is not `d`.
    pub fn move_witness(&self, a: ElemId, d: ElemId) -> Result<Perm, LatticeError> {
        if a >= self.len() || d >= self.len() {
            return Err(LatticeError::OutOfRange {
                elem: a.max(d),
                len: self.len(),
            });
        }
        if self.scc[a].is_none() {
            return Err(LatticeError::Precondition("a lies in Q ∪ {e}"));
        }
        if d == a || !(self.in_q(d) || self.hght[d] >= self.hght[a]) {
            return Err(LatticeError::Precondition(
                "d must differ from a and lie in Q or not below a's height",
            ));
        }
        let key = self.key(a);
        let fiber = &self.fibers[&key];
        let i = self.label[a].expect("labelled");
        let j = fiber
            .iter()
            .position(|&x| x != a && x != d)
            .ok_or(LatticeError::Precondition("fiber too small"))?;
        let swap = Perm::transposition(fiber.len(), i, j).expect("labels lie in the fiber");
        let g = self.phi_extend(
            &FiberPerms::from([(key, swap)]),
            &Perm::identity(self.len()),
        )?;
        let above = (0..self.len())
            .any(|v| !self.in_q(v) && self.hght[v] > self.hght[a] && g.apply(v) != v);
        if g.apply(a) == a || g.apply(d) != d || above {
            return Err(LatticeError::NotAnAutomorphism(
                "move witness contract fails",
            ));
        }
        Ok(g)
    }

    /// All `(a, d)` pairs satisfying the move-witness hypothesis.
    pub fn legal_moves(&self) -> impl Iterator<Item = (ElemId, ElemId)> + '_ {
        (0..self.len())
            .filter(|&a| self.scc[a].is_some())
            .flat_map(move |a| {
                (0..self.len())
                    .filter(move |&d| d != a && (self.in_q(d) || self.hght[d] >= self.hght[a]))
                    .map(move |d| (a, d))
            })
    }
}
