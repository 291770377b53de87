use std::fmt;

use serde::Serialize;
use serde_json::json;

use super::poset::{verify_building_block, Poset};
use super::LatticeError;
use crate::report::Report;

/// Index of an element in a [`Tower`]; `A_n` is always a prefix of the indices.
pub type ElemId = usize;

pub const DEFAULT_LEVEL_CAP: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LatticeElem {
    O,
    /// `e_n` for `n ≥ 1`.
    E(u32),
    Tuple {
        level: u32,
        k: u32,
        parent: ElemId,
        base: ElemId,
        tag: u8,
    },
}

/// The elements of `A_N` with the covering relation, in creation order.
#[derive(Clone, Debug)]
pub struct Tower {
    elems: Vec<LatticeElem>,
    lower: Vec<Vec<ElemId>>,
    /// `sizes[n] = |A_n|`.
    sizes: Vec<usize>,
    /// `e[n]` is the id of `e_n`, with `e[0] = o`.
    e: Vec<ElemId>,
    layers: Vec<Vec<usize>>,
}

impl Tower {
    pub fn build(n: usize) -> Result<Self, LatticeError> {
        Self::build_with_cap(n, DEFAULT_LEVEL_CAP)
    }

    pub fn build_with_cap(n: usize, cap: usize) -> Result<Self, LatticeError> {
        if n > cap {
            return Err(LatticeError::LevelCap { n, cap });
        }
        let mut t = Tower {
            elems: vec![LatticeElem::O],
            lower: vec![Vec::new()],
            sizes: vec![1],
            e: vec![0],
            layers: vec![vec![1]],
        };
        if n >= 1 {
            let e1 = t.push(LatticeElem::E(1), vec![0]);
            t.e.push(e1);
            t.sizes.push(2);
            t.layers.push(vec![1]);
        }
        for m in 1..n {
            t.grow(m as u32);
        }
        Ok(t)
    }

    fn push(&mut self, x: LatticeElem, lower: Vec<ElemId>) -> ElemId {
        self.elems.push(x);
        self.lower.push(lower);
        self.elems.len() - 1
    }

    /// Adds `B_{m,0} ∪ … ∪ B_{m,m}`, turning `A_m` into `A_{m+1}`.
    fn grow(&mut self, m: u32) {
        let e_next = self.push(LatticeElem::E(m + 1), vec![self.e[m as usize]]);
        self.e.push(e_next);
        let mut prev = vec![e_next];
        let mut layers = vec![1];
        for i in 1..=m {
            let mut cur = Vec::new();
            for &b in &prev {
                let pb = self.proj3(b).expect("layer elements have a base");
                let bases: Vec<ElemId> = if i == m {
                    vec![0]
                } else {
                    self.lower[pb].clone()
                };
                for c in bases {
                    let l = if i == m { 3 } else { self.tag_bound(m, b, c) };
                    for tag in 0..l {
                        let x = LatticeElem::Tuple {
                            level: m,
                            k: m - i,
                            parent: b,
                            base: c,
                            tag,
                        };
                        let id = self.push(x, Vec::new());
                        // proj3 proj2 a ⋖ a and a ⋖ proj2 a.
                        self.lower[id].push(pb);
                        self.lower[b].push(id);
                        cur.push(id);
                    }
                }
            }
            layers.push(cur.len());
            prev = cur;
        }
        for ls in &mut self.lower {
            ls.sort_unstable();
        }
        self.sizes.push(self.elems.len());
        self.layers.push(layers);
    }

    /// `L_{b,c}` for `b ∈ B_{m,i-1}`.
    fn tag_bound(&self, m: u32, b: ElemId, c: ElemId) -> u8 {
        let three = if b == self.e[m as usize + 1] {
            m >= 2 && c == self.e[m as usize - 2]
        } else {
            self.proj2(b)
                .and_then(|p| self.proj3(p))
                .and_then(|p| self.proj3(p))
                == Some(c)
        };
        if three {
            3
        } else {
            4
        }
    }

    /// Highest level built.
    pub fn top(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn size(&self, n: usize) -> usize {
        self.sizes[n]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// `|B_{n,0}|, …, |B_{n,n}|`, the blocks added to reach `A_{n+1}`.
    pub fn layer_sizes(&self, n: usize) -> &[usize] {
        &self.layers[n + 1]
    }

    pub fn elem(&self, id: ElemId) -> LatticeElem {
        self.elems[id]
    }

    pub fn elems(&self) -> &[LatticeElem] {
        &self.elems
    }

    pub fn e(&self, n: usize) -> ElemId {
        self.e[n]
    }

    pub fn lower_covers(&self, id: ElemId) -> &[ElemId] {
        &self.lower[id]
    }

    pub fn proj0(&self, id: ElemId) -> Option<u32> {
        match self.elems[id] {
            LatticeElem::O => None,
            LatticeElem::E(n) => Some(n - 1),
            LatticeElem::Tuple { level, .. } => Some(level),
        }
    }

    pub fn proj1(&self, id: ElemId) -> Option<u32> {
        match self.elems[id] {
            LatticeElem::O => None,
            LatticeElem::E(n) => Some(n - 1),
            LatticeElem::Tuple { k, .. } => Some(k),
        }
    }

    pub fn proj2(&self, id: ElemId) -> Option<ElemId> {
        match self.elems[id] {
            LatticeElem::Tuple { parent, .. } => Some(parent),
            _ => None,
        }
    }

    pub fn proj3(&self, id: ElemId) -> Option<ElemId> {
        match self.elems[id] {
            LatticeElem::O => None,
            LatticeElem::E(n) => Some(self.e[(n as usize).saturating_sub(2)]),
            LatticeElem::Tuple { base, .. } => Some(base),
        }
    }

    pub fn proj4(&self, id: ElemId) -> Option<u8> {
        match self.elems[id] {
            LatticeElem::O => None,
            LatticeElem::E(_) => Some(3),
            LatticeElem::Tuple { tag, .. } => Some(tag),
        }
    }

    /// The level `A_n` as a verified poset.
    pub fn level(&self, n: usize) -> Result<LatticeLevel, LatticeError> {
        let level = self.level_unchecked(n)?;
        let report = level.verify();
        if !report.pass {
            return Err(LatticeError::Verification(Box::new(report)));
        }
        Ok(level)
    }

    /// The level `A_n` without running the building-block checks.
    pub fn level_unchecked(&self, n: usize) -> Result<LatticeLevel, LatticeError> {
        if n > self.top() {
            return Err(LatticeError::LevelCap { n, cap: self.top() });
        }
        let len = self.sizes[n];
        let covers: Vec<(usize, usize)> = (0..len)
            .flat_map(|b| {
                self.lower[b]
                    .iter()
                    .filter(move |&&a| a < len)
                    .map(move |&a| (a, b))
            })
            .collect();
        Ok(LatticeLevel {
            n,
            elems: self.elems[..len].to_vec(),
            e: self.e[..=n].to_vec(),
            sizes: self.sizes[..=n].to_vec(),
            poset: Poset::from_covers(len, &covers)?,
        })
    }

    /// A display name: `o`, `e3` or `(2,1,e3,o,0)`.
    pub fn name(&self, id: ElemId) -> String {
        Named(self, id).to_string()
    }
}

struct Named<'a>(&'a Tower, ElemId);

impl fmt::Display for Named<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Named(t, id) = *self;
        match t.elems[id] {
            LatticeElem::O => write!(f, "o"),
            LatticeElem::E(n) => write!(f, "e{n}"),
            LatticeElem::Tuple {
                level,
                k,
                parent,
                base,
                tag,
            } => write!(
                f,
                "({level},{k},{},{},{tag})",
                Named(t, parent),
                Named(t, base)
            ),
        }
    }
}

/// The finite lattice `A_n`, with elements numbered as in the [`Tower`].
#[derive(Clone, Debug)]
pub struct LatticeLevel {
    pub n: usize,
    pub elems: Vec<LatticeElem>,
    pub e: Vec<ElemId>,
    /// `|A_0|, …, |A_n|`.
    pub sizes: Vec<usize>,
    pub poset: Poset,
}

/// `A_n` as a verified lattice, building the tower up to `n`.
pub fn build_level(n: usize) -> Result<LatticeLevel, LatticeError> {
    Tower::build(n)?.level(n)
}

impl LatticeLevel {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn top(&self) -> ElemId {
        self.e[self.n]
    }

    pub fn proj1(&self, id: ElemId) -> Option<u32> {
        match self.elems[id] {
            LatticeElem::O => None,
            LatticeElem::E(n) => Some(n - 1),
            LatticeElem::Tuple { k, .. } => Some(k),
        }
    }

    pub fn proj3(&self, id: ElemId) -> Option<ElemId> {
        match self.elems[id] {
            LatticeElem::O => None,
            LatticeElem::E(n) => Some(self.e[(n as usize).saturating_sub(2)]),
            LatticeElem::Tuple { base, .. } => Some(base),
        }
    }

    pub fn proj4(&self, id: ElemId) -> Option<u8> {
        match self.elems[id] {
            LatticeElem::O => None,
            LatticeElem::E(_) => Some(3),
            LatticeElem::Tuple { tag, .. } => Some(tag),
        }
    }

    /// The generic building-block checks plus the identities specific to the
    /// construction: `hght(a) = proj₁a + 1`, `inf cov(a) = proj₃a`, the frame
    /// counts and the lower-cover properties of every interval `[c, b]`.
    pub fn verify(&self) -> Report {
        let generic = verify_building_block(&self.poset);
        let mut checks = generic.checks;
        checks.push(self.verify_projections());
        checks.push(self.verify_lower_cover_properties());
        if self.n >= 1 {
            checks.push(match super::frame::BlockFrame::for_level(self) {
                Ok(f) => f.verify_counts(),
                Err(e) => Report::fail("frame-counts", json!({ "error": e.to_string() })),
            });
        }
        Report::composite(format!("level-{}", self.n), checks)
    }

    fn verify_projections(&self) -> Report {
        const CHECK: &str = "projections";
        let (_, hght) = super::poset::verify_jordan_dedekind(&self.poset);
        let Some(hght) = hght else {
            return Report::fail(CHECK, json!({ "precondition": "heights unavailable" }));
        };
        for (a, &height) in hght.iter().enumerate().skip(1) {
            let h = self.proj1(a).map(|k| k as usize + 1);
            if h != Some(height) {
                return Report::fail(CHECK, json!({ "a": a, "height": height, "proj1": h }));
            }
            if self.poset.inf_cov(a) != self.proj3(a) {
                return Report::fail(
                    CHECK,
                    json!({ "a": a, "inf_cov": self.poset.inf_cov(a), "proj3": self.proj3(a) }),
                );
            }
        }
        Report::pass(CHECK).with_cases(self.len().saturating_sub(1) as u64)
    }

    /// For `a < b` with `a ≰ inf cov(b)`: some `c ≤ inf cov(b)` with `c ⋖ a`
    /// dominates every `d ≤ inf cov(b)` below `a`, `inf cov(a) ≤ inf cov(b)`,
    /// and `[a, b]` has exactly one saturated chain.
    fn verify_lower_cover_properties(&self) -> Report {
        const CHECK: &str = "lower-covers";
        let p = &self.poset;
        let mut topo: Vec<usize> = (0..self.len()).collect();
        topo.sort_by_key(|&b| p.down_set(b).count_ones(..));
        let mut cases = 0u64;
        let mut chains = vec![0u64; self.len()];
        for a in 0..self.len() {
            // Saturated chains from a to every b above it.
            for &x in &topo {
                chains[x] = if x == a {
                    1
                } else if p.lt(a, x) {
                    p.lower_covers(x).iter().map(|&y| chains[y]).sum()
                } else {
                    0
                };
            }
            for b in p.up_set(a).ones().filter(|&b| b != a) {
                let Some(ib) = p.inf_cov(b) else { continue };
                if p.leq(a, ib) {
                    continue;
                }
                cases += 1;
                let c = p.meet(a, ib);
                let dominated = c.is_some_and(|c| {
                    p.lower_covers(a).contains(&c) && {
                        let mut below = p.down_set(a).clone();
                        below.intersect_with(p.down_set(ib));
                        below.is_subset(p.down_set(c))
                    }
                });
                if !dominated {
                    return Report::fail(CHECK, json!({ "a": a, "b": b, "clause": "cover" }));
                }
                if !p.inf_cov(a).is_some_and(|ia| p.leq(ia, ib)) {
                    return Report::fail(CHECK, json!({ "a": a, "b": b, "clause": "monotone" }));
                }
                if chains[b] != 1 {
                    return Report::fail(
                        CHECK,
                        json!({ "a": a, "b": b, "clause": "unique-chain", "chains": chains[b] }),
                    );
                }
            }
        }
        Report::pass(CHECK).with_cases(cases)
    }
}
