use fixedbitset::FixedBitSet;
use serde_json::json;

use super::LatticeError;
use crate::perm::Perm;
use crate::report::Report;

/// A finite poset on `0..len` stored as its covering relation plus the
/// reflexive down-set and up-set of every element.
#[derive(Clone, Debug)]
pub struct Poset {
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    down: Vec<FixedBitSet>,
    up: Vec<FixedBitSet>,
}

impl Poset {
    /// Builds the order generated by `covers` (pairs `(a, b)` with `a ⋖ b`).
    ///
    /// Fails if the pairs contain a cycle or a transitive edge.
    pub fn from_covers(len: usize, covers: &[(usize, usize)]) -> Result<Self, LatticeError> {
        let mut lower = vec![Vec::new(); len];
        for &(a, b) in covers {
            if a >= len || b >= len {
                return Err(LatticeError::OutOfRange {
                    elem: a.max(b),
                    len,
                });
            }
            if !lower[b].contains(&a) {
                lower[b].push(a);
            }
        }
        for l in &mut lower {
            l.sort_unstable();
        }
        let p = Self::close(lower)?;
        for b in 0..len {
            for &a in &p.lower[b] {
                if p.lower[b].iter().any(|&x| x != a && p.lt(a, x)) {
                    return Err(LatticeError::TransitiveEdge { lower: a, upper: b });
                }
            }
        }
        Ok(p)
    }

    /// Builds the poset whose strict order is the transitive closure of `less`.
    pub fn from_relation(len: usize, less: &[(usize, usize)]) -> Result<Self, LatticeError> {
        let mut lower = vec![Vec::new(); len];
        for &(a, b) in less {
            if a >= len || b >= len {
                return Err(LatticeError::OutOfRange {
                    elem: a.max(b),
                    len,
                });
            }
            lower[b].push(a);
        }
        let p = Self::close(lower)?;
        let covers: Vec<(usize, usize)> = (0..len)
            .flat_map(|b| {
                let p = &p;
                p.down[b]
                    .ones()
                    .filter(move |&a| a != b)
                    .filter(move |&a| !p.down[b].ones().any(|x| x != a && x != b && p.lt(a, x)))
                    .map(move |a| (a, b))
            })
            .collect();
        Self::from_covers(len, &covers)
    }

    fn close(lower: Vec<Vec<usize>>) -> Result<Self, LatticeError> {
        let len = lower.len();
        let mut upper = vec![Vec::new(); len];
        for (b, ls) in lower.iter().enumerate() {
            for &a in ls {
                upper[a].push(b);
            }
        }
        // Kahn's algorithm from the minimal elements upwards.
        let mut pending: Vec<usize> = lower.iter().map(Vec::len).collect();
        let mut ready: Vec<usize> = (0..len).filter(|&b| pending[b] == 0).collect();
        let mut down = vec![FixedBitSet::with_capacity(len); len];
        let mut done = 0;
        while let Some(b) = ready.pop() {
            done += 1;
            down[b].insert(b);
            for &a in &lower[b] {
                let da = down[a].clone();
                down[b].union_with(&da);
            }
            for &c in &upper[b] {
                pending[c] -= 1;
                if pending[c] == 0 {
                    ready.push(c);
                }
            }
        }
        if done < len {
            let elem = (0..len).find(|&b| pending[b] > 0).unwrap_or(0);
            return Err(LatticeError::NotAPoset { elem });
        }
        let mut up = vec![FixedBitSet::with_capacity(len); len];
        for (b, d) in down.iter().enumerate() {
            for a in d.ones() {
                up[a].insert(b);
            }
        }
        for u in &mut upper {
            u.sort_unstable();
        }
        Ok(Poset {
            lower,
            upper,
            down,
            up,
        })
    }

    /// The chain `0 < 1 < … < len-1`.
    pub fn chain(len: usize) -> Self {
        let covers: Vec<_> = (1..len).map(|b| (b - 1, b)).collect();
        Self::from_covers(len, &covers).expect("a chain is a poset")
    }

    /// The Boolean lattice of subsets of `[0, n)`, element `m` being the bitmask.
    pub fn boolean(n: u32) -> Self {
        let len = 1usize << n;
        let covers: Vec<_> = (0..len)
            .flat_map(|m| {
                (0..n)
                    .filter(move |i| m >> i & 1 == 0)
                    .map(move |i| (m, m | 1 << i))
            })
            .collect();
        Self::from_covers(len, &covers).expect("a Boolean lattice is a poset")
    }

    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.down[b].contains(a)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.down[b].contains(a)
    }

    /// `cov(b)`: the elements covered by `b`, ascending.
    pub fn lower_covers(&self, b: usize) -> &[usize] {
        &self.lower[b]
    }

    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.upper[a]
    }

    pub fn covers(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.lower
            .iter()
            .enumerate()
            .flat_map(|(b, ls)| ls.iter().map(move |&a| (a, b)))
    }

    pub fn down_set(&self, b: usize) -> &FixedBitSet {
        &self.down[b]
    }

    pub fn up_set(&self, a: usize) -> &FixedBitSet {
        &self.up[a]
    }

    pub fn least(&self) -> Option<usize> {
        (0..self.len()).find(|&a| self.up[a].count_ones(..) == self.len())
    }

    pub fn greatest(&self) -> Option<usize> {
        (0..self.len()).find(|&b| self.down[b].count_ones(..) == self.len())
    }

    /// Greatest lower bound of a set given as a bitset of candidates.
    fn greatest_in(&self, bounds: &FixedBitSet) -> Option<usize> {
        let n = bounds.count_ones(..);
        bounds
            .ones()
            .find(|&x| self.down[x].count_ones(..) >= n && bounds.is_subset(&self.down[x]))
    }

    fn least_in(&self, bounds: &FixedBitSet) -> Option<usize> {
        let n = bounds.count_ones(..);
        bounds
            .ones()
            .find(|&x| self.up[x].count_ones(..) >= n && bounds.is_subset(&self.up[x]))
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let mut i = self.down[a].clone();
        i.intersect_with(&self.down[b]);
        self.greatest_in(&i)
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let mut i = self.up[a].clone();
        i.intersect_with(&self.up[b]);
        self.least_in(&i)
    }

    /// `inf M`; the infimum of the empty set is the greatest element.
    pub fn inf(&self, m: &[usize]) -> Option<usize> {
        let mut i = FixedBitSet::with_capacity(self.len());
        i.insert_range(..);
        for &a in m {
            i.intersect_with(&self.down[a]);
        }
        self.greatest_in(&i)
    }

    /// `sup M`; the supremum of the empty set is the least element.
    pub fn sup(&self, m: &[usize]) -> Option<usize> {
        let mut i = FixedBitSet::with_capacity(self.len());
        i.insert_range(..);
        for &a in m {
            i.intersect_with(&self.up[a]);
        }
        self.least_in(&i)
    }

    /// `inf cov(b)`, or `None` for minimal elements.
    pub fn inf_cov(&self, b: usize) -> Option<usize> {
        match self.lower[b].as_slice() {
            [] => None,
            ls => self.inf(ls),
        }
    }

    /// Whether `g` is an order automorphism: `a < b ⇔ g(a) < g(b)` for all pairs.
    pub fn is_automorphism(&self, g: &Perm) -> bool {
        self.automorphism_violation(g).is_none()
    }

    /// The first pair on which `g` fails to preserve or reflect the order.
    pub fn automorphism_violation(&self, g: &Perm) -> Option<(usize, usize)> {
        if g.len() != self.len() {
            return Some((0, 0));
        }
        (0..self.len()).find_map(|b| {
            let gb = g.apply(b);
            (0..self.len())
                .find(|&a| self.down[b].contains(a) != self.down[gb].contains(g.apply(a)))
                .map(|a| (a, b))
        })
    }

    /// All order automorphisms, by backtracking over elements in height order.
    /// Gives up with an error once more than `cap` are found.
    pub fn automorphisms(&self, cap: usize) -> Result<Vec<Perm>, LatticeError> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&b| (self.down[b].count_ones(..), b));
        let mut out = Vec::new();
        let mut img = vec![usize::MAX; self.len()];
        let mut used = vec![false; self.len()];
        self.extend_auto(&order, 0, &mut img, &mut used, &mut out, cap)?;
        Ok(out)
    }

    fn extend_auto(
        &self,
        order: &[usize],
        i: usize,
        img: &mut [usize],
        used: &mut [bool],
        out: &mut Vec<Perm>,
        cap: usize,
    ) -> Result<(), LatticeError> {
        let Some(&a) = order.get(i) else {
            if out.len() >= cap {
                return Err(LatticeError::Cap {
                    what: "automorphisms",
                    cap,
                });
            }
            out.push(Perm::from_images(img.to_vec()).expect("img is a bijection"));
            return Ok(());
        };
        for x in 0..self.len() {
            if used[x]
                || self.down[x].count_ones(..) != self.down[a].count_ones(..)
                || self.lower[x].len() != self.lower[a].len()
            {
                continue;
            }
            let consistent = order[..i].iter().all(|&b| {
                self.leq(b, a) == self.leq(img[b], x) && self.leq(a, b) == self.leq(x, img[b])
            });
            if consistent {
                img[a] = x;
                used[x] = true;
                self.extend_auto(order, i + 1, img, used, out, cap)?;
                used[x] = false;
            }
        }
        img[a] = usize::MAX;
        Ok(())
    }
}

/// Finitary lower covering condition: every set with a common upper cover has
/// a common lower cover. It suffices to test `M = cov(b)` for each `b`.
pub fn verify_flcc(p: &Poset) -> Report {
    let mut cases = 0;
    for b in 0..p.len() {
        let m = p.lower_covers(b);
        if m.len() < 2 {
            continue;
        }
        cases += 1;
        let common = (0..p.len()).find(|&c| m.iter().all(|&a| p.lower_covers(a).contains(&c)));
        if common.is_none() {
            return Report::fail("flcc", json!({ "b": b, "M": m })).with_cases(cases);
        }
    }
    Report::pass("flcc").with_cases(cases)
}

/// Jordan–Dedekind chain condition, checked on the intervals `[o, b]`.
/// The shortest/longest chain comparison does not rely on the covering
/// condition, so it runs on any poset with a least element.
///
/// Returns the height map when the check passes.
pub fn verify_jordan_dedekind(p: &Poset) -> (Report, Option<Vec<usize>>) {
    const CHECK: &str = "jordan-dedekind";
    let Some(o) = p.least() else {
        return (
            Report::fail(CHECK, json!({ "precondition": "no least element" })),
            None,
        );
    };
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&b| p.down_set(b).count_ones(..));
    // Shortest and longest saturated chain lengths from o, with predecessors.
    let mut short = vec![(0usize, usize::MAX); p.len()];
    let mut long = vec![(0usize, usize::MAX); p.len()];
    for &b in &order {
        if b == o {
            continue;
        }
        let ls = p.lower_covers(b);
        let lo = ls.iter().min_by_key(|&&a| short[a].0).copied().unwrap_or(o);
        let hi = ls.iter().max_by_key(|&&a| long[a].0).copied().unwrap_or(o);
        short[b] = (short[lo].0 + 1, lo);
        long[b] = (long[hi].0 + 1, hi);
    }
    let chain = |t: &[(usize, usize)], mut b: usize| {
        let mut c = vec![b];
        while b != o {
            b = t[b].1;
            c.push(b);
        }
        c.reverse();
        c
    };
    match (0..p.len()).find(|&b| short[b].0 != long[b].0) {
        Some(b) => (
            Report::fail(
                CHECK,
                json!({ "b": b, "chains": [chain(&short, b), chain(&long, b)] }),
            )
            .with_cases(p.len() as u64),
            None,
        ),
        None => (
            Report::pass(CHECK).with_cases(p.len() as u64),
            Some(short.into_iter().map(|(h, _)| h).collect()),
        ),
    }
}

/// Every pair has a meet and a join.
pub fn verify_lattice(p: &Poset) -> Report {
    if p.is_empty() {
        return Report::fail("lattice", json!({ "reason": "empty" }));
    }
    let mut cases = 0;
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            if p.leq(a, b) || p.leq(b, a) {
                continue;
            }
            cases += 1;
            if p.meet(a, b).is_none() {
                return Report::fail("lattice", json!({ "pair": [a, b], "missing": "meet" }))
                    .with_cases(cases);
            }
            if p.join(a, b).is_none() {
                return Report::fail("lattice", json!({ "pair": [a, b], "missing": "join" }))
                    .with_cases(cases);
            }
        }
    }
    Report::pass("lattice").with_cases(cases)
}

/// Every element of height 2 covers exactly four elements.
pub fn verify_height_two_rule(p: &Poset, hght: &[usize]) -> Report {
    let mut cases = 0;
    for b in (0..p.len()).filter(|&b| hght[b] == 2) {
        cases += 1;
        let k = p.lower_covers(b).len();
        if k != 4 {
            return Report::fail("height-two-covers", json!({ "b": b, "covers": k }))
                .with_cases(cases);
        }
    }
    Report::pass("height-two-covers").with_cases(cases)
}

/// Above height 2, each `c ⋖ inf cov(b)` is the `inf cov` of exactly four
/// members of `cov(b)`.
pub fn verify_fiber_rule(p: &Poset, hght: &[usize]) -> Report {
    let mut cases = 0;
    for b in (0..p.len()).filter(|&b| hght[b] > 2) {
        let Some(i) = p.inf_cov(b) else {
            return Report::fail("fiber-four", json!({ "b": b, "reason": "no inf cov" }));
        };
        for &c in p.lower_covers(i) {
            cases += 1;
            let n = p
                .lower_covers(b)
                .iter()
                .filter(|&&a| p.inf_cov(a) == Some(c))
                .count();
            if n != 4 {
                return Report::fail("fiber-four", json!({ "b": b, "c": c, "count": n }))
                    .with_cases(cases);
            }
        }
    }
    Report::pass("fiber-four").with_cases(cases)
}

/// All generic building-block checks, reported individually.
pub fn verify_building_block(p: &Poset) -> Report {
    let mut checks = vec![verify_lattice(p), verify_flcc(p)];
    let (jd, hght) = verify_jordan_dedekind(p);
    checks.push(jd);
    match hght {
        Some(h) => {
            checks.push(verify_height_two_rule(p, &h));
            checks.push(verify_fiber_rule(p, &h));
        }
        None => {
            let skipped = json!({ "precondition": "heights unavailable" });
            checks.push(Report::fail("height-two-covers", skipped.clone()));
            checks.push(Report::fail("fiber-four", skipped));
        }
    }
    Report::composite("building-block", checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// z ⋖ x; x, y ⋖ m1; x, y ⋖ m2.
    fn n_shaped() -> Poset {
        Poset::from_covers(5, &[(0, 1), (1, 3), (2, 3), (1, 4), (2, 4)]).unwrap()
    }

    #[test]
    fn closure_and_covers() {
        let p = Poset::boolean(3);
        assert_eq!(p.least(), Some(0));
        assert_eq!(p.greatest(), Some(7));
        assert!(p.lt(1, 7));
        assert!(!p.leq(1, 6));
        assert_eq!(p.meet(3, 6), Some(2));
        assert_eq!(p.join(1, 2), Some(3));
        assert_eq!(p.sup(&[]), Some(0));
        assert_eq!(p.inf(&[]), Some(7));
        assert_eq!(p.inf_cov(7), Some(0));
        let q = Poset::from_relation(8, &p.covers().collect::<Vec<_>>()).unwrap();
        assert_eq!(
            q.covers().collect::<Vec<_>>(),
            p.covers().collect::<Vec<_>>()
        );
        // The full order as a relation recovers the same covers.
        let all: Vec<_> = (0..8)
            .flat_map(|b| {
                (0..8)
                    .filter(move |&a| a != b && a & b == a)
                    .map(move |a| (a, b))
            })
            .collect();
        let r = Poset::from_relation(8, &all).unwrap();
        assert_eq!(
            r.covers().collect::<Vec<_>>(),
            p.covers().collect::<Vec<_>>()
        );
    }

    #[test]
    fn rejects_cycles_and_transitive_edges() {
        assert!(matches!(
            Poset::from_covers(2, &[(0, 1), (1, 0)]),
            Err(LatticeError::NotAPoset { .. })
        ));
        assert!(matches!(
            Poset::from_covers(3, &[(0, 1), (1, 2), (0, 2)]),
            Err(LatticeError::TransitiveEdge { lower: 0, upper: 2 })
        ));
    }

    #[test]
    fn flcc_examples() {
        assert!(verify_flcc(&Poset::chain(5)).pass);
        assert!(verify_flcc(&Poset::boolean(2)).pass);
        let r = verify_flcc(&n_shaped());
        assert!(!r.pass);
        assert_eq!(r.detail.unwrap()["M"], json!([1, 2]));
    }

    #[test]
    fn heights() {
        let (r, h) = verify_jordan_dedekind(&Poset::chain(4));
        assert!(r.pass);
        assert_eq!(h.unwrap(), vec![0, 1, 2, 3]);
        let (r, h) = verify_jordan_dedekind(&Poset::boolean(3));
        assert!(r.pass);
        let h = h.unwrap();
        assert!((0..8).all(|m| h[m] == (m as u32).count_ones() as usize));
        // Pentagon: o < a < b < 1 and o < c < 1.
        let pentagon = Poset::from_covers(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap();
        assert!(!verify_flcc(&pentagon).pass);
        assert!(!verify_flcc(&Poset::boolean(3)).pass);
        let (r, h) = verify_jordan_dedekind(&pentagon);
        assert!(!r.pass && h.is_none());
        let (r, _) = verify_jordan_dedekind(&n_shaped());
        assert!(!r.pass);
    }

    #[test]
    fn building_block_examples() {
        assert!(verify_building_block(&Poset::chain(1)).pass);
        let r = verify_building_block(&Poset::boolean(2));
        assert!(!r.pass);
        assert!(r.find("lattice").unwrap().pass);
        assert!(r.find("flcc").unwrap().pass);
        assert!(!r.find("height-two-covers").unwrap().pass);
        assert!(
            !verify_building_block(&n_shaped())
                .find("lattice")
                .unwrap()
                .pass
        );
    }

    #[test]
    fn automorphism_search() {
        let b3 = Poset::boolean(3);
        let autos = b3.automorphisms(100).unwrap();
        assert_eq!(autos.len(), 6);
        assert!(autos.iter().all(|g| b3.is_automorphism(g)));
        assert!(b3.automorphisms(5).is_err());
        let swap = Perm::transposition(8, 0, 1).unwrap();
        assert!(!b3.is_automorphism(&swap));
    }
}
