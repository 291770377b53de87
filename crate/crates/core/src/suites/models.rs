use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng as _;
use serde_json::json;

use super::{guard, Rng};
use crate::perm::enumerate::Combinations;
use crate::report::Report;
use crate::shelah::{
    closure, extend_automorphism, is_closed, sibling_swap_witness, triple_injection, ShelahAtom,
    ShelahPerm, Universe,
};
use crate::symmetric::{mostowski_witness, n23_projection, transitivity_witness, Q};

/// For every `B` with `|B| ≤ max_support` and all `k`-sets `p`, `q` disjoint
/// from `B`, the witness fixes `B` pointwise and carries `p` onto `q`.
pub fn transitivity_check(n: usize, max_support: usize, k: usize) -> Report {
    const CHECK: &str = "transitivity";
    guard(CHECK, || {
        let mut cases = 0u64;
        for s in 0..=max_support.min(n) {
            for b in Combinations::new(n, s) {
                let rest: Vec<usize> = (0..n).filter(|z| !b.contains(z)).collect();
                let ksets: Vec<BTreeSet<usize>> = Combinations::new(rest.len(), k)
                    .map(|c| c.into_iter().map(|i| rest[i]).collect())
                    .collect();
                let bset: BTreeSet<usize> = b.iter().copied().collect();
                for p in &ksets {
                    for q in &ksets {
                        cases += 1;
                        let tau =
                            transitivity_witness(n, &bset, p, q).map_err(|e| e.to_string())?;
                        let image: BTreeSet<usize> = p.iter().map(|&z| tau.apply(z)).collect();
                        if b.iter().any(|&z| tau.apply(z) != z) || image != *q {
                            return Ok(Report::fail(
                                CHECK,
                                json!({ "n": n, "B": b, "p": p, "q": q, "tau": tau }),
                            ));
                        }
                    }
                }
            }
        }
        Ok(Report::pass(CHECK)
            .with_cases(cases)
            .with_detail(json!({ "atoms": n, "support": max_support, "k": k })))
    })
}

/// The piecewise-linear witness fixes every point of `fix`, moves `a` and is
/// increasing on every piece.
pub fn mostowski_check(fix: &[Q], a: Q) -> Report {
    const CHECK: &str = "mostowski-witness";
    guard(CHECK, || {
        let w = mostowski_witness(fix, a, None).map_err(|e| e.to_string())?;
        let ok = fix.iter().all(|&b| w.eval(b) == b)
            && w.eval(a) != a
            && w.slopes().iter().all(|s| *s > Q::from_integer(0))
            && w.inverse().eval(w.eval(a)) == a;
        let detail = json!({ "map": w.to_string(), "image": w.eval(a).to_string() });
        Ok(if ok {
            Report::pass(CHECK).with_cases(1).with_detail(detail)
        } else {
            Report::fail(CHECK, detail)
        })
    })
}

/// The block projection on `blocks` consecutive triples is three-to-one and
/// commutes with every block-internal permutation.
pub fn n23_check(blocks: usize, w: u32) -> Report {
    const CHECK: &str = "n23-projection";
    guard(CHECK, || {
        let bs: Vec<Vec<usize>> = (0..blocks)
            .map(|i| vec![3 * i, 3 * i + 1, 3 * i + 2])
            .collect();
        let p = n23_projection(&bs, w).map_err(|e| e.to_string())?;
        let stats = p.witness.verify().map_err(|e| e.to_string())?;
        let want_checked = if blocks <= crate::symmetric::N23_EXHAUSTIVE_BLOCKS {
            6usize.pow(blocks as u32)
        } else {
            0
        };
        let ok = stats.image_size == blocks
            && (blocks == 0 || stats.max_fiber == 3)
            && p.checked == want_checked;
        let detail = json!({ "blocks": blocks, "checked": p.checked });
        Ok(if ok {
            Report::pass(CHECK)
                .with_cases(p.checked as u64)
                .with_detail(detail)
        } else {
            Report::fail(CHECK, detail)
        })
    })
}

/// Named closure fixtures in the textual atom syntax.
pub const SHELAH_FIXTURES: &[(&str, &[&str])] = &[
    ("f1", &["(node 0 (((base 0)→(base 1)) ((base 1)→(base 0))) 0)"]),
    (
        "f2",
        &["(node 1 (((node 0 (((base 0)→(base 1)) ((base 1)→(base 0))) 1)→(base 2)) ((base 2)→(node 0 (((base 0)→(base 1)) ((base 1)→(base 0))) 1))) 2)"],
    ),
    ("f3", &["(base 3)", "(base 5)"]),
];

pub fn shelah_fixture(name: &str) -> Option<Result<Vec<ShelahAtom>, String>> {
    SHELAH_FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, atoms)| {
            atoms
                .iter()
                .map(|s| s.parse::<ShelahAtom>().map_err(|e| e.to_string()))
                .collect()
        })
}

fn closure_check(u: &Universe, count: usize, rng: &mut Rng) -> Report {
    const CHECK: &str = "closure-idempotent";
    for _ in 0..count {
        let k = rng.gen_range(1..=4);
        let s: Vec<ShelahAtom> = (0..k).map(|_| u.random_atom(rng, 2)).collect();
        let c = closure(&s);
        if closure(&c) != c || !is_closed(&c) || s.iter().any(|x| !c.contains(x)) {
            let set: Vec<String> = s.iter().map(ToString::to_string).collect();
            return Report::fail(CHECK, json!({ "set": set }));
        }
    }
    Report::pass(CHECK).with_cases(count as u64)
}

/// Random closed `C` and `g ∈ 𝒢_m` avoiding it: the extension fixes `C` and
/// agrees with `g` on the sampled atoms of level at most `m`.
fn extension_check(u: &Universe, count: usize, rng: &mut Rng) -> Report {
    const CHECK: &str = "extension";
    let mut cases = 0;
    while cases < count {
        let seed: Vec<ShelahAtom> = (0..rng.gen_range(0..=2))
            .map(|_| u.random_atom(rng, 1))
            .collect();
        let c = closure(&seed);
        let free: Vec<ShelahAtom> = u
            .base_atoms()
            .into_iter()
            .filter(|x| !c.contains(x))
            .collect();
        let m = rng.gen_range(0..=1u32);
        let g = if m == 0 {
            let mut pick = free.clone();
            pick.shuffle(rng);
            pick.truncate(rng.gen_range(2..=3).min(pick.len()));
            if pick.len() < 2 {
                continue;
            }
            ShelahPerm::cycle(0, &pick).expect("distinct base atoms")
        } else {
            let node = u.random_atom_at(rng, 1);
            let sibs: Vec<ShelahAtom> = (0..3).filter_map(|t| node.with_tag(t)).collect();
            if sibs.iter().any(|x| c.contains(x)) {
                continue;
            }
            ShelahPerm::cycle(1, &sibs[..2]).expect("two siblings")
        };
        cases += 1;
        let probes: Vec<ShelahAtom> = c
            .iter()
            .cloned()
            .chain(u.base_atoms())
            .chain((0..4).map(|_| u.random_atom(rng, 2)))
            .collect();
        for x in &probes {
            let img = match extend_automorphism(m, &g, &c, x) {
                Ok(img) => img,
                Err(e) => {
                    return Report::fail(
                        CHECK,
                        json!({ "g": g.to_string(), "error": e.to_string() }),
                    )
                }
            };
            let fixed_ok = !c.contains(x) || img == *x;
            let restrict_ok = x.level() > m || img == g.apply(x);
            if !fixed_ok || !restrict_ok {
                return Report::fail(
                    CHECK,
                    json!({ "g": g.to_string(), "atom": x.to_string(), "image": img.to_string() }),
                );
            }
        }
    }
    Report::pass(CHECK).with_cases(count as u64)
}

fn swap_case(c: &BTreeSet<ShelahAtom>, a: &ShelahAtom, b: &ShelahAtom) -> Result<(), String> {
    let w = sibling_swap_witness(c, a, b).map_err(|e| e.to_string())?;
    let moved = w.pi.apply(a).map_err(|e| e.to_string())?;
    let keeps_b = w.pi.apply(b).map_err(|e| e.to_string())? == *b;
    let keeps_c = c.iter().all(|x| w.pi.apply(x).as_ref() == Ok(x));
    if moved == *a || !keeps_b || !keeps_c || moved != w.image {
        return Err(format!("clauses fail for a = {a}, b = {b}"));
    }
    Ok(())
}

/// Every level-one `a` over the base sample against every other atom `b` of
/// level at most one, with `C` empty or the closure of `b`; level-two atoms
/// are sampled.
fn sibling_check(u: &Universe, level_two: usize, rng: &mut Rng) -> Report {
    const CHECK: &str = "sibling-swap";
    let ones = u.level_one();
    let mut cases = 0u64;
    let mut run = |a: &ShelahAtom, b: &ShelahAtom| -> Result<(), String> {
        for c in [BTreeSet::new(), closure([b])] {
            if c.contains(a) {
                continue;
            }
            cases += 1;
            swap_case(&c, a, b)?;
        }
        Ok(())
    };
    for a in &ones {
        for b in u.base_atoms().iter().chain(&ones).filter(|b| *b != a) {
            if let Err(e) = run(a, b) {
                return Report::fail(CHECK, json!({ "error": e }));
            }
        }
    }
    for _ in 0..level_two {
        let a = u.random_atom_at(rng, 2);
        let sib = a.with_tag(
            (match &a {
                ShelahAtom::Node { tag, .. } => tag + 1,
                ShelahAtom::Base(_) => 0,
            }) % 3,
        );
        let others = [
            sib,
            Some(u.random_atom(rng, 2)),
            Some(u.random_atom(rng, 1)),
        ];
        for b in others.into_iter().flatten().filter(|b| *b != a) {
            if let Err(e) = run(&a, &b) {
                return Report::fail(CHECK, json!({ "error": e }));
            }
        }
    }
    Report::pass(CHECK).with_cases(cases)
}

/// Triples from distinct permutations are pairwise disjoint.
fn triple_check(u: &Universe, count: usize, rng: &mut Rng) -> Report {
    const CHECK: &str = "triple-injection";
    let mut perms: Vec<ShelahPerm> = Vec::new();
    let mut guard = 0;
    while perms.len() < count && guard < 100 * count {
        guard += 1;
        let level = rng.gen_range(0..=2);
        let p = u.random_perm(rng, level, 3);
        if !perms.iter().any(|q| q.pairs() == p.pairs()) {
            perms.push(p);
        }
    }
    let mut seen: BTreeSet<ShelahAtom> = BTreeSet::new();
    for p in &perms {
        let t = match triple_injection(p) {
            Ok(t) => t,
            Err(e) => return Report::fail(CHECK, json!({ "error": e.to_string() })),
        };
        for x in t {
            if !seen.insert(x.clone()) {
                return Report::fail(
                    CHECK,
                    json!({ "perm": p.to_string(), "atom": x.to_string() }),
                );
            }
        }
    }
    Report::pass(CHECK).with_cases(perms.len() as u64)
}

/// Closure, extension, sibling-swap and triple checks over a `base`-atom sample.
pub fn shelah_check(
    base: u32,
    random: usize,
    level_two: usize,
    triples: usize,
    rng: &mut Rng,
) -> Report {
    let u = Universe::new(base);
    Report::composite(
        "shelah",
        vec![
            closure_check(&u, random, rng),
            extension_check(&u, random, rng),
            sibling_check(&u, level_two, rng),
            triple_check(&u, triples, rng),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suites::rng;

    #[test]
    fn model_suites_pass() {
        assert!(transitivity_check(6, 2, 2).pass);
        let half = Q::new(1, 2);
        let r = mostowski_check(&[Q::from_integer(0), Q::from_integer(1)], half);
        assert!(r.pass, "{r:?}");
        assert!(n23_check(3, crate::perm::DEFAULT_W).pass);
        assert!(n23_check(0, crate::perm::DEFAULT_W).pass);
        let r = shelah_check(4, 20, 10, 20, &mut rng(3));
        assert!(r.pass, "{r:#?}");
    }

    #[test]
    fn fixtures_parse() {
        for (name, _) in SHELAH_FIXTURES {
            let atoms = shelah_fixture(name).unwrap().unwrap();
            assert!(is_closed(&closure(&atoms)));
        }
        assert!(shelah_fixture("nope").is_none());
    }
}
