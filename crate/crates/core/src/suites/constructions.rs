use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use rand::Rng as _;
use serde_json::json;

use super::{guard, shuffle, stream, Rng};
use crate::constructions::{
    cantor_bernstein, diagonal_escape, fold_union_mov, pair_pairs, pairpairs_to_s5, s2_bijection,
    union_mov, LexCarrier, MapKind, MapWitness, TupleCoder,
};
use crate::perm::enumerate::{all_perms, Sequences};
use crate::perm::Perm;
use crate::report::Report;

fn is_bijection(h: &[usize]) -> bool {
    let mut s = h.to_vec();
    s.sort_unstable();
    s.iter().copied().eq(0..h.len())
}

fn mov_set(p: &Perm) -> BTreeSet<usize> {
    (0..p.len()).filter(|&z| p.apply(z) != z).collect()
}

/// Bijections from pairs of injections, exhaustively up to `exhaustive` and on
/// `random` pairs per size above it. Every image must be `f(a)` or `g⁻¹(a)`.
pub fn cantor_bernstein_check(
    max: usize,
    exhaustive: usize,
    random: usize,
    rng: &mut Rng,
) -> Report {
    const CHECK: &str = "cantor-bernstein";
    guard(CHECK, || {
        let mut cases = 0;
        for n in 0..=max {
            let pairs: Vec<(Vec<usize>, Vec<usize>)> = if n <= exhaustive {
                let all = all_perms(n).map_err(|e| e.to_string())?;
                all.iter()
                    .flat_map(|f| {
                        all.iter()
                            .map(move |g| (f.images().to_vec(), g.images().to_vec()))
                    })
                    .collect()
            } else {
                (0..random)
                    .map(|_| (shuffle(rng, n), shuffle(rng, n)))
                    .collect()
            };
            for (f, g) in pairs {
                cases += 1;
                let h = cantor_bernstein(&f, &g).map_err(|e| e.to_string())?;
                let ok = is_bijection(&h) && (0..n).all(|a| h[a] == f[a] || g[h[a]] == a);
                if !ok {
                    return Ok(Report::fail(CHECK, json!({ "f": f, "g": g, "h": h })));
                }
            }
        }
        Ok(Report::pass(CHECK).with_cases(cases))
    })
}

/// All `g` compatible with `f`: on each fiber of `f`, a non-identity
/// permutation moving only points of that fiber.
fn compliant_gs(f: &[Perm]) -> Vec<BTreeMap<Perm, Perm>> {
    let n = f.len();
    let mut fibers: BTreeMap<&Perm, Vec<usize>> = BTreeMap::new();
    for (z, t) in f.iter().enumerate() {
        fibers.entry(t).or_default().push(z);
    }
    let mut out = vec![BTreeMap::new()];
    for (t, fiber) in fibers {
        let local = all_perms(fiber.len()).expect("fibers are small");
        let options: Vec<Perm> = local
            .iter()
            .filter(|p| !p.is_identity())
            .map(|p| {
                let mut img: Vec<usize> = (0..n).collect();
                for (i, &z) in fiber.iter().enumerate() {
                    img[z] = fiber[p.apply(i)];
                }
                Perm::from_images(img).expect("lifted permutation")
            })
            .collect();
        out = out
            .into_iter()
            .flat_map(|g| {
                options.iter().map(move |o| {
                    let mut g = g.clone();
                    g.insert(t.clone(), o.clone());
                    g
                })
            })
            .collect();
    }
    out
}

/// The diagonal permutation escapes `ran f` for every `f: x → S(x)` on
/// `|x| = n` and every compliant `g`.
pub fn diagonal_check(n: usize) -> Report {
    const CHECK: &str = "diagonal";
    guard(CHECK, || {
        let perms = all_perms(n).map_err(|e| e.to_string())?;
        let mut cases = 0;
        for idx in Sequences::new(perms.len(), n) {
            let f: Vec<Perm> = idx.iter().map(|&i| perms[i].clone()).collect();
            for g in compliant_gs(&f) {
                cases += 1;
                let d = diagonal_escape(&f, &g).map_err(|e| e.to_string())?;
                if f.contains(&d) {
                    return Ok(Report::fail(CHECK, json!({ "f": f, "escape": d })));
                }
            }
        }
        Ok(Report::pass(CHECK)
            .with_cases(cases)
            .with_detail(json!({ "n": n })))
    })
}

/// `mov(h) = mov(f) ∪ mov(g)` for `h = union_mov(f, g)`: all pairs at
/// `exhaustive`, `random` pairs at `random_n`.
pub fn union_mov_check(exhaustive: usize, random_n: usize, random: usize, rng: &mut Rng) -> Report {
    const CHECK: &str = "union-mov";
    guard(CHECK, || {
        let all = all_perms(exhaustive).map_err(|e| e.to_string())?;
        let mut pairs: Vec<(Perm, Perm)> = all
            .iter()
            .flat_map(|f| all.iter().map(move |g| (f.clone(), g.clone())))
            .collect();
        for _ in 0..random {
            let f = Perm::from_images(shuffle(rng, random_n)).map_err(|e| e.to_string())?;
            let g = Perm::from_images(shuffle(rng, random_n)).map_err(|e| e.to_string())?;
            pairs.push((f, g));
        }
        for (f, g) in &pairs {
            let h = union_mov(f, g).map_err(|e| e.to_string())?;
            let want: BTreeSet<usize> = mov_set(f).union(&mov_set(g)).copied().collect();
            if mov_set(&h) != want || !is_bijection(h.images()) {
                return Ok(Report::fail(CHECK, json!({ "f": f, "g": g, "h": h })));
            }
        }
        Ok(Report::pass(CHECK).with_cases(pairs.len() as u64))
    })
}

/// The fold of an injective sequence moves exactly the union of what its
/// entries move.
pub fn fold_check(n: usize, count: usize, max_len: usize, rng: &mut Rng) -> Report {
    const CHECK: &str = "fold-union-mov";
    guard(CHECK, || {
        for _ in 0..count {
            let len = rng.gen_range(0..=max_len);
            let mut ts: Vec<Perm> = Vec::new();
            for _ in 0..len {
                let t = Perm::from_images(shuffle(rng, n)).map_err(|e| e.to_string())?;
                if !ts.contains(&t) {
                    ts.push(t);
                }
            }
            let h = fold_union_mov(n, &ts).map_err(|e| e.to_string())?;
            let want: BTreeSet<usize> = ts.iter().flat_map(mov_set).collect();
            if mov_set(&h) != want {
                return Ok(Report::fail(CHECK, json!({ "seq": ts, "fold": h })));
            }
        }
        Ok(Report::pass(CHECK).with_cases(count as u64))
    })
}

/// `|S₂(x)| = C(|x|, 2) + 1`, counted by brute force and through the bijection.
pub fn s2_count_check(max: usize) -> Report {
    const CHECK: &str = "s2-count";
    guard(CHECK, || {
        let mut counts = Vec::new();
        for n in 1..=max {
            let w = s2_bijection(n).map_err(|e| e.to_string())?;
            w.verify().map_err(|e| e.to_string())?;
            let brute = all_perms(n)
                .map_err(|e| e.to_string())?
                .iter()
                .filter(|p| p.mov_len() <= 2)
                .count();
            let want = n * n.saturating_sub(1) / 2 + 1;
            counts.push(brute);
            if brute != want || w.len() != want {
                return Ok(Report::fail(
                    CHECK,
                    json!({ "n": n, "brute": brute, "bijection": w.len(), "expected": want }),
                ));
            }
        }
        Ok(Report::pass(CHECK)
            .with_cases(max as u64)
            .with_detail(json!({ "counts": counts })))
    })
}

/// Pairs of pairs into `S₅(x)` on an `n`-element carrier: injective, with every
/// image moving at most five points.
pub fn pairpairs_check(n: usize) -> Report {
    const CHECK: &str = "pairpairs-s5";
    guard(CHECK, || {
        let anchors: Vec<usize> = (0..8).collect();
        let w = pairpairs_to_s5(n, &anchors).map_err(|e| e.to_string())?;
        let pairs = n * n.saturating_sub(1) / 2;
        let want = 1 + pairs * pairs.saturating_sub(1) / 2;
        let images: BTreeSet<&Perm> = w.graph.iter().map(|(_, p)| p).collect();
        let domain_ok = w.len() == want && pair_pairs(n).len() == want;
        if !domain_ok || images.len() != w.len() || images.iter().any(|p| p.mov_len() > 5) {
            return Ok(Report::fail(
                CHECK,
                json!({ "n": n, "domain": w.len(), "expected": want, "distinct_images": images.len() }),
            ));
        }
        Ok(Report::pass(CHECK).with_cases(w.len() as u64))
    })
}

/// `xⁿ → S₂ₙ₊₁(x) ∖ S₂ₙ(x)` on a `carrier`-element set: injective, decodable,
/// and every image moves exactly `2n + 1` points.
pub fn tuple_coder_check(n: usize, carrier: usize) -> Report {
    let check = format!("tuple-coder-{n}");
    guard(&check.clone(), || {
        let anchors: Vec<usize> = (0..2 * n * (n + 1)).collect();
        let coder = TupleCoder::new(carrier, n, &anchors).map_err(|e| e.to_string())?;
        let mut images = BTreeSet::new();
        let mut cases = 0;
        for t in Sequences::new(carrier, n) {
            cases += 1;
            let p = coder.encode(&t).map_err(|e| e.to_string())?;
            let back = coder.decode(&p).map_err(|e| e.to_string())?;
            if p.mov_len() != 2 * n + 1 || back != t || !images.insert(p.clone()) {
                return Ok(Report::fail(
                    check,
                    json!({ "t": t, "image": p, "decoded": back }),
                ));
            }
        }
        Ok(Report::pass(check).with_cases(cases))
    })
}

/// The induced order on `S(x)` is a strict total order, and fiber ranks turn
/// random finite-to-one maps into injections.
pub fn lex_order_check(random_maps: usize, rng: &mut Rng) -> Report {
    const CHECK: &str = "lex-order";
    guard(CHECK, || {
        let x = LexCarrier::new(4, vec![vec![], vec![0], vec![1, 2], vec![0, 1, 3]])
            .map_err(|e| e.to_string())?;
        let all = all_perms(x.len()).map_err(|e| e.to_string())?;
        let cmp = |a: &Perm, b: &Perm| x.cmp_perms(a, b).expect("same carrier");
        let mut pairs = 0;
        for (i, t) in all.iter().enumerate() {
            for (j, u) in all.iter().enumerate() {
                let tu = cmp(t, u);
                if (tu == Ordering::Equal) != (i == j) || tu != cmp(u, t).reverse() {
                    return Ok(Report::fail(
                        CHECK,
                        json!({ "t": t, "u": u, "clause": "trichotomy" }),
                    ));
                }
                if i < j {
                    pairs += 1;
                }
                if tu != Ordering::Less {
                    continue;
                }
                if let Some(v) = all
                    .iter()
                    .find(|v| cmp(u, v) == Ordering::Less && cmp(t, v) != Ordering::Less)
                {
                    return Ok(Report::fail(
                        CHECK,
                        json!({ "t": t, "u": u, "v": v, "clause": "transitivity" }),
                    ));
                }
            }
        }
        for _ in 0..random_maps {
            let graph: Vec<(Perm, usize)> = all
                .iter()
                .map(|t| (t.clone(), rng.gen_range(0..x.len())))
                .collect();
            let f = MapWitness::new(MapKind::FiniteToOne, "S(x)", "x").with_graph(graph.clone());
            let h = x.fiber_rank_injection(&f).map_err(|e| e.to_string())?;
            let images: BTreeSet<(usize, usize)> = h.graph.iter().map(|(_, v)| *v).collect();
            let consistent = h.graph.iter().all(|(t, (i, z))| {
                let fiber = graph.iter().filter(|(_, w)| w == z).count();
                graph.iter().any(|(s, w)| s == t && w == z) && *i < fiber
            });
            if images.len() != all.len() || !consistent {
                return Ok(Report::fail(CHECK, json!({ "f": graph })));
            }
        }
        Ok(Report::pass(CHECK)
            .with_cases(pairs + random_maps as u64)
            .with_detail(json!({ "pairs": pairs, "random_maps": random_maps })))
    })
}

/// Names accepted by [`construction_checks`], in run order.
pub const CONSTRUCTION_CHECKS: &[&str] = &[
    "cantor-bernstein",
    "diagonal",
    "union-mov",
    "fold-union-mov",
    "s2-count",
    "pairpairs-s5",
    "tuple-coder-1",
    "tuple-coder-2",
    "lex-order",
];

/// Largest `size` the construction suite accepts.
pub const SIZE_CAP: usize = 8;

fn run_named(name: &str, size: usize, rng: &mut Rng) -> Report {
    match name {
        "cantor-bernstein" => cantor_bernstein_check(size, size.min(4), 1000, rng),
        "diagonal" => diagonal_check(size.min(3)),
        "union-mov" => union_mov_check(size.min(4), size, if size > 4 { 1000 } else { 0 }, rng),
        "fold-union-mov" => fold_check(size, 1000, 4, rng),
        "s2-count" => s2_count_check(size.min(7)),
        "pairpairs-s5" => pairpairs_check(size.max(8)),
        "tuple-coder-1" => tuple_coder_check(1, 5),
        "tuple-coder-2" => tuple_coder_check(2, 12),
        "lex-order" => lex_order_check(100, rng),
        _ => unreachable!("unknown construction check {name}"),
    }
}

/// Construction checks scaled by `size`, optionally restricted to the names
/// equal to `only` or starting with `only-`. Each check draws from its own
/// stream of `seed`, so a restricted run reproduces the full run's results.
/// Size 0 runs nothing.
pub fn construction_checks(
    size: usize,
    only: Option<&str>,
    seed: u64,
) -> Result<Vec<Report>, String> {
    if size > SIZE_CAP {
        return Err(format!("size {size} exceeds cap {SIZE_CAP}"));
    }
    let selected: Vec<&str> = CONSTRUCTION_CHECKS
        .iter()
        .copied()
        .filter(|name| {
            only.is_none_or(|o| {
                *name == o || name.strip_prefix(o).is_some_and(|r| r.starts_with('-'))
            })
        })
        .collect();
    if selected.is_empty() {
        return Err(format!(
            "no construction check named {}",
            only.unwrap_or_default()
        ));
    }
    if size == 0 {
        return Ok(Vec::new());
    }
    Ok(selected
        .into_iter()
        .map(|name| run_named(name, size, &mut stream(seed, name)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for rep in construction_checks(3, None, 1).unwrap() {
            assert!(rep.pass, "{rep:?}");
        }
        assert!(construction_checks(0, None, 1).unwrap().is_empty());
        assert!(construction_checks(9, None, 1).is_err());
        assert!(construction_checks(3, Some("nope"), 1).is_err());
    }

    #[test]
    fn only_selects_by_name() {
        let names = |only| -> Vec<String> {
            construction_checks(2, Some(only), 5)
                .unwrap()
                .into_iter()
                .map(|r| r.check)
                .collect()
        };
        assert_eq!(names("diagonal"), ["diagonal"]);
        assert_eq!(names("tuple-coder"), ["tuple-coder-1", "tuple-coder-2"]);
        let full = construction_checks(5, None, 9).unwrap();
        let one = construction_checks(5, Some("cantor-bernstein"), 9).unwrap();
        assert_eq!(
            full[0].clone().normalized(false),
            one[0].clone().normalized(false)
        );
    }

    #[test]
    fn diagonal_case_count() {
        // Only constant f admit a compliant g at three points: 6 choices of f, 5 of g.
        assert_eq!(diagonal_check(3).cases, 30);
    }
}
