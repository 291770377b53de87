use rand::Rng as _;
use serde_json::json;

use super::{guard, shuffle, Rng};
use crate::lattice::{
    extend_to_level, join_map, separation_suite, verify_join_map, FiberPerms, LatticeModel,
};
use crate::perm::Perm;
use crate::report::Report;

/// Full verification of `A_n`, with its size and block sizes.
pub fn level_check(model: &LatticeModel, n: usize) -> Report {
    guard("level", || {
        let level = model
            .tower()
            .level_unchecked(n)
            .map_err(|e| e.to_string())?;
        let r = level.verify();
        let blocks = if n >= 1 {
            model.tower().layer_sizes(n - 1).to_vec()
        } else {
            vec![]
        };
        Ok(r.with_detail(json!({ "n": n, "size": level.len(), "blocks": blocks })))
    })
}

fn random_fiber_perms(model: &LatticeModel, n: usize, rng: &mut Rng) -> Result<FiberPerms, String> {
    let frame = model.frame(n).map_err(|e| e.to_string())?;
    Ok(frame
        .fibers()
        .iter()
        .map(|(k, f)| {
            (
                *k,
                Perm::from_images(shuffle(rng, f.len())).expect("shuffle"),
            )
        })
        .collect())
}

fn phi_check(model: &LatticeModel, n: usize, draws: usize, rng: &mut Rng) -> Report {
    let check = format!("phi-random-{n}");
    guard(&check.clone(), || {
        let frame = model.frame(n).map_err(|e| e.to_string())?;
        for _ in 0..draws {
            let mut p = random_fiber_perms(model, n, rng)?;
            // Leave some fibers untouched so partial families are exercised.
            p.retain(|_, _| rng.gen_bool(0.8));
            let g = frame
                .phi_extend(&p, &Perm::identity(frame.len()))
                .map_err(|e| e.to_string())?;
            if let Some((a, b)) = frame.poset().automorphism_violation(&g) {
                return Ok(Report::fail(check, json!({ "g": g, "pair": [a, b] })));
            }
        }
        Ok(Report::pass(check).with_cases(draws as u64))
    })
}

fn chain_check(model: &LatticeModel, top: usize) -> Report {
    const CHECK: &str = "extension-chain";
    guard(CHECK, || {
        let id = Perm::identity(1);
        let mut prev: Option<Perm> = None;
        let mut cases = 0;
        for n in (0..=top).step_by(2) {
            let h = extend_to_level(model, 0, &id, n).map_err(|e| e.to_string())?;
            cases += 1;
            let level = model.level(n).map_err(|e| e.to_string())?;
            let consistent = prev
                .as_ref()
                .is_none_or(|p| (0..p.len()).all(|x| h.apply(x) == p.apply(x)));
            if !level.poset.is_automorphism(&h) || !consistent {
                return Ok(Report::fail(CHECK, json!({ "level": n })));
            }
            prev = Some(h);
        }
        // A non-trivial automorphism of A_2 carried to every even level above.
        let g = Perm::transposition(6, 1, 3).map_err(|e| e.to_string())?;
        let mut prev = g.clone();
        for n in (4..=top).step_by(2) {
            let h = extend_to_level(model, 2, &g, n).map_err(|e| e.to_string())?;
            cases += 1;
            let level = model.level(n).map_err(|e| e.to_string())?;
            if !level.poset.is_automorphism(&h)
                || (0..prev.len()).any(|x| h.apply(x) != prev.apply(x))
            {
                return Ok(Report::fail(CHECK, json!({ "level": n, "base": g })));
            }
            prev = h;
        }
        Ok(Report::pass(CHECK).with_cases(cases))
    })
}

fn move_check(model: &LatticeModel, n: usize) -> Report {
    let check = format!("move-witness-{n}");
    guard(&check.clone(), || {
        let frame = model.frame(n).map_err(|e| e.to_string())?;
        let mut cases = 0;
        for (a, d) in frame.legal_moves() {
            cases += 1;
            let g = frame.move_witness(a, d).map_err(|e| e.to_string())?;
            let ok = frame.poset().is_automorphism(&g)
                && frame.q().all(|x| g.apply(x) == x)
                && g.apply(d) == d
                && g.apply(a) != a;
            if !ok {
                return Ok(Report::fail(check, json!({ "a": a, "d": d, "g": g })));
            }
        }
        Ok(Report::pass(check).with_cases(cases))
    })
}

fn separation_check(model: &LatticeModel, k: usize, n: usize) -> Report {
    let check = format!("separation-{k}-{n}");
    guard(&check.clone(), || {
        let mut r = separation_suite(model, k, n).map_err(|e| e.to_string())?;
        r.check = check;
        Ok(r)
    })
}

/// Random fiber permutations, extension chains, exhaustive move witnesses and
/// the separation tables.
pub fn lattice_automorphism_check(model: &LatticeModel, draws: usize, rng: &mut Rng) -> Report {
    let top = model.top();
    let mut checks = Vec::new();
    for n in [3, 4].into_iter().filter(|&n| n <= top) {
        checks.push(phi_check(model, n, draws, rng));
    }
    checks.push(chain_check(model, top));
    if top >= 3 {
        checks.push(move_check(model, 3));
        checks.push(separation_check(model, 1, 3));
    }
    if top >= 4 {
        checks.push(separation_check(model, 2, 4));
    }
    Report::composite("automorphisms", checks)
}

/// `sup` is finite-to-one: exhaustively on `℘(A_exhaustive)` and on `random`
/// random subsets of the top level.
pub fn join_check(model: &LatticeModel, exhaustive: usize, random: usize, rng: &mut Rng) -> Report {
    let mut checks = Vec::new();
    checks.push(guard("join-exhaustive", || {
        let level = model.level(exhaustive).map_err(|e| e.to_string())?;
        let w = join_map(&level.poset).map_err(|e| e.to_string())?;
        w.verify().map_err(|e| e.to_string())?;
        let fibers: Vec<(usize, usize)> = w.fibers().iter().map(|(s, f)| (**s, f.len())).collect();
        let bounded = fibers
            .iter()
            .all(|&(s, size)| size <= 1 << level.poset.down_set(s).count_ones(..));
        let empty_ok = w.get(&vec![]) == level.poset.least().as_ref();
        let r = if bounded && empty_ok {
            Report::pass("join-exhaustive")
        } else {
            Report::fail("join-exhaustive", json!({ "fibers": fibers }))
        };
        Ok(r.with_cases(w.len() as u64)
            .with_detail(json!({ "level": exhaustive, "fibers": fibers })))
    }));
    checks.push(guard("join-random", || {
        let level = model.level(model.top()).map_err(|e| e.to_string())?;
        let len = level.len();
        let sets: Vec<Vec<usize>> = (0..random)
            .map(|_| {
                let k = rng.gen_range(0..=8.min(len));
                let mut s: Vec<usize> = (0..k).map(|_| rng.gen_range(0..len)).collect();
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect();
        let mut r = verify_join_map(&level.poset, sets.iter().map(Vec::as_slice));
        r.check = "join-random".into();
        Ok(r)
    }));
    Report::composite("join", checks)
}
