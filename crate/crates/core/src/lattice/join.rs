use serde_json::json;

use super::poset::Poset;
use super::LatticeError;
use crate::constructions::{MapKind, MapWitness};
use crate::report::Report;

/// Largest poset whose whole power set `join_map` will enumerate.
pub const JOIN_EXHAUSTIVE_CAP: usize = 16;

/// `M ↦ sup M` on every subset of `P`, with `sup ∅` the least element.
pub fn join_map(p: &Poset) -> Result<MapWitness<Vec<usize>, usize>, LatticeError> {
    if p.len() > JOIN_EXHAUSTIVE_CAP {
        return Err(LatticeError::Cap {
            what: "elements for an exhaustive join map",
            cap: JOIN_EXHAUSTIVE_CAP,
        });
    }
    let graph = (0u32..1 << p.len())
        .map(|mask| {
            let m: Vec<usize> = (0..p.len()).filter(|i| mask >> i & 1 == 1).collect();
            let s = p
                .sup(&m)
                .ok_or(LatticeError::NotABuildingBlock("missing supremum"))?;
            Ok((m, s))
        })
        .collect::<Result<_, LatticeError>>()?;
    Ok(MapWitness::new(MapKind::FiniteToOne, "fin(P)", "P")
        .with_graph(graph)
        .with_fiber_bound(1 << p.len()))
}

/// Checks that every given set has a supremum lying above all its members, so
/// that the fiber of `s` is contained in the power set of `↓s`.
pub fn verify_join_map<'a>(p: &Poset, sets: impl IntoIterator<Item = &'a [usize]>) -> Report {
    const CHECK: &str = "join-map";
    let mut cases = 0;
    let mut max_down = 0;
    for m in sets {
        cases += 1;
        let Some(s) = p.sup(m) else {
            return Report::fail(CHECK, json!({ "M": m, "reason": "no supremum" }));
        };
        if m.iter().any(|&a| !p.leq(a, s)) {
            return Report::fail(CHECK, json!({ "M": m, "sup": s }));
        }
        max_down = max_down.max(p.down_set(s).count_ones(..));
    }
    if p.least().is_none_or(|o| p.sup(&[]) != Some(o)) {
        return Report::fail(
            CHECK,
            json!({ "reason": "sup of the empty set is not the least element" }),
        );
    }
    Report::pass(CHECK)
        .with_cases(cases)
        .with_detail(json!({ "largest_down_set": max_down }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::level::build_level;

    #[test]
    fn joins_on_a2() {
        let a2 = build_level(2).unwrap();
        let w = join_map(&a2.poset).unwrap();
        w.verify().unwrap();
        assert_eq!(w.len(), 64);
        assert_eq!(w.get(&vec![]), Some(&0));
        assert_eq!(w.get(&vec![0]), Some(&0));
        assert_eq!(w.get(&vec![1, 3]), Some(&2));
        let sizes: Vec<(usize, usize)> = w.fibers().iter().map(|(s, f)| (**s, f.len())).collect();
        // o: {}, {o}; each atom: 2 sets; e2: the remaining 64 - 2 - 8.
        assert_eq!(sizes, vec![(0, 2), (1, 2), (2, 54), (3, 2), (4, 2), (5, 2)]);
    }

    #[test]
    fn large_posets_are_refused() {
        let a4 = build_level(4).unwrap();
        assert!(join_map(&a4.poset).is_err());
        let sets: Vec<Vec<usize>> = vec![vec![], vec![3, 7, 20], (0..215).collect()];
        assert!(verify_join_map(&a4.poset, sets.iter().map(Vec::as_slice)).pass);
    }
}
