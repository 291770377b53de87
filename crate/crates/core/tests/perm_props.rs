use std::collections::BTreeSet;

use permlab::perm::enumerate::{all_perms, perms_moving_at_most};
use permlab::perm::Perm;
use proptest::prelude::*;

fn perm(max_n: usize) -> impl Strategy<Value = Perm> {
    (0..=max_n)
        .prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Perm::from_images(v).unwrap())
}

fn perm_pair(max_n: usize) -> impl Strategy<Value = (Perm, Perm)> {
    (0..=max_n).prop_flat_map(|n| {
        let ids: Vec<usize> = (0..n).collect();
        (Just(ids.clone()).prop_shuffle(), Just(ids).prop_shuffle())
            .prop_map(|(a, b)| (Perm::from_images(a).unwrap(), Perm::from_images(b).unwrap()))
    })
}

proptest! {
    #[test]
    fn inverse_cancels(p in perm(12)) {
        let id = Perm::identity(p.len());
        prop_assert_eq!(p.compose(&p.inverse()).unwrap(), id.clone());
        prop_assert_eq!(p.inverse().compose(&p).unwrap(), id);
    }

    #[test]
    fn compose_applies_right_first((a, b) in perm_pair(10)) {
        let c = a.compose(&b).unwrap();
        for x in 0..a.len() {
            prop_assert_eq!(c.apply(x), a.apply(b.apply(x)));
        }
    }

    #[test]
    fn orbits_partition(p in perm(12)) {
        let orbits = p.orbits();
        let mut seen = BTreeSet::new();
        for o in &orbits {
            for &z in o {
                prop_assert!(seen.insert(z), "{z} in two orbits");
                prop_assert_eq!(p.orbit(z).unwrap().len(), o.len());
            }
        }
        prop_assert_eq!(seen.len(), p.len());
        let moved: BTreeSet<usize> = p.nontrivial_orbits().into_iter().flatten().collect();
        let mov: BTreeSet<usize> = (0..p.len()).filter(|&z| p.apply(z) != z).collect();
        prop_assert_eq!(moved, mov);
    }

    #[test]
    fn induced_map_is_a_bijection(p in perm(10), mask in prop::collection::vec(any::<bool>(), 10)) {
        let y: Vec<usize> = (0..p.len()).filter(|&z| mask[z]).collect();
        let s = p.induce(&y).unwrap();
        prop_assert!(s.is_bijection());
        let image: BTreeSet<usize> = y.iter().map(|&z| s.apply(z).unwrap()).collect();
        prop_assert_eq!(image, y.iter().copied().collect::<BTreeSet<_>>());
        // First return: no earlier iterate lies in y.
        for &z in &y {
            let target = s.apply(z).unwrap();
            let mut cur = p.apply(z);
            while cur != target {
                prop_assert!(!y.contains(&cur));
                cur = p.apply(cur);
            }
        }
    }
}

/// `D(k) = (k - 1)(D(k - 1) + D(k - 2))` with `D(0) = 1`, `D(1) = 0`.
fn derangements(k: usize) -> u64 {
    let mut d = vec![1u64, 0];
    for i in 2..=k {
        d.push((i as u64 - 1) * (d[i - 1] + d[i - 2]));
    }
    d[k]
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

#[test]
fn small_support_counts_match_derangement_sum() {
    for n in 0..=7 {
        let all = all_perms(n).unwrap();
        for k in 0..=n {
            let brute = all.iter().filter(|p| p.mov_len() <= k).count() as u64;
            let formula: u64 = (0..=k).map(|j| binomial(n, j) * derangements(j)).sum();
            assert_eq!(brute, formula, "n = {n}, k = {k}");
            assert_eq!(
                perms_moving_at_most(n, k).len() as u64,
                brute,
                "n = {n}, k = {k}"
            );
        }
    }
}
