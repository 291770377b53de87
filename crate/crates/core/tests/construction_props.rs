use std::cmp::Ordering;
use std::collections::BTreeSet;

use permlab::constructions::{
    cantor_bernstein, fold_union_mov, s2_bijection, union_mov, LexCarrier, TupleCoder,
};
use permlab::perm::Perm;
use proptest::prelude::*;

fn mov(p: &Perm) -> BTreeSet<usize> {
    (0..p.len()).filter(|&z| p.apply(z) != z).collect()
}

fn perms(n: usize, k: usize) -> impl Strategy<Value = Vec<Perm>> {
    prop::collection::vec(
        Just((0..n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Perm::from_images(v).unwrap()),
        k,
    )
}

/// Random permutations of `0..n` that move only points inside a random window,
/// so that the mov sets overlap in every possible way.
fn sparse_perm(n: usize) -> impl Strategy<Value = Perm> {
    (0..=n, 0..=n).prop_flat_map(move |(a, b)| {
        let (lo, hi) = (a.min(b), a.max(b));
        Just((lo..hi).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(move |w| {
                let mut img: Vec<usize> = (0..n).collect();
                img[lo..hi].copy_from_slice(&w);
                Perm::from_images(img).unwrap()
            })
    })
}

proptest! {
    #[test]
    fn union_mov_law((f, g) in (1usize..=8).prop_flat_map(|n| (sparse_perm(n), sparse_perm(n)))) {
        let h = union_mov(&f, &g).unwrap();
        let want: BTreeSet<usize> = mov(&f).union(&mov(&g)).copied().collect();
        prop_assert_eq!(mov(&h), want);
    }

    #[test]
    fn fold_moves_the_union(ts in perms(8, 4)) {
        let mut distinct: Vec<Perm> = Vec::new();
        for t in ts {
            if !distinct.contains(&t) {
                distinct.push(t);
            }
        }
        let h = fold_union_mov(8, &distinct).unwrap();
        let want: BTreeSet<usize> = distinct.iter().flat_map(mov).collect();
        prop_assert_eq!(mov(&h), want);
    }

    #[test]
    fn fold_rejects_repeats(t in perms(5, 1)) {
        prop_assert!(fold_union_mov(5, &[t[0].clone(), t[0].clone()]).is_err());
    }

    #[test]
    fn bernstein_on_finite_sets(fg in perms(7, 2), bad in 0usize..7) {
        let f = fg[0].images().to_vec();
        let g = fg[1].images().to_vec();
        // Finite injections both ways are bijections, so every point lies on a cycle.
        prop_assert_eq!(cantor_bernstein(&f, &g).unwrap(), f.clone());
        let mut g2 = g.clone();
        g2[bad] = g[(bad + 1) % g.len()];
        prop_assert!(cantor_bernstein(&f, &g2).is_err());
        prop_assert!(cantor_bernstein(&f, &g[..6]).is_err());
    }

    #[test]
    fn tuple_coder_round_trip(n in 1usize..=3, extra in 0usize..4, raw in prop::collection::vec(any::<usize>(), 3)) {
        let carrier = 2 * n * (n + 1) + extra;
        let anchors: Vec<usize> = (0..2 * n * (n + 1)).collect();
        let coder = TupleCoder::new(carrier, n, &anchors).unwrap();
        let t: Vec<usize> = raw[..n].iter().map(|v| v % carrier).collect();
        let p = coder.encode(&t).unwrap();
        prop_assert_eq!(p.mov_len(), 2 * n + 1);
        prop_assert_eq!(coder.decode(&p).unwrap(), t);
    }

    #[test]
    fn lex_order_is_a_strict_total_order(
        (sets, ps) in prop::collection::btree_set(prop::collection::btree_set(0u32..6, 0..4), 3..6)
            .prop_flat_map(|sets| {
                let n = sets.len();
                (Just(sets), perms(n, 3))
            }),
    ) {
        let sets: Vec<Vec<u32>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let x = LexCarrier::new(8, sets).unwrap();
        let c = |a: &Perm, b: &Perm| x.cmp_perms(a, b).unwrap();
        for a in &ps {
            prop_assert_eq!(c(a, a), Ordering::Equal);
            for b in &ps {
                prop_assert_eq!(c(a, b), c(b, a).reverse());
                prop_assert_eq!(c(a, b) == Ordering::Equal, a == b);
                for d in &ps {
                    if c(a, b) == Ordering::Less && c(b, d) == Ordering::Less {
                        prop_assert_eq!(c(a, d), Ordering::Less);
                    }
                }
            }
        }
    }
}

#[test]
fn s2_witnesses_reverify() {
    for n in 0..=7 {
        let w = s2_bijection(n).unwrap();
        let stats = w.verify().unwrap();
        assert_eq!(stats.domain_size, n * n.saturating_sub(1) / 2 + 1);
        assert_eq!(stats.max_fiber, 1);
    }
}
