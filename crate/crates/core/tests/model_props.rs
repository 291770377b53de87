use std::collections::BTreeSet;

use permlab::perm::Perm;
use permlab::shelah::{
    closure, extend_automorphism, is_closed, sibling_swap_witness, triple_injection, ShelahAtom,
    ShelahPerm, Universe,
};
use permlab::symmetric::{
    act, is_support, min_support, mostowski_witness, transitivity_witness, GroupSpec, Hfa, Q,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn hfa(atoms: usize, depth: u32) -> impl Strategy<Value = Hfa> {
    let leaf = prop_oneof![(0..atoms).prop_map(Hfa::atom), Just(Hfa::empty())];
    leaf.prop_recursive(depth, 24, 4, |inner| {
        prop::collection::vec(inner, 0..4).prop_map(Hfa::set)
    })
}

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

fn rational() -> impl Strategy<Value = Q> {
    (-20i64..20, 1i64..6).prop_map(|(a, b)| Q::new(a, b))
}

proptest! {
    #[test]
    fn act_is_a_group_action(x in hfa(6, 4), p in perm(6), q in perm(6)) {
        prop_assert_eq!(act(&Perm::identity(6), &x).unwrap(), x.clone());
        let pq = p.compose(&q).unwrap();
        prop_assert_eq!(act(&pq, &x).unwrap(), act(&p, &act(&q, &x).unwrap()).unwrap());
    }

    #[test]
    fn min_support_is_minimal(x in hfa(5, 3)) {
        let n = 5;
        let g = GroupSpec::FullSymmetric(n);
        let b = min_support(&x, n).unwrap();
        prop_assert!(is_support(&b, &x, &g).unwrap().holds());
        for a in &b {
            let mut smaller = b.clone();
            smaller.remove(a);
            prop_assert!(!is_support(&smaller, &x, &g).unwrap().holds(), "{a} is redundant");
        }
    }

    #[test]
    fn transitivity_fixes_and_carries(seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut atoms: Vec<usize> = (0..8).collect();
        atoms.shuffle(&mut rng);
        let b: BTreeSet<usize> = atoms[..3].iter().copied().collect();
        let rest = &mut atoms[3..];
        let p: BTreeSet<usize> = rest[..2].iter().copied().collect();
        rest.shuffle(&mut rng);
        let q: BTreeSet<usize> = rest[..2].iter().copied().collect();
        let tau = transitivity_witness(8, &b, &p, &q).unwrap();
        prop_assert!(b.iter().all(|&z| tau.apply(z) == z));
        prop_assert_eq!(p.iter().map(|&z| tau.apply(z)).collect::<BTreeSet<_>>(), q);
    }

    #[test]
    fn mostowski_is_increasing_and_fixes(fix in prop::collection::btree_set(rational(), 0..6), a in rational()) {
        prop_assume!(!fix.contains(&a));
        let fix: Vec<Q> = fix.into_iter().collect();
        let w = mostowski_witness(&fix, a, None).unwrap();
        prop_assert!(fix.iter().all(|&b| w.eval(b) == b));
        prop_assert!(w.eval(a) != a);
        let (left, right) = w.end_slopes();
        prop_assert!(left > Q::from_integer(0) && right > Q::from_integer(0));
        let mut probes: Vec<Q> = w.knots().iter().map(|k| k.0).chain(fix.iter().copied()).collect();
        probes.extend([a, Q::from_integer(-1000), Q::from_integer(1000)]);
        probes.sort();
        probes.dedup();
        for pair in probes.windows(2) {
            let mid = (pair[0] + pair[1]) / Q::from_integer(2);
            prop_assert!(w.eval(pair[0]) < w.eval(mid) && w.eval(mid) < w.eval(pair[1]));
        }
        prop_assert_eq!(w.inverse().eval(w.eval(a)), a);
    }

    #[test]
    fn closure_is_monotone_and_idempotent(seed in any::<u64>()) {
        let u = Universe::new(4);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s: Vec<ShelahAtom> = (0..3).map(|_| u.random_atom(&mut rng, 2)).collect();
        let t: Vec<ShelahAtom> = (0..2).map(|_| u.random_atom(&mut rng, 2)).collect();
        let cs = closure(&s);
        prop_assert!(is_closed(&cs));
        prop_assert_eq!(closure(&cs), cs.clone());
        let both: Vec<ShelahAtom> = s.iter().chain(&t).cloned().collect();
        prop_assert!(cs.is_subset(&closure(&both)));
    }

    #[test]
    fn extension_respects_composition(seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let u = Universe::new(5);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cycle = |rng: &mut ChaCha8Rng| {
            let mut b = u.base_atoms();
            b.shuffle(rng);
            ShelahPerm::cycle(0, &b[..3]).unwrap()
        };
        let g = cycle(&mut rng);
        let h = cycle(&mut rng);
        let hg = h.compose(&g).unwrap();
        let none = BTreeSet::new();
        for _ in 0..8 {
            let x = u.random_atom(&mut rng, 3);
            let step = extend_automorphism(0, &g, &none, &x).unwrap();
            let twice = extend_automorphism(0, &h, &none, &step).unwrap();
            prop_assert_eq!(twice, extend_automorphism(0, &hg, &none, &x).unwrap());
        }
    }

    #[test]
    fn sibling_swap_clauses(seed in any::<u64>()) {
        let u = Universe::new(4);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = u.random_atom_at(&mut rng, 1 + (seed % 2) as u32);
        let b = u.random_atom(&mut rng, a.level());
        prop_assume!(a != b);
        for c in [BTreeSet::new(), closure([&b])] {
            if c.contains(&a) {
                continue;
            }
            let w = sibling_swap_witness(&c, &a, &b).unwrap();
            prop_assert!(w.pi.apply(&a).unwrap() != a);
            prop_assert_eq!(w.pi.apply(&b).unwrap(), b.clone());
            for x in &c {
                prop_assert_eq!(&w.pi.apply(x).unwrap(), x);
            }
        }
    }

    #[test]
    fn triples_are_sibling_sets(seed in any::<u64>()) {
        let u = Universe::new(5);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = u.random_perm(&mut rng, 1, 3);
        let t = triple_injection(&p).unwrap();
        let set: BTreeSet<&ShelahAtom> = t.iter().collect();
        prop_assert_eq!(set.len(), 3);
        prop_assert!(t.iter().all(|x| x.level() == t[0].level()));
        prop_assert_eq!(t[0].siblings(), t.to_vec());
    }
}
