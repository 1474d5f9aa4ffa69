use itertools::Itertools;
use proptest::prelude::*;

use princ_core::congruence::{cg, princ, projectivity_oracle};
use princ_core::construction::represent;
use princ_core::corpus;
use princ_core::io::{from_json, to_json, AuxJson, LatticeJson, PosetJson};
use princ_core::lattice::FiniteLattice;
use princ_core::order::{poset_isomorphic, Poset, QuasiOrder};

fn seed_pairs(max: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1..=max).prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..2 * n)))
}

/// A random order on `1..=max` elements: only pairs `i < j` as seed.
fn posets(max: usize) -> impl Strategy<Value = Poset> {
    seed_pairs(max).prop_map(|(n, seed)| {
        let seed: Vec<_> = seed
            .into_iter()
            .filter(|(i, j)| i != j)
            .map(|(i, j)| (i.min(j), i.max(j)))
            .collect();
        Poset::new(QuasiOrder::quos(n, &seed).unwrap()).unwrap()
    })
}

fn bounded_posets(max: usize) -> impl Strategy<Value = Poset> {
    any::<u64>().prop_map(move |s| corpus::random_bounded_upto(&mut corpus::rng(s), max))
}

fn brute_force_isomorphic(p: &Poset, q: &Poset) -> bool {
    let n = p.size();
    n == q.size()
        && (0..n)
            .permutations(n)
            .any(|m| (0..n).all(|x| (0..n).all(|y| p.leq(x, y) == q.leq(m[x], m[y]))))
}

fn check_lattice_laws(l: &FiniteLattice) -> Result<(), TestCaseError> {
    for x in 0..l.size() {
        for y in 0..l.size() {
            let (m, j) = (l.meet(x, y), l.join(x, y));
            prop_assert!(l.leq(m, x) && l.leq(m, y) && l.leq(x, j) && l.leq(y, j));
            prop_assert_eq!(l.join(x, m), x);
            prop_assert_eq!(l.meet(x, j), x);
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quos_is_idempotent((n, seed) in seed_pairs(8)) {
        let once = QuasiOrder::quos(n, &seed).unwrap();
        let pairs: Vec<_> = once.pairs().collect();
        prop_assert_eq!(QuasiOrder::quos(n, &pairs).unwrap(), once);
    }

    #[test]
    fn quos_is_monotone((n, seed) in seed_pairs(8), cut in 0usize..16) {
        let small = QuasiOrder::quos(n, &seed[..cut.min(seed.len())]).unwrap();
        let big = QuasiOrder::quos(n, &seed).unwrap();
        prop_assert!(small.is_subrelation_of(&big));
        for &(x, y) in &seed {
            prop_assert!(big.leq(x, y));
        }
    }

    #[test]
    fn isomorphism_matches_brute_force(p in posets(6), q in posets(6), perm_seed in any::<u64>()) {
        prop_assert_eq!(poset_isomorphic(&p, &q).is_some(), brute_force_isomorphic(&p, &q));
        // a relabelled copy is always isomorphic, and the witness checks out
        let n = p.size();
        let mut perm: Vec<usize> = (0..n).collect();
        use rand::seq::SliceRandom;
        perm.shuffle(&mut corpus::rng(perm_seed));
        let copy = p.permuted(&perm);
        let w = poset_isomorphic(&p, &copy);
        prop_assert!(w.is_some());
        let w = w.unwrap();
        prop_assert!(w.verify(&p, &copy));
        prop_assert!(w.inverse().verify(&copy, &p));
    }

    #[test]
    fn poset_json_round_trip(p in posets(8)) {
        let back: PosetJson = from_json(&to_json(&PosetJson::from_poset(&p))).unwrap();
        prop_assert_eq!(back.to_poset().unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn represented_lattices_round_trip_and_obey_the_laws(p in bounded_posets(6)) {
        let r = represent(&p).unwrap();
        let l = &r.aux.lattice;
        check_lattice_laws(l)?;
        let lj: LatticeJson = from_json(&to_json(&LatticeJson::from_lattice(l))).unwrap();
        prop_assert_eq!(&lj.to_lattice().unwrap(), l);
        let aj: AuxJson = from_json(&to_json(&AuxJson::from_aux(&r.aux))).unwrap();
        prop_assert_eq!(aj.to_aux().unwrap(), r.aux.clone());
        prop_assert!(princ(l).poset().is_directed_with_zero());
        prop_assert!(poset_isomorphic(princ(l).poset(), &p).is_some());
    }

    #[test]
    fn closure_agrees_with_the_oracle_on_small_represented_lattices(p in bounded_posets(4)) {
        let l = represent(&p).unwrap().aux.lattice;
        let pairs = l.ordered_pairs();
        for &p2 in pairs.iter().filter(|q| l.covers(q.lo, q.hi)) {
            let closure = cg(&l, p2.lo, p2.hi);
            for &p1 in &pairs {
                prop_assert_eq!(closure.same_block(p1.lo, p1.hi), projectivity_oracle(&l, p1, p2));
            }
        }
    }
}
