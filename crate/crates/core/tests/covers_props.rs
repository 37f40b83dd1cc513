mod common;

use common::oracles;
use fig8_core::covers::*;
use fig8_core::word::GroupWord;
use num_bigint::BigUint;
use proptest::prelude::*;
use rayon::prelude::*;

#[test]
fn frobenius_matches_enumeration_small() {
    for n in 1..=4 {
        for k in 1..=3 {
            for t in oracles::class_tuples(n, k) {
                assert_eq!(frobenius_count(&t).unwrap(), BigUint::from(oracles::product_count(&t)), "{t:?}");
            }
        }
    }
}

#[test]
fn extends_matches_homomorphism_search_small() {
    for n in 1..=4 {
        for genus in 0..=2 {
            for k in 1..=2 {
                for t in oracles::class_tuples(n, k) {
                    let spec = CoverSpec::new(genus, t).unwrap();
                    let d = extends_cover(&spec, ExtendOptions::default()).unwrap();
                    assert_eq!(d.extends(), Some(oracles::extends_brute_force(&spec)), "{spec:?}");
                    if let Some(w) = d.witness() {
                        assert!(w.verify(&spec));
                    }
                }
            }
        }
    }
}

#[test]
fn constructions_on_every_even_permutation() {
    for n in 2..=6 {
        for s in Permutation::all(n).into_iter().filter(Permutation::is_even) {
            let (c1, c2) = two_n_cycles(&s).unwrap();
            assert!(c1.is_full_cycle() && c2.is_full_cycle());
            assert_eq!(c1.then(&c2), s);
            let (a, b) = commutator_witness(&s).unwrap();
            assert_eq!(a.commutator(&b), s);
        }
    }
}

#[test]
fn strip_covers_satisfy_euler_identity() {
    for n in 1..=5 {
        for sigma in Permutation::full_cycles(n) {
            for tau in Permutation::all(n) {
                let c = strip_cover(&sigma, &tau).unwrap();
                assert_eq!(c.euler_characteristic, 2 - 2 * c.genus as i64 - c.boundary_components as i64);
                assert_eq!(c.euler_characteristic, -(n as i64));
            }
        }
    }
}

#[test]
fn composite_double_covers() {
    // the degree-4 cover obtained by composing two double covers
    let a = Permutation::parse("(1 2)(3 4)", 4).unwrap();
    let b = Permutation::parse("(1 3)(2 4)", 4).unwrap();
    let words: Vec<GroupWord> = ["a", "b", "BA"].iter().map(|s| GroupWord::free2(s).unwrap()).collect();
    // by hand: a, b are fixed-point-free involutions, ab = (1 4)(2 3)
    assert_eq!(boundary_lift_components(&[a, b], &words).unwrap(), vec![2, 2, 2]);
}

#[test]
fn character_table_is_thread_safe() {
    let table = CharacterTable::new();
    let parts = Partition::all(8);
    let serial: Vec<_> = parts.iter().map(|l| character(l, &Partition::identity(8)).unwrap()).collect();
    let parallel: Vec<_> = parts.par_iter().map(|l| table.value(l, &Partition::identity(8)).unwrap()).collect();
    assert_eq!(serial, parallel);
    let again: Vec<_> = parts.par_iter().map(|l| table.value(l, &Partition::identity(8)).unwrap()).collect();
    assert_eq!(serial, again);
}

#[test]
fn regular_matches_brute_force_small() {
    for n in 1..=4 {
        for genus in 0..=1 {
            for t in oracles::class_tuples(n, if genus == 0 { 2 } else { 1 }) {
                let spec = CoverSpec::new(genus, t).unwrap();
                let d = regular_extends(&spec, RegularOptions::default()).unwrap();
                assert_eq!(d.extends(), Some(regular_extends_brute_force(&spec)), "{spec:?}");
                if let Some(w) = d.witness() {
                    assert_eq!(closure(&w.generators(), n).unwrap().len(), n);
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn stallings_moves_the_basepoint(w in common::word(2, 30)) {
        prop_assume!(!w.is_empty());
        let r = stallings_excluding_subgroup(&w, 2).unwrap();
        prop_assert!(r.degree <= w.len() + 1);
        let image = word_monodromy(&r.generators, &w).unwrap();
        prop_assert_ne!(image.apply(0), 0);
        prop_assert_eq!(image.apply(0), r.endpoint);
    }

    #[test]
    fn permutation_group_laws(seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let all = Permutation::all(5);
        let x = all.choose(&mut rng).unwrap();
        let y = all.choose(&mut rng).unwrap();
        let z = all.choose(&mut rng).unwrap();
        prop_assert_eq!(x.then(y).then(z), x.then(&y.then(z)));
        // right action: (x·y)(i) = y(x(i))
        for i in 0..5 {
            prop_assert_eq!(x.then(y).apply(i), y.apply(x.apply(i)));
        }
        prop_assert!(x.then(&x.inverse()).is_identity());
        prop_assert_eq!(x.commutator(y).is_even(), true);
    }
}
