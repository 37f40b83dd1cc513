mod common;

use fig8_core::torus::*;
use fig8_core::word::GroupWord;
use proptest::prelude::*;

#[test]
fn cusp_relation_exact_along_the_tree() {
    let mut t = TraceTriple::modular();
    for i in [0, 1, 2, 0, 2, 1, 0] {
        t = t.vieta_flip(i);
        let [x, y, z] = t.exact().unwrap().map(num_bigint::BigInt::from);
        assert_eq!(&x * &x + &y * &y + &z * &z, x * y * z);
    }
}

#[test]
fn traces_invariant_under_root_permutation() {
    let base = TraceTriple::modular();
    let traces = |t: &TraceTriple| -> Vec<u128> {
        let mut v: Vec<u128> = enumerate_simple(t, 5000.0).unwrap().iter().map(|r| r.exact_trace.unwrap()).collect();
        v.sort();
        v
    };
    let reference = traces(&base);
    for perm in [[1, 0, 2], [2, 1, 0], [1, 2, 0]] {
        assert_eq!(traces(&base.with_coordinates_permuted(perm)), reference);
    }
}

#[test]
fn no_duplicate_slopes() {
    let recs = enumerate_simple(&TraceTriple::modular(), 1e5).unwrap();
    let mut slopes: Vec<_> = recs.iter().map(|r| r.slope).collect();
    slopes.sort();
    slopes.dedup();
    assert_eq!(slopes.len(), recs.len());
}

#[test]
fn mc2_is_twice_mcshane_at_a_third() {
    let root = TraceTriple::modular();
    for cutoff in [9.0, 27.0, 100.0, 1e3, 1e4, 3e5] {
        let a = mc2_sum(&root, cutoff).unwrap();
        let b = mcshane_sum(&root, cutoff / 3.0, McShaneForm::Trace).unwrap();
        assert_eq!(a.partial_sum, 2.0 * b.partial_sum, "cutoff {cutoff}");
        assert_eq!(a.terms, 2 * b.terms);
    }
}

#[test]
fn paired_traces_triple_their_parents() {
    for r in one_intersection_census(&TraceTriple::modular(), 30.0, CensusMode::Paired).unwrap() {
        let parent = r.parent_trace.unwrap();
        assert_eq!(r.exact_trace.unwrap(), 3 * parent as u128);
    }
}

#[test]
fn root_slopes_are_simple() {
    for s in ["a", "b", "ab"] {
        assert_eq!(self_intersection(&GroupWord::free2(s).unwrap()).unwrap().count, 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mcshane_monotone_and_bounded(c1 in 3.0f64..2e4, c2 in 3.0f64..2e4) {
        let root = TraceTriple::modular();
        let (lo, hi) = if c1 <= c2 { (c1, c2) } else { (c2, c1) };
        let a = mcshane_sum(&root, lo, McShaneForm::Trace).unwrap().partial_sum;
        let b = mcshane_sum(&root, hi, McShaneForm::Trace).unwrap().partial_sum;
        prop_assert!(a <= b && b <= 1.0);
    }

    #[test]
    fn flips_are_involutions(path in prop::collection::vec(0usize..3, 0..8), x in 3.0f64..8.0, y in 3.0f64..8.0) {
        // the larger root of z² − xyz + x² + y² = 0 gives a cusped triple
        let disc = (x * y).powi(2) - 4.0 * (x * x + y * y);
        prop_assume!(disc >= 0.0);
        let z = (x * y + disc.sqrt()) / 2.0;
        prop_assume!(z >= 3.0);
        // walk away from the reduced root, as the census does
        let mut t = TraceTriple::from_real(x, y, z).unwrap().reduced();
        let mut path = path;
        path.dedup();
        for i in path {
            let u = t.vieta_flip(i);
            let back = u.vieta_flip(i);
            // flipping back cancels against the product of the other two
            let [a, b, c] = u.coords();
            let scale = [b * c, a * c, a * b][i];
            for k in 0..3 {
                prop_assert!((back.coords()[k] - t.coords()[k]).abs() <= 1e-12 * scale.max(t.coords()[k]));
            }
            prop_assert!(u.cusp_defect().abs() <= 1e-8 * a * b * c);
            t = u;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn self_intersection_agrees_with_ball(w in common::word(2, 4)) {
        let w = w.cyclically_reduced();
        prop_assume!(!w.is_empty() && !w.is_proper_power());
        if let Ok(si) = self_intersection(&w) {
            prop_assert_eq!(si.count, self_intersection_ball(&w, 2 * w.len() + 4).unwrap());
        }
    }
}
