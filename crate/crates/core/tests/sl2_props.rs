mod common;

use fig8_core::sl2::*;
use fig8_core::word::{GroupWord, WordSampler};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn word_times_inverse_is_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let s = WordSampler::new(2);
    let pair = sanov_pair();
    for _ in 0..1000 {
        let w = s.sample_ball(&mut rng, 200);
        let raw: Vec<i8> = w.letters().iter().chain(w.inverse().letters()).copied().collect();
        // evaluate letter by letter without the reduction GroupWord::new would do
        let mut m = ExactMat2::identity(None);
        for l in raw {
            let g = &pair[(l.unsigned_abs() - 1) as usize];
            m = m.mul(&if l > 0 { g.clone() } else { g.inverse() }).unwrap();
        }
        assert!(m.is_identity());
    }
}

#[test]
fn trace_identity_on_sanov_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let s = WordSampler::new(2);
    let pair = sanov_pair();
    for _ in 0..1000 {
        let a = eval_word(&s.sample_ball(&mut rng, 12), &pair).unwrap();
        let b = eval_word(&s.sample_ball(&mut rng, 12), &pair).unwrap();
        let ab = a.mul(&b).unwrap();
        let expected = a.inverse().mul(&b).unwrap().trace();
        assert_eq!(trace_third_exact(&a.trace(), &b.trace(), &ab.trace()), expected);
    }
}

#[test]
fn modular_torus_commutator_is_parabolic() {
    let [x, y] = modular_torus_pair();
    let c = eval_word(&GroupWord::free2("abAB").unwrap(), &[x, y]).unwrap();
    assert_eq!(c.trace(), BigInt::from(-2));
}

proptest! {
    #[test]
    fn fig8_symmetric_and_monotone(a in 0.0f64..6.0, b in 0.0f64..6.0, c in 0.0f64..6.0, d in 0.01f64..2.0) {
        let base = fig8_length(a, b, c).unwrap().length;
        prop_assert!((base - fig8_length(b, a, c).unwrap().length).abs() < 1e-9);
        prop_assert!(fig8_length(a + d, b, c).unwrap().length > base);
        prop_assert!(fig8_length(a, b + d, c).unwrap().length > base);
        prop_assert!(fig8_length(a, b, c + d).unwrap().length > base);
        prop_assert!(base >= 2.0 * 3f64.acosh() - 1e-12);
    }

    #[test]
    fn length_trace_round_trip(l in 0.01f64..40.0) {
        let t = length_to_trace(l).unwrap();
        prop_assert!((trace_to_length(t).unwrap() - l).abs() < 1e-9 * l.max(1.0));
    }

    #[test]
    fn eval_is_a_homomorphism(u in common::word(2, 20), v in common::word(2, 20)) {
        let pair = sanov_pair();
        let lhs = eval_word(&u.concat(&v), &pair).unwrap();
        let rhs = eval_word(&u, &pair).unwrap().mul(&eval_word(&v, &pair).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn minimal_figure_eight() {
    assert!((fig8_length(0.0, 0.0, 0.0).unwrap().length - 2.0 * 3f64.acosh()).abs() < 1e-12);
}
