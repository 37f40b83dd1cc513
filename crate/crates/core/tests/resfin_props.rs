mod common;

use fig8_core::resfin::*;
use fig8_core::word::{GroupWord, WordSampler};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `[..[[a, b], b].., b]` with `j` brackets.
fn bracket(j: usize) -> GroupWord {
    let b = GroupWord::free2("b").unwrap();
    let mut w = GroupWord::free2("a").unwrap();
    for _ in 0..j {
        w = GroupWord::commutator(&w, &b);
    }
    w
}

#[test]
fn sanov_detects_exactly_the_trivial_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let s = WordSampler::new(2);
    for _ in 0..10_000 {
        let w = s.sample_ball(&mut rng, 30);
        assert_eq!(sanov_eval(&w).unwrap().is_identity(), w.is_empty());
        let both = w.concat(&w.inverse());
        assert!(sanov_eval(&both).unwrap().is_identity());
    }
}

#[test]
fn excluding_prime_is_linear_in_length() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let s = WordSampler::new(2);
    for _ in 0..200 {
        let w = s.sample_ball(&mut rng, 300);
        if w.is_empty() {
            continue;
        }
        let p = smallest_excluding_prime(&w).unwrap().prime;
        assert!(p >= 3);
        assert!(p as usize <= 10 * w.len(), "{p} for length {}", w.len());
    }
}

#[test]
fn bracket_depths() {
    for j in 0..=4 {
        assert_eq!(lcs_depth(&bracket(j), 6).unwrap(), Depth::Exact(j + 1), "j = {j}");
    }
}

#[test]
fn bracket_witnesses_are_nontrivial() {
    for j in 1..=3 {
        let r = unipotent_witness(&bracket(j), j + 1).unwrap();
        assert!(r.image.iter().enumerate().any(|(i, &x)| x != (i % (r.dimension + 1) == 0) as u64));
        if let Some(o) = r.image_order {
            assert!(num_bigint::BigUint::from(o) <= r.ambient_order);
        }
    }
}

#[test]
fn magnus_coefficients_grow_polynomially() {
    // words (aⁿ bⁿ Aⁿ Bⁿ): the degree-≤k part has entries O(nᵏ)
    let k = 3;
    let mut pts = Vec::new();
    for n in [4i64, 8, 16, 32, 64] {
        let w = GroupWord::free2("a").unwrap().pow(n);
        let v = GroupWord::free2("b").unwrap().pow(n);
        let c = GroupWord::commutator(&w, &v);
        let m = magnus_expand(&c, k).unwrap().max_abs_coefficient();
        pts.push(((4 * n) as f64, m.to_f64().unwrap()));
    }
    let k_fit = fig8_core::torus::growth_exponent(&pts).unwrap();
    assert!(k_fit <= k as f64 + 0.1, "fitted exponent {k_fit}");
}

#[test]
fn average_index_is_thread_independent() {
    let a = average_index_simulation(2, 12, 5000, 3).unwrap();
    for threads in [1, 3] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        assert_eq!(pool.install(|| average_index_simulation(2, 12, 5000, 3).unwrap()), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn magnus_is_multiplicative(u in common::word(2, 12), v in common::word(2, 12), d in 1usize..=5) {
        let lhs = magnus_expand(&u.concat(&v), d).unwrap();
        let rhs = magnus_expand(&u, d).unwrap().mul(&magnus_expand(&v, d).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn least_prime_is_least(n in 1i64..1_000_000) {
        let p = least_prime_not_dividing(&BigInt::from(n));
        prop_assert!(n % p as i64 != 0);
        for q in 2..p {
            if (2..q).all(|d| q % d != 0) {
                prop_assert_eq!(n % q as i64, 0);
            }
        }
    }

    #[test]
    fn excluding_prime_image_is_reduced(w in common::word(2, 40)) {
        prop_assume!(!w.is_empty());
        let r = smallest_excluding_prime(&w).unwrap();
        let p = BigInt::from(r.prime);
        prop_assert!(r.image.entries().iter().all(|e| !e.is_negative() && e < &p));
        prop_assert!(!r.image.is_identity());
    }
}
