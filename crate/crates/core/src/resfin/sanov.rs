use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Pow;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sl2::{eval_word, sanov_pair, ExactMat2};
use crate::word::GroupWord;

/// Image of `w` under `a ↦ [[1,2],[0,1]]`, `b ↦ [[1,0],[2,1]]`.
///
/// These generate a free subgroup, so the image is the identity exactly when
/// `w` is trivial. Entries are bounded by `3^|w|` (the generators have
/// operator norm `1 + √2`).
pub fn sanov_eval(w: &GroupWord) -> Result<ExactMat2> {
    if w.rank() > 2 {
        return Err(Error::InvalidParameters(format!("rank {} exceeds 2", w.rank())));
    }
    let m = eval_word(w, &sanov_pair())?;
    assert!(m.max_abs_entry() <= BigInt::from(3u8).pow(w.len() as u32), "entry bound violated for {w}");
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeWitness {
    pub word: String,
    pub prime: u64,
    /// The Sanov image reduced mod `prime`, entries in `[0, prime)`.
    pub image: ExactMat2,
    pub word_length: usize,
}

/// Least prime `p` with `sanov_eval(w) ≢ I (mod p)`.
///
/// Both generators are the identity mod 2, so `p ≥ 3`. The product of the
/// primes up to `p` never exceeds twice the largest entry, so the scan ends
/// after `O(|w|)` primes.
pub fn smallest_excluding_prime(w: &GroupWord) -> Result<PrimeWitness> {
    let m = sanov_eval(w)?;
    if m.is_identity() {
        return Err(Error::TrivialWord);
    }
    for p in primes().skip(1) {
        let pb = BigInt::from(p);
        let r = m.reduce_mod(&pb)?;
        if !r.is_identity() {
            return Ok(PrimeWitness { word: w.to_string(), prime: p, image: r, word_length: w.len() });
        }
    }
    unreachable!("nonidentity integer matrix is nonidentity modulo some prime")
}

/// Least prime not dividing `n` (for `n ≠ 0`).
pub fn least_prime_not_dividing(n: &BigInt) -> u64 {
    assert!(n != &BigInt::from(0), "every prime divides 0");
    primes().find(|&p| (n % BigInt::from(p)) != BigInt::from(0)).expect("infinitely many primes")
}

pub(crate) fn is_prime(n: u64) -> bool {
    primal::is_prime(n)
}

/// Primes in increasing order: a shared sieve first, then an unbounded one.
pub(crate) fn primes() -> impl Iterator<Item = u64> {
    static SIEVE: OnceLock<primal::Sieve> = OnceLock::new();
    const LIMIT: usize = 1 << 16;
    let sieve = SIEVE.get_or_init(|| primal::Sieve::new(LIMIT));
    let last = sieve.upper_bound();
    sieve
        .primes_from(0)
        .map(|p| p as u64)
        .chain(
            // built only if the shared sieve runs out
            std::iter::once(()).flat_map(move |_| primal::Primes::all().map(|p| p as u64).skip_while(move |&p| p <= last as u64)),
        )
}
