use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::sanov::{least_prime_not_dividing, primes};
use crate::error::{Error, Result};
use crate::word::{GroupWord, WordSampler};

/// Partial sum over the first `terms` primes of `p (1 − 1/p) ∏_{q<p} 1/q`,
/// exact, together with its value as `f64`.
pub fn expected_min_prime_exact(terms: usize) -> Result<BigRational> {
    if terms < 1 {
        return Err(Error::InvalidParameters("at least one term is required".into()));
    }
    let mut sum = BigRational::zero();
    let mut primorial = BigInt::one();
    for p in primes().take(terms) {
        let p = BigInt::from(p);
        // p (1 − 1/p) = p − 1
        sum += BigRational::new(&p - 1, primorial.clone());
        primorial *= p;
    }
    Ok(sum)
}

pub fn expected_min_prime(terms: usize) -> Result<f64> {
    Ok(expected_min_prime_exact(terms)?.to_f64().expect("finite"))
}

/// Least prime not dividing the first nonzero coordinate, or `None` for the
/// zero vector.
pub fn abelian_index_prime(abelianization: &[i64]) -> Option<u64> {
    let x = abelianization.iter().copied().find(|&x| x != 0)?;
    Some(least_prime_not_dividing(&BigInt::from(x)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AverageIndex {
    pub rank: usize,
    pub radius: usize,
    pub samples: usize,
    pub seed: u64,
    pub mean: f64,
    /// Sum of the primes over the counted samples.
    pub prime_sum: u64,
    pub counted: usize,
    /// Samples with zero abelianization, left out of the mean.
    pub excluded: usize,
}

/// Samples drawn per independently seeded stream.
pub const CHUNK: usize = 1024;

/// Mean over uniform random reduced words of length at most `radius` of the
/// least prime not dividing the first nonzero abelianization coordinate.
///
/// Samples are split into fixed chunks, each with its own stream derived
/// from `(seed, chunk index)`, and the integer totals are added in chunk
/// order, so the result does not depend on the thread count.
pub fn average_index_simulation(rank: usize, radius: usize, samples: usize, seed: u64) -> Result<AverageIndex> {
    if rank < 2 || radius < 1 || samples < 1 {
        return Err(Error::InvalidParameters("need rank ≥ 2, radius ≥ 1 and samples ≥ 1".into()));
    }
    let sampler = WordSampler::new(rank);
    let chunks = samples.div_ceil(CHUNK);
    let partial: Vec<(u64, usize, usize)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let n = CHUNK.min(samples - c * CHUNK);
            let (mut sum, mut counted, mut excluded) = (0u64, 0usize, 0usize);
            for _ in 0..n {
                let w: GroupWord = sampler.sample_ball(&mut rng, radius);
                match abelian_index_prime(&w.abelianization()) {
                    Some(p) => {
                        sum += p;
                        counted += 1;
                    }
                    None => excluded += 1,
                }
            }
            (sum, counted, excluded)
        })
        .collect();
    let (prime_sum, counted, excluded) =
        partial.into_iter().fold((0, 0, 0), |(s, c, e), (s2, c2, e2)| (s + s2, c + c2, e + e2));
    let mean = if counted == 0 { f64::NAN } else { prime_sum as f64 / counted as f64 };
    Ok(AverageIndex { rank, radius, samples, seed, mean, prime_sum, counted, excluded })
}
