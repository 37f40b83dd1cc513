//! Quantitative residual finiteness of the rank-2 free group.

mod expected;
mod lps;
mod magnus;
mod sanov;

pub use expected::{abelian_index_prime, average_index_simulation, expected_min_prime, expected_min_prime_exact, AverageIndex, CHUNK};
pub use lps::{legendre, lps_girth_check, lps_quaternions, LpsGirth};
pub use magnus::{
    lcs_depth, magnus_expand, magnus_expand_naive, unipotent_witness, Depth, MagnusSeries, UnipotentWitness,
    IMAGE_ORDER_LIMIT,
};
pub use sanov::{least_prime_not_dividing, sanov_eval, smallest_excluding_prime, PrimeWitness};
