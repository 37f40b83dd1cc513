#![allow(dead_code)]

use fig8_core::word::GroupWord;
use proptest::prelude::*;

/// Arbitrary reduced words over `rank` generators, up to `max_len` raw letters.
pub fn word(rank: usize, max_len: usize) -> impl Strategy<Value = GroupWord> {
    let r = rank as i8;
    prop::collection::vec((1..=r, any::<bool>()), 0..=max_len)
        .prop_map(move |v| GroupWord::new(rank, v.into_iter().map(|(g, s)| if s { g } else { -g })).unwrap())
}

pub mod oracles;
