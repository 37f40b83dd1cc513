use serde::Serialize;

use super::word::{BlockDecomposition, Side, SurfaceWord};
use crate::error::Result;
use crate::resfin::{smallest_excluding_prime, PrimeWitness};
use crate::word::{Alphabet, GroupWord};

/// `a, c ↦ x` and `b, d ↦ y`; well defined on the surface group because
/// both commutators map to `[x, y]`.
pub fn retract(w: &SurfaceWord) -> GroupWord {
    let letters = w.letters().iter().map(|&l| {
        let g = (l.unsigned_abs() - 1) % 2 + 1;
        if l > 0 {
            g as i8
        } else {
            -(g as i8)
        }
    });
    GroupWord::new(2, letters).expect("rank 2 letters")
}

/// `φ^m`, where `φ` fixes `a, b` and conjugates `c, d` by `z = [a, b]`
/// (`u ↦ z⁻¹ u z`).
pub fn dehn_twist(w: &SurfaceWord, m: u64) -> SurfaceWord {
    let zm = SurfaceWord::z1().pow(m as i64);
    let images: Vec<GroupWord> = ["a", "b", "c", "d"]
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let g = SurfaceWord::parse(s).expect("generator");
            let img = if i < 2 { g } else { g.conjugate_by(&zm) };
            img.as_group_word().clone()
        })
        .collect();
    SurfaceWord::from_group_word(w.as_group_word().substitute(4, &images)).expect("rank 4")
}

/// Replaces `L`-blocks that are powers of `z₁ = [a, b]` by the same power of
/// `z₂ = [c, d]` and `R`-blocks that are powers of `z₂` by powers of `z₁`,
/// one block at a time, until no block qualifies or the word is a power of
/// `z₁`. Each replacement merges the block into its neighbours, so the block
/// count drops and the loop ends.
pub fn rewrite_blocks(w: &SurfaceWord) -> SurfaceWord {
    let (z1, z2) = (SurfaceWord::z1(), SurfaceWord::z2());
    let mut cur = w.clone();
    loop {
        if cur.power_of(&z1).is_some() {
            return cur;
        }
        let dec = BlockDecomposition::of(&cur);
        let hit = dec.blocks.iter().enumerate().find_map(|(i, (side, b))| {
            if b.is_empty() {
                return None;
            }
            match side {
                Side::Left => b.power_of(&z1).map(|k| (i, z2.pow(k))),
                Side::Right => b.power_of(&z2).map(|k| (i, z1.pow(k))),
            }
        });
        let Some((i, replacement)) = hit else { return cur };
        let mut blocks = dec.blocks.clone();
        blocks[i].1 = replacement;
        let next = BlockDecomposition { blocks }.concat();
        let single_swap = dec.count() == 1;
        assert!(
            single_swap || BlockDecomposition::of(&next).count() < dec.count(),
            "rewriting did not reduce the block count"
        );
        cur = next;
    }
}

/// Twist exponent `m` with `4(m − 1) ≥ |w|`.
pub fn twist_exponent(len: usize) -> u64 {
    len.div_ceil(4) as u64 + 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Nontrivial,
    TrivialConsistent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub word: SurfaceWord,
    pub verdict: Verdict,
    pub rewritten: SurfaceWord,
    pub twist_exponent: u64,
    /// `r(φ^m(w₀))` over `x, y`.
    pub witness_free_word: String,
    pub witness_length: usize,
    /// Finite quotient in which the witness, hence the word, survives.
    pub witness_prime: Option<PrimeWitness>,
}

/// Rewrites, twists by `φ^m` and retracts to the free group; a nonempty
/// result proves the word nontrivial, and its excluding prime gives a finite
/// quotient detecting it.
pub fn certify_nontrivial(w: &SurfaceWord) -> Result<Certificate> {
    let rewritten = rewrite_blocks(w);
    let m = twist_exponent(w.len());
    let u = retract(&dehn_twist(&rewritten, m));
    let (verdict, witness_prime) = if u.is_empty() {
        (Verdict::TrivialConsistent, None)
    } else {
        (Verdict::Nontrivial, Some(smallest_excluding_prime(&u)?))
    };
    Ok(Certificate {
        word: w.clone(),
        verdict,
        rewritten,
        twist_exponent: m,
        witness_free_word: u.render(&Alphabet::RETRACT),
        witness_length: u.len(),
        witness_prime,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LengthBound {
    pub word_length: usize,
    pub witness_length: usize,
    /// `l² + l`.
    pub bound: usize,
    pub pass: bool,
}

pub fn length_bound_check(w: &SurfaceWord) -> Result<LengthBound> {
    let c = certify_nontrivial(w)?;
    let l = w.len();
    let bound = l * l + l;
    Ok(LengthBound { word_length: l, witness_length: c.witness_length, bound, pass: c.witness_length <= bound })
}
