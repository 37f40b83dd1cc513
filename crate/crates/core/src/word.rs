//! Freely reduced words in a free group of small rank.
//!
//! A letter is a nonzero `i8`: `+k` is the k-th generator (1-based) and `-k`
//! its inverse. Words are reduced eagerly on construction, so a
//! [`GroupWord`] is always the canonical representative of its element.

use std::fmt;

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Names for the generators of a word; lowercase is the generator and
/// uppercase its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Alphabet {
    names: &'static [u8],
}

impl Alphabet {
    /// `a, b`: the free group of rank 2.
    pub const FREE2: Alphabet = Alphabet { names: b"ab" };
    /// `a, b, c, d`: the genus-2 surface group generators.
    pub const SURFACE2: Alphabet = Alphabet { names: b"abcd" };
    /// `x, y`: target of the genus-2 retraction.
    pub const RETRACT: Alphabet = Alphabet { names: b"xy" };

    const STANDARD: &'static [u8] = b"abcdefghijklmnopqrstuvwxyz";

    /// The first `rank` letters of the latin alphabet.
    pub fn standard(rank: usize) -> Alphabet {
        Alphabet { names: &Self::STANDARD[..rank.min(26)] }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    fn letter(&self, c: char) -> Option<i8> {
        let lower = c.to_ascii_lowercase() as u8;
        let idx = self.names.iter().position(|&n| n == lower)? as i8 + 1;
        if c.is_ascii_lowercase() {
            Some(idx)
        } else if c.is_ascii_uppercase() {
            Some(-idx)
        } else {
            None
        }
    }

    fn char_of(&self, letter: i8) -> char {
        let c = self.names[(letter.unsigned_abs() - 1) as usize] as char;
        if letter > 0 {
            c
        } else {
            c.to_ascii_uppercase()
        }
    }
}

/// A freely reduced word over `rank` generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord {
    rank: u8,
    letters: Vec<i8>,
}

fn push_reduced(out: &mut Vec<i8>, letter: i8) {
    if out.last() == Some(&-letter) {
        out.pop();
    } else {
        out.push(letter);
    }
}

impl GroupWord {
    /// Builds a word from raw letters, reducing freely.
    pub fn new(rank: usize, letters: impl IntoIterator<Item = i8>) -> Result<Self> {
        let mut out = Vec::new();
        for (position, l) in letters.into_iter().enumerate() {
            if l == 0 || l.unsigned_abs() as usize > rank {
                return Err(Error::InvalidLetter { letter: '?', position });
            }
            push_reduced(&mut out, l);
        }
        Ok(GroupWord { rank: rank as u8, letters: out })
    }

    fn from_reduced_unchecked(rank: u8, letters: Vec<i8>) -> Self {
        GroupWord { rank, letters }
    }

    pub fn identity(rank: usize) -> Self {
        GroupWord { rank: rank as u8, letters: Vec::new() }
    }

    /// The single-letter word `+gen` (1-based).
    pub fn generator(rank: usize, gen: usize) -> Self {
        assert!(gen >= 1 && gen <= rank);
        GroupWord { rank: rank as u8, letters: vec![gen as i8] }
    }

    /// Parses a word; any character outside the alphabet is rejected.
    pub fn parse(s: &str, alphabet: &Alphabet) -> Result<Self> {
        let mut out = Vec::with_capacity(s.len());
        for (position, c) in s.chars().enumerate() {
            let l = alphabet
                .letter(c)
                .ok_or(Error::InvalidLetter { letter: c, position })?;
            push_reduced(&mut out, l);
        }
        Ok(GroupWord { rank: alphabet.rank() as u8, letters: out })
    }

    /// Parses over `a, b`.
    pub fn free2(s: &str) -> Result<Self> {
        Self::parse(s, &Alphabet::FREE2)
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        self.letters.iter().map(|&l| alphabet.char_of(l)).collect()
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn letters(&self) -> &[i8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self::from_reduced_unchecked(self.rank, self.letters.iter().rev().map(|l| -l).collect())
    }

    /// Reduced product `self * other`.
    pub fn concat(&self, other: &GroupWord) -> Self {
        let mut out = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        Self::from_reduced_unchecked(self.rank.max(other.rank), out)
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = GroupWord::identity(self.rank());
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// `u v u⁻¹ v⁻¹`.
    pub fn commutator(u: &GroupWord, v: &GroupWord) -> Self {
        u.concat(v).concat(&u.inverse()).concat(&v.inverse())
    }

    /// `z⁻¹ self z`.
    pub fn conjugate_by(&self, z: &GroupWord) -> Self {
        z.inverse().concat(self).concat(z)
    }

    /// Replaces every letter by a word (a homomorphism on generators).
    pub fn substitute(&self, rank: usize, images: &[GroupWord]) -> Self {
        let inverses: Vec<GroupWord> = images.iter().map(GroupWord::inverse).collect();
        let mut out = Vec::new();
        for &l in &self.letters {
            let idx = (l.unsigned_abs() - 1) as usize;
            let img = if l > 0 { &images[idx] } else { &inverses[idx] };
            for &m in &img.letters {
                push_reduced(&mut out, m);
            }
        }
        Self::from_reduced_unchecked(rank as u8, out)
    }

    /// Strips inverse pairs from the two ends.
    pub fn cyclically_reduced(&self) -> Self {
        let l = &self.letters;
        let (mut i, mut j) = (0, l.len());
        while j - i >= 2 && l[i] == -l[j - 1] {
            i += 1;
            j -= 1;
        }
        Self::from_reduced_unchecked(self.rank, l[i..j].to_vec())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.letters.len() < 2 || self.letters[0] != -self.letters[self.letters.len() - 1]
    }

    /// True when the cyclic reduction is `u^k` for some `k >= 2`.
    pub fn is_proper_power(&self) -> bool {
        let c = self.cyclically_reduced();
        let n = c.len();
        (1..n).any(|p| n.is_multiple_of(p) && n / p >= 2 && (p..n).all(|i| c.letters[i] == c.letters[i - p]))
    }

    /// Exponent sum of each generator.
    pub fn abelianization(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.rank()];
        for &l in &self.letters {
            v[(l.unsigned_abs() - 1) as usize] += l.signum() as i64;
        }
        v
    }

    pub fn prefix(&self, len: usize) -> Self {
        Self::from_reduced_unchecked(self.rank, self.letters[..len].to_vec())
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&Alphabet::standard(self.rank())))
    }
}

impl Serialize for GroupWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Samples freely reduced words uniformly.
#[derive(Debug, Clone)]
pub struct WordSampler {
    rank: usize,
}

impl WordSampler {
    pub fn new(rank: usize) -> Self {
        assert!(rank >= 1);
        WordSampler { rank }
    }

    /// Uniform over reduced words of exactly `len` letters: each step picks
    /// uniformly among the letters that do not cancel the previous one.
    pub fn sample_length<R: Rng + ?Sized>(&self, rng: &mut R, len: usize) -> GroupWord {
        let r = self.rank as i8;
        let mut letters: Vec<i8> = Vec::with_capacity(len);
        while letters.len() < len {
            let g = rng.gen_range(1..=r);
            let l = if rng.gen_bool(0.5) { g } else { -g };
            if letters.last() != Some(&-l) {
                letters.push(l);
            }
        }
        GroupWord::from_reduced_unchecked(self.rank as u8, letters)
    }

    /// Uniform over the ball of reduced words of length at most `max_len`.
    pub fn sample_ball<R: Rng + ?Sized>(&self, rng: &mut R, max_len: usize) -> GroupWord {
        let len = self.ball_length_distribution(max_len).sample(rng);
        self.sample_length(rng, len)
    }

    /// Weights proportional to sphere sizes `2r(2r-1)^(n-1)`, scaled to stay finite.
    pub fn ball_length_distribution(&self, max_len: usize) -> WeightedIndex<f64> {
        let branch = (2 * self.rank - 1) as f64;
        let first = 2.0 * self.rank as f64;
        let weights: Vec<f64> = (0..=max_len)
            .map(|n| {
                if n == 0 {
                    branch.powi(-(max_len as i32))
                } else {
                    first * branch.powi(n as i32 - 1 - max_len as i32)
                }
            })
            .collect();
        WeightedIndex::new(weights).expect("positive weights")
    }
}
