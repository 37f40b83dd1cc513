use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::word::{Alphabet, GroupWord};

/// A freely reduced word in the generators `a, b, c, d` of the genus-2
/// surface group `⟨a, b, c, d | [a, b] = [c, d]⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceWord(GroupWord);

/// `[a, b] = abAB`.
pub const Z1: &str = "abAB";
/// `[c, d] = cdCD`.
pub const Z2: &str = "cdCD";
/// `[a, b][c, d]⁻¹`.
pub const RELATOR: &str = "abABdcDC";

impl SurfaceWord {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(SurfaceWord(GroupWord::parse(s, &Alphabet::SURFACE2)?))
    }

    pub fn from_group_word(w: GroupWord) -> Result<Self> {
        if w.rank() != 4 {
            return Err(Error::InvalidParameters(format!("expected rank 4, got {}", w.rank())));
        }
        Ok(SurfaceWord(w))
    }

    pub fn new(letters: impl IntoIterator<Item = i8>) -> Result<Self> {
        Ok(SurfaceWord(GroupWord::new(4, letters)?))
    }

    pub fn identity() -> Self {
        SurfaceWord(GroupWord::identity(4))
    }

    pub fn relator() -> Self {
        Self::parse(RELATOR).expect("valid")
    }

    pub fn z1() -> Self {
        Self::parse(Z1).expect("valid")
    }

    pub fn z2() -> Self {
        Self::parse(Z2).expect("valid")
    }

    pub fn as_group_word(&self) -> &GroupWord {
        &self.0
    }

    pub fn letters(&self) -> &[i8] {
        self.0.letters()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        SurfaceWord(self.0.inverse())
    }

    pub fn concat(&self, other: &SurfaceWord) -> Self {
        SurfaceWord(self.0.concat(&other.0))
    }

    pub fn pow(&self, k: i64) -> Self {
        SurfaceWord(self.0.pow(k))
    }

    /// `z⁻¹ self z`.
    pub fn conjugate_by(&self, z: &SurfaceWord) -> Self {
        SurfaceWord(self.0.conjugate_by(&z.0))
    }

    pub fn cyclically_reduced(&self) -> Self {
        SurfaceWord(self.0.cyclically_reduced())
    }

    /// `Some(k)` when the word is `z^k` for the given reduced `z`.
    pub fn power_of(&self, z: &SurfaceWord) -> Option<i64> {
        let zl = z.len();
        if zl == 0 || !self.len().is_multiple_of(zl) {
            return None;
        }
        let k = (self.len() / zl) as i64;
        [k, -k].into_iter().find(|&e| &z.pow(e) == self)
    }
}

impl fmt::Display for SurfaceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.render(&Alphabet::SURFACE2))
    }
}

impl FromStr for SurfaceWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl Serialize for SurfaceWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Letters `a, b`.
    Left,
    /// Letters `c, d`.
    Right,
}

pub fn side_of(letter: i8) -> Side {
    if letter.unsigned_abs() <= 2 {
        Side::Left
    } else {
        Side::Right
    }
}

/// Alternating blocks `L₁ R₁ ⋯ L_k R_k`; the first `L` and the last `R` may be
/// empty so that the pattern always starts on the left and ends on the right.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    pub blocks: Vec<(Side, SurfaceWord)>,
}

impl BlockDecomposition {
    pub fn of(w: &SurfaceWord) -> Self {
        let mut blocks: Vec<(Side, Vec<i8>)> = vec![(Side::Left, Vec::new())];
        for &l in w.letters() {
            let s = side_of(l);
            if blocks.last().expect("nonempty").0 != s {
                blocks.push((s, Vec::new()));
            }
            blocks.last_mut().expect("nonempty").1.push(l);
        }
        if blocks.last().expect("nonempty").0 == Side::Left {
            blocks.push((Side::Right, Vec::new()));
        }
        let blocks = blocks
            .into_iter()
            .map(|(s, ls)| (s, SurfaceWord::new(ls).expect("subword of a reduced word")))
            .collect();
        BlockDecomposition { blocks }
    }

    /// Number of nonempty blocks.
    pub fn count(&self) -> usize {
        self.blocks.iter().filter(|(_, b)| !b.is_empty()).count()
    }

    pub fn concat(&self) -> SurfaceWord {
        SurfaceWord::new(self.blocks.iter().flat_map(|(_, b)| b.letters().iter().copied())).expect("valid")
    }
}
