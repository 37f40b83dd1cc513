use serde::Serialize;

use super::construct::word_monodromy;
use super::perm::Permutation;
use crate::error::{Error, Result};
use crate::word::GroupWord;

/// Finite permutation representation in which a word moves the basepoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExcludingRep {
    pub degree: usize,
    pub generators: Vec<Permutation>,
    /// Image of the basepoint (point 1, index 0) under the word.
    pub endpoint: usize,
}

/// Traces `w` along a line of `|w| + 1` points, one edge per letter, then
/// closes each generator's partial injection into cycles by sending the end
/// of every maximal path back to its start.
///
/// The word's path is the line itself, so it ends at the last point; the
/// stabilizer of the basepoint is a subgroup of index `|w| + 1` avoiding `w`.
pub fn stallings_excluding_subgroup(w: &GroupWord, rank: usize) -> Result<ExcludingRep> {
    if w.is_empty() {
        return Err(Error::TrivialWord);
    }
    if let Some(&l) = w.letters().iter().find(|l| l.unsigned_abs() as usize > rank) {
        return Err(Error::UnassignedGenerator(l.unsigned_abs() as usize));
    }
    let d = w.len() + 1;
    let mut partial: Vec<Vec<Option<usize>>> = vec![vec![None; d]; rank];
    for (i, &l) in w.letters().iter().enumerate() {
        let g = (l.unsigned_abs() - 1) as usize;
        let (from, to) = if l > 0 { (i, i + 1) } else { (i + 1, i) };
        // a clash would need a cancelling pair in the word
        debug_assert!(partial[g][from].is_none());
        partial[g][from] = Some(to);
    }
    let generators = partial.into_iter().map(|p| complete(&p)).collect::<Vec<_>>();
    let endpoint = word_monodromy(&generators, w)?.apply(0);
    debug_assert_eq!(endpoint, d - 1);
    Ok(ExcludingRep { degree: d, generators, endpoint })
}

fn complete(partial: &[Option<usize>]) -> Permutation {
    let d = partial.len();
    let mut has_pre = vec![false; d];
    for t in partial.iter().flatten() {
        has_pre[*t] = true;
    }
    let mut images: Vec<usize> = (0..d).collect();
    for start in (0..d).filter(|&i| !has_pre[i]) {
        let mut cur = start;
        while let Some(next) = partial[cur] {
            images[cur] = next;
            cur = next;
        }
        images[cur] = start;
    }
    // points on closed cycles of the partial map already have every image
    for (i, t) in partial.iter().enumerate() {
        if let Some(t) = t {
            images[i] = *t;
        }
    }
    Permutation::from_images(images).expect("completion is a bijection")
}
