use serde::Serialize;

use super::word::SurfaceWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WordProblem {
    Trivial,
    Nontrivial,
}

/// The sixteen cyclic conjugates of the relator and its inverse.
fn symmetrized() -> Vec<Vec<i8>> {
    let r = SurfaceWord::relator();
    let mut out = Vec::with_capacity(16);
    for base in [r.letters().to_vec(), r.inverse().letters().to_vec()] {
        for s in 0..base.len() {
            let mut rot = base[s..].to_vec();
            rot.extend_from_slice(&base[..s]);
            out.push(rot);
        }
    }
    out
}

fn cyclic_reduce(mut w: Vec<i8>) -> Vec<i8> {
    loop {
        let mut reduced = Vec::with_capacity(w.len());
        for l in w {
            if reduced.last() == Some(&-l) {
                reduced.pop();
            } else {
                reduced.push(l);
            }
        }
        while reduced.len() >= 2 && reduced[0] == -reduced[reduced.len() - 1] {
            reduced.pop();
            reduced.remove(0);
        }
        if reduced.iter().zip(reduced.iter().skip(1)).all(|(a, b)| *a != -*b) {
            return reduced;
        }
        w = reduced;
    }
}

/// Dehn's algorithm on the cyclic word: while some cyclic subword is more
/// than half of a relator conjugate `u v`, replace `u` by `v⁻¹`. The genus-2
/// relator is small cancellation, so the word is trivial exactly when this
/// ends empty.
pub fn dehn_oracle(w: &SurfaceWord) -> WordProblem {
    let rels = symmetrized();
    let half = rels[0].len() / 2;
    let mut cur = cyclic_reduce(w.letters().to_vec());
    'outer: while !cur.is_empty() {
        let n = cur.len();
        for start in 0..n {
            for r in &rels {
                let mut k = 0;
                while k < r.len() && k < n && cur[(start + k) % n] == r[k] {
                    k += 1;
                }
                if k > half {
                    // the rotation starting at `start` with u replaced by v⁻¹
                    let mut next: Vec<i8> = r[k..].iter().rev().map(|&l| -l).collect();
                    next.extend((k..n).map(|j| cur[(start + j) % n]));
                    cur = cyclic_reduce(next);
                    continue 'outer;
                }
            }
        }
        return WordProblem::Nontrivial;
    }
    WordProblem::Trivial
}
