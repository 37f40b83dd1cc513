use std::collections::HashMap;

use serde::Serialize;

use super::sanov::is_prime;
use crate::error::{Error, Result};

/// Solutions of `a² + b² + c² + d² = p` normalized as in the
/// Lubotzky–Phillips–Sarnak construction: `a` odd and positive with `b, c, d`
/// even when `p ≡ 1 (mod 4)`; `a` even with `b, c, d` odd when `p ≡ 3
/// (mod 4)`, taking the first nonzero coordinate positive.
pub fn lps_quaternions(p: u64) -> Vec<[i64; 4]> {
    let p = p as i64;
    let r = (p as f64).sqrt() as i64 + 1;
    let mut out = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                for d in -r..=r {
                    if a * a + b * b + c * c + d * d != p {
                        continue;
                    }
                    let keep = if p % 4 == 1 {
                        a > 0 && a % 2 == 1 && b % 2 == 0 && c % 2 == 0 && d % 2 == 0
                    } else {
                        let lead = [a, b, c, d].into_iter().find(|&x| x != 0).unwrap_or(0);
                        a % 2 == 0 && b % 2 != 0 && c % 2 != 0 && d % 2 != 0 && lead > 0
                    };
                    if keep {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Legendre symbol `(a / q)` as `1`, `−1` or `0`.
pub fn legendre(a: u64, q: u64) -> i32 {
    match pow_mod(a, (q - 1) / 2, q) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// A projective class of an invertible 2×2 matrix over `F_q`, scaled so the
/// first nonzero entry is 1.
type Proj = [u64; 4];

fn normalize(m: [u64; 4], q: u64) -> Proj {
    let lead = m.into_iter().find(|&x| x != 0).expect("invertible");
    let inv = pow_mod(lead, q - 2, q);
    m.map(|x| x * inv % q)
}

fn mul(a: &Proj, b: &Proj, q: u64) -> Proj {
    normalize(
        [
            (a[0] * b[0] + a[1] * b[2]) % q,
            (a[0] * b[1] + a[1] * b[3]) % q,
            (a[2] * b[0] + a[3] * b[2]) % q,
            (a[2] * b[1] + a[3] * b[3]) % q,
        ],
        q,
    )
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LpsGirth {
    pub p: u64,
    pub q: u64,
    pub generators: usize,
    /// Number of vertices reached from the identity.
    pub group_order: usize,
    /// Vertices with square determinant: the `PSL(2, q)` half of the
    /// bipartition, reached by the even-length words.
    pub even_half_order: usize,
    /// `|PSL(2, q)| = q(q² − 1)/2`.
    pub psl_order: u64,
    /// `|PGL(2, q)| = q(q² − 1)`.
    pub pgl_order: u64,
    pub girth: usize,
    /// `4 log_p q − log_p 4`.
    pub bound: f64,
    pub pass: bool,
}

/// Builds the `p + 1` generators in `PGL(2, q)` and measures the girth of
/// their Cayley graph by breadth-first search from the identity (the graph is
/// vertex transitive).
///
/// When `p` is a non-residue mod `q` the generators have non-square
/// determinant `p`, so the graph is the bipartite one on all of `PGL(2, q)`.
pub fn lps_girth_check(p: u64, q: u64) -> Result<LpsGirth> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if p < 5 || q <= 2 * p || legendre(p, q) != -1 {
        return Err(Error::ResidueCondition { p, q });
    }
    // x² + y² + 1 = 0 has a solution over every odd prime field
    let (x, y) = (0..q)
        .flat_map(|x| (0..q).map(move |y| (x, y)))
        .find(|&(x, y)| (x * x + y * y + 1) % q == 0)
        .expect("sum of two squares covers -1");
    let quats = lps_quaternions(p);
    assert_eq!(quats.len() as u64, p + 1, "expected p + 1 quaternions");
    let r = |v: i64| v.rem_euclid(q as i64) as u64;
    let gens: Vec<Proj> = quats
        .iter()
        .map(|&[a, b, c, d]| {
            let (x, y) = (x as i64, y as i64);
            // a + bi + cj + dk with i ↦ [[x, y], [y, −x]], j ↦ [[0, 1], [−1, 0]]
            let m = [a + b * x - d * y, c + b * y + d * x, -c + b * y + d * x, a - b * x + d * y].map(r);
            normalize(m, q)
        })
        .collect();
    let id = normalize([1, 0, 0, 1], q);
    let mut depth: HashMap<Proj, (usize, Proj)> = HashMap::from([(id, (0, id))]);
    let mut frontier = vec![id];
    let mut girth = usize::MAX;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for u in &frontier {
            let (du, parent) = depth[u];
            if 2 * du + 1 >= girth {
                continue;
            }
            for g in &gens {
                let v = mul(u, g, q);
                if v == parent {
                    continue;
                }
                match depth.get(&v) {
                    Some(&(dv, _)) => girth = girth.min(du + dv + 1),
                    None => {
                        depth.insert(v, (du + 1, *u));
                        next.push(v);
                    }
                }
            }
        }
        frontier = next;
    }
    // the early exit above may stop before every vertex is seen
    let (group_order, even_half_order) = reach(&gens, id, q);
    let bound = 4.0 * (q as f64).ln() / (p as f64).ln() - 4f64.ln() / (p as f64).ln();
    let girth_ok = girth as f64 >= bound;
    Ok(LpsGirth {
        p,
        q,
        generators: gens.len(),
        group_order,
        even_half_order,
        psl_order: q * (q * q - 1) / 2,
        pgl_order: q * (q * q - 1),
        girth,
        bound,
        pass: girth_ok,
    })
}

fn reach(gens: &[Proj], id: Proj, q: u64) -> (usize, usize) {
    let mut seen = std::collections::HashSet::from([id]);
    let mut stack = vec![id];
    while let Some(u) = stack.pop() {
        for g in gens {
            let v = mul(&u, g, q);
            if seen.insert(v) {
                stack.push(v);
            }
        }
    }
    // rescaling multiplies the determinant by a square, so its class is defined
    let even = seen.iter().filter(|m| legendre((m[0] * m[3] + q * q - m[1] * m[2]) % q, q) == 1).count();
    (seen.len(), even)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternions_for_five() {
        let mut qs = lps_quaternions(5);
        qs.sort();
        assert_eq!(
            qs,
            vec![[1, -2, 0, 0], [1, 0, -2, 0], [1, 0, 0, -2], [1, 0, 0, 2], [1, 0, 2, 0], [1, 2, 0, 0]]
        );
        assert_eq!(lps_quaternions(7).len(), 8);
        assert_eq!(lps_quaternions(13).len(), 14);
    }

    #[test]
    fn girth_examples() {
        let r = lps_girth_check(5, 13).unwrap();
        assert_eq!(r.generators, 6);
        assert_eq!(r.psl_order, 1092);
        assert_eq!(r.group_order as u64, r.pgl_order);
        assert_eq!(r.even_half_order, 1092);
        assert!(r.girth >= 6 && r.pass);
        let r = lps_girth_check(5, 17).unwrap();
        assert_eq!(r.psl_order, 2448);
        assert_eq!(r.even_half_order, 2448);
        assert!(r.pass);
    }

    #[test]
    fn girth_matches_reduced_words() {
        // oracle: shortest nonempty non-backtracking generator word equal to
        // the identity, by exhaustive enumeration
        let (p, q) = (5, 13);
        let r = lps_girth_check(p, q).unwrap();
        let mut qs = lps_quaternions(p);
        qs.sort();
        let to_mat = |[a, b, c, d]: [i64; 4]| {
            let (x, y) = (0..q as i64)
                .flat_map(|x| (0..q as i64).map(move |y| (x, y)))
                .find(|&(x, y)| (x * x + y * y + 1) % q as i64 == 0)
                .unwrap();
            normalize([a + b * x - d * y, c + b * y + d * x, -c + b * y + d * x, a - b * x + d * y].map(|v| v.rem_euclid(q as i64) as u64), q)
        };
        let gens: Vec<Proj> = qs.into_iter().map(to_mat).collect();
        let id = normalize([1, 0, 0, 1], q);
        let inv: Vec<usize> =
            gens.iter().map(|g| gens.iter().position(|h| mul(g, h, q) == id).unwrap()).collect();
        fn shortest(gens: &[Proj], inv: &[usize], id: Proj, q: u64, cur: Proj, last: usize, len: usize, max: usize) -> Option<usize> {
            if len > 0 && cur == id {
                return Some(len);
            }
            if len == max {
                return None;
            }
            (0..gens.len())
                .filter(|&i| len == 0 || i != inv[last])
                .filter_map(|i| shortest(gens, inv, id, q, mul(&cur, &gens[i], q), i, len + 1, max))
                .min()
        }
        let mut found = None;
        for max in 1..=r.girth {
            found = shortest(&gens, &inv, id, q, id, 0, 0, max);
            if found.is_some() {
                break;
            }
        }
        assert_eq!(found, Some(r.girth));
        assert_eq!(r.girth % 2, 0, "bipartite graph");
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(lps_girth_check(5, 11).unwrap_err(), Error::ResidueCondition { p: 5, q: 11 });
        assert_eq!(lps_girth_check(5, 29).unwrap_err(), Error::ResidueCondition { p: 5, q: 29 });
        assert_eq!(lps_girth_check(5, 15).unwrap_err(), Error::NotPrime(15));
        assert_eq!(lps_girth_check(4, 13).unwrap_err(), Error::NotPrime(4));
    }
}
