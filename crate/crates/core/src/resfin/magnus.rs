use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::sanov::least_prime_not_dividing;
use crate::error::{Error, Result};
use crate::word::GroupWord;

/// Truncated power series in noncommuting `x, y` with integer coefficients.
///
/// Monomials of degree `d` are stored at offset `2^d − 1 + bits`, reading `x`
/// as 0 and `y` as 1 with the first letter most significant, so the storage
/// order is by degree, then lexicographic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagnusSeries {
    degree: usize,
    coeffs: Vec<BigInt>,
}

fn offset(d: usize) -> usize {
    (1 << d) - 1
}

fn monomial_name(d: usize, bits: usize) -> String {
    (0..d).map(|i| if bits >> (d - 1 - i) & 1 == 0 { 'x' } else { 'y' }).collect()
}

impl MagnusSeries {
    pub fn one(degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); offset(degree + 1)];
        coeffs[0] = BigInt::one();
        MagnusSeries { degree, coeffs }
    }

    /// `1 + v` for a generator, `1 − v + v² − …` for its inverse.
    fn letter(degree: usize, gen: usize, inverse: bool) -> Self {
        let mut s = Self::one(degree);
        for d in 1..=degree {
            // v^d has all bits equal to the generator
            let bits = if gen == 0 { 0 } else { (1 << d) - 1 };
            s.coeffs[offset(d) + bits] = if inverse && d % 2 == 1 { -BigInt::one() } else { BigInt::one() };
            if !inverse {
                break;
            }
        }
        s
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficient(&self, monomial: &str) -> Result<BigInt> {
        let d = monomial.len();
        if d > self.degree {
            return Ok(BigInt::zero());
        }
        let mut bits = 0;
        for ch in monomial.chars() {
            bits = bits << 1
                | match ch {
                    'x' => 0,
                    'y' => 1,
                    _ => return Err(Error::InvalidParameters(format!("monomial {monomial} is not over x, y"))),
                };
        }
        Ok(self.coeffs[offset(d) + bits].clone())
    }

    /// Nonzero terms of degree exactly `d`, in lexicographic order.
    pub fn degree_part(&self, d: usize) -> Vec<(String, BigInt)> {
        if d > self.degree {
            return Vec::new();
        }
        (0..1usize << d)
            .filter(|&b| !self.coeffs[offset(d) + b].is_zero())
            .map(|b| (monomial_name(d, b), self.coeffs[offset(d) + b].clone()))
            .collect()
    }

    /// Least positive degree carrying a nonzero coefficient.
    pub fn lowest_degree(&self) -> Option<usize> {
        (1..=self.degree).find(|&d| self.coeffs[offset(d)..offset(d + 1)].iter().any(|c| !c.is_zero()))
    }

    pub fn max_abs_coefficient(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().expect("constant term")
    }

    pub fn mul(&self, rhs: &MagnusSeries) -> Result<MagnusSeries> {
        if self.degree != rhs.degree {
            return Err(Error::InvalidParameters(format!(
                "truncation degrees differ: {} and {}",
                self.degree, rhs.degree
            )));
        }
        let n = self.degree;
        let mut out = MagnusSeries { degree: n, coeffs: vec![BigInt::zero(); self.coeffs.len()] };
        for d1 in 0..=n {
            for b1 in 0..1usize << d1 {
                let c1 = &self.coeffs[offset(d1) + b1];
                if c1.is_zero() {
                    continue;
                }
                for d2 in 0..=n - d1 {
                    for b2 in 0..1usize << d2 {
                        let c2 = &rhs.coeffs[offset(d2) + b2];
                        if !c2.is_zero() {
                            out.coeffs[offset(d1 + d2) + (b1 << d2 | b2)] += c1 * c2;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Right multiplication by `1 + v` or its inverse, without a full product.
    fn mul_letter(&mut self, gen: usize, inverse: bool) {
        let n = self.degree;
        // new[m·v^j] += ±old[m] for j ≥ 1; process high degrees first so
        // each update reads unmodified lower-degree values
        for d in (1..=n).rev() {
            for b in 0..1usize << d {
                let mut acc = BigInt::zero();
                // the monomial must end in a run of the generator's letter
                for j in 1..=d {
                    let last = b >> (j - 1) & 1;
                    if last != gen {
                        break;
                    }
                    let src = &self.coeffs[offset(d - j) + (b >> j)];
                    if inverse && j % 2 == 1 {
                        acc -= src;
                    } else {
                        acc += src;
                    }
                    if !inverse {
                        break;
                    }
                }
                self.coeffs[offset(d) + b] += acc;
            }
        }
    }
}

impl fmt::Display for MagnusSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for d in 0..=self.degree {
            for b in 0..1usize << d {
                let c = &self.coeffs[offset(d) + b];
                if c.is_zero() {
                    continue;
                }
                let name = monomial_name(d, b);
                let mag = c.abs();
                let neg = c.is_negative();
                if first {
                    if neg {
                        f.write_str("-")?;
                    }
                } else {
                    f.write_str(if neg { " - " } else { " + " })?;
                }
                first = false;
                if d == 0 {
                    write!(f, "{mag}")?;
                } else if mag.is_one() {
                    f.write_str(&name)?;
                } else {
                    write!(f, "{mag}{name}")?;
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Serialize for MagnusSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut terms = BTreeMap::new();
        for d in 0..=self.degree {
            for (m, c) in self.degree_part(d) {
                terms.insert(if d == 0 { "1".to_string() } else { m }, c.to_string());
            }
        }
        #[derive(Serialize)]
        struct Repr<'a> {
            degree: usize,
            terms: &'a BTreeMap<String, String>,
        }
        Repr { degree: self.degree, terms: &terms }.serialize(s)
    }
}

/// Image of `w` under `a ↦ 1 + x`, `b ↦ 1 + y`, truncated above degree `degree`.
pub fn magnus_expand(w: &GroupWord, degree: usize) -> Result<MagnusSeries> {
    if degree < 1 {
        return Err(Error::InvalidParameters("truncation degree must be at least 1".into()));
    }
    if w.rank() > 2 {
        return Err(Error::InvalidParameters(format!("rank {} exceeds 2", w.rank())));
    }
    let mut s = MagnusSeries::one(degree);
    for &l in w.letters() {
        s.mul_letter((l.unsigned_abs() - 1) as usize, l < 0);
    }
    Ok(s)
}

/// Reference implementation by full products; used to cross-check the
/// in-place letter update.
pub fn magnus_expand_naive(w: &GroupWord, degree: usize) -> Result<MagnusSeries> {
    let mut s = MagnusSeries::one(degree);
    for &l in w.letters() {
        s = s.mul(&MagnusSeries::letter(degree, (l.unsigned_abs() - 1) as usize, l < 0))?;
    }
    Ok(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Depth {
    /// `w` lies in the `k`-th term of the lower central series but not the next.
    Exact(usize),
    /// No nonzero term up to the search limit.
    Deeper,
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Exact(k) => write!(f, "{k}"),
            Depth::Deeper => f.write_str("deeper"),
        }
    }
}

/// Lower central series depth: the lowest positive degree of the Magnus
/// expansion.
pub fn lcs_depth(w: &GroupWord, max_k: usize) -> Result<Depth> {
    if w.is_empty() {
        return Err(Error::TrivialWord);
    }
    let s = magnus_expand(w, max_k)?;
    Ok(s.lowest_degree().map_or(Depth::Deeper, Depth::Exact))
}

/// A unitriangular representation over `Z/mZ` in which `w` is nontrivial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnipotentWitness {
    pub word: String,
    pub depth: usize,
    /// First nonzero monomial of degree `depth` and its coefficient.
    pub monomial: String,
    #[serde(serialize_with = "decimal")]
    pub coefficient: BigInt,
    pub modulus: u64,
    pub dimension: usize,
    /// Row-major images of `a` and `b`.
    pub generator_images: [Vec<u64>; 2],
    pub image: Vec<u64>,
    /// Order of the full unitriangular group, `m^{k(k+1)/2}`.
    #[serde(serialize_with = "decimal")]
    pub ambient_order: BigUint,
    /// Order of the subgroup generated by the two images, when small enough
    /// to enumerate.
    pub image_order: Option<u64>,
}

fn decimal<T: fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Largest image group enumerated by closure.
pub const IMAGE_ORDER_LIMIT: usize = 1 << 20;

/// Path representation read off the first nonzero degree-`k` monomial
/// `v₁ ⋯ v_k`: generator `g` acts as `I + Σ_{vᵢ = g} E_{i,i+1}` on
/// `(k+1)`-space. Its `(1, k+1)` entry on `w` is the monomial's coefficient
/// and every other off-diagonal entry is a lower-degree coefficient, which
/// vanishes, so `w ↦ I + c E_{1,k+1}`.
pub fn unipotent_witness(w: &GroupWord, k: usize) -> Result<UnipotentWitness> {
    let depth = lcs_depth(w, k)?;
    if depth != Depth::Exact(k) {
        return Err(Error::DepthMismatch { expected: k, actual: depth.to_string() });
    }
    let series = magnus_expand(w, k)?;
    let (monomial, coefficient) = series.degree_part(k).into_iter().next().expect("depth k has a nonzero term");
    let m = least_prime_not_dividing(&coefficient);
    let dim = k + 1;
    let gens: [Vec<u64>; 2] = [0, 1].map(|g| {
        let mut mat = identity(dim);
        for (i, ch) in monomial.chars().enumerate() {
            if (ch == 'y') as usize == g {
                mat[i * dim + i + 1] = 1;
            }
        }
        mat
    });
    let inv = [inverse(&gens[0], dim, m), inverse(&gens[1], dim, m)];
    let mut image = identity(dim);
    for &l in w.letters() {
        let g = (l.unsigned_abs() - 1) as usize;
        image = matmul(&image, if l > 0 { &gens[g] } else { &inv[g] }, dim, m);
    }
    let mut expected = identity(dim);
    expected[dim - 1] = coefficient.mod_floor(&BigInt::from(m)).to_u64().expect("below m");
    assert_eq!(image, expected, "unipotent image disagrees with the Magnus coefficient");
    assert_ne!(image, identity(dim));
    let ambient_order = BigUint::from(m).pow((k * (k + 1) / 2) as u32);
    let image_order = group_order(&gens, dim, m, IMAGE_ORDER_LIMIT);
    Ok(UnipotentWitness {
        word: w.to_string(),
        depth: k,
        monomial,
        coefficient,
        modulus: m,
        dimension: dim,
        generator_images: gens,
        image,
        ambient_order,
        image_order,
    })
}

fn identity(dim: usize) -> Vec<u64> {
    let mut m = vec![0; dim * dim];
    for i in 0..dim {
        m[i * dim + i] = 1;
    }
    m
}

fn matmul(a: &[u64], b: &[u64], dim: usize, m: u64) -> Vec<u64> {
    let mut out = vec![0; dim * dim];
    for i in 0..dim {
        for l in 0..dim {
            let x = a[i * dim + l];
            if x == 0 {
                continue;
            }
            for j in 0..dim {
                out[i * dim + j] = (out[i * dim + j] + x * b[l * dim + j]) % m;
            }
        }
    }
    out
}

/// Inverse of a unitriangular matrix: `Σ (−N)^j` for `N = A − I`.
fn inverse(a: &[u64], dim: usize, m: u64) -> Vec<u64> {
    let mut neg_n: Vec<u64> = a.iter().map(|&x| (m - x % m) % m).collect();
    for i in 0..dim {
        neg_n[i * dim + i] = 0;
    }
    let mut out = identity(dim);
    let mut power = identity(dim);
    for _ in 1..dim {
        power = matmul(&power, &neg_n, dim, m);
        for (o, p) in out.iter_mut().zip(&power) {
            *o = (*o + p) % m;
        }
    }
    out
}

fn group_order(gens: &[Vec<u64>], dim: usize, m: u64, limit: usize) -> Option<u64> {
    let id = identity(dim);
    let mut seen: HashSet<Vec<u64>> = HashSet::from([id.clone()]);
    let mut queue = vec![id];
    let mut i = 0;
    while i < queue.len() {
        for g in gens {
            let h = matmul(&queue[i], g, dim, m);
            if seen.insert(h.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push(h);
            }
        }
        i += 1;
    }
    Some(queue.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> GroupWord {
        GroupWord::free2(s).unwrap()
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(magnus_expand(&w("a"), 2).unwrap().to_string(), "1 + x");
        assert_eq!(magnus_expand(&w("abAB"), 2).unwrap().to_string(), "1 + xy - yx");
        assert_eq!(magnus_expand(&w("ab"), 1).unwrap().to_string(), "1 + x + y");
        assert_eq!(magnus_expand(&w("A"), 3).unwrap().to_string(), "1 - x + xx - xxx");
        assert!(magnus_expand(&w("a"), 0).is_err());
    }

    #[test]
    fn fast_update_matches_products() {
        for s in ["abAB", "aaBabA", "abAbaBAB", "BBBa", "AbAbAb"] {
            for d in 1..=5 {
                assert_eq!(magnus_expand(&w(s), d).unwrap(), magnus_expand_naive(&w(s), d).unwrap(), "{s} {d}");
            }
        }
    }

    #[test]
    fn depth_examples() {
        assert_eq!(lcs_depth(&w("a"), 5).unwrap(), Depth::Exact(1));
        assert_eq!(lcs_depth(&w("abAB"), 5).unwrap(), Depth::Exact(2));
        assert_eq!(lcs_depth(&w("abAbaBAB"), 5).unwrap(), Depth::Exact(3));
        assert_eq!(lcs_depth(&w("abAbaBAB"), 2).unwrap(), Depth::Deeper);
        assert_eq!(lcs_depth(&w(""), 3), Err(Error::TrivialWord));
    }

    #[test]
    fn witness_examples() {
        let r = unipotent_witness(&w("abAB"), 2).unwrap();
        assert_eq!(r.modulus, 2);
        assert_eq!(r.generator_images[0], vec![1, 1, 0, 0, 1, 0, 0, 0, 1]);
        assert_eq!(r.generator_images[1], vec![1, 0, 0, 0, 1, 1, 0, 0, 1]);
        assert_eq!(r.image, vec![1, 0, 1, 0, 1, 0, 0, 0, 1]);
        assert_eq!(r.ambient_order, BigUint::from(8u8));
        assert_eq!(r.image_order, Some(8));

        let r = unipotent_witness(&w("a"), 1).unwrap();
        assert_eq!((r.modulus, r.ambient_order.clone()), (2, BigUint::from(2u8)));

        let r = unipotent_witness(&w("abAbaBAB"), 3).unwrap();
        assert!(!r.coefficient.is_zero());
        assert_eq!(r.modulus, least_prime_not_dividing(&r.coefficient));
        assert!(matches!(unipotent_witness(&w("abAB"), 3), Err(Error::DepthMismatch { expected: 3, .. })));
    }

    #[test]
    fn serializes_terms() {
        let v = serde_json::to_value(magnus_expand(&w("abAB"), 2).unwrap()).unwrap();
        assert_eq!(v["terms"]["xy"], "1");
        assert_eq!(v["terms"]["yx"], "-1");
        assert_eq!(v["terms"]["1"], "1");
    }
}
