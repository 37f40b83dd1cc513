//! Irreducible characters of symmetric groups by the Murnaghan–Nakayama rule.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::partition::{factorial, Partition};
use crate::error::{Error, Result};

/// Memoized character values keyed by `(λ, μ)`.
///
/// Safe to share between threads; concurrent inserts of the same key store
/// the same value.
#[derive(Debug, Default)]
pub struct CharacterTable {
    memo: RwLock<HashMap<(Partition, Partition), BigInt>>,
}

impl CharacterTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// `χ_λ(μ)`.
    pub fn value(&self, lambda: &Partition, mu: &Partition) -> Result<BigInt> {
        if lambda.n() != mu.n() {
            return Err(Error::SizeMismatch(lambda.n(), mu.n()));
        }
        Ok(self.eval(lambda.parts(), mu.parts()))
    }

    fn eval(&self, lambda: &[u32], mu: &[u32]) -> BigInt {
        if mu.is_empty() {
            return BigInt::one();
        }
        let key = (
            Partition::new(lambda.to_vec()).expect("positive parts"),
            Partition::new(mu.to_vec()).expect("positive parts"),
        );
        if let Some(v) = self.memo.read().expect("poisoned").get(&key) {
            return v.clone();
        }
        let r = mu[0] as usize;
        let rest = &mu[1..];
        let mut total = BigInt::zero();
        for (shape, sign) in remove_rim_hooks(lambda, r) {
            let v = self.eval(&shape, rest);
            if sign {
                total -= v;
            } else {
                total += v;
            }
        }
        self.memo.write().expect("poisoned").insert(key, total.clone());
        total
    }

    pub fn len(&self) -> usize {
        self.memo.read().expect("poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// All shapes obtained by removing a rim hook of size `r`, with the sign of
/// the hook (`true` for odd height).
///
/// Works on beta numbers: a hook of size `r` is a bead moved from `b` to an
/// empty position `b − r`; its height is the number of beads jumped.
fn remove_rim_hooks(lambda: &[u32], r: usize) -> Vec<(Vec<u32>, bool)> {
    let l = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p as usize + (l - 1 - i)).collect();
    let mut out = Vec::new();
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let jumped = beta.iter().filter(|&&c| c > b - r && c < b).count();
        let mut nb = beta.clone();
        nb[idx] = b - r;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let shape: Vec<u32> = nb
            .iter()
            .enumerate()
            .map(|(i, &x)| (x - (l - 1 - i)) as u32)
            .filter(|&p| p > 0)
            .collect();
        out.push((shape, jumped % 2 == 1));
    }
    out
}

fn global_table() -> &'static CharacterTable {
    static TABLE: OnceLock<CharacterTable> = OnceLock::new();
    TABLE.get_or_init(CharacterTable::new)
}

/// `χ_λ(μ)` using a process-wide memo table.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    global_table().value(lambda, mu)
}

/// Number of tuples `(g₁, …, g_k)` with `gᵢ` of cycle type `classes[i]` and
/// `g₁ ⋯ g_k = e`, from the Frobenius character formula
/// `|C₁|⋯|C_k| / |G| · Σ_χ χ(C₁)⋯χ(C_k) / χ(1)^{k−2}`.
pub fn frobenius_count(classes: &[Partition]) -> Result<BigUint> {
    let Some(first) = classes.first() else {
        return Err(Error::InvalidParameters("no classes".into()));
    };
    let n = first.n();
    if let Some(bad) = classes.iter().find(|c| c.n() != n) {
        return Err(Error::SizeMismatch(n, bad.n()));
    }
    let k = classes.len() as i32;
    let id = Partition::identity(n);
    let mut sum = BigRational::zero();
    for lambda in Partition::all(n) {
        let dim = character(&lambda, &id)?;
        let mut prod = BigInt::one();
        for c in classes {
            prod *= character(&lambda, c)?;
        }
        let term = BigRational::from_integer(prod);
        let dimr = BigRational::from_integer(dim);
        sum += if k >= 2 { term / dimr.pow(k - 2) } else { term * dimr };
    }
    let sizes: BigUint = classes.iter().map(Partition::class_size).product();
    let total = sum * BigRational::from_integer(BigInt::from(sizes)) / BigRational::from_integer(BigInt::from(factorial(n)));
    if !total.is_integer() {
        return Err(Error::NonIntegral(total.to_string()));
    }
    total
        .to_integer()
        .to_biguint()
        .ok_or_else(|| Error::NonIntegral(format!("negative count {total}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn chi(l: &str, m: &str) -> i64 {
        use num_traits::ToPrimitive;
        character(&part(l), &part(m)).unwrap().to_i64().unwrap()
    }

    #[test]
    fn character_examples() {
        assert_eq!(chi("2,1", "1,1,1"), 2);
        assert_eq!(chi("2,1", "3"), -1);
        for mu in Partition::all(5) {
            assert_eq!(character(&part("5"), &mu).unwrap(), BigInt::one());
        }
        assert!(matches!(character(&part("2,1"), &part("2")), Err(Error::SizeMismatch(3, 2))));
    }

    #[test]
    fn sign_character() {
        // χ_{(1ⁿ)} is the sign
        for mu in Partition::all(6) {
            let s = if mu.parity() == super::super::Parity::Even { 1 } else { -1 };
            assert_eq!(character(&Partition::identity(6), &mu).unwrap(), BigInt::from(s));
        }
    }

    #[test]
    fn dimensions_square_sum() {
        for n in 1..=6 {
            let id = Partition::identity(n);
            let mut total = BigInt::zero();
            for l in Partition::all(n) {
                let d = character(&l, &id).unwrap();
                assert!(d > BigInt::zero());
                total += &d * &d;
            }
            assert_eq!(total, BigInt::from(factorial(n)));
        }
    }

    #[test]
    fn column_orthogonality() {
        // Σ_λ χ_λ(μ)² = |centralizer of μ| = n! / |class|
        let n = 7;
        for mu in Partition::all(n) {
            let s: BigInt = Partition::all(n).iter().map(|l| character(l, &mu).unwrap().pow(2)).sum();
            assert_eq!(s, BigInt::from(factorial(n) / mu.class_size()));
        }
    }

    #[test]
    fn frobenius_examples() {
        assert_eq!(frobenius_count(&[part("2,1"), part("2,1")]).unwrap(), BigUint::from(3u32));
        assert_eq!(frobenius_count(&[part("3")]).unwrap(), BigUint::zero());
        assert_eq!(frobenius_count(&[part("1,1,1")]).unwrap(), BigUint::one());
        assert!(frobenius_count(&[part("2,1"), part("2")]).is_err());
    }
}
