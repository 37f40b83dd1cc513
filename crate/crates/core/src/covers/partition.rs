use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing list of positive parts; the cycle type of a
/// conjugacy class in a symmetric group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Partition {
    /// Sorts the parts; zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// `(1ⁿ)`.
    pub fn identity(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sign of any permutation of this cycle type: `(n − parts) mod 2`.
    pub fn parity(&self) -> Parity {
        if (self.n() - self.len()).is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `n! / ∏ j^{m_j} m_j!`.
    pub fn class_size(&self) -> BigUint {
        let mut denom = BigUint::one();
        let mut i = 0;
        while i < self.parts.len() {
            let j = self.parts[i];
            let m = self.parts[i..].iter().take_while(|&&p| p == j).count();
            denom *= BigUint::from(j).pow(m as u32) * factorial(m);
            i += m;
        }
        factorial(self.n()) / denom
    }

    /// All partitions of `n`, in reverse lexicographic order starting at `(n)`.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=max.min(rest)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n as u32, n as u32, &mut Vec::new(), &mut out);
        out
    }

    /// A representative permutation: consecutive points in each cycle.
    pub fn representative(&self) -> super::Permutation {
        let mut cycles = Vec::new();
        let mut next = 0;
        for &p in &self.parts {
            cycles.push((next..next + p as usize).collect::<Vec<_>>());
            next += p as usize;
        }
        super::Permutation::from_cycles(self.n(), &cycles).expect("disjoint cycles")
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Parity of a list of classes: the sum of their parities.
pub fn class_parity(p: &Partition) -> Parity {
    p.parity()
}

pub fn class_size(p: &Partition) -> BigUint {
    p.class_size()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        f.write_str(&s.join(","))
    }
}

/// Parses `3,1,1`.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::InvalidPartition(s.to_string())))
            .collect::<Result<Vec<_>>>()?;
        if parts.is_empty() {
            return Err(Error::InvalidPartition(s.to_string()));
        }
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
