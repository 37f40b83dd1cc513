use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::partition::Partition;
use crate::error::{Error, Result};

/// A permutation of `{0, …, n-1}`, written 1-based in cycle notation.
///
/// Permutations act on the right: `(σ·τ)(i) = τ(σ(i))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u16).collect() }
    }

    /// From 0-based images; fails unless bijective.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Permutation { images: images.into_iter().map(|i| i as u16).collect() })
    }

    /// From 0-based cycles on `n` points.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for c in cycles {
            for (k, &i) in c.iter().enumerate() {
                if i >= n || std::mem::replace(&mut used[i], true) {
                    return Err(Error::InvalidPermutation(format!("bad point {} in cycles", i + 1)));
                }
                images[i] = c[(k + 1) % c.len()];
            }
        }
        Self::from_images(images)
    }

    /// Parses cycle notation such as `(1 2 3)(4 5)` on `n` points; `()` or
    /// an empty string is the identity.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| Error::InvalidPermutation(s.to_string()))?;
            let close = open.find(')').ok_or_else(|| Error::InvalidPermutation(s.to_string()))?;
            let body = &open[..close];
            let cycle = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| match t.parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(Error::InvalidPermutation(format!("bad point {t:?}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            cycles.push(cycle);
            rest = open[close + 1..].trim_start();
        }
        Self::from_cycles(n, &cycles)
    }

    /// Parses cycle notation with degree the largest point mentioned.
    pub fn parse_auto(s: &str) -> Result<Self> {
        let n = s
            .split(|c: char| !c.is_ascii_digit())
            .filter_map(|t| t.parse::<usize>().ok())
            .max()
            .unwrap_or(1);
        Self::parse(s, n)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u16; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Permutation { images: inv }
    }

    /// `self · other`: first `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    /// `[σ, τ] = σ τ σ⁻¹ τ⁻¹`.
    pub fn commutator(&self, other: &Permutation) -> Self {
        self.then(other).then(&self.inverse()).then(&other.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Cycles including fixed points, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut j = self.apply(start);
            while j != start {
                seen[j] = true;
                c.push(j);
                j = self.apply(j);
            }
            out.push(c);
        }
        out
    }

    pub fn num_cycles(&self) -> usize {
        self.cycles().len()
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::new(self.cycles().iter().map(|c| c.len() as u32).collect()).expect("cycle lengths are positive")
    }

    pub fn is_even(&self) -> bool {
        (self.degree() - self.num_cycles()).is_multiple_of(2)
    }

    pub fn is_full_cycle(&self) -> bool {
        self.num_cycles() == 1
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    /// All permutations of degree `n` in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u16> = (0..n as u16).collect();
        loop {
            out.push(Permutation { images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot");
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    /// All `n`-cycles `(1 x₂ … xₙ)`, ordered lexicographically by `x₂ … xₙ`.
    pub fn full_cycles(n: usize) -> Vec<Permutation> {
        if n <= 1 {
            return vec![Permutation::identity(n)];
        }
        Permutation::all(n - 1)
            .into_iter()
            .map(|p| {
                let mut cycle = vec![0];
                cycle.extend(p.images.iter().map(|&x| x as usize + 1));
                Permutation::from_cycles(n, &[cycle]).expect("a cycle")
            })
            .collect()
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for c in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            let body: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Permutation::parse_auto(s)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn composition_acts_on_the_right() {
        // (12) then (23): 1 -> 2 -> 3, 3 -> 2, 2 -> 1
        let st = &p("(1 2)", 3) * &p("(2 3)", 3);
        assert_eq!(st.apply(0), 2);
        assert_eq!(st, p("(1 3 2)", 3));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("(1 2 3)(4 5)", 5).to_string(), "(1 2 3)(4 5)");
        assert_eq!(p("()", 4).to_string(), "()");
        assert_eq!(p("", 2), Permutation::identity(2));
        assert!(Permutation::parse("(1 1)", 3).is_err());
        assert!(Permutation::parse("(1 4)", 3).is_err());
        assert!(Permutation::parse("(1 2", 3).is_err());
        assert_eq!("(2 4)".parse::<Permutation>().unwrap().degree(), 4);
    }

    #[test]
    fn cycle_data() {
        let x = p("(1 2 3)(4 5)", 6);
        assert_eq!(x.cycle_type().to_string(), "3,2,1");
        assert_eq!(x.order(), 6);
        assert!(!x.is_even());
        assert_eq!(x.then(&x.inverse()), Permutation::identity(6));
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(Permutation::all(4).len(), 24);
        assert_eq!(Permutation::full_cycles(4).len(), 6);
        assert_eq!(Permutation::full_cycles(3), vec![p("(1 2 3)", 3), p("(1 3 2)", 3)]);
    }
}
