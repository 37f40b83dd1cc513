//! Exact 2×2 determinant-one matrices, word evaluation, and the trace and
//! length identities for figure-eight geodesics in a pair of pants.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::word::GroupWord;

/// A 2×2 integer matrix of determinant 1, optionally over `Z/mZ`.
///
/// With a modulus the entries live in `[0, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactMat2 {
    e: [BigInt; 4],
    modulus: Option<BigInt>,
}

impl ExactMat2 {
    pub fn new(a11: impl Into<BigInt>, a12: impl Into<BigInt>, a21: impl Into<BigInt>, a22: impl Into<BigInt>) -> Result<Self> {
        let m = ExactMat2 { e: [a11.into(), a12.into(), a21.into(), a22.into()], modulus: None };
        if !m.det().is_one() {
            return Err(Error::NotUnimodular);
        }
        Ok(m)
    }

    /// Builds a matrix over `Z/mZ`; the determinant is checked modulo `m`.
    pub fn new_mod(entries: [BigInt; 4], modulus: impl Into<BigInt>) -> Result<Self> {
        let modulus = modulus.into();
        if modulus < BigInt::from(2) {
            return Err(Error::BadModulus);
        }
        let e = entries.map(|x| x.mod_floor(&modulus));
        let m = ExactMat2 { e, modulus: Some(modulus) };
        if !m.det().is_one() {
            return Err(Error::NotUnimodular);
        }
        Ok(m)
    }

    pub fn identity(modulus: Option<&BigInt>) -> Self {
        ExactMat2 {
            e: [BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one()],
            modulus: modulus.cloned(),
        }
    }

    pub fn entries(&self) -> &[BigInt; 4] {
        &self.e
    }

    pub fn modulus(&self) -> Option<&BigInt> {
        self.modulus.as_ref()
    }

    fn normalize(mut self) -> Self {
        if let Some(m) = &self.modulus {
            for x in self.e.iter_mut() {
                *x = x.mod_floor(m);
            }
        }
        self
    }

    pub fn det(&self) -> BigInt {
        let d = &self.e[0] * &self.e[3] - &self.e[1] * &self.e[2];
        match &self.modulus {
            Some(m) => d.mod_floor(m),
            None => d,
        }
    }

    pub fn trace(&self) -> BigInt {
        let t = &self.e[0] + &self.e[3];
        match &self.modulus {
            Some(m) => t.mod_floor(m),
            None => t,
        }
    }

    pub fn mul(&self, rhs: &ExactMat2) -> Result<ExactMat2> {
        if self.modulus != rhs.modulus {
            return Err(Error::ModulusMismatch);
        }
        let [a, b, c, d] = &self.e;
        let [p, q, r, s] = &rhs.e;
        Ok(ExactMat2 {
            e: [a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s],
            modulus: self.modulus.clone(),
        }
        .normalize())
    }

    /// Inverse by the adjugate, valid because the determinant is 1.
    pub fn inverse(&self) -> ExactMat2 {
        let [a, b, c, d] = &self.e;
        ExactMat2 { e: [d.clone(), -b, -c, a.clone()], modulus: self.modulus.clone() }.normalize()
    }

    pub fn is_identity(&self) -> bool {
        self.e[0].is_one() && self.e[1].is_zero() && self.e[2].is_zero() && self.e[3].is_one()
    }

    /// Reduces an exact matrix modulo `m`.
    pub fn reduce_mod(&self, m: &BigInt) -> Result<ExactMat2> {
        if self.modulus.is_some() {
            return Err(Error::ModulusMismatch);
        }
        ExactMat2::new_mod(self.e.clone(), m.clone())
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.e.iter().map(|x| x.abs()).max().expect("four entries")
    }

    /// Entries as `f64` (row-major); lossy for huge entries.
    pub fn to_f64(&self) -> [f64; 4] {
        use num_traits::ToPrimitive;
        self.e.clone().map(|x| x.to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Display for ExactMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.e[0], self.e[1], self.e[2], self.e[3])
    }
}

/// Serialized as `[["a11","a12"],["a21","a22"]]` with decimal strings.
impl Serialize for ExactMat2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = [
            [self.e[0].to_string(), self.e[1].to_string()],
            [self.e[2].to_string(), self.e[3].to_string()],
        ];
        let mut seq = s.serialize_seq(Some(2))?;
        for row in &rows {
            seq.serialize_element(row)?;
        }
        seq.end()
    }
}

/// Evaluates `w` with `assignment[i]` the image of generator `i + 1`.
pub fn eval_word(w: &GroupWord, assignment: &[ExactMat2]) -> Result<ExactMat2> {
    let modulus = assignment.first().and_then(|m| m.modulus.clone());
    if assignment.iter().any(|m| m.modulus != modulus) {
        return Err(Error::ModulusMismatch);
    }
    let inverses: Vec<ExactMat2> = assignment.iter().map(ExactMat2::inverse).collect();
    let mut acc = ExactMat2::identity(modulus.as_ref());
    for &l in w.letters() {
        let idx = (l.unsigned_abs() - 1) as usize;
        let m = if l > 0 { assignment.get(idx) } else { inverses.get(idx) };
        let m = m.ok_or(Error::UnassignedGenerator(idx + 1))?;
        acc = acc.mul(m)?;
    }
    Ok(acc)
}

/// `tr(A⁻¹B) = tr A · tr B − tr AB`.
pub fn trace_third(t_a: f64, t_b: f64, t_ab: f64) -> f64 {
    t_a * t_b - t_ab
}

/// Exact version of [`trace_third`].
pub fn trace_third_exact(t_a: &BigInt, t_b: &BigInt, t_ab: &BigInt) -> BigInt {
    t_a * t_b - t_ab
}

/// A hyperbolic length with its trace `2 cosh(length / 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HypLength {
    pub length: f64,
    pub trace: f64,
}

impl HypLength {
    pub fn from_length(length: f64) -> Result<Self> {
        Ok(HypLength { length, trace: length_to_trace(length)? })
    }

    pub fn from_trace(trace: f64) -> Result<Self> {
        Ok(HypLength { length: trace_to_length(trace)?, trace: trace.abs() })
    }
}

/// Length of the figure-eight in a pair of pants with boundary lengths
/// `la, lb, lc` (0 is a cusp), winding around the first two:
/// `cosh(l/2) = 2 cosh(la/2) cosh(lb/2) + cosh(lc/2)`.
pub fn fig8_length(la: f64, lb: f64, lc: f64) -> Result<HypLength> {
    for x in [la, lb, lc] {
        if !(x >= 0.0) {
            return Err(Error::NegativeLength(x));
        }
    }
    let half = 2.0 * (la / 2.0).cosh() * (lb / 2.0).cosh() + (lc / 2.0).cosh();
    Ok(HypLength { length: 2.0 * half.acosh(), trace: 2.0 * half })
}

/// `l = 2 acosh(|t| / 2)`; requires `|t| > 2`.
pub fn trace_to_length(trace: f64) -> Result<f64> {
    let t = trace.abs();
    if !(t > 2.0) {
        return Err(Error::NotHyperbolic(trace));
    }
    Ok(2.0 * (t / 2.0).acosh())
}

/// `t = 2 cosh(l / 2)`.
pub fn length_to_trace(length: f64) -> Result<f64> {
    if !(length >= 0.0) {
        return Err(Error::NegativeLength(length));
    }
    Ok(2.0 * (length / 2.0).cosh())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conversion {
    TraceToLength,
    LengthToTrace,
}

pub fn length_trace_convert(x: f64, direction: Conversion) -> Result<f64> {
    match direction {
        Conversion::TraceToLength => trace_to_length(x),
        Conversion::LengthToTrace => length_to_trace(x),
    }
}

/// The Sanov pair `[[1,2],[0,1]]`, `[[1,0],[2,1]]`.
pub fn sanov_pair() -> [ExactMat2; 2] {
    [
        ExactMat2::new(1, 2, 0, 1).expect("det 1"),
        ExactMat2::new(1, 0, 2, 1).expect("det 1"),
    ]
}

/// Generators `X = [[1,1],[1,2]]`, `Y = [[1,-1],[-1,2]]` of the modular
/// torus group (the commutator subgroup of the modular group).
pub fn modular_torus_pair() -> [ExactMat2; 2] {
    [
        ExactMat2::new(1, 1, 1, 2).expect("det 1"),
        ExactMat2::new(1, -1, -1, 2).expect("det 1"),
    ]
}
