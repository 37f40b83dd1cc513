//! Self-intersection numbers of closed geodesics on the modular torus.
//!
//! A closed geodesic is the conjugacy class of a word `w` in the group
//! generated by `X = [[1,1],[1,2]]` and `Y = [[1,-1],[-1,2]]`. Its lifts to
//! the upper half plane are the axes of the conjugates `g w g⁻¹`. Each double
//! point on the surface corresponds to exactly two orbits, under the cyclic
//! group generated by `w`, of conjugates whose axis crosses the axis of `w`.
//!
//! `X` and `Y` pair the sides of the ideal quadrilateral `(-1, 0, 1, ∞)`, so
//! the tiling by its translates is dual to the Cayley tree. A lift crossing
//! the axis of `w` passes through one of the tiles `v·D`, `v` a proper prefix
//! of `w`, and so equals `v u` for a word `u` no longer than `|w|`. The search
//! runs over `v u` with `|u| <= |w| + C` (all inside the ball of radius
//! `2|w| + C`) and repeats with `|u| <= |w| + C + 2`; the two counts must agree.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sl2::{eval_word, modular_torus_pair, ExactMat2};
use crate::word::GroupWord;

/// Extra search radius beyond `|w|`.
pub const SEARCH_MARGIN: usize = 4;

const FLOAT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelfIntersection {
    pub word: String,
    pub trace: String,
    pub count: usize,
    /// Word-length radius `2|w| + C` of the candidate set.
    pub radius: usize,
    /// Count at the radius enlarged by 2 (equal to `count`).
    pub count_at_larger_radius: usize,
    /// Number of crossing lifts modulo `⟨w⟩` (twice `count`).
    pub crossing_orbits: usize,
}

/// Integer 2×2 matrix with overflow-checked arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct M2([i128; 4]);

impl M2 {
    const ID: M2 = M2([1, 0, 0, 1]);

    fn from_exact(m: &ExactMat2) -> Option<M2> {
        use num_traits::ToPrimitive;
        let e = m.entries();
        Some(M2([e[0].to_i128()?, e[1].to_i128()?, e[2].to_i128()?, e[3].to_i128()?]))
    }

    fn mul(&self, o: &M2) -> Option<M2> {
        let [a, b, c, d] = self.0;
        let [p, q, r, s] = o.0;
        let f = |x: i128, y: i128, z: i128, t: i128| x.checked_mul(y)?.checked_add(z.checked_mul(t)?);
        Some(M2([f(a, p, b, r)?, f(a, q, b, s)?, f(c, p, d, r)?, f(c, q, d, s)?]))
    }

    fn inv(&self) -> M2 {
        let [a, b, c, d] = self.0;
        M2([d, -b, -c, a])
    }

    fn to_exact(self) -> ExactMat2 {
        let [a, b, c, d] = self.0;
        ExactMat2::new(a, b, c, d).expect("det 1 preserved")
    }
}

/// Fixed point `(num + sign·√Δ) / den` with `den > 0`.
#[derive(Debug, Clone)]
struct QuadPoint {
    num: BigInt,
    sign: i8,
    den: BigInt,
    approx: f64,
}

/// The two fixed points of a hyperbolic matrix, in increasing order.
fn endpoints(m: &ExactMat2, sqrt_disc: f64) -> [QuadPoint; 2] {
    let [a, _, c, d] = m.entries();
    let mut num = a - d;
    let mut den: BigInt = c * 2;
    let mut flip = 1i8;
    if den.is_negative() {
        num = -num;
        den = -den;
        flip = -1;
    }
    let nf = big_to_f64(&num);
    let df = big_to_f64(&den);
    let mk = |s: i8| QuadPoint {
        num: num.clone(),
        sign: s * flip,
        den: den.clone(),
        approx: (nf + s as f64 * flip as f64 * sqrt_disc) / df,
    };
    let (lo, hi) = if flip > 0 { (mk(-1), mk(1)) } else { (mk(1), mk(-1)) };
    [lo, hi]
}

fn big_to_f64(x: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// Sign of `a + b√Δ`.
fn sign_surd(a: &BigInt, b: &BigInt, disc: &BigInt) -> Ordering {
    let za = a.cmp(&BigInt::zero());
    let zb = b.cmp(&BigInt::zero());
    match (za, zb) {
        (Ordering::Equal, _) => zb,
        (_, Ordering::Equal) => za,
        (x, y) if x == y => x,
        (Ordering::Greater, _) => (a * a).cmp(&(b * b * disc)),
        _ => (b * b * disc).cmp(&(a * a)),
    }
}

fn cmp_points(x: &QuadPoint, y: &QuadPoint, disc: &BigInt) -> Ordering {
    let diff = x.approx - y.approx;
    let scale = x.approx.abs().max(y.approx.abs()).max(1.0);
    if diff.abs() > FLOAT_TOL * scale {
        return if diff > 0.0 { Ordering::Greater } else { Ordering::Less };
    }
    let a = &x.num * &y.den - &y.num * &x.den;
    // x - y = (a + b√Δ) / (den_x den_y)
    let b = BigInt::from(x.sign) * &y.den - BigInt::from(y.sign) * &x.den;
    sign_surd(&a, &b, disc)
}

/// True when the open geodesics with endpoint pairs `e` and `f` cross.
fn axes_cross(e: &[QuadPoint; 2], f: &[QuadPoint; 2], disc: &BigInt) -> bool {
    let inside = |p: &QuadPoint| cmp_points(p, &e[0], disc) == Ordering::Greater && cmp_points(p, &e[1], disc) == Ordering::Less;
    inside(&f[0]) != inside(&f[1])
}

struct Search<'a> {
    w: M2,
    w_exact: &'a ExactMat2,
    disc: BigInt,
    sqrt_disc: f64,
    axis: [QuadPoint; 2],
    translation: f64,
    offset: f64,
}

impl Search<'_> {
    fn conj(&self, g: &M2) -> ExactMat2 {
        match g.mul(&self.w).and_then(|x| x.mul(&g.inv())) {
            Some(m) => m.to_exact(),
            None => {
                let ge = g.to_exact();
                ge.mul(self.w_exact).and_then(|x| x.mul(&ge.inverse())).expect("same modulus")
            }
        }
    }

    /// Position of the crossing point along the axis of `w`, in units of length.
    fn crossing_parameter(&self, f: &[QuadPoint; 2]) -> f64 {
        let (e0, e1) = (self.axis[0].approx, self.axis[1].approx);
        let ratio = |z: f64| (z - e0) / (z - e1);
        0.5 * (-(ratio(f[0].approx) * ratio(f[1].approx))).ln()
    }

    fn count_orbits(&self, prefixes: &[M2], depth: usize) -> usize {
        let gens = modular_torus_pair().map(|m| M2::from_exact(&m).expect("small"));
        let steps: [(i8, M2); 4] = [(1, gens[0]), (-1, gens[0].inv()), (2, gens[1]), (-2, gens[1].inv())];
        let mut found: HashSet<ExactMat2> = HashSet::new();
        let mut stack: Vec<(M2, i8, usize)> = prefixes.iter().map(|&p| (p, 0, 0)).collect();
        while let Some((g, last, len)) = stack.pop() {
            self.visit(&g, &mut found);
            if len == depth {
                continue;
            }
            for &(l, s) in &steps {
                if l == -last {
                    continue;
                }
                if let Some(next) = g.mul(&s) {
                    stack.push((next, l, len + 1));
                }
            }
        }
        found.len()
    }

    fn visit(&self, g: &M2, found: &mut HashSet<ExactMat2>) {
        let m = self.conj(g);
        if &m == self.w_exact {
            return;
        }
        let f = endpoints(&m, self.sqrt_disc);
        if !axes_cross(&self.axis, &f, &self.disc) {
            return;
        }
        let t = self.crossing_parameter(&f);
        let k = ((t - self.offset) / self.translation).floor() as i64;
        let mut key = self.shift(&m, k);
        if !self.in_window(&key) {
            key = self.shift(&m, -k);
            debug_assert!(self.in_window(&key));
        }
        let back = self.shift(&key, 1);
        let fwd = self.shift(&key, -1);
        if !found.contains(&back) && !found.contains(&fwd) {
            found.insert(key);
        }
    }

    fn in_window(&self, m: &ExactMat2) -> bool {
        let t = self.crossing_parameter(&endpoints(m, self.sqrt_disc)) - self.offset;
        t > -1e-6 * self.translation && t < self.translation * (1.0 + 1e-6)
    }

    /// `w^-k m w^k`, which moves the crossing point by `-k` translation lengths.
    fn shift(&self, m: &ExactMat2, k: i64) -> ExactMat2 {
        let step = if k >= 0 { self.w_exact.clone() } else { self.w_exact.inverse() };
        let mut out = m.clone();
        for _ in 0..k.unsigned_abs() {
            out = step.inverse().mul(&out).and_then(|x| x.mul(&step)).expect("exact");
        }
        out
    }
}

/// Geometric self-intersection number of the closed geodesic of `w` on the
/// modular torus (`a ↦ X`, `b ↦ Y`).
pub fn self_intersection(w: &GroupWord) -> Result<SelfIntersection> {
    self_intersection_with_margin(w, SEARCH_MARGIN)
}

pub fn self_intersection_with_margin(w: &GroupWord, margin: usize) -> Result<SelfIntersection> {
    let w = w.cyclically_reduced();
    if w.rank() > 2 {
        return Err(Error::InvalidParameters("modular torus words use a, b only".into()));
    }
    if w.is_empty() {
        return Err(Error::TrivialWord);
    }
    let pair = modular_torus_pair();
    let wm = eval_word(&w, &pair)?;
    let trace = wm.trace();
    if trace.abs() <= BigInt::from(2) {
        return Err(Error::NotHyperbolic(big_to_f64(&trace)));
    }
    if w.is_proper_power() {
        return Err(Error::ProperPower);
    }
    let w_small = M2::from_exact(&wm).ok_or_else(|| Error::InvalidParameters("word too long".into()))?;
    let disc = &trace * &trace - BigInt::from(4);
    let sqrt_disc = big_to_f64(&disc).sqrt();
    let axis = endpoints(&wm, sqrt_disc);
    let tf = big_to_f64(&trace).abs();
    let translation = 2.0 * (tf / 2.0).acosh();
    let search = Search {
        w: w_small,
        w_exact: &wm,
        disc,
        sqrt_disc,
        axis,
        translation,
        // arbitrary irrational fraction of the period, away from crossing points
        offset: std::f64::consts::FRAC_1_PI * translation,
    };
    let mut prefixes = Vec::with_capacity(w.len());
    let mut acc = M2::ID;
    for i in 0..w.len() {
        prefixes.push(acc);
        let l = w.letters()[i];
        let g = M2::from_exact(&pair[(l.unsigned_abs() - 1) as usize]).expect("small");
        acc = acc.mul(&if l > 0 { g } else { g.inv() }).expect("prefix fits");
    }
    let depth = w.len() + margin;
    let orbits = search.count_orbits(&prefixes, depth);
    let larger = search.count_orbits(&prefixes, depth + 2);
    if orbits != larger {
        return Err(Error::InvalidParameters(format!(
            "crossing count not stable: {orbits} orbits at radius {}, {larger} at radius {}",
            2 * w.len() + margin,
            2 * w.len() + margin + 2
        )));
    }
    assert!(orbits.is_multiple_of(2), "crossing orbits come in pairs");
    Ok(SelfIntersection {
        word: w.to_string(),
        trace: trace.to_string(),
        count: orbits / 2,
        radius: 2 * w.len() + margin,
        count_at_larger_radius: larger / 2,
        crossing_orbits: orbits,
    })
}

/// Independent check: scans every reduced word of length at most `radius`
/// and counts crossing orbits. Exponential in `radius`.
pub fn self_intersection_ball(w: &GroupWord, radius: usize) -> Result<usize> {
    let w = w.cyclically_reduced();
    let pair = modular_torus_pair();
    let wm = eval_word(&w, &pair)?;
    let trace = wm.trace();
    if trace.abs() <= BigInt::from(2) {
        return Err(Error::NotHyperbolic(big_to_f64(&trace)));
    }
    let disc = &trace * &trace - BigInt::from(4);
    let sqrt_disc = big_to_f64(&disc).sqrt();
    let axis = endpoints(&wm, sqrt_disc);
    let translation = 2.0 * (big_to_f64(&trace).abs() / 2.0).acosh();
    let search = Search {
        w: M2::from_exact(&wm).expect("short word"),
        w_exact: &wm,
        disc,
        sqrt_disc,
        axis,
        translation,
        offset: 0.618_033_988_749_894_9 * translation,
    };
    let orbits = search.count_orbits(&[M2::ID], radius);
    Ok(orbits / 2)
}
