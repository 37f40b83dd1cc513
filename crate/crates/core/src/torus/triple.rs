use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A slope `p/q` in lowest terms, `q > 0` or `1/0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    pub fn new(p: i64, q: i64) -> Option<Slope> {
        if p == 0 && q == 0 {
            return None;
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Some(Slope { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// `|p₁q₂ − p₂q₁| = 1`.
    pub fn is_farey_neighbor(&self, other: &Slope) -> bool {
        (self.p as i128 * other.q as i128 - other.p as i128 * self.q as i128).abs() == 1
    }

    fn sum(&self, other: &Slope) -> Slope {
        Slope::new(self.p + other.p, self.q + other.q).expect("neighbors never cancel")
    }

    fn diff(&self, other: &Slope) -> Slope {
        Slope::new(self.p - other.p, self.q - other.q).expect("neighbors never cancel")
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> Ordering {
        // Compare as extended rationals, 1/0 last.
        match (self.q, other.q) {
            (0, 0) => Ordering::Equal,
            (0, _) => Ordering::Greater,
            (_, 0) => Ordering::Less,
            _ => (self.p as i128 * other.q as i128).cmp(&(other.p as i128 * self.q as i128)),
        }
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Fricke trace coordinates `(x, y, z)` of a cusped torus, with the slopes of
/// the three simple curves they measure.
///
/// Integer triples (the modular torus and its Markov tree) also carry exact
/// traces.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceTriple {
    coords: [f64; 3],
    exact: Option<[u128; 3]>,
    slopes: [Slope; 3],
}

const CUSP_TOL: f64 = 1e-9;

fn root_slopes() -> [Slope; 3] {
    [Slope::new(0, 1).unwrap(), Slope::new(1, 0).unwrap(), Slope::new(1, 1).unwrap()]
}

impl TraceTriple {
    /// The modular torus, root `(3, 3, 3)`.
    pub fn modular() -> Self {
        TraceTriple::from_integers(3, 3, 3).expect("Markov root")
    }

    pub fn from_integers(x: u128, y: u128, z: u128) -> Result<Self> {
        let bad = || Error::InvalidTriple(x as f64, y as f64, z as f64);
        let lhs = x.checked_mul(x).and_then(|a| a.checked_add(y.checked_mul(y)?)).and_then(|a| a.checked_add(z.checked_mul(z)?));
        let rhs = x.checked_mul(y).and_then(|a| a.checked_mul(z));
        if x < 3 || y < 3 || z < 3 || lhs.is_none() || lhs != rhs {
            return Err(bad());
        }
        Ok(TraceTriple {
            coords: [x as f64, y as f64, z as f64],
            exact: Some([x, y, z]),
            slopes: root_slopes(),
        })
    }

    /// Any real triple with entries `>= 3` satisfying `x² + y² + z² = xyz`
    /// to relative tolerance `1e-9`.
    pub fn from_real(x: f64, y: f64, z: f64) -> Result<Self> {
        let lhs = x * x + y * y + z * z;
        let rhs = x * y * z;
        if !(x >= 3.0 && y >= 3.0 && z >= 3.0) || (lhs - rhs).abs() > CUSP_TOL * rhs.max(1.0) {
            return Err(Error::InvalidTriple(x, y, z));
        }
        Ok(TraceTriple { coords: [x, y, z], exact: None, slopes: root_slopes() })
    }

    pub fn coords(&self) -> [f64; 3] {
        self.coords
    }

    pub fn exact(&self) -> Option<[u128; 3]> {
        self.exact
    }

    pub fn slopes(&self) -> [Slope; 3] {
        self.slopes
    }

    /// `x² + y² + z² − xyz`; zero for a cusped structure.
    pub fn cusp_defect(&self) -> f64 {
        let [x, y, z] = self.coords;
        x * x + y * y + z * z - x * y * z
    }

    pub fn with_coordinates_permuted(&self, perm: [usize; 3]) -> Self {
        TraceTriple {
            coords: perm.map(|i| self.coords[i]),
            exact: self.exact.map(|e| perm.map(|i| e[i])),
            slopes: self.slopes,
        }
    }

    /// Replaces coordinate `i` by (product of the other two) − itself and the
    /// slope by the other Farey mediant of its neighbours.
    pub fn vieta_flip(&self, i: usize) -> TraceTriple {
        assert!(i < 3);
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let mut out = self.clone();
        out.coords[i] = self.coords[j] * self.coords[k] - self.coords[i];
        out.exact = self.exact.and_then(|e| {
            let v = e[j].checked_mul(e[k])?.checked_sub(e[i])?;
            let mut n = e;
            n[i] = v;
            Some(n)
        });
        if let Some(e) = out.exact {
            out.coords[i] = e[i] as f64;
        }
        let (sj, sk) = (self.slopes[j], self.slopes[k]);
        let sum = sj.sum(&sk);
        out.slopes[i] = if self.slopes[i] == sum { sj.diff(&sk) } else { sum };
        out
    }

    /// Index of the largest coordinate.
    pub(crate) fn argmax(&self) -> usize {
        let c = self.coords;
        if c[0] >= c[1] && c[0] >= c[2] {
            0
        } else if c[1] >= c[2] {
            1
        } else {
            2
        }
    }

    /// Descends the Vieta tree to the node where no flip decreases a coordinate.
    pub fn reduced(&self) -> TraceTriple {
        let mut t = self.clone();
        loop {
            let i = t.argmax();
            let f = t.vieta_flip(i);
            if f.coords[i] < t.coords[i] - CUSP_TOL * t.coords[i] {
                t = f;
            } else {
                return t;
            }
        }
    }
}
