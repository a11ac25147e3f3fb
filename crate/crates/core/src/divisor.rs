//! Divisors: a single torus, or a cycle of spheres given by its cyclic
//! self-intersection sequence.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};
use thiserror::Error;

use crate::json::{self, JsonError};
use crate::linalg::IntMatrix;
pub use crate::linalg::Inertia;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DivisorError {
    #[error("a cycle of spheres needs at least 2 components, got {0} (nodal components are not allowed)")]
    CycleTooShort(usize),
    #[error("malformed divisor JSON: {0}")]
    Json(#[from] JsonError),
}

/// A cycle of spheres, `k >= 2`, stored as the sequence `(s_1, ..., s_k)` in
/// one of its cyclic orientations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SphereCycle {
    seq: Vec<BigInt>,
}

impl SphereCycle {
    pub fn new(seq: Vec<BigInt>) -> Result<Self, DivisorError> {
        if seq.len() < 2 {
            return Err(DivisorError::CycleTooShort(seq.len()));
        }
        Ok(SphereCycle { seq })
    }

    pub fn from_i64s(seq: &[i64]) -> Result<Self, DivisorError> {
        Self::new(seq.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.seq
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.seq
    }

    pub fn get(&self, i: usize) -> &BigInt {
        &self.seq[i]
    }

    /// Entry `i` when it fits in an `i64`; handy for pattern matching in tests.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.seq.iter().map(|x| i64::try_from(x).ok()).collect()
    }

    /// Rotates left by `shift`: entry `shift` becomes the first.
    pub fn rotated(&self, shift: usize) -> SphereCycle {
        let k = self.len();
        let mut seq = self.seq.clone();
        seq.rotate_left(shift % k);
        SphereCycle { seq }
    }

    pub fn reversed(&self) -> SphereCycle {
        let mut seq = self.seq.clone();
        seq.reverse();
        SphereCycle { seq }
    }

    /// All `2k` dihedral images (rotations, then rotations of the reversal).
    pub fn dihedral_images(&self) -> impl Iterator<Item = SphereCycle> + '_ {
        let k = self.len();
        let rev = self.reversed();
        (0..k)
            .map(move |r| self.rotated(r))
            .chain((0..k).map(move |r| rev.rotated(r)))
    }

    /// Lexicographically least dihedral image.
    pub fn canonical_form(&self) -> SphereCycle {
        let k = self.len();
        let mut best: Option<(bool, usize)> = None;
        for rev in [false, true] {
            for r in 0..k {
                let better = match best {
                    None => true,
                    Some((brev, br)) => {
                        self.cmp_images((rev, r), (brev, br)) == std::cmp::Ordering::Less
                    }
                };
                if better {
                    best = Some((rev, r));
                }
            }
        }
        let (rev, r) = best.expect("k >= 2");
        SphereCycle {
            seq: (0..k).map(|i| self.image_at(rev, r, i).clone()).collect(),
        }
    }

    fn image_at(&self, rev: bool, shift: usize, i: usize) -> &BigInt {
        let k = self.len();
        if rev {
            // reversed sequence rotated left by `shift`
            &self.seq[(2 * k - 1 - ((i + shift) % k)) % k]
        } else {
            &self.seq[(i + shift) % k]
        }
    }

    fn cmp_images(&self, a: (bool, usize), b: (bool, usize)) -> std::cmp::Ordering {
        for i in 0..self.len() {
            let ord = self.image_at(a.0, a.1, i).cmp(self.image_at(b.0, b.1, i));
            if ord.is_ne() {
                return ord;
            }
        }
        std::cmp::Ordering::Equal
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical_form() == *self
    }

    /// No component is an exceptional (-1) sphere.
    pub fn is_toric_minimal(&self) -> bool {
        let minus_one = BigInt::from(-1);
        self.seq.iter().all(|s| *s != minus_one)
    }

    pub fn intersection_matrix(&self) -> IntMatrix {
        let k = self.len();
        IntMatrix::from_fn(k, k, |i, j| {
            if i == j {
                self.seq[i].clone()
            } else if k == 2 {
                BigInt::from(2)
            } else if (i + 1) % k == j || (j + 1) % k == i {
                BigInt::from(1)
            } else {
                BigInt::zero()
            }
        })
    }

    pub fn s_total(&self) -> BigInt {
        self.seq.iter().map(|s| s + 2).sum()
    }

    pub fn r_nonneg(&self) -> usize {
        self.seq.iter().filter(|s| !s.is_negative()).count()
    }

    pub fn descriptors(&self) -> Descriptors {
        Descriptors {
            r: self.len(),
            s_total: self.s_total(),
            r_nonneg: self.r_nonneg(),
        }
    }
}

impl fmt::Debug for SphereCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SphereCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.seq.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

/// A torus or a cycle of spheres.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Divisor {
    Torus { s: BigInt },
    Cycle(SphereCycle),
}

/// `r(D)`, `s(D)`, and the number of non-negative components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Descriptors {
    pub r: usize,
    pub s_total: BigInt,
    pub r_nonneg: usize,
}

impl Divisor {
    pub fn torus(s: impl Into<BigInt>) -> Self {
        Divisor::Torus { s: s.into() }
    }

    pub fn cycle(seq: &[i64]) -> Result<Self, DivisorError> {
        SphereCycle::from_i64s(seq).map(Divisor::Cycle)
    }

    pub fn len(&self) -> usize {
        match self {
            Divisor::Torus { .. } => 1,
            Divisor::Cycle(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Self-intersections in component order.
    pub fn self_intersections(&self) -> Vec<BigInt> {
        match self {
            Divisor::Torus { s } => vec![s.clone()],
            Divisor::Cycle(c) => c.entries().to_vec(),
        }
    }

    pub fn as_cycle(&self) -> Option<&SphereCycle> {
        match self {
            Divisor::Cycle(c) => Some(c),
            Divisor::Torus { .. } => None,
        }
    }

    pub fn intersection_matrix(&self) -> IntMatrix {
        match self {
            Divisor::Torus { s } => IntMatrix::from_rows(vec![vec![s.clone()]]).expect("1x1"),
            Divisor::Cycle(c) => c.intersection_matrix(),
        }
    }

    pub fn descriptors(&self) -> Descriptors {
        match self {
            Divisor::Torus { s } => Descriptors {
                r: 1,
                s_total: s.clone(),
                r_nonneg: usize::from(!s.is_negative()),
            },
            Divisor::Cycle(c) => c.descriptors(),
        }
    }

    /// Canonical representative; tori are already canonical.
    pub fn canonical_form(&self) -> Divisor {
        match self {
            Divisor::Torus { .. } => self.clone(),
            Divisor::Cycle(c) => Divisor::Cycle(c.canonical_form()),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Divisor::Torus { s } => json!({"kind": "torus", "s": json::int_to_value(s)}),
            Divisor::Cycle(c) => json!({"kind": "cycle", "s": json::ints_to_value(c.entries())}),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self, DivisorError> {
        let kind = json::field(v, "kind")?;
        let s = json::field(v, "s")?;
        match kind.as_str() {
            Some("torus") => Ok(Divisor::Torus {
                s: json::value_to_int(s)?,
            }),
            Some("cycle") => Ok(Divisor::Cycle(SphereCycle::new(json::value_to_ints(s)?)?)),
            _ => Err(JsonError::Invalid(format!("unknown divisor kind {kind}")).into()),
        }
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Divisor::Torus { s } => write!(f, "torus({s})"),
            Divisor::Cycle(c) => write!(f, "{c}"),
        }
    }
}

impl From<SphereCycle> for Divisor {
    fn from(c: SphereCycle) -> Self {
        Divisor::Cycle(c)
    }
}

impl Serialize for Divisor {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Divisor {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(deserializer)?;
        Divisor::from_json(&v).map_err(serde::de::Error::custom)
    }
}
