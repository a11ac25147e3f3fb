//! Monodromy of the boundary torus bundle of a cycle of spheres.
//!
//! For a sequence `(s_1, ..., s_k)` the monodromy is
//! `A = M(-s_k) M(-s_{k-1}) ... M(-s_1)` with `M(x) = [[x, 1], [-1, 0]]`.
//! Rotating the sequence conjugates `A`, so trace and bundle type are
//! well defined on cyclic sequences.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::divisor::{Divisor, SphereCycle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonodromyError {
    #[error("determinant of monodromy must be 1, got {0}")]
    NotUnimodular(BigInt),
    #[error("a torus divisor bounds a circle bundle; torus-bundle monodromy is only defined for cycles")]
    TorusDivisor,
}

/// An element of SL(2, Z).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monodromy {
    m11: BigInt,
    m12: BigInt,
    m21: BigInt,
    m22: BigInt,
}

impl Monodromy {
    pub fn new(m11: BigInt, m12: BigInt, m21: BigInt, m22: BigInt) -> Result<Self, MonodromyError> {
        let det = &m11 * &m22 - &m12 * &m21;
        if !det.is_one() {
            return Err(MonodromyError::NotUnimodular(det));
        }
        Ok(Monodromy { m11, m12, m21, m22 })
    }

    pub fn identity() -> Self {
        Monodromy {
            m11: BigInt::one(),
            m12: BigInt::zero(),
            m21: BigInt::zero(),
            m22: BigInt::one(),
        }
    }

    /// Elementary factor `[[x, 1], [-1, 0]]`.
    pub fn elementary(x: BigInt) -> Self {
        Monodromy {
            m11: x,
            m12: BigInt::one(),
            m21: -BigInt::one(),
            m22: BigInt::zero(),
        }
    }

    pub fn entries(&self) -> [[&BigInt; 2]; 2] {
        [[&self.m11, &self.m12], [&self.m21, &self.m22]]
    }

    pub fn trace(&self) -> BigInt {
        &self.m11 + &self.m22
    }

    pub fn determinant(&self) -> BigInt {
        &self.m11 * &self.m22 - &self.m12 * &self.m21
    }

    /// Matrix product `self * rhs`.
    pub fn compose(&self, rhs: &Monodromy) -> Monodromy {
        Monodromy {
            m11: &self.m11 * &rhs.m11 + &self.m12 * &rhs.m21,
            m12: &self.m11 * &rhs.m12 + &self.m12 * &rhs.m22,
            m21: &self.m21 * &rhs.m11 + &self.m22 * &rhs.m21,
            m22: &self.m21 * &rhs.m12 + &self.m22 * &rhs.m22,
        }
    }

    pub fn inverse(&self) -> Monodromy {
        Monodromy {
            m11: self.m22.clone(),
            m12: -&self.m12,
            m21: -&self.m21,
            m22: self.m11.clone(),
        }
    }

    pub fn bundle_type(&self) -> BundleType {
        BundleType::from_trace(&self.trace())
    }
}

impl fmt::Debug for Monodromy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.m11, self.m12, self.m21, self.m22)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BundleType {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl BundleType {
    pub fn from_trace(trace: &BigInt) -> Self {
        let two = BigInt::from(2);
        let abs = trace.abs();
        if abs < two {
            BundleType::Elliptic
        } else if abs == two {
            BundleType::Parabolic
        } else {
            BundleType::Hyperbolic
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            BundleType::Elliptic => "elliptic",
            BundleType::Parabolic => "parabolic",
            BundleType::Hyperbolic => "hyperbolic",
        }
    }
}

pub fn monodromy(d: &SphereCycle) -> Monodromy {
    d.entries().iter().fold(Monodromy::identity(), |acc, s| {
        Monodromy::elementary(-s.clone()).compose(&acc)
    })
}

pub fn monodromy_of(d: &Divisor) -> Result<Monodromy, MonodromyError> {
    match d {
        Divisor::Cycle(c) => Ok(monodromy(c)),
        Divisor::Torus { .. } => Err(MonodromyError::TorusDivisor),
    }
}

/// Trace of the monodromy, plus whether it certifies `det Q_D != 0`.
///
/// The certificate is one-directional: `trace != 2` implies a
/// non-degenerate intersection matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceCertificate {
    pub trace: BigInt,
    pub certifies_nondegenerate: bool,
}

pub fn nondegeneracy_by_trace(d: &SphereCycle) -> TraceCertificate {
    let trace = monodromy(d).trace();
    let certifies_nondegenerate = trace != BigInt::from(2);
    TraceCertificate {
        trace,
        certifies_nondegenerate,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(s: &[i64]) -> SphereCycle {
        SphereCycle::from_i64s(s).unwrap()
    }

    fn m(a: i64, b: i64, c: i64, d: i64) -> Monodromy {
        Monodromy::new(a.into(), b.into(), c.into(), d.into()).unwrap()
    }

    #[test]
    fn minus_two_pair_is_parabolic() {
        assert_eq!(monodromy(&cyc(&[-2, -2])), m(3, 2, -2, -1));
        let cert = nondegeneracy_by_trace(&cyc(&[-2, -2]));
        assert_eq!(cert.trace, BigInt::from(2));
        assert!(!cert.certifies_nondegenerate);
    }

    #[test]
    fn minus_three_pair() {
        assert_eq!(monodromy(&cyc(&[-3, -3])), m(8, 3, -3, -1));
        let cert = nondegeneracy_by_trace(&cyc(&[-3, -3]));
        assert_eq!(cert.trace, BigInt::from(7));
        assert!(cert.certifies_nondegenerate);
    }

    #[test]
    fn toric_move_examples_share_trace_one() {
        // direct products worked by hand: M(0) M(2) M(-3) and M(0) M(1) M(-2)
        let by_hand = Monodromy::elementary(0.into())
            .compose(&Monodromy::elementary(2.into()))
            .compose(&Monodromy::elementary((-3).into()));
        assert_eq!(monodromy(&cyc(&[3, -2, 0])), by_hand);
        assert_eq!(monodromy(&cyc(&[3, -2, 0])).trace(), BigInt::one());
        assert_eq!(monodromy(&cyc(&[2, -1, 0])).trace(), BigInt::one());
    }

    #[test]
    fn zero_square_is_parabolic() {
        assert_eq!(monodromy(&cyc(&[0, 0, 0, 0])), Monodromy::identity());
        assert_eq!(nondegeneracy_by_trace(&cyc(&[0, 0, 0, 0])).trace, BigInt::from(2));
    }

    #[test]
    fn bundle_types() {
        assert_eq!(BundleType::from_trace(&10.into()), BundleType::Hyperbolic);
        assert_eq!(BundleType::from_trace(&(-10).into()), BundleType::Hyperbolic);
        assert_eq!(BundleType::from_trace(&2.into()), BundleType::Parabolic);
        assert_eq!(BundleType::from_trace(&(-2).into()), BundleType::Parabolic);
        assert_eq!(BundleType::from_trace(&1.into()), BundleType::Elliptic);
        assert_eq!(BundleType::from_trace(&0.into()), BundleType::Elliptic);
    }

    #[test]
    fn rejects_non_unimodular_and_tori() {
        assert!(Monodromy::new(2.into(), 0.into(), 0.into(), 1.into()).is_err());
        assert_eq!(monodromy_of(&Divisor::torus(3)), Err(MonodromyError::TorusDivisor));
    }

    #[test]
    fn inverse_composes_to_identity() {
        let a = monodromy(&cyc(&[4, -7, 1, 0, -2]));
        assert_eq!(a.compose(&a.inverse()), Monodromy::identity());
        assert_eq!(a.trace(), a.inverse().trace());
    }
}
