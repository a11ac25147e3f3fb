//! Contact type of the boundary of a divisor neighbourhood, exactness of the
//! symplectic form there, rigidity patterns and Stein-filling Betti
//! arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::divisor::{Divisor, SphereCycle};
use crate::homology::LogCYPair;
use crate::json;
use crate::linalg::{self, Inertia, IntMatrix, Rational, SolveOutcome};
use crate::monodromy::{self, BundleType};
use crate::moves::{self, MoveWord, SearchBounds};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifierError {
    #[error("area {index} is {value}; areas must be strictly positive")]
    NonPositiveArea { index: usize, value: String },
    #[error("expected {expected} areas, got {got}")]
    AreaCount { expected: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ContactType {
    /// Negative definite: convex neighbourhoods, Kodaira dimension at most 0.
    Convex,
    /// `b^+ = 1`: concave neighbourhoods, Kodaira dimension minus infinity.
    Concave,
    /// `b^+ = 0` but degenerate: no regular neighbourhood with contact boundary.
    NoContactBoundary,
    /// `b^+ >= 2` never occurs for a divisor in a log Calabi-Yau pair.
    InvalidForLogCY,
}

impl ContactType {
    pub fn from_inertia(i: &Inertia) -> Self {
        match (i.b_plus, i.b_zero) {
            (0, 0) => ContactType::Convex,
            (0, _) => ContactType::NoContactBoundary,
            (1, _) => ContactType::Concave,
            _ => ContactType::InvalidForLogCY,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ContactType::Convex => "convex",
            ContactType::Concave => "concave",
            ContactType::NoContactBoundary => "none",
            ContactType::InvalidForLogCY => "invalid",
        }
    }

    /// Kodaira dimension label attached to the branch.
    pub fn kod_label(&self) -> Option<&'static str> {
        match self {
            ContactType::Convex => Some("Kod <= 0"),
            ContactType::Concave => Some("Kod = -infinity"),
            _ => None,
        }
    }

    pub fn note(&self) -> &'static str {
        match self {
            ContactType::Convex => "admits convex neighbourhoods",
            ContactType::Concave => "admits concave neighbourhoods, up to local symplectic deformation",
            ContactType::NoContactBoundary => "no regular neighbourhood has contact boundary",
            ContactType::InvalidForLogCY => "b+ >= 2: not the divisor of a log Calabi-Yau pair",
        }
    }
}

impl fmt::Display for ContactType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub inertia: Inertia,
    pub det: BigInt,
    pub contact: ContactType,
    /// Monodromy trace; `None` for a torus.
    pub trace: Option<BigInt>,
    pub bundle_type: Option<BundleType>,
}

impl Classification {
    pub fn to_json(&self) -> Value {
        json!({
            "inertia": self.inertia.as_array(),
            "det": json::int_to_value(&self.det),
            "trace": self.trace.as_ref().map_or(Value::Null, json::int_to_value),
            "contact": self.contact.as_str(),
            "bundle_type": self.bundle_type.map_or(Value::Null, |b| Value::from(b.as_str())),
            "kod": self.contact.kod_label().map_or(Value::Null, Value::from),
            "note": self.contact.note(),
        })
    }
}

pub fn classify(d: &Divisor) -> Classification {
    let q = d.intersection_matrix();
    let inertia = linalg::inertia(&q).expect("intersection matrices are symmetric");
    let det = linalg::determinant(&q).expect("intersection matrices are square");
    let (trace, bundle_type) = match d {
        Divisor::Cycle(c) => {
            let a = monodromy::monodromy(c);
            (Some(a.trace()), Some(a.bundle_type()))
        }
        Divisor::Torus { .. } => (None, None),
    };
    Classification {
        contact: ContactType::from_inertia(&inertia),
        inertia,
        det,
        trace,
        bundle_type,
    }
}

/// Definiteness read off a toric minimal sequence without linear algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prediction {
    NegativeDefinite,
    /// All entries equal to -2.
    NegativeSemiDefinite,
    /// Some entry is non-negative. `certified_nondegenerate` is set for the
    /// shapes `(s_1 >= 0, <= -2, ...)` and `(0, 0, <= -2, ...)`.
    PositiveBPlus { certified_nondegenerate: bool },
}

impl Prediction {
    pub fn agrees_with(&self, i: &Inertia) -> bool {
        match self {
            Prediction::NegativeDefinite => i.is_negative_definite(),
            Prediction::NegativeSemiDefinite => i.b_plus == 0 && i.b_zero > 0,
            Prediction::PositiveBPlus { certified_nondegenerate } => {
                i.b_plus >= 1 && (!certified_nondegenerate || i.b_zero == 0)
            }
        }
    }
}

/// `None` when the cycle is not toric minimal.
pub fn definiteness_shortcut(d: &SphereCycle) -> Option<Prediction> {
    if !d.is_toric_minimal() {
        return None;
    }
    let s = d.entries();
    let minus_two = BigInt::from(-2);
    let nonneg: Vec<usize> = (0..s.len()).filter(|&i| !s[i].is_negative()).collect();
    if nonneg.is_empty() {
        // toric minimal and no non-negative entry means every entry is <= -2
        return Some(if s.iter().all(|x| *x == minus_two) {
            Prediction::NegativeSemiDefinite
        } else {
            Prediction::NegativeDefinite
        });
    }
    let k = s.len();
    let rest_at_most = |skip: &[usize]| (0..k).filter(|i| !skip.contains(i)).all(|i| s[i] <= minus_two);
    let certified = match nonneg.as_slice() {
        [i] => rest_at_most(&[*i]),
        [i, j] => {
            let adjacent = (i + 1) % k == *j || (j + 1) % k == *i;
            adjacent && s[*i].is_zero() && s[*j].is_zero() && rest_at_most(&[*i, *j])
        }
        _ => false,
    };
    Some(Prediction::PositiveBPlus {
        certified_nondegenerate: certified,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Exactness {
    Exact { witness: Vec<Rational> },
    NotExact,
}

impl Exactness {
    pub fn is_exact(&self) -> bool {
        matches!(self, Exactness::Exact { .. })
    }
}

/// The symplectic form is exact on the boundary iff `Q_D z = a` has a
/// rational solution, where `a` lists the component areas.
pub fn exact_on_boundary(d: &Divisor, areas: &[Rational]) -> Result<Exactness, ClassifierError> {
    if areas.len() != d.len() {
        return Err(ClassifierError::AreaCount {
            expected: d.len(),
            got: areas.len(),
        });
    }
    if let Some((index, a)) = areas.iter().enumerate().find(|(_, a)| !a.is_positive()) {
        return Err(ClassifierError::NonPositiveArea {
            index,
            value: json::rational_to_string(a),
        });
    }
    Ok(exact_unchecked(&d.intersection_matrix(), areas))
}

fn exact_unchecked(q: &IntMatrix, areas: &[Rational]) -> Exactness {
    match linalg::solve(q, areas).expect("area count matches") {
        SolveOutcome::Solution(witness) => Exactness::Exact { witness },
        SolveOutcome::NoSolution => Exactness::NotExact,
    }
}

/// How [`positive_area_exists`] reached its answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AreaMethod {
    /// `Q_D` is invertible, so every area vector works.
    Nondegenerate,
    /// Kernel of dimension one or two: the image of the symmetric `Q_D` is
    /// the orthogonal complement of the kernel, and it contains a positive
    /// vector iff the kernel contains no non-zero non-negative vector.
    KernelCone,
    /// Search over area vectors with entries in `{1, 2, 3}`.
    Grid,
}

/// Whether the span of `kernel` (one or two independent vectors) contains
/// a non-zero vector with no negative entry. `None` for other dimensions.
fn kernel_has_nonnegative_vector(kernel: &[Vec<Rational>]) -> Option<bool> {
    let nonneg = |w: &[Rational]| w.iter().all(|x| !x.is_negative());
    match kernel {
        [v] => {
            let neg: Vec<Rational> = v.iter().map(|x| -x).collect();
            Some(nonneg(v) || nonneg(&neg))
        }
        [u, v] => {
            // The cone {(s, t) : s u + t v >= 0} is non-trivial iff one of its
            // extreme rays is; those lie on the lines s u_i + t v_i = 0.
            let hit = u.iter().zip(v).filter(|(a, b)| !a.is_zero() || !b.is_zero()).any(|(a, b)| {
                [(b.clone(), -a.clone()), (-b.clone(), a.clone())].iter().any(|(s, t)| {
                    let w: Vec<Rational> = u.iter().zip(v).map(|(x, y)| s * x + t * y).collect();
                    nonneg(&w)
                })
            });
            Some(hit)
        }
        _ => None,
    }
}

/// Whether `Q_D z = a` is solvable for some strictly positive `a`.
///
/// Exact when the kernel has dimension at most two. Beyond that only the
/// grid search runs, and a negative grid answer is reported as such.
pub fn positive_area_exists(d: &Divisor) -> (bool, AreaMethod) {
    let q = d.intersection_matrix();
    let k = q.nrows();
    let kernel = linalg::nullspace(&q);
    if kernel.is_empty() {
        return (true, AreaMethod::Nondegenerate);
    }
    if let Some(blocked) = kernel_has_nonnegative_vector(&kernel) {
        return (!blocked, AreaMethod::KernelCone);
    }
    let mut a = vec![1u32; k];
    loop {
        let areas: Vec<Rational> = a.iter().map(|&x| Rational::from_integer(x.into())).collect();
        if exact_unchecked(&q, &areas).is_exact() {
            return (true, AreaMethod::Grid);
        }
        // odometer over {1,2,3}^k
        let mut i = 0;
        while i < k && a[i] == 3 {
            a[i] = 1;
            i += 1;
        }
        if i == k {
            return (false, AreaMethod::Grid);
        }
        a[i] += 1;
    }
}

/// The classes span `I_1`; `I_2` is their orthogonal complement under the
/// ambient form. Returns whether `I_1` and `I_2` together span `H_2`.
pub fn i2_criterion(p: &LogCYPair) -> bool {
    let g = p.basis.pairing_matrix();
    let c = p.class_matrix();
    let dim = p.basis.dim();
    let cg = c.mul(&g).expect("class length equals basis dimension");
    let mut rows: Vec<Vec<Rational>> = c
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(Rational::from_integer).collect())
        .collect();
    rows.extend(linalg::nullspace(&cg));
    linalg::rational_rank(rows) == dim
}

/// Area vector `a_i = c_1 . [C_i]` induced by the first Chern class.
pub fn adjunction_areas(p: &LogCYPair) -> Vec<BigInt> {
    p.classes.iter().map(|c| p.basis.pair(&p.c1, c)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RigidPattern {
    /// `(1, -p_1+1, -p_2, ..., -p_{l-1}, -p_l+1)`, `p_i >= 2`, `l >= 2`.
    ContinuedChain,
    /// `(0, 0, 0, n)`, `n <= 0`.
    ZeroTriple,
    /// `(1, 1, p)`, `p <= 1`.
    OneOne,
    /// `(1, p)`, `p <= 4`.
    OnePair,
    /// `(0, n)`, `n <= 4`.
    ZeroPair,
    /// Every entry at least -1.
    AllAtLeastMinusOne,
    /// `(-1, -2)` or `(-1, -3)`.
    MinusOnePair,
}

impl RigidPattern {
    pub const ALL: [RigidPattern; 7] = [
        RigidPattern::AllAtLeastMinusOne,
        RigidPattern::MinusOnePair,
        RigidPattern::ContinuedChain,
        RigidPattern::ZeroTriple,
        RigidPattern::OneOne,
        RigidPattern::OnePair,
        RigidPattern::ZeroPair,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            RigidPattern::ContinuedChain => "(1,-p1+1,-p2,...,-pl+1), p_i >= 2, l >= 2",
            RigidPattern::ZeroTriple => "(0,0,0,n), n <= 0",
            RigidPattern::OneOne => "(1,1,p), p <= 1",
            RigidPattern::OnePair => "(1,p), p <= 4",
            RigidPattern::ZeroPair => "(0,n), n <= 4",
            RigidPattern::AllAtLeastMinusOne => "s_i >= -1 for each i",
            RigidPattern::MinusOnePair => "(-1,-2) or (-1,-3)",
        }
    }

    fn matches_aligned(&self, s: &[BigInt]) -> bool {
        let n = BigInt::from;
        match self {
            RigidPattern::ContinuedChain => {
                let k = s.len();
                k >= 3
                    && s[0].is_one()
                    && s[1] <= n(-1)
                    && s[k - 1] <= n(-1)
                    && s[2..k - 1].iter().all(|x| *x <= n(-2))
            }
            RigidPattern::ZeroTriple => {
                s.len() == 4 && s[..3].iter().all(Zero::is_zero) && !s[3].is_positive()
            }
            RigidPattern::OneOne => s.len() == 3 && s[0].is_one() && s[1].is_one() && s[2] <= n(1),
            RigidPattern::OnePair => s.len() == 2 && s[0].is_one() && s[1] <= n(4),
            RigidPattern::ZeroPair => s.len() == 2 && s[0].is_zero() && s[1] <= n(4),
            RigidPattern::AllAtLeastMinusOne => s.iter().all(|x| *x >= n(-1)),
            RigidPattern::MinusOnePair => {
                s.len() == 2 && s[0] == n(-1) && (s[1] == n(-2) || s[1] == n(-3))
            }
        }
    }

    /// Matches up to rotation and reflection.
    pub fn matches(&self, c: &SphereCycle) -> bool {
        c.dihedral_images().any(|img| self.matches_aligned(img.entries()))
    }

    pub fn find(c: &SphereCycle) -> Option<RigidPattern> {
        Self::ALL.into_iter().find(|p| p.matches(c))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rigidity {
    Rigid {
        pattern: RigidPattern,
        representative: SphereCycle,
        word: MoveWord,
    },
    /// No listed pattern inside the search bounds; not a proof of non-rigidity.
    Unknown,
}

/// Searches the toric class of `seq` for a representative of a known rigid
/// pattern.
pub fn rigidity_witness(seq: &SphereCycle, bounds: &SearchBounds) -> Rigidity {
    let mut found = None;
    let hit = moves::search_toric_class(seq, bounds, |c| {
        found = RigidPattern::find(c);
        found.is_some()
    });
    match (hit, found) {
        (Some((representative, word)), Some(pattern)) => Rigidity::Rigid {
            pattern,
            representative,
            word,
        },
        _ => Rigidity::Unknown,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileVerdict {
    pub valid: bool,
    /// `b^+` of the closed manifold `U` glued to the cap.
    pub b_plus_closed: i64,
    pub euler: i64,
    pub violations: Vec<String>,
}

/// Betti-number constraints on a Stein filling `U` of the boundary of a
/// concave neighbourhood.
pub fn filling_profile_check(b1: i64, b2_plus: i64, b2_zero: i64, b2_minus: i64) -> ProfileVerdict {
    let mut violations = Vec::new();
    if [b1, b2_plus, b2_zero, b2_minus].iter().any(|&b| b < 0) {
        violations.push("Betti numbers must be non-negative".to_string());
    }
    let b_plus_closed = 1 + b2_plus + b2_zero;
    let euler = 1 - b1 + b2_plus + b2_zero + b2_minus;
    if b2_zero + b1 != 1 {
        violations.push(format!("b2_zero + b1 = {} but must equal 1", b2_zero + b1));
    }
    match b_plus_closed {
        1 => {
            if b1 != 1 {
                violations.push("b+ = 1 branch needs a negative definite filling with b1 = 1".to_string());
            }
        }
        3 => {
            if !matches!((b2_plus, b2_zero, b1), (1, 1, 0) | (2, 0, 1)) {
                violations.push(format!(
                    "(b2_plus, b2_zero, b1) = ({b2_plus}, {b2_zero}, {b1}) is neither (1,1,0) nor (2,0,1)"
                ));
            }
            if !(2..=21).contains(&euler) {
                violations.push(format!("e(U) = {euler} is outside [2, 21]"));
            }
        }
        other => violations.push(format!("b+ of the closed manifold is {other}, not 1 or 3")),
    }
    ProfileVerdict {
        valid: violations.is_empty(),
        b_plus_closed,
        euler,
        violations,
    }
}
