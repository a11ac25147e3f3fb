//! Ambient homology for log Calabi-Yau pairs.
//!
//! A pair stores one class per divisor component, written in a fixed basis
//! of `H_2(X)`: either `(h, e_1, ..., e_n)` with form `diag(1, -1, ..., -1)`
//! or `(f_1, f_2, e_1, ..., e_n)` with form `[[0,1],[1,0]] + diag(-1, ...)`.
//! Every blow-up appends a new exceptional class `e` at the end.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::divisor::{Divisor, DivisorError, SphereCycle};
use crate::json::{self, JsonError};
use crate::linalg::{self, IntMatrix};
use crate::moves::{self, Move, MoveError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error("move {mv} cannot be transported: {reason}")]
    InapplicableMove { mv: Move, reason: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("malformed pair JSON: {0}")]
    Json(#[from] JsonError),
    #[error(transparent)]
    Divisor(#[from] DivisorError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AmbientBasis {
    /// `CP^2 # n (-CP^2)`, basis `(h, e_1..e_n)`.
    Rational { n: usize },
    /// `S^2 x S^2 # n (-CP^2)`, basis `(f_1, f_2, e_1..e_n)`.
    Ruled { n: usize },
}

impl AmbientBasis {
    pub fn dim(&self) -> usize {
        match *self {
            AmbientBasis::Rational { n } => n + 1,
            AmbientBasis::Ruled { n } => n + 2,
        }
    }

    pub fn exceptional_count(&self) -> usize {
        match *self {
            AmbientBasis::Rational { n } | AmbientBasis::Ruled { n } => n,
        }
    }

    /// Coordinate index of the first exceptional class.
    pub fn exceptional_offset(&self) -> usize {
        self.dim() - self.exceptional_count()
    }

    pub fn with_exceptional_count(&self, n: usize) -> AmbientBasis {
        match self {
            AmbientBasis::Rational { .. } => AmbientBasis::Rational { n },
            AmbientBasis::Ruled { .. } => AmbientBasis::Ruled { n },
        }
    }

    pub fn pairing_matrix(&self) -> IntMatrix {
        let d = self.dim();
        IntMatrix::from_fn(d, d, |i, j| BigInt::from(self.pairing_entry(i, j)))
    }

    fn pairing_entry(&self, i: usize, j: usize) -> i64 {
        match self {
            AmbientBasis::Rational { .. } => match (i, j) {
                (0, 0) => 1,
                (i, j) if i == j => -1,
                _ => 0,
            },
            AmbientBasis::Ruled { .. } => match (i, j) {
                (0, 1) | (1, 0) => 1,
                (i, j) if i == j && i >= 2 => -1,
                _ => 0,
            },
        }
    }

    pub fn pair(&self, a: &HClass, b: &HClass) -> BigInt {
        let (x, y) = (a.coeffs(), b.coeffs());
        match self {
            AmbientBasis::Rational { .. } => {
                let tail: BigInt = x[1..].iter().zip(&y[1..]).map(|(p, q)| p * q).sum();
                &x[0] * &y[0] - tail
            }
            AmbientBasis::Ruled { .. } => {
                let tail: BigInt = x[2..].iter().zip(&y[2..]).map(|(p, q)| p * q).sum();
                &x[0] * &y[1] + &x[1] * &y[0] - tail
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match *self {
            AmbientBasis::Rational { n } => json!({"kind": "rational", "n": n}),
            AmbientBasis::Ruled { n } => json!({"kind": "ruled", "n": n}),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self, JsonError> {
        let n = json::value_to_usize(json::field(v, "n")?)?;
        match json::field(v, "kind")?.as_str() {
            Some("rational") => Ok(AmbientBasis::Rational { n }),
            Some("ruled") => Ok(AmbientBasis::Ruled { n }),
            _ => Err(JsonError::Invalid("basis kind must be \"rational\" or \"ruled\"".into())),
        }
    }
}

/// A homology class as a coefficient vector over an [`AmbientBasis`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HClass(Vec<BigInt>);

impl HClass {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        HClass(coeffs)
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        HClass(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        HClass(vec![BigInt::zero(); dim])
    }

    pub fn basis_vector(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = BigInt::from(1);
        v
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &HClass) -> HClass {
        HClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &HClass) -> HClass {
        HClass(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: i64) -> HClass {
        HClass(self.0.iter().map(|a| a * c).collect())
    }

    /// Appends a zero coordinate for a new exceptional class.
    fn extended(&self) -> HClass {
        let mut v = self.0.clone();
        v.push(BigInt::zero());
        HClass(v)
    }

    fn without(&self, idx: usize) -> HClass {
        let mut v = self.0.clone();
        v.remove(idx);
        HClass(v)
    }
}

impl fmt::Debug for HClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter().map(ToString::to_string)).finish()
    }
}

/// A divisor together with its ambient homology data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogCYPair {
    pub divisor: Divisor,
    pub basis: AmbientBasis,
    pub classes: Vec<HClass>,
    pub c1: HClass,
}

impl LogCYPair {
    pub fn sum_of_classes(&self) -> HClass {
        self.classes
            .iter()
            .fold(HClass::zero(self.basis.dim()), |acc, c| acc.add(c))
    }

    /// `[D] . [D]` computed from the stored classes.
    pub fn divisor_class_square(&self) -> BigInt {
        let d = self.sum_of_classes();
        self.basis.pair(&d, &d)
    }

    /// Matrix of pairings between component classes.
    pub fn class_gram_matrix(&self) -> IntMatrix {
        let k = self.classes.len();
        IntMatrix::from_fn(k, k, |i, j| self.basis.pair(&self.classes[i], &self.classes[j]))
    }

    /// Component classes as the rows of an integer matrix.
    pub fn class_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.classes.iter().map(|c| c.coeffs().to_vec()).collect())
            .unwrap_or_else(|_| IntMatrix::zeros(0, self.basis.dim()))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "divisor": self.divisor.to_json(),
            "basis": self.basis.to_json(),
            "classes": self.classes.iter().map(|c| json::ints_to_value(c.coeffs())).collect::<Vec<_>>(),
            "c1": json::ints_to_value(self.c1.coeffs()),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, HomologyError> {
        let divisor = Divisor::from_json(json::field(v, "divisor")?)?;
        let basis = AmbientBasis::from_json(json::field(v, "basis")?)?;
        let classes = match json::field(v, "classes")? {
            Value::Array(items) => items
                .iter()
                .map(|c| json::value_to_ints(c).map(HClass::new))
                .collect::<Result<Vec<_>, _>>()?,
            other => {
                return Err(JsonError::Type {
                    expected: "array of classes",
                    found: other.to_string(),
                }
                .into())
            }
        };
        let c1 = HClass::new(json::value_to_ints(json::field(v, "c1")?)?);
        Ok(LogCYPair {
            divisor,
            basis,
            classes,
            c1,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: &'static str,
    pub detail: String,
}

/// Violated pair invariants, in a fixed order; empty when the pair is valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, rule: &str) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    fn push(&mut self, rule: &'static str, detail: String) {
        self.violations.push(Violation { rule, detail });
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.violations
                .iter()
                .map(|v| json!({"rule": v.rule, "detail": v.detail}))
                .collect(),
        )
    }
}

/// Expected pairing between distinct components `i` and `j`.
fn expected_off_diagonal(k: usize, i: usize, j: usize) -> i64 {
    if k == 2 {
        2
    } else if (i + 1) % k == j || (j + 1) % k == i {
        1
    } else {
        0
    }
}

pub fn validate_pair(p: &LogCYPair) -> ValidationReport {
    let mut report = ValidationReport::default();
    let dim = p.basis.dim();
    let k = p.divisor.len();
    if p.classes.len() != k {
        report.push(
            "class_count",
            format!("{} classes for {} components", p.classes.len(), k),
        );
        return report;
    }
    let bad_dims: Vec<usize> = p
        .classes
        .iter()
        .enumerate()
        .filter(|(_, c)| c.dim() != dim)
        .map(|(i, _)| i)
        .collect();
    if !bad_dims.is_empty() || p.c1.dim() != dim {
        report.push(
            "class_dimension",
            format!("basis has dimension {dim}; mismatched classes {bad_dims:?}, c1 length {}", p.c1.dim()),
        );
        return report;
    }

    if p.sum_of_classes() != p.c1 {
        report.push("sum_equals_c1", "sum of component classes != c1".to_string());
    }
    let s = p.divisor.self_intersections();
    for (i, c) in p.classes.iter().enumerate() {
        let sq = p.basis.pair(c, c);
        if sq != s[i] {
            report.push(
                "self_intersection",
                format!("[C{}]^2 = {} but s_{} = {}", i + 1, sq, i + 1, s[i]),
            );
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            let got = p.basis.pair(&p.classes[i], &p.classes[j]);
            let want = expected_off_diagonal(k, i, j);
            if got != BigInt::from(want) {
                report.push(
                    "component_pairing",
                    format!("[C{}].[C{}] = {} but the cycle needs {}", i + 1, j + 1, got, want),
                );
            }
        }
    }
    for (i, c) in p.classes.iter().enumerate() {
        let got = p.basis.pair(&p.c1, c);
        let want = match p.divisor {
            Divisor::Torus { .. } => s[i].clone(),
            Divisor::Cycle(_) => &s[i] + 2,
        };
        if got != want {
            report.push(
                "adjunction",
                format!("c1.[C{}] = {} but adjunction needs {}", i + 1, got, want),
            );
        }
    }
    report
}

/// Carries the homology bookkeeping of `p` through one move.
pub fn transport(p: &LogCYPair, m: &Move) -> Result<LogCYPair, HomologyError> {
    let divisor = moves::apply_move(&p.divisor, m)?;
    if p.classes.len() != p.divisor.len() {
        return Err(HomologyError::InvalidInput("class count differs from component count".into()));
    }
    match *m {
        Move::NonToricBlowUp { component } => {
            let basis = p.basis.with_exceptional_count(p.basis.exceptional_count() + 1);
            let e = HClass::basis_vector(basis.dim(), basis.dim() - 1);
            let mut classes: Vec<HClass> = p.classes.iter().map(HClass::extended).collect();
            classes[component] = classes[component].sub(&e);
            let c1 = p.c1.extended().sub(&e);
            Ok(LogCYPair {
                divisor,
                basis,
                classes,
                c1,
            })
        }
        Move::ToricBlowUp { edge } => {
            let k = p.classes.len();
            let basis = p.basis.with_exceptional_count(p.basis.exceptional_count() + 1);
            let e = HClass::basis_vector(basis.dim(), basis.dim() - 1);
            let (left, right) = if k == 2 { (0, 1) } else { (edge, (edge + 1) % k) };
            let mut classes: Vec<HClass> = p.classes.iter().map(HClass::extended).collect();
            classes[left] = classes[left].sub(&e);
            classes[right] = classes[right].sub(&e);
            classes.insert(moves::inserted_index(k, edge), e.clone());
            let c1 = p.c1.extended().sub(&e);
            Ok(LogCYPair {
                divisor,
                basis,
                classes,
                c1,
            })
        }
        Move::ToricBlowDown { component } => {
            let k = p.classes.len();
            let dim = p.basis.dim();
            let offset = p.basis.exceptional_offset();
            let class = &p.classes[component];
            let Some(idx) = (offset..dim).find(|&i| *class == HClass::basis_vector(dim, i)) else {
                return Err(HomologyError::InapplicableMove {
                    mv: *m,
                    reason: "component class is not an exceptional basis class".into(),
                });
            };
            let e = class.clone();
            let mut classes = p.classes.clone();
            classes[(component + k - 1) % k] = classes[(component + k - 1) % k].add(&e);
            classes[(component + 1) % k] = classes[(component + 1) % k].add(&e);
            classes.remove(component);
            let c1 = p.c1.add(&e);
            if classes.iter().chain([&c1]).any(|c| !c.coeffs()[idx].is_zero()) {
                return Err(HomologyError::InapplicableMove {
                    mv: *m,
                    reason: "exceptional class still meets the remaining classes".into(),
                });
            }
            let basis = p.basis.with_exceptional_count(p.basis.exceptional_count() - 1);
            Ok(LogCYPair {
                divisor,
                basis,
                classes: classes.iter().map(|c| c.without(idx)).collect(),
                c1: c1.without(idx),
            })
        }
    }
}

/// `b_2(V) = b_2(X) - r(D) - 1` for the complement `V` of a neighbourhood of
/// a cycle with non-degenerate intersection form in a surface with `b_1 = 0`.
pub fn complement_betti(b2_ambient: i64, r: i64) -> Result<i64, HomologyError> {
    let v = b2_ambient - r - 1;
    if v < 0 || r < 0 {
        return Err(HomologyError::InvalidInput(format!(
            "b2(X) = {b2_ambient} is too small for r(D) = {r}"
        )));
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleStatus {
    Satisfied,
    Violated,
    NotApplicable,
}

impl RuleStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            RuleStatus::Satisfied => "satisfied",
            RuleStatus::Violated => "violated",
            RuleStatus::NotApplicable => "not_applicable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub rule: &'static str,
    pub status: RuleStatus,
    pub detail: String,
}

/// Outcome of the homological constraint rules; advisory, never an error.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstraintReport {
    pub findings: Vec<Finding>,
}

impl ConstraintReport {
    pub fn status(&self, rule: &str) -> Option<RuleStatus> {
        self.findings.iter().find(|f| f.rule == rule).map(|f| f.status)
    }

    pub fn violations(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.status == RuleStatus::Violated)
    }

    pub fn is_clean(&self) -> bool {
        self.violations().next().is_none()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.findings
                .iter()
                .map(|f| json!({"rule": f.rule, "status": f.status.as_str(), "detail": f.detail}))
                .collect(),
        )
    }

    fn push(&mut self, rule: &'static str, status: RuleStatus, detail: impl Into<String>) {
        self.findings.push(Finding {
            rule,
            status,
            detail: detail.into(),
        });
    }

    fn check(&mut self, rule: &'static str, applies: bool, holds: bool, detail: impl Into<String>) {
        let status = match (applies, holds) {
            (false, _) => RuleStatus::NotApplicable,
            (true, true) => RuleStatus::Satisfied,
            (true, false) => RuleStatus::Violated,
        };
        self.push(rule, status, detail);
    }
}

pub const CONSTRAINT_RULES: [&str; 9] = [
    "homologous_at_most_three",
    "three_homologous_only_if_r3",
    "homologous_pair_only_if_r_le_4",
    "adjacent_homologous_shape",
    "disjoint_nonneg_homologous_zero",
    "r_nonneg_at_most_4",
    "r_nonneg_4_shape",
    "adjacent_nonneg_product",
    "case_table",
];

fn adjacent(k: usize, i: usize, j: usize) -> bool {
    i != j && ((i + 1) % k == j || (j + 1) % k == i)
}

/// Evaluates the homologous-component, non-negative-component and case-table
/// rules that hold for any cycle of spheres in a surface with `b^+ = 1`.
pub fn check_constraints(p: &LogCYPair) -> ConstraintReport {
    let mut report = ConstraintReport::default();
    let Divisor::Cycle(cycle) = &p.divisor else {
        for rule in CONSTRAINT_RULES {
            report.push(rule, RuleStatus::NotApplicable, "torus divisor");
        }
        return report;
    };
    let k = cycle.len();
    let s = cycle.entries();
    let classes = &p.classes;
    let same = |i: usize, j: usize| classes.get(i).is_some() && classes.get(i) == classes.get(j);
    let one = BigInt::from(1);

    // multiplicities of repeated classes
    let mut max_mult = 1;
    let mut any_pair = false;
    for i in 0..k {
        let m = (0..k).filter(|&j| same(i, j)).count();
        max_mult = max_mult.max(m);
        any_pair |= m >= 2;
    }
    report.check(
        "homologous_at_most_three",
        true,
        max_mult <= 3,
        format!("largest homologous family has {max_mult} components"),
    );
    report.check(
        "three_homologous_only_if_r3",
        max_mult >= 3,
        k == 3,
        format!("r(D) = {k}"),
    );
    report.check(
        "homologous_pair_only_if_r_le_4",
        any_pair,
        k <= 4,
        format!("r(D) = {k}"),
    );

    let adjacent_equal: Vec<usize> = (0..k).filter(|&i| same(i, (i + 1) % k)).collect();
    let shape_ok = adjacent_equal.iter().all(|&i| {
        let j = (i + 1) % k;
        (k == 3 && s[i] == one && s[j] == one) || (k == 2 && s[i] == BigInt::from(2) && s[j] == BigInt::from(2))
    });
    report.check(
        "adjacent_homologous_shape",
        !adjacent_equal.is_empty(),
        shape_ok,
        format!("adjacent homologous components at {adjacent_equal:?}"),
    );

    let nonneg: Vec<usize> = (0..k).filter(|&i| !s[i].is_negative()).collect();
    let disjoint_pairs: Vec<(usize, usize)> = nonneg
        .iter()
        .flat_map(|&i| nonneg.iter().map(move |&j| (i, j)))
        .filter(|&(i, j)| i < j && !adjacent(k, i, j))
        .collect();
    let disjoint_ok = disjoint_pairs
        .iter()
        .all(|&(i, j)| same(i, j) && s[i].is_zero() && s[j].is_zero());
    report.check(
        "disjoint_nonneg_homologous_zero",
        !disjoint_pairs.is_empty(),
        disjoint_ok,
        format!("disjoint non-negative pairs {disjoint_pairs:?}"),
    );

    let r0 = nonneg.len();
    report.check("r_nonneg_at_most_4", true, r0 <= 4, format!("r>=0(D) = {r0}"));
    report.check(
        "r_nonneg_4_shape",
        r0 == 4,
        k == 4 && s.iter().all(Zero::is_zero) && same(0, 2) && same(1, 3),
        "needs S(D) = (0,0,0,0) with [C1]=[C3], [C2]=[C4]",
    );

    let positive_adjacent: Vec<usize> = if k >= 3 {
        (0..k)
            .filter(|&i| {
                let j = (i + 1) % k;
                !s[i].is_negative() && !s[j].is_negative() && &s[i] * &s[j] >= one
            })
            .collect()
    } else {
        Vec::new()
    };
    let product_ok = positive_adjacent.iter().all(|&i| {
        let j = (i + 1) % k;
        same(i, j) && s[i] == one && s[j] == one && k == 3
    });
    report.check(
        "adjacent_nonneg_product",
        !positive_adjacent.is_empty(),
        product_ok,
        format!("adjacent non-negative pairs with product >= 1 at {positive_adjacent:?}"),
    );

    let b_plus = linalg::inertia(&cycle.intersection_matrix()).ok().map(|i| i.b_plus);
    let verdict = case_table(cycle, Some(classes), b_plus);
    report.push("case_table", verdict.status, verdict.detail);
    report
}

/// Result of matching a cycle against the length-stratified case table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseTableVerdict {
    pub status: RuleStatus,
    pub detail: String,
}

/// The case table for cycles in a surface with `b^+ = 1`, read up to
/// rotation and reflection. When `classes` is given, the homology
/// conditions attached to a clause must hold in the matching alignment too.
/// `b_plus` is `b^+(Q_D)`; the length-2 clause without non-negative
/// components only constrains cycles with `b^+(Q_D) = 1`.
pub fn case_table(cycle: &SphereCycle, classes: Option<&[HClass]>, b_plus: Option<usize>) -> CaseTableVerdict {
    let k = cycle.len();
    let r0 = cycle.r_nonneg();
    let s = cycle.entries();
    let n = |x: i64| BigInt::from(x);

    // index maps for every dihedral alignment
    let alignments: Vec<Vec<usize>> = (0..k)
        .flat_map(|shift| {
            [
                (0..k).map(|i| (i + shift) % k).collect::<Vec<_>>(),
                (0..k).map(|i| (k + shift - i) % k).collect::<Vec<_>>(),
            ]
        })
        .collect();
    let same = |a: &[usize], i: usize, j: usize| match classes {
        Some(c) => c.get(a[i]).is_some() && c.get(a[i]) == c.get(a[j]),
        None => true,
    };
    let any = |pred: &dyn Fn(&[usize], &[BigInt]) -> bool| {
        alignments.iter().any(|a| {
            let v: Vec<BigInt> = a.iter().map(|&i| s[i].clone()).collect();
            pred(a, &v)
        })
    };

    let (clause, holds): (&str, bool) = match (k, r0) {
        (k, r0) if k >= 5 => (
            "r>=5: r>=0 <= 2, and two non-negatives read (s1>=0, 0)",
            r0 <= 2 && (r0 < 2 || any(&|_, v| !v[0].is_negative() && v[1].is_zero())),
        ),
        (4, 4) => (
            "r=4, r>=0=4: (0,0,0,0), [C1]=[C3], [C2]=[C4]",
            any(&|a, v| (0..4).all(|i| v[i].is_zero()) && same(a, 0, 2) && same(a, 1, 3)),
        ),
        (4, 3) => (
            "r=4, r>=0=3: (k>=0,0,l<0,0), l+k<=0, [C2]=[C4]",
            any(&|a, v| {
                !v[0].is_negative()
                    && v[1].is_zero()
                    && v[2].is_negative()
                    && v[3].is_zero()
                    && &v[0] + &v[2] <= n(0)
                    && same(a, 1, 3)
            }),
        ),
        (4, 2) => (
            "r=4, r>=0=2: (0,l1<0,0,l2<0) with [C1]=[C3], or (k>=0,0,l1<0,l2<0) with l1+l2+k<=0",
            any(&|a, v| {
                v[0].is_zero() && v[1].is_negative() && v[2].is_zero() && v[3].is_negative() && same(a, 0, 2)
            }) || any(&|_, v| {
                !v[0].is_negative()
                    && v[1].is_zero()
                    && v[2].is_negative()
                    && v[3].is_negative()
                    && &v[0] + &v[2] + &v[3] <= n(0)
            }),
        ),
        (3, 3) => (
            "r=3, r>=0=3: (1,1,1) all homologous, (1,1,0) with [C1]=[C2], or (k,0,0) with 0<=k<=2",
            any(&|a, v| (0..3).all(|i| v[i] == n(1)) && same(a, 0, 1) && same(a, 1, 2))
                || any(&|a, v| v[0] == n(1) && v[1] == n(1) && v[2].is_zero() && same(a, 0, 1))
                || any(&|_, v| v[0] <= n(2) && v[1].is_zero() && v[2].is_zero()),
        ),
        (3, 2) => (
            "r=3, r>=0=2: (1,1,p<0) with [C1]=[C2], or (k>=0,0,p<0) with p+k<=2",
            any(&|a, v| v[0] == n(1) && v[1] == n(1) && v[2].is_negative() && same(a, 0, 1))
                || any(&|_, v| {
                    !v[0].is_negative() && v[1].is_zero() && v[2].is_negative() && &v[0] + &v[2] <= n(2)
                }),
        ),
        (2, 2) => {
            const ALLOWED: [(i64, i64); 10] =
                [(4, 1), (4, 0), (3, 1), (3, 0), (2, 2), (2, 1), (2, 0), (1, 1), (1, 0), (0, 0)];
            (
                "r=2, r>=0=2: one of (4,1),(4,0),(3,1),(3,0),(2,2),(2,1),(2,0),(1,1),(1,0),(0,0)",
                ALLOWED
                    .iter()
                    .any(|&(x, y)| (s[0] == n(x) && s[1] == n(y)) || (s[0] == n(y) && s[1] == n(x))),
            )
        }
        (2, 1) => ("r=2, r>=0=1: (k>=0, p<0)", true),
        (2, 0) if b_plus == Some(1) => (
            "r=2, r>=0=0, b+=1: one of (-1,-1),(-1,-2),(-1,-3)",
            [(-1, -1), (-1, -2), (-1, -3)]
                .iter()
                .any(|&(x, y)| (s[0] == n(x) && s[1] == n(y)) || (s[0] == n(y) && s[1] == n(x))),
        ),
        _ => {
            return CaseTableVerdict {
                status: RuleStatus::NotApplicable,
                detail: format!("no clause for r = {k}, r>=0 = {r0}"),
            }
        }
    };
    CaseTableVerdict {
        status: if holds { RuleStatus::Satisfied } else { RuleStatus::Violated },
        detail: clause.to_string(),
    }
}
