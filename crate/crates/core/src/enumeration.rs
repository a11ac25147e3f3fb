//! Minimal log Calabi-Yau pairs and the anti-canonical sequences obtained
//! from them by toric and non-toric blow-ups.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::classifier::{self, ContactType};
use crate::divisor::{Divisor, SphereCycle};
use crate::homology::{self, AmbientBasis, HClass, LogCYPair};
use crate::json;
use crate::linalg::Inertia;
use crate::moves::{self, Move};

/// Minimal-model families. Tori: `A` (elliptic ruled, `s = 0`), `B1`
/// (`s = 9`), `C1` (`s = 8`). Cycles in `CP^2`, `S^2 x S^2` and
/// `CP^2 # -CP^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    A,
    B1,
    B2,
    B3,
    C1,
    C2,
    C3,
    C4,
    D2a,
    D2b,
    D3,
    D4,
}

impl CaseTag {
    pub const ALL: [CaseTag; 12] = [
        CaseTag::A,
        CaseTag::B1,
        CaseTag::B2,
        CaseTag::B3,
        CaseTag::C1,
        CaseTag::C2,
        CaseTag::C3,
        CaseTag::C4,
        CaseTag::D2a,
        CaseTag::D2b,
        CaseTag::D3,
        CaseTag::D4,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::A => "A",
            CaseTag::B1 => "B1",
            CaseTag::B2 => "B2",
            CaseTag::B3 => "B3",
            CaseTag::C1 => "C1",
            CaseTag::C2 => "C2",
            CaseTag::C3 => "C3",
            CaseTag::C4 => "C4",
            CaseTag::D2a => "D2a",
            CaseTag::D2b => "D2b",
            CaseTag::D3 => "D3",
            CaseTag::D4 => "D4",
        }
    }

    pub fn is_parametric(&self) -> bool {
        matches!(
            self,
            CaseTag::C2 | CaseTag::C3 | CaseTag::C4 | CaseTag::D2a | CaseTag::D3 | CaseTag::D4
        )
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CaseTag::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown case `{s}`"))
    }
}

/// A catalog entry: case and parameter (`b` for C-cases, `a` for D-cases).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinimalModelSpec {
    pub case: CaseTag,
    pub param: Option<i64>,
}

/// A minimal model. Case `A` has a torus in an elliptic ruled surface,
/// whose homology is not modelled, so `pair` is `None` there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalModel {
    pub spec: MinimalModelSpec,
    pub divisor: Divisor,
    pub pair: Option<LogCYPair>,
}

fn class(c: &[i64]) -> HClass {
    HClass::from_i64s(c)
}

impl MinimalModelSpec {
    pub fn new(case: CaseTag, param: Option<i64>) -> Self {
        MinimalModelSpec { case, param }
    }

    pub fn instantiate(&self) -> MinimalModel {
        let p = self.param.unwrap_or(0);
        let rational = AmbientBasis::Rational { n: 0 };
        let ruled = AmbientBasis::Ruled { n: 0 };
        let one_point = AmbientBasis::Rational { n: 1 };
        // (f1, f2) for S^2 x S^2
        let bf1_f2 = |b: i64| class(&[b, 1]);
        let f1 = class(&[1, 0]);
        // CP^2 # -CP^2 in the basis (h, e): f = h - e, s = h
        let af_s = |a: i64| class(&[a + 1, -a]);
        let f = class(&[1, -1]);
        let (basis, classes, c1) = match self.case {
            CaseTag::A => {
                return MinimalModel {
                    spec: *self,
                    divisor: Divisor::torus(0),
                    pair: None,
                }
            }
            CaseTag::B1 => (rational, vec![class(&[3])], class(&[3])),
            CaseTag::B2 => (rational, vec![class(&[1]), class(&[2])], class(&[3])),
            CaseTag::B3 => (rational, vec![class(&[1]); 3], class(&[3])),
            CaseTag::C1 => (ruled, vec![class(&[2, 2])], class(&[2, 2])),
            CaseTag::C2 => (ruled, vec![bf1_f2(p), bf1_f2(2 - p)], class(&[2, 2])),
            CaseTag::C3 => (ruled, vec![bf1_f2(p), f1, bf1_f2(1 - p)], class(&[2, 2])),
            CaseTag::C4 => (ruled, vec![bf1_f2(p), f1.clone(), bf1_f2(-p), f1], class(&[2, 2])),
            CaseTag::D2a => (one_point, vec![af_s(p), af_s(1 - p)], class(&[3, -1])),
            CaseTag::D2b => (one_point, vec![class(&[2, 0]), f], class(&[3, -1])),
            CaseTag::D3 => (one_point, vec![af_s(p), f, af_s(-p)], class(&[3, -1])),
            CaseTag::D4 => (one_point, vec![af_s(p), f.clone(), af_s(-p - 1), f], class(&[3, -1])),
        };
        let squares: Vec<BigInt> = classes.iter().map(|c| basis.pair(c, c)).collect();
        let divisor = if classes.len() == 1 {
            Divisor::Torus { s: squares[0].clone() }
        } else {
            Divisor::Cycle(SphereCycle::new(squares).expect("catalog cycles have length >= 2"))
        };
        MinimalModel {
            spec: *self,
            divisor: divisor.clone(),
            pair: Some(LogCYPair {
                divisor,
                basis,
                classes,
                c1,
            }),
        }
    }
}

/// Catalog specs in case order, parametric cases once per parameter.
pub fn catalog_specs(params: std::ops::RangeInclusive<i64>) -> Vec<MinimalModelSpec> {
    CaseTag::ALL
        .into_iter()
        .flat_map(|case| {
            if case.is_parametric() {
                params.clone().map(|p| MinimalModelSpec::new(case, Some(p))).collect::<Vec<_>>()
            } else {
                vec![MinimalModelSpec::new(case, None)]
            }
        })
        .collect()
}

pub fn catalog(params: std::ops::RangeInclusive<i64>) -> Vec<MinimalModel> {
    catalog_specs(params).iter().map(MinimalModelSpec::instantiate).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumBounds {
    pub max_length: usize,
    pub min_entry: BigInt,
    pub max_moves: usize,
    pub params: std::ops::RangeInclusive<i64>,
}

impl EnumBounds {
    pub fn new(max_length: usize, min_entry: i64, max_moves: usize, params: std::ops::RangeInclusive<i64>) -> Self {
        EnumBounds {
            max_length,
            min_entry: BigInt::from(min_entry),
            max_moves,
            params,
        }
    }

    fn admits(&self, d: &Divisor) -> bool {
        d.len() <= self.max_length && d.self_intersections().iter().all(|s| *s >= self.min_entry)
    }
}

/// One anti-canonical divisor with its provenance and invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumRecord {
    /// Canonical form of the divisor.
    pub divisor: Divisor,
    pub spec: MinimalModelSpec,
    /// Moves applied to the minimal model's divisor as stored in the catalog.
    pub moves: Vec<Move>,
    pub inertia: Inertia,
    pub det: BigInt,
    pub trace: Option<BigInt>,
    pub s_total: BigInt,
    pub contact: ContactType,
    pub has_homology: bool,
}

impl EnumRecord {
    pub fn to_json(&self) -> Value {
        let seq = match &self.divisor {
            Divisor::Torus { s } => json!({"torus": json::int_to_value(s)}),
            Divisor::Cycle(c) => json::ints_to_value(c.entries()),
        };
        json!({
            "seq": seq,
            "case": self.spec.case.as_str(),
            "param": self.spec.param,
            "moves": self.moves.iter().map(|m| json!({"op": m.op_name(), "index": m.index()})).collect::<Vec<_>>(),
            "inertia": self.inertia.as_array(),
            "det": json::int_to_value(&self.det),
            "trace": self.trace.as_ref().map_or(Value::Null, json::int_to_value),
            "s_total": json::int_to_value(&self.s_total),
            "contact": self.contact.as_str(),
            "homology": self.has_homology,
        })
    }

    /// Replays the provenance from the catalog and returns the canonical
    /// divisor it reaches.
    pub fn replay(&self) -> Result<Divisor, moves::MoveError> {
        let word = moves::MoveWord {
            start: self.spec.instantiate().divisor,
            moves: self.moves.clone(),
        };
        Ok(word.replay()?.canonical_form())
    }

    fn sort_key(&self) -> (usize, Vec<BigInt>) {
        (self.divisor.len(), self.divisor.self_intersections())
    }
}

/// `(5 + l, -l)` with `l >= 2` never occurs.
pub fn is_forbidden_pair_shape(d: &Divisor) -> bool {
    let Some(c) = d.as_cycle() else { return false };
    if c.len() != 2 {
        return false;
    }
    let s = c.entries();
    let shape = |x: &BigInt, y: &BigInt| *y <= BigInt::from(-2) && x + y == BigInt::from(5);
    shape(&s[0], &s[1]) || shape(&s[1], &s[0])
}

/// Why a generated pair was not emitted. None of these should ever fire;
/// they are counted as a soundness check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FilterReason {
    InvalidPair,
    ConstraintViolation,
    STotalAboveNine,
    ForbiddenPairShape,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EnumStats {
    pub seeds: usize,
    pub emitted: usize,
    pub filtered: BTreeMap<FilterReason, usize>,
    pub deepest_layer: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub records: Vec<EnumRecord>,
    pub stats: EnumStats,
}

impl Enumeration {
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> io::Result<()> {
        for r in &self.records {
            serde_json::to_writer(&mut out, &r.to_json())?;
            out.write_all(b"\n")?;
        }
        out.flush()
    }
}

#[derive(Debug, Clone)]
struct Node {
    seed: usize,
    moves: Vec<Move>,
    divisor: Divisor,
    canonical: Divisor,
    pair: Option<LogCYPair>,
}

impl Node {
    fn key(&self) -> (usize, &[Move]) {
        (self.seed, &self.moves)
    }
}

/// Extra pruning for targeted queries: moves never shorten a divisor, never
/// raise an entry and always lower `s(D)` by one.
#[derive(Debug, Clone)]
struct Target {
    divisor: Divisor,
    len: usize,
    min_entry: BigInt,
    s_total: BigInt,
}

impl Target {
    fn new(d: &Divisor) -> Self {
        let entries = d.self_intersections();
        Target {
            divisor: d.canonical_form(),
            len: d.len(),
            min_entry: entries.iter().min().cloned().unwrap_or_default(),
            s_total: d.descriptors().s_total,
        }
    }

    fn can_reach(&self, d: &Divisor) -> bool {
        let same_kind = matches!(
            (d, &self.divisor),
            (Divisor::Torus { .. }, Divisor::Torus { .. }) | (Divisor::Cycle(_), Divisor::Cycle(_))
        );
        same_kind
            && d.len() <= self.len
            && d.descriptors().s_total >= self.s_total
            && d.self_intersections().iter().all(|s| *s >= self.min_entry)
    }
}

fn children(node: &Node, bounds: &EnumBounds, target: Option<&Target>) -> Vec<Node> {
    let k = node.divisor.len();
    let mut candidates: Vec<Move> = (0..k).map(|component| Move::NonToricBlowUp { component }).collect();
    if let Divisor::Cycle(_) = node.divisor {
        // both nodes of a length-2 cycle give the same sequence
        let edges = if k == 2 { 1 } else { k };
        candidates.extend((0..edges).map(|edge| Move::ToricBlowUp { edge }));
    }
    candidates
        .into_iter()
        .filter_map(|m| {
            let divisor = moves::apply_move(&node.divisor, &m).ok()?;
            if !bounds.admits(&divisor) || target.is_some_and(|t| !t.can_reach(&divisor)) {
                return None;
            }
            let pair = match &node.pair {
                Some(p) => Some(homology::transport(p, &m).ok()?),
                None => None,
            };
            let mut word = node.moves.clone();
            word.push(m);
            Some(Node {
                seed: node.seed,
                moves: word,
                canonical: divisor.canonical_form(),
                divisor,
                pair,
            })
        })
        .collect()
}

fn evaluate(node: &Node, specs: &[MinimalModelSpec]) -> Result<EnumRecord, FilterReason> {
    if let Some(p) = &node.pair {
        if !homology::validate_pair(p).is_valid() {
            return Err(FilterReason::InvalidPair);
        }
        if !homology::check_constraints(p).is_clean() {
            return Err(FilterReason::ConstraintViolation);
        }
    }
    let s_total = node.divisor.descriptors().s_total;
    if s_total > BigInt::from(9) {
        return Err(FilterReason::STotalAboveNine);
    }
    if is_forbidden_pair_shape(&node.divisor) {
        return Err(FilterReason::ForbiddenPairShape);
    }
    let c = classifier::classify(&node.divisor);
    Ok(EnumRecord {
        divisor: node.canonical.clone(),
        spec: specs[node.seed],
        moves: node.moves.clone(),
        inertia: c.inertia,
        det: c.det,
        trace: c.trace,
        s_total,
        contact: c.contact,
        has_homology: node.pair.is_some(),
    })
}

struct Closure<'a> {
    bounds: &'a EnumBounds,
    workers: usize,
    target: Option<Target>,
}

impl Closure<'_> {
    fn run(&self) -> Enumeration {
        let specs = catalog_specs(self.bounds.params.clone());
        let mut stats = EnumStats {
            seeds: specs.len(),
            ..EnumStats::default()
        };
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers.max(1))
            .build()
            .expect("thread pool");

        let mut seen: HashSet<Divisor> = HashSet::new();
        let mut layer: BTreeMap<Divisor, Node> = BTreeMap::new();
        for (seed, spec) in specs.iter().enumerate() {
            let m = spec.instantiate();
            let canonical = m.divisor.canonical_form();
            if !self.bounds.admits(&m.divisor) || self.target.as_ref().is_some_and(|t| !t.can_reach(&m.divisor)) {
                continue;
            }
            layer.entry(canonical.clone()).or_insert(Node {
                seed,
                moves: Vec::new(),
                divisor: m.divisor,
                canonical,
                pair: m.pair,
            });
        }

        let mut records = Vec::new();
        let mut depth = 0;
        loop {
            seen.extend(layer.keys().cloned());
            let nodes: Vec<Node> = layer.into_values().collect();
            let evaluated: Vec<Result<EnumRecord, FilterReason>> =
                pool.install(|| nodes.par_iter().map(|n| evaluate(n, &specs)).collect());
            let mut survivors = Vec::with_capacity(nodes.len());
            for (node, outcome) in nodes.into_iter().zip(evaluated) {
                match outcome {
                    Ok(record) => {
                        let hit = self.target.as_ref().is_some_and(|t| t.divisor == record.divisor);
                        records.push(record);
                        if hit {
                            stats.emitted = records.len();
                            stats.deepest_layer = depth;
                            return Enumeration { records, stats };
                        }
                        survivors.push(node);
                    }
                    Err(reason) => *stats.filtered.entry(reason).or_default() += 1,
                }
            }
            stats.deepest_layer = depth;
            if depth == self.bounds.max_moves || survivors.is_empty() {
                break;
            }
            let target = self.target.as_ref();
            let bounds = self.bounds;
            let generated: Vec<Vec<Node>> =
                pool.install(|| survivors.par_iter().map(|n| children(n, bounds, target)).collect());
            drop(survivors);
            let mut next: BTreeMap<Divisor, Node> = BTreeMap::new();
            for child in generated.into_iter().flatten() {
                if seen.contains(&child.canonical) {
                    continue;
                }
                match next.get(&child.canonical) {
                    Some(existing) if existing.key() <= child.key() => {}
                    _ => {
                        next.insert(child.canonical.clone(), child);
                    }
                }
            }
            layer = next;
            depth += 1;
        }
        records.sort_by_key(EnumRecord::sort_key);
        stats.emitted = records.len();
        Enumeration { records, stats }
    }
}

/// Closure of the catalog under toric and non-toric blow-ups within
/// `bounds`, deduplicated by dihedral canonical form and sorted by
/// (length, sequence). The output does not depend on `workers`.
pub fn enumerate_anticanonical(bounds: &EnumBounds, workers: usize) -> Enumeration {
    Closure {
        bounds,
        workers,
        target: None,
    }
    .run()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Witness(Box<EnumRecord>),
    /// Not reached inside the bounds; this is not a disproof. `note`
    /// records any obstruction that rules the divisor out entirely.
    UnknownWithinBounds { note: Option<String> },
}

/// Whether `d` is reached from the catalog within `bounds`. The search
/// stops as soon as `d` appears.
pub fn is_anticanonical(d: &Divisor, bounds: &EnumBounds, workers: usize) -> Membership {
    let s_total = d.descriptors().s_total;
    if s_total > BigInt::from(9) {
        return Membership::UnknownWithinBounds {
            note: Some(format!(
                "s(D) = {s_total} > 9, and every anti-canonical divisor has s(D) <= 9"
            )),
        };
    }
    if is_forbidden_pair_shape(d) {
        return Membership::UnknownWithinBounds {
            note: Some("sequences (5+l, -l) with l >= 2 are never anti-canonical".to_string()),
        };
    }
    if !bounds.admits(d) {
        return Membership::UnknownWithinBounds {
            note: Some("divisor lies outside the length or entry bounds".to_string()),
        };
    }
    let target = Target::new(d);
    let result = Closure {
        bounds,
        workers,
        target: Some(target.clone()),
    }
    .run();
    match result.records.into_iter().find(|r| r.divisor == target.divisor) {
        Some(r) => Membership::Witness(Box::new(r)),
        None => Membership::UnknownWithinBounds { note: None },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(d: &Divisor) -> Vec<i64> {
        d.self_intersections().iter().map(|s| i64::try_from(s).unwrap()).collect()
    }

    fn model(case: CaseTag, param: Option<i64>) -> MinimalModel {
        MinimalModelSpec::new(case, param).instantiate()
    }

    #[test]
    fn catalog_sequences() {
        assert_eq!(seq(&model(CaseTag::C4, Some(0)).divisor), [0, 0, 0, 0]);
        assert_eq!(seq(&model(CaseTag::D3, Some(0)).divisor), [1, 0, 1]);
        assert_eq!(seq(&model(CaseTag::D2b, None).divisor), [4, 0]);
        assert_eq!(seq(&model(CaseTag::B2, None).divisor), [1, 4]);
        assert_eq!(seq(&model(CaseTag::B3, None).divisor), [1, 1, 1]);
        assert_eq!(model(CaseTag::B1, None).divisor, Divisor::torus(9));
        assert_eq!(model(CaseTag::C1, None).divisor, Divisor::torus(8));
        assert_eq!(model(CaseTag::A, None).divisor, Divisor::torus(0));
        for b in -3..=3 {
            assert_eq!(seq(&model(CaseTag::C2, Some(b)).divisor), [2 * b, 4 - 2 * b]);
            assert_eq!(seq(&model(CaseTag::C3, Some(b)).divisor), [2 * b, 0, 2 - 2 * b]);
            assert_eq!(seq(&model(CaseTag::C4, Some(b)).divisor), [2 * b, 0, -2 * b, 0]);
            assert_eq!(seq(&model(CaseTag::D2a, Some(b)).divisor), [2 * b + 1, 3 - 2 * b]);
            assert_eq!(seq(&model(CaseTag::D3, Some(b)).divisor), [2 * b + 1, 0, 1 - 2 * b]);
            assert_eq!(seq(&model(CaseTag::D4, Some(b)).divisor), [2 * b + 1, 0, -2 * b - 1, 0]);
        }
    }

    #[test]
    fn catalog_pairs_are_valid() {
        for m in catalog(-3..=3) {
            if let Some(p) = &m.pair {
                let report = homology::validate_pair(p);
                assert!(report.is_valid(), "{:?}: {:?}", m.spec, report);
            }
        }
    }

    #[test]
    fn small_enumeration_example() {
        let e = enumerate_anticanonical(&EnumBounds::new(3, -2, 2, -3..=3), 1);
        let has = |s: &[i64]| {
            let c = Divisor::Cycle(SphereCycle::from_i64s(s).unwrap().canonical_form());
            e.records.iter().any(|r| r.divisor == c)
        };
        assert!(has(&[1, 1, 0]));
        assert!(has(&[0, 0, 2]));
        assert!(!has(&[7, -1]));
        assert!(e.stats.filtered.is_empty(), "{:?}", e.stats);
    }

    #[test]
    fn membership_examples() {
        let bounds = EnumBounds::new(4, -6, 6, -2..=2);
        let d = Divisor::cycle(&[0, 0, 0, -5]).unwrap();
        let Membership::Witness(r) = is_anticanonical(&d, &bounds, 1) else {
            panic!("expected a witness");
        };
        assert_eq!(r.replay().unwrap(), d.canonical_form());

        let Membership::Witness(r) = is_anticanonical(&Divisor::torus(7), &bounds, 1) else {
            panic!("expected a witness");
        };
        assert_eq!(r.divisor, Divisor::torus(7));

        let d = Divisor::cycle(&[10, 10]).unwrap();
        assert!(matches!(
            is_anticanonical(&d, &bounds, 1),
            Membership::UnknownWithinBounds { note: Some(_) }
        ));
    }

    #[test]
    fn forbidden_shape() {
        assert!(is_forbidden_pair_shape(&Divisor::cycle(&[7, -2]).unwrap()));
        assert!(is_forbidden_pair_shape(&Divisor::cycle(&[-3, 8]).unwrap()));
        assert!(!is_forbidden_pair_shape(&Divisor::cycle(&[6, -1]).unwrap()));
    }
}
