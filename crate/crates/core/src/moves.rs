//! Blow-up rewriting on divisors.
//!
//! Toric moves act on the nodes of a cycle: a toric blow-up at edge `i`
//! (between components `i` and `i+1`, cyclically) inserts a `-1` component
//! there and lowers both neighbours by one; a toric blow-down is the inverse.
//! A non-toric blow-up lowers a single component by one.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::divisor::{Divisor, SphereCycle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("index {index} out of range for a divisor with {len} components")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("component {index} has self-intersection {s}, only -1 components can be blown down")]
    NotBlowDownable { index: usize, s: BigInt },
    #[error("cannot blow down in a cycle of length 2 (it would create a nodal component)")]
    LengthTooShort,
    #[error("toric moves need a cycle of spheres, not a torus")]
    TorusDivisor,
}

/// One rewrite step, recorded positionally against the divisor it acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawMove", into = "RawMove")]
pub enum Move {
    ToricBlowUp { edge: usize },
    ToricBlowDown { component: usize },
    NonToricBlowUp { component: usize },
}

#[derive(Serialize, Deserialize)]
struct RawMove {
    op: String,
    index: usize,
}

impl From<Move> for RawMove {
    fn from(m: Move) -> Self {
        RawMove {
            op: m.op_name().to_string(),
            index: m.index(),
        }
    }
}

impl TryFrom<RawMove> for Move {
    type Error = String;

    fn try_from(raw: RawMove) -> Result<Self, Self::Error> {
        match raw.op.as_str() {
            "toric_up" => Ok(Move::ToricBlowUp { edge: raw.index }),
            "toric_down" => Ok(Move::ToricBlowDown { component: raw.index }),
            "nontoric_up" => Ok(Move::NonToricBlowUp { component: raw.index }),
            other => Err(format!("unknown move op `{other}`")),
        }
    }
}

impl Move {
    pub fn op_name(&self) -> &'static str {
        match self {
            Move::ToricBlowUp { .. } => "toric_up",
            Move::ToricBlowDown { .. } => "toric_down",
            Move::NonToricBlowUp { .. } => "nontoric_up",
        }
    }

    pub fn index(&self) -> usize {
        match *self {
            Move::ToricBlowUp { edge } => edge,
            Move::ToricBlowDown { component } | Move::NonToricBlowUp { component } => component,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.op_name(), self.index())
    }
}

/// Position of the new `-1` component after a toric blow-up at `edge` of a
/// cycle of length `k`. For `k = 2` both nodes give the same sequence
/// `(s1 - 1, -1, s2 - 1)`.
pub fn inserted_index(k: usize, edge: usize) -> usize {
    if k == 2 {
        1
    } else {
        edge + 1
    }
}

pub fn toric_blow_up(d: &SphereCycle, edge: usize) -> Result<SphereCycle, MoveError> {
    let k = d.len();
    if edge >= k {
        return Err(MoveError::IndexOutOfRange { index: edge, len: k });
    }
    let (left, right) = if k == 2 { (0, 1) } else { (edge, (edge + 1) % k) };
    let mut seq = d.entries().to_vec();
    seq[left] -= 1;
    seq[right] -= 1;
    seq.insert(inserted_index(k, edge), BigInt::from(-1));
    Ok(SphereCycle::new(seq).expect("length grows"))
}

pub fn toric_blow_down(d: &SphereCycle, component: usize) -> Result<SphereCycle, MoveError> {
    let k = d.len();
    if component >= k {
        return Err(MoveError::IndexOutOfRange { index: component, len: k });
    }
    if k == 2 {
        return Err(MoveError::LengthTooShort);
    }
    if *d.get(component) != BigInt::from(-1) {
        return Err(MoveError::NotBlowDownable {
            index: component,
            s: d.get(component).clone(),
        });
    }
    let mut seq = d.entries().to_vec();
    seq[(component + k - 1) % k] += 1;
    seq[(component + 1) % k] += 1;
    seq.remove(component);
    Ok(SphereCycle::new(seq).expect("k >= 3 before removal"))
}

pub fn non_toric_blow_up(d: &Divisor, component: usize) -> Result<Divisor, MoveError> {
    match d {
        Divisor::Torus { s } => {
            if component != 0 {
                return Err(MoveError::IndexOutOfRange { index: component, len: 1 });
            }
            Ok(Divisor::Torus { s: s - 1 })
        }
        Divisor::Cycle(c) => {
            if component >= c.len() {
                return Err(MoveError::IndexOutOfRange {
                    index: component,
                    len: c.len(),
                });
            }
            let mut seq = c.entries().to_vec();
            seq[component] -= 1;
            Ok(Divisor::Cycle(SphereCycle::new(seq).expect("same length")))
        }
    }
}

pub fn apply_move(d: &Divisor, m: &Move) -> Result<Divisor, MoveError> {
    match (m, d) {
        (Move::NonToricBlowUp { component }, _) => non_toric_blow_up(d, *component),
        (_, Divisor::Torus { .. }) => Err(MoveError::TorusDivisor),
        (Move::ToricBlowUp { edge }, Divisor::Cycle(c)) => toric_blow_up(c, *edge).map(Divisor::Cycle),
        (Move::ToricBlowDown { component }, Divisor::Cycle(c)) => {
            toric_blow_down(c, *component).map(Divisor::Cycle)
        }
    }
}

/// A replayable sequence of moves starting from a fixed divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveWord {
    pub start: Divisor,
    pub moves: Vec<Move>,
}

impl MoveWord {
    pub fn new(start: Divisor) -> Self {
        MoveWord {
            start,
            moves: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Every divisor visited, starting with `start`.
    pub fn states(&self) -> Result<Vec<Divisor>, MoveError> {
        let mut out = vec![self.start.clone()];
        for m in &self.moves {
            let next = apply_move(out.last().expect("non-empty"), m)?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn replay(&self) -> Result<Divisor, MoveError> {
        self.moves
            .iter()
            .try_fold(self.start.clone(), |d, m| apply_move(&d, m))
    }
}

/// Result of [`toric_minimal_reduce`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub result: SphereCycle,
    pub word: MoveWord,
}

/// Blows down `-1` components (lowest index first, starting from the
/// canonical form) until the cycle is toric minimal or has length 2.
pub fn toric_minimal_reduce(d: &SphereCycle) -> Reduction {
    let start = d.canonical_form();
    let mut word = MoveWord::new(Divisor::Cycle(start.clone()));
    let mut current = start;
    let minus_one = BigInt::from(-1);
    while current.len() >= 3 {
        let Some(j) = current.entries().iter().position(|s| *s == minus_one) else {
            break;
        };
        current = toric_blow_down(&current, j).expect("checked -1 and length");
        word.moves.push(Move::ToricBlowDown { component: j });
    }
    Reduction { result: current, word }
}

/// Limits for toric-equivalence searches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_length: usize,
    pub min_entry: BigInt,
    pub max_steps: usize,
}

impl SearchBounds {
    pub fn new(max_length: usize, min_entry: i64, max_steps: usize) -> Self {
        SearchBounds {
            max_length,
            min_entry: BigInt::from(min_entry),
            max_steps,
        }
    }

    pub fn admits(&self, c: &SphereCycle) -> bool {
        c.len() <= self.max_length && c.entries().iter().all(|s| *s >= self.min_entry)
    }
}

/// All single toric moves out of `c`, in a fixed order (blow-ups by edge,
/// then blow-downs by component).
pub fn toric_moves(c: &SphereCycle) -> Vec<(Move, SphereCycle)> {
    let k = c.len();
    let ups = (0..k).map(|e| (Move::ToricBlowUp { edge: e }, toric_blow_up(c, e)));
    let downs = (0..k).map(|j| (Move::ToricBlowDown { component: j }, toric_blow_down(c, j)));
    ups.chain(downs)
        .filter_map(|(m, r)| r.ok().map(|r| (m, r)))
        .collect()
}

/// Canonical neighbours of a canonical node inside the bounds, sorted.
fn canonical_neighbours(c: &SphereCycle, bounds: &SearchBounds) -> BTreeSet<SphereCycle> {
    toric_moves(c)
        .into_iter()
        .map(|(_, r)| r)
        .filter(|r| bounds.admits(r))
        .map(|r| r.canonical_form())
        .collect()
}

/// Turns a chain of canonical forms into concrete moves replayable from
/// `start` (which must be dihedrally equivalent to the first link).
fn realize_chain(start: &SphereCycle, chain: &[SphereCycle]) -> MoveWord {
    let mut word = MoveWord::new(Divisor::Cycle(start.clone()));
    let mut current = start.clone();
    for target in chain.iter().skip(1) {
        let (m, next) = toric_moves(&current)
            .into_iter()
            .find(|(_, r)| r.canonical_form() == *target)
            .expect("chain links are one toric move apart up to symmetry");
        word.moves.push(m);
        current = next;
    }
    word
}

struct Frontier {
    parent: HashMap<SphereCycle, Option<SphereCycle>>,
    depth_of: HashMap<SphereCycle, usize>,
    layer: Vec<SphereCycle>,
    depth: usize,
}

impl Frontier {
    fn new(root: SphereCycle) -> Self {
        let mut parent = HashMap::new();
        let mut depth_of = HashMap::new();
        parent.insert(root.clone(), None);
        depth_of.insert(root.clone(), 0);
        Frontier {
            parent,
            depth_of,
            layer: vec![root],
            depth: 0,
        }
    }

    fn expand(&mut self, bounds: &SearchBounds) -> Vec<SphereCycle> {
        let mut next = BTreeSet::new();
        for u in &self.layer {
            for v in canonical_neighbours(u, bounds) {
                if !self.parent.contains_key(&v) {
                    self.parent.insert(v.clone(), Some(u.clone()));
                    self.depth_of.insert(v.clone(), self.depth + 1);
                    next.insert(v);
                }
            }
        }
        self.depth += 1;
        self.layer = next.into_iter().collect();
        self.layer.clone()
    }

    /// Root-to-`node` chain.
    fn chain_to(&self, node: &SphereCycle) -> Vec<SphereCycle> {
        let mut chain = vec![node.clone()];
        let mut cur = node;
        while let Some(Some(p)) = self.parent.get(cur) {
            chain.push(p.clone());
            cur = p;
        }
        chain.reverse();
        chain
    }

    fn explored(&self) -> usize {
        self.parent.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    /// Replays from the first argument to a dihedral image of the second.
    Path(MoveWord),
    /// Nothing found inside the bounds; this is not a proof of inequivalence.
    NotFoundWithinBounds { explored: usize },
}

/// Bounded bidirectional breadth-first search for a toric-move path.
pub fn toric_equivalent(a: &SphereCycle, b: &SphereCycle, bounds: &SearchBounds) -> Equivalence {
    let ca = a.canonical_form();
    let cb = b.canonical_form();
    if ca == cb {
        return Equivalence::Path(MoveWord::new(Divisor::Cycle(a.clone())));
    }
    let mut fa = Frontier::new(ca);
    let mut fb = Frontier::new(cb);
    while fa.depth + fb.depth < bounds.max_steps {
        let expand_a = fa.layer.len() <= fb.layer.len();
        let (grow, other) = if expand_a { (&mut fa, &fb) } else { (&mut fb, &fa) };
        if grow.layer.is_empty() {
            break;
        }
        let fresh = grow.expand(bounds);
        let meet = fresh
            .iter()
            .filter_map(|v| other.depth_of.get(v).map(|d| (*d, v)))
            .min()
            .map(|(_, v)| v.clone());
        if let Some(v) = meet {
            let mut chain = fa.chain_to(&v);
            let mut back = fb.chain_to(&v);
            back.reverse();
            chain.extend(back.into_iter().skip(1));
            return Equivalence::Path(realize_chain(a, &chain));
        }
    }
    Equivalence::NotFoundWithinBounds {
        explored: fa.explored() + fb.explored(),
    }
}

/// Breadth-first search through the toric class of `start` for the first
/// canonical form satisfying `goal`. Returns the matching canonical form and
/// a word from `start` to a dihedral image of it.
pub fn search_toric_class<F>(
    start: &SphereCycle,
    bounds: &SearchBounds,
    mut goal: F,
) -> Option<(SphereCycle, MoveWord)>
where
    F: FnMut(&SphereCycle) -> bool,
{
    let root = start.canonical_form();
    let mut frontier = Frontier::new(root.clone());
    if goal(&root) {
        return Some((root, MoveWord::new(Divisor::Cycle(start.clone()))));
    }
    while frontier.depth < bounds.max_steps && !frontier.layer.is_empty() {
        for v in frontier.expand(bounds) {
            if goal(&v) {
                let chain = frontier.chain_to(&v);
                return Some((v, realize_chain(start, &chain)));
            }
        }
    }
    None
}
