//! JSON and DOT renderings shared by the command-line tool and its tests.

use std::fmt::Write as _;

use serde_json::{json, Value};
use thiserror::Error;

use crate::classifier::{self, ClassifierError, Exactness};
use crate::divisor::{Divisor, SphereCycle};
use crate::duality::{self, DualityError};
use crate::homology::{self, LogCYPair};
use crate::json;
use crate::linalg::Rational;
use crate::monodromy::{self, MonodromyError};
use crate::moves::{self, Equivalence, Move, MoveWord, SearchBounds};

/// A well-formed input that the requested operation does not accept.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PreconditionError {
    #[error(transparent)]
    Monodromy(#[from] MonodromyError),
    #[error(transparent)]
    Duality(#[from] DualityError),
    #[error(transparent)]
    Classifier(#[from] ClassifierError),
    #[error("{0} needs a cycle of spheres, not a torus")]
    NeedsCycle(&'static str),
}

pub fn moves_to_value(moves: &[Move]) -> Value {
    Value::Array(
        moves
            .iter()
            .map(|m| json!({"op": m.op_name(), "index": m.index()}))
            .collect(),
    )
}

pub fn word_to_value(w: &MoveWord) -> Value {
    json!({"start": w.start.to_json(), "moves": moves_to_value(&w.moves)})
}

fn cycle_of<'a>(d: &'a Divisor, op: &'static str) -> Result<&'a SphereCycle, PreconditionError> {
    d.as_cycle().ok_or(PreconditionError::NeedsCycle(op))
}

pub fn classify(d: &Divisor) -> Value {
    classifier::classify(d).to_json()
}

pub fn monodromy(d: &Divisor) -> Result<Value, PreconditionError> {
    let a = monodromy::monodromy_of(d)?;
    let [[a11, a12], [a21, a22]] = a.entries();
    Ok(json!({
        "matrix": [
            [json::int_to_value(a11), json::int_to_value(a12)],
            [json::int_to_value(a21), json::int_to_value(a22)],
        ],
        "trace": json::int_to_value(&a.trace()),
        "bundle_type": a.bundle_type().as_str(),
    }))
}

pub fn dual(d: &Divisor) -> Result<Value, PreconditionError> {
    match d {
        Divisor::Torus { .. } => Ok(json!({"dual": duality::elliptic_dual(d)?.to_json()})),
        Divisor::Cycle(c) => {
            let blocks = duality::block_form(c)?;
            let dual = duality::dual_cycle(c)?;
            let as_value = |b: &duality::BlockForm| {
                Value::Array(
                    b.blocks
                        .iter()
                        .map(|(a, n)| json!([json::int_to_value(a), n]))
                        .collect(),
                )
            };
            Ok(json!({
                "block_form": as_value(&blocks),
                "dual_block_form": as_value(&blocks.dual()?),
                "dual": Divisor::Cycle(dual).to_json(),
            }))
        }
    }
}

pub fn reduce(d: &Divisor) -> Result<Value, PreconditionError> {
    let r = moves::toric_minimal_reduce(cycle_of(d, "reduce")?);
    Ok(json!({
        "result": Divisor::Cycle(r.result.clone()).to_json(),
        "toric_minimal": r.result.is_toric_minimal(),
        "word": word_to_value(&r.word),
    }))
}

pub fn equiv(a: &Divisor, b: &Divisor, bounds: &SearchBounds) -> Result<Value, PreconditionError> {
    let (ca, cb) = (cycle_of(a, "equiv")?, cycle_of(b, "equiv")?);
    Ok(match moves::toric_equivalent(ca, cb, bounds) {
        Equivalence::Path(w) => json!({
            "status": "path",
            "steps": w.len(),
            "word": word_to_value(&w),
        }),
        Equivalence::NotFoundWithinBounds { explored } => json!({
            "status": "not_found_within_bounds",
            "explored": explored,
        }),
    })
}

pub fn check(p: &LogCYPair) -> Value {
    let validation = homology::validate_pair(p);
    let constraints = homology::check_constraints(p);
    json!({
        "valid": validation.is_valid(),
        "violations": validation.to_json(),
        "constraints_clean": constraints.is_clean(),
        "constraints": constraints.to_json(),
    })
}

pub fn solve_exact(d: &Divisor, areas: &[Rational]) -> Result<Value, PreconditionError> {
    Ok(match classifier::exact_on_boundary(d, areas)? {
        Exactness::Exact { witness } => json!({
            "status": "exact",
            "witness": witness.iter().map(json::rational_to_value).collect::<Vec<_>>(),
        }),
        Exactness::NotExact => json!({"status": "UNSOLVABLE"}),
    })
}

/// Plumbing graph: one node per component, one edge per intersection
/// point. A torus is a single node with no edges.
pub fn graph_dot(d: &Divisor) -> String {
    let mut out = String::from("graph plumbing {\n");
    match d {
        Divisor::Torus { s } => {
            let _ = writeln!(out, "  c0 [label=\"{s}\", shape=doublecircle];");
        }
        Divisor::Cycle(c) => {
            for (i, s) in c.entries().iter().enumerate() {
                let _ = writeln!(out, "  c{i} [label=\"{s}\"];");
            }
            let k = c.len();
            if k == 2 {
                out.push_str("  c0 -- c1;\n  c0 -- c1;\n");
            } else {
                for i in 0..k {
                    let _ = writeln!(out, "  c{} -- c{};", i, (i + 1) % k);
                }
            }
        }
    }
    out.push_str("}\n");
    out
}
