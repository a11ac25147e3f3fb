//! Block form and dual of negative definite cycles (dual cusps), and the
//! elliptic duality `(s) <-> (-s)` of tori.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::classifier;
use crate::divisor::{Divisor, SphereCycle};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ineligibility {
    NotToricMinimal,
    NoEntryAtMostMinusThree,
    NotNegativeDefinite,
    STotalAboveMinusTwo,
}

impl fmt::Display for Ineligibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ineligibility::NotToricMinimal => "cycle is not toric minimal",
            Ineligibility::NoEntryAtMostMinusThree => "cycle has no entry <= -3",
            Ineligibility::NotNegativeDefinite => "intersection matrix is not negative definite",
            Ineligibility::STotalAboveMinusTwo => "s(D) = sum(s_i + 2) is greater than -2",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualityError {
    #[error("not eligible for duality: {0}")]
    NotEligible(Ineligibility),
    #[error("a dual needs a cycle; tori use elliptic_dual")]
    TorusDivisor,
    #[error("block entry too large to expand: {0}")]
    TooLarge(BigInt),
}

/// Cyclic list of blocks `(a_i, b_i)`: an entry `a_i <= -3` followed by
/// `b_i` entries equal to -2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockForm {
    pub blocks: Vec<(BigInt, usize)>,
}

impl BlockForm {
    pub fn expand(&self) -> Vec<BigInt> {
        let mut out = Vec::new();
        for (a, b) in &self.blocks {
            out.push(a.clone());
            out.extend(std::iter::repeat_n(BigInt::from(-2), *b));
        }
        out
    }

    /// The dual block form: `a'_i = -b_i - 3`, `b'_i = -a_{i+1} - 3`.
    pub fn dual(&self) -> Result<BlockForm, DualityError> {
        let n = self.blocks.len();
        let blocks = (0..n)
            .map(|i| {
                let a = -BigInt::from(self.blocks[i].1) - 3;
                let next = &self.blocks[(i + 1) % n].0;
                let b = (-next - 3u32)
                    .to_usize()
                    .ok_or_else(|| DualityError::TooLarge(next.clone()))?;
                Ok((a, b))
            })
            .collect::<Result<Vec<_>, DualityError>>()?;
        Ok(BlockForm { blocks })
    }

    /// Every cycle in block form with `s <= -2` has either two blocks or an
    /// entry `<= -4`.
    pub fn has_two_blocks_or_deep_entry(&self) -> bool {
        self.blocks.len() >= 2 || self.blocks.iter().any(|(a, _)| *a <= BigInt::from(-4))
    }
}

impl fmt::Display for BlockForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (a, b)) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({a},{b})")?;
        }
        f.write_str("]")
    }
}

fn eligibility(d: &SphereCycle) -> Result<(), Ineligibility> {
    if !d.is_toric_minimal() {
        return Err(Ineligibility::NotToricMinimal);
    }
    if !d.entries().iter().any(|s| *s <= BigInt::from(-3)) {
        return Err(Ineligibility::NoEntryAtMostMinusThree);
    }
    // on toric minimal cycles the shortcut always applies and is exact
    let negative_definite = match classifier::definiteness_shortcut(d) {
        Some(p) => p == classifier::Prediction::NegativeDefinite,
        None => classifier::classify(&Divisor::Cycle(d.clone())).inertia.is_negative_definite(),
    };
    if !negative_definite {
        return Err(Ineligibility::NotNegativeDefinite);
    }
    if d.s_total() > BigInt::from(-2) {
        return Err(Ineligibility::STotalAboveMinusTwo);
    }
    Ok(())
}

/// Parses the dihedral canonical form of `d`, which begins with its
/// smallest entry and hence with a block head.
pub fn block_form(d: &SphereCycle) -> Result<BlockForm, DualityError> {
    eligibility(d).map_err(DualityError::NotEligible)?;
    let canon = d.canonical_form();
    let minus_two = BigInt::from(-2);
    let mut blocks: Vec<(BigInt, usize)> = Vec::new();
    for s in canon.entries() {
        match blocks.last_mut() {
            Some((_, b)) if *s == minus_two => *b += 1,
            _ => blocks.push((s.clone(), 0)),
        }
    }
    Ok(BlockForm { blocks })
}

/// The dual cycle, returned in canonical form.
pub fn dual_cycle(d: &SphereCycle) -> Result<SphereCycle, DualityError> {
    let dual = block_form(d)?.dual()?;
    let seq = dual.expand();
    let cycle = SphereCycle::new(seq).map_err(|_| DualityError::NotEligible(Ineligibility::STotalAboveMinusTwo))?;
    Ok(cycle.canonical_form())
}

pub fn elliptic_dual(d: &Divisor) -> Result<Divisor, DualityError> {
    match d {
        Divisor::Torus { s } => Ok(Divisor::Torus { s: -s }),
        Divisor::Cycle(_) => Err(DualityError::TorusDivisor),
    }
}

/// Dual of either kind of divisor.
pub fn dual(d: &Divisor) -> Result<Divisor, DualityError> {
    match d {
        Divisor::Torus { .. } => elliptic_dual(d),
        Divisor::Cycle(c) => dual_cycle(c).map(Divisor::Cycle),
    }
}
