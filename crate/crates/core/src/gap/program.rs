//! Gap programs: symbolic terms over machines and FP functions that denote
//! GapP functions.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::gap::fp::{FpFunc, IndexRange};
use crate::gap::machine::BaseMachine;
use crate::natpoly::NatPoly;
use crate::word::{pair, StrMap, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GapProgram {
    Base(Arc<BaseMachine>),
    Const(FpFunc),
    Neg(Box<GapProgram>),
    Add(Box<GapProgram>, Box<GapProgram>),
    Sub(Box<GapProgram>, Box<GapProgram>),
    Mul(Box<GapProgram>, Box<GapProgram>),
    /// `∏_{i ∈ range(bound(|x|))} child(⟨x, i⟩)`.
    PolyProd {
        bound: NatPoly,
        range: IndexRange,
        child: Box<GapProgram>,
    },
    /// `child(m(x))`.
    Compose(Box<GapProgram>, StrMap),
}

impl GapProgram {
    pub fn base(machine: BaseMachine) -> Self {
        GapProgram::Base(Arc::new(machine))
    }

    pub fn constant(f: FpFunc) -> Self {
        GapProgram::Const(f)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Self {
        GapProgram::Neg(Box::new(self))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: GapProgram) -> Self {
        GapProgram::Add(Box::new(self), Box::new(other))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, other: GapProgram) -> Self {
        GapProgram::Sub(Box::new(self), Box::new(other))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: GapProgram) -> Self {
        GapProgram::Mul(Box::new(self), Box::new(other))
    }

    pub fn compose(self, map: StrMap) -> Self {
        GapProgram::Compose(Box::new(self), map)
    }

    /// Height of the term tree.
    pub fn height(&self) -> usize {
        match self {
            GapProgram::Base(_) | GapProgram::Const(_) => 1,
            GapProgram::Neg(a) | GapProgram::Compose(a, _) => 1 + a.height(),
            GapProgram::PolyProd { child, .. } => 1 + child.height(),
            GapProgram::Add(a, b) | GapProgram::Sub(a, b) | GapProgram::Mul(a, b) => {
                1 + a.height().max(b.height())
            }
        }
    }

    /// The integer this program denotes on `x`.
    pub fn eval_gap(&self, x: &Word) -> Result<BigInt> {
        Ok(match self {
            GapProgram::Base(m) => m.gap(x)?,
            GapProgram::Const(f) => f.eval(x)?,
            GapProgram::Neg(a) => -a.eval_gap(x)?,
            GapProgram::Add(a, b) => a.eval_gap(x)? + b.eval_gap(x)?,
            GapProgram::Sub(a, b) => a.eval_gap(x)? - b.eval_gap(x)?,
            GapProgram::Mul(a, b) => a.eval_gap(x)? * b.eval_gap(x)?,
            GapProgram::PolyProd {
                bound,
                range,
                child,
            } => {
                let mut acc = BigInt::one();
                for i in range.indices(bound.eval(x.len() as u64)) {
                    acc *= child.eval_gap(&pair(x, i))?;
                }
                acc
            }
            GapProgram::Compose(child, m) => child.eval_gap(&m.apply(x)?)?,
        })
    }
}

/// `x ↦ ∏_{i ∈ range(q(|x|))} child(⟨x, i⟩)`.
pub fn poly_product(child: GapProgram, q: NatPoly, range: IndexRange) -> GapProgram {
    GapProgram::PolyProd {
        bound: q,
        range,
        child: Box::new(child),
    }
}
