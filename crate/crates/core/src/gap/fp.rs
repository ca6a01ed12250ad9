//! Integer-valued FP functions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::int_serde;
use crate::natpoly::NatPoly;
use crate::word::{pair, unpair, StrMap, Word};

/// Inclusive index range for products: `0..=q(n)` or `1..=q(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexRange {
    From0,
    #[default]
    From1,
}

impl IndexRange {
    pub fn indices(self, bound: u64) -> std::ops::RangeInclusive<u64> {
        match self {
            IndexRange::From0 => 0..=bound,
            // 1..=0 is empty, which is what an empty product needs.
            IndexRange::From1 => 1..=bound,
        }
    }
}

/// A total, deterministic function from strings to integers, built from
/// lookup tables and closed forms over lengths and pair indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FpFunc {
    Const(#[serde(with = "int_serde::int")] BigInt),
    Table {
        #[serde(with = "int_serde::int_map")]
        entries: BTreeMap<Word, BigInt>,
        #[serde(default, with = "int_serde::opt_int", skip_serializing_if = "Option::is_none")]
        default: Option<BigInt>,
    },
    /// `|m(x)|`.
    Len(StrMap),
    /// The index `i` of a pair input `⟨y, i⟩`.
    Index,
    Neg(Box<FpFunc>),
    Add(Box<FpFunc>, Box<FpFunc>),
    Sub(Box<FpFunc>, Box<FpFunc>),
    Mul(Box<FpFunc>, Box<FpFunc>),
    /// `f(m(x))`.
    Apply(Box<FpFunc>, StrMap),
    /// `∏_{i ∈ range(bound(|at(x)|))} body(⟨x, i⟩)`.
    Product {
        bound: NatPoly,
        at: StrMap,
        range: IndexRange,
        body: Box<FpFunc>,
    },
}

impl FpFunc {
    pub fn constant(v: impl Into<BigInt>) -> Self {
        FpFunc::Const(v.into())
    }

    pub fn table(entries: BTreeMap<Word, BigInt>) -> Self {
        FpFunc::Table {
            entries,
            default: None,
        }
    }

    pub fn len() -> Self {
        FpFunc::Len(StrMap::Identity)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Self {
        FpFunc::Neg(Box::new(self))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: FpFunc) -> Self {
        FpFunc::Add(Box::new(self), Box::new(other))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, other: FpFunc) -> Self {
        FpFunc::Sub(Box::new(self), Box::new(other))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: FpFunc) -> Self {
        FpFunc::Mul(Box::new(self), Box::new(other))
    }

    pub fn apply(self, map: StrMap) -> Self {
        match map {
            StrMap::Identity => self,
            map => FpFunc::Apply(Box::new(self), map),
        }
    }

    pub fn product(body: FpFunc, bound: NatPoly, at: StrMap, range: IndexRange) -> Self {
        FpFunc::Product {
            bound,
            at,
            range,
            body: Box::new(body),
        }
    }

    pub fn eval(&self, x: &Word) -> Result<BigInt> {
        Ok(match self {
            FpFunc::Const(v) => v.clone(),
            FpFunc::Table { entries, default } => entries
                .get(x)
                .or(default.as_ref())
                .cloned()
                .ok_or_else(|| Error::Domain(x.to_string()))?,
            FpFunc::Len(m) => BigInt::from(m.apply(x)?.len()),
            FpFunc::Index => {
                let (_, i) = unpair(x).ok_or_else(|| Error::Domain(format!("{x} is not a pair")))?;
                BigInt::from(i)
            }
            FpFunc::Neg(a) => -a.eval(x)?,
            FpFunc::Add(a, b) => a.eval(x)? + b.eval(x)?,
            FpFunc::Sub(a, b) => a.eval(x)? - b.eval(x)?,
            FpFunc::Mul(a, b) => a.eval(x)? * b.eval(x)?,
            FpFunc::Apply(f, m) => f.eval(&m.apply(x)?)?,
            FpFunc::Product {
                bound,
                at,
                range,
                body,
            } => {
                let n = at.apply(x)?.len() as u64;
                let mut acc = BigInt::one();
                for i in range.indices(bound.eval(n)) {
                    acc *= body.eval(&pair(x, i))?;
                }
                acc
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        let x = pair(&Word::from("0110"), 5);
        let f = FpFunc::Index
            .mul(FpFunc::Len(StrMap::First))
            .add(FpFunc::constant(1));
        assert_eq!(f.eval(&x).unwrap(), BigInt::from(21));
        assert!(FpFunc::Index.eval(&Word::from("1")).is_err());
    }

    #[test]
    fn tables_and_defaults() {
        let mut entries = BTreeMap::new();
        entries.insert(Word::from("ab"), BigInt::from(-4));
        let f = FpFunc::table(entries.clone());
        assert_eq!(f.eval(&Word::from("ab")).unwrap(), BigInt::from(-4));
        assert_eq!(f.eval(&Word::from("b")), Err(Error::Domain("b".into())));
        let g = FpFunc::Table {
            entries,
            default: Some(BigInt::from(9)),
        };
        assert_eq!(g.eval(&Word::from("b")).unwrap(), BigInt::from(9));
    }

    #[test]
    fn product_ranges() {
        // ∏_{i=1}^{|x|} i = |x|!
        let fact = FpFunc::product(FpFunc::Index, NatPoly::n(), StrMap::Identity, IndexRange::From1);
        assert_eq!(fact.eval(&Word::from("0000")).unwrap(), BigInt::from(24));
        assert_eq!(fact.eval(&Word::empty()).unwrap(), BigInt::from(1));
        let with_zero = FpFunc::product(FpFunc::Index, NatPoly::n(), StrMap::Identity, IndexRange::From0);
        assert_eq!(with_zero.eval(&Word::from("00")).unwrap(), BigInt::from(0));
    }

    #[test]
    fn json_shape() {
        let f = FpFunc::constant(7).apply(StrMap::First);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"apply":[{"const":"7"},"first"]}"#);
        let back: FpFunc = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
        let from_number: FpFunc = serde_json::from_str(r#"{"const":-3}"#).unwrap();
        assert_eq!(from_number, FpFunc::constant(-3));
    }
}
