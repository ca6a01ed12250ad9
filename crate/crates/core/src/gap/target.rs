use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gap::fp::FpFunc;
use crate::natpoly::NatPoly;
use crate::word::{pair, Domain, StrMap, Word};

/// Whether target `i` for input `x` is read at `⟨0^{|x|}, i⟩` (LWPP-style)
/// or at `⟨x, i⟩` (WPP / C=P-style).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetMode {
    Length,
    Input,
}

impl TargetMode {
    pub fn anchor(self, x: &Word) -> Word {
        match self {
            TargetMode::Length => Word::zeros(x.len()),
            TargetMode::Input => x.clone(),
        }
    }

    /// Maps `⟨x, i⟩` to the key `⟨anchor(x), i⟩`.
    pub fn key_map(self) -> StrMap {
        match self {
            TargetMode::Length => StrMap::map_first(StrMap::Unary),
            TargetMode::Input => StrMap::Identity,
        }
    }
}

/// A target list `f(key(x, 1)), ..., f(key(x, r(|x|)))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetSpec {
    pub mode: TargetMode,
    pub f: FpFunc,
    pub r: NatPoly,
}

impl TargetSpec {
    pub fn new(mode: TargetMode, f: FpFunc, r: NatPoly) -> Self {
        TargetSpec { mode, f, r }
    }

    pub fn bound(&self, x: &Word) -> u64 {
        self.r.eval(x.len() as u64)
    }

    pub fn key(&self, x: &Word, i: u64) -> Word {
        pair(&self.mode.anchor(x), i)
    }

    /// The ordered target list for `x` (duplicates kept).
    pub fn targets(&self, x: &Word) -> Result<Vec<BigInt>> {
        (1..=self.bound(x))
            .map(|i| self.f.eval(&self.key(x, i)))
            .collect()
    }

    pub fn target_set(&self, x: &Word) -> Result<BTreeSet<BigInt>> {
        Ok(self.targets(x)?.into_iter().collect())
    }

    /// Representative inputs: one per length in length mode, every word in
    /// input mode.
    pub fn anchors(&self, domain: &Domain) -> Vec<Word> {
        match self.mode {
            TargetMode::Length => (0..=domain.max_len).map(Word::zeros).collect(),
            TargetMode::Input => domain.words(),
        }
    }

    /// Fails when some target over the domain is zero.
    pub fn check_nonzero(&self, domain: &Domain) -> Result<()> {
        for x in self.anchors(domain) {
            for (k, v) in self.targets(&x)?.iter().enumerate() {
                if v.is_zero() {
                    return Err(Error::InvalidSpec(format!(
                        "target {} for {x:?} is zero",
                        k + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Acceptance and rejection target lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoSidedTargetSpec {
    pub accept: TargetSpec,
    pub reject: TargetSpec,
}

impl TwoSidedTargetSpec {
    pub fn new(accept: TargetSpec, reject: TargetSpec) -> Self {
        TwoSidedTargetSpec { accept, reject }
    }

    pub fn mode(&self) -> Result<TargetMode> {
        if self.accept.mode != self.reject.mode {
            return Err(Error::InvalidSpec(
                "acceptance and rejection lists use different modes".into(),
            ));
        }
        Ok(self.accept.mode)
    }

    /// Fails when an acceptance target equals a rejection target for the
    /// same length (or input).
    pub fn check_disjoint(&self, domain: &Domain) -> Result<()> {
        self.mode()?;
        for x in self.accept.anchors(domain) {
            let a = self.accept.target_set(&x)?;
            let r = self.reject.target_set(&x)?;
            if let Some(v) = a.intersection(&r).next() {
                return Err(Error::InvalidSpec(format!(
                    "value {v} is both an acceptance and a rejection target at {x:?}"
                )));
            }
        }
        Ok(())
    }
}
