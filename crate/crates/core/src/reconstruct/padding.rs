//! Length padding of a length-indexed multiplier and the multiplied-to-
//! indexed target embedding used by the legitimate-deck pipeline.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gap::fp::FpFunc;
use crate::gap::target::{TargetMode, TargetSpec};
use crate::int_serde;
use crate::natpoly::NatPoly;
use crate::reconstruct::deck::{pcount, Deck};
use crate::word::{StrMap, Word};

/// A length-indexed multiplier `h` together with its padded forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaddedTarget {
    pub h: FpFunc,
}

impl Default for PaddedTarget {
    /// `h ≡ 1`.
    fn default() -> Self {
        PaddedTarget {
            h: FpFunc::constant(1),
        }
    }
}

impl PaddedTarget {
    pub fn new(h: FpFunc) -> Self {
        PaddedTarget { h }
    }

    pub fn h_at(&self, len: usize) -> Result<BigInt> {
        self.h.eval(&Word::zeros(len))
    }

    /// `∏_{0 ≤ i ≤ m} h(0^i)`.
    pub fn hhat(&self, m: usize) -> Result<BigInt> {
        (0..=m).try_fold(BigInt::one(), |acc, i| Ok(acc * self.h_at(i)?))
    }

    /// `∏_{0 ≤ i ≤ m, i ≠ n} h(0^i)`.
    pub fn hprime(&self, m: usize, n: usize) -> Result<BigInt> {
        (0..=m)
            .filter(|&i| i != n)
            .try_fold(BigInt::one(), |acc, i| Ok(acc * self.h_at(i)?))
    }
}

/// `(ĥ(0^m), h′)` for an input of length `m` presenting `n` cards.
pub fn padded_targets(h: &FpFunc, input_length: usize, n: usize) -> Result<(BigInt, BigInt)> {
    if n > input_length {
        return Err(Error::Precondition(format!(
            "card count {n} exceeds input length {input_length}"
        )));
    }
    let p = PaddedTarget::new(h.clone());
    Ok((p.hhat(input_length)?, p.hprime(input_length, n)?))
}

/// `f₂(⟨0^n, i⟩) = i · f₁(0^n)` with multiplicity `r`. `f₁` must be nonzero
/// on every length up to `max_len`.
pub fn multiplied_to_indexed(f1: &FpFunc, r: &NatPoly, max_len: usize) -> Result<TargetSpec> {
    for len in 0..=max_len {
        if f1.eval(&Word::zeros(len))?.is_zero() {
            return Err(Error::InvalidSpec(format!("f1 vanishes at length {len}")));
        }
    }
    Ok(TargetSpec::new(
        TargetMode::Length,
        FpFunc::Index.mul(f1.clone().apply(StrMap::First)),
        r.clone(),
    ))
}

/// The gap values along the legitimate-deck pipeline for one deck.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeckGap {
    pub n: usize,
    pub input_length: usize,
    pub pcount: u64,
    /// `h(0^n) · pcount`.
    #[serde(with = "int_serde::int")]
    pub g: BigInt,
    #[serde(with = "int_serde::int")]
    pub hprime: BigInt,
    /// `ĥ(0^{input_length})`, the single multiplied target.
    #[serde(with = "int_serde::int")]
    pub hhat: BigInt,
    /// `g · h′`, which equals `pcount · ĥ`.
    #[serde(with = "int_serde::int")]
    pub padded_gap: BigInt,
}

pub fn deck_gap(d: &Deck, h: &PaddedTarget) -> Result<DeckGap> {
    let n = d.len();
    let input_length = d.encode().chars().count();
    let p = pcount(d)?;
    let g = h.h_at(n)? * BigInt::from(p);
    let hprime = h.hprime(input_length, n)?;
    Ok(DeckGap {
        n,
        input_length,
        pcount: p,
        padded_gap: &g * &hprime,
        g,
        hprime,
        hhat: h.hhat(input_length)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reconstruct::graph::Graph;

    #[test]
    fn unit_and_linear_padding() {
        let (hh, hp) = padded_targets(&FpFunc::constant(1), 5, 2).unwrap();
        assert_eq!((hh, hp), (BigInt::from(1), BigInt::from(1)));
        let h = FpFunc::len().add(FpFunc::constant(1));
        let (hh, hp) = padded_targets(&h, 3, 2).unwrap();
        assert_eq!(hh, BigInt::from(24));
        assert_eq!(hp, BigInt::from(8));
        // n = m drops only the last factor
        let (hh, hp) = padded_targets(&h, 3, 3).unwrap();
        assert_eq!(hp * 4, hh);
        assert!(padded_targets(&h, 2, 3).is_err());
    }

    #[test]
    fn multiplied_targets() {
        let r = NatPoly::constant(3);
        let s = multiplied_to_indexed(&FpFunc::constant(7), &r, 4).unwrap();
        let t: Vec<i64> = s
            .targets(&Word::from("01"))
            .unwrap()
            .iter()
            .map(|v| i64::try_from(v).unwrap())
            .collect();
        assert_eq!(t, vec![7, 14, 21]);
        let s = multiplied_to_indexed(&FpFunc::constant(-2), &NatPoly::constant(2), 4).unwrap();
        assert_eq!(
            s.targets(&Word::empty()).unwrap(),
            vec![BigInt::from(-2), BigInt::from(-4)]
        );
        assert!(matches!(
            multiplied_to_indexed(&FpFunc::len(), &r, 2),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn deck_gap_identity() {
        let h = PaddedTarget::new(FpFunc::len().mul(FpFunc::constant(2)).add(FpFunc::constant(-3)));
        for d in [
            crate::reconstruct::deck::deck(&Graph::path(4).unwrap()).unwrap(),
            Deck::from_cards(vec![Graph::empty(1).unwrap(); 2]).unwrap(),
            Deck::from_cards(vec![
                Graph::complete(3).unwrap(),
                Graph::empty(3).unwrap(),
                Graph::empty(3).unwrap(),
                Graph::empty(3).unwrap(),
            ])
            .unwrap(),
        ] {
            let dg = deck_gap(&d, &h).unwrap();
            assert_eq!(dg.padded_gap, BigInt::from(dg.pcount) * &dg.hhat);
        }
    }
}
