//! One stage of the oracle constructions: choose a set `C` of fresh strings
//! of length `n_j` that breaks the candidate witness `(N, M)`.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::diagonalize::det::DetOracleMachine;
use crate::error::{Error, Result};
use crate::int_serde;
use crate::natpoly::NatPoly;
use crate::polyenc::OracleMachine;
use crate::word::{Domain, Word};

/// `0^n ∈ L_B` iff `B` has a string of length `n`.
pub fn test_language_member(b: &BTreeSet<Word>, n: usize) -> bool {
    b.iter().any(|w| w.len() == n)
}

#[derive(Debug, Clone)]
pub struct StageContext {
    pub n: OracleMachine,
    pub m: DetOracleMachine,
    pub nj: usize,
    pub b_prev: BTreeSet<Word>,
    /// Multiplicity bound `r`; only the gap stage uses it.
    pub r: NatPoly,
    /// Running-time polynomial `p_j`.
    pub p: NatPoly,
    /// `(p_{j-1}, n_{j-1})` of the previous stage, if any.
    pub prev: Option<(NatPoly, usize)>,
    /// `M^{B_prev}(0^{n_j})`.
    pub val: BigInt,
    /// Strings of length `n_j` that `M` queries under `B_prev`.
    pub t: BTreeSet<Word>,
}

impl StageContext {
    pub fn new(
        n: OracleMachine,
        m: DetOracleMachine,
        nj: usize,
        b_prev: BTreeSet<Word>,
        r: NatPoly,
        p: NatPoly,
        prev: Option<(NatPoly, usize)>,
    ) -> Result<Self> {
        let (val, queried) = m.run(&Word::zeros(nj), &b_prev)?;
        let t = queried.into_iter().filter(|w| w.len() == nj).collect();
        Ok(StageContext {
            n,
            m,
            nj,
            b_prev,
            r,
            p,
            prev,
            val,
            t,
        })
    }

    pub fn input(&self) -> Word {
        Word::zeros(self.nj)
    }

    /// `Σ^{n_j} - T` in lexicographic order.
    pub fn candidates(&self) -> Vec<Word> {
        Domain::binary(self.nj)
            .words_of_length(self.nj)
            .into_iter()
            .filter(|w| !self.t.contains(w))
            .collect()
    }

    pub fn oracle_with(&self, c: &[Word]) -> BTreeSet<Word> {
        let mut o = self.b_prev.clone();
        o.extend(c.iter().cloned());
        o
    }

    pub fn gap_with(&self, c: &[Word]) -> Result<BigInt> {
        self.n.gap_with(&self.input(), &self.oracle_with(c))
    }

    pub fn acc_with(&self, c: &[Word]) -> Result<u64> {
        self.n.acc_with(&self.input(), &self.oracle_with(c))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub label: char,
    pub statement: String,
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StageKind {
    Gap,
    Acc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageOutcome {
    pub kind: StageKind,
    pub nj: usize,
    #[serde(with = "int_serde::int")]
    pub val: BigInt,
    pub t: BTreeSet<Word>,
    /// First qualifying set in search order.
    pub found: Option<Vec<Word>>,
    /// The machine's gap or accepting count under `B_prev ∪ C`.
    #[serde(with = "int_serde::opt_int", default, skip_serializing_if = "Option::is_none")]
    pub value: Option<BigInt>,
    pub candidates_checked: u64,
    /// Re-simulation with a freshly built oracle confirms the disjunction.
    pub verified: bool,
    pub conditions: Vec<Condition>,
}

fn pow(b: &BigInt, e: u32) -> BigInt {
    num_traits::pow(b.clone(), e as usize)
}

fn cond_a(ctx: &StageContext) -> Condition {
    match &ctx.prev {
        Some((pp, np)) => {
            let bound = pp.eval(*np as u64);
            Condition {
                label: 'a',
                statement: format!("n_j = {} > p_(j-1)(n_(j-1)) = {bound}", ctx.nj),
                holds: ctx.nj as u64 > bound,
            }
        }
        None => Condition {
            label: 'a',
            statement: "first stage, no earlier lengths to protect".into(),
            holds: true,
        },
    }
}

fn two_pow(n: usize) -> BigInt {
    BigInt::one() << n
}

/// Largeness conditions of the gap stage.
pub fn gap_conditions(ctx: &StageContext) -> Vec<Condition> {
    let p = BigInt::from(ctx.p.eval(ctx.nj as u64));
    let r = BigInt::from(ctx.r.eval(ctx.nj as u64));
    let p4 = pow(&p, 4);
    let spare = two_pow(ctx.nj) - &p;
    vec![
        cond_a(ctx),
        Condition {
            label: 'b',
            statement: format!("r(n_j) = {r} >= p(n_j)^4 = {p4}"),
            holds: r >= p4,
        },
        Condition {
            label: 'c',
            statement: format!("2^n_j - p(n_j) = {spare} >= 2 p(n_j)^4 = {}", &p4 * 2),
            holds: spare >= &p4 * 2,
        },
        Condition {
            label: 'd',
            statement: format!("p(n_j)^3 - p(n_j) >= p(n_j)^2 with p(n_j) = {p}"),
            holds: pow(&p, 3) - &p >= pow(&p, 2),
        },
    ]
}

/// Largeness conditions of the accepting-count stage.
pub fn acc_conditions(ctx: &StageContext) -> Vec<Condition> {
    let p = BigInt::from(ctx.p.eval(ctx.nj as u64));
    let lhs = two_pow(ctx.nj) - &p;
    let rhs = &p * 6 + 1;
    vec![
        cond_a(ctx),
        Condition {
            label: 'b',
            statement: format!("2^n_j - p(n_j) = {lhs} > 6 p(n_j) + 1 = {rhs}"),
            holds: lhs > rhs,
        },
    ]
}

/// Default cap on evaluated candidate sets.
pub const DEFAULT_MAX_CANDIDATES: u64 = 1_000_000;

fn search(
    ctx: &StageContext,
    kind: StageKind,
    max_size: usize,
    max_candidates: u64,
) -> Result<StageOutcome> {
    if ctx.val.is_zero() {
        return Err(Error::Precondition(
            "val = 0: the stage is skipped, there is nothing to diagonalize against".into(),
        ));
    }
    let value_of = |c: &[Word]| -> Result<BigInt> {
        match kind {
            StageKind::Gap => ctx.gap_with(c),
            StageKind::Acc => Ok(BigInt::from(ctx.acc_with(c)?)),
        }
    };
    let qualifies = |size: usize, v: &BigInt| {
        if size == 0 {
            !v.is_zero()
        } else {
            *v != ctx.val
        }
    };
    let pool = ctx.candidates();
    let mut checked = 0u64;
    let mut found = None;
    'sizes: for size in 0..=max_size.min(pool.len()) {
        for c in pool.iter().cloned().combinations(size) {
            checked += 1;
            if checked > max_candidates {
                return Err(Error::Budget {
                    limit: max_candidates,
                });
            }
            let v = value_of(&c)?;
            if qualifies(size, &v) {
                found = Some((c, v));
                break 'sizes;
            }
        }
    }
    let verified = match &found {
        Some((c, _)) => {
            let fresh: BTreeSet<Word> = ctx.b_prev.iter().chain(c.iter()).cloned().collect();
            let v = match kind {
                StageKind::Gap => ctx.n.gap_with(&ctx.input(), &fresh)?,
                StageKind::Acc => BigInt::from(ctx.n.acc_with(&ctx.input(), &fresh)?),
            };
            c.iter().all(|w| w.len() == ctx.nj && !ctx.t.contains(w)) && qualifies(c.len(), &v)
        }
        None => false,
    };
    let conditions = match kind {
        StageKind::Gap => gap_conditions(ctx),
        StageKind::Acc => acc_conditions(ctx),
    };
    let (found, value) = match found {
        Some((c, v)) => (Some(c), Some(v)),
        None => (None, None),
    };
    Ok(StageOutcome {
        kind,
        nj: ctx.nj,
        val: ctx.val.clone(),
        t: ctx.t.clone(),
        found,
        value,
        candidates_checked: checked,
        verified,
        conditions,
    })
}

/// Searches `C ⊆ Σ^{n_j} - T` with `1 ≤ |C| ≤ r(n_j)` and gap `≠ val`, or
/// `C = ∅` and gap `≠ 0`; `∅` first, then by size, lexicographically.
pub fn gap_stage_search(ctx: &StageContext, max_candidates: u64) -> Result<StageOutcome> {
    let r = ctx.r.eval(ctx.nj as u64);
    search(ctx, StageKind::Gap, usize::try_from(r).unwrap_or(usize::MAX), max_candidates)
}

/// As [`gap_stage_search`] over accepting-path counts, with `|C| ≤ 2`.
pub fn acc_stage_search(ctx: &StageContext, max_candidates: u64) -> Result<StageOutcome> {
    search(ctx, StageKind::Acc, 2, max_candidates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagonalize::fixtures::*;

    fn set(ws: &[&str]) -> BTreeSet<Word> {
        ws.iter().map(|&w| Word::from(w)).collect()
    }

    #[test]
    fn test_language() {
        assert!(!test_language_member(&BTreeSet::new(), 2));
        assert!(test_language_member(&set(&["01"]), 2));
        assert!(!test_language_member(&set(&["01"]), 3));
    }

    #[test]
    fn oracle_blind_gap_five() {
        let ctx = context(constant_gap_machine(3, 5), 3, &[], 3);
        let out = gap_stage_search(&ctx, DEFAULT_MAX_CANDIDATES).unwrap();
        assert_eq!(out.found, Some(vec![]));
        assert!(out.verified);
    }

    #[test]
    fn counting_gap_needs_two_strings() {
        let ctx = context(counting_machine(3, CountKind::Gap), 1, &[], 3);
        let out = gap_stage_search(&ctx, DEFAULT_MAX_CANDIDATES).unwrap();
        assert_eq!(out.found.as_ref().map(Vec::len), Some(2));
        assert_eq!(out.value, Some(BigInt::from(2)));
        assert!(out.verified);
    }

    #[test]
    fn zero_machine_takes_one_string() {
        let ctx = context(constant_gap_machine(3, 0), 1, &[], 3);
        let out = gap_stage_search(&ctx, DEFAULT_MAX_CANDIDATES).unwrap();
        assert_eq!(out.found, Some(vec![Word::from("000")]));
    }

    #[test]
    fn acc_examples() {
        let ctx = context(constant_gap_machine(3, 1), 1, &[], 3);
        assert_eq!(acc_stage_search(&ctx, DEFAULT_MAX_CANDIDATES).unwrap().found, Some(vec![]));
        let ctx = context(counting_machine(3, CountKind::Acc), 1, &["000"], 3);
        let out = acc_stage_search(&ctx, DEFAULT_MAX_CANDIDATES).unwrap();
        assert_eq!(out.found, Some(vec![Word::from("001"), Word::from("010")]));
        assert!(out.t.contains(&Word::from("000")));
    }

    #[test]
    fn or_machine_has_no_stage_set() {
        let ctx = context(or_machine(3), 1, &[], 3);
        let out = acc_stage_search(&ctx, DEFAULT_MAX_CANDIDATES).unwrap();
        assert_eq!(out.found, None);
        assert!(!out.verified);
        assert!(out.conditions.iter().any(|c| !c.holds));
        assert_eq!(out.candidates_checked, 1 + 8 + 28);
    }

    #[test]
    fn errors() {
        let ctx = context(or_machine(3), 0, &[], 3);
        assert!(matches!(acc_stage_search(&ctx, 100), Err(Error::Precondition(_))));
        let ctx = context(or_machine(3), 1, &[], 3);
        assert_eq!(acc_stage_search(&ctx, 5), Err(Error::Budget { limit: 5 }));
    }

    #[test]
    fn large_lengths_meet_the_conditions() {
        let mut ctx = context(constant_gap_machine(3, 1), 1, &[], 3);
        ctx.p = NatPoly::constant(2);
        ctx.nj = 10;
        assert!(acc_conditions(&ctx).iter().all(|c| c.holds));
        ctx.r = NatPoly::constant(16);
        ctx.nj = 7;
        let g = gap_conditions(&ctx);
        assert!(g.iter().all(|c| c.holds), "{g:?}");
        ctx.prev = Some((NatPoly::n(), 8));
        assert!(!gap_conditions(&ctx)[0].holds);
    }
}
