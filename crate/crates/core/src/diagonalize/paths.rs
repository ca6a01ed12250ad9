//! Accepting-path sets `A_α` and conflicting sets.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyenc::{ComputationPath, OracleMachine};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Overlap {
    pub a: Word,
    pub b: Word,
    pub shared: usize,
}

/// `A_α` for every candidate `α`: the accepting computation paths of `N` on
/// `x` under `B ∪ {α}`, compared as full triples.
#[derive(Debug, Clone)]
pub struct PathSetAnalysis {
    pub machine: OracleMachine,
    pub input: Word,
    pub base: BTreeSet<Word>,
    /// Accepting paths under `B` alone.
    pub base_accepting: usize,
    pub sets: BTreeMap<Word, BTreeSet<ComputationPath>>,
    /// Pairs of candidates whose sets intersect.
    pub overlaps: Vec<Overlap>,
}

impl PathSetAnalysis {
    /// Disjointness is only claimed when `N` under `B` accepts nothing.
    pub fn disjointness_applies(&self) -> bool {
        self.base_accepting == 0
    }

    pub fn pairwise_disjoint(&self) -> bool {
        self.overlaps.is_empty()
    }

    fn set(&self, alpha: &Word) -> Result<&BTreeSet<ComputationPath>> {
        self.sets
            .get(alpha)
            .ok_or_else(|| Error::Domain(format!("{alpha:?} is not a candidate")))
    }

    /// Paths of `A_α` that are not computation paths under `B ∪ {α, β}`,
    /// found by re-enumerating the paths under the larger oracle.
    pub fn killed(&self, alpha: &Word, beta: &Word) -> Result<usize> {
        let mut oracle = self.base.clone();
        oracle.insert(alpha.clone());
        oracle.insert(beta.clone());
        let alive: BTreeSet<ComputationPath> = self
            .machine
            .paths_under(&self.input, &oracle)?
            .into_iter()
            .map(|p| p.path)
            .collect();
        Ok(self.set(alpha)?.iter().filter(|p| !alive.contains(*p)).count())
    }

    /// Paths of `A_α` with `β ∈ Q⁻`.
    pub fn killed_by_qminus(&self, alpha: &Word, beta: &Word) -> Result<usize> {
        Ok(self.set(alpha)?.iter().filter(|p| p.qminus.contains(beta)).count())
    }

    /// Candidates `β ≠ α` killing at least `⌊val/3⌋ + 1` paths of `A_α`.
    /// Requires `|A_α| = val`.
    pub fn conflicting(&self, alpha: &Word, val: usize) -> Result<BTreeSet<Word>> {
        let a = self.set(alpha)?;
        if a.len() != val {
            return Err(Error::Precondition(format!(
                "|A_{alpha}| = {} but val = {val}",
                a.len()
            )));
        }
        let threshold = val / 3 + 1;
        let mut out = BTreeSet::new();
        for beta in self.sets.keys().filter(|b| *b != alpha) {
            if self.killed(alpha, beta)? >= threshold {
                out.insert(beta.clone());
            }
        }
        Ok(out)
    }

    /// Distinct `γ₁ < γ₂`, each outside the other's conflicting set.
    pub fn non_conflicting_pair(&self, val: usize) -> Result<Option<(Word, Word)>> {
        let mut conf = BTreeMap::new();
        for alpha in self.sets.keys() {
            conf.insert(alpha, self.conflicting(alpha, val)?);
        }
        for (g1, c1) in &conf {
            for (g2, c2) in &conf {
                if g1 < g2 && !c1.contains(*g2) && !c2.contains(*g1) {
                    return Ok(Some(((*g1).clone(), (*g2).clone())));
                }
            }
        }
        Ok(None)
    }
}

fn accepting(m: &OracleMachine, x: &Word, oracle: &BTreeSet<Word>) -> Result<BTreeSet<ComputationPath>> {
    Ok(m.paths_under(x, oracle)?
        .into_iter()
        .filter(|p| p.sign > 0)
        .map(|p| p.path)
        .collect())
}

pub fn accepting_path_sets(
    m: &OracleMachine,
    base: &BTreeSet<Word>,
    candidates: &[Word],
    x: &Word,
) -> Result<PathSetAnalysis> {
    let base_accepting = accepting(m, x, base)?.len();
    let mut sets = BTreeMap::new();
    for alpha in candidates {
        let mut oracle = base.clone();
        oracle.insert(alpha.clone());
        sets.insert(alpha.clone(), accepting(m, x, &oracle)?);
    }
    let mut overlaps = Vec::new();
    for (a, sa) in &sets {
        for (b, sb) in sets.range::<Word, _>((std::ops::Bound::Excluded(a), std::ops::Bound::Unbounded)) {
            let shared = sa.intersection(sb).count();
            if shared > 0 {
                overlaps.push(Overlap {
                    a: a.clone(),
                    b: b.clone(),
                    shared,
                });
            }
        }
    }
    Ok(PathSetAnalysis {
        machine: m.clone(),
        input: x.clone(),
        base: base.clone(),
        base_accepting,
        sets,
        overlaps,
    })
}

/// Cross-check of the pair argument on one stage: if every `A_α` has
/// exactly `val` paths and none accept under `B`, then any mutually
/// non-conflicting pair must give at least `2(val - ⌊val/3⌋)` accepting
/// paths under `B ∪ {γ₁, γ₂}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCheck {
    pub val: usize,
    pub preconditions: bool,
    pub max_conflicting: usize,
    pub time_bound: u64,
    pub witness: Option<(Word, Word)>,
    pub witness_accepting: Option<u64>,
    pub consistent: bool,
}

pub fn pair_check(analysis: &PathSetAnalysis, val: usize, time_bound: u64) -> Result<PairCheck> {
    let preconditions =
        analysis.disjointness_applies() && analysis.sets.values().all(|s| s.len() == val);
    if !preconditions {
        return Ok(PairCheck {
            val,
            preconditions,
            max_conflicting: 0,
            time_bound,
            witness: None,
            witness_accepting: None,
            consistent: true,
        });
    }
    let mut max_conflicting = 0;
    for alpha in analysis.sets.keys() {
        max_conflicting = max_conflicting.max(analysis.conflicting(alpha, val)?.len());
    }
    let witness = analysis.non_conflicting_pair(val)?;
    let witness_accepting = match &witness {
        Some((g1, g2)) => {
            let mut o = analysis.base.clone();
            o.insert(g1.clone());
            o.insert(g2.clone());
            Some(analysis.machine.acc_with(&analysis.input, &o)?)
        }
        None => None,
    };
    let bound_ok = max_conflicting as u64 <= 3 * time_bound;
    let witness_ok = witness_accepting.is_none_or(|a| a >= 2 * (val - val / 3) as u64);
    Ok(PairCheck {
        val,
        preconditions,
        max_conflicting,
        time_bound,
        witness,
        witness_accepting,
        consistent: bound_ok && witness_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagonalize::fixtures::*;

    fn w(s: &str) -> Word {
        Word::from(s)
    }

    #[test]
    fn no_queries_means_identical_sets() {
        let m = constant_gap_machine(2, 2);
        let a = accepting_path_sets(&m, &BTreeSet::new(), &[w("00"), w("01")], &w("00")).unwrap();
        assert!(!a.disjointness_applies());
        assert_eq!(a.overlaps.len(), 1);
        assert!(a.conflicting(&w("00"), 2).unwrap().is_empty());
    }

    #[test]
    fn membership_machine_has_singleton_sets() {
        let m = counting_machine(2, CountKind::Acc);
        let cands = m.universe().to_vec();
        let a = accepting_path_sets(&m, &BTreeSet::new(), &cands, &w("00")).unwrap();
        assert!(a.disjointness_applies() && a.pairwise_disjoint());
        assert!(a.sets.values().all(|s| s.len() == 1));
    }

    #[test]
    fn rejecting_machine_has_empty_sets() {
        let m = constant_gap_machine(2, -1);
        let a = accepting_path_sets(&m, &BTreeSet::new(), &[w("00"), w("11")], &w("00")).unwrap();
        assert!(a.sets.values().all(BTreeSet::is_empty));
    }

    #[test]
    fn single_path_killed_by_its_negative_query() {
        // A_01 is the single path that first finds "00" absent
        let m = or_machine(2);
        let a = accepting_path_sets(&m, &BTreeSet::new(), m.universe(), &w("00")).unwrap();
        assert_eq!(a.conflicting(&w("01"), 1).unwrap(), BTreeSet::from([w("00")]));
        assert!(matches!(a.conflicting(&w("01"), 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn threshold_two_of_three() {
        let m = triple_machine(3);
        let a = accepting_path_sets(&m, &BTreeSet::new(), m.universe(), &w("000")).unwrap();
        assert_eq!(a.killed_by_qminus(&w("000"), &w("001")).unwrap(), 2);
        assert!(a.conflicting(&w("000"), 3).unwrap().contains(&w("001")));
        assert!(!a.conflicting(&w("000"), 3).unwrap().contains(&w("010")));
        let check = pair_check(&a, 3, m.time_bound().eval(3)).unwrap();
        assert!(check.preconditions && check.consistent);
        assert!(check.witness_accepting.unwrap() >= 4);
    }
}
