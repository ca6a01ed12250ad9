//! Stage fixtures at small `n_j`.

use std::collections::{BTreeMap, BTreeSet};

use crate::diagonalize::det::DetOracleMachine;
use crate::diagonalize::stage::StageContext;
use crate::natpoly::NatPoly;
use crate::polyenc::{OracleMachine, OracleTree};
use crate::word::{Domain, Word};

fn strings(nj: usize) -> Vec<Word> {
    Domain::binary(nj).words_of_length(nj)
}

fn balanced(mut parts: Vec<OracleTree>) -> OracleTree {
    while parts.len() > 1 {
        parts = parts
            .chunks(2)
            .map(|c| match c {
                [l, r] => OracleTree::choice(l.clone(), r.clone()),
                [one] => one.clone(),
                _ => unreachable!(),
            })
            .collect();
    }
    parts.pop().unwrap_or_else(OracleTree::reject)
}

fn machine(name: &str, nj: usize, tree: OracleTree) -> OracleMachine {
    OracleMachine::new(
        name,
        NatPoly::constant(tree.depth() as u64),
        strings(nj),
        BTreeMap::from([(Word::zeros(nj), tree)]),
    )
    .expect("depth equals bound")
}

/// Ignores the oracle; gap `g` (and `max(g, 0)` accepting paths).
pub fn constant_gap_machine(nj: usize, g: i64) -> OracleMachine {
    let tree = if g == 0 {
        OracleTree::choice(OracleTree::accept(), OracleTree::reject())
    } else {
        let leaf = if g > 0 { OracleTree::accept() } else { OracleTree::reject() };
        balanced(vec![leaf; g.unsigned_abs() as usize])
    };
    machine("constant", nj, tree)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountKind {
    /// gap = number of oracle strings of length `n_j`.
    Gap,
    /// accepting paths = that number.
    Acc,
}

/// One branch per string of length `n_j`, accepting when it is in the
/// oracle. On a miss the branch is gap-neutral (`Gap`) or rejects (`Acc`).
pub fn counting_machine(nj: usize, kind: CountKind) -> OracleMachine {
    let parts = strings(nj)
        .into_iter()
        .map(|w| {
            let miss = match kind {
                CountKind::Gap => OracleTree::choice(OracleTree::accept(), OracleTree::reject()),
                CountKind::Acc => OracleTree::reject(),
            };
            OracleTree::query(w, OracleTree::accept(), miss)
        })
        .collect();
    machine("counting", nj, balanced(parts))
}

/// Queries the strings of length `n_j` in order and accepts at the first
/// one in the oracle: exactly one accepting path whenever `B^{=n_j} ≠ ∅`.
pub fn or_machine(nj: usize) -> OracleMachine {
    let tree = strings(nj)
        .into_iter()
        .rev()
        .fold(OracleTree::reject(), |rest, w| OracleTree::query(w, OracleTree::accept(), rest));
    machine("or", nj, tree)
}

/// For the `k`-th string `α`, three accepting paths under `{α}`, two of
/// which query the next string and one the string after, rejecting if it
/// is present.
pub fn triple_machine(nj: usize) -> OracleMachine {
    let ws = strings(nj);
    let len = ws.len();
    let kill = |w: &Word| OracleTree::query(w.clone(), OracleTree::reject(), OracleTree::accept());
    let parts = (0..len)
        .map(|k| {
            let next = &ws[(k + 1) % len];
            let after = &ws[(k + 2) % len];
            let yes = OracleTree::choice(OracleTree::choice(kill(next), kill(after)), kill(next));
            OracleTree::query(ws[k].clone(), yes, OracleTree::reject())
        })
        .collect();
    machine("triple", nj, balanced(parts))
}

/// Stage context with `B_prev = ∅`, `M` outputting `val` after querying
/// `t`, `r(n) = n`, and `p` the machine's time bound.
pub fn context(n: OracleMachine, val: i64, t: &[&str], nj: usize) -> StageContext {
    let t: Vec<Word> = t.iter().map(|&w| Word::from(w)).collect();
    let m = DetOracleMachine::constant_after(Word::zeros(nj), val, &t);
    let p = n.time_bound().clone();
    StageContext::new(n, m, nj, BTreeSet::new(), NatPoly::n(), p, None)
        .expect("M has a tree on 0^nj")
}
