use std::collections::{BTreeMap, BTreeSet};

use gaplab::diagonalize::fixtures::*;
use gaplab::diagonalize::*;
use gaplab::polyenc::{OracleMachine, OracleNode, OracleTree};
use gaplab::{Domain, NatPoly, Word};
use itertools::Itertools;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sigma(n: usize) -> Vec<Word> {
    Domain::binary(n).words_of_length(n)
}

/// Random tree that never queries a string twice on one path. With
/// `guarded`, a leaf accepts only after some query was answered yes.
fn tree<R: Rng>(rng: &mut R, pool: &[Word], depth: usize, seen_yes: bool, guarded: bool) -> OracleTree {
    let leaf = |rng: &mut R| {
        if rng.gen_bool(0.6) && (seen_yes || !guarded) {
            OracleTree::accept()
        } else {
            OracleTree::reject()
        }
    };
    if depth == 0 || rng.gen_bool(0.15) {
        return leaf(rng);
    }
    if pool.is_empty() || rng.gen_bool(0.3) {
        return OracleTree::choice(
            tree(rng, pool, depth - 1, seen_yes, guarded),
            tree(rng, pool, depth - 1, seen_yes, guarded),
        );
    }
    let i = rng.gen_range(0..pool.len());
    let mut rest = pool.to_vec();
    let w = rest.remove(i);
    OracleTree::query(
        w,
        tree(rng, &rest, depth - 1, true, guarded),
        tree(rng, &rest, depth - 1, seen_yes, guarded),
    )
}

fn machine(seed: u64, depth: usize, guarded: bool) -> OracleMachine {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = tree(&mut rng, &sigma(3), depth, false, guarded);
    OracleMachine::new("rand", NatPoly::constant(depth as u64), sigma(3), BTreeMap::from([(Word::zeros(3), t)])).unwrap()
}

fn brute_gap(t: &OracleTree, oracle: &BTreeSet<Word>) -> i64 {
    match t.node() {
        OracleNode::Accept => 1,
        OracleNode::Reject => -1,
        OracleNode::Choice(l, r) => brute_gap(l, oracle) + brute_gap(r, oracle),
        OracleNode::Query { word, yes, no } => brute_gap(if oracle.contains(word) { yes } else { no }, oracle),
    }
}

fn brute_acc(t: &OracleTree, oracle: &BTreeSet<Word>) -> i64 {
    match t.node() {
        OracleNode::Accept => 1,
        OracleNode::Reject => 0,
        OracleNode::Choice(l, r) => brute_acc(l, oracle) + brute_acc(r, oracle),
        OracleNode::Query { word, yes, no } => brute_acc(if oracle.contains(word) { yes } else { no }, oracle),
    }
}

fn analysis(m: &OracleMachine) -> PathSetAnalysis {
    accepting_path_sets(m, &BTreeSet::new(), &sigma(3), &Word::zeros(3)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kills_are_exactly_negative_queries(seed in any::<u64>(), guarded in any::<bool>()) {
        let m = machine(seed, 6, guarded);
        let a = analysis(&m);
        for alpha in a.sets.keys() {
            for beta in a.sets.keys().filter(|b| *b != alpha) {
                prop_assert_eq!(a.killed(alpha, beta).unwrap(), a.killed_by_qminus(alpha, beta).unwrap());
            }
        }
    }

    #[test]
    fn sets_are_disjoint_when_base_rejects(seed in any::<u64>()) {
        let m = machine(seed, 6, true);
        let a = analysis(&m);
        prop_assert!(a.disjointness_applies());
        prop_assert!(a.pairwise_disjoint());
        for (alpha, s) in &a.sets {
            let mut o = BTreeSet::new();
            o.insert(alpha.clone());
            prop_assert_eq!(s.len() as i64, brute_acc(m.tree(&Word::zeros(3)).unwrap(), &o));
        }
    }

    #[test]
    fn conflicting_sets_are_bounded(seed in any::<u64>(), guarded in any::<bool>()) {
        let depth = 6;
        let m = machine(seed, depth, guarded);
        let a = analysis(&m);
        for (alpha, s) in &a.sets {
            let c = a.conflicting(alpha, s.len()).unwrap();
            prop_assert!(c.len() <= 3 * depth);
            prop_assert!(!c.contains(alpha));
        }
    }

    #[test]
    fn paths_under_an_oracle_have_distinct_choices(seed in any::<u64>(), mask in 0u32..256) {
        let m = machine(seed, 7, false);
        let o: BTreeSet<Word> = sigma(3).into_iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, w)| w).collect();
        let paths = m.paths_under(&Word::zeros(3), &o).unwrap();
        let choices: BTreeSet<_> = paths.iter().map(|p| &p.path.choices).collect();
        prop_assert_eq!(choices.len(), paths.len());
    }

    #[test]
    fn stage_search_matches_brute_force(seed in any::<u64>(), val in -3i64..4, acc in any::<bool>()) {
        prop_assume!(val != 0);
        let m = machine(seed, 6, false);
        let ctx = context(m.clone(), val, &["001"], 3);
        let t = m.tree(&Word::zeros(3)).unwrap();
        let pool: Vec<Word> = sigma(3).into_iter().filter(|w| w.as_str() != "001").collect();
        let max = if acc { 2 } else { 3 };
        let eval = |c: &Vec<Word>| {
            let o: BTreeSet<Word> = c.iter().cloned().collect();
            if acc { brute_acc(t, &o) } else { brute_gap(t, &o) }
        };
        let want = (0..=max)
            .flat_map(|k| pool.iter().cloned().combinations(k))
            .find(|c| if c.is_empty() { eval(c) != 0 } else { eval(c) != val });
        let out = if acc {
            acc_stage_search(&ctx, DEFAULT_MAX_CANDIDATES).unwrap()
        } else {
            gap_stage_search(&ctx, DEFAULT_MAX_CANDIDATES).unwrap()
        };
        prop_assert_eq!(&out.found, &want);
        prop_assert_eq!(out.verified, want.is_some());
        if let Some(c) = &want {
            prop_assert_eq!(out.value, Some(BigInt::from(eval(c))));
        }
    }
}

#[test]
fn triple_machine_pair_check() {
    let m = triple_machine(3);
    let a = analysis(&m);
    let check = pair_check(&a, 3, m.time_bound().eval(3)).unwrap();
    assert!(check.preconditions);
    assert!(check.consistent);
    assert_eq!(check.max_conflicting, 1);
    let (g1, g2) = check.witness.unwrap();
    assert!(check.witness_accepting.unwrap() >= 4, "{g1} {g2}");
}

#[test]
fn or_machine_cannot_be_broken_by_acc() {
    let ctx = context(or_machine(3), 1, &[], 3);
    let out = acc_stage_search(&ctx, DEFAULT_MAX_CANDIDATES).unwrap();
    assert_eq!(out.found, None);
    assert!(!out.verified);
    assert!(matches!(
        acc_stage_search(&ctx, 5),
        Err(gaplab::Error::Budget { limit: 5 })
    ));
}

#[test]
fn zero_val_is_a_precondition_error() {
    let ctx = context(counting_machine(3, CountKind::Gap), 0, &[], 3);
    assert!(matches!(
        gap_stage_search(&ctx, DEFAULT_MAX_CANDIDATES),
        Err(gaplab::Error::Precondition(_))
    ));
}
