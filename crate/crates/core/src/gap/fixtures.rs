//! Seeded random fixtures: machines with prescribed gaps, random closure
//! programs, and promise instances for the collapse compilers.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::gap::fp::{FpFunc, IndexRange};
use crate::gap::machine::BaseMachine;
use crate::gap::program::GapProgram;
use crate::gap::target::{TargetMode, TargetSpec, TwoSidedTargetSpec};
use crate::gap::tree::{ChoiceTree, Node};
use crate::natpoly::NatPoly;
use crate::word::{pair, Domain, StrMap, Word};

/// A tree with gap `v`, padded by `noise` gap-neutral splices at random
/// leaves so that shapes vary between fixtures.
pub fn tree_with_gap<R: Rng>(rng: &mut R, v: &BigInt, noise: usize) -> ChoiceTree {
    let mut t = ChoiceTree::constant(v);
    for _ in 0..noise {
        t = splice(rng, &t);
    }
    t
}

fn splice<R: Rng>(rng: &mut R, t: &ChoiceTree) -> ChoiceTree {
    match t.node() {
        Node::Choice(l, r) => {
            if rng.gen_bool(0.5) {
                ChoiceTree::choice(splice(rng, l), r.clone())
            } else {
                ChoiceTree::choice(l.clone(), splice(rng, r))
            }
        }
        _ => {
            let pad = ChoiceTree::choice(ChoiceTree::accept(), ChoiceTree::reject());
            if rng.gen_bool(0.5) {
                ChoiceTree::choice(t.clone(), pad)
            } else {
                ChoiceTree::choice(pad, t.clone())
            }
        }
    }
}

/// A machine over `domain` whose gap on `x` is `gap(x)`. The time bound is
/// the smallest constant covering every tree.
pub fn machine_with_gaps<R: Rng>(
    rng: &mut R,
    name: &str,
    domain: &Domain,
    mut gap: impl FnMut(&mut R, &Word) -> BigInt,
) -> BaseMachine {
    let mut trees = BTreeMap::new();
    for x in domain.words() {
        let v = gap(rng, &x);
        let noise = rng.gen_range(0..4);
        trees.insert(x, tree_with_gap(rng, &v, noise));
    }
    let depth = trees.values().map(ChoiceTree::depth).max().unwrap_or(0);
    BaseMachine::new(name, domain.clone(), NatPoly::constant(depth as u64), trees)
        .expect("generated machine is total and within its bound")
}

pub fn random_machine<R: Rng>(rng: &mut R, domain: &Domain, lo: i64, hi: i64) -> BaseMachine {
    machine_with_gaps(rng, "random", domain, |rng, _| BigInt::from(rng.gen_range(lo..=hi)))
}

fn small_poly<R: Rng>(rng: &mut R, allow_n: bool) -> NatPoly {
    if allow_n && rng.gen_bool(0.3) {
        NatPoly::n()
    } else {
        NatPoly::constant(rng.gen_range(0..=3))
    }
}

fn random_range<R: Rng>(rng: &mut R) -> IndexRange {
    if rng.gen_bool(0.5) {
        IndexRange::From0
    } else {
        IndexRange::From1
    }
}

/// A closed-form FP function valid on inputs nested in `pairs` layers of
/// pairing around a domain word.
fn random_fp<R: Rng>(rng: &mut R, pairs: usize) -> FpFunc {
    let c = FpFunc::constant(rng.gen_range(-3..=3));
    match rng.gen_range(0..4) {
        0 => c,
        1 => FpFunc::len().sub(FpFunc::constant(rng.gen_range(0..=4))),
        2 if pairs > 0 => FpFunc::Index.sub(FpFunc::constant(rng.gen_range(0..=2))),
        _ => c.mul(FpFunc::Len(StrMap::Unary)).add(FpFunc::constant(1)),
    }
}

/// Random program of height at most `depth`, valid on every word of the
/// machines' domain. Products keep small bounds so realized trees stay
/// tractable.
pub fn random_program<R: Rng>(rng: &mut R, domain: &Domain, depth: usize) -> GapProgram {
    gen_program(rng, domain, depth, 0, true)
}

fn gen_program<R: Rng>(
    rng: &mut R,
    domain: &Domain,
    depth: usize,
    pairs: usize,
    allow_n: bool,
) -> GapProgram {
    if depth <= 1 {
        return if pairs == 0 && rng.gen_bool(0.6) {
            GapProgram::base(random_machine(rng, domain, -3, 3))
        } else {
            GapProgram::constant(random_fp(rng, pairs))
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..8) {
        0 => gen_program(rng, domain, d, pairs, allow_n).neg(),
        1 => gen_program(rng, domain, d, pairs, allow_n)
            .add(gen_program(rng, domain, d, pairs, allow_n)),
        2 => gen_program(rng, domain, d, pairs, allow_n)
            .sub(gen_program(rng, domain, d, pairs, allow_n)),
        3 => gen_program(rng, domain, d, pairs, allow_n)
            .mul(gen_program(rng, domain, d, pairs, allow_n)),
        4 => GapProgram::PolyProd {
            bound: small_poly(rng, allow_n),
            range: random_range(rng),
            child: Box::new(gen_program(rng, domain, d, pairs + 1, false)),
        },
        5 if pairs > 0 => gen_program(rng, domain, d, pairs - 1, allow_n).compose(StrMap::First),
        6 if pairs == 0 => gen_program(rng, domain, d, 0, allow_n).compose(StrMap::Unary),
        _ => gen_program(rng, domain, 1, pairs, allow_n),
    }
}

/// A promise instance: a program, its target list, and the language the
/// program is promised to decide.
#[derive(Debug, Clone)]
pub struct PromiseFixture<S> {
    pub g: GapProgram,
    pub spec: S,
    pub language: BTreeSet<Word>,
}

impl<S> PromiseFixture<S> {
    pub fn member(&self, x: &Word) -> bool {
        self.language.contains(x)
    }
}

fn nonzero<R: Rng>(rng: &mut R, bound: i64) -> BigInt {
    let v = rng.gen_range(1..=bound);
    BigInt::from(if rng.gen_bool(0.5) { v } else { -v })
}

fn random_language<R: Rng>(rng: &mut R, domain: &Domain) -> BTreeSet<Word> {
    domain.words().into_iter().filter(|_| rng.gen_bool(0.5)).collect()
}

/// Length-indexed targets with multiplicity `r`, nonzero values from
/// `-9..=9` stored in a table keyed by `⟨0^ℓ, i⟩`; the machine's gap is 0 off
/// the language and a uniformly chosen target on it.
pub fn lwpp_fixture<R: Rng>(
    rng: &mut R,
    domain: &Domain,
    r: &NatPoly,
) -> PromiseFixture<TargetSpec> {
    let mut entries = BTreeMap::new();
    for len in 0..=domain.max_len {
        for i in 1..=r.eval(len as u64) {
            entries.insert(pair(&Word::zeros(len), i), nonzero(rng, 9));
        }
    }
    let spec = TargetSpec::new(TargetMode::Length, FpFunc::table(entries), r.clone());
    let language = random_language(rng, domain);
    let machine = machine_with_gaps(rng, "lwpp", domain, |rng, x| {
        if language.contains(x) {
            let targets = spec.targets(x).expect("table covers the domain");
            targets.choose(rng).cloned().unwrap_or_default()
        } else {
            BigInt::from(0)
        }
    });
    PromiseFixture {
        g: GapProgram::base(machine),
        spec,
        language,
    }
}

/// Disjoint length-indexed acceptance and rejection lists drawn from the two
/// halves of a shuffled `-8..=8`; the rejection list may contain 0.
pub fn two_sided_fixture<R: Rng>(
    rng: &mut R,
    domain: &Domain,
    r_accept: &NatPoly,
    r_reject: &NatPoly,
) -> PromiseFixture<TwoSidedTargetSpec> {
    let mut acc = BTreeMap::new();
    let mut rej = BTreeMap::new();
    for len in 0..=domain.max_len {
        let mut pool: Vec<i64> = (-8..=8).collect();
        pool.shuffle(rng);
        let split = rng.gen_range(1..pool.len());
        let (a, b) = pool.split_at(split);
        let key = Word::zeros(len);
        for i in 1..=r_accept.eval(len as u64) {
            acc.insert(pair(&key, i), BigInt::from(*a.choose(rng).unwrap()));
        }
        for i in 1..=r_reject.eval(len as u64) {
            rej.insert(pair(&key, i), BigInt::from(*b.choose(rng).unwrap()));
        }
    }
    let spec = TwoSidedTargetSpec::new(
        TargetSpec::new(TargetMode::Length, FpFunc::table(acc), r_accept.clone()),
        TargetSpec::new(TargetMode::Length, FpFunc::table(rej), r_reject.clone()),
    );
    let language = random_language(rng, domain);
    let machine = machine_with_gaps(rng, "two-sided", domain, |rng, x| {
        let side = if language.contains(x) {
            &spec.accept
        } else {
            &spec.reject
        };
        let targets = side.targets(x).expect("table covers the domain");
        targets.choose(rng).cloned().unwrap_or_default()
    });
    PromiseFixture {
        g: GapProgram::base(machine),
        spec,
        language,
    }
}

/// A machine with small accepting-path counts and input-indexed targets in
/// `0..=6`; about half the inputs get a target equal to their count.
/// The language is left empty: C=P membership is computed from the counts.
pub fn ceqp_fixture<R: Rng>(
    rng: &mut R,
    domain: &Domain,
    r: &NatPoly,
) -> (BaseMachine, TargetSpec) {
    let mut trees = BTreeMap::new();
    let mut entries = BTreeMap::new();
    for x in domain.words() {
        let acc = rng.gen_range(0..=5u32);
        let rej = rng.gen_range(0..=3u32);
        let mut t = ChoiceTree::constant(&BigInt::from(acc)).sum(&ChoiceTree::constant(&-BigInt::from(rej)));
        if acc == 0 {
            t = ChoiceTree::constant(&-BigInt::from(rej + 1));
        }
        let bound = r.eval(x.len() as u64);
        let hit = rng.gen_bool(0.5);
        let slot = if bound > 0 { rng.gen_range(1..=bound) } else { 0 };
        for i in 1..=bound {
            let v = if hit && i == slot {
                acc as i64
            } else {
                let mut v = rng.gen_range(0..=6);
                while v == acc as i64 {
                    v = rng.gen_range(0..=6);
                }
                v
            };
            entries.insert(pair(&x, i), BigInt::from(v));
        }
        trees.insert(x, t);
    }
    let depth = trees.values().map(ChoiceTree::depth).max().unwrap_or(0);
    let machine = BaseMachine::new("ceqp", domain.clone(), NatPoly::constant(depth as u64), trees)
        .expect("generated machine is total and within its bound");
    (
        machine,
        TargetSpec::new(TargetMode::Input, FpFunc::table(entries), r.clone()),
    )
}
