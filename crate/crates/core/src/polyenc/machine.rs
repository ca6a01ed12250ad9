//! Nondeterministic oracle machines as explicit trees with query nodes.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::natpoly::NatPoly;
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OracleTree(Arc<OracleNode>);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleNode {
    Accept,
    Reject,
    Choice(OracleTree, OracleTree),
    Query {
        word: Word,
        yes: OracleTree,
        no: OracleTree,
    },
}

impl OracleTree {
    pub fn accept() -> Self {
        OracleTree(Arc::new(OracleNode::Accept))
    }

    pub fn reject() -> Self {
        OracleTree(Arc::new(OracleNode::Reject))
    }

    pub fn choice(left: OracleTree, right: OracleTree) -> Self {
        OracleTree(Arc::new(OracleNode::Choice(left, right)))
    }

    pub fn query(word: impl Into<Word>, yes: OracleTree, no: OracleTree) -> Self {
        OracleTree(Arc::new(OracleNode::Query {
            word: word.into(),
            yes,
            no,
        }))
    }

    pub fn node(&self) -> &OracleNode {
        &self.0
    }

    /// Steps on the longest path; choices and queries both count.
    pub fn depth(&self) -> usize {
        match self.node() {
            OracleNode::Accept | OracleNode::Reject => 0,
            OracleNode::Choice(l, r) => 1 + l.depth().max(r.depth()),
            OracleNode::Query { yes, no, .. } => 1 + yes.depth().max(no.depth()),
        }
    }

    /// Gap of the machine run with `oracle`, answering each query directly.
    pub fn gap_with(&self, oracle: &BTreeSet<Word>) -> BigInt {
        match self.node() {
            OracleNode::Accept => BigInt::from(1),
            OracleNode::Reject => BigInt::from(-1),
            OracleNode::Choice(l, r) => l.gap_with(oracle) + r.gap_with(oracle),
            OracleNode::Query { word, yes, no } => {
                if oracle.contains(word) {
                    yes.gap_with(oracle)
                } else {
                    no.gap_with(oracle)
                }
            }
        }
    }

    /// Accepting paths under `oracle`.
    pub fn acc_with(&self, oracle: &BTreeSet<Word>) -> u64 {
        match self.node() {
            OracleNode::Accept => 1,
            OracleNode::Reject => 0,
            OracleNode::Choice(l, r) => l.acc_with(oracle) + r.acc_with(oracle),
            OracleNode::Query { word, yes, no } => {
                if oracle.contains(word) {
                    yes.acc_with(oracle)
                } else {
                    no.acc_with(oracle)
                }
            }
        }
    }
}

mod bits {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[bool], s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<bool>, D::Error> {
        let s = String::deserialize(d)?;
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(serde::de::Error::custom("choice bits must be 0 or 1")),
            })
            .collect()
    }
}

/// A root-to-leaf traversal: nondeterministic choice bits (`true` = right)
/// and the queries answered yes / no.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ComputationPath {
    #[serde(with = "bits")]
    pub choices: Vec<bool>,
    pub qplus: BTreeSet<Word>,
    pub qminus: BTreeSet<Word>,
}

impl ComputationPath {
    /// The path is taken under `oracle` iff every yes-query is in it and no
    /// no-query is.
    pub fn consistent_with(&self, oracle: &BTreeSet<Word>) -> bool {
        self.qplus.is_subset(oracle) && self.qminus.is_disjoint(oracle)
    }

    pub fn query_count(&self) -> usize {
        self.qplus.len() + self.qminus.len()
    }
}

/// A path with its leaf sign (`+1` accept, `-1` reject).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedPath {
    pub path: ComputationPath,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawOracleMachine")]
pub struct OracleMachine {
    name: String,
    time_bound: NatPoly,
    universe: Vec<Word>,
    trees: BTreeMap<Word, OracleTree>,
}

#[derive(Deserialize)]
struct RawOracleMachine {
    name: String,
    time_bound: NatPoly,
    universe: Vec<Word>,
    trees: BTreeMap<Word, OracleTree>,
}

impl TryFrom<RawOracleMachine> for OracleMachine {
    type Error = Error;

    fn try_from(raw: RawOracleMachine) -> Result<Self> {
        OracleMachine::new(raw.name, raw.time_bound, raw.universe, raw.trees)
    }
}

impl OracleMachine {
    /// Checks tree depths against the time bound and that the universe has
    /// no repeats.
    pub fn new(
        name: impl Into<String>,
        time_bound: NatPoly,
        universe: Vec<Word>,
        trees: BTreeMap<Word, OracleTree>,
    ) -> Result<Self> {
        let name = name.into();
        let distinct: BTreeSet<&Word> = universe.iter().collect();
        if distinct.len() != universe.len() {
            return Err(Error::InvalidMachine(format!("{name}: repeated universe string")));
        }
        for (x, t) in &trees {
            let bound = time_bound.eval(x.len() as u64);
            if t.depth() as u64 > bound {
                return Err(Error::InvalidMachine(format!(
                    "{name}: tree on {x:?} has depth {} > t(|x|) = {bound}",
                    t.depth()
                )));
            }
        }
        Ok(OracleMachine {
            name,
            time_bound,
            universe,
            trees,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn time_bound(&self) -> &NatPoly {
        &self.time_bound
    }

    pub fn universe(&self) -> &[Word] {
        &self.universe
    }

    pub fn inputs(&self) -> impl Iterator<Item = &Word> {
        self.trees.keys()
    }

    pub fn tree(&self, x: &Word) -> Result<&OracleTree> {
        self.trees
            .get(x)
            .ok_or_else(|| Error::Domain(format!("{}: no tree for input {x:?}", self.name)))
    }

    pub fn gap_with(&self, x: &Word, oracle: &BTreeSet<Word>) -> Result<BigInt> {
        Ok(self.tree(x)?.gap_with(oracle))
    }

    pub fn acc_with(&self, x: &Word, oracle: &BTreeSet<Word>) -> Result<u64> {
        Ok(self.tree(x)?.acc_with(oracle))
    }

    /// Every traversal achievable under some oracle, in left-to-right order
    /// with the yes branch first.
    pub fn valid_paths(&self, x: &Word) -> Result<Vec<SignedPath>> {
        fn go(t: &OracleTree, cur: &mut ComputationPath, out: &mut Vec<SignedPath>) -> Result<()> {
            match t.node() {
                OracleNode::Accept | OracleNode::Reject => {
                    out.push(SignedPath {
                        path: cur.clone(),
                        sign: if matches!(t.node(), OracleNode::Accept) { 1 } else { -1 },
                    });
                }
                OracleNode::Choice(l, r) => {
                    for (bit, sub) in [(false, l), (true, r)] {
                        cur.choices.push(bit);
                        go(sub, cur, out)?;
                        cur.choices.pop();
                    }
                }
                OracleNode::Query { word, yes, no } => {
                    if cur.qplus.contains(word) || cur.qminus.contains(word) {
                        return Err(Error::ModelViolation(format!(
                            "{word:?} queried twice on one path"
                        )));
                    }
                    cur.qplus.insert(word.clone());
                    go(yes, cur, out)?;
                    cur.qplus.remove(word);
                    cur.qminus.insert(word.clone());
                    go(no, cur, out)?;
                    cur.qminus.remove(word);
                }
            }
            Ok(())
        }
        let mut out = Vec::new();
        let mut cur = ComputationPath {
            choices: Vec::new(),
            qplus: BTreeSet::new(),
            qminus: BTreeSet::new(),
        };
        go(self.tree(x)?, &mut cur, &mut out)?;
        Ok(out)
    }

    /// The computation paths of `N^oracle(x)`: valid paths consistent with
    /// `oracle`.
    pub fn paths_under(&self, x: &Word, oracle: &BTreeSet<Word>) -> Result<Vec<SignedPath>> {
        Ok(self
            .valid_paths(x)?
            .into_iter()
            .filter(|p| p.path.consistent_with(oracle))
            .collect())
    }
}
