//! Deterministic oracle machines computing an integer: query trees with
//! integer leaves.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::int_serde;
use crate::natpoly::NatPoly;
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DetTree(Arc<DetNode>);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DetNode {
    Value(#[serde(with = "int_serde::int")] BigInt),
    Query { word: Word, yes: DetTree, no: DetTree },
}

impl DetTree {
    pub fn value(v: impl Into<BigInt>) -> Self {
        DetTree(Arc::new(DetNode::Value(v.into())))
    }

    pub fn query(word: impl Into<Word>, yes: DetTree, no: DetTree) -> Self {
        DetTree(Arc::new(DetNode::Query {
            word: word.into(),
            yes,
            no,
        }))
    }

    pub fn depth(&self) -> usize {
        match &*self.0 {
            DetNode::Value(_) => 0,
            DetNode::Query { yes, no, .. } => 1 + yes.depth().max(no.depth()),
        }
    }

    /// Output and the strings queried, in query order.
    pub fn run(&self, oracle: &BTreeSet<Word>) -> (BigInt, Vec<Word>) {
        let mut t = self;
        let mut queried = Vec::new();
        loop {
            match &*t.0 {
                DetNode::Value(v) => return (v.clone(), queried),
                DetNode::Query { word, yes, no } => {
                    queried.push(word.clone());
                    t = if oracle.contains(word) { yes } else { no };
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDet")]
pub struct DetOracleMachine {
    name: String,
    time_bound: NatPoly,
    trees: BTreeMap<Word, DetTree>,
}

#[derive(Deserialize)]
struct RawDet {
    name: String,
    time_bound: NatPoly,
    trees: BTreeMap<Word, DetTree>,
}

impl TryFrom<RawDet> for DetOracleMachine {
    type Error = Error;

    fn try_from(raw: RawDet) -> Result<Self> {
        DetOracleMachine::new(raw.name, raw.time_bound, raw.trees)
    }
}

impl DetOracleMachine {
    pub fn new(
        name: impl Into<String>,
        time_bound: NatPoly,
        trees: BTreeMap<Word, DetTree>,
    ) -> Result<Self> {
        let name = name.into();
        for (x, t) in &trees {
            let bound = time_bound.eval(x.len() as u64);
            if t.depth() as u64 > bound {
                return Err(Error::InvalidMachine(format!(
                    "{name}: tree on {x:?} makes {} queries > t(|x|) = {bound}",
                    t.depth()
                )));
            }
        }
        Ok(DetOracleMachine {
            name,
            time_bound,
            trees,
        })
    }

    /// A machine that outputs `v` on `x` after querying `queries` in order.
    pub fn constant_after(x: Word, v: impl Into<BigInt>, queries: &[Word]) -> Self {
        let v = v.into();
        let tree = queries.iter().rev().fold(DetTree::value(v), |t, w| {
            DetTree::query(w.clone(), t.clone(), t)
        });
        let depth = queries.len() as u64;
        DetOracleMachine::new("const", NatPoly::constant(depth), BTreeMap::from([(x, tree)]))
            .expect("depth equals bound")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn time_bound(&self) -> &NatPoly {
        &self.time_bound
    }

    pub fn run(&self, x: &Word, oracle: &BTreeSet<Word>) -> Result<(BigInt, Vec<Word>)> {
        let t = self
            .trees
            .get(x)
            .ok_or_else(|| Error::Domain(format!("{}: no tree for input {x:?}", self.name)))?;
        Ok(t.run(oracle))
    }
}
