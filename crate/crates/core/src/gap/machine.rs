use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gap::tree::{ChoiceTree, PathCounts};
use crate::natpoly::NatPoly;
use crate::word::{Domain, Word};

/// A nondeterministic machine given by its computation tree on every input of
/// a finite domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMachine")]
pub struct BaseMachine {
    name: String,
    domain: Domain,
    time_bound: NatPoly,
    trees: BTreeMap<Word, ChoiceTree>,
}

#[derive(Deserialize)]
struct RawMachine {
    name: String,
    domain: Domain,
    time_bound: NatPoly,
    trees: BTreeMap<Word, ChoiceTree>,
}

impl TryFrom<RawMachine> for BaseMachine {
    type Error = Error;

    fn try_from(raw: RawMachine) -> Result<Self> {
        BaseMachine::new(raw.name, raw.domain, raw.time_bound, raw.trees)
    }
}

impl BaseMachine {
    /// Checks totality over the domain and the time bound on every tree.
    pub fn new(
        name: impl Into<String>,
        domain: Domain,
        time_bound: NatPoly,
        trees: BTreeMap<Word, ChoiceTree>,
    ) -> Result<Self> {
        let name = name.into();
        for x in domain.words() {
            let tree = trees.get(&x).ok_or_else(|| {
                Error::InvalidMachine(format!("{name}: no computation tree for input {x:?}"))
            })?;
            let depth = tree.depth() as u64;
            let bound = time_bound.eval(x.len() as u64);
            if depth > bound {
                return Err(Error::InvalidMachine(format!(
                    "{name}: depth {depth} on {x:?} exceeds time bound {bound}"
                )));
            }
        }
        if let Some(stray) = trees.keys().find(|w| !domain.contains(w)) {
            return Err(Error::InvalidMachine(format!(
                "{name}: tree for {stray:?} lies outside the domain"
            )));
        }
        Ok(BaseMachine {
            name,
            domain,
            time_bound,
            trees,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn time_bound(&self) -> &NatPoly {
        &self.time_bound
    }

    pub fn trees(&self) -> &BTreeMap<Word, ChoiceTree> {
        &self.trees
    }

    pub fn tree(&self, x: &Word) -> Result<&ChoiceTree> {
        self.trees
            .get(x)
            .ok_or_else(|| Error::Domain(format!("{x} (machine {})", self.name)))
    }

    pub fn counts(&self, x: &Word) -> Result<PathCounts> {
        Ok(self.tree(x)?.enumerate_paths())
    }

    pub fn gap(&self, x: &Word) -> Result<BigInt> {
        Ok(self.counts(x)?.gap())
    }

    /// A machine whose gap equals this machine's accepting-path count.
    pub fn acceptance_machine(&self) -> BaseMachine {
        let trees = self
            .trees
            .iter()
            .map(|(x, t)| (x.clone(), t.acceptance_gap()))
            .collect();
        let mut bound = self.time_bound.coeffs().to_vec();
        if bound.is_empty() {
            bound.push(0);
        }
        bound[0] += 1;
        BaseMachine {
            name: format!("acc({})", self.name),
            domain: self.domain.clone(),
            time_bound: NatPoly::new(bound),
            trees,
        }
    }
}
