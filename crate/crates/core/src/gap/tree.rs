//! Bounded nondeterministic computation trees.
//!
//! Trees are immutable and share subtrees through `Arc`, so the machine
//! transformations (sign flip, grafting, products) stay linear in the number
//! of distinct nodes even when the number of root-to-leaf paths is
//! astronomically large. All traversals below memoize on node identity.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ChoiceTree(Arc<Node>);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Node {
    Accept,
    Reject,
    Choice(ChoiceTree, ChoiceTree),
}

/// Accepting and rejecting path counts.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathCounts {
    pub acc: BigUint,
    pub rej: BigUint,
}

impl PathCounts {
    pub fn gap(&self) -> BigInt {
        BigInt::from(self.acc.clone()) - BigInt::from(self.rej.clone())
    }

    pub fn leaves(&self) -> BigUint {
        &self.acc + &self.rej
    }
}

type Key = *const Node;

impl ChoiceTree {
    pub fn accept() -> Self {
        ChoiceTree(Arc::new(Node::Accept))
    }

    pub fn reject() -> Self {
        ChoiceTree(Arc::new(Node::Reject))
    }

    pub fn choice(left: ChoiceTree, right: ChoiceTree) -> Self {
        ChoiceTree(Arc::new(Node::Choice(left, right)))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    fn key(&self) -> Key {
        Arc::as_ptr(&self.0)
    }

    /// Counts accepting and rejecting root-to-leaf paths.
    pub fn enumerate_paths(&self) -> PathCounts {
        fn go(t: &ChoiceTree, memo: &mut HashMap<Key, PathCounts>) -> PathCounts {
            if let Some(c) = memo.get(&t.key()) {
                return c.clone();
            }
            let counts = match t.node() {
                Node::Accept => PathCounts {
                    acc: BigUint::one(),
                    rej: BigUint::zero(),
                },
                Node::Reject => PathCounts {
                    acc: BigUint::zero(),
                    rej: BigUint::one(),
                },
                Node::Choice(l, r) => {
                    let a = go(l, memo);
                    let b = go(r, memo);
                    PathCounts {
                        acc: a.acc + b.acc,
                        rej: a.rej + b.rej,
                    }
                }
            };
            memo.insert(t.key(), counts.clone());
            counts
        }
        go(self, &mut HashMap::new())
    }

    pub fn gap(&self) -> BigInt {
        self.enumerate_paths().gap()
    }

    /// Number of binary choices on the deepest path.
    pub fn depth(&self) -> usize {
        fn go(t: &ChoiceTree, memo: &mut HashMap<Key, usize>) -> usize {
            if let Some(&d) = memo.get(&t.key()) {
                return d;
            }
            let d = match t.node() {
                Node::Accept | Node::Reject => 0,
                Node::Choice(l, r) => 1 + go(l, memo).max(go(r, memo)),
            };
            memo.insert(t.key(), d);
            d
        }
        go(self, &mut HashMap::new())
    }

    /// Distinct shared nodes.
    pub fn node_count(&self) -> usize {
        fn go(t: &ChoiceTree, seen: &mut std::collections::HashSet<Key>) {
            if !seen.insert(t.key()) {
                return;
            }
            if let Node::Choice(l, r) = t.node() {
                go(l, seen);
                go(r, seen);
            }
        }
        let mut seen = std::collections::HashSet::new();
        go(self, &mut seen);
        seen.len()
    }

    /// Swaps accept and reject labels, negating the gap.
    pub fn negated(&self) -> ChoiceTree {
        self.relabel(&ChoiceTree::reject(), &ChoiceTree::accept())
    }

    /// Replaces every accepting leaf by `on_accept` and every rejecting leaf
    /// by `on_reject`.
    pub fn relabel(&self, on_accept: &ChoiceTree, on_reject: &ChoiceTree) -> ChoiceTree {
        fn go(
            t: &ChoiceTree,
            on_accept: &ChoiceTree,
            on_reject: &ChoiceTree,
            memo: &mut HashMap<Key, ChoiceTree>,
        ) -> ChoiceTree {
            if let Some(done) = memo.get(&t.key()) {
                return done.clone();
            }
            let out = match t.node() {
                Node::Accept => on_accept.clone(),
                Node::Reject => on_reject.clone(),
                Node::Choice(l, r) => ChoiceTree::choice(
                    go(l, on_accept, on_reject, memo),
                    go(r, on_accept, on_reject, memo),
                ),
            };
            memo.insert(t.key(), out.clone());
            out
        }
        go(self, on_accept, on_reject, &mut HashMap::new())
    }

    /// `Choice(self, other)`: gaps add.
    pub fn sum(&self, other: &ChoiceTree) -> ChoiceTree {
        ChoiceTree::choice(self.clone(), other.clone())
    }

    /// Grafts `other` under every leaf of `self`; a combined leaf accepts iff
    /// the two leaf signs agree, so gaps multiply.
    pub fn product(&self, other: &ChoiceTree) -> ChoiceTree {
        self.relabel(other, &other.negated())
    }

    /// A tree with gap exactly `v`: `|v|` leaves of sign `v` arranged as a
    /// near-balanced tree, or a single balanced accept/reject pair for `0`.
    pub fn constant(v: &BigInt) -> ChoiceTree {
        if v.is_zero() {
            return ChoiceTree::choice(ChoiceTree::accept(), ChoiceTree::reject());
        }
        let leaf = if v.is_positive() {
            ChoiceTree::accept()
        } else {
            ChoiceTree::reject()
        };
        let mut memo: HashMap<BigUint, ChoiceTree> = HashMap::new();
        memo.insert(BigUint::one(), leaf);
        fn go(k: &BigUint, memo: &mut HashMap<BigUint, ChoiceTree>) -> ChoiceTree {
            if let Some(t) = memo.get(k) {
                return t.clone();
            }
            let (half, rem) = k.div_rem(&BigUint::from(2u8));
            let big = go(&(&half + rem), memo);
            let small = go(&half, memo);
            let t = ChoiceTree::choice(big, small);
            memo.insert(k.clone(), t.clone());
            t
        }
        go(&v.magnitude().clone(), &mut memo)
    }

    /// Replaces every rejecting leaf by a balanced pair, so the gap of the
    /// result equals the accepting-path count of `self`.
    pub fn acceptance_gap(&self) -> ChoiceTree {
        let balanced = ChoiceTree::choice(ChoiceTree::accept(), ChoiceTree::reject());
        self.relabel(&ChoiceTree::accept(), &balanced)
    }
}
