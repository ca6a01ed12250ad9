//! Realization of gap programs as base machines: every closure combinator is
//! carried out as a transformation on computation trees.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::gap::machine::BaseMachine;
use crate::gap::program::GapProgram;
use crate::gap::tree::ChoiceTree;
use crate::natpoly::NatPoly;
use crate::word::{pair, Domain, Word};

/// The computation tree the realized machine runs on `x`.
pub fn realize_at(prog: &GapProgram, x: &Word) -> Result<ChoiceTree> {
    Ok(match prog {
        GapProgram::Base(m) => m.tree(x)?.clone(),
        GapProgram::Const(f) => ChoiceTree::constant(&f.eval(x)?),
        GapProgram::Neg(a) => realize_at(a, x)?.negated(),
        GapProgram::Add(a, b) => realize_at(a, x)?.sum(&realize_at(b, x)?),
        GapProgram::Sub(a, b) => realize_at(a, x)?.sum(&realize_at(b, x)?.negated()),
        GapProgram::Mul(a, b) => realize_at(a, x)?.product(&realize_at(b, x)?),
        GapProgram::PolyProd {
            bound,
            range,
            child,
        } => {
            // The empty product is the constant-1 tree.
            let mut acc = ChoiceTree::accept();
            for i in range.indices(bound.eval(x.len() as u64)) {
                acc = acc.product(&realize_at(child, &pair(x, i))?);
            }
            acc
        }
        GapProgram::Compose(child, m) => realize_at(child, &m.apply(x)?)?,
    })
}

/// Builds a machine over `domain` whose gap agrees with `prog` on every
/// domain input. Its time bound is the constant maximum realized depth.
pub fn realize(prog: &GapProgram, domain: &Domain) -> Result<BaseMachine> {
    let mut trees = BTreeMap::new();
    let mut depth = 0;
    for x in domain.words() {
        let t = realize_at(prog, &x)?;
        depth = depth.max(t.depth());
        trees.insert(x, t);
    }
    BaseMachine::new(
        "realized",
        domain.clone(),
        NatPoly::constant(depth as u64),
        trees,
    )
}
