//! Target-collapse compilers.
//!
//! Each compiler turns a gap function with a list of admissible acceptance
//! targets into one with a single target, via products of
//! `(target - gap)` factors.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::gap::fp::{FpFunc, IndexRange};
use crate::gap::machine::BaseMachine;
use crate::gap::program::{poly_product, GapProgram};
use crate::gap::target::{TargetMode, TargetSpec, TwoSidedTargetSpec};
use crate::natpoly::NatPoly;
use crate::word::{Domain, StrMap};

/// A single-target witness `(ĝ, f̂)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collapsed {
    pub ghat: GapProgram,
    pub fhat: FpFunc,
    pub mode: TargetMode,
}

impl Collapsed {
    /// `f̂` as a one-element target list. In length mode `f̂(x)` only depends
    /// on `|x|`, so reading it at the first pair component is enough.
    pub fn witness_spec(&self) -> TargetSpec {
        TargetSpec::new(
            self.mode,
            self.fhat.clone().apply(StrMap::First),
            NatPoly::constant(1),
        )
    }
}

fn collapse_indexed(
    g: &GapProgram,
    spec: &TargetSpec,
    domain: &Domain,
    mode: TargetMode,
) -> Result<Collapsed> {
    if spec.mode != mode {
        return Err(Error::InvalidSpec(format!(
            "expected {mode:?}-indexed targets, got {:?}",
            spec.mode
        )));
    }
    spec.check_nonzero(domain)?;

    let target_at_key = spec.f.clone().apply(mode.key_map());
    // h1(⟨x,i⟩) = f(key(x,i)) - g(x)
    let h1 = GapProgram::constant(target_at_key.clone()).sub(g.clone().compose(StrMap::First));
    let h2 = poly_product(h1, spec.r.clone(), IndexRange::From1);
    let target_product =
        FpFunc::product(target_at_key, spec.r.clone(), StrMap::Identity, IndexRange::From1);
    Ok(Collapsed {
        ghat: h2.sub(GapProgram::constant(target_product.clone())),
        fhat: target_product.neg(),
        mode,
    })
}

/// Length-indexed targets to a single length-indexed target.
pub fn collapse_lwpp(g: &GapProgram, spec: &TargetSpec, domain: &Domain) -> Result<Collapsed> {
    collapse_indexed(g, spec, domain, TargetMode::Length)
}

/// Input-indexed targets to a single input-indexed target.
pub fn collapse_wpp(g: &GapProgram, spec: &TargetSpec, domain: &Domain) -> Result<Collapsed> {
    collapse_indexed(g, spec, domain, TargetMode::Input)
}

/// Removes the rejection list: `ĝ(x) = ∏_j (f_R(key(x,j)) - g(x))`, and the
/// new acceptance targets are `f̂(key(x,i)) = ∏_j (f_R(key(x,j)) - f_A(key(x,i)))`
/// with the original acceptance multiplicity. The result has rejection gap 0
/// and can be fed to [`collapse_lwpp`] / [`collapse_wpp`].
pub fn collapse_two_sided(
    g: &GapProgram,
    spec: &TwoSidedTargetSpec,
    domain: &Domain,
) -> Result<(GapProgram, TargetSpec)> {
    let mode = spec.mode()?;
    spec.check_disjoint(domain)?;
    let reject_at_key = spec.reject.f.clone().apply(mode.key_map());
    let ghat = poly_product(
        GapProgram::constant(reject_at_key).sub(g.clone().compose(StrMap::First)),
        spec.reject.r.clone(),
        IndexRange::From1,
    );
    // Evaluated at a key ⟨a, i⟩; the product body sees ⟨⟨a, i⟩, j⟩.
    let body = spec
        .reject
        .f
        .clone()
        .apply(StrMap::map_first(StrMap::First))
        .sub(spec.accept.f.clone().apply(StrMap::First));
    let fhat = FpFunc::product(body, spec.reject.r.clone(), StrMap::First, IndexRange::From1);
    Ok((ghat, TargetSpec::new(mode, fhat, spec.accept.r.clone())))
}

/// `h₂(x) = ∏_i (f(key(x,i)) - acc(x))`, which vanishes exactly when the
/// accepting-path count hits a target.
pub fn collapse_ceqp(machine: &BaseMachine, spec: &TargetSpec) -> GapProgram {
    let acc = GapProgram::base(machine.acceptance_machine());
    let h1 = GapProgram::constant(spec.f.clone().apply(spec.mode.key_map()))
        .sub(acc.compose(StrMap::First));
    poly_product(h1, spec.r.clone(), IndexRange::From1)
}

/// Enumerates all nonzero integers: `i/2` for even `i`, `-(i+1)/2` otherwise.
/// `_n` is the length argument of the unary input, which the enumeration
/// ignores.
pub fn exp_target_enumerator(_n: u64, i: u64) -> Result<BigInt> {
    if i == 0 {
        return Err(Error::Domain("index 0 (indices start at 1)".into()));
    }
    Ok(if i.is_multiple_of(2) {
        BigInt::from(i / 2)
    } else {
        -BigInt::from(i / 2 + 1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{pair, Word};
    use std::collections::BTreeMap;

    fn targets_table(mode: TargetMode, x: &Word, values: &[i64]) -> FpFunc {
        let anchor = mode.anchor(x);
        let entries: BTreeMap<Word, BigInt> = values
            .iter()
            .enumerate()
            .map(|(k, &v)| (pair(&anchor, k as u64 + 1), BigInt::from(v)))
            .collect();
        FpFunc::table(entries)
    }

    fn g_const(v: i64) -> GapProgram {
        GapProgram::constant(FpFunc::constant(v))
    }

    #[test]
    fn lwpp_targets_three_and_five() {
        // f(⟨0^ℓ,i⟩) = 2i + 1 with r(1) = 2 gives targets {3, 5} at ℓ = 1
        let x = Word::from("1");
        let spec = TargetSpec::new(
            TargetMode::Length,
            FpFunc::constant(2).mul(FpFunc::Index).add(FpFunc::constant(1)),
            NatPoly::power_plus(1),
        );
        let d = Domain::binary(1);
        for (gv, expected) in [(3, -15), (0, 0), (5, -15)] {
            let c = collapse_lwpp(&g_const(gv), &spec, &d).unwrap();
            assert_eq!(c.ghat.eval_gap(&x).unwrap(), BigInt::from(expected), "g = {gv}");
            assert_eq!(c.fhat.eval(&x).unwrap(), BigInt::from(-15));
            assert_eq!(c.witness_spec().targets(&x).unwrap(), vec![BigInt::from(-15)]);
        }
        let table = targets_table(TargetMode::Length, &x, &[3, 5]);
        assert_eq!(table.eval(&pair(&Word::zeros(1), 2)).unwrap(), BigInt::from(5));
    }

    #[test]
    fn lwpp_rejects_zero_target() {
        let spec = TargetSpec::new(TargetMode::Length, FpFunc::Index.sub(FpFunc::constant(2)), NatPoly::power_plus(1));
        let err = collapse_lwpp(&g_const(0), &spec, &Domain::binary(2)).unwrap_err();
        assert!(matches!(err, Error::InvalidSpec(_)));
        assert!(collapse_wpp(&g_const(0), &spec, &Domain::binary(2)).is_err());
    }

    #[test]
    fn wpp_examples() {
        let x = Word::from("ab");
        let d = Domain {
            alphabet: vec!['a', 'b'],
            max_len: 2,
        };
        let single = TargetSpec::new(TargetMode::Input, FpFunc::constant(2), NatPoly::constant(1));
        let c = collapse_wpp(&g_const(2), &single, &d).unwrap();
        assert_eq!(c.ghat.eval_gap(&x).unwrap(), BigInt::from(-2));
        assert_eq!(c.fhat.eval(&x).unwrap(), BigInt::from(-2));
        let c0 = collapse_wpp(&g_const(0), &single, &d).unwrap();
        assert_eq!(c0.ghat.eval_gap(&x).unwrap(), BigInt::from(0));

        // targets {1, -1}: f(⟨x,i⟩) = 3 - 2i
        let pm = TargetSpec::new(
            TargetMode::Input,
            FpFunc::constant(3).sub(FpFunc::constant(2).mul(FpFunc::Index)),
            NatPoly::constant(2),
        );
        let c = collapse_wpp(&g_const(-1), &pm, &d).unwrap();
        assert_eq!(c.ghat.eval_gap(&x).unwrap(), BigInt::from(1));
        assert_eq!(c.fhat.eval(&x).unwrap(), BigInt::from(1));
    }

    #[test]
    fn two_sided_examples() {
        let d = Domain::binary(2);
        // f_R = {0, 1} as i - 1, f_A = {3}
        let spec = TwoSidedTargetSpec::new(
            TargetSpec::new(TargetMode::Length, FpFunc::constant(3), NatPoly::constant(1)),
            TargetSpec::new(TargetMode::Length, FpFunc::Index.sub(FpFunc::constant(1)), NatPoly::constant(2)),
        );
        let x = Word::from("10");
        for (gv, expected) in [(3, 6), (0, 0), (1, 0)] {
            let (ghat, fa) = collapse_two_sided(&g_const(gv), &spec, &d).unwrap();
            assert_eq!(ghat.eval_gap(&x).unwrap(), BigInt::from(expected));
            assert_eq!(fa.targets(&x).unwrap(), vec![BigInt::from(6)]);
        }
        let overlapping = TwoSidedTargetSpec::new(
            TargetSpec::new(TargetMode::Length, FpFunc::constant(1), NatPoly::constant(1)),
            spec.reject.clone(),
        );
        assert!(collapse_two_sided(&g_const(1), &overlapping, &d).is_err());
    }

    #[test]
    fn ceqp_examples() {
        use crate::gap::tree::ChoiceTree;
        let d = Domain::binary(1);
        let machine_with_acc = |acc: i64| {
            let trees = d
                .words()
                .into_iter()
                .map(|w| {
                    let t = ChoiceTree::constant(&BigInt::from(acc))
                        .sum(&ChoiceTree::reject());
                    (w, t)
                })
                .collect();
            BaseMachine::new("n", d.clone(), NatPoly::constant(8), trees).unwrap()
        };
        let two_four = TargetSpec::new(
            TargetMode::Input,
            FpFunc::constant(2).mul(FpFunc::Index),
            NatPoly::constant(2),
        );
        let x = Word::from("1");
        let h = collapse_ceqp(&machine_with_acc(2), &two_four);
        assert_eq!(h.eval_gap(&x).unwrap(), BigInt::from(0));
        let h = collapse_ceqp(&machine_with_acc(3), &two_four);
        assert_eq!(h.eval_gap(&x).unwrap(), BigInt::from(-1));

        let zero = TargetSpec::new(TargetMode::Input, FpFunc::constant(0), NatPoly::constant(1));
        let balanced: BTreeMap<_, _> = d
            .words()
            .into_iter()
            .map(|w| (w, ChoiceTree::reject()))
            .collect();
        let none = BaseMachine::new("z", d.clone(), NatPoly::constant(0), balanced).unwrap();
        assert_eq!(collapse_ceqp(&none, &zero).eval_gap(&x).unwrap(), BigInt::from(0));
    }

    #[test]
    fn exp_enumerator() {
        assert_eq!(exp_target_enumerator(4, 2).unwrap(), BigInt::from(1));
        assert_eq!(exp_target_enumerator(4, 1).unwrap(), BigInt::from(-1));
        assert!(exp_target_enumerator(4, 0).is_err());
        for k in 1..=64i64 {
            let got: std::collections::BTreeSet<BigInt> = (1..=2 * k as u64)
                .map(|i| exp_target_enumerator(0, i).unwrap())
                .collect();
            let want: std::collections::BTreeSet<BigInt> =
                (-k..=k).filter(|&v| v != 0).map(BigInt::from).collect();
            assert_eq!(got, want);
        }
    }
}
