//! Exhaustive membership checks for the gap-defined promise classes.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gap::program::GapProgram;
use crate::gap::target::{TargetMode, TargetSpec, TwoSidedTargetSpec};
use crate::int_serde;
use crate::word::{Domain, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MembershipClass {
    /// One length-indexed target.
    Lwpp,
    /// `r(|x|)` length-indexed targets.
    RLwpp,
    Wpp,
    RWpp,
    /// Acceptance and rejection target lists.
    TwoSided,
    /// `x ∈ A ⟺ g(x)` hits a target.
    CeqP,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassSpec {
    Indexed(TargetSpec),
    TwoSided(TwoSidedTargetSpec),
}

impl From<TargetSpec> for ClassSpec {
    fn from(s: TargetSpec) -> Self {
        ClassSpec::Indexed(s)
    }
}

impl From<TwoSidedTargetSpec> for ClassSpec {
    fn from(s: TwoSidedTargetSpec) -> Self {
        ClassSpec::TwoSided(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Accepted input whose gap is not an admissible target.
    MissedTarget,
    /// Rejected input with nonzero gap.
    NonzeroOnReject,
    /// Rejected input whose gap is not a rejection target.
    OutsideRejectSet,
    /// A target list contains 0 where the class forbids it.
    ZeroTarget,
    /// More than one target where the class allows one.
    MultipleTargets,
    /// Acceptance and rejection lists share a value.
    TargetOverlap,
    /// Target hit disagrees with membership.
    AcceptanceMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub input: Word,
    #[serde(with = "int_serde::int")]
    pub gap: BigInt,
    #[serde(with = "int_serde::int_vec")]
    pub expected: Vec<BigInt>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub class: MembershipClass,
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

fn spec_for(class: MembershipClass, spec: &ClassSpec) -> Result<()> {
    let want = match class {
        MembershipClass::Lwpp | MembershipClass::RLwpp => Some(TargetMode::Length),
        MembershipClass::Wpp | MembershipClass::RWpp => Some(TargetMode::Input),
        _ => None,
    };
    match (class, spec) {
        (MembershipClass::TwoSided, ClassSpec::TwoSided(s)) => s.mode().map(|_| ()),
        (MembershipClass::TwoSided, _) => Err(Error::InvalidSpec(
            "two-sided class needs acceptance and rejection lists".into(),
        )),
        (_, ClassSpec::TwoSided(_)) => Err(Error::InvalidSpec(format!(
            "{class:?} takes a single target list"
        ))),
        (_, ClassSpec::Indexed(s)) => match want {
            Some(mode) if s.mode != mode => Err(Error::InvalidSpec(format!(
                "{class:?} needs {mode:?}-indexed targets"
            ))),
            _ => Ok(()),
        },
    }
}

/// Checks the defining implications of `class` for every input in `domain`.
/// Promise violations are reported, never raised; errors only come from
/// evaluation outside a program's domain or a spec of the wrong shape.
pub fn verify_class_membership(
    g: &GapProgram,
    spec: &ClassSpec,
    language: impl Fn(&Word) -> bool,
    class: MembershipClass,
    domain: &Domain,
) -> Result<Report> {
    spec_for(class, spec)?;
    let words = domain.words();
    let mut violations = Vec::new();
    for x in &words {
        let gap = g.eval_gap(x)?;
        let member = language(x);
        let mut flag = |verdict: Verdict, expected: Vec<BigInt>| {
            violations.push(Violation {
                input: x.clone(),
                gap: gap.clone(),
                expected,
                verdict,
            })
        };
        match (class, spec) {
            (MembershipClass::TwoSided, ClassSpec::TwoSided(s)) => {
                let accept = s.accept.targets(x)?;
                let reject = s.reject.targets(x)?;
                let a: BTreeSet<_> = accept.iter().collect();
                if reject.iter().any(|v| a.contains(v)) {
                    flag(Verdict::TargetOverlap, accept.clone());
                }
                if member && !accept.contains(&gap) {
                    flag(Verdict::MissedTarget, accept);
                } else if !member && !reject.contains(&gap) {
                    flag(Verdict::OutsideRejectSet, reject);
                }
            }
            (MembershipClass::CeqP, ClassSpec::Indexed(s)) => {
                let targets = s.targets(x)?;
                if targets.contains(&gap) != member {
                    flag(Verdict::AcceptanceMismatch, targets);
                }
            }
            (_, ClassSpec::Indexed(s)) => {
                let targets = s.targets(x)?;
                let single = matches!(class, MembershipClass::Lwpp | MembershipClass::Wpp);
                if single && targets.len() != 1 {
                    flag(Verdict::MultipleTargets, targets.clone());
                }
                if targets.iter().any(Zero::is_zero) {
                    flag(Verdict::ZeroTarget, targets.clone());
                }
                if member && !targets.contains(&gap) {
                    flag(Verdict::MissedTarget, targets);
                } else if !member && !gap.is_zero() {
                    flag(Verdict::NonzeroOnReject, vec![BigInt::zero()]);
                }
            }
            _ => unreachable!("checked by spec_for"),
        }
    }
    Ok(Report {
        class,
        checked: words.len(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gap::collapse::collapse_lwpp;
    use crate::gap::fp::FpFunc;
    use crate::natpoly::NatPoly;

    fn three_five() -> TargetSpec {
        TargetSpec::new(
            TargetMode::Length,
            FpFunc::constant(2).mul(FpFunc::Index).add(FpFunc::constant(1)),
            NatPoly::constant(2),
        )
    }

    #[test]
    fn zero_gap_empty_language() {
        let g = GapProgram::constant(FpFunc::constant(0));
        let r = verify_class_membership(
            &g,
            &three_five().into(),
            |_| false,
            MembershipClass::RLwpp,
            &Domain::binary(3),
        )
        .unwrap();
        assert!(r.is_clean());
        assert_eq!(r.checked, 15);
    }

    #[test]
    fn broken_promise_is_reported() {
        // g = 4 on "11", 3 on every other accepted word
        let g = GapProgram::constant(FpFunc::Table {
            entries: [(Word::from("11"), BigInt::from(4))].into_iter().collect(),
            default: Some(BigInt::from(3)),
        });
        let lang = |x: &Word| x.len() == 2;
        let spec: ClassSpec = three_five().into();
        let d = Domain::binary(2);
        // g = 3 on length < 2 rejected words too
        let r = verify_class_membership(&g, &spec, lang, MembershipClass::RLwpp, &d).unwrap();
        let missed: Vec<_> = r
            .violations
            .iter()
            .filter(|v| v.verdict == Verdict::MissedTarget)
            .collect();
        assert_eq!(missed.len(), 1);
        assert_eq!(missed[0].input, Word::from("11"));
        assert_eq!(missed[0].expected, vec![BigInt::from(3), BigInt::from(5)]);
        assert_eq!(
            r.violations
                .iter()
                .filter(|v| v.verdict == Verdict::NonzeroOnReject)
                .count(),
            3
        );
    }

    #[test]
    fn collapsed_witness_is_lwpp() {
        let g = GapProgram::constant(FpFunc::Table {
            entries: [
                (Word::from("0"), BigInt::from(5)),
                (Word::from("01"), BigInt::from(3)),
            ]
            .into_iter()
            .collect(),
            default: Some(BigInt::from(0)),
        });
        let lang = |x: &Word| x.as_str() == "0" || x.as_str() == "01";
        let d = Domain::binary(3);
        let c = collapse_lwpp(&g, &three_five(), &d).unwrap();
        let r = verify_class_membership(
            &c.ghat,
            &c.witness_spec().into(),
            lang,
            MembershipClass::Lwpp,
            &d,
        )
        .unwrap();
        assert!(r.is_clean(), "{:?}", r.violations);
        // the multi-target spec is not an LWPP spec
        let multi = verify_class_membership(&g, &three_five().into(), lang, MembershipClass::Lwpp, &d)
            .unwrap();
        assert!(multi.violations.iter().any(|v| v.verdict == Verdict::MultipleTargets));
    }

    #[test]
    fn wrong_shape_is_an_error() {
        let g = GapProgram::constant(FpFunc::constant(0));
        let err = verify_class_membership(
            &g,
            &three_five().into(),
            |_| false,
            MembershipClass::Wpp,
            &Domain::binary(1),
        );
        assert!(err.is_err());
    }

    #[test]
    fn report_json_fields() {
        let v = Violation {
            input: Word::from("11"),
            gap: BigInt::from(4),
            expected: vec![BigInt::from(3)],
            verdict: Verdict::MissedTarget,
        };
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"input": "11", "gap": "4", "expected": ["3"], "verdict": "missed_target"})
        );
    }
}
