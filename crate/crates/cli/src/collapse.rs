use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use gaplab::gap::dsl::{machine_from_sexp, parse_program, parse_sexp, parse_targets, parse_two_sided};
use gaplab::gap::fixtures::{ceqp_fixture, lwpp_fixture, two_sided_fixture};
use gaplab::gap::{
    collapse_ceqp, collapse_lwpp, collapse_two_sided, collapse_wpp, verify_class_membership, BaseMachine, ClassSpec,
    GapProgram, MembershipClass, Report, TargetMode, TargetSpec, TwoSidedTargetSpec,
};
use gaplab::{Domain, NatPoly, Word};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::report::{emit, read_input, InputFile};
use crate::{announce, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Class {
    Lwpp,
    Wpp,
    TwoSided,
    Ceqp,
}

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Gap program in the s-expression DSL; for `ceqp`, a machine.
    #[arg(long)]
    program: Option<PathBuf>,
    /// Target spec (`targets` form, or `two-sided` for that class).
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "lwpp")]
    class: Class,
    /// JSON array of the words in the promise language.
    #[arg(long)]
    language: Option<PathBuf>,
    /// Check every input of length up to L.
    #[arg(short = 'L', long = "max-len", default_value_t = 4)]
    max_len: usize,
    #[arg(long, default_value = "01")]
    alphabet: String,
    /// Generate this many seeded fixtures instead of reading files.
    #[arg(long)]
    random_fixtures: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Multiplicity bound of generated fixtures.
    #[arg(long, default_value = "n^2+2")]
    r_poly: NatPoly,
}

#[derive(Serialize)]
struct Config {
    class: Class,
    max_len: usize,
    alphabet: String,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    random_fixtures: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    r_poly: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    program: Option<InputFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    spec: Option<InputFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    language: Option<InputFile>,
}

/// The promise as stated, then the compiled single-target witness.
#[derive(Serialize)]
struct Checked {
    promise: Report,
    witness: Report,
}

impl Checked {
    fn violations(&self) -> usize {
        self.promise.violations.len() + self.witness.violations.len()
    }
}

#[derive(Serialize)]
struct CeqpRow {
    input: Word,
    acc: String,
    member: bool,
    h_zero: bool,
}

#[derive(Serialize)]
struct CeqpChecked {
    members: usize,
    inputs: usize,
    /// Inputs where `h₂ = 0` disagrees with the count-defined language.
    mismatches: Vec<CeqpRow>,
    /// Inputs where the supplied language disagrees with the counts.
    language_disagreements: Vec<Word>,
}

#[derive(Serialize)]
#[serde(untagged)]
enum Outcome {
    Single(Checked),
    Ceqp(CeqpChecked),
}

impl Outcome {
    fn violations(&self) -> usize {
        match self {
            Outcome::Single(c) => c.violations(),
            Outcome::Ceqp(c) => c.mismatches.len() + c.language_disagreements.len(),
        }
    }
}

#[derive(Serialize)]
struct Fixture {
    index: usize,
    violations: usize,
    outcome: Outcome,
}

fn check_single(
    g: &GapProgram,
    spec: &TargetSpec,
    language: &BTreeSet<Word>,
    domain: &Domain,
    wpp: bool,
) -> Result<Checked> {
    let member = |x: &Word| language.contains(x);
    let (promise_class, class) = if wpp {
        (MembershipClass::RWpp, MembershipClass::Wpp)
    } else {
        (MembershipClass::RLwpp, MembershipClass::Lwpp)
    };
    let promise = verify_class_membership(g, &spec.clone().into(), member, promise_class, domain)?;
    let c = if wpp { collapse_wpp(g, spec, domain)? } else { collapse_lwpp(g, spec, domain)? };
    let witness = verify_class_membership(&c.ghat, &c.witness_spec().into(), member, class, domain)?;
    Ok(Checked { promise, witness })
}

fn check_two_sided(
    g: &GapProgram,
    spec: &TwoSidedTargetSpec,
    language: &BTreeSet<Word>,
    domain: &Domain,
) -> Result<Checked> {
    let member = |x: &Word| language.contains(x);
    let promise = verify_class_membership(g, &ClassSpec::TwoSided(spec.clone()), member, MembershipClass::TwoSided, domain)?;
    let (ghat, wit) = collapse_two_sided(g, spec, domain)?;
    let (c, class) = match wit.mode {
        TargetMode::Length => (collapse_lwpp(&ghat, &wit, domain)?, MembershipClass::Lwpp),
        TargetMode::Input => (collapse_wpp(&ghat, &wit, domain)?, MembershipClass::Wpp),
    };
    let witness = verify_class_membership(&c.ghat, &c.witness_spec().into(), member, class, domain)?;
    Ok(Checked { promise, witness })
}

fn check_ceqp(m: &BaseMachine, spec: &TargetSpec, language: Option<&BTreeSet<Word>>, domain: &Domain) -> Result<CeqpChecked> {
    let h = collapse_ceqp(m, spec);
    let mut out = CeqpChecked {
        members: 0,
        inputs: 0,
        mismatches: vec![],
        language_disagreements: vec![],
    };
    for x in domain.words() {
        let acc = num_bigint::BigInt::from(m.counts(&x)?.acc);
        let member = spec.targets(&x)?.contains(&acc);
        let h_zero = h.eval_gap(&x)?.is_zero();
        out.inputs += 1;
        out.members += member as usize;
        if h_zero != member {
            out.mismatches.push(CeqpRow {
                input: x.clone(),
                acc: acc.to_string(),
                member,
                h_zero,
            });
        }
        if language.is_some_and(|l| l.contains(&x) != member) {
            out.language_disagreements.push(x);
        }
    }
    Ok(out)
}

fn parse_language(text: &str) -> Result<BTreeSet<Word>> {
    let words: Vec<String> = serde_json::from_str(text).context("language must be a JSON array of strings")?;
    Ok(words.into_iter().map(Word::from).collect())
}

fn parse_machine(text: &str) -> Result<BaseMachine> {
    let s = parse_sexp(text)?;
    if let Ok(m) = machine_from_sexp(&s) {
        return Ok(m);
    }
    match parse_program(text)? {
        GapProgram::Base(m) => Ok((*m).clone()),
        _ => bail!("ceqp needs a machine, not a composite program"),
    }
}

pub fn run(a: &Args, dir: Option<&Path>) -> Result<Status> {
    let domain = Domain {
        alphabet: a.alphabet.chars().collect(),
        max_len: a.max_len,
    };
    if domain.alphabet.is_empty() {
        bail!("empty alphabet");
    }
    let mut config = Config {
        class: a.class,
        max_len: a.max_len,
        alphabet: a.alphabet.clone(),
        seed: a.seed,
        random_fixtures: a.random_fixtures,
        r_poly: None,
        program: None,
        spec: None,
        language: None,
    };
    let mut results = Vec::new();
    if let Some(count) = a.random_fixtures {
        config.r_poly = Some(a.r_poly.to_string());
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
        for index in 0..count {
            let outcome = match a.class {
                Class::Lwpp => {
                    let fx = lwpp_fixture(&mut rng, &domain, &a.r_poly);
                    Outcome::Single(check_single(&fx.g, &fx.spec, &fx.language, &domain, false)?)
                }
                Class::TwoSided => {
                    let fx = two_sided_fixture(&mut rng, &domain, &a.r_poly, &a.r_poly);
                    Outcome::Single(check_two_sided(&fx.g, &fx.spec, &fx.language, &domain)?)
                }
                Class::Ceqp => {
                    let (m, spec) = ceqp_fixture(&mut rng, &domain, &a.r_poly);
                    Outcome::Ceqp(check_ceqp(&m, &spec, None, &domain)?)
                }
                Class::Wpp => bail!("random fixtures are available for lwpp, two-sided and ceqp"),
            };
            results.push(Fixture {
                index,
                violations: outcome.violations(),
                outcome,
            });
        }
    } else {
        let (Some(program), Some(spec)) = (&a.program, &a.spec) else {
            bail!("--program and --spec are required without --random-fixtures");
        };
        let (program_text, program_file) = read_input(program)?;
        let (spec_text, spec_file) = read_input(spec)?;
        config.program = Some(program_file);
        config.spec = Some(spec_file);
        let language = match &a.language {
            Some(p) => {
                let (text, file) = read_input(p)?;
                config.language = Some(file);
                Some(parse_language(&text)?)
            }
            None => None,
        };
        let need_language = || language.clone().context("--language is required for this class");
        let outcome = match a.class {
            Class::Lwpp | Class::Wpp => {
                let g = parse_program(&program_text).context("parsing program")?;
                let spec = parse_targets(&spec_text).context("parsing spec")?;
                Outcome::Single(check_single(&g, &spec, &need_language()?, &domain, a.class == Class::Wpp)?)
            }
            Class::TwoSided => {
                let g = parse_program(&program_text).context("parsing program")?;
                let spec = parse_two_sided(&spec_text).context("parsing spec")?;
                Outcome::Single(check_two_sided(&g, &spec, &need_language()?, &domain)?)
            }
            Class::Ceqp => {
                let m = parse_machine(&program_text).context("parsing machine")?;
                let spec = parse_targets(&spec_text).context("parsing spec")?;
                Outcome::Ceqp(check_ceqp(&m, &spec, language.as_ref(), &domain)?)
            }
        };
        results.push(Fixture {
            index: 0,
            violations: outcome.violations(),
            outcome,
        });
    }
    let total: usize = results.iter().map(|f| f.violations).sum();
    eprintln!(
        "collapse {:?}: {} fixture(s), {} input(s) each, {total} violation(s)",
        a.class,
        results.len(),
        domain.words().len()
    );
    announce(emit("collapse", &config, &results, dir)?);
    Ok(if total == 0 { Status::Clean } else { Status::Violation })
}
