use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::ValueEnum;
use gaplab::diagonalize::fixtures::{constant_gap_machine, counting_machine, or_machine, triple_machine, CountKind};
use gaplab::diagonalize::{
    acc_stage_search, accepting_path_sets, gap_stage_search, pair_check, DetOracleMachine, PairCheck, StageContext,
    StageOutcome,
};
use gaplab::polyenc::OracleMachine;
use gaplab::{NatPoly, Word};
use serde::{Deserialize, Serialize};

use crate::report::{emit, read_input, InputFile};
use crate::{announce, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FixtureName {
    /// Gap `--g` regardless of the oracle.
    Constant,
    /// Gap equals the number of oracle strings of length n_j.
    CountingGap,
    /// Accepting paths equal the number of oracle strings of length n_j.
    CountingAcc,
    /// One accepting path iff some string of length n_j is in the oracle.
    Or,
    /// Three accepting paths per string, killed by its successors.
    Triple,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Gap,
    Acc,
}

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Stage as JSON: `n`, `m`, `nj`, optional `b_prev`, `r`, `p`, `kind`.
    #[arg(long)]
    stage: Option<PathBuf>,
    #[arg(long, value_enum)]
    fixture: Option<FixtureName>,
    /// Gap or accepting-count stage; fixtures pick a sensible default.
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    #[arg(long, default_value_t = 3)]
    nj: usize,
    /// Output of the fixture's deterministic machine on 0^n_j.
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    val: i64,
    /// Strings the deterministic machine queries, comma separated.
    #[arg(long, value_delimiter = ',')]
    t: Vec<String>,
    /// Gap of the constant fixture.
    #[arg(long, default_value_t = 5, allow_negative_numbers = true)]
    g: i64,
    #[arg(long, default_value_t = gaplab::diagonalize::DEFAULT_MAX_CANDIDATES)]
    max_candidates: u64,
}

#[derive(Deserialize)]
struct StageFile {
    n: OracleMachine,
    m: DetOracleMachine,
    nj: usize,
    #[serde(default)]
    b_prev: BTreeSet<Word>,
    #[serde(default = "NatPoly::n")]
    r: NatPoly,
    p: Option<NatPoly>,
    kind: Option<Kind>,
}

#[derive(Serialize)]
struct Config {
    #[serde(skip_serializing_if = "Option::is_none")]
    stage: Option<InputFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fixture: Option<FixtureName>,
    kind: Kind,
    nj: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    val: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    g: Option<i64>,
    max_candidates: u64,
}

#[derive(Serialize)]
struct Result_ {
    outcome: StageOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pair_check: Option<PairCheck>,
}

fn fixture_machine(f: FixtureName, nj: usize, g: i64) -> (OracleMachine, Kind) {
    match f {
        FixtureName::Constant => (constant_gap_machine(nj, g), Kind::Gap),
        FixtureName::CountingGap => (counting_machine(nj, CountKind::Gap), Kind::Gap),
        FixtureName::CountingAcc => (counting_machine(nj, CountKind::Acc), Kind::Acc),
        FixtureName::Or => (or_machine(nj), Kind::Acc),
        FixtureName::Triple => (triple_machine(nj), Kind::Acc),
    }
}

pub fn run(a: &Args, dir: Option<&Path>) -> Result<Status> {
    let (ctx, kind, mut config) = if let Some(path) = &a.stage {
        let (text, file) = read_input(path)?;
        let s: StageFile = serde_json::from_str(&text).context("parsing stage JSON")?;
        let kind = a.kind.or(s.kind).unwrap_or(Kind::Gap);
        let p = s.p.unwrap_or_else(|| s.n.time_bound().clone());
        let ctx = StageContext::new(s.n, s.m, s.nj, s.b_prev, s.r, p, None)?;
        let config = Config {
            stage: Some(file),
            fixture: None,
            kind,
            nj: s.nj,
            val: None,
            t: None,
            g: None,
            max_candidates: a.max_candidates,
        };
        (ctx, kind, config)
    } else {
        let f = a.fixture.context("--stage or --fixture is required")?;
        let (n, default_kind) = fixture_machine(f, a.nj, a.g);
        let kind = a.kind.unwrap_or(default_kind);
        let t: Vec<Word> = a.t.iter().map(|w| Word::from(w.as_str())).collect();
        let m = DetOracleMachine::constant_after(Word::zeros(a.nj), a.val, &t);
        let p = n.time_bound().clone();
        let ctx = StageContext::new(n, m, a.nj, BTreeSet::new(), NatPoly::n(), p, None)?;
        let config = Config {
            stage: None,
            fixture: Some(f),
            kind,
            nj: a.nj,
            val: Some(a.val),
            t: Some(a.t.clone()),
            g: (f == FixtureName::Constant).then_some(a.g),
            max_candidates: a.max_candidates,
        };
        (ctx, kind, config)
    };
    config.kind = kind;
    let outcome = match kind {
        Kind::Gap => gap_stage_search(&ctx, a.max_candidates)?,
        Kind::Acc => acc_stage_search(&ctx, a.max_candidates)?,
    };
    let pair_check = match (kind, usize::try_from(&ctx.val)) {
        (Kind::Acc, Ok(val)) => {
            let analysis = accepting_path_sets(&ctx.n, &ctx.b_prev, &ctx.candidates(), &ctx.input())?;
            Some(pair_check(&analysis, val, ctx.p.eval(ctx.nj as u64))?)
        }
        _ => None,
    };
    match &outcome.found {
        Some(c) => {
            let shown: Vec<&str> = c.iter().map(Word::as_str).collect();
            eprintln!("C = {{{}}} (|C| = {})", shown.join(", "), c.len());
        }
        None => eprintln!("C = None"),
    }
    for c in &outcome.conditions {
        eprintln!("({}) {}: {}", c.label, if c.holds { "holds" } else { "fails" }, c.statement);
    }
    let all_conditions = outcome.conditions.iter().all(|c| c.holds);
    let violation = match &outcome.found {
        Some(_) => !outcome.verified,
        None => all_conditions,
    } || pair_check.as_ref().is_some_and(|p| !p.consistent);
    eprintln!("{} candidate set(s) checked", outcome.candidates_checked);
    announce(emit("diag", &config, &Result_ { outcome, pair_check }, dir)?);
    Ok(if violation { Status::Violation } else { Status::Clean })
}
