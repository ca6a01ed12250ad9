use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use gaplab::polyenc::fixtures::random_oracle_machine;
use gaplab::polyenc::{encode, verify_encoding, EncodingReport, OracleMachine, Term, MAX_ORACLE_VARS};
use gaplab::Word;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::report::{emit, read_input, InputFile};
use crate::{announce, Status};

/// Normal forms are listed in full only up to this many variables.
const LIST_TERMS_UP_TO: usize = 8;

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Oracle machine as JSON.
    #[arg(long)]
    machine: Option<PathBuf>,
    /// Input to encode; defaults to every input the machine has a tree for.
    #[arg(long)]
    input: Option<String>,
    /// Generate this many seeded random machines instead.
    #[arg(long)]
    random_fixtures: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Query strings per generated machine.
    #[arg(long, default_value_t = 6)]
    m: usize,
    /// Tree depth of generated machines.
    #[arg(long, default_value_t = 6)]
    depth: usize,
}

#[derive(Serialize)]
struct Config {
    #[serde(skip_serializing_if = "Option::is_none")]
    machine: Option<InputFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    random_fixtures: Option<usize>,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    depth: Option<usize>,
}

#[derive(Serialize)]
struct Encoded {
    report: EncodingReport,
    term_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    terms: Option<Vec<Term>>,
}

fn check(m: &OracleMachine, x: &Word) -> Result<Encoded> {
    let p = encode(m, x)?;
    let report = verify_encoding(m, x, MAX_ORACLE_VARS)?;
    let terms = p.terms();
    Ok(Encoded {
        term_count: terms.len(),
        terms: (p.vars() <= LIST_TERMS_UP_TO).then_some(terms),
        report,
    })
}

pub fn run(a: &Args, dir: Option<&Path>) -> Result<Status> {
    let mut config = Config {
        machine: None,
        input: a.input.clone(),
        random_fixtures: a.random_fixtures,
        seed: a.seed,
        m: None,
        depth: None,
    };
    let mut results = Vec::new();
    if let Some(count) = a.random_fixtures {
        if a.m > MAX_ORACLE_VARS {
            bail!("--m {} exceeds {MAX_ORACLE_VARS}", a.m);
        }
        config.m = Some(a.m);
        config.depth = Some(a.depth);
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
        for _ in 0..count {
            let m = random_oracle_machine(&mut rng, a.m, a.depth);
            results.push(check(&m, &Word::from("0"))?);
        }
    } else {
        let path = a.machine.as_ref().context("--machine or --random-fixtures is required")?;
        let (text, file) = read_input(path)?;
        config.machine = Some(file);
        let m: OracleMachine = serde_json::from_str(&text).context("parsing machine JSON")?;
        let inputs: Vec<Word> = match &a.input {
            Some(x) => vec![Word::from(x.as_str())],
            None => m.inputs().cloned().collect(),
        };
        for x in &inputs {
            results.push(check(&m, x)?);
        }
    }
    let bad = results.iter().filter(|e| !e.report.is_clean()).count();
    let oracles: u64 = results.iter().map(|e| e.report.oracles_checked).sum();
    eprintln!("{} encoding(s), {oracles} oracle(s) checked, {bad} failing", results.len());
    announce(emit("encode", &config, &results, dir)?);
    Ok(if bad == 0 { Status::Clean } else { Status::Violation })
}
