use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use gaplab::gap::dsl::{fp_from_sexp, parse_sexp};
use gaplab::reconstruct::{
    deck_gap, is_legitimate, passes_edge_prefilter, pcount, q_reconstruction_report, restricted_legitimate, Deck,
    DeckGap, Graph, PaddedTarget, Restricted,
};
use gaplab::NatPoly;
use serde::Serialize;

use crate::report::{emit, read_input, InputFile};
use crate::{announce, Status};

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Smallest vertex count in the sweep. Two-vertex decks are ambiguous.
    #[arg(long, default_value_t = 3)]
    n_min: usize,
    /// Largest vertex count in the sweep; at most 8.
    #[arg(long, default_value_t = 7)]
    n_max: usize,
    /// Bound `q(n)` that every preimage count must respect.
    #[arg(long, default_value = "1")]
    q_poly: NatPoly,
    /// A single deck: JSON array of graph6 strings or edge lists, or graph6
    /// cards separated by `;` or whitespace.
    #[arg(long)]
    deck: Option<PathBuf>,
    /// Also answer legitimacy restricted to minimum degree at most k.
    #[arg(long)]
    class_k: Option<usize>,
    /// Target `h` of the padded gap, an FP expression in the DSL.
    #[arg(long, default_value = "1")]
    h: String,
}

#[derive(Serialize)]
struct Config {
    #[serde(skip_serializing_if = "Option::is_none")]
    deck: Option<InputFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_min: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    q_poly: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    class_k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    h: Option<String>,
}

#[derive(Serialize)]
struct DeckReport {
    deck: String,
    cards: usize,
    card_vertices: usize,
    edge_prefilter: bool,
    pcount: u64,
    legitimate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    restricted: Option<Restricted>,
    gap: DeckGap,
}

fn parse_deck(text: &str) -> Result<Deck> {
    if text.trim_start().starts_with('[') {
        return serde_json::from_str(text).context("deck JSON");
    }
    let cards = text
        .split(|c: char| c == ';' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(Graph::from_graph6)
        .collect::<gaplab::Result<Vec<_>>>()?;
    Ok(Deck::from_cards(cards)?)
}

pub fn run(a: &Args, dir: Option<&Path>) -> Result<Status> {
    if let Some(path) = &a.deck {
        let (text, file) = read_input(path)?;
        let d = parse_deck(&text)?;
        let h = PaddedTarget::new(fp_from_sexp(&parse_sexp(&a.h)?).context("parsing --h")?);
        let report = DeckReport {
            deck: d.encode(),
            cards: d.len(),
            card_vertices: d.cards().next().map_or(0, Graph::n),
            edge_prefilter: passes_edge_prefilter(&d),
            pcount: pcount(&d)?,
            legitimate: is_legitimate(&d)?,
            restricted: a.class_k.map(|k| restricted_legitimate(&d, k)).transpose()?,
            gap: deck_gap(&d, &h)?,
        };
        eprintln!("deck of {} cards: pcount {}", report.cards, report.pcount);
        let config = Config {
            deck: Some(file),
            n_min: None,
            n_max: None,
            q_poly: None,
            class_k: a.class_k,
            h: Some(a.h.clone()),
        };
        announce(emit("reconstruct", &config, &report, dir)?);
        return Ok(Status::Clean);
    }
    let report = q_reconstruction_report(a.n_min, a.n_max, &a.q_poly)?;
    for s in &report.sizes {
        eprintln!("n={}: {} graphs, max pcount {}", s.n, s.graphs, s.max_pcount);
    }
    eprintln!("{} violation(s) of q = {}", report.violations.len(), a.q_poly);
    let config = Config {
        deck: None,
        n_min: Some(a.n_min),
        n_max: Some(a.n_max),
        q_poly: Some(a.q_poly.to_string()),
        class_k: None,
        h: None,
    };
    announce(emit("reconstruct", &config, &report, dir)?);
    Ok(if report.violations.is_empty() { Status::Clean } else { Status::Violation })
}
