//! Decks, preimage counting and legitimacy.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::natpoly::NatPoly;
use crate::reconstruct::canon::{canonical_code, enumerate_graphs_bounded, CanonCode};
use crate::reconstruct::graph::{Graph, DEFAULT_BOUND, MAX_VERTICES};

/// A multiset of canonical cards, kept sorted by canonical code so that
/// deck equality is a plain comparison.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<CardInput>", into = "Vec<Graph>")]
pub struct Deck {
    cards: Vec<(CanonCode, Graph)>,
}

/// A card as read from JSON: an edge-list object or a graph6 string.
#[derive(Deserialize)]
#[serde(untagged)]
enum CardInput {
    Graph6(String),
    Edges(Graph),
}

impl TryFrom<Vec<CardInput>> for Deck {
    type Error = Error;

    fn try_from(raw: Vec<CardInput>) -> Result<Self> {
        let cards = raw
            .into_iter()
            .map(|c| match c {
                CardInput::Graph6(s) => Graph::from_graph6(&s),
                CardInput::Edges(g) => Ok(g),
            })
            .collect::<Result<Vec<_>>>()?;
        Deck::from_cards(cards)
    }
}

impl From<Deck> for Vec<Graph> {
    fn from(d: Deck) -> Self {
        d.cards.into_iter().map(|(_, g)| g).collect()
    }
}

impl Deck {
    /// Canonicalizes and sorts `cards`. Cards must all have the same vertex
    /// count.
    pub fn from_cards(cards: Vec<Graph>) -> Result<Self> {
        if let Some(first) = cards.first() {
            if let Some(odd) = cards.iter().find(|c| c.n() != first.n()) {
                return Err(Error::InvalidDeck(format!(
                    "cards on {} and {} vertices",
                    first.n(),
                    odd.n()
                )));
            }
        }
        let mut cards: Vec<(CanonCode, Graph)> = cards
            .iter()
            .map(|c| {
                let (g, code) = canonical_code(c);
                (code, g)
            })
            .collect();
        cards.sort_by_key(|(code, _)| *code);
        Ok(Deck { cards })
    }

    pub fn len(&self) -> usize {
        self.cards.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cards.is_empty()
    }

    pub fn cards(&self) -> impl Iterator<Item = &Graph> {
        self.cards.iter().map(|(_, g)| g)
    }

    fn codes(&self) -> Vec<CanonCode> {
        self.cards.iter().map(|(c, _)| *c).collect()
    }

    /// Card graph6 strings joined by `;`, the string a deck is presented as.
    pub fn encode(&self) -> String {
        self.cards()
            .map(Graph::to_graph6)
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// The multiset of one-vertex-deleted subgraphs.
pub fn deck(g: &Graph) -> Result<Deck> {
    if g.n() == 0 {
        return Err(Error::Domain("the graph on 0 vertices has no deck".into()));
    }
    let cards = (1..=g.n())
        .map(|k| g.delete_vertex(k))
        .collect::<Result<Vec<_>>>()?;
    Deck::from_cards(cards)
}

const SLOTS: usize = MAX_VERTICES + 1;
static PREIMAGES: [OnceLock<HashMap<Vec<CanonCode>, u64>>; SLOTS] =
    [const { OnceLock::new() }; SLOTS];

fn preimage_index(n: usize, bound: usize) -> Result<&'static HashMap<Vec<CanonCode>, u64>> {
    if let Some(idx) = PREIMAGES[n].get() {
        return Ok(idx);
    }
    let mut idx = HashMap::new();
    for g in enumerate_graphs_bounded(n, bound)?.iter() {
        *idx.entry(deck(g)?.codes()).or_insert(0) += 1;
    }
    Ok(PREIMAGES[n].get_or_init(|| idx))
}

/// Sum of card edge counts equals `(n - 2)·|E|` for any preimage; for
/// `n ≥ 3` this forces divisibility and `|E| ≤ C(n, 2)`.
pub fn passes_edge_prefilter(d: &Deck) -> bool {
    let n = d.len();
    if n < 3 {
        return true;
    }
    let total: usize = d.cards().map(Graph::edge_count).sum();
    total.is_multiple_of(n - 2) && total / (n - 2) <= n * (n - 1) / 2
}

/// Number of isomorphism classes of graphs whose deck is `d`.
pub fn pcount(d: &Deck) -> Result<u64> {
    pcount_bounded(d, DEFAULT_BOUND)
}

pub fn pcount_bounded(d: &Deck, bound: usize) -> Result<u64> {
    let n = d.len();
    if n == 0 {
        return Err(Error::InvalidDeck("empty deck".into()));
    }
    if let Some(card) = d.cards().find(|c| c.n() != n - 1) {
        return Err(Error::InvalidDeck(format!(
            "{n} cards must each have {} vertices, found one with {}",
            n - 1,
            card.n()
        )));
    }
    if !passes_edge_prefilter(d) {
        return Ok(0);
    }
    Ok(preimage_index(n, bound)?.get(&d.codes()).copied().unwrap_or(0))
}

pub fn is_legitimate(d: &Deck) -> Result<bool> {
    Ok(pcount(d)? > 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Restricted {
    /// Some card has minimum degree above `k`.
    RejectGapZero,
    Proceed(u64),
}

/// Legitimacy restricted to graphs of minimum degree at most `k`.
pub fn restricted_legitimate(d: &Deck, k: usize) -> Result<Restricted> {
    if d.cards().any(|c| c.min_degree() > k) {
        return Ok(Restricted::RejectGapZero);
    }
    Ok(Restricted::Proceed(pcount(d)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeStats {
    pub n: usize,
    pub graphs: usize,
    /// pcount value ↦ number of graphs whose deck has it.
    pub histogram: BTreeMap<u64, u64>,
    pub max_pcount: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QViolation {
    pub graph6: String,
    pub n: usize,
    pub pcount: u64,
    pub bound: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QReport {
    pub n_min: usize,
    pub n_max: usize,
    pub q: NatPoly,
    pub sizes: Vec<SizeStats>,
    pub max_pcount: u64,
    pub violations: Vec<QViolation>,
}

/// Sweeps every graph on `n_min..=n_max` vertices and compares the preimage
/// count of its deck against `q(n)`.
pub fn q_reconstruction_report(n_min: usize, n_max: usize, q: &NatPoly) -> Result<QReport> {
    if n_max > DEFAULT_BOUND {
        return Err(Error::Resource(format!(
            "n_max {n_max} exceeds the bound {DEFAULT_BOUND}"
        )));
    }
    let n_min = n_min.max(1);
    let mut sizes = Vec::new();
    let mut violations = Vec::new();
    for n in n_min..=n_max {
        let graphs = enumerate_graphs_bounded(n, DEFAULT_BOUND)?;
        let mut histogram = BTreeMap::new();
        let bound = q.eval(n as u64);
        for g in graphs.iter() {
            let p = pcount(&deck(g)?)?;
            *histogram.entry(p).or_insert(0) += 1;
            if p > bound {
                violations.push(QViolation {
                    graph6: g.to_graph6(),
                    n,
                    pcount: p,
                    bound,
                });
            }
        }
        sizes.push(SizeStats {
            n,
            graphs: graphs.len(),
            max_pcount: histogram.keys().next_back().copied().unwrap_or(0),
            histogram,
        });
    }
    Ok(QReport {
        n_min,
        n_max,
        q: q.clone(),
        max_pcount: sizes.iter().map(|s| s.max_pcount).max().unwrap_or(0),
        sizes,
        violations,
    })
}
