//! Canonical labeling and isomorphism-class enumeration.
//!
//! The canonical form is the relabeling whose graph6-order upper-triangle
//! bit string is lexicographically smallest among all relabelings that
//! respect an iterated degree refinement. The refinement only uses
//! isomorphism-invariant data, so the minimum is canonical.

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::reconstruct::graph::{Graph, DEFAULT_BOUND, MAX_VERTICES};

/// A canonical graph's identity: vertex count and its minimal bit string
/// (first graph6 bit most significant).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonCode {
    pub n: u8,
    pub bits: u128,
}

/// Vertex colours from iterated refinement: start from degrees, split by the
/// multiset of neighbour colours until stable. Colours are ranks of the
/// sorted invariant keys.
fn refine(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut color: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut classes = usize::MAX;
    loop {
        let keys: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n).filter(|&u| g.has_edge(u, v)).map(|u| color[u]).collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let distinct: BTreeSet<&(usize, Vec<usize>)> = keys.iter().collect();
        let ranked: Vec<_> = distinct.into_iter().collect();
        color = keys
            .iter()
            .map(|k| ranked.binary_search(&k).expect("key present"))
            .collect();
        if ranked.len() == classes {
            return color;
        }
        classes = ranked.len();
    }
}

struct Search<'a> {
    g: &'a Graph,
    colors: Vec<usize>,
    slots: Vec<usize>,
    order: Vec<usize>,
    used: u16,
    total: u32,
    best: Option<(u128, Vec<usize>)>,
}

impl Search<'_> {
    // Bits contributed by placing `v` at position `pos`: its adjacency to the
    // vertices already placed at positions 0..pos, in graph6 order.
    fn column(&self, v: usize, pos: usize) -> u128 {
        let mut c = 0u128;
        for &u in &self.order[..pos] {
            c = c << 1 | self.g.has_edge(u, v) as u128;
        }
        c
    }

    fn go(&mut self, pos: usize, code: u128, width: u32) {
        let n = self.g.n();
        if let Some((best, _)) = &self.best {
            let prefix = if width == 0 { 0 } else { best >> (self.total - width) };
            if code > prefix {
                return;
            }
        }
        if pos == n {
            let better = self.best.as_ref().is_none_or(|(b, _)| code < *b);
            if better {
                self.best = Some((code, self.order.clone()));
            }
            return;
        }
        let want = self.slots[pos];
        for v in 0..n {
            if self.used >> v & 1 == 1 || self.colors[v] != want {
                continue;
            }
            self.order.push(v);
            self.used |= 1 << v;
            let next = code << pos | self.column(v, pos);
            self.go(pos + 1, next, width + pos as u32);
            self.used &= !(1 << v);
            self.order.pop();
        }
    }
}

/// Canonical representative and its code.
pub fn canonical_code(g: &Graph) -> (Graph, CanonCode) {
    let n = g.n();
    let colors = refine(g);
    let mut slots = colors.clone();
    slots.sort_unstable();
    let mut s = Search {
        g,
        slots,
        order: Vec::with_capacity(n),
        used: 0,
        total: (n * n.saturating_sub(1) / 2) as u32,
        best: None,
        colors,
    };
    s.go(0, 0, 0);
    let (bits, order) = s.best.expect("at least one labeling");
    let mut perm = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    (g.permuted(&perm), CanonCode { n: n as u8, bits })
}

pub fn canonical_form(g: &Graph) -> Graph {
    canonical_code(g).0
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n()
        && g.edge_count() == h.edge_count()
        && canonical_code(g).1 == canonical_code(h).1
}

const SLOTS: usize = MAX_VERTICES + 1;
static CATALOG: [OnceLock<Arc<Vec<Graph>>>; SLOTS] = [const { OnceLock::new() }; SLOTS];

/// One canonical graph per isomorphism class on `n` vertices, ordered by
/// canonical code. Built by adding a vertex to each class on `n - 1`
/// vertices in every possible way; cached per `n`.
pub fn enumerate_graphs(n: usize) -> Result<Arc<Vec<Graph>>> {
    enumerate_graphs_bounded(n, DEFAULT_BOUND)
}

pub fn enumerate_graphs_bounded(n: usize, bound: usize) -> Result<Arc<Vec<Graph>>> {
    if n > bound || n > MAX_VERTICES {
        return Err(Error::Resource(format!(
            "enumerating graphs on {n} vertices (bound {})",
            bound.min(MAX_VERTICES)
        )));
    }
    if let Some(done) = CATALOG[n].get() {
        return Ok(done.clone());
    }
    let graphs = if n == 0 {
        vec![Graph::empty(0)?]
    } else {
        let smaller = enumerate_graphs_bounded(n - 1, bound)?;
        let mut seen = std::collections::BTreeMap::new();
        for h in smaller.iter() {
            for mask in 0u32..1 << (n - 1) {
                let mut g = Graph::empty(n)?;
                for u in 0..n - 1 {
                    for v in u + 1..n - 1 {
                        if h.has_edge(u, v) {
                            g.add_edge(u, v);
                        }
                    }
                    if mask >> u & 1 == 1 {
                        g.add_edge(u, n - 1);
                    }
                }
                let (c, code) = canonical_code(&g);
                seen.entry(code).or_insert(c);
            }
        }
        seen.into_values().collect()
    };
    Ok(CATALOG[n].get_or_init(|| Arc::new(graphs)).clone())
}
