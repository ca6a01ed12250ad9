//! Small simple undirected graphs as adjacency bit rows.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard limit from the `u16` adjacency rows.
pub const MAX_VERTICES: usize = 16;

/// Default bound for exhaustive work (enumeration, preimage counting).
pub const DEFAULT_BOUND: usize = 8;

/// Vertices are `0..n` internally; the public edge-list and deletion APIs
/// use `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "EdgeList", into = "EdgeList")]
pub struct Graph {
    n: usize,
    adj: Vec<u16>,
}

#[derive(Serialize, Deserialize)]
struct EdgeList {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<EdgeList> for Graph {
    type Error = Error;

    fn try_from(raw: EdgeList) -> Result<Self> {
        Graph::from_edges(raw.n, &raw.edges)
    }
}

impl From<Graph> for EdgeList {
    fn from(g: Graph) -> Self {
        EdgeList {
            n: g.n,
            edges: g.edges(),
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}, {:?})", self.n, self.edges())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_graph6())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Resource(format!(
                "{n} vertices (at most {MAX_VERTICES} supported)"
            )));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds a graph from 1-based edges. Loops are rejected; repeated edges
    /// collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::Domain(format!("loop at vertex {u}")));
            }
            g.add_edge(u - 1, v - 1);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for v in 0..n {
            for u in 0..v {
                g.add_edge(u, v);
            }
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    /// 0-based adjacency test.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Minimum degree; 0 for the graph with no vertices.
    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as 1-based pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u + 1, v + 1));
                }
            }
        }
        out
    }

    /// Removes 1-based vertex `k`; later vertices shift down by one.
    pub fn delete_vertex(&self, k: usize) -> Result<Graph> {
        if k == 0 || k > self.n {
            return Err(Error::VertexOutOfRange { vertex: k, n: self.n });
        }
        let k = k - 1;
        let low = (1u16 << k) - 1;
        let adj = (0..self.n)
            .filter(|&v| v != k)
            .map(|v| {
                let r = self.adj[v];
                (r & low) | ((r >> 1) & !low)
            })
            .collect();
        Ok(Graph { n: self.n - 1, adj })
    }

    /// `perm[v]` is the new label of vertex `v`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut g = Graph {
            n: self.n,
            adj: vec![0; self.n],
        };
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    g.add_edge(perm[u], perm[v]);
                }
            }
        }
        g
    }

    /// Header-less graph6: one size byte (`n + 63`, n ≤ 62), then the upper
    /// triangle column by column, six bits per byte.
    pub fn to_graph6(&self) -> String {
        let mut out = String::new();
        out.push((self.n as u8 + 63) as char);
        let mut acc = 0u8;
        let mut k = 0;
        for v in 1..self.n {
            for u in 0..v {
                acc = acc << 1 | self.has_edge(u, v) as u8;
                k += 1;
                if k == 6 {
                    out.push((acc + 63) as char);
                    acc = 0;
                    k = 0;
                }
            }
        }
        if k > 0 {
            out.push(((acc << (6 - k)) + 63) as char);
        }
        out
    }

    pub fn from_graph6(s: &str) -> Result<Graph> {
        let s = s.trim_end_matches(['\n', '\r']);
        let bytes = s.as_bytes();
        let bad = |msg: &str| Error::Parse(format!("graph6 {s:?}: {msg}"));
        let (&first, body) = bytes.split_first().ok_or_else(|| bad("empty"))?;
        if !(63..=126).contains(&first) {
            return Err(bad("bad size byte"));
        }
        if first == 126 {
            return Err(Error::Resource(format!(
                "graph6 {s:?}: more than 62 vertices"
            )));
        }
        let n = (first - 63) as usize;
        let mut g = Graph::empty(n)?;
        let bits = n * n.saturating_sub(1) / 2;
        if body.len() != bits.div_ceil(6) {
            return Err(bad("wrong length"));
        }
        let mut k = 0;
        for v in 1..n {
            for u in 0..v {
                let byte = body[k / 6];
                if !(63..=126).contains(&byte) {
                    return Err(bad("bad data byte"));
                }
                if (byte - 63) >> (5 - k % 6) & 1 == 1 {
                    g.add_edge(u, v);
                }
                k += 1;
            }
        }
        Ok(g)
    }
}
