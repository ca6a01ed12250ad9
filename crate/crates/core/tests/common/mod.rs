#![allow(dead_code)]
//! Brute-force oracles shared by the integration tests. None of these reuse
//! the library's search code.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

/// Labeled graph as a sorted 0-based edge list.
pub type Labeled = Vec<(usize, usize)>;

pub fn all_labeled(n: usize) -> Vec<Labeled> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect()
        })
        .collect()
}

/// Minimum over all `n!` relabelings of the sorted relabeled edge list.
pub fn brute_canon(n: usize, edges: &Labeled) -> Labeled {
    (0..n)
        .permutations(n)
        .map(|p| {
            let mut e: Labeled = edges
                .iter()
                .map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v])))
                .collect();
            e.sort_unstable();
            e
        })
        .min()
        .unwrap_or_default()
}

pub fn brute_delete(edges: &Labeled, k: usize) -> Labeled {
    let shift = |v: usize| if v > k { v - 1 } else { v };
    edges
        .iter()
        .filter(|&&(u, v)| u != k && v != k)
        .map(|&(u, v)| (shift(u), shift(v)))
        .collect()
}

pub fn brute_deck(n: usize, edges: &Labeled) -> Vec<Labeled> {
    let mut cards: Vec<Labeled> = (0..n)
        .map(|k| brute_canon(n - 1, &brute_delete(edges, k)))
        .collect();
    cards.sort();
    cards
}

/// Isomorphism classes on `n` vertices and, for each class, the number of
/// classes sharing its deck.
pub fn brute_classes_and_pcounts(n: usize) -> BTreeMap<Labeled, u64> {
    let classes: BTreeSet<Labeled> = all_labeled(n).iter().map(|e| brute_canon(n, e)).collect();
    let mut by_deck: BTreeMap<Vec<Labeled>, u64> = BTreeMap::new();
    let decks: Vec<_> = classes.iter().map(|c| brute_deck(n, c)).collect();
    for d in &decks {
        *by_deck.entry(d.clone()).or_insert(0) += 1;
    }
    classes
        .into_iter()
        .zip(decks)
        .map(|(c, d)| (c, by_deck[&d]))
        .collect()
}

pub fn to_graph(n: usize, edges: &Labeled) -> gaplab::reconstruct::Graph {
    let one_based: Vec<_> = edges.iter().map(|&(u, v)| (u + 1, v + 1)).collect();
    gaplab::reconstruct::Graph::from_edges(n, &one_based).unwrap()
}

pub fn is_prime_trial(k: u64) -> bool {
    k >= 2 && (2..k).take_while(|d| d * d <= k).all(|d| !k.is_multiple_of(d))
}

pub fn sieve_pi(n: u64) -> u64 {
    (2..=n).filter(|&k| is_prime_trial(k)).count() as u64
}
