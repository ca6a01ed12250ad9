//! Graph reconstruction: decks, canonical forms, preimage counting and
//! legitimacy.

pub mod canon;
pub mod deck;
pub mod graph;
pub mod padding;

pub use canon::{canonical_code, canonical_form, enumerate_graphs, is_isomorphic, CanonCode};
pub use deck::{
    deck, is_legitimate, passes_edge_prefilter, pcount, pcount_bounded, q_reconstruction_report,
    restricted_legitimate, Deck, QReport, QViolation, Restricted, SizeStats,
};
pub use graph::{Graph, DEFAULT_BOUND, MAX_VERTICES};
pub use padding::{deck_gap, multiplied_to_indexed, padded_targets, DeckGap, PaddedTarget};
