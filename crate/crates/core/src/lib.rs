//! Finite-domain toolkit for gap-definable counting classes: GapP closure
//! programs and target collapse, legitimate-deck counting for graph
//! reconstruction, polynomial encodings of oracle machines, and
//! stage-by-stage oracle diagonalization.

pub mod diagonalize;
pub mod error;
pub mod gap;
pub mod int_serde;
pub mod natpoly;
pub mod polyenc;
pub mod reconstruct;
pub mod word;

pub use error::{Error, Result};
pub use natpoly::NatPoly;
pub use word::{pair, unpair, Domain, StrMap, Word};
