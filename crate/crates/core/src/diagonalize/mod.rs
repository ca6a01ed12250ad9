//! Desk-scale stage searches of the oracle constructions, the test
//! language, accepting-path sets and conflicting sets.

pub mod det;
pub mod fixtures;
pub mod paths;
pub mod stage;

pub use det::{DetNode, DetOracleMachine, DetTree};
pub use paths::{accepting_path_sets, pair_check, Overlap, PairCheck, PathSetAnalysis};
pub use stage::{
    acc_conditions, acc_stage_search, gap_conditions, gap_stage_search, test_language_member,
    Condition, StageContext, StageKind, StageOutcome, DEFAULT_MAX_CANDIDATES,
};
