//! Gap functions: choice trees, base machines, closure programs and the
//! target-collapse compilers.

pub mod collapse;
pub mod dsl;
pub mod fixtures;
pub mod fp;
pub mod machine;
pub mod program;
pub mod realize;
pub mod target;
pub mod tree;
pub mod verify;

pub use collapse::{
    collapse_ceqp, collapse_lwpp, collapse_two_sided, collapse_wpp, exp_target_enumerator,
    Collapsed,
};
pub use fp::{FpFunc, IndexRange};
pub use machine::BaseMachine;
pub use program::{poly_product, GapProgram};
pub use realize::{realize, realize_at};
pub use target::{TargetMode, TargetSpec, TwoSidedTargetSpec};
pub use tree::{ChoiceTree, Node, PathCounts};
pub use verify::{verify_class_membership, ClassSpec, MembershipClass, Report, Verdict, Violation};
