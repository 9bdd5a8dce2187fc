//! Solvers for patterns whose labels are all `a` or `a+` over one symbol.
//!
//! * [`d_of_q`] / [`reduce_to_hom`]: the reduction to a classical
//!   homomorphism problem between two-labelled digraphs.
//! * [`classify_undirected_template`]: the undirected dichotomy, with the
//!   polynomial cases solved by [`solve_undirected_easy`].
//! * [`solve_path_template`]: directed-path templates, via scheduling with
//!   relative deadlines (all-`a` templates) or path consistency under the
//!   median polymorphism (mixed templates).

mod majority;
mod path;
mod scheduling;
mod two_labeled;
mod undirected;

use thiserror::Error;

use crate::nhom::SolveError;
use crate::rgp::LabelClass;

pub use majority::{is_majority_polymorphism, median_polymorphism, path_consistency_solve, Majority, MajorityTable};
pub use path::{
    collapse_levels, prune_plus_arcs, solve_path_template, to_scheduling, Collapsed, NoHomReason, PathVerdict, Pruned,
};
pub use scheduling::{
    check_schedule, solve_scheduling, DifferenceConstraint, NegativeCycle, ScheduleOutcome, SchedulingInstance,
};
pub use two_labeled::{
    d_of_q, hom_two_labeled, lift_to_n_hom, reduce_to_hom, verify_two_labeled_hom, TwoLabel, TwoLabeledDigraph,
};
pub use undirected::{
    audit_undirected_ncore, classify_undirected_template, easy_certificate, solve_undirected_easy, undirected_edges,
    verify_odd_cycle, TemplateClass, UndirectedEdge, Violation,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum UnaryError {
    #[error("labels must all be `s` or `s+` for one symbol, found {0:?}")]
    LabelClass(LabelClass),
    #[error("the template is not undirected")]
    NotUndirected,
    #[error("the template is not connected")]
    NotConnected,
    #[error("the template is not an n-core")]
    NotCore,
    #[error("the template is too large to verify as an n-core; assert it instead")]
    CoreUnverified,
    #[error("the template's a-edges have no odd cycle, so it cannot be an n-core with two or more edges")]
    NoOddCycle,
    #[error("the template's underlying digraph is not a directed path")]
    NotDirectedPath,
    #[error("the template class {0:?} has no polynomial solver")]
    NotEasy(TemplateClass),
    #[error("the table is not a majority polymorphism of the template")]
    MajorityNotCertified,
    #[error("greedy extraction failed: the template has no majority polymorphism")]
    ExtractionFailed,
    #[error(transparent)]
    Solve(#[from] SolveError),
}
