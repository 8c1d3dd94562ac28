//! High-level search over conflicts and goal assignments.

mod assignment;
mod cbs;
mod outcome;

pub use assignment::{hungarian, next_best_assignment, Assignment, AssignmentEnumerator};
pub use cbs::{lower_bound, solve, SolveConfig, SolveError};
pub use outcome::{Engine, Outcome, OutcomeFile, Status};
