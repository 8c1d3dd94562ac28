//! Single-agent search under constraints, conflict detection and solution
//! validation.

mod astar;
mod conflict;
mod constraint;
mod heuristic;
mod path;
mod validate;

pub use astar::{plan_single, Planner, Target};
pub use conflict::{detect_conflicts, first_conflict, Conflict, ConflictKind};
pub use constraint::{AgentConstraints, Constraint};
pub use heuristic::{admissible_heuristic, Heuristic};
pub use path::{Path, PathFile, Solution, SolutionError, SolutionFile, StateFile};
pub use validate::{validate_solution, SolutionReport, Violation};
