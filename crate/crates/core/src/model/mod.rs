//! Domain types, instance files, validation and the relaxation ladder.

mod builder;
mod file;
mod instance;
mod relax;
mod validate;
mod yard;

use thiserror::Error;

pub use builder::{line_graph, InstanceBuilder};
pub use file::{
    AgentFile, ArrivalFile, CostsFile, EdgeSpec, GoalFile, GraphSpec, InstanceFile, LocationSpec,
    TaskFile,
};
pub use instance::{
    Agent, Arrival, CostModel, GoalVertex, Instance, ModeFlags, ServiceTask, YardSource,
};
pub use relax::{relax_instance, LADDER_LEVELS, RELAXED_TYPE};
pub use validate::{validate_instance, Finding, FindingKind, ValidationReport};
pub use yard::{
    Connection, Dir, Edge, GraphError, LocId, Location, ServicePoint, Track, TrackGraph, YardSpec,
};

/// Path and arc costs. Integral so optima compare exactly.
pub type Cost = u64;

/// Discrete time step.
pub type Time = u32;

/// Service tasks per agent are tracked in a 32-bit completion mask.
pub const MAX_TASKS: usize = 32;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("malformed instance: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{context}: unknown location `{name}`")]
    UnknownLocation { context: String, name: String },
    #[error("task `{task}` of agent `{agent}` names neither locations nor a kind")]
    TaskWithoutLocations { agent: String, task: String },
    #[error("invalid ladder level {0} (expected 0..=3)")]
    InvalidLevel(u8),
    #[error("the relaxation ladder is defined for matching-mode instances")]
    LadderNeedsMatching,
}
