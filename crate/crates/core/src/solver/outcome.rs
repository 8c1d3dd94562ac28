use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::model::{Cost, Instance, Time};
use crate::planner::{Solution, SolutionFile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Optimal,
    Infeasible,
    /// No solution of cost at most the requested bound exists.
    InfeasibleDecision,
    Timeout,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Optimal => "Optimal",
            Status::Infeasible => "Infeasible",
            Status::InfeasibleDecision => "Infeasible(decision)",
            Status::Timeout => "Timeout",
        }
    }

    pub fn is_infeasible(self) -> bool {
        matches!(self, Status::Infeasible | Status::InfeasibleDecision)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Status {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [
            Status::Optimal,
            Status::Infeasible,
            Status::InfeasibleDecision,
            Status::Timeout,
        ]
        .into_iter()
        .find(|st| st.as_str() == s)
        .ok_or_else(|| format!("unknown status `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Engine {
    Cbs,
    Oracle,
}

impl Engine {
    pub fn as_str(self) -> &'static str {
        match self {
            Engine::Cbs => "cbs",
            Engine::Oracle => "oracle",
        }
    }
}

/// Result of a solver or oracle run.
///
/// `cost` is set for `Optimal`. `lower_bound` is a proven bound on the
/// optimal cost; for infeasible outcomes it is the last bound reached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub engine: Engine,
    pub status: Status,
    pub cost: Option<Cost>,
    pub lower_bound: Option<Cost>,
    pub horizon: Time,
    pub nodes_expanded: u64,
    pub runtime_ms: u64,
    pub solution: Option<Solution>,
}

/// Serialized form of an [`Outcome`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeFile {
    pub engine: String,
    pub status: String,
    pub cost: Option<Cost>,
    pub lower_bound: Option<Cost>,
    pub horizon: Time,
    pub nodes_expanded: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
    pub solution: Option<SolutionFile>,
}

impl Outcome {
    /// Wall-clock time is left out unless `timing` is set, so that repeated
    /// runs serialize identically.
    pub fn to_file(&self, instance: &Instance, timing: bool) -> OutcomeFile {
        OutcomeFile {
            engine: self.engine.as_str().to_string(),
            status: self.status.as_str().to_string(),
            cost: self.cost,
            lower_bound: self.lower_bound,
            horizon: self.horizon,
            nodes_expanded: self.nodes_expanded,
            runtime_ms: timing.then_some(self.runtime_ms),
            solution: self.solution.as_ref().map(|s| s.to_file(instance)),
        }
    }

    pub fn to_json(&self, instance: &Instance, timing: bool) -> String {
        let mut text = serde_json::to_string_pretty(&self.to_file(instance, timing))
            .expect("outcome serializes");
        text.push('\n');
        text
    }
}
