use super::file::{
    AgentFile, ArrivalFile, CostsFile, EdgeSpec, GoalFile, GraphSpec, InstanceFile, LocationSpec,
    TaskFile,
};
use super::instance::{Instance, ModeFlags, YardSource};
use super::yard::Dir;
use super::{Cost, ModelError, Time};

/// Fluent construction of small instances, going through the same
/// resolution path as instance files.
#[derive(Debug, Clone)]
pub struct InstanceBuilder {
    file: InstanceFile,
}

/// A chain of named locations, each joined right-to-left to the next.
pub fn line_graph(names: &[&str], reversible: bool) -> GraphSpec {
    GraphSpec {
        locations: names
            .iter()
            .map(|n| LocationSpec {
                name: n.to_string(),
                reversible,
                no_parking: false,
                tasks: Vec::new(),
            })
            .collect(),
        edges: names
            .windows(2)
            .map(|w| EdgeSpec {
                from: w[0].to_string(),
                from_side: Dir::Right,
                to: w[1].to_string(),
                to_side: Dir::Left,
            })
            .collect(),
    }
}

impl InstanceBuilder {
    pub fn new(yard: YardSource) -> Self {
        InstanceBuilder {
            file: InstanceFile {
                yard,
                agents: Vec::new(),
                goals: Vec::new(),
                costs: CostsFile::default(),
                mode: ModeFlags::CLASSIC,
                horizon: None,
                max_dwell: None,
                seed: None,
            },
        }
    }

    pub fn graph(spec: GraphSpec) -> Self {
        Self::new(YardSource::Graph(spec))
    }

    /// Line of reversible locations.
    pub fn line(names: &[&str]) -> Self {
        Self::graph(line_graph(names, true))
    }

    pub fn mode(mut self, mode: ModeFlags) -> Self {
        self.file.mode = mode;
        self
    }

    pub fn agent(mut self, id: &str, agent_type: &str, location: &str, time: Time) -> Self {
        self.file.agents.push(AgentFile {
            id: id.into(),
            agent_type: agent_type.into(),
            arrival: ArrivalFile {
                location: location.into(),
                time,
                direction: None,
            },
            tasks: Vec::new(),
            goal: None,
        });
        self
    }

    /// Sets the arrival heading of the most recently added agent.
    pub fn heading(mut self, dir: Dir) -> Self {
        self.last_agent().arrival.direction = Some(dir);
        self
    }

    /// Sets the fixed (classic-mode) goal of the most recently added agent.
    pub fn fixed_goal(mut self, location: &str) -> Self {
        self.last_agent().goal = Some(location.into());
        self
    }

    /// Adds a service task to the most recently added agent.
    pub fn task(mut self, id: &str, locations: &[&str], duration: u32) -> Self {
        self.last_agent().tasks.push(TaskFile {
            id: id.into(),
            kind: None,
            locations: Some(locations.iter().map(|s| s.to_string()).collect()),
            duration,
        });
        self
    }

    pub fn goal(mut self, location: &str, time: Time, goal_type: &str) -> Self {
        self.file.goals.push(GoalFile {
            location: location.into(),
            time,
            goal_type: goal_type.into(),
        });
        self
    }

    pub fn costs(mut self, move_cost: Cost, wait_cost: Cost, reversal_cost: Cost) -> Self {
        self.file.costs = CostsFile {
            move_cost: Some(move_cost),
            wait_cost: Some(wait_cost),
            reversal_cost: Some(reversal_cost),
        };
        self
    }

    pub fn reversal_cost(mut self, reversal_cost: Cost) -> Self {
        self.file.costs.reversal_cost = Some(reversal_cost);
        self
    }

    pub fn horizon(mut self, horizon: Time) -> Self {
        self.file.horizon = Some(horizon);
        self
    }

    pub fn max_dwell(mut self, max_dwell: u32) -> Self {
        self.file.max_dwell = Some(max_dwell);
        self
    }

    pub fn build(self) -> Result<Instance, ModelError> {
        Instance::from_file(self.file)
    }

    fn last_agent(&mut self) -> &mut AgentFile {
        self.file
            .agents
            .last_mut()
            .expect("add an agent before configuring it")
    }
}
