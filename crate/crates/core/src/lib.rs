//! Complete, optimal solver for multi-agent path finding relaxations of
//! train unit shunting and servicing.

pub mod bench;
pub mod generate;
pub mod graph;
pub mod model;
pub mod oracle;
pub mod planner;
pub mod solver;
