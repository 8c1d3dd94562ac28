//! Location graph construction, the direction split, and on-demand
//! expansion of the time-expanded state space.

mod directed;
mod discretize;
mod distances;
mod state;

pub use directed::{split_directions, ArcKind, DirNode, DirectedYardGraph};
pub use discretize::{discretize_yard, track_units};
pub use distances::{DistanceTable, UNREACHABLE, UNREACHABLE_HOPS};
pub use state::{neighbors, AgentSpace, SearchState, StepKind, Successor};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Dir, InstanceBuilder, LocId, ModeFlags};

    fn locs(succ: &[Successor]) -> Vec<(u32, u32)> {
        let mut v: Vec<_> = succ.iter().map(|s| (s.state.loc.0, s.state.t)).collect();
        v.sort();
        v
    }

    #[test]
    fn line_expansion() {
        let inst = InstanceBuilder::line(&["A", "B", "C"])
            .agent("a", "x", "A", 0)
            .fixed_goal("C")
            .build()
            .unwrap();
        let space = AgentSpace::new(&inst, 0);
        let b = space.settle(LocId(1), None, 1, 0, 1);
        let succ = space.neighbors(&b);
        assert_eq!(locs(&succ), vec![(0, 2), (1, 2), (2, 2)]);
        let wait = succ.iter().find(|s| s.kind == StepKind::Wait).unwrap();
        assert_eq!(wait.cost, 1);
        assert!(succ.iter().all(|s| s.state.t == b.t + 1));
    }

    #[test]
    fn no_successors_at_horizon() {
        let inst = InstanceBuilder::line(&["A", "B"])
            .agent("a", "x", "A", 0)
            .fixed_goal("B")
            .horizon(3)
            .build()
            .unwrap();
        let space = AgentSpace::new(&inst, 0);
        assert!(space.neighbors(&space.settle(LocId(0), None, 3, 0, 1)).is_empty());
    }

    #[test]
    fn waiting_completes_task_at_duration() {
        let inst = InstanceBuilder::line(&["A", "B", "C"])
            .mode(ModeFlags {
                matching: true,
                timed: true,
                services: true,
                directions: false,
            })
            .agent("a", "x", "A", 0)
            .task("s", &["B"], 2)
            .goal("C", 4, "x")
            .build()
            .unwrap();
        let space = AgentSpace::new(&inst, 0);
        // entering B counts as the first occupied step
        let at_b = space.settle(LocId(1), None, 1, 0, 1);
        assert_eq!(at_b.done, 0);
        assert_eq!(at_b.run, 1);
        let succ = space.neighbors(&at_b);
        let wait = succ.iter().find(|s| s.kind == StepKind::Wait).unwrap();
        assert_eq!(wait.state.done, 1);
        assert!(space.is_complete(&wait.state));
        // leaving after one step resets the dwell
        let moved = succ.iter().find(|s| s.state.loc == LocId(2)).unwrap();
        assert_eq!(moved.state.done, 0);
    }

    #[test]
    fn dwell_requires_single_location() {
        let inst = InstanceBuilder::line(&["A", "B", "C"])
            .mode(ModeFlags {
                matching: true,
                timed: true,
                services: true,
                directions: false,
            })
            .agent("a", "x", "A", 0)
            .task("s", &["A", "B"], 2)
            .goal("C", 5, "x")
            .build()
            .unwrap();
        let space = AgentSpace::new(&inst, 0);
        let start = space.entry_states(LocId(0), None, 0)[0];
        assert_eq!(start.run, 1);
        let to_b = space.step_to(&start, LocId(1), None).unwrap();
        assert_eq!(to_b.state.done, 0);
        assert_eq!(to_b.state.run, 1);
    }

    #[test]
    fn no_parking_without_dwell_has_no_wait() {
        let mut spec = crate::model::line_graph(&["A", "B", "C"], true);
        spec.locations[1].no_parking = true;
        let inst = InstanceBuilder::graph(spec)
            .agent("a", "x", "A", 0)
            .fixed_goal("C")
            .max_dwell(0)
            .build()
            .unwrap();
        let space = AgentSpace::new(&inst, 0);
        let b = space.settle(LocId(1), None, 1, 0, 1);
        let succ = space.neighbors(&b);
        assert!(succ.iter().all(|s| s.kind != StepKind::Wait));
        assert_eq!(succ.len(), 2);
        // a regular location still allows waiting
        let a = space.settle(LocId(0), None, 1, 0, 1);
        assert!(space.neighbors(&a).iter().any(|s| s.kind == StepKind::Wait));
    }

    #[test]
    fn no_parking_dwell_limit_counts_stays() {
        let mut spec = crate::model::line_graph(&["A", "B", "C"], true);
        spec.locations[1].no_parking = true;
        let inst = InstanceBuilder::graph(spec)
            .agent("a", "x", "A", 0)
            .fixed_goal("C")
            .max_dwell(2)
            .build()
            .unwrap();
        let space = AgentSpace::new(&inst, 0);
        let mut s = space.settle(LocId(1), None, 1, 0, 1);
        for _ in 0..2 {
            s = space.step_to(&s, LocId(1), None).expect("stay allowed").state;
        }
        assert!(space.step_to(&s, LocId(1), None).is_none());
    }

    #[test]
    fn headings_restrict_moves_and_reversal_costs() {
        let inst = InstanceBuilder::line(&["X", "V", "Y"])
            .mode(ModeFlags {
                matching: true,
                timed: true,
                directions: true,
                services: false,
            })
            .reversal_cost(7)
            .agent("a", "x", "V", 0)
            .heading(Dir::Left)
            .goal("Y", 2, "x")
            .build()
            .unwrap();
        let space = AgentSpace::new(&inst, 0);
        let start = space.entry_states(LocId(1), Some(Dir::Left), 0)[0];
        let succ = space.neighbors(&start);
        let mut got: Vec<_> = succ
            .iter()
            .map(|s| (s.state.loc.0, s.state.dir, s.cost, s.kind))
            .collect();
        got.sort_by_key(|g| (g.0, g.1));
        assert_eq!(
            got,
            vec![
                (0, Some(Dir::Left), 1, StepKind::Move),
                (1, Some(Dir::Left), 0, StepKind::Wait),
                (1, Some(Dir::Right), 7, StepKind::Reverse),
            ]
        );
    }
}
