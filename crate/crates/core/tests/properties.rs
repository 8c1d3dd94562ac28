use proptest::prelude::*;

use shuntbound::generate::{generate_instance, GenParams};
use shuntbound::graph::{DistanceTable, UNREACHABLE};
use shuntbound::model::{relax_instance, Instance, LocId, ModeFlags};
use shuntbound::oracle::{brute_force, step_is_legal};
use shuntbound::planner::{detect_conflicts, plan_single, validate_solution, Path, Solution, Violation};
use shuntbound::solver::{hungarian, Status};

fn tiny(seed: u64) -> Instance {
    generate_instance(seed, &GenParams::tiny(seed)).unwrap()
}

/// Each agent on its own cheapest path, ignoring the others.
fn independent_paths(inst: &Instance) -> Option<Solution> {
    let n = inst.agents.len();
    let plan = |a: usize, g: Option<usize>| plan_single(inst, a, g, &[]);
    let goals: Vec<Option<usize>> = if inst.mode.matching {
        let costs: Vec<Vec<_>> = (0..n)
            .map(|a| {
                (0..inst.goals.len())
                    .map(|j| {
                        (inst.goals[j].goal_type == inst.agents[a].agent_type)
                            .then(|| plan(a, Some(j)).map(|p| p.cost))
                            .flatten()
                    })
                    .collect()
            })
            .collect();
        hungarian(&costs)?.0.into_iter().map(Some).collect()
    } else {
        vec![None; n]
    };
    let paths = (0..n).map(|a| plan(a, goals[a])).collect::<Option<Vec<Path>>>()?;
    Some(Solution { paths })
}

fn all_steps_legal(inst: &Instance, sol: &Solution) -> bool {
    let parks = !inst.mode.matching;
    let end = sol.paths.iter().map(Path::end_time).max().unwrap_or(0) + 1;
    let at = |t: u32| -> Vec<Option<LocId>> {
        sol.paths.iter().map(|p| p.position(t, parks).map(|(l, _)| l)).collect()
    };
    let mut before = vec![None; sol.paths.len()];
    for t in 0..=end {
        let after = at(t);
        if !step_is_legal(&before, &after) {
            return false;
        }
        before = after;
    }
    true
}

fn classic(inst: &Instance) -> Instance {
    let mut c = inst.clone();
    c.mode = ModeFlags {
        directions: inst.mode.directions,
        ..ModeFlags::CLASSIC
    };
    for (a, agent) in c.agents.iter_mut().enumerate() {
        agent.goal = Some(inst.goals[a].location);
    }
    c.goals.clear();
    c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relaxation_is_idempotent_and_balanced(seed in 0u64..5000, level in 0u8..=3) {
        let inst = tiny(seed);
        let once = relax_instance(&inst, level).unwrap();
        let twice = relax_instance(&once, level).unwrap();
        prop_assert_eq!(once.to_json(), twice.to_json());
        for (ty, (agents, goals)) in once.type_counts() {
            prop_assert_eq!(agents, goals, "type {}", ty);
        }
        prop_assert_eq!(once.horizon(), inst.horizon());
    }

    #[test]
    fn headings_only_restrict_reachability(seed in 0u64..5000, rev in 0u64..4) {
        let mut inst = tiny(seed);
        inst.costs.reversal_cost = rev;
        inst.mode.directions = true;
        let directed = DistanceTable::new(&inst);
        inst.mode.directions = false;
        let plain = DistanceTable::new(&inst);
        for a in inst.graph.ids() {
            for b in inst.graph.ids() {
                let d = directed.loc_cost(a, b);
                let u = plain.loc_cost(a, b);
                if d < UNREACHABLE {
                    prop_assert!(u <= d, "{:?}->{:?}: {} > {}", a, b, u, d);
                }
                prop_assert!(plain.loc_hops(a, b) <= directed.loc_hops(a, b));
            }
        }
    }

    #[test]
    fn optimum_ignores_agent_order(seed in 0u64..5000, level in 0u8..=3, rot in 1usize..3) {
        let inst = relax_instance(&tiny(seed), level).unwrap();
        let mut shuffled = inst.clone();
        let k = rot % shuffled.agents.len().max(1);
        shuffled.agents.rotate_left(k);
        let a = brute_force(&inst).unwrap();
        let b = brute_force(&shuffled).unwrap();
        prop_assert_eq!(a.status, b.status);
        prop_assert_eq!(a.cost, b.cost);
    }

    #[test]
    fn reversal_cost_is_monotone(seed in 0u64..5000, low in 0u64..3, extra in 1u64..4) {
        let mut inst = tiny(seed);
        inst.mode.directions = true;
        inst.costs.reversal_cost = low;
        let cheap = brute_force(&inst).unwrap();
        inst.costs.reversal_cost = low + extra;
        let dear = brute_force(&inst).unwrap();
        // the feasible set does not depend on the cost
        prop_assert_eq!(cheap.status, dear.status);
        if let (Some(c), Some(d)) = (cheap.cost, dear.cost) {
            prop_assert!(c <= d);
        }
    }

    #[test]
    fn conflict_checks_agree(seed in 0u64..5000, level in 0u8..=3, fixed in any::<bool>()) {
        let relaxed = relax_instance(&tiny(seed), level).unwrap();
        let inst = if fixed { classic(&relaxed) } else { relaxed };
        let Some(sol) = independent_paths(&inst) else {
            return Ok(());
        };
        let conflict_free = detect_conflicts(&sol.paths, &inst).is_empty();
        let legal = all_steps_legal(&inst, &sol);
        let report = validate_solution(&inst, &sol);
        let clean = !report.violations.iter().any(|v| matches!(v, Violation::Conflict { .. }));
        prop_assert_eq!(conflict_free, legal);
        prop_assert_eq!(conflict_free, clean);
        if conflict_free {
            // conflict-free independent paths are jointly optimal
            let oracle = brute_force(&inst).unwrap();
            prop_assert_eq!(oracle.status, Status::Optimal);
            prop_assert_eq!(oracle.cost, Some(sol.cost()));
        }
    }
}

#[test]
fn conflict_property_sees_both_outcomes() {
    let (mut clean, mut clashing) = (0, 0);
    for seed in 0..200 {
        let inst = classic(&tiny(seed));
        if let Some(sol) = independent_paths(&inst) {
            if detect_conflicts(&sol.paths, &inst).is_empty() {
                clean += 1;
            } else {
                clashing += 1;
            }
        }
    }
    assert!(clean >= 10 && clashing >= 10, "{clean} clean, {clashing} clashing");
}
