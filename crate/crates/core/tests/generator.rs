use shuntbound::generate::{generate_instance, GenError, GenParams};
use shuntbound::model::{validate_instance, Instance};
use shuntbound::oracle::{MAX_AGENTS, MAX_HORIZON, MAX_LOCATIONS};

fn check(inst: &Instance, seed: u64, params: &GenParams) {
    let report = validate_instance(inst);
    assert!(report.is_admissible(), "seed {seed}: {:?}", report.errors);
    assert_eq!(inst.seed, Some(seed));
    assert_eq!(inst.agents.len(), params.n_agents);
    assert_eq!(inst.goals.len(), params.n_agents);
    for (ty, (agents, goals)) in inst.type_counts() {
        assert_eq!(agents, goals, "seed {seed} type {ty}");
    }
    for a in &inst.agents {
        assert_eq!(a.tasks.len(), params.tasks_per_agent);
        assert!(a.tasks.iter().all(|t| (1..=params.max_duration).contains(&t.duration)));
    }
    let back = Instance::from_json(&inst.to_json()).unwrap();
    assert_eq!(back.to_json(), inst.to_json(), "seed {seed}: round trip");
}

#[test]
fn hundred_seeds_are_admissible() {
    let params = GenParams::default();
    for seed in 0..100 {
        check(&generate_instance(seed, &params).unwrap(), seed, &params);
    }
}

#[test]
fn tiny_instances_fit_the_oracle() {
    for seed in 0..100 {
        let params = GenParams::tiny(seed);
        let inst = generate_instance(seed, &params).unwrap();
        check(&inst, seed, &params);
        assert!(inst.agents.len() <= MAX_AGENTS);
        assert!(inst.graph.len() <= MAX_LOCATIONS);
        assert!(inst.horizon() <= MAX_HORIZON);
    }
}

#[test]
fn output_depends_only_on_seed() {
    let params = GenParams {
        n_tracks: 5,
        n_agents: 4,
        n_types: 2,
        ..GenParams::default()
    };
    for seed in [0, 7, 123_456] {
        let a = generate_instance(seed, &params).unwrap().to_json();
        let b = generate_instance(seed, &params).unwrap().to_json();
        assert_eq!(a, b);
    }
    let a = generate_instance(1, &params).unwrap().to_json();
    let b = generate_instance(2, &params).unwrap().to_json();
    assert_ne!(a, b);
}

#[test]
fn impossible_type_split_is_refused() {
    let params = GenParams {
        n_agents: 2,
        n_types: 3,
        ..GenParams::default()
    };
    assert!(matches!(generate_instance(0, &params), Err(GenError::TypeBalance(..))));
}
