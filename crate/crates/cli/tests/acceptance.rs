//! Acceptance suite. Prints one PASS/FAIL line per criterion and fails if
//! any criterion fails. Tolerances and sizes are the constants below.

use std::path::Path as FsPath;
use std::process::Command;
use std::thread;
use std::time::{Duration, Instant};

use anyhow::{bail, ensure, Context, Result};

use shuntbound::generate::{generate_instance, GenParams};
use shuntbound::graph::{split_directions, AgentSpace, SearchState};
use shuntbound::model::{
    relax_instance, Dir, EdgeSpec, GraphSpec, Instance, InstanceBuilder, LocId, LocationSpec, ModeFlags,
    LADDER_LEVELS,
};
use shuntbound::oracle::{brute_force, step_is_legal};
use shuntbound::planner::{detect_conflicts, validate_solution, ConflictKind, Path, Solution, Violation};
use shuntbound::solver::{lower_bound, solve, Outcome, SolveConfig, Status};

/// Criteria 1 and 2: suite size and runtime.
const SUITE_SEEDS: std::ops::Range<u64> = 10_000..10_130;
const MIN_RUNS: usize = 500;
const SUITE_MAX_HORIZON: u32 = 10;
const SUITE_MAX_SECONDS: u64 = 300;
/// Criterion 3.
const MIN_MATCHING_CASES: usize = 50;
/// Criterion 4.
const REVERSAL_COSTS: [u64; 4] = [1, 2, 3, 5];
/// Criterion 5.
const DURATIONS: [u32; 3] = [1, 2, 3];
/// Criterion 6: per micro-instance wall-clock limit.
const MICRO_MAX: Duration = Duration::from_secs(1);
/// Criterion 7.
const REPETITIONS: usize = 10;
/// Criterion 8.
const SCALE_SEEDS: [u64; 3] = [2, 15, 16];
const SCALE_LOCATIONS: std::ops::RangeInclusive<usize> = 35..=45;
const SCALE_AGENTS: usize = 8;
const SCALE_BUDGET: Duration = Duration::from_secs(60);
/// Time allowed past the budget for the solver to notice it and return.
const SCALE_OVERRUN: Duration = Duration::from_secs(10);

fn tiny(seed: u64) -> Instance {
    generate_instance(seed, &GenParams::tiny(seed)).expect("tiny instance")
}

fn cbs(inst: &Instance) -> Outcome {
    solve(inst, &SolveConfig::default()).expect("solver accepts instance")
}

fn oracle(inst: &Instance) -> Outcome {
    brute_force(inst).expect("oracle accepts instance")
}

fn check_solution(inst: &Instance, out: &Outcome, label: &str) -> Result<()> {
    if let Some(sol) = &out.solution {
        let report = validate_solution(inst, sol);
        ensure!(report.is_valid(), "{label}: invalid solution: {:?}", report.violations);
        ensure!(Some(report.recomputed_cost) == out.cost, "{label}: cost differs from its solution");
    }
    Ok(())
}

struct SuiteRun {
    seed: u64,
    level: u8,
    status: Status,
    cost: Option<u64>,
}

fn ladder_suite() -> Result<(Vec<SuiteRun>, Duration)> {
    let start = Instant::now();
    let mut runs = Vec::new();
    for seed in SUITE_SEEDS {
        let inst = tiny(seed);
        ensure!(inst.agents.len() <= 3 && inst.graph.len() <= 12, "seed {seed}: too large");
        ensure!(inst.horizon() <= SUITE_MAX_HORIZON, "seed {seed}: horizon");
        for level in LADDER_LEVELS {
            let r = relax_instance(&inst, level)?;
            let label = format!("seed {seed} level {level}");
            let o = oracle(&r);
            let s = cbs(&r);
            ensure!(s.status == o.status, "{label}: verdict {} vs oracle {}", s.status, o.status);
            ensure!(s.cost == o.cost, "{label}: cost {:?} vs oracle {:?}", s.cost, o.cost);
            check_solution(&r, &s, &label)?;
            check_solution(&r, &o, &label)?;
            runs.push(SuiteRun {
                seed,
                level,
                status: s.status,
                cost: s.cost,
            });
        }
    }
    Ok((runs, start.elapsed()))
}

fn criterion_1(suite: &Result<(Vec<SuiteRun>, Duration)>) -> Result<String> {
    let (runs, took) = suite.as_ref().map_err(|e| anyhow::anyhow!("{e:#}"))?;
    ensure!(runs.len() >= MIN_RUNS, "only {} runs", runs.len());
    ensure!(took.as_secs() < SUITE_MAX_SECONDS, "suite took {took:?}");
    let feasible = runs.iter().filter(|r| r.status == Status::Optimal).count();
    ensure!(feasible > 0 && feasible < runs.len(), "suite lacks feasible or infeasible runs");
    Ok(format!(
        "{} runs, {} feasible, costs and verdicts identical, {:.1}s",
        runs.len(),
        feasible,
        took.as_secs_f64()
    ))
}

fn criterion_2(suite: &Result<(Vec<SuiteRun>, Duration)>) -> Result<String> {
    let (runs, _) = suite.as_ref().map_err(|e| anyhow::anyhow!("{e:#}"))?;
    let mut violations = Vec::new();
    let mut strict = 0;
    for chunk in runs.chunks(LADDER_LEVELS.len()) {
        for w in chunk.windows(2) {
            let (lo, hi) = (&w[0], &w[1]);
            debug_assert_eq!(lo.seed, hi.seed);
            // an infeasible level counts as infinite cost
            let ok = match (lo.cost, hi.cost) {
                (Some(a), Some(b)) => a <= b,
                (None, Some(_)) => false,
                (_, None) => true,
            };
            if !ok {
                violations.push(format!("seed {} level {}->{}", lo.seed, lo.level, hi.level));
            }
            strict += usize::from(lo.cost < hi.cost || (lo.cost.is_some() && hi.cost.is_none()));
        }
    }
    ensure!(violations.is_empty(), "{} violations: {:?}", violations.len(), violations);
    Ok(format!("{} instances, 0 violations, {} strict increases", runs.len() / 4, strict))
}

/// Two agents at the ends of a line that must trade ends in classic mode.
/// With `siding` a one-location siding hangs off the second location.
fn swap_family(len: usize, siding: bool, directions: bool, stagger: u32) -> (Instance, Instance) {
    let names: Vec<String> = (0..len).map(|i| format!("P{i}")).collect();
    let mut locations: Vec<LocationSpec> = names.iter().map(|n| LocationSpec::new(n)).collect();
    let mut edges: Vec<EdgeSpec> = names.windows(2).map(|w| EdgeSpec::new(&w[0], &w[1])).collect();
    if siding {
        locations.push(LocationSpec::new("S"));
        edges.push(EdgeSpec::new("P1", "S"));
    }
    let spec = GraphSpec { locations, edges };
    let (first, last) = (names[0].as_str(), names[len - 1].as_str());
    let goal_time = len as u32 + 2 + stagger;
    let classic = InstanceBuilder::graph(spec.clone())
        .mode(ModeFlags {
            directions,
            ..ModeFlags::CLASSIC
        })
        .agent("a", "x", first, 0)
        .heading(Dir::Right)
        .fixed_goal(last)
        .agent("b", "x", last, stagger)
        .heading(Dir::Left)
        .fixed_goal(first)
        .horizon(goal_time)
        .build()
        .expect("classic swap instance");
    let matching = InstanceBuilder::graph(spec)
        .mode(ModeFlags {
            matching: true,
            timed: true,
            directions,
            services: false,
        })
        .agent("a", "x", first, 0)
        .heading(Dir::Right)
        .agent("b", "x", last, stagger)
        .heading(Dir::Left)
        .goal(last, goal_time, "x")
        .goal(first, goal_time - 1, "x")
        .horizon(goal_time)
        .build()
        .expect("matching swap instance");
    (classic, matching)
}

fn criterion_3() -> Result<String> {
    let (mut cases, mut classic_infeasible) = (0, 0);
    for len in 3..=7 {
        for siding in [false, true] {
            for directions in [false, true] {
                for stagger in 0..3 {
                    let label = format!("len {len} siding {siding} directions {directions} stagger {stagger}");
                    let (classic, matching) = swap_family(len, siding, directions, stagger);
                    let fixed = cbs(&classic);
                    check_solution(&classic, &fixed, &label)?;
                    for level in [1, 2, 3] {
                        let r = relax_instance(&matching, level)?;
                        let m = cbs(&r);
                        ensure!(m.status == Status::Optimal, "{label} level {level}: matching {}", m.status);
                        check_solution(&r, &m, &label)?;
                        if r.graph.len() <= 12 && r.horizon() <= 12 {
                            ensure!(oracle(&r).cost == m.cost, "{label} level {level}: oracle disagrees");
                        }
                        if let Some(c) = fixed.cost {
                            ensure!(m.cost.unwrap() < c, "{label} level {level}: no improvement over {c}");
                        }
                    }
                    classic_infeasible += usize::from(fixed.status == Status::Infeasible);
                    cases += 1;
                }
            }
        }
    }
    ensure!(cases >= MIN_MATCHING_CASES, "only {cases} cases");
    ensure!(classic_infeasible > 0 && classic_infeasible < cases, "cases lack variety");
    Ok(format!(
        "{cases} cases improved at levels 1-3 ({classic_infeasible} classic-infeasible, {} classic-costlier)",
        cases - classic_infeasible
    ))
}

/// X - V - Y with one agent at V facing `heading`; it must be at Y at t=2.
fn gadget(heading: Dir, reversal_cost: u64) -> Instance {
    InstanceBuilder::line(&["X", "V", "Y"])
        .mode(ModeFlags {
            matching: true,
            timed: true,
            directions: true,
            services: false,
        })
        .reversal_cost(reversal_cost)
        .agent("a", "x", "V", 0)
        .heading(heading)
        .goal("Y", 2, "x")
        .build()
        .expect("gadget")
}

fn criterion_4() -> Result<String> {
    for c_rev in REVERSAL_COSTS {
        let facing = gadget(Dir::Right, c_rev);
        let away = gadget(Dir::Left, c_rev);
        for inst in [&facing, &away] {
            let s = cbs(inst);
            ensure!(s.cost == oracle(inst).cost, "c_rev {c_rev}: oracle disagrees");
            check_solution(inst, &s, "gadget")?;
        }
        let (straight, turned) = (cbs(&facing).cost.unwrap(), cbs(&away).cost.unwrap());
        ensure!(turned - straight == c_rev, "c_rev {c_rev}: reversal cost {}", turned - straight);
        let split = split_directions(&away.graph, c_rev);
        let v = away.graph.lookup("V").unwrap();
        let (l, r) = split.pair(v);
        ensure!(split.reversal_cost() == c_rev && split.reversals().contains(&(l, r)), "split arcs");
    }

    // two agents on the two halves of V at once
    let inst = InstanceBuilder::line(&["X", "V", "Y"])
        .mode(ModeFlags {
            directions: true,
            ..ModeFlags::CLASSIC
        })
        .agent("a", "x", "X", 0)
        .heading(Dir::Right)
        .fixed_goal("V")
        .agent("b", "x", "Y", 0)
        .heading(Dir::Left)
        .fixed_goal("V")
        .build()?;
    let v = inst.graph.lookup("V").unwrap();
    let paths: Vec<Path> = (0..2)
        .map(|a| {
            let space = AgentSpace::new(&inst, a);
            let arrival = inst.agents[a].arrival;
            let start = space.entry_states(arrival.location, arrival.direction, 0)[0];
            let heading = [Dir::Right, Dir::Left][a];
            let next = space.step_to(&start, v, Some(heading)).expect("step into V");
            Path {
                agent: a,
                goal: None,
                states: vec![start, next.state],
                cost: next.cost,
            }
        })
        .collect();
    ensure!(paths[0].states[1].dir != paths[1].states[1].dir, "agents should face opposite ways");
    let conflicts = detect_conflicts(&paths, &inst);
    ensure!(
        conflicts.iter().any(|c| c.kind == ConflictKind::PairCapacity && c.loc == v && c.t == 1),
        "pair capacity not detected: {conflicts:?}"
    );
    let report = validate_solution(&inst, &Solution { paths });
    ensure!(
        report.violations.iter().any(|v| matches!(v, Violation::Conflict { .. })),
        "validator accepted shared location"
    );
    let (x, y) = (inst.graph.lookup("X"), inst.graph.lookup("Y"));
    ensure!(!step_is_legal(&[x, y], &[Some(v), Some(v)]), "oracle allows shared location");
    ensure!(oracle(&inst).status == Status::Infeasible && cbs(&inst).status == Status::Infeasible);
    Ok(format!("reversal adds exactly c_rev for {REVERSAL_COSTS:?}; pair capacity enforced"))
}

/// A - B - C - D with a siding S off B and T beyond S; services at S (and T).
fn service_yard(tau: u32, two_sites: bool, mode: ModeFlags, agents: usize) -> Instance {
    let spec = GraphSpec {
        locations: ["A", "B", "C", "D", "S", "T"].iter().map(|n| LocationSpec::new(n)).collect(),
        edges: vec![
            EdgeSpec::new("A", "B"),
            EdgeSpec::new("B", "C"),
            EdgeSpec::new("C", "D"),
            EdgeSpec::new("B", "S"),
            EdgeSpec::new("S", "T"),
        ],
    };
    let sites: &[&str] = if two_sites { &["S", "T"] } else { &["S"] };
    let mut b = InstanceBuilder::graph(spec)
        .mode(mode)
        .horizon(12)
        .agent("a", "x", "A", 0)
        .heading(Dir::Right)
        .task("svc", sites, tau);
    if !mode.matching {
        b = b.fixed_goal("D");
    }
    if agents == 2 {
        b = b.agent("b", "x", "D", 1).heading(Dir::Left).task("svc", sites, tau);
        if !mode.matching {
            b = b.fixed_goal("A");
        }
    }
    if mode.matching {
        b = b.goal("D", 10, "x");
        if agents == 2 {
            b = b.goal("A", 11, "x");
        }
    }
    b.build().expect("service instance")
}

/// Longest stay at one location of `sites`, counting the entering step.
fn longest_dwell(path: &Path, sites: &[LocId]) -> u32 {
    let (mut best, mut run, mut prev) = (0, 0, None);
    for s in &path.states {
        run = if Some(s.loc) == prev { run + 1 } else { 1 };
        prev = Some(s.loc);
        if sites.contains(&s.loc) {
            best = best.max(run);
        }
    }
    best
}

/// Walks `locs` from the agent's arrival with the model's own step rules.
fn walk(inst: &Instance, agent: usize, locs: &[&str]) -> Result<Path> {
    let space = AgentSpace::new(inst, agent);
    let arrival = inst.agents[agent].arrival;
    let mut state: SearchState = space.entry_states(arrival.location, arrival.direction, arrival.time)[0];
    let mut states = vec![state];
    let mut cost = 0;
    for name in locs {
        let loc = inst.graph.lookup(name).context("unknown location")?;
        let step = space.step_to(&state, loc, None).with_context(|| format!("no step to {name}"))?;
        state = step.state;
        cost += step.cost;
        states.push(state);
    }
    Ok(Path {
        agent,
        goal: None,
        states,
        cost,
    })
}

fn criterion_5() -> Result<String> {
    let modes = [
        ModeFlags {
            services: true,
            ..ModeFlags::CLASSIC
        },
        ModeFlags {
            matching: true,
            timed: true,
            directions: false,
            services: true,
        },
        ModeFlags {
            matching: true,
            timed: false,
            directions: false,
            services: true,
        },
    ];
    let mut cases = 0;
    for tau in DURATIONS {
        for two_sites in [false, true] {
            for base in modes {
                for directions in [false, true] {
                    for agents in [1, 2] {
                        let mode = ModeFlags { directions, ..base };
                        let inst = service_yard(tau, two_sites, mode, agents);
                        let label = format!("tau {tau} two_sites {two_sites} {mode:?} agents {agents}");
                        let (s, o) = (cbs(&inst), oracle(&inst));
                        ensure!(s.status == o.status && s.cost == o.cost, "{label}: solver and oracle differ");
                        check_solution(&inst, &s, &label)?;
                        check_solution(&inst, &o, &label)?;
                        let sites: Vec<LocId> = inst.agents[0].tasks[0].locations.clone();
                        for out in [&s, &o] {
                            if let Some(sol) = &out.solution {
                                for p in &sol.paths {
                                    let d = longest_dwell(p, &sites);
                                    ensure!(d >= tau, "{label}: {} dwell {d} < {tau}", out.engine.as_str());
                                }
                            }
                        }
                        cases += 1;
                    }
                }
            }
        }

        // a hand-made path that dwells one step short is rejected
        for two_sites in [false, true] {
            let inst = service_yard(tau, two_sites, modes[0], 1);
            let dwell = |n: u32| {
                let mut locs = vec!["B"];
                if n > 0 {
                    locs.extend(std::iter::repeat_n("S", n as usize));
                    locs.push("B");
                }
                locs.extend(["C", "D"]);
                walk(&inst, 0, &locs)
            };
            let full = validate_solution(&inst, &Solution { paths: vec![dwell(tau)?] });
            ensure!(full.is_valid(), "tau {tau}: full dwell rejected: {:?}", full.violations);
            let short = validate_solution(&inst, &Solution { paths: vec![dwell(tau - 1)?] });
            ensure!(
                short.violations.len() == 1 && matches!(short.violations[0], Violation::TasksIncomplete { .. }),
                "tau {tau}: short dwell gave {:?}",
                short.violations
            );
        }
    }
    Ok(format!("{cases} cases agree with the oracle; dwell of tau-1 rejected for tau in {DURATIONS:?}"))
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn criterion_6() -> Result<String> {
    let swap = InstanceBuilder::line(&["A", "B", "C"])
        .agent("a", "x", "A", 0)
        .fixed_goal("C")
        .agent("b", "x", "C", 0)
        .fixed_goal("A")
        .build()?;
    let ((s, o), took) = timed(|| (cbs(&swap), oracle(&swap)));
    ensure!(s.status == Status::Infeasible && o.status == Status::Infeasible, "swap: {} / {}", s.status, o.status);
    ensure!(took < MICRO_MAX, "swap took {took:?}");

    let single = InstanceBuilder::line(&["A", "B", "C"])
        .agent("a", "x", "A", 0)
        .fixed_goal("C")
        .build()?;
    let ((s, o), took) = timed(|| (cbs(&single), oracle(&single)));
    ensure!(s.cost == Some(2) && o.cost == Some(2), "single agent: {:?} / {:?}", s.cost, o.cost);
    ensure!(took < MICRO_MAX, "single agent took {took:?}");

    let typed = InstanceBuilder::line(&["A", "B", "C"])
        .mode(ModeFlags {
            matching: true,
            timed: true,
            directions: false,
            services: false,
        })
        .agent("a", "x", "A", 0)
        .agent("b", "y", "C", 0)
        .goal("A", 2, "x")
        .goal("C", 2, "y")
        .build()?;
    let (report, took) = timed(|| {
        let mut sol = cbs(&typed).solution.expect("typed instance is feasible");
        // hand agent a the goal of type y
        sol.paths.swap(0, 1);
        for (i, p) in sol.paths.iter_mut().enumerate() {
            p.agent = i;
        }
        validate_solution(&typed, &sol)
    });
    let mismatch = report.violations.iter().any(|v| matches!(v, Violation::TypeMismatch { .. }));
    ensure!(mismatch, "wrong-type goal accepted: {:?}", report.violations);
    ensure!(took < MICRO_MAX, "type check took {took:?}");
    Ok("swap infeasible, single agent cost 2, wrong-type goal rejected, each under 1s".into())
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>> {
    let out = Command::new(env!("CARGO_BIN_EXE_shuntbound")).args(args).output()?;
    if !out.status.success() && out.status.code() != Some(2) {
        bail!("{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    }
    Ok(out.stdout)
}

fn read_dir_bytes(dir: &FsPath) -> Result<Vec<(String, Vec<u8>)>> {
    let mut files = std::fs::read_dir(dir)?
        .map(|e| {
            let e = e?;
            Ok((e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path())?))
        })
        .collect::<Result<Vec<_>>>()?;
    files.sort();
    Ok(files)
}

fn criterion_7() -> Result<String> {
    let tmp = tempfile::tempdir()?;
    let mut gens = Vec::new();
    let mut solves = Vec::new();
    for rep in 0..REPETITIONS {
        let dir = tmp.path().join(format!("rep{rep}"));
        let d = dir.to_str().context("utf-8 path")?;
        run_cli(&["gen", "--seed", "42", "--count", "4", "--out-dir", d])?;
        run_cli(&["gen", "--seed", "7", "--count", "3", "--tiny", "--out-dir", d])?;
        let files = read_dir_bytes(&dir)?;
        let mut outputs = Vec::new();
        for (name, _) in &files {
            let path = dir.join(name);
            let p = path.to_str().context("utf-8 path")?;
            outputs.push(run_cli(&["solve", "--instance", p, "--seed", "42"])?);
            if name.starts_with("inst-0000") {
                outputs.push(run_cli(&["oracle", "--instance", p, "--seed", "42"])?);
            }
        }
        gens.push(files);
        solves.push(outputs);
    }
    ensure!(gens.windows(2).all(|w| w[0] == w[1]), "gen output differs between runs");
    ensure!(solves.windows(2).all(|w| w[0] == w[1]), "solve output differs between runs");
    ensure!(solves[0].iter().all(|o| !o.is_empty()), "empty solver output");
    Ok(format!(
        "{} files and {} outcomes byte-identical over {REPETITIONS} runs",
        gens[0].len(),
        solves[0].len()
    ))
}

fn scale_params() -> GenParams {
    GenParams {
        n_tracks: 30,
        n_agents: SCALE_AGENTS,
        n_types: 2,
        tasks_per_agent: 1,
        horizon: 30,
        max_units: 2,
        max_duration: 2,
        goal_slack: Some(6),
    }
}

fn criterion_8() -> Result<String> {
    let handles: Vec<_> = SCALE_SEEDS
        .iter()
        .map(|&seed| {
            thread::spawn(move || -> Result<String> {
                let inst = generate_instance(seed, &scale_params())?;
                let mode = inst.mode;
                ensure!(mode.matching && mode.directions && mode.services, "seed {seed}: mode {mode:?}");
                ensure!(SCALE_LOCATIONS.contains(&inst.graph.len()), "seed {seed}: {} locations", inst.graph.len());
                ensure!(inst.agents.len() == SCALE_AGENTS);
                let relaxed = lower_bound(&relax_instance(&inst, 0)?).context("level 0 has no bound")?;
                let config = SolveConfig {
                    time_budget: Some(SCALE_BUDGET),
                    ..SolveConfig::default()
                };
                let (out, took) = timed(|| solve(&inst, &config));
                let out = out?;
                ensure!(took <= SCALE_BUDGET + SCALE_OVERRUN, "seed {seed}: returned after {took:?}");
                match out.status {
                    Status::Optimal => {
                        check_solution(&inst, &out, "scale")?;
                        Ok(format!("seed {seed}: optimal {}", out.cost.unwrap()))
                    }
                    Status::Timeout => {
                        let lb = out.lower_bound.context("timeout without bound")?;
                        ensure!(lb > relaxed, "seed {seed}: bound {lb} not above level-0 bound {relaxed}");
                        Ok(format!("seed {seed}: timeout, bound {lb} > {relaxed}"))
                    }
                    other => bail!("seed {seed}: {other}"),
                }
            })
        })
        .collect();
    let mut parts = Vec::new();
    for h in handles {
        parts.push(h.join().map_err(|_| anyhow::anyhow!("scale run panicked"))??);
    }
    Ok(parts.join("; "))
}

#[test]
fn acceptance() {
    // the scale runs are wall-clock bound, so they overlap the rest
    let scale = thread::spawn(criterion_8);
    let suite = ladder_suite();
    let results: Vec<(u8, &str, Result<String>)> = vec![
        (1, "oracle equivalence", criterion_1(&suite)),
        (2, "ladder monotonicity", criterion_2(&suite)),
        (3, "matching value", criterion_3()),
        (4, "direction split", criterion_4()),
        (5, "service semantics", criterion_5()),
        (6, "known-answer micro-instances", criterion_6()),
        (7, "determinism", criterion_7()),
        (
            8,
            "scale smoke test",
            scale.join().unwrap_or_else(|_| Err(anyhow::anyhow!("panicked"))),
        ),
    ];
    let mut failed = 0;
    for (n, name, r) in &results {
        match r {
            Ok(detail) => println!("PASS criterion {n} ({name}): {detail}"),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {n} ({name}): {e:#}");
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
