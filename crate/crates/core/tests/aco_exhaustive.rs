mod common;

use common::{exhaustive_best, rng, toy_instance};
use tseoh_core::baselines::{aco_schedule, AcoParams, BaselinePolicy};
use tseoh_core::{Execution, FitnessConfig};

#[test]
fn aco_reaches_exhaustive_optimum_on_toys() {
    let cfg = FitnessConfig::default();
    let mut r = rng(21);
    let mut hits = 0;
    for _ in 0..4 {
        let inst = toy_instance(&mut r);
        let best = exhaustive_best(&inst, cfg);
        let found = aco_schedule(&inst, &AcoParams::default(), cfg, Execution::default()).unwrap();
        assert!(found.report.fitness <= best + 1e-9);
        if found.report.fitness >= best - 0.01 * best.abs() {
            hits += 1;
        }
    }
    assert!(hits >= 3, "{hits}/4 within 1%");
}

#[test]
fn baseline_replay_equals_search_result() {
    let cfg = FitnessConfig::default();
    let inst = toy_instance(&mut rng(22));
    let params = AcoParams { iterations: 20, seed: 4, ..AcoParams::default() };
    let out = aco_schedule(&inst, &params, cfg, Execution::Sequential).unwrap();
    let via_baseline = BaselinePolicy::Aco(params).run(&inst, cfg).unwrap();
    assert_eq!(out.report.events, via_baseline.events);
    assert_eq!(out.report.fitness, via_baseline.fitness);
}
