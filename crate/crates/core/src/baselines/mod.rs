//! Comparison schedulers, all driven through the same simulator.
//!
//! FCFS, HRRN, Random and Greedy are per-decision scoring policies. ACO
//! searches whole schedules and is replayed as a [`SequencePolicy`].

mod aco;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use aco::{aco_schedule, AcoOutcome, AcoParams, Pheromone};

use crate::model::Instance;
use crate::par::Execution;
use crate::rng;
use crate::simulator::{
    simulate, FitnessConfig, PolicyError, SchedulingContext, ScoringPolicy, SequencePolicy,
    SimError, SimReport,
};

/// First come, first served: earlier arrival scores higher.
pub fn fcfs_score(ctx: &SchedulingContext) -> f64 {
    -ctx.arrival
}

/// Highest response ratio next: `(wait + exec) / exec`.
pub fn hrrn_score(ctx: &SchedulingContext) -> f64 {
    (ctx.wait + ctx.exec_time) / ctx.exec_time
}

/// Increase of the candidate server's largest per-resource load ratio if
/// the task were placed there.
pub fn greedy_score(ctx: &SchedulingContext) -> f64 {
    let used = ctx.capacity.sub(&ctx.free);
    let before = used.ratios(&ctx.capacity).into_iter().fold(0.0, f64::max);
    let after = used
        .add(&ctx.demand)
        .ratios(&ctx.capacity)
        .into_iter()
        .fold(0.0, f64::max);
    after - before
}

/// Uniform score in `[0, 1)` keyed by (decision, task, server), so a run is
/// reproducible from the seed alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomPolicy {
    pub seed: u64,
}

impl RandomPolicy {
    pub fn draw(&self, ctx: &SchedulingContext) -> f64 {
        rng::unit_f64(rng::derive(
            self.seed,
            &[ctx.decision as u64, ctx.task_id as u64, ctx.server_id as u64],
        ))
    }
}

impl ScoringPolicy for RandomPolicy {
    fn score(&self, ctx: &SchedulingContext) -> Result<f64, PolicyError> {
        Ok(self.draw(ctx))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BaselinePolicy {
    Fcfs,
    Hrrn,
    Random { seed: u64 },
    Greedy,
    Aco(AcoParams),
}

impl BaselinePolicy {
    pub fn name(&self) -> &'static str {
        match self {
            BaselinePolicy::Fcfs => "FCFS",
            BaselinePolicy::Hrrn => "HRRN",
            BaselinePolicy::Random { .. } => "Random",
            BaselinePolicy::Greedy => "Greedy",
            BaselinePolicy::Aco(_) => "ACO",
        }
    }

    /// The five baselines with default parameters, all seeded with `seed`.
    pub fn all(seed: u64) -> Vec<BaselinePolicy> {
        vec![
            BaselinePolicy::Fcfs,
            BaselinePolicy::Hrrn,
            BaselinePolicy::Random { seed },
            BaselinePolicy::Greedy,
            BaselinePolicy::Aco(AcoParams { seed, ..AcoParams::default() }),
        ]
    }

    pub fn run(&self, inst: &Instance, cfg: FitnessConfig) -> Result<SimReport, SimError> {
        self.run_with(inst, cfg, Execution::default())
    }

    pub fn run_with(
        &self,
        inst: &Instance,
        cfg: FitnessConfig,
        exec: Execution,
    ) -> Result<SimReport, SimError> {
        match self {
            BaselinePolicy::Fcfs => simulate(inst, &fcfs_score, cfg),
            BaselinePolicy::Hrrn => simulate(inst, &hrrn_score, cfg),
            BaselinePolicy::Random { seed } => simulate(inst, &RandomPolicy { seed: *seed }, cfg),
            BaselinePolicy::Greedy => simulate(inst, &greedy_score, cfg),
            BaselinePolicy::Aco(params) => {
                let outcome = aco_schedule(inst, params, cfg, exec)?;
                let replay = SequencePolicy::new(inst.num_tasks(), &outcome.sequence);
                simulate(inst, &replay, cfg)
            }
        }
    }
}

impl fmt::Display for BaselinePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BaselinePolicy {
    type Err = String;

    /// Accepts `fcfs`, `hrrn`, `random`, `greedy`, `aco` (case-insensitive)
    /// with default parameters and seed 0.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "fcfs" => Ok(BaselinePolicy::Fcfs),
            "hrrn" => Ok(BaselinePolicy::Hrrn),
            "random" => Ok(BaselinePolicy::Random { seed: 0 }),
            "greedy" => Ok(BaselinePolicy::Greedy),
            "aco" => Ok(BaselinePolicy::Aco(AcoParams::default())),
            other => Err(format!("unknown baseline `{other}`")),
        }
    }
}
