//! Ant colony search over schedule sequences.
//!
//! Each ant walks the simulator's decision loop, picking the next feasible
//! `(task, server)` pair with probability proportional to
//! `tau(prev, task)^alpha * (greedy + EPS)^beta`. Pheromone lives on
//! task-to-task transitions (plus a virtual start node), independent of
//! position in the sequence.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::greedy_score;
use crate::model::Instance;
use crate::par::Execution;
use crate::rng;
use crate::simulator::{
    run_loop, Chooser, FitnessConfig, SchedulingContext, SimError, SimOptions, SimReport,
};

const EPS: f64 = 1e-2;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AcoParams {
    pub ants: usize,
    pub iterations: usize,
    /// Pheromone exponent.
    pub alpha: f64,
    /// Heuristic (greedy packing gain) exponent.
    pub beta: f64,
    /// Evaporation rate in (0, 1).
    pub rho: f64,
    pub initial_pheromone: f64,
    pub seed: u64,
}

impl Default for AcoParams {
    fn default() -> Self {
        Self {
            ants: 20,
            iterations: 100,
            alpha: 1.0,
            beta: 2.0,
            rho: 0.1,
            initial_pheromone: 1.0,
            seed: 0,
        }
    }
}

impl AcoParams {
    pub fn validate(&self) -> Result<(), String> {
        if self.ants == 0 || self.iterations == 0 {
            return Err("ants and iterations must be positive".into());
        }
        if !(self.rho > 0.0 && self.rho < 1.0) {
            return Err(format!("rho must lie in (0, 1), got {}", self.rho));
        }
        if !(self.initial_pheromone > 0.0 && self.initial_pheromone.is_finite()) {
            return Err("initial pheromone must be positive".into());
        }
        if !(self.alpha.is_finite() && self.beta.is_finite()) {
            return Err("alpha and beta must be finite".into());
        }
        Ok(())
    }
}

/// Transition pheromone: row 0 is the start node, row `i + 1` follows task `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Pheromone {
    n: usize,
    values: Vec<f64>,
}

impl Pheromone {
    pub fn new(n: usize, initial: f64) -> Self {
        Self { n, values: vec![initial; (n + 1) * n] }
    }

    pub fn get(&self, prev: Option<usize>, next: usize) -> f64 {
        self.values[Self::row(prev) * self.n + next]
    }

    fn row(prev: Option<usize>) -> usize {
        prev.map_or(0, |p| p + 1)
    }

    pub fn evaporate(&mut self, rho: f64) {
        for v in &mut self.values {
            *v *= 1.0 - rho;
        }
    }

    /// Adds `amount` to every transition along `order`, starting at the start node.
    pub fn deposit(&mut self, order: &[usize], amount: f64) {
        let mut prev = None;
        for &t in order {
            self.values[Self::row(prev) * self.n + t] += amount;
            prev = Some(t);
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

struct Ant<'a> {
    pheromone: &'a Pheromone,
    params: &'a AcoParams,
    rng: ChaCha8Rng,
    prev: Option<usize>,
    log_weights: Vec<f64>,
}

impl Chooser for Ant<'_> {
    fn choose(&mut self, candidates: &[SchedulingContext]) -> Result<usize, SimError> {
        self.log_weights.clear();
        let mut max = f64::NEG_INFINITY;
        for c in candidates {
            let tau = self.pheromone.get(self.prev, c.task_id);
            let eta = greedy_score(c).max(0.0) + EPS;
            let lw = self.params.alpha * tau.ln() + self.params.beta * eta.ln();
            max = max.max(lw);
            self.log_weights.push(lw);
        }
        // weights relative to the best candidate, so huge exponents cannot underflow to all-zero
        let weights: Vec<f64> = self.log_weights.iter().map(|lw| (lw - max).exp()).collect();
        let total: f64 = weights.iter().sum();
        let pick = if total.is_finite() && total > 0.0 {
            let mut r = self.rng.random::<f64>() * total;
            let mut pick = weights.len() - 1;
            for (i, w) in weights.iter().enumerate() {
                if r < *w {
                    pick = i;
                    break;
                }
                r -= w;
            }
            pick
        } else {
            0
        };
        self.prev = Some(candidates[pick].task_id);
        Ok(pick)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AcoOutcome {
    /// Best `(task, server)` sequence found.
    pub sequence: Vec<(usize, usize)>,
    pub report: SimReport,
    /// Global best fitness after each iteration.
    pub best_fitness_history: Vec<f64>,
}

fn construct(
    inst: &Instance,
    pheromone: &Pheromone,
    params: &AcoParams,
    cfg: FitnessConfig,
    iteration: usize,
    ant: usize,
) -> Result<SimReport, SimError> {
    let mut chooser = Ant {
        pheromone,
        params,
        rng: rng::stream(params.seed, &[iteration as u64, ant as u64]),
        prev: None,
        log_weights: Vec::new(),
    };
    run_loop(inst, &mut chooser, cfg, SimOptions { record_utilization: false })
}

/// Runs the colony and returns the best schedule it found. Ants within one
/// iteration are independent and run under `exec`; pheromone updates are
/// applied serially between iterations.
pub fn aco_schedule(
    inst: &Instance,
    params: &AcoParams,
    cfg: FitnessConfig,
    exec: Execution,
) -> Result<AcoOutcome, SimError> {
    let n = inst.num_tasks();
    let mut pheromone = Pheromone::new(n, params.initial_pheromone);
    let mut best: Option<SimReport> = None;
    let mut history = Vec::with_capacity(params.iterations);

    for it in 0..params.iterations {
        let reports = exec.map_range(params.ants.max(1), |a| {
            construct(inst, &pheromone, params, cfg, it, a)
        });
        let mut iter_best: Option<SimReport> = None;
        for r in reports {
            let r = r?;
            if iter_best.as_ref().is_none_or(|b| r.fitness > b.fitness) {
                iter_best = Some(r);
            }
        }
        let iter_best = iter_best.expect("at least one ant");
        if best.as_ref().is_none_or(|b| iter_best.fitness > b.fitness) {
            best = Some(iter_best.clone());
        }
        let global = best.as_ref().expect("set above").fitness;

        pheromone.evaporate(params.rho);
        // in (0, 1]: 1 when the iteration matches the global best, smaller the further behind
        let amount = 1.0 / (1.0 + (global - iter_best.fitness).max(0.0) / (global.abs() + 1.0));
        pheromone.deposit(&iter_best.order(), amount);
        history.push(global);
    }

    let report = best.expect("at least one iteration");
    Ok(AcoOutcome {
        sequence: report.events.iter().map(|e| (e.task_id, e.server_id)).collect(),
        report,
        best_fitness_history: history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{EdgeServer, ResourceVector, TaskRequest};
    use crate::simulator::{simulate, SequencePolicy};

    fn toy() -> Instance {
        let servers = vec![EdgeServer { id: 0, capacity: ResourceVector::splat(4.0) }];
        let spec = [(3.0, 0.0, 4.0), (2.0, 0.0, 2.0), (2.5, 1.0, 3.0)];
        let tasks = spec
            .iter()
            .enumerate()
            .map(|(id, &(cpu, arrival, exec_time))| TaskRequest {
                id,
                demand: ResourceVector::new(cpu, 1.0, 1.0, 1.0),
                arrival,
                exec_time,
                eligible_servers: vec![0],
            })
            .collect();
        Instance::new(servers, tasks)
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn evaporation_without_deposit() {
        let mut p = Pheromone::new(3, 1.0);
        p.evaporate(0.1);
        assert!(p.values().iter().all(|&v| v == 0.9));
    }

    #[test]
    fn deposit_follows_transitions() {
        let mut p = Pheromone::new(3, 1.0);
        p.deposit(&[2, 0, 1], 0.5);
        assert_eq!(p.get(None, 2), 1.5);
        assert_eq!(p.get(Some(2), 0), 1.5);
        assert_eq!(p.get(Some(0), 1), 1.5);
        assert_eq!(p.get(None, 0), 1.0);
    }

    #[test]
    fn single_task_is_forced() {
        let mut inst = toy();
        inst.tasks.truncate(1);
        let out = aco_schedule(&inst, &AcoParams::default(), FitnessConfig::default(), Execution::Sequential)
            .unwrap();
        assert_eq!(out.sequence, vec![(0, 0)]);
    }

    #[test]
    fn finds_permutation_optimum_on_three_tasks() {
        let inst = toy();
        let cfg = FitnessConfig::default();
        let oracle = permutations(3)
            .into_iter()
            .map(|p| {
                let seq: Vec<_> = p.iter().map(|&t| (t, 0)).collect();
                simulate(&inst, &SequencePolicy::new(3, &seq), cfg).unwrap().fitness
            })
            .fold(f64::NEG_INFINITY, f64::max);
        let out = aco_schedule(&inst, &AcoParams::default(), cfg, Execution::Sequential).unwrap();
        assert_eq!(out.report.fitness, oracle);
    }

    #[test]
    fn replay_reproduces_ant_schedule() {
        let inst = toy();
        let cfg = FitnessConfig::default();
        let params = AcoParams { iterations: 5, seed: 3, ..AcoParams::default() };
        let out = aco_schedule(&inst, &params, cfg, Execution::Sequential).unwrap();
        let replay = simulate(&inst, &SequencePolicy::new(3, &out.sequence), cfg).unwrap();
        assert_eq!(replay.events, out.report.events);
        assert!(out.best_fitness_history.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn execution_mode_does_not_change_result() {
        let inst = toy();
        let params = AcoParams { iterations: 10, seed: 11, ..AcoParams::default() };
        let cfg = FitnessConfig::default();
        let a = aco_schedule(&inst, &params, cfg, Execution::Sequential).unwrap();
        let b = aco_schedule(&inst, &params, cfg, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn huge_beta_degenerates_to_greedy() {
        let inst = toy();
        let cfg = FitnessConfig::default();
        let params = AcoParams { ants: 1, iterations: 1, beta: 1e6, ..AcoParams::default() };
        let out = aco_schedule(&inst, &params, cfg, Execution::Sequential).unwrap();
        let greedy = simulate(&inst, &greedy_score, cfg).unwrap();
        assert_eq!(out.report.order(), greedy.order());
    }

    #[test]
    fn params_validate() {
        assert!(AcoParams::default().validate().is_ok());
        assert!(AcoParams { rho: 1.0, ..AcoParams::default() }.validate().is_err());
        assert!(AcoParams { ants: 0, ..AcoParams::default() }.validate().is_err());
    }
}
