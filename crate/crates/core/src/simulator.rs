//! Deterministic discrete-event simulator for score-argmax scheduling.
//!
//! At every decision instant the simulator enumerates the feasible
//! `(task, server)` pairs, asks a [`ScoringPolicy`] to score each one and
//! commits the best pair. Commits repeat at the same instant until nothing
//! else fits; then time advances to the next arrival or completion.
//!
//! Ties between equal scores go to the earlier arrival, then the lower task
//! id, then the lower server id. With a constant policy this reduces the
//! loop to first-come-first-served.

use std::io::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Instance, ResourceVector};

/// Everything a scoring policy may look at for one candidate pair.
#[derive(Clone, Debug, PartialEq)]
pub struct SchedulingContext {
    pub now: f64,
    /// Number of commits made before this decision.
    pub decision: usize,
    pub task_id: usize,
    pub server_id: usize,
    pub demand: ResourceVector,
    pub arrival: f64,
    pub exec_time: f64,
    /// `now - arrival`, never negative.
    pub wait: f64,
    pub free: ResourceVector,
    pub capacity: ResourceVector,
    /// Arrived but unscheduled tasks at this decision, including this one.
    pub pending: usize,
    pub num_servers: usize,
}

impl SchedulingContext {
    /// Per-resource `used / capacity` of the candidate server before placement.
    pub fn load_ratios(&self) -> [f64; 4] {
        self.capacity.sub(&self.free).ratios(&self.capacity)
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
#[error("policy error: {0}")]
pub struct PolicyError(pub String);

/// Pure function from a decision context to a score; higher wins.
pub trait ScoringPolicy: Sync {
    fn score(&self, ctx: &SchedulingContext) -> Result<f64, PolicyError>;
}

impl<F> ScoringPolicy for F
where
    F: Fn(&SchedulingContext) -> f64 + Sync,
{
    fn score(&self, ctx: &SchedulingContext) -> Result<f64, PolicyError> {
        Ok(self(ctx))
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum SimError {
    #[error("{0}")]
    Policy(#[from] PolicyError),
    #[error("policy returned non-finite score {score} for task {task_id} on server {server_id}")]
    NonFiniteScore { task_id: usize, server_id: usize, score: f64 },
    #[error("no progress possible at t={now}: {unscheduled} task(s) can never be placed")]
    Starvation { now: f64, unscheduled: usize },
    #[error("instance is empty")]
    EmptyInstance,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitnessConfig {
    pub alpha: f64,
    pub beta: f64,
}

impl Default for FitnessConfig {
    fn default() -> Self {
        Self { alpha: 150.0, beta: 1.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScheduleEvent {
    pub task_id: usize,
    pub server_id: usize,
    pub start: f64,
    pub finish: f64,
}

/// Per-server resource ratios from `time` until the next sample of the same server.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UtilizationSample {
    pub time: f64,
    pub server_id: usize,
    pub cpu_ratio: f64,
    pub io_ratio: f64,
    pub bw_ratio: f64,
    pub mem_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    /// The schedule sequence, in commit order.
    pub events: Vec<ScheduleEvent>,
    pub start_time: f64,
    pub finish_time: f64,
    pub avg_utilization: f64,
    pub avg_running_time: f64,
    pub fitness: f64,
    pub alpha: f64,
    pub beta: f64,
    #[serde(skip)]
    pub utilization: Vec<UtilizationSample>,
}

impl SimReport {
    pub fn makespan(&self) -> f64 {
        self.finish_time - self.start_time
    }

    /// Task ids in commit order.
    pub fn order(&self) -> Vec<usize> {
        self.events.iter().map(|e| e.task_id).collect()
    }

    pub fn write_utilization_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "time,server_id,cpu_ratio,io_ratio,bw_ratio,mem_ratio")?;
        for s in &self.utilization {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                s.time, s.server_id, s.cpu_ratio, s.io_ratio, s.bw_ratio, s.mem_ratio
            )?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimOptions {
    pub record_utilization: bool,
}

impl Default for SimOptions {
    fn default() -> Self {
        Self { record_utilization: true }
    }
}

/// Picks one candidate at each decision. `candidates` is never empty and is
/// ordered by (arrival, task id, server id).
pub(crate) trait Chooser {
    fn choose(&mut self, candidates: &[SchedulingContext]) -> Result<usize, SimError>;
}

struct Argmax<'a, P: ?Sized>(&'a P);

impl<P: ScoringPolicy + ?Sized> Chooser for Argmax<'_, P> {
    fn choose(&mut self, candidates: &[SchedulingContext]) -> Result<usize, SimError> {
        let mut best = 0;
        let mut best_score = f64::NEG_INFINITY;
        for (i, ctx) in candidates.iter().enumerate() {
            let s = self.0.score(ctx)?;
            if !s.is_finite() {
                return Err(SimError::NonFiniteScore {
                    task_id: ctx.task_id,
                    server_id: ctx.server_id,
                    score: s,
                });
            }
            // strict `>` keeps the earliest candidate on ties
            if i == 0 || s > best_score {
                best = i;
                best_score = s;
            }
        }
        Ok(best)
    }
}

pub fn simulate<P: ScoringPolicy + ?Sized>(
    inst: &Instance,
    policy: &P,
    cfg: FitnessConfig,
) -> Result<SimReport, SimError> {
    simulate_with(inst, policy, cfg, SimOptions::default())
}

pub fn simulate_with<P: ScoringPolicy + ?Sized>(
    inst: &Instance,
    policy: &P,
    cfg: FitnessConfig,
    opts: SimOptions,
) -> Result<SimReport, SimError> {
    run_loop(inst, &mut Argmax(policy), cfg, opts)
}

struct Running {
    task: usize,
    server: usize,
    finish: f64,
}

pub(crate) fn run_loop<C: Chooser + ?Sized>(
    inst: &Instance,
    chooser: &mut C,
    cfg: FitnessConfig,
    opts: SimOptions,
) -> Result<SimReport, SimError> {
    let n = inst.tasks.len();
    let m = inst.servers.len();
    if n == 0 || m == 0 {
        return Err(SimError::EmptyInstance);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        let (ta, tb) = (&inst.tasks[a], &inst.tasks[b]);
        ta.arrival.total_cmp(&tb.arrival).then(ta.id.cmp(&tb.id))
    });
    let eligible: Vec<Vec<usize>> = inst
        .tasks
        .iter()
        .map(|t| {
            let mut e = t.eligible_servers.clone();
            e.sort_unstable();
            e.dedup();
            e
        })
        .collect();

    let capacity: Vec<ResourceVector> = inst.servers.iter().map(|s| s.capacity).collect();
    let mut free = capacity.clone();
    let mut running: Vec<Running> = Vec::new();
    let mut pending: Vec<usize> = Vec::new();
    let mut events = Vec::with_capacity(n);
    let mut samples = Vec::new();
    let mut next_arrival = 0;
    let mut now = inst.tasks[order[0]].arrival;
    let mut candidates = Vec::new();
    let mut owners = Vec::new();

    let sample = |samples: &mut Vec<UtilizationSample>, now: f64, j: usize, free: &ResourceVector| {
        let r = capacity[j].sub(free).ratios(&capacity[j]);
        samples.push(UtilizationSample {
            time: now,
            server_id: j,
            cpu_ratio: r[0],
            io_ratio: r[1],
            bw_ratio: r[2],
            mem_ratio: r[3],
        });
    };
    if opts.record_utilization {
        for j in 0..m {
            sample(&mut samples, now, j, &free[j]);
        }
    }

    loop {
        while next_arrival < n && inst.tasks[order[next_arrival]].arrival <= now {
            pending.push(order[next_arrival]);
            next_arrival += 1;
        }

        loop {
            candidates.clear();
            owners.clear();
            for (slot, &ti) in pending.iter().enumerate() {
                let t = &inst.tasks[ti];
                for &j in &eligible[ti] {
                    if t.demand.fits(&free[j]) {
                        candidates.push(SchedulingContext {
                            now,
                            decision: events.len(),
                            task_id: t.id,
                            server_id: j,
                            demand: t.demand,
                            arrival: t.arrival,
                            exec_time: t.exec_time,
                            wait: (now - t.arrival).max(0.0),
                            free: free[j],
                            capacity: capacity[j],
                            pending: pending.len(),
                            num_servers: m,
                        });
                        owners.push(slot);
                    }
                }
            }
            if candidates.is_empty() {
                break;
            }
            let pick = chooser.choose(&candidates)?;
            let ctx = &candidates[pick];
            let (ti, j) = (pending.remove(owners[pick]), ctx.server_id);
            let t = &inst.tasks[ti];
            free[j] = free[j].sub(&t.demand);
            debug_assert!(free[j].to_array().iter().all(|c| *c >= 0.0));
            let finish = now + t.exec_time;
            running.push(Running { task: ti, server: j, finish });
            events.push(ScheduleEvent { task_id: t.id, server_id: j, start: now, finish });
            if opts.record_utilization {
                sample(&mut samples, now, j, &free[j]);
            }
        }

        // with sampling on, keep stepping until the last release is recorded
        if events.len() == n && (running.is_empty() || !opts.record_utilization) {
            break;
        }

        let next_finish = running.iter().map(|r| r.finish).fold(f64::INFINITY, f64::min);
        let next_arr = order
            .get(next_arrival)
            .map_or(f64::INFINITY, |&ti| inst.tasks[ti].arrival);
        let next = next_finish.min(next_arr);
        if !next.is_finite() {
            return Err(SimError::Starvation { now, unscheduled: n - events.len() });
        }
        now = next;

        let mut touched = vec![false; m];
        running.retain(|r| {
            let done = r.finish <= now;
            if done {
                touched[r.server] = true;
            }
            !done
        });
        for j in (0..m).filter(|&j| touched[j]) {
            // recompute from the in-flight set so repeated release cannot drift
            let used = running
                .iter()
                .filter(|r| r.server == j)
                .fold(ResourceVector::ZERO, |acc, r| acc.add(&inst.tasks[r.task].demand));
            let f = capacity[j].sub(&used).to_array();
            let c = capacity[j].to_array();
            free[j] = ResourceVector::from_array([
                f[0].clamp(0.0, c[0]),
                f[1].clamp(0.0, c[1]),
                f[2].clamp(0.0, c[2]),
                f[3].clamp(0.0, c[3]),
            ]);
            if opts.record_utilization {
                sample(&mut samples, now, j, &free[j]);
            }
        }
    }

    let mut report = SimReport {
        events,
        start_time: 0.0,
        finish_time: 0.0,
        avg_utilization: 0.0,
        avg_running_time: 0.0,
        fitness: 0.0,
        alpha: cfg.alpha,
        beta: cfg.beta,
        utilization: samples,
    };
    let (start, finish) = window(&report);
    report.start_time = start;
    report.finish_time = finish;
    report.avg_utilization = avg_utilization(&report, inst);
    report.avg_running_time = avg_running_time(&report, inst);
    report.fitness = fitness(report.avg_utilization, report.avg_running_time, cfg);
    Ok(report)
}

/// `(earliest start, latest finish)` over all events; `(0, 0)` when empty.
fn window(report: &SimReport) -> (f64, f64) {
    if report.events.is_empty() {
        return (0.0, 0.0);
    }
    let start = report.events.iter().map(|e| e.start).fold(f64::INFINITY, f64::min);
    let finish = report.events.iter().map(|e| e.finish).fold(f64::NEG_INFINITY, f64::max);
    (start, finish)
}

/// Mean over servers of the largest time-averaged per-resource usage ratio
/// over the global makespan window. A zero-length window yields 0.
pub fn avg_utilization(report: &SimReport, inst: &Instance) -> f64 {
    let (start, finish) = window(report);
    let span = finish - start;
    let m = inst.servers.len();
    if m == 0 || span <= 0.0 {
        return 0.0;
    }
    // usage is piecewise constant, so its integral is sum(demand * duration)
    let mut integral = vec![[0.0f64; 4]; m];
    for e in &report.events {
        let t = &inst.tasks[e.task_id];
        let d = t.demand.to_array();
        let acc = &mut integral[e.server_id];
        for k in 0..4 {
            acc[k] += d[k] * t.exec_time;
        }
    }
    let total: f64 = inst
        .servers
        .iter()
        .zip(&integral)
        .map(|(s, acc)| {
            let cap = s.capacity.to_array();
            (0..4).map(|k| acc[k] / (cap[k] * span)).fold(0.0, f64::max)
        })
        .sum();
    (total / m as f64).clamp(0.0, 1.0)
}

/// Makespan divided by the number of servers.
pub fn avg_running_time(report: &SimReport, inst: &Instance) -> f64 {
    let (start, finish) = window(report);
    let m = inst.servers.len().max(1);
    (finish - start) / m as f64
}

pub fn fitness(avg_u: f64, avg_r: f64, cfg: FitnessConfig) -> f64 {
    cfg.alpha * avg_u - cfg.beta * avg_r
}

/// Scores candidates by their position in a precomputed `(task, server)`
/// sequence, so that replaying it through [`simulate`] reproduces the order.
#[derive(Clone, Debug, PartialEq)]
pub struct SequencePolicy {
    rank: Vec<Option<(usize, usize)>>,
    n: usize,
}

impl SequencePolicy {
    pub fn new(num_tasks: usize, sequence: &[(usize, usize)]) -> Self {
        let mut rank = vec![None; num_tasks];
        for (pos, &(task, server)) in sequence.iter().enumerate() {
            if task < num_tasks && rank[task].is_none() {
                rank[task] = Some((pos, server));
            }
        }
        Self { rank, n: num_tasks.max(sequence.len()) }
    }

    pub fn from_report(num_tasks: usize, report: &SimReport) -> Self {
        let seq: Vec<_> = report.events.iter().map(|e| (e.task_id, e.server_id)).collect();
        Self::new(num_tasks, &seq)
    }
}

impl ScoringPolicy for SequencePolicy {
    fn score(&self, ctx: &SchedulingContext) -> Result<f64, PolicyError> {
        let n = self.n as f64;
        Ok(match self.rank.get(ctx.task_id).copied().flatten() {
            Some((pos, server)) if server == ctx.server_id => -(pos as f64),
            Some((pos, _)) => -(n + pos as f64),
            None => -(2.0 * n + ctx.task_id as f64),
        })
    }
}

/// Checks conservation, causality, eligibility, exact finish times and
/// capacity at every event timestamp. Returns one message per violation.
pub fn check_invariants(inst: &Instance, report: &SimReport) -> Vec<String> {
    let mut out = Vec::new();
    let n = inst.tasks.len();
    let mut seen = vec![0usize; n];
    for e in &report.events {
        if e.task_id >= n {
            out.push(format!("event references unknown task {}", e.task_id));
            continue;
        }
        seen[e.task_id] += 1;
        let t = &inst.tasks[e.task_id];
        if e.start < t.arrival {
            out.push(format!("task {} starts at {} before arrival {}", t.id, e.start, t.arrival));
        }
        if e.finish != e.start + t.exec_time {
            out.push(format!("task {}: finish != start + exec_time", t.id));
        }
        if !t.eligible_servers.contains(&e.server_id) {
            out.push(format!("task {} placed on ineligible server {}", t.id, e.server_id));
        }
    }
    for (id, &count) in seen.iter().enumerate() {
        if count != 1 {
            out.push(format!("task {id} scheduled {count} times"));
        }
    }
    let mut stamps: Vec<f64> = report.events.iter().map(|e| e.start).collect();
    stamps.sort_by(f64::total_cmp);
    stamps.dedup();
    for &at in &stamps {
        for s in &inst.servers {
            let used = report
                .events
                .iter()
                .filter(|e| e.server_id == s.id && e.start <= at && at < e.finish)
                .fold(ResourceVector::ZERO, |acc, e| acc.add(&inst.tasks[e.task_id].demand));
            let cap = s.capacity.to_array();
            if used.to_array().iter().zip(cap).any(|(u, c)| *u > c * (1.0 + 1e-9)) {
                out.push(format!("server {} oversubscribed at t={at}", s.id));
            }
        }
    }
    let u = report.avg_utilization;
    if !(0.0..=1.0).contains(&u) {
        out.push(format!("avg_utilization {u} outside [0, 1]"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{EdgeServer, TaskRequest};

    fn inst(caps: &[f64], tasks: &[(f64, f64, f64)]) -> Instance {
        // tasks: (cpu, arrival, exec), eligible on every server
        let servers = caps
            .iter()
            .enumerate()
            .map(|(id, &c)| EdgeServer { id, capacity: ResourceVector::new(c, 1.0, 1.0, 1.0) })
            .collect();
        let tasks = tasks
            .iter()
            .enumerate()
            .map(|(id, &(cpu, arrival, exec_time))| TaskRequest {
                id,
                demand: ResourceVector::new(cpu, 0.0, 0.0, 0.0),
                arrival,
                exec_time,
                eligible_servers: (0..caps.len()).collect(),
            })
            .collect();
        Instance::new(servers, tasks)
    }

    fn zero(_: &SchedulingContext) -> f64 {
        0.0
    }

    #[test]
    fn single_task_forced_schedule() {
        let i = inst(&[4.0], &[(1.0, 0.0, 5.0)]);
        let r = simulate(&i, &zero, FitnessConfig::default()).unwrap();
        assert_eq!(
            r.events,
            vec![ScheduleEvent { task_id: 0, server_id: 0, start: 0.0, finish: 5.0 }]
        );
        assert_eq!(r.avg_running_time, 5.0);
    }

    #[test]
    fn full_server_tasks_serialize() {
        let i = inst(&[4.0], &[(4.0, 0.0, 3.0), (4.0, 0.0, 4.0)]);
        let r = simulate(&i, &zero, FitnessConfig::default()).unwrap();
        assert_eq!(r.events[1].start, 3.0);
        assert_eq!(r.makespan(), 7.0);
        assert_eq!(r.avg_running_time, 7.0);
        assert!(check_invariants(&i, &r).is_empty());
    }

    #[test]
    fn half_cpu_for_whole_window() {
        let i = inst(&[4.0], &[(2.0, 0.0, 10.0)]);
        let r = simulate(&i, &zero, FitnessConfig::default()).unwrap();
        assert_eq!(r.avg_utilization, 0.5);
    }

    #[test]
    fn idle_server_contributes_zero() {
        let mut i = inst(&[4.0, 4.0], &[(4.0, 0.0, 10.0)]);
        i.tasks[0].eligible_servers = vec![0];
        let r = simulate(&i, &zero, FitnessConfig::default()).unwrap();
        assert_eq!(r.avg_utilization, 0.5);
        assert_eq!(r.avg_running_time, 5.0);
    }

    #[test]
    fn utilization_takes_max_resource_then_mean_over_servers() {
        // server 0 time-means (0.5, 0.2, 0.1, 0.4), server 1 (0.3, 0.9, 0.2, 0.1)
        let servers = vec![
            EdgeServer { id: 0, capacity: ResourceVector::splat(10.0) },
            EdgeServer { id: 1, capacity: ResourceVector::splat(10.0) },
        ];
        let tasks = vec![
            TaskRequest {
                id: 0,
                demand: ResourceVector::new(5.0, 2.0, 1.0, 4.0),
                arrival: 0.0,
                exec_time: 10.0,
                eligible_servers: vec![0],
            },
            TaskRequest {
                id: 1,
                demand: ResourceVector::new(3.0, 9.0, 2.0, 1.0),
                arrival: 0.0,
                exec_time: 10.0,
                eligible_servers: vec![1],
            },
        ];
        let i = Instance::new(servers, tasks);
        let r = simulate(&i, &zero, FitnessConfig::default()).unwrap();
        assert!((r.avg_utilization - 0.7).abs() < 1e-12);
    }

    #[test]
    fn running_time_is_makespan_over_servers() {
        let report = SimReport {
            events: vec![
                ScheduleEvent { task_id: 0, server_id: 0, start: 100.0, finish: 300.0 },
                ScheduleEvent { task_id: 1, server_id: 1, start: 200.0, finish: 500.0 },
            ],
            start_time: 100.0,
            finish_time: 500.0,
            avg_utilization: 0.0,
            avg_running_time: 0.0,
            fitness: 0.0,
            alpha: 150.0,
            beta: 1.0,
            utilization: vec![],
        };
        let i = inst(&[1.0; 4], &[(0.0, 0.0, 200.0), (0.0, 0.0, 300.0)]);
        assert_eq!(avg_running_time(&report, &i), 100.0);
    }

    #[test]
    fn fitness_arithmetic() {
        let cfg = FitnessConfig::default();
        assert_eq!(cfg, FitnessConfig { alpha: 150.0, beta: 1.0 });
        assert!((fitness(0.9, 50.0, cfg) - 85.0).abs() < 1e-12);
        assert_eq!(fitness(0.0, 0.0, cfg), 0.0);
        assert!((fitness(0.7, 100.0, cfg) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn zero_length_window_has_zero_utilization() {
        let i = inst(&[1.0], &[(0.5, 0.0, 1.0)]);
        let report = SimReport {
            events: vec![ScheduleEvent { task_id: 0, server_id: 0, start: 3.0, finish: 3.0 }],
            start_time: 3.0,
            finish_time: 3.0,
            avg_utilization: 0.0,
            avg_running_time: 0.0,
            fitness: 0.0,
            alpha: 150.0,
            beta: 1.0,
            utilization: vec![],
        };
        assert_eq!(avg_utilization(&report, &i), 0.0);
    }

    #[test]
    fn non_finite_score_aborts() {
        let i = inst(&[4.0], &[(1.0, 0.0, 1.0)]);
        let nan = |_: &SchedulingContext| f64::NAN;
        assert!(matches!(
            simulate(&i, &nan, FitnessConfig::default()),
            Err(SimError::NonFiniteScore { .. })
        ));
    }

    #[test]
    fn policy_error_aborts() {
        struct Failing;
        impl ScoringPolicy for Failing {
            fn score(&self, _: &SchedulingContext) -> Result<f64, PolicyError> {
                Err(PolicyError("boom".into()))
            }
        }
        let i = inst(&[4.0], &[(1.0, 0.0, 1.0)]);
        assert!(matches!(
            simulate(&i, &Failing, FitnessConfig::default()),
            Err(SimError::Policy(_))
        ));
    }

    #[test]
    fn unplaceable_task_starves() {
        let i = inst(&[1.0], &[(2.0, 0.0, 1.0)]);
        assert!(matches!(
            simulate(&i, &zero, FitnessConfig::default()),
            Err(SimError::Starvation { unscheduled: 1, .. })
        ));
    }

    #[test]
    fn concurrent_tasks_share_a_server() {
        let i = inst(&[4.0], &[(2.0, 0.0, 5.0), (2.0, 1.0, 5.0), (2.0, 1.0, 5.0)]);
        let r = simulate(&i, &zero, FitnessConfig::default()).unwrap();
        let starts: Vec<f64> = r.events.iter().map(|e| e.start).collect();
        assert_eq!(starts, vec![0.0, 1.0, 5.0]);
        assert!(check_invariants(&i, &r).is_empty());
    }

    #[test]
    fn wait_and_pending_visible_to_policy() {
        let i = inst(&[1.0], &[(1.0, 0.0, 4.0), (1.0, 1.0, 1.0), (1.0, 2.0, 1.0)]);
        // prefer the task that has waited least (LIFO)
        let lifo = |c: &SchedulingContext| {
            assert!(c.wait >= 0.0 && c.pending >= 1);
            -c.wait
        };
        let r = simulate(&i, &lifo, FitnessConfig::default()).unwrap();
        assert_eq!(r.order(), vec![0, 2, 1]);
    }

    #[test]
    fn sequence_policy_replays_order() {
        let i = inst(&[1.0], &[(1.0, 0.0, 1.0), (1.0, 0.0, 1.0), (1.0, 0.0, 1.0)]);
        let seq = SequencePolicy::new(3, &[(2, 0), (0, 0), (1, 0)]);
        let r = simulate(&i, &seq, FitnessConfig::default()).unwrap();
        assert_eq!(r.order(), vec![2, 0, 1]);
    }

    #[test]
    fn utilization_csv_has_documented_header() {
        let i = inst(&[4.0], &[(2.0, 0.0, 1.0)]);
        let r = simulate(&i, &zero, FitnessConfig::default()).unwrap();
        let mut buf = Vec::new();
        r.write_utilization_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("time,server_id,cpu_ratio,io_ratio,bw_ratio,mem_ratio"));
        assert_eq!(lines.next(), Some("0,0,0,0,0,0"));
        assert_eq!(lines.next(), Some("0,0,0.5,0,0,0"));
        assert_eq!(lines.next(), Some("1,0,0,0,0,0"));
    }
}
