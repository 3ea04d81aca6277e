//! The evolution loop: an initial population from INIT prompts, then rounds
//! in which every enabled strategy produces N offspring, offspring are
//! redundancy-checked and scored, and the best N offspring replace the
//! population. The best heuristic ever seen is kept in an archive.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use tseoh_core::dsl::{canonicalize, parse, DslPolicy, Expr};
use tseoh_core::{rng, simulate, Execution, FitnessConfig, Instance};

use crate::gateway::{Gateway, GatewayError, GenerationResult};
use crate::prompt::Parent;
use crate::strategy::Strategy;

/// Fitness value; `INVALID` orders below every valid value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fitness(pub Option<f64>);

impl Fitness {
    pub const INVALID: Fitness = Fitness(None);

    pub fn valid(v: f64) -> Self {
        debug_assert!(v.is_finite());
        Fitness(Some(v))
    }

    pub fn is_valid(self) -> bool {
        self.0.is_some()
    }

    pub fn value(self) -> Option<f64> {
        self.0
    }
}

impl Eq for Fitness {}

impl PartialOrd for Fitness {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fitness {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.0, other.0) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => a.total_cmp(&b),
        }
    }
}

impl fmt::Display for Fitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("INVALID"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Origin {
    pub strategy: Strategy,
    pub parent_id: Option<usize>,
    /// Population generation the heuristic was born into (0 = initial).
    pub generation: usize,
    /// Built-in heuristic used because generation could not fill the slot.
    pub fallback: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Heuristic {
    pub id: usize,
    pub description: String,
    pub source: String,
    /// Rendered canonical form; `None` when the source does not parse.
    pub canonical: Option<String>,
    pub fitness: Fitness,
    pub avg_utilization: Option<f64>,
    pub avg_running_time: Option<f64>,
    pub origin: Origin,
    #[serde(skip)]
    expr: Option<Expr>,
    #[serde(skip)]
    canonical_expr: Option<Expr>,
}

impl Heuristic {
    fn parsed(id: usize, description: String, source: String, expr: Expr, origin: Origin) -> Self {
        let canon = canonicalize(&expr);
        Self {
            id,
            description,
            source,
            canonical: Some(canon.to_string()),
            fitness: Fitness::INVALID,
            avg_utilization: None,
            avg_running_time: None,
            origin,
            expr: Some(expr),
            canonical_expr: Some(canon),
        }
    }

    fn invalid(id: usize, description: String, source: String, origin: Origin) -> Self {
        Self {
            id,
            description,
            source,
            canonical: None,
            fitness: Fitness::INVALID,
            avg_utilization: None,
            avg_running_time: None,
            origin,
            expr: None,
            canonical_expr: None,
        }
    }

    pub fn expr(&self) -> Option<&Expr> {
        self.expr.as_ref()
    }

    pub fn canonical_expr(&self) -> Option<&Expr> {
        self.canonical_expr.as_ref()
    }

    /// Restores the parsed forms after deserialization.
    pub fn reparse(&mut self) {
        if let Ok(e) = parse(&self.source) {
            self.canonical_expr = Some(canonicalize(&e));
            self.expr = Some(e);
        }
    }

    fn as_parent(&self) -> Parent<'_> {
        Parent { id: self.id, description: &self.description, source: &self.source }
    }
}

// ---------------------------------------------------------- redundancy

fn tokens(text: &str) -> BTreeSet<String> {
    text.split(|c: char| !(c.is_alphanumeric() || c == '_'))
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
        .collect()
}

/// Jaccard similarity of lowercased word-token sets. Two empty texts count
/// as identical.
pub fn jaccard(a: &str, b: &str) -> f64 {
    let (x, y) = (tokens(a), tokens(b));
    let union = x.union(&y).count();
    if union == 0 {
        return 1.0;
    }
    x.intersection(&y).count() as f64 / union as f64
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Redundancy {
    Description { against: usize, similarity: f64 },
    Structure { against: usize },
}

/// First pool member the candidate duplicates, by description similarity
/// `>= tau` or by equal canonical form.
pub fn find_redundancy(
    description: &str,
    canonical: Option<&Expr>,
    pool: &[Heuristic],
    tau: f64,
) -> Option<Redundancy> {
    for h in pool {
        let s = jaccard(description, &h.description);
        if s >= tau {
            return Some(Redundancy::Description { against: h.id, similarity: s });
        }
        if let (Some(a), Some(b)) = (canonical, h.canonical_expr()) {
            if a.same_structure(b) {
                return Some(Redundancy::Structure { against: h.id });
            }
        }
    }
    None
}

pub fn is_redundant(candidate: &Heuristic, pool: &[Heuristic], tau: f64) -> bool {
    let others: Vec<Heuristic> = pool.iter().filter(|h| h.id != candidate.id).cloned().collect();
    find_redundancy(&candidate.description, candidate.canonical_expr(), &others, tau).is_some()
}

// ---------------------------------------------------------- evaluation

#[derive(Clone, Debug, PartialEq)]
pub struct Evaluation {
    pub fitness: Fitness,
    pub avg_utilization: Option<f64>,
    pub avg_running_time: Option<f64>,
}

impl Evaluation {
    pub const INVALID: Evaluation =
        Evaluation { fitness: Fitness::INVALID, avg_utilization: None, avg_running_time: None };
}

pub trait FitnessEvaluator: Sync {
    fn evaluate(&self, expr: &Expr) -> Evaluation;
}

/// Simulates the heuristic on each training instance and averages the
/// metrics. Any simulation failure makes the heuristic INVALID.
pub struct SimEvaluator {
    pub instances: Vec<Instance>,
    pub cfg: FitnessConfig,
}

impl SimEvaluator {
    pub fn new(instance: Instance, cfg: FitnessConfig) -> Self {
        Self { instances: vec![instance], cfg }
    }
}

impl FitnessEvaluator for SimEvaluator {
    fn evaluate(&self, expr: &Expr) -> Evaluation {
        let policy = DslPolicy::new(expr.clone());
        let (mut f, mut u, mut r) = (0.0, 0.0, 0.0);
        for inst in &self.instances {
            match simulate(inst, &policy, self.cfg) {
                Ok(rep) => {
                    f += rep.fitness;
                    u += rep.avg_utilization;
                    r += rep.avg_running_time;
                }
                Err(e) => {
                    log::debug!("simulation failed: {e}");
                    return Evaluation::INVALID;
                }
            }
        }
        let k = self.instances.len().max(1) as f64;
        if self.instances.len() == 1 {
            // keep fitness bit-identical to the single simulation report
            return Evaluation { fitness: Fitness::valid(f), avg_utilization: Some(u), avg_running_time: Some(r) };
        }
        Evaluation { fitness: Fitness::valid(f / k), avg_utilization: Some(u / k), avg_running_time: Some(r / k) }
    }
}

// -------------------------------------------------------------- config

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EvolutionConfig {
    /// Population size N.
    pub population: usize,
    /// Number of evolution rounds G.
    pub generations: usize,
    pub strategies: Vec<Strategy>,
    /// Description similarity at or above which offspring are redundant.
    pub tau: f64,
    /// Generation attempts per offspring slot before falling back.
    pub max_attempts: usize,
    pub seed: u64,
}

impl Default for EvolutionConfig {
    fn default() -> Self {
        Self {
            population: 4,
            generations: 3,
            strategies: Strategy::OFFSPRING.to_vec(),
            tau: 0.85,
            max_attempts: 3,
            seed: 0,
        }
    }
}

impl EvolutionConfig {
    pub fn validate(&self) -> Result<(), EvolutionError> {
        let fail = |m: &str| Err(EvolutionError::Config(m.to_string()));
        if self.population == 0 {
            return fail("population must be at least 1");
        }
        if self.strategies.is_empty() {
            return fail("strategy set is empty");
        }
        if self.strategies.contains(&Strategy::Init) {
            return fail("INIT is not an offspring strategy");
        }
        if !(self.tau > 0.0 && self.tau <= 1.0) {
            return fail("tau must lie in (0, 1]");
        }
        if self.max_attempts == 0 {
            return fail("max_attempts must be at least 1");
        }
        Ok(())
    }
}

// ----------------------------------------------------------------- logs

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AttemptOutcome {
    Accepted,
    GenerationFailed { error: String },
    ParseFailed { error: String },
    Redundant(Redundancy),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AttemptLog {
    pub attempt: usize,
    pub description: Option<String>,
    pub source: Option<String>,
    pub model: Option<String>,
    pub latency_ms: Option<u64>,
    pub outcome: AttemptOutcome,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SlotResult {
    Accepted,
    /// Filled with an unparseable offspring after the attempt cap.
    Invalid,
    Fallback,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlotLog {
    pub strategy: Strategy,
    pub slot: usize,
    pub parent_id: Option<usize>,
    pub attempts: Vec<AttemptLog>,
    pub result: SlotResult,
    pub heuristic_id: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenerationLog {
    /// `None` for the initial population, otherwise the 0-based round.
    pub round: Option<usize>,
    pub strategies: Vec<Strategy>,
    /// Population the round started from (empty for the initial population).
    pub parents: Vec<Heuristic>,
    pub slots: Vec<SlotLog>,
    pub offspring: Vec<Heuristic>,
    pub survivors: Vec<usize>,
    pub archive_best: Option<Heuristic>,
    /// False when the round was cut short by an error.
    pub complete: bool,
}

impl GenerationLog {
    pub fn file_name(&self) -> String {
        match self.round {
            None => "init.json".to_string(),
            Some(g) => format!("gen_{g:03}.json"),
        }
    }

    pub fn best_offspring(&self) -> Option<&Heuristic> {
        self.offspring.iter().max_by(|a, b| a.fitness.cmp(&b.fitness).then(b.id.cmp(&a.id)))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Population {
    /// Number of completed rounds.
    pub generation: usize,
    pub members: Vec<Heuristic>,
    pub archive_best: Heuristic,
}

#[derive(Debug, Error)]
pub enum EvolutionError {
    #[error("invalid evolution config: {0}")]
    Config(String),
    #[error("generation aborted: {source}")]
    Gateway {
        #[source]
        source: GatewayError,
        partial: Box<GenerationLog>,
    },
    #[error("{0}")]
    Io(String),
}

// ------------------------------------------------------------ fallbacks

const FALLBACKS: [(&str, &str); 6] = [
    ("Start the task that has waited longest.", "wait"),
    ("Earliest arrival goes first.", "-arrival"),
    ("Shortest job first.", "-exec"),
    ("Highest response ratio next.", "(wait + exec) / exec"),
    ("Tight packing: leave little spare cpu or memory.", "-(free_cpu - cpu) / cap_cpu - (free_mem - mem) / cap_mem"),
    ("Large requests relative to server size.", "cpu / cap_cpu + io / cap_io + bw / cap_bw + mem / cap_mem"),
];

/// First built-in heuristic not redundant with `pool`; past the fixed list,
/// numbered variants are generated until one is.
fn fallback(pool: &[Heuristic], tau: f64) -> (String, String, Expr) {
    let fixed = FALLBACKS.iter().map(|(d, s)| (d.to_string(), s.to_string()));
    let variants = (1usize..).map(|k| (format!("fallback variant {k}"), format!("wait * {}", k + 1)));
    for (d, s) in fixed.chain(variants) {
        let expr = parse(&s).expect("built-in heuristics parse");
        if find_redundancy(&d, Some(&canonicalize(&expr)), pool, tau).is_none() {
            return (d, s, expr);
        }
    }
    unreachable!("variant stream is infinite")
}

// -------------------------------------------------------------- driver

/// Tournament of two distinct members drawn uniformly; the fitter wins and
/// a tie goes to the first draw, so equal members are chosen uniformly.
pub fn select_parent<'a, R: Rng + ?Sized>(members: &'a [Heuristic], rng: &mut R) -> &'a Heuristic {
    let n = members.len();
    assert!(n > 0, "empty population");
    if n == 1 {
        return &members[0];
    }
    let i = rng.random_range(0..n);
    let mut j = rng.random_range(0..n - 1);
    if j >= i {
        j += 1;
    }
    if members[j].fitness > members[i].fitness {
        &members[j]
    } else {
        &members[i]
    }
}

fn strategy_key(s: Strategy) -> u64 {
    Strategy::ALL.iter().position(|x| *x == s).expect("known strategy") as u64
}

/// Orders by fitness descending, then id ascending.
fn rank(a: &Heuristic, b: &Heuristic) -> Ordering {
    b.fitness.cmp(&a.fitness).then(a.id.cmp(&b.id))
}

pub struct Evolver<'a> {
    cfg: EvolutionConfig,
    gateway: &'a Gateway,
    evaluator: &'a dyn FitnessEvaluator,
    exec: Execution,
    next_id: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunOutcome {
    pub best: Heuristic,
    pub population: Population,
    pub logs: Vec<GenerationLog>,
}

enum Failure {
    Generation,
    Parse(GenerationResult),
    Redundant,
}

impl<'a> Evolver<'a> {
    pub fn new(
        cfg: EvolutionConfig,
        gateway: &'a Gateway,
        evaluator: &'a dyn FitnessEvaluator,
        exec: Execution,
    ) -> Result<Self, EvolutionError> {
        cfg.validate()?;
        Ok(Self { cfg, gateway, evaluator, exec, next_id: 0 })
    }

    fn take_id(&mut self) -> usize {
        self.next_id += 1;
        self.next_id - 1
    }

    /// Fills one slot, retrying up to the attempt cap. `pool` holds every
    /// heuristic the new one must not duplicate.
    fn fill_slot(
        &mut self,
        strategy: Strategy,
        slot: usize,
        parent: Option<&Heuristic>,
        pool: &[Heuristic],
        generation: usize,
    ) -> Result<(SlotLog, Heuristic), (GatewayError, SlotLog)> {
        let origin = |fallback| Origin { strategy, parent_id: parent.map(|p| p.id), generation, fallback };
        let mut log = SlotLog {
            strategy,
            slot,
            parent_id: parent.map(|p| p.id),
            attempts: Vec::new(),
            result: SlotResult::Fallback,
            heuristic_id: usize::MAX,
        };
        let mut last = Failure::Generation;
        for attempt in 1..=self.cfg.max_attempts {
            let res = match self.gateway.generate(strategy, parent.map(Heuristic::as_parent)) {
                Ok(r) => r,
                Err(e) if e.is_generation_failure() => {
                    log.attempts.push(AttemptLog {
                        attempt,
                        description: None,
                        source: None,
                        model: None,
                        latency_ms: None,
                        outcome: AttemptOutcome::GenerationFailed { error: e.to_string() },
                    });
                    last = Failure::Generation;
                    continue;
                }
                Err(e) => return Err((e, log)),
            };
            let mut entry = AttemptLog {
                attempt,
                description: Some(res.description.clone()),
                source: Some(res.source.clone()),
                model: Some(res.model.clone()),
                latency_ms: Some(res.latency_ms),
                outcome: AttemptOutcome::Accepted,
            };
            match parse(&res.source) {
                Err(e) => {
                    let (line, col) = e.line_col(&res.source);
                    entry.outcome = AttemptOutcome::ParseFailed { error: format!("{line}:{col}: {e}") };
                    log.attempts.push(entry);
                    last = Failure::Parse(res);
                }
                Ok(expr) => {
                    let canon = canonicalize(&expr);
                    if let Some(r) = find_redundancy(&res.description, Some(&canon), pool, self.cfg.tau) {
                        entry.outcome = AttemptOutcome::Redundant(r);
                        log.attempts.push(entry);
                        last = Failure::Redundant;
                        continue;
                    }
                    log.attempts.push(entry);
                    let h = Heuristic::parsed(self.take_id(), res.description, res.source, expr, origin(false));
                    log.result = SlotResult::Accepted;
                    log.heuristic_id = h.id;
                    return Ok((log, h));
                }
            }
        }

        // an unparseable offspring keeps its slot (as INVALID) in evolution
        // rounds unless it duplicates a description; everything else falls back
        if generation > 0 {
            let text = match &last {
                Failure::Parse(r) => Some((r.description.clone(), r.source.clone())),
                Failure::Generation => Some((String::new(), String::new())),
                Failure::Redundant => None,
            };
            if let Some((d, s)) = text {
                if find_redundancy(&d, None, pool, self.cfg.tau).is_none() {
                    let h = Heuristic::invalid(self.take_id(), d, s, origin(false));
                    log.result = SlotResult::Invalid;
                    log.heuristic_id = h.id;
                    return Ok((log, h));
                }
            }
        }
        let (d, s, expr) = fallback(pool, self.cfg.tau);
        let h = Heuristic::parsed(self.take_id(), d, s, expr, origin(true));
        log.result = SlotResult::Fallback;
        log.heuristic_id = h.id;
        Ok((log, h))
    }

    fn evaluate_all(&self, hs: &mut [Heuristic]) {
        let evals = self.exec.map(hs, |h| match h.expr() {
            Some(e) => self.evaluator.evaluate(e),
            None => Evaluation::INVALID,
        });
        for (h, e) in hs.iter_mut().zip(evals) {
            h.fitness = e.fitness;
            h.avg_utilization = e.avg_utilization;
            h.avg_running_time = e.avg_running_time;
        }
    }

    pub fn init_population(&mut self) -> Result<(Population, GenerationLog), EvolutionError> {
        let mut log = GenerationLog {
            round: None,
            strategies: vec![Strategy::Init],
            parents: vec![],
            slots: vec![],
            offspring: vec![],
            survivors: vec![],
            archive_best: None,
            complete: false,
        };
        for slot in 0..self.cfg.population {
            let pool = log.offspring.clone();
            match self.fill_slot(Strategy::Init, slot, None, &pool, 0) {
                Ok((s, h)) => {
                    log.slots.push(s);
                    log.offspring.push(h);
                }
                Err((source, s)) => {
                    log.slots.push(s);
                    return Err(EvolutionError::Gateway { source, partial: Box::new(log) });
                }
            }
        }
        self.evaluate_all(&mut log.offspring);
        let mut members = log.offspring.clone();
        members.sort_by(rank);
        let best = members[0].clone();
        log.survivors = members.iter().map(|h| h.id).collect();
        log.archive_best = Some(best.clone());
        log.complete = true;
        Ok((Population { generation: 0, members, archive_best: best }, log))
    }

    pub fn evolve_generation(&mut self, pop: &Population) -> Result<(Population, GenerationLog), EvolutionError> {
        let round = pop.generation;
        let n = self.cfg.population;
        let mut log = GenerationLog {
            round: Some(round),
            strategies: self.cfg.strategies.clone(),
            parents: pop.members.clone(),
            slots: vec![],
            offspring: vec![],
            survivors: vec![],
            archive_best: None,
            complete: false,
        };
        for strategy in self.cfg.strategies.clone() {
            for slot in 0..n {
                let mut r = rng::stream(self.cfg.seed, &[round as u64 + 1, strategy_key(strategy), slot as u64]);
                let parent = select_parent(&pop.members, &mut r).clone();
                let pool: Vec<Heuristic> = pop.members.iter().chain(&log.offspring).cloned().collect();
                match self.fill_slot(strategy, slot, Some(&parent), &pool, round + 1) {
                    Ok((s, h)) => {
                        log.slots.push(s);
                        log.offspring.push(h);
                    }
                    Err((source, s)) => {
                        log.slots.push(s);
                        return Err(EvolutionError::Gateway { source, partial: Box::new(log) });
                    }
                }
            }
        }
        self.evaluate_all(&mut log.offspring);

        let mut ranked = log.offspring.clone();
        ranked.sort_by(rank);
        ranked.truncate(n);
        let mut archive = pop.archive_best.clone();
        if let Some(top) = ranked.first() {
            if top.fitness > archive.fitness {
                archive = top.clone();
            }
        }
        assert!(archive.fitness >= pop.archive_best.fitness, "archive regressed");
        assert_eq!(ranked.len(), n);
        log.survivors = ranked.iter().map(|h| h.id).collect();
        log.archive_best = Some(archive.clone());
        log.complete = true;
        Ok((Population { generation: round + 1, members: ranked, archive_best: archive }, log))
    }

    /// Initial population plus `generations` rounds. With `out_dir`, every
    /// log is written as soon as it exists, including a partial log for a
    /// failed round, along with the current best heuristic.
    pub fn run(&mut self, out_dir: Option<&Path>) -> Result<RunOutcome, EvolutionError> {
        let mut logs = Vec::new();
        let step = |res: Result<(Population, GenerationLog), EvolutionError>, logs: &mut Vec<GenerationLog>| {
            match res {
                Ok((p, l)) => {
                    if let Some(d) = out_dir {
                        write_log(d, &l)?;
                        write_best(d, &p.archive_best)?;
                    }
                    logs.push(l);
                    Ok(p)
                }
                Err(EvolutionError::Gateway { source, partial }) => {
                    if let Some(d) = out_dir {
                        write_log(d, &partial)?;
                    }
                    Err(EvolutionError::Gateway { source, partial })
                }
                Err(e) => Err(e),
            }
        };
        let init = self.init_population();
        let mut pop = step(init, &mut logs)?;
        for _ in 0..self.cfg.generations {
            let next = self.evolve_generation(&pop);
            pop = step(next, &mut logs)?;
        }
        Ok(RunOutcome { best: pop.archive_best.clone(), population: pop, logs })
    }
}

fn io_err(path: &Path, e: impl fmt::Display) -> EvolutionError {
    EvolutionError::Io(format!("{}: {e}", path.display()))
}

pub fn write_log(dir: &Path, log: &GenerationLog) -> Result<PathBuf, EvolutionError> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let path = dir.join(log.file_name());
    let text = serde_json::to_string_pretty(log).map_err(|e| io_err(&path, e))?;
    fs::write(&path, text).map_err(|e| io_err(&path, e))?;
    Ok(path)
}

pub fn read_log(path: &Path) -> Result<GenerationLog, EvolutionError> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let mut log: GenerationLog = serde_json::from_str(&text).map_err(|e| io_err(path, e))?;
    for h in log.parents.iter_mut().chain(&mut log.offspring).chain(&mut log.archive_best) {
        h.reparse();
    }
    Ok(log)
}

/// `best.score` holds the expression, `best.json` the full record.
pub fn write_best(dir: &Path, best: &Heuristic) -> Result<(), EvolutionError> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let score = dir.join("best.score");
    fs::write(&score, format!("{}\n", best.source)).map_err(|e| io_err(&score, e))?;
    let json = dir.join("best.json");
    let text = serde_json::to_string_pretty(best).map_err(|e| io_err(&json, e))?;
    fs::write(&json, text).map_err(|e| io_err(&json, e))
}
