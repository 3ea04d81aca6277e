//! Independent reference implementations used by the integration and
//! acceptance tests. None of this calls into the code it checks, apart from
//! the types needed to build inputs.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use tseoh_core::dsl::{BinOp, CmpOp, Expr, UnaryFn, Var};
use tseoh_core::model::{EdgeServer, Instance, ResourceVector, TaskRequest};
use tseoh_core::{ScheduleEvent, SchedulingContext};

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random valid instance. Arrivals sit on a coarse grid so equal arrival
/// times (and therefore tie-breaks) are common.
pub fn random_instance(r: &mut ChaCha8Rng, max_n: usize, max_m: usize) -> Instance {
    let n = r.random_range(1..=max_n);
    let m = r.random_range(1..=max_m);
    let servers: Vec<EdgeServer> = (0..m)
        .map(|id| EdgeServer {
            id,
            capacity: ResourceVector::new(
                r.random_range(1.0..16.0),
                r.random_range(1.0..16.0),
                r.random_range(1.0..16.0),
                r.random_range(1.0..16.0),
            ),
        })
        .collect();
    let tasks = (0..n)
        .map(|id| {
            let mut eligible: Vec<usize> = (0..m).filter(|_| r.random_bool(0.6)).collect();
            if eligible.is_empty() {
                eligible.push(r.random_range(0..m));
            }
            eligible.shuffle(r);
            let host = &servers[eligible[0]].capacity;
            // fits the first listed server by construction
            let demand = ResourceVector::new(
                host.cpu * r.random_range(0.0..=1.0),
                host.io * r.random_range(0.0..=1.0),
                host.bandwidth * r.random_range(0.0..=1.0),
                host.memory * r.random_range(0.0..=1.0),
            );
            TaskRequest {
                id,
                demand,
                arrival: r.random_range(0..20u32) as f64 * 0.5,
                exec_time: r.random_range(1..40u32) as f64 * 0.25,
                eligible_servers: eligible,
            }
        })
        .collect();
    Instance::new(servers, tasks)
}

/// First-come-first-served list scheduler written from scratch: at every
/// event instant, repeatedly start the earliest-arrived (then lowest id)
/// waiting task on its lowest-id eligible server with room, until nothing
/// fits; then jump to the next arrival or completion.
pub fn fcfs_oracle(inst: &Instance) -> Vec<(usize, usize, f64)> {
    let n = inst.tasks.len();
    let mut used = vec![[0.0f64; 4]; inst.servers.len()];
    let mut running: Vec<(f64, usize, usize)> = Vec::new(); // (finish, task, server)
    let mut done = vec![false; n];
    let mut out = Vec::new();
    let mut now = inst.tasks.iter().map(|t| t.arrival).fold(f64::INFINITY, f64::min);
    while out.len() < n {
        // release everything that has finished by `now`
        running.retain(|&(f, _, _)| f > now);
        for u in used.iter_mut() {
            *u = [0.0; 4];
        }
        for &(_, t, s) in &running {
            let d = inst.tasks[t].demand.to_array();
            for k in 0..4 {
                used[s][k] += d[k];
            }
        }
        loop {
            let mut waiting: Vec<usize> =
                (0..n).filter(|&i| !done[i] && inst.tasks[i].arrival <= now).collect();
            waiting.sort_by(|&a, &b| {
                inst.tasks[a].arrival.total_cmp(&inst.tasks[b].arrival).then(a.cmp(&b))
            });
            let mut started = false;
            'outer: for &i in &waiting {
                let mut servers = inst.tasks[i].eligible_servers.clone();
                servers.sort_unstable();
                for s in servers {
                    let cap = inst.servers[s].capacity.to_array();
                    let d = inst.tasks[i].demand.to_array();
                    if (0..4).all(|k| d[k] <= cap[k] - used[s][k]) {
                        for k in 0..4 {
                            used[s][k] += d[k];
                        }
                        done[i] = true;
                        running.push((now + inst.tasks[i].exec_time, i, s));
                        out.push((i, s, now));
                        started = true;
                        break 'outer;
                    }
                }
            }
            if !started {
                break;
            }
        }
        let next_finish = running.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
        let next_arrival = inst
            .tasks
            .iter()
            .filter(|t| !done[t.id] && t.arrival > now)
            .map(|t| t.arrival)
            .fold(f64::INFINITY, f64::min);
        let next = next_finish.min(next_arrival);
        if out.len() < n {
            assert!(next.is_finite(), "oracle starved");
            now = next;
        }
    }
    out
}

/// Utilization and running time by stepping through every elementary
/// interval between event boundaries and summing the in-flight demand.
pub fn brute_force_metrics(inst: &Instance, events: &[ScheduleEvent]) -> (f64, f64) {
    let m = inst.servers.len();
    let mut cuts: Vec<f64> = events.iter().flat_map(|e| [e.start, e.finish]).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let (lo, hi) = (cuts[0], *cuts.last().unwrap());
    let span = hi - lo;
    let avg_r = span / m as f64;
    if span == 0.0 {
        return (0.0, avg_r);
    }
    let mut area = vec![[0.0f64; 4]; m];
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let mid = 0.5 * (a + b);
        for e in events.iter().filter(|e| e.start <= mid && mid < e.finish) {
            let d = inst.tasks[e.task_id].demand.to_array();
            for k in 0..4 {
                area[e.server_id][k] += d[k] * (b - a);
            }
        }
    }
    let mut total = 0.0;
    for (j, a) in area.iter().enumerate() {
        let cap = inst.servers[j].capacity.to_array();
        let peak = (0..4).map(|k| a[k] / (cap[k] * span)).fold(0.0, f64::max);
        total += peak.min(1.0);
    }
    (total / m as f64, avg_r)
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

// ---------------------------------------------------------------- DSL

const VARS: [Var; 18] = [
    Var::Cpu,
    Var::Io,
    Var::Bw,
    Var::Mem,
    Var::Arrival,
    Var::Exec,
    Var::Wait,
    Var::FreeCpu,
    Var::FreeIo,
    Var::FreeBw,
    Var::FreeMem,
    Var::CapCpu,
    Var::CapIo,
    Var::CapBw,
    Var::CapMem,
    Var::Now,
    Var::Pending,
    Var::MServers,
];

/// Random expression with depth at most `depth`.
pub fn random_expr(r: &mut ChaCha8Rng, depth: usize) -> Expr {
    if depth <= 1 || r.random_bool(0.2) {
        return if r.random_bool(0.5) {
            Expr::Var(VARS[r.random_range(0..VARS.len())])
        } else {
            let v = match r.random_range(0..6) {
                0 => 0.0,
                1 => r.random_range(-5..=5) as f64,
                2 => r.random_range(-1e3..1e3),
                3 => 10f64.powi(r.random_range(-12..=14)),
                4 => -10f64.powi(r.random_range(-12..=14)),
                _ => r.random_range(0.0..1.0),
            };
            Expr::Num(v)
        };
    }
    let sub = |r: &mut ChaCha8Rng| Box::new(random_expr(r, depth - 1));
    match r.random_range(0..12) {
        0 => Expr::Neg(sub(r)),
        1 => Expr::Unary(UnaryFn::Abs, sub(r)),
        2 => Expr::Unary(UnaryFn::Log, sub(r)),
        3 => Expr::Unary(UnaryFn::Exp, sub(r)),
        4 => Expr::Unary(UnaryFn::Sqrt, sub(r)),
        5 => {
            let cmp = [CmpOp::Lt, CmpOp::Le, CmpOp::Gt, CmpOp::Ge, CmpOp::Eq][r.random_range(0..5)];
            Expr::If { cmp, lhs: sub(r), rhs: sub(r), then: sub(r), otherwise: sub(r) }
        }
        _ => {
            let ops = [BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div, BinOp::Min, BinOp::Max, BinOp::Pow];
            Expr::Binary(ops[r.random_range(0..ops.len())], sub(r), sub(r))
        }
    }
}

/// Random context, deliberately including zeros, tiny and huge magnitudes.
pub fn random_context(r: &mut ChaCha8Rng) -> SchedulingContext {
    let x = |r: &mut ChaCha8Rng| match r.random_range(0..5) {
        0 => 0.0,
        1 => r.random_range(0.0..1.0),
        2 => r.random_range(0.0..1e4),
        3 => 10f64.powi(r.random_range(-300..=300)),
        _ => f64::MIN_POSITIVE * r.random_range(0.0..4.0),
    };
    let rv = |r: &mut ChaCha8Rng| ResourceVector::new(x(r), x(r), x(r), x(r));
    let demand = rv(r);
    let free = rv(r);
    let capacity = rv(r);
    let arrival = x(r);
    let now = arrival + x(r);
    SchedulingContext {
        now,
        decision: r.random_range(0..1000),
        task_id: 0,
        server_id: 0,
        demand,
        arrival,
        exec_time: x(r),
        wait: now - arrival,
        free,
        capacity,
        pending: r.random_range(0..10_000),
        num_servers: r.random_range(1..64),
    }
}

/// Postfix instruction for the oracle's stack machine.
enum Op {
    Push(f64),
    Load(Var),
    Neg,
    Un(UnaryFn),
    Bin(BinOp),
    /// Pops rhs, lhs; jumps by `else_jump` when the comparison fails.
    Test(CmpOp, usize),
    Jump(usize),
}

fn compile(e: &Expr, code: &mut Vec<Op>) {
    match e {
        Expr::Num(v) => code.push(Op::Push(*v)),
        Expr::Var(v) => code.push(Op::Load(*v)),
        Expr::Neg(a) => {
            compile(a, code);
            code.push(Op::Neg);
        }
        Expr::Unary(f, a) => {
            compile(a, code);
            code.push(Op::Un(*f));
        }
        Expr::Binary(op, a, b) => {
            compile(a, code);
            compile(b, code);
            code.push(Op::Bin(*op));
        }
        Expr::If { cmp, lhs, rhs, then, otherwise } => {
            compile(lhs, code);
            compile(rhs, code);
            let test = code.len();
            code.push(Op::Test(*cmp, 0));
            compile(then, code);
            let jump = code.len();
            code.push(Op::Jump(0));
            let else_at = code.len();
            compile(otherwise, code);
            let end = code.len();
            code[test] = Op::Test(*cmp, else_at);
            code[jump] = Op::Jump(end);
        }
    }
}

fn clamp_score(x: f64) -> f64 {
    const LIM: f64 = 1e12;
    if x != x {
        0.0
    } else if x > LIM {
        LIM
    } else if x < -LIM {
        -LIM
    } else {
        x
    }
}

fn var_value(c: &SchedulingContext, v: Var) -> f64 {
    let d = c.demand.to_array();
    let f = c.free.to_array();
    let k = c.capacity.to_array();
    match v {
        Var::Cpu => d[0],
        Var::Io => d[1],
        Var::Bw => d[2],
        Var::Mem => d[3],
        Var::Arrival => c.arrival,
        Var::Exec => c.exec_time,
        Var::Wait => c.wait,
        Var::FreeCpu => f[0],
        Var::FreeIo => f[1],
        Var::FreeBw => f[2],
        Var::FreeMem => f[3],
        Var::CapCpu => k[0],
        Var::CapIo => k[1],
        Var::CapBw => k[2],
        Var::CapMem => k[3],
        Var::Now => c.now,
        Var::Pending => c.pending as f64,
        Var::MServers => c.num_servers as f64,
    }
}

/// Stack-machine evaluator with the documented protected semantics.
pub fn oracle_eval(e: &Expr, c: &SchedulingContext) -> f64 {
    let mut code = Vec::new();
    compile(e, &mut code);
    let mut stack: Vec<f64> = Vec::new();
    let mut pc = 0;
    while pc < code.len() {
        match &code[pc] {
            Op::Push(v) => stack.push(clamp_score(*v)),
            Op::Load(v) => stack.push(clamp_score(var_value(c, *v))),
            Op::Neg => {
                let a = stack.pop().unwrap();
                stack.push(clamp_score(-a));
            }
            Op::Un(f) => {
                let a = stack.pop().unwrap();
                let r = match f {
                    UnaryFn::Abs => a.abs(),
                    UnaryFn::Log if a > 0.0 => a.ln(),
                    UnaryFn::Log => 0.0,
                    UnaryFn::Exp => a.exp(),
                    UnaryFn::Sqrt if a >= 0.0 => a.sqrt(),
                    UnaryFn::Sqrt => 0.0,
                };
                stack.push(clamp_score(r));
            }
            Op::Bin(op) => {
                let b = stack.pop().unwrap();
                let a = stack.pop().unwrap();
                let r = match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div if b.abs() >= 1e-9 => a / b,
                    BinOp::Div => 0.0,
                    BinOp::Min => a.min(b),
                    BinOp::Max => a.max(b),
                    BinOp::Pow => a.powf(b),
                };
                stack.push(clamp_score(r));
            }
            Op::Test(cmp, else_at) => {
                let b = stack.pop().unwrap();
                let a = stack.pop().unwrap();
                let ok = match cmp {
                    CmpOp::Lt => a < b,
                    CmpOp::Le => a <= b,
                    CmpOp::Gt => a > b,
                    CmpOp::Ge => a >= b,
                    CmpOp::Eq => a == b,
                };
                if !ok {
                    pc = *else_at;
                    continue;
                }
            }
            Op::Jump(to) => {
                pc = *to;
                continue;
            }
        }
        pc += 1;
    }
    assert_eq!(stack.len(), 1);
    stack[0]
}

// ---------------------------------------------------------------- ACO

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    heap(n, &mut cur, &mut out);
    out
}

fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(a.clone());
        return;
    }
    for i in 0..k - 1 {
        heap(k - 1, a, out);
        if k % 2 == 0 {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
    heap(k - 1, a, out);
}

/// Every (order, server assignment) combination, as `(task, server)` sequences.
pub fn all_sequences(inst: &Instance) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for perm in permutations(inst.tasks.len()) {
        let mut partial: Vec<Vec<(usize, usize)>> = vec![vec![]];
        for &t in &perm {
            let mut next = Vec::new();
            for p in &partial {
                for &s in &inst.tasks[t].eligible_servers {
                    let mut q = p.clone();
                    q.push((t, s));
                    next.push(q);
                }
            }
            partial = next;
        }
        out.extend(partial);
    }
    out
}

// ---------------------------------------------------------- invariants

/// Conservation, causality, eligibility, exact finish and capacity checks,
/// written against the event list alone.
pub fn violations(inst: &Instance, events: &[ScheduleEvent]) -> Vec<String> {
    let mut v = Vec::new();
    let mut ids: Vec<usize> = events.iter().map(|e| e.task_id).collect();
    ids.sort_unstable();
    if ids != (0..inst.tasks.len()).collect::<Vec<_>>() {
        v.push("conservation".to_string());
    }
    for e in events {
        let Some(t) = inst.tasks.get(e.task_id) else { continue };
        if e.start < t.arrival {
            v.push(format!("causality: task {}", t.id));
        }
        if e.finish != e.start + t.exec_time {
            v.push(format!("finish: task {}", t.id));
        }
        if !t.eligible_servers.contains(&e.server_id) {
            v.push(format!("eligibility: task {}", t.id));
        }
    }
    // usage only rises at a start, so checking every start instant suffices
    for probe in events {
        let at = probe.start;
        let s = probe.server_id;
        let cap = inst.servers[s].capacity.to_array();
        let mut sum = [0.0f64; 4];
        for e in events.iter().filter(|e| e.server_id == s && e.start <= at && at < e.finish) {
            let d = inst.tasks[e.task_id].demand.to_array();
            for k in 0..4 {
                sum[k] += d[k];
            }
        }
        if (0..4).any(|k| sum[k] > cap[k] * (1.0 + 1e-9)) {
            v.push(format!("oversubscription: server {s} at {at}"));
        }
    }
    v
}

/// Small contended instance (3 to 6 tasks, 1 or 2 servers) for exhaustive search.
pub fn toy_instance(r: &mut ChaCha8Rng) -> Instance {
    let n = r.random_range(3..=6);
    let m = r.random_range(1..=2);
    let servers: Vec<EdgeServer> =
        (0..m).map(|id| EdgeServer { id, capacity: ResourceVector::splat(10.0) }).collect();
    let tasks = (0..n)
        .map(|id| {
            let eligible = if m == 2 && r.random_bool(0.5) { vec![0, 1] } else { vec![r.random_range(0..m)] };
            TaskRequest {
                id,
                demand: ResourceVector::new(
                    r.random_range(3.0..9.0),
                    r.random_range(0.0..6.0),
                    r.random_range(0.0..6.0),
                    r.random_range(1.0..8.0),
                ),
                arrival: r.random_range(0..4u32) as f64,
                exec_time: r.random_range(1..12u32) as f64,
                eligible_servers: eligible,
            }
        })
        .collect();
    Instance::new(servers, tasks)
}

/// Best fitness over every replayable sequence.
pub fn exhaustive_best(inst: &Instance, cfg: tseoh_core::FitnessConfig) -> f64 {
    use tseoh_core::simulator::SequencePolicy;
    all_sequences(inst)
        .iter()
        .map(|s| tseoh_core::simulate(inst, &SequencePolicy::new(inst.tasks.len(), s), cfg).unwrap().fitness)
        .fold(f64::NEG_INFINITY, f64::max)
}
