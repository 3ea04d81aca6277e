use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;

use tseoh_core::baselines::{AcoParams, BaselinePolicy};
use tseoh_core::dsl::{parse, DslPolicy};
use tseoh_core::{simulate, Execution, FitnessConfig, Instance, SimReport};

use crate::config::load_instance;
use crate::rundir::write_json;
use crate::{runtime, usage, CliError};

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Instance JSON path or `synth:key=value,...`.
    #[arg(long)]
    pub instance: String,
    /// fcfs | hrrn | random | greedy | aco | dsl:FILE | expr:SOURCE
    #[arg(long)]
    pub policy: String,
    #[arg(long, default_value_t = 150.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub beta: f64,
    /// Seed for the random and ACO policies.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub aco_iterations: Option<usize>,
    #[arg(long)]
    pub aco_ants: Option<usize>,
    /// Run ACO ants on one thread.
    #[arg(long)]
    pub sequential: bool,
    /// Directory for `report.json` and `utilization.csv`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub enum Policy {
    Baseline(BaselinePolicy),
    Dsl { label: String, policy: DslPolicy },
}

impl Policy {
    pub fn label(&self) -> String {
        match self {
            Policy::Baseline(b) => b.name().to_string(),
            Policy::Dsl { label, .. } => label.clone(),
        }
    }

    pub fn run(&self, inst: &Instance, cfg: FitnessConfig, exec: Execution) -> Result<SimReport, CliError> {
        match self {
            Policy::Baseline(b) => b.run_with(inst, cfg, exec),
            Policy::Dsl { policy, .. } => simulate(inst, policy, cfg),
        }
        .map_err(runtime)
    }
}

fn dsl_policy(label: String, source: &str, origin: &str) -> Result<Policy, CliError> {
    match parse(source) {
        Ok(e) => Ok(Policy::Dsl { label, policy: DslPolicy::new(e) }),
        Err(e) => {
            let (line, col) = e.line_col(source);
            Err(usage(format!("{origin}:{line}:{col}: {}: {}", e.kind, e.message)))
        }
    }
}

pub fn resolve_policy(args: &SimulateArgs) -> Result<Policy, CliError> {
    if let Some(path) = args.policy.strip_prefix("dsl:") {
        let p = Path::new(path);
        let source = fs::read_to_string(p).map_err(|e| usage(format!("{path}: {e}")))?;
        return dsl_policy(format!("dsl:{path}"), source.trim_end(), path);
    }
    if let Some(source) = args.policy.strip_prefix("expr:") {
        return dsl_policy(format!("expr:{source}"), source, "<expr>");
    }
    let mut b: BaselinePolicy = args.policy.parse().map_err(usage)?;
    match &mut b {
        BaselinePolicy::Random { seed } => *seed = args.seed,
        BaselinePolicy::Aco(p) => {
            *p = AcoParams {
                seed: args.seed,
                iterations: args.aco_iterations.unwrap_or(p.iterations),
                ants: args.aco_ants.unwrap_or(p.ants),
                ..p.clone()
            };
            p.validate().map_err(usage)?;
        }
        _ => {}
    }
    Ok(Policy::Baseline(b))
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<(), CliError> {
    let cfg = FitnessConfig { alpha: args.alpha, beta: args.beta };
    if !(cfg.alpha.is_finite() && cfg.beta.is_finite()) {
        return Err(usage("alpha and beta must be finite"));
    }
    let policy = resolve_policy(args)?;
    let inst = load_instance(&args.instance)?;
    let exec = if args.sequential { Execution::Sequential } else { Execution::default() };
    let report = policy.run(&inst, cfg, exec)?;

    println!("policy: {}", policy.label());
    println!("tasks: {}  servers: {}", inst.num_tasks(), inst.num_servers());
    println!("avg_utilization: {}", report.avg_utilization);
    println!("avg_running_time: {}", report.avg_running_time);
    println!("fitness: {} (alpha {}, beta {})", report.fitness, report.alpha, report.beta);

    if let Some(dir) = &args.out {
        write_json(&dir.join("report.json"), &report)?;
        let csv = dir.join("utilization.csv");
        let file = fs::File::create(&csv).map_err(|e| runtime(format!("{}: {e}", csv.display())))?;
        report.write_utilization_csv(std::io::BufWriter::new(file)).map_err(runtime)?;
    }
    Ok(())
}
