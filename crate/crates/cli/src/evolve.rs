use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;

use tseoh_core::dsl::DslPolicy;
use tseoh_core::{simulate, SimReport};
use tseoh_evolve::{Evolver, Heuristic, SimEvaluator};

use crate::config::{load_instance, RunConfig, RunOverrides};
use crate::rundir::{write_json, write_manifest, RunKind};
use crate::{runtime, usage, CliError};

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub run: RunOverrides,
    /// Delete the output directory first if it is not empty.
    #[arg(long)]
    pub force: bool,
}

pub struct EvolveSummary {
    pub dir: PathBuf,
    pub best: Heuristic,
    /// The best heuristic simulated on the main instance.
    pub report: SimReport,
    /// Archive-best fitness after the initial population and every round.
    pub archive_curve: Vec<Option<f64>>,
}

pub(crate) fn prepare_out_dir(dir: &Path, force: bool) -> Result<(), CliError> {
    let occupied = dir.is_dir() && fs::read_dir(dir).map_err(runtime)?.next().is_some();
    if occupied {
        if !force {
            return Err(usage(format!(
                "output directory {} is not empty (use another --out or --force)",
                dir.display()
            )));
        }
        fs::remove_dir_all(dir).map_err(|e| runtime(format!("{}: {e}", dir.display())))?;
    }
    fs::create_dir_all(dir).map_err(|e| runtime(format!("{}: {e}", dir.display())))
}

/// Full evolution run into `cfg.out`, which must exist and be empty.
///
/// Writes `config.json`, `instance.json`, `fixtures/`, the generation logs,
/// `best.score`, `best.json`, `report.json`, `utilization.csv` and finally
/// `manifest.json`. A failed run still gets a manifest, marked incomplete.
pub fn run_evolve(cfg: &RunConfig) -> Result<EvolveSummary, CliError> {
    cfg.validate()?;
    let evo = cfg.evolution()?;
    // provider setup fails fast, e.g. on a missing API key
    let gateway = cfg.gateway(Some(cfg.out.join("fixtures")))?;
    let inst = load_instance(&cfg.instance)?;
    let mut instances = vec![inst.clone()];
    for spec in &cfg.train_instances {
        instances.push(load_instance(spec)?);
    }

    let out = &cfg.out;
    write_json(&out.join("config.json"), cfg)?;
    inst.save(out.join("instance.json")).map_err(runtime)?;

    let evaluator = SimEvaluator { instances, cfg: cfg.fitness() };
    let mut evolver = Evolver::new(evo, &gateway, &evaluator, cfg.execution()).map_err(usage)?;
    let outcome = match evolver.run(Some(out)) {
        Ok(o) => o,
        Err(e) => {
            write_manifest(out, RunKind::Evolve, cfg.alpha, cfg.beta, false)?;
            return Err(runtime(format!("{e} (partial logs kept in {})", out.display())));
        }
    };

    let best = outcome.best;
    let expr = best
        .expr()
        .ok_or_else(|| runtime("no valid heuristic was produced"))?
        .clone();
    let report = simulate(&inst, &DslPolicy::new(expr), cfg.fitness()).map_err(runtime)?;
    write_json(&out.join("report.json"), &report)?;
    let csv = out.join("utilization.csv");
    let file = fs::File::create(&csv).map_err(|e| runtime(format!("{}: {e}", csv.display())))?;
    report.write_utilization_csv(std::io::BufWriter::new(file)).map_err(runtime)?;
    write_manifest(out, RunKind::Evolve, cfg.alpha, cfg.beta, true)?;

    let archive_curve = outcome
        .logs
        .iter()
        .map(|l| l.archive_best.as_ref().and_then(|h| h.fitness.value()))
        .collect();
    Ok(EvolveSummary { dir: out.clone(), best, report, archive_curve })
}

pub fn cmd_evolve(args: &EvolveArgs) -> Result<(), CliError> {
    let cfg = args.run.resolve()?;
    cfg.validate()?;
    cfg.provider()?;
    prepare_out_dir(&cfg.out, args.force)?;
    let s = run_evolve(&cfg)?;
    println!("run directory: {}", s.dir.display());
    for (i, f) in s.archive_curve.iter().enumerate() {
        let label = if i == 0 { "init".to_string() } else { format!("gen {}", i - 1) };
        let f = f.map_or("INVALID".to_string(), |v| v.to_string());
        println!("{label:>8}  archive best fitness {f}");
    }
    println!("best heuristic #{} ({}): {}", s.best.id, s.best.origin.strategy, s.best.source);
    println!("avg_utilization: {}", s.report.avg_utilization);
    println!("avg_running_time: {}", s.report.avg_running_time);
    println!("fitness: {} (alpha {}, beta {})", s.report.fitness, s.report.alpha, s.report.beta);
    Ok(())
}
