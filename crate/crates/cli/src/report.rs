use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};

use tseoh_core::baselines::{AcoParams, BaselinePolicy};
use tseoh_core::{Instance, SimReport};
use tseoh_evolve::evolution::{read_log, AttemptOutcome, GenerationLog, SlotResult};
use tseoh_evolve::Strategy;

use crate::ablate::AblationTable;
use crate::config::RunConfig;
use crate::rundir::{generation_logs, read_json, verify, RunKind};
use crate::{runtime, usage, CliError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Markdown,
    Csv,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Directory written by `evolve` or `ablate`.
    pub run_dir: PathBuf,
    #[arg(long, value_enum, default_value = "markdown")]
    pub format: Format,
    /// ACO iterations for the baseline comparison.
    #[arg(long)]
    pub aco_iterations: Option<usize>,
    /// Also write the report to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub struct GenerationRow {
    pub label: String,
    pub offspring: usize,
    pub best_offspring: Option<f64>,
    pub archive_best: Option<f64>,
    pub complete: bool,
}

#[derive(Default)]
pub struct StrategyCounts {
    pub offspring: usize,
    pub accepted: usize,
    pub invalid: usize,
    pub fallback: usize,
    pub redundant_attempts: usize,
    pub survivors: usize,
}

pub struct RunSummary {
    pub config: RunConfig,
    pub instance: Instance,
    pub generations: Vec<GenerationRow>,
    pub best: SimReport,
    pub best_source: String,
    pub baselines: Vec<(String, SimReport)>,
    pub provenance: BTreeMap<Strategy, StrategyCounts>,
}

fn generation_rows(logs: &[GenerationLog]) -> Vec<GenerationRow> {
    logs.iter()
        .map(|l| GenerationRow {
            label: l.round.map_or("init".into(), |g| g.to_string()),
            offspring: l.offspring.len(),
            best_offspring: l.best_offspring().and_then(|h| h.fitness.value()),
            archive_best: l.archive_best.as_ref().and_then(|h| h.fitness.value()),
            complete: l.complete,
        })
        .collect()
}

fn provenance(logs: &[GenerationLog]) -> BTreeMap<Strategy, StrategyCounts> {
    let mut out: BTreeMap<Strategy, StrategyCounts> = BTreeMap::new();
    for l in logs {
        for slot in &l.slots {
            let c = out.entry(slot.strategy).or_default();
            c.offspring += 1;
            match slot.result {
                SlotResult::Accepted => c.accepted += 1,
                SlotResult::Invalid => c.invalid += 1,
                SlotResult::Fallback => c.fallback += 1,
            }
            c.redundant_attempts +=
                slot.attempts.iter().filter(|a| matches!(a.outcome, AttemptOutcome::Redundant(_))).count();
            if l.survivors.contains(&slot.heuristic_id) {
                c.survivors += 1;
            }
        }
    }
    out
}

/// Loads and cross-checks an evolve run directory, then runs every
/// baseline on its instance.
pub fn summarize_run(dir: &Path, aco_iterations: Option<usize>) -> Result<RunSummary, CliError> {
    let config: RunConfig = read_json(&dir.join("config.json"))?;
    let instance = Instance::load_valid(dir.join("instance.json")).map_err(usage)?;
    let paths = generation_logs(dir);
    if paths.is_empty() {
        return Err(usage(format!("{}: no generation logs", dir.display())));
    }
    let logs = paths
        .iter()
        .map(|p| read_log(p).map_err(|e| usage(format!("corrupt log: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let best: SimReport = read_json(&dir.join("report.json"))?;
    let best_source = fs::read_to_string(dir.join("best.score")).map_err(usage)?.trim().to_string();

    let fit = config.fitness();
    let mut baselines = Vec::new();
    for b in BaselinePolicy::all(config.seed) {
        let b = match b {
            BaselinePolicy::Aco(p) => {
                BaselinePolicy::Aco(AcoParams { iterations: aco_iterations.unwrap_or(p.iterations), ..p })
            }
            other => other,
        };
        let r = b.run_with(&instance, fit, config.execution()).map_err(runtime)?;
        baselines.push((b.name().to_string(), r));
    }
    Ok(RunSummary {
        generations: generation_rows(&logs),
        provenance: provenance(&logs),
        config,
        instance,
        best,
        best_source,
        baselines,
    })
}

fn opt(v: Option<f64>) -> String {
    v.map_or("INVALID".into(), |x| x.to_string())
}

impl RunSummary {
    pub fn to_markdown(&self, dir: &Path) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# Run report: {}\n", dir.display());
        let prov = self.instance.provenance.as_ref().map_or("unknown", |p| p.format.as_str());
        let _ = writeln!(
            s,
            "Instance: {} tasks on {} servers ({prov}). Fitness = {} * avg(u) - {} * avg(r).\n",
            self.instance.num_tasks(),
            self.instance.num_servers(),
            self.config.alpha,
            self.config.beta
        );
        let _ = writeln!(s, "Best heuristic: `{}`\n", self.best_source);

        let _ = writeln!(s, "## Fitness per generation\n");
        let _ = writeln!(s, "| Generation | Offspring | Best offspring fitness | Archive best fitness |");
        let _ = writeln!(s, "|---|---|---|---|");
        for g in &self.generations {
            let mark = if g.complete { "" } else { " (incomplete)" };
            let _ = writeln!(
                s,
                "| {}{mark} | {} | {} | {} |",
                g.label,
                g.offspring,
                opt(g.best_offspring),
                opt(g.archive_best)
            );
        }

        let _ = writeln!(s, "\n## Final metrics\n");
        let _ = writeln!(s, "| Policy | Resource Utilisation Rate | Running Time | Fitness |");
        let _ = writeln!(s, "|---|---|---|---|");
        let rows = std::iter::once(("Evolved best", &self.best))
            .chain(self.baselines.iter().map(|(n, r)| (n.as_str(), r)));
        for (name, r) in rows {
            let _ = writeln!(
                s,
                "| {name} | {:.2}% | {:.3} | {:.4} |",
                r.avg_utilization * 100.0,
                r.avg_running_time,
                r.fitness
            );
        }

        let _ = writeln!(s, "\n## Strategy provenance\n");
        let _ = writeln!(s, "| Strategy | Offspring | Accepted | Invalid | Fallback | Redundant attempts | Survivors |");
        let _ = writeln!(s, "|---|---|---|---|---|---|---|");
        for (st, c) in &self.provenance {
            let _ = writeln!(
                s,
                "| {st} | {} | {} | {} | {} | {} | {} |",
                c.offspring, c.accepted, c.invalid, c.fallback, c.redundant_attempts, c.survivors
            );
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("kind,name,avg_utilization,avg_running_time,fitness\n");
        for g in &self.generations {
            let f = g.archive_best.map(|v| v.to_string()).unwrap_or_default();
            let _ = writeln!(s, "generation,{},,,{f}", g.label);
        }
        let rows = std::iter::once(("evolved", &self.best)).chain(self.baselines.iter().map(|(n, r)| (n.as_str(), r)));
        for (name, r) in rows {
            let _ = writeln!(s, "policy,{name},{},{},{}", r.avg_utilization, r.avg_running_time, r.fitness);
        }
        s
    }
}

fn ablation_csv(t: &AblationTable) -> String {
    let mut s = String::from("group,avg_utilization,avg_running_time,fitness\n");
    for r in &t.rows {
        let n = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        let _ = writeln!(s, "{},{},{},{}", r.group, n(r.avg_utilization), n(r.avg_running_time), n(r.fitness));
    }
    s
}

pub fn render(args: &ReportArgs) -> Result<String, CliError> {
    let manifest = verify(&args.run_dir)?;
    match manifest.kind {
        RunKind::Evolve => {
            let summary = summarize_run(&args.run_dir, args.aco_iterations)?;
            Ok(match args.format {
                Format::Markdown => summary.to_markdown(&args.run_dir),
                Format::Csv => summary.to_csv(),
            })
        }
        RunKind::Ablate => {
            let table: AblationTable = read_json(&args.run_dir.join("ablation.json"))?;
            Ok(match args.format {
                Format::Markdown => format!("# Ablation report: {}\n\n{}", args.run_dir.display(), table.to_markdown()),
                Format::Csv => ablation_csv(&table),
            })
        }
    }
}

pub fn cmd_report(args: &ReportArgs) -> Result<(), CliError> {
    let text = render(args)?;
    if let Some(p) = &args.out {
        fs::write(p, &text).map_err(|e| runtime(format!("{}: {e}", p.display())))?;
    }
    print!("{text}");
    Ok(())
}
