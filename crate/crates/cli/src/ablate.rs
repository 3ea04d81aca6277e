use std::fs;
use std::path::Path;

use clap::Args;
use serde::{Deserialize, Serialize};

use tseoh_evolve::Strategy;

use crate::config::RunOverrides;
use crate::evolve::{prepare_out_dir, run_evolve};
use crate::rundir::{write_json, write_manifest, RunKind};
use crate::{runtime, usage, CliError};

/// Strategy groups of the published ablation table, in its row order.
pub const STANDARD_GROUPS: [&str; 14] = [
    "M1", "M2", "E1", "E2", "M1+M2", "M2+E1", "E1+E2", "M1+E2", "M2+E2", "M1+E1", "M2+E1+E2",
    "M1+E1+E2", "M1+M2+E1", "M1+M2+E2",
];

pub const COLUMNS: [&str; 5] = ["Group", "Strategy", "Resource Utilisation Rate", "Running Time", "Fitness"];

#[derive(Debug, Args)]
pub struct AblateArgs {
    #[command(flatten)]
    pub run: RunOverrides,
    /// `all` for the 14 standard groups, or groups separated by `;`
    /// such as `M1;M2;M1+M2`.
    #[arg(long, default_value = "all")]
    pub groups: String,
    /// Delete the output directory first if it is not empty.
    #[arg(long)]
    pub force: bool,
}

pub fn parse_groups(s: &str) -> Result<Vec<Vec<Strategy>>, CliError> {
    let parts: Vec<&str> = if s.trim().eq_ignore_ascii_case("all") {
        STANDARD_GROUPS.to_vec()
    } else {
        s.split(';').map(str::trim).filter(|p| !p.is_empty()).collect()
    };
    if parts.is_empty() {
        return Err(usage("no strategy groups given"));
    }
    parts
        .into_iter()
        .map(|p| Strategy::parse_group(p).map_err(|e| usage(format!("group `{p}`: {e}"))))
        .collect()
}

fn category(size: usize) -> &'static str {
    match size {
        1 => "Single-strategy Group",
        2 => "Dual-strategy Group",
        3 => "Triple-strategy Group",
        _ => "Full Group",
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AblationRow {
    pub category: String,
    pub group: String,
    pub avg_utilization: Option<f64>,
    pub avg_running_time: Option<f64>,
    pub fitness: Option<f64>,
    pub best_source: Option<String>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AblationTable {
    pub alpha: f64,
    pub beta: f64,
    pub rows: Vec<AblationRow>,
}

impl AblationTable {
    pub fn to_markdown(&self) -> String {
        let mut s = format!("| {} |\n|{}\n", COLUMNS.join(" | "), "---|".repeat(COLUMNS.len()));
        for r in &self.rows {
            let cells = match (r.avg_utilization, r.avg_running_time, r.fitness) {
                (Some(u), Some(t), Some(f)) => [format!("{:.1}%", u * 100.0), format!("{t:.2}"), format!("{f:.4}")],
                _ => {
                    let e = format!("failed: {}", r.error.as_deref().unwrap_or("unknown"));
                    [e, "-".into(), "-".into()]
                }
            };
            s += &format!("| {} | {} | {} | {} | {} |\n", r.category, r.group, cells[0], cells[1], cells[2]);
        }
        s += &format!("\nFitness = {} * utilisation - {} * running time.\n", self.alpha, self.beta);
        s
    }

    pub fn write_csv(&self, path: &Path) -> Result<(), CliError> {
        let mut w = csv::Writer::from_path(path).map_err(runtime)?;
        w.write_record(["group", "strategy", "avg_utilization", "avg_running_time", "fitness", "error"])
            .map_err(runtime)?;
        let num = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        for r in &self.rows {
            w.write_record([
                r.category.clone(),
                r.group.clone(),
                num(r.avg_utilization),
                num(r.avg_running_time),
                num(r.fitness),
                r.error.clone().unwrap_or_default(),
            ])
            .map_err(runtime)?;
        }
        w.flush().map_err(runtime)
    }
}

/// One evolution per group, each in `out/<group>/`, then the table as
/// `ablation.csv`, `ablation.md` and `ablation.json`. A failing group is
/// reported in its row and the others still run.
pub fn cmd_ablate(args: &AblateArgs) -> Result<(), CliError> {
    let base = args.run.resolve()?;
    let groups = parse_groups(&args.groups)?;
    base.validate()?;
    base.provider()?;
    prepare_out_dir(&base.out, args.force)?;
    write_json(&base.out.join("config.json"), &base)?;

    let mut rows = Vec::new();
    for group in &groups {
        let name = Strategy::group_name(group);
        let mut cfg = base.clone();
        cfg.strategies = name.clone();
        cfg.out = base.out.join(&name);
        fs::create_dir_all(&cfg.out).map_err(runtime)?;
        let mut row = AblationRow {
            category: category(group.len()).into(),
            group: name.clone(),
            avg_utilization: None,
            avg_running_time: None,
            fitness: None,
            best_source: None,
            error: None,
        };
        match run_evolve(&cfg) {
            Ok(s) => {
                row.avg_utilization = Some(s.report.avg_utilization);
                row.avg_running_time = Some(s.report.avg_running_time);
                row.fitness = Some(s.report.fitness);
                row.best_source = Some(s.best.source);
            }
            Err(e) => {
                log::error!("group {name}: {e}");
                row.error = Some(e.to_string());
            }
        }
        rows.push(row);
    }

    let table = AblationTable { alpha: base.alpha, beta: base.beta, rows };
    let out = &base.out;
    table.write_csv(&out.join("ablation.csv"))?;
    fs::write(out.join("ablation.md"), table.to_markdown()).map_err(runtime)?;
    write_json(&out.join("ablation.json"), &table)?;
    let failed = table.rows.iter().filter(|r| r.error.is_some()).count();
    write_manifest(out, RunKind::Ablate, base.alpha, base.beta, failed == 0)?;
    print!("{}", table.to_markdown());
    if failed > 0 {
        return Err(runtime(format!("{failed} of {} group(s) failed", table.rows.len())));
    }
    Ok(())
}
