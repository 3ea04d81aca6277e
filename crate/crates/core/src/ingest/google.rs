//! Google cluster trace, task-events table.
//!
//! Required columns: `timestamp` (microseconds), `job_id`, `task_index`,
//! `cpu_request`, `memory_request` (both normalized to the largest machine).
//! Optional: `event_type` (only SUBMIT = 0 rows are kept) and `duration`
//! (microseconds; sampled when absent).

use super::{open_csv, ClusterTask, TraceSpec};
use crate::error::{Error, Result};
use crate::model::{Instance, ResourceVector};

const MICROS: f64 = 1e6;

pub fn load_google(spec: &TraceSpec) -> Result<Instance> {
    let path = spec.paths.first().ok_or_else(|| Error::ingest("google: no input path"))?;
    let (mut rdr, cols) = open_csv(path)?;
    cols.require(&["timestamp", "job_id", "task_index", "cpu_request", "memory_request"])?;

    let mut raw = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let row = i + 1;
        if cols.has("event_type") && cols.num(&rec, "event_type", row)? != 0.0 {
            continue;
        }
        let exec = if cols.has("duration") && !cols.text(&rec, "duration").unwrap_or("").is_empty() {
            let d = cols.num(&rec, "duration", row)? / MICROS;
            if d <= 0.0 {
                return Err(Error::ingest(format!("{}: row {row}: duration must be > 0", path.display())));
            }
            Some(d)
        } else {
            None
        };
        raw.push(ClusterTask {
            time: cols.non_negative(&rec, "timestamp", row)? / MICROS,
            row,
            cpu: cols.non_negative(&rec, "cpu_request", row)?,
            memory: cols.non_negative(&rec, "memory_request", row)?,
            exec,
        });
    }
    super::build_cluster_instance(spec, raw, ResourceVector::splat(1.0), "google")
}
