//! Alibaba cluster trace (2018), `batch_task` table.
//!
//! Required columns: `task_name`, `job_name`, `start_time`, `end_time`
//! (seconds), `plan_cpu` (100 = one core), `plan_mem` (percent of a
//! machine). Rows whose optional `status` is not `Terminated` are skipped.

use super::{open_csv, ClusterTask, TraceSpec};
use crate::error::{Error, Result};
use crate::model::{Instance, ResourceVector};

/// 96-core machines, memory in percent of a machine.
const PROFILE: ResourceVector = ResourceVector::new(96.0, 96.0, 96.0, 100.0);

pub fn load_alibaba(spec: &TraceSpec) -> Result<Instance> {
    let path = spec.paths.first().ok_or_else(|| Error::ingest("alibaba: no input path"))?;
    let (mut rdr, cols) = open_csv(path)?;
    cols.require(&["task_name", "job_name", "start_time", "end_time", "plan_cpu", "plan_mem"])?;

    let mut raw = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let row = i + 1;
        if let Some(status) = cols.text(&rec, "status") {
            if !status.eq_ignore_ascii_case("terminated") {
                continue;
            }
        }
        let start = cols.non_negative(&rec, "start_time", row)?;
        let end = cols.non_negative(&rec, "end_time", row)?;
        if end <= start {
            return Err(Error::ingest(format!(
                "{}: row {row}: end_time must be after start_time",
                path.display()
            )));
        }
        raw.push(ClusterTask {
            time: start,
            row,
            cpu: cols.non_negative(&rec, "plan_cpu", row)? / 100.0,
            memory: cols.non_negative(&rec, "plan_mem", row)?,
            exec: Some(end - start),
        });
    }
    super::build_cluster_instance(spec, raw, PROFILE, "alibaba")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::{load, TraceFormat};

    fn fixture(name: &str) -> std::path::PathBuf {
        std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
    }

    fn spec() -> TraceSpec {
        TraceSpec::new(TraceFormat::Alibaba).with_paths([fixture("alibaba_batch_task.csv")])
    }

    #[test]
    fn loads_fixture() {
        let inst = load(&spec()).unwrap();
        // one of the six rows is still running and is skipped
        assert_eq!(inst.num_tasks(), 5);
        assert_eq!(inst.tasks[0].arrival, 0.0);
        assert_eq!(inst.tasks[0].demand.cpu, 1.0);
        assert_eq!(inst.tasks[0].exec_time, 30.0);
        assert_eq!(inst.servers[0].capacity.cpu, 96.0);
    }

    #[test]
    fn negative_value_names_row() {
        let s = TraceSpec::new(TraceFormat::Alibaba).with_paths([fixture("alibaba_negative.csv")]);
        let err = load(&s).unwrap_err().to_string();
        assert!(err.contains("row 2") && err.contains("plan_mem"), "{err}");
    }

    #[test]
    fn truncation() {
        let mut s = spec();
        s.limit = Some(2);
        let inst = load(&s).unwrap();
        assert_eq!(inst.num_tasks(), 2);
        assert_eq!(inst.tasks[1].arrival, 5.0);
    }
}
