//! Converters from public cluster/edge traces and a seeded generator into
//! [`Instance`]s. Column mappings are documented in `docs/datasets.md`.
//!
//! Fields the traces do not carry (io and bandwidth demand everywhere, all
//! demands for EUA) are sampled from seeded distributions and listed in the
//! instance's [`Provenance`].

mod alibaba;
mod eua;
mod google;
mod synth;

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use alibaba::load_alibaba;
pub use eua::{haversine_m, load_eua};
pub use google::load_google;
pub use synth::{synth, SynthSpec};

use crate::error::{Error, Result};
use crate::model::{EdgeServer, Instance, Provenance, ResourceVector, TaskRequest};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceFormat {
    Google,
    Alibaba,
    Eua,
    Synthetic,
}

impl FromStr for TraceFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "google" => Ok(TraceFormat::Google),
            "alibaba" => Ok(TraceFormat::Alibaba),
            "eua" => Ok(TraceFormat::Eua),
            "synthetic" | "synth" => Ok(TraceFormat::Synthetic),
            other => Err(Error::ingest(format!("unknown trace format `{other}`"))),
        }
    }
}

/// Seeded distributions for fields a trace does not provide.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DemandModel {
    /// io and bandwidth demand = cpu demand times U(lo, hi).
    pub io_bw_scale: (f64, f64),
    /// Absolute per-resource demand range for traces without any demand data.
    pub demand: (f64, f64),
    /// Execution time is log-uniform in this range when the trace lacks it.
    pub exec_time: (f64, f64),
    /// Poisson arrival rate for traces without timestamps.
    pub arrival_rate: f64,
}

impl Default for DemandModel {
    fn default() -> Self {
        Self {
            io_bw_scale: (0.5, 1.5),
            demand: (0.5, 3.0),
            exec_time: (1.0, 50.0),
            arrival_rate: 1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceSpec {
    pub format: TraceFormat,
    /// Trace files; EUA takes `[stations, users]`.
    pub paths: Vec<PathBuf>,
    /// Keep at most this many tasks (earliest first).
    pub limit: Option<usize>,
    /// Server count for cluster traces (their tasks may run anywhere).
    pub servers: usize,
    /// Per-server capacity; `None` selects the format's default profile.
    pub capacity: Option<ResourceVector>,
    pub seed: u64,
    /// EUA coverage radius in metres.
    pub radius_m: f64,
    /// EUA: fail instead of dropping users no station covers.
    pub strict_coverage: bool,
    pub demand: DemandModel,
    pub synth: SynthSpec,
}

impl TraceSpec {
    pub fn new(format: TraceFormat) -> Self {
        Self {
            format,
            paths: Vec::new(),
            limit: None,
            servers: 10,
            capacity: None,
            seed: 0,
            radius_m: 500.0,
            strict_coverage: false,
            demand: DemandModel::default(),
            synth: SynthSpec::default(),
        }
    }

    pub fn with_paths<P: Into<PathBuf>>(mut self, paths: impl IntoIterator<Item = P>) -> Self {
        self.paths = paths.into_iter().map(Into::into).collect();
        self
    }

    fn validate(&self) -> Result<()> {
        if self.limit == Some(0) {
            return Err(Error::ingest("task limit must be at least 1"));
        }
        let need = match self.format {
            TraceFormat::Synthetic => 0,
            TraceFormat::Eua => 2,
            _ => 1,
        };
        if self.paths.len() < need {
            return Err(Error::ingest(format!(
                "{:?} traces need {need} input path(s), got {}",
                self.format,
                self.paths.len()
            )));
        }
        for p in &self.paths {
            if !p.exists() {
                return Err(Error::ingest(format!("{}: no such file", p.display())));
            }
        }
        Ok(())
    }
}

/// Loads any supported format. Every returned instance passes validation.
pub fn load(spec: &TraceSpec) -> Result<Instance> {
    spec.validate()?;
    let inst = match spec.format {
        TraceFormat::Google => load_google(spec)?,
        TraceFormat::Alibaba => load_alibaba(spec)?,
        TraceFormat::Eua => load_eua(spec)?,
        TraceFormat::Synthetic => synth(&SynthSpec { seed: spec.seed, ..spec.synth.clone() }),
    };
    inst.ensure_valid()?;
    Ok(inst)
}

/// Where an experiment's instance comes from: a JSON file or an inline
/// synthetic spec such as `synth:n=300,m=10,seed=7`.
#[derive(Clone, Debug, PartialEq)]
pub enum InstanceSource {
    File(PathBuf),
    Synth(SynthSpec),
}

impl InstanceSource {
    pub fn parse(s: &str) -> Result<Self> {
        match s.strip_prefix("synth:") {
            Some(rest) => Ok(InstanceSource::Synth(SynthSpec::parse_kv(rest)?)),
            None if s == "synth" => Ok(InstanceSource::Synth(SynthSpec::default())),
            None => Ok(InstanceSource::File(PathBuf::from(s))),
        }
    }

    pub fn load(&self) -> Result<Instance> {
        match self {
            InstanceSource::File(p) => Instance::load_valid(p),
            InstanceSource::Synth(s) => Ok(synth(s)),
        }
    }
}

/// One row of a cluster trace before sampling and id assignment.
pub(crate) struct ClusterTask {
    /// Submission time in seconds, not yet rebased.
    pub time: f64,
    pub row: usize,
    pub cpu: f64,
    pub memory: f64,
    pub exec: Option<f64>,
}

/// Sorts by time, truncates, rebases to 0, samples io/bandwidth (and missing
/// execution times) and places every task on `spec.servers` identical servers.
pub(crate) fn build_cluster_instance(
    spec: &TraceSpec,
    mut raw: Vec<ClusterTask>,
    default_capacity: ResourceVector,
    format: &str,
) -> Result<Instance> {
    if raw.is_empty() {
        return Err(Error::ingest(format!("{format}: no usable rows")));
    }
    if spec.servers == 0 {
        return Err(Error::ingest("server count must be at least 1"));
    }
    raw.sort_by(|a, b| a.time.total_cmp(&b.time).then(a.row.cmp(&b.row)));
    if let Some(limit) = spec.limit {
        raw.truncate(limit);
    }
    let t0 = raw[0].time;
    let capacity = spec.capacity.unwrap_or(default_capacity);
    let all: Vec<usize> = (0..spec.servers).collect();
    let mut sampled_exec = false;
    let tasks = raw
        .iter()
        .enumerate()
        .map(|(id, r)| {
            let mut rng = crate::rng::stream(spec.seed, &[id as u64]);
            // clamped so a sampled field alone never makes a task unplaceable
            let io = (r.cpu * uniform(&mut rng, spec.demand.io_bw_scale)).min(capacity.io);
            let bandwidth =
                (r.cpu * uniform(&mut rng, spec.demand.io_bw_scale)).min(capacity.bandwidth);
            let exec_time = r.exec.unwrap_or_else(|| {
                sampled_exec = true;
                log_uniform(&mut rng, spec.demand.exec_time)
            });
            TaskRequest {
                id,
                demand: ResourceVector::new(r.cpu, io, bandwidth, r.memory),
                arrival: r.time - t0,
                exec_time,
                eligible_servers: all.clone(),
            }
        })
        .collect();
    let mut synthetic_fields = vec!["io".to_string(), "bandwidth".to_string()];
    if sampled_exec {
        synthetic_fields.push("exec_time".to_string());
    }
    let mut inst = Instance::new(uniform_servers(spec.servers, capacity), tasks);
    inst.provenance = Some(Provenance {
        format: format.to_string(),
        synthetic_fields,
        notes: vec![],
    });
    let violations = crate::model::validate_instance(&inst);
    if !violations.is_empty() {
        return Err(Error::InvalidInstance(violations));
    }
    Ok(inst)
}

pub(crate) fn uniform(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    if hi > lo {
        lo + (hi - lo) * rng.random::<f64>()
    } else {
        lo
    }
}

pub(crate) fn log_uniform(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    if hi > lo && lo > 0.0 {
        (lo.ln() + (hi.ln() - lo.ln()) * rng.random::<f64>()).exp()
    } else {
        lo
    }
}

pub(crate) fn uniform_servers(m: usize, capacity: ResourceVector) -> Vec<EdgeServer> {
    (0..m).map(|id| EdgeServer { id, capacity }).collect()
}

/// Column lookup over a CSV header, case-insensitive.
pub(crate) struct Columns {
    index: HashMap<String, usize>,
    path: PathBuf,
}

impl Columns {
    pub(crate) fn new(path: &Path, headers: &csv::StringRecord) -> Self {
        let index = headers
            .iter()
            .enumerate()
            .map(|(i, h)| (h.trim().to_ascii_lowercase(), i))
            .collect();
        Self { index, path: path.to_path_buf() }
    }

    pub(crate) fn require(&self, names: &[&str]) -> Result<()> {
        let missing: Vec<_> = names.iter().filter(|n| !self.index.contains_key(**n)).collect();
        if missing.is_empty() {
            Ok(())
        } else {
            Err(Error::ingest(format!(
                "{}: missing column(s) {}",
                self.path.display(),
                missing.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ")
            )))
        }
    }

    pub(crate) fn has(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub(crate) fn text<'r>(&self, rec: &'r csv::StringRecord, name: &str) -> Option<&'r str> {
        self.index.get(name).and_then(|&i| rec.get(i)).map(str::trim)
    }

    /// Parses a numeric field; `row` is the 1-based data row for messages.
    pub(crate) fn num(&self, rec: &csv::StringRecord, name: &str, row: usize) -> Result<f64> {
        let raw = self.text(rec, name).unwrap_or("");
        let v: f64 = raw.parse().map_err(|_| {
            Error::ingest(format!("{}: row {row}: bad {name} value `{raw}`", self.path.display()))
        })?;
        if !v.is_finite() {
            return Err(Error::ingest(format!(
                "{}: row {row}: non-finite {name}",
                self.path.display()
            )));
        }
        Ok(v)
    }

    pub(crate) fn non_negative(&self, rec: &csv::StringRecord, name: &str, row: usize) -> Result<f64> {
        let v = self.num(rec, name, row)?;
        if v < 0.0 {
            return Err(Error::ingest(format!(
                "{}: row {row}: negative {name} ({v})",
                self.path.display()
            )));
        }
        Ok(v)
    }
}

pub(crate) fn open_csv(path: &Path) -> Result<(csv::Reader<std::fs::File>, Columns)> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| Error::ingest(format!("{}: {e}", path.display())))?;
    let cols = Columns::new(path, rdr.headers()?);
    Ok((rdr, cols))
}
