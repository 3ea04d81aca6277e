//! Task, server and workload data model.
//!
//! Resource units are abstract: each trace loader expresses demands and
//! capacities in the same native units, and utilization ratios are always
//! computed per server.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Four-component resource amount (cpu, io, bandwidth, memory).
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ResourceVector {
    pub cpu: f64,
    pub io: f64,
    pub bandwidth: f64,
    pub memory: f64,
}

impl ResourceVector {
    pub const ZERO: ResourceVector = ResourceVector::new(0.0, 0.0, 0.0, 0.0);

    pub const fn new(cpu: f64, io: f64, bandwidth: f64, memory: f64) -> Self {
        Self { cpu, io, bandwidth, memory }
    }

    pub const fn splat(v: f64) -> Self {
        Self::new(v, v, v, v)
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.cpu, self.io, self.bandwidth, self.memory]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    /// True iff every component of `self` is `<=` the matching component of `free`.
    pub fn fits(&self, free: &ResourceVector) -> bool {
        self.cpu <= free.cpu
            && self.io <= free.io
            && self.bandwidth <= free.bandwidth
            && self.memory <= free.memory
    }

    pub fn is_finite_non_negative(&self) -> bool {
        self.to_array().iter().all(|c| c.is_finite() && *c >= 0.0)
    }

    pub fn is_finite_positive(&self) -> bool {
        self.to_array().iter().all(|c| c.is_finite() && *c > 0.0)
    }

    pub fn add(&self, other: &ResourceVector) -> ResourceVector {
        ResourceVector::new(
            self.cpu + other.cpu,
            self.io + other.io,
            self.bandwidth + other.bandwidth,
            self.memory + other.memory,
        )
    }

    pub fn sub(&self, other: &ResourceVector) -> ResourceVector {
        ResourceVector::new(
            self.cpu - other.cpu,
            self.io - other.io,
            self.bandwidth - other.bandwidth,
            self.memory - other.memory,
        )
    }

    /// Component-wise `self / capacity`.
    pub fn ratios(&self, capacity: &ResourceVector) -> [f64; 4] {
        let a = self.to_array();
        let c = capacity.to_array();
        [a[0] / c[0], a[1] / c[1], a[2] / c[2], a[3] / c[3]]
    }

    pub fn max_component(&self) -> f64 {
        self.to_array().into_iter().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// One service request.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaskRequest {
    pub id: usize,
    #[serde(flatten)]
    pub demand: ResourceVector,
    pub arrival: f64,
    pub exec_time: f64,
    pub eligible_servers: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeServer {
    pub id: usize,
    #[serde(flatten)]
    pub capacity: ResourceVector,
}

/// Where an instance came from and which of its fields were sampled rather
/// than read from the source trace.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub format: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub synthetic_fields: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// A scheduling problem: the request sequence plus the server set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub servers: Vec<EdgeServer>,
    pub tasks: Vec<TaskRequest>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

impl Instance {
    pub fn new(servers: Vec<EdgeServer>, tasks: Vec<TaskRequest>) -> Self {
        Self { servers, tasks, provenance: None }
    }

    pub fn num_servers(&self) -> usize {
        self.servers.len()
    }

    pub fn num_tasks(&self) -> usize {
        self.tasks.len()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    /// Loads and rejects instances with any invariant violation.
    pub fn load_valid(path: impl AsRef<Path>) -> Result<Self> {
        let inst = Self::load(path)?;
        inst.ensure_valid()?;
        Ok(inst)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_json()? + "\n").map_err(|e| Error::io(path, e))
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let violations = validate_instance(self);
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidInstance(violations))
        }
    }
}

/// Returns every invariant violation of `inst`; an empty list means valid.
pub fn validate_instance(inst: &Instance) -> Vec<String> {
    let mut out = Vec::new();
    if inst.servers.is_empty() {
        out.push("instance has no servers".to_string());
    }
    if inst.tasks.is_empty() {
        out.push("instance has no tasks".to_string());
    }
    for (idx, s) in inst.servers.iter().enumerate() {
        if s.id != idx {
            out.push(format!("server at position {idx}: id {} is not dense", s.id));
        }
        if !s.capacity.is_finite_positive() {
            out.push(format!("server {}: capacity must be finite and > 0", s.id));
        }
    }
    let m = inst.servers.len();
    for (idx, t) in inst.tasks.iter().enumerate() {
        if t.id != idx {
            out.push(format!("task at position {idx}: id {} is not dense", t.id));
        }
        if !t.demand.is_finite_non_negative() {
            out.push(format!("task {}: demand must be finite and >= 0", t.id));
        }
        if !(t.arrival.is_finite() && t.arrival >= 0.0) {
            out.push(format!("task {}: arrival must be finite and >= 0", t.id));
        }
        if !(t.exec_time.is_finite() && t.exec_time > 0.0) {
            out.push(format!("task {}: exec_time must be finite and > 0", t.id));
        }
        if t.eligible_servers.is_empty() {
            out.push(format!("task {}: empty eligible set", t.id));
            continue;
        }
        let mut seen = vec![false; m];
        let mut fits_any = false;
        for &sid in &t.eligible_servers {
            if sid >= m {
                out.push(format!("task {}: unknown server {sid}", t.id));
                continue;
            }
            if seen[sid] {
                out.push(format!("task {}: duplicate eligible server {sid}", t.id));
            }
            seen[sid] = true;
            if t.demand.fits(&inst.servers[sid].capacity) {
                fits_any = true;
            }
        }
        if !fits_any {
            out.push(format!("task {}: fits no eligible server", t.id));
        }
    }
    out
}
