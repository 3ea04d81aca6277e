//! Seeded synthetic workloads for desk-scale experiments.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{log_uniform, uniform};
use crate::error::{Error, Result};
use crate::model::{EdgeServer, Instance, Provenance, ResourceVector, TaskRequest};
use crate::rng;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SynthSpec {
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    /// Poisson arrival rate (tasks per time unit).
    pub arrival_rate: f64,
    /// Log-uniform execution time range.
    pub exec_time: (f64, f64),
    /// Per-resource server capacity range.
    pub capacity: (f64, f64),
    /// Demand as a fraction of the smallest eligible capacity.
    pub demand_frac: (f64, f64),
    /// Probability that a server is in a task's eligible set.
    pub eligible_prob: f64,
}

impl Default for SynthSpec {
    fn default() -> Self {
        Self {
            n: 300,
            m: 10,
            seed: 0,
            arrival_rate: 2.0,
            exec_time: (5.0, 50.0),
            capacity: (8.0, 16.0),
            demand_frac: (0.05, 0.5),
            eligible_prob: 0.5,
        }
    }
}

impl SynthSpec {
    /// Parses `key=value` pairs separated by commas, e.g. `n=300,m=10,seed=7`.
    pub fn parse_kv(s: &str) -> Result<Self> {
        let mut spec = SynthSpec::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::ingest(format!("synth: expected key=value, got `{part}`")))?;
            let bad = || Error::ingest(format!("synth: bad value for `{k}`: `{v}`"));
            let f = || v.parse::<f64>().map_err(|_| bad());
            match k {
                "n" => spec.n = v.parse().map_err(|_| bad())?,
                "m" => spec.m = v.parse().map_err(|_| bad())?,
                "seed" => spec.seed = v.parse().map_err(|_| bad())?,
                "rate" => spec.arrival_rate = f()?,
                "exec_min" => spec.exec_time.0 = f()?,
                "exec_max" => spec.exec_time.1 = f()?,
                "cap_min" => spec.capacity.0 = f()?,
                "cap_max" => spec.capacity.1 = f()?,
                "frac_min" => spec.demand_frac.0 = f()?,
                "frac_max" => spec.demand_frac.1 = f()?,
                "p_eligible" => spec.eligible_prob = f()?,
                other => return Err(Error::ingest(format!("synth: unknown key `{other}`"))),
            }
        }
        spec.check()?;
        Ok(spec)
    }

    fn check(&self) -> Result<()> {
        let ok = self.n >= 1
            && self.m >= 1
            && self.arrival_rate > 0.0
            && self.exec_time.0 > 0.0
            && self.exec_time.1 >= self.exec_time.0
            && self.capacity.0 > 0.0
            && self.capacity.1 >= self.capacity.0
            && self.demand_frac.0 >= 0.0
            && self.demand_frac.1 >= self.demand_frac.0
            && self.demand_frac.1 <= 1.0
            && (0.0..=1.0).contains(&self.eligible_prob);
        if ok {
            Ok(())
        } else {
            Err(Error::ingest(format!("synth: inconsistent parameters {self:?}")))
        }
    }
}

/// Generates a valid instance. Out-of-range parameters are clamped so the
/// result always passes validation.
pub fn synth(spec: &SynthSpec) -> Instance {
    let n = spec.n.max(1);
    let m = spec.m.max(1);
    let cap_range = (spec.capacity.0.max(f64::MIN_POSITIVE), spec.capacity.1);
    let frac = (spec.demand_frac.0.clamp(0.0, 1.0), spec.demand_frac.1.clamp(0.0, 1.0));
    let exec = (spec.exec_time.0.max(1e-6), spec.exec_time.1);
    let rate = if spec.arrival_rate > 0.0 { spec.arrival_rate } else { 1.0 };

    let mut srng = rng::stream(spec.seed, &[0]);
    let servers: Vec<EdgeServer> = (0..m)
        .map(|id| EdgeServer {
            id,
            capacity: ResourceVector::new(
                uniform(&mut srng, cap_range),
                uniform(&mut srng, cap_range),
                uniform(&mut srng, cap_range),
                uniform(&mut srng, cap_range),
            ),
        })
        .collect();

    let mut arng = rng::stream(spec.seed, &[1]);
    let mut t = 0.0;
    let tasks = (0..n)
        .map(|id| {
            if id > 0 {
                let u: f64 = arng.random();
                t += -(1.0 - u).ln() / rate;
            }
            let mut trng = rng::stream(spec.seed, &[2, id as u64]);
            let mut eligible: Vec<usize> =
                (0..m).filter(|_| trng.random::<f64>() < spec.eligible_prob).collect();
            if eligible.is_empty() {
                eligible.push(trng.random_range(0..m));
            }
            let floor = eligible.iter().fold([f64::INFINITY; 4], |acc, &j| {
                let c = servers[j].capacity.to_array();
                [acc[0].min(c[0]), acc[1].min(c[1]), acc[2].min(c[2]), acc[3].min(c[3])]
            });
            let demand = ResourceVector::from_array(floor.map(|c| c * uniform(&mut trng, frac)));
            TaskRequest {
                id,
                demand,
                arrival: t,
                exec_time: log_uniform(&mut trng, exec),
                eligible_servers: eligible,
            }
        })
        .collect();

    let mut inst = Instance::new(servers, tasks);
    inst.provenance = Some(Provenance {
        format: "synthetic".into(),
        synthetic_fields: vec![],
        notes: vec![format!("n={n},m={m},seed={}", spec.seed)],
    });
    inst
}
