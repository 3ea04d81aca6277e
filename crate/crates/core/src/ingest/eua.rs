//! EUA dataset: base-station and user coordinates.
//!
//! Stations (`LATITUDE`, `LONGITUDE`, any case) become servers with a
//! configured capacity; each user (`Latitude`, `Longitude`) becomes one
//! task eligible on every station within the coverage radius. The dataset
//! has no demand or timing data, so demands, execution times and Poisson
//! arrivals are all sampled from the seeded [`DemandModel`].
//!
//! [`DemandModel`]: super::DemandModel

use rand::Rng;

use super::{log_uniform, open_csv, uniform, uniform_servers, TraceSpec};
use crate::error::{Error, Result};
use crate::model::{Instance, Provenance, ResourceVector, TaskRequest};
use crate::rng;

const EARTH_RADIUS_M: f64 = 6_371_000.0;
const DEFAULT_CAPACITY: ResourceVector = ResourceVector::splat(10.0);

/// Great-circle distance in metres between two (lat, lon) points in degrees.
pub fn haversine_m(lat1: f64, lon1: f64, lat2: f64, lon2: f64) -> f64 {
    let (p1, p2) = (lat1.to_radians(), lat2.to_radians());
    let dp = (lat2 - lat1).to_radians();
    let dl = (lon2 - lon1).to_radians();
    let a = (dp / 2.0).sin().powi(2) + p1.cos() * p2.cos() * (dl / 2.0).sin().powi(2);
    2.0 * EARTH_RADIUS_M * a.sqrt().min(1.0).asin()
}

fn read_points(path: &std::path::Path) -> Result<Vec<(f64, f64)>> {
    let (mut rdr, cols) = open_csv(path)?;
    cols.require(&["latitude", "longitude"])?;
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let lat = cols.num(&rec, "latitude", i + 1)?;
        let lon = cols.num(&rec, "longitude", i + 1)?;
        if !(-90.0..=90.0).contains(&lat) || !(-180.0..=180.0).contains(&lon) {
            return Err(Error::ingest(format!(
                "{}: row {}: coordinates out of range",
                path.display(),
                i + 1
            )));
        }
        out.push((lat, lon));
    }
    Ok(out)
}

pub fn load_eua(spec: &TraceSpec) -> Result<Instance> {
    let [stations_path, users_path] = match spec.paths.as_slice() {
        [a, b, ..] => [a, b],
        _ => return Err(Error::ingest("eua: need station and user CSV paths")),
    };
    let stations = read_points(stations_path)?;
    let users = read_points(users_path)?;
    if stations.is_empty() {
        return Err(Error::ingest("eua: no base stations"));
    }

    let capacity = spec.capacity.unwrap_or(DEFAULT_CAPACITY);
    let model = &spec.demand;
    let mut dropped = Vec::new();
    let mut tasks = Vec::new();
    let mut arrivals = rng::stream(spec.seed, &[1]);
    let mut t = 0.0;
    for (row, &(lat, lon)) in users.iter().enumerate() {
        if spec.limit.is_some_and(|l| tasks.len() >= l) {
            break;
        }
        let eligible: Vec<usize> = stations
            .iter()
            .enumerate()
            .filter(|(_, &(slat, slon))| haversine_m(lat, lon, slat, slon) <= spec.radius_m)
            .map(|(j, _)| j)
            .collect();
        if eligible.is_empty() {
            if spec.strict_coverage {
                return Err(Error::ingest(format!(
                    "eua: user row {} is not within {} m of any station",
                    row + 1,
                    spec.radius_m
                )));
            }
            log::warn!("eua: dropping user row {} (no station within {} m)", row + 1, spec.radius_m);
            dropped.push(row + 1);
            continue;
        }
        let id = tasks.len();
        if id > 0 {
            let u: f64 = arrivals.random();
            t += -(1.0 - u).ln() / model.arrival_rate.max(f64::MIN_POSITIVE);
        }
        let mut trng = rng::stream(spec.seed, &[2, row as u64]);
        let cap = capacity.to_array();
        let demand = ResourceVector::from_array(
            cap.map(|c| uniform(&mut trng, model.demand).min(c)),
        );
        tasks.push(TaskRequest {
            id,
            demand,
            arrival: t,
            exec_time: log_uniform(&mut trng, model.exec_time),
            eligible_servers: eligible,
        });
    }
    if tasks.is_empty() {
        return Err(Error::ingest("eua: no user is covered by any station"));
    }

    let mut inst = Instance::new(uniform_servers(stations.len(), capacity), tasks);
    let mut notes = Vec::new();
    if !dropped.is_empty() {
        notes.push(format!("dropped {} uncovered user(s): rows {:?}", dropped.len(), dropped));
    }
    inst.provenance = Some(Provenance {
        format: "eua".into(),
        synthetic_fields: ["cpu", "io", "bandwidth", "memory", "arrival", "exec_time"]
            .map(String::from)
            .to_vec(),
        notes,
    });
    Ok(inst)
}
