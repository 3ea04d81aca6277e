//! Edge-server task scheduling: data model, discrete-event simulator,
//! scoring language, baseline schedulers and trace ingestion.

pub mod baselines;
pub mod dsl;
pub mod error;
pub mod ingest;
pub mod model;
pub mod par;
pub mod rng;
pub mod simulator;

pub use error::{Error, Result};
pub use model::{validate_instance, EdgeServer, Instance, ResourceVector, TaskRequest};
pub use par::Execution;
pub use simulator::{
    simulate, FitnessConfig, PolicyError, ScheduleEvent, SchedulingContext, ScoringPolicy,
    SimError, SimReport,
};
