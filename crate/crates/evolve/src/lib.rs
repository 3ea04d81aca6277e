//! LLM-guided evolution of scheduling heuristics.
//!
//! [`gateway`] turns a strategy (and parent heuristic) into a description
//! plus scoring expression through any [`provider::Provider`];
//! [`evolution`] runs the population loop on top of it.

pub mod evolution;
pub mod extract;
pub mod gateway;
pub mod prompt;
pub mod provider;
pub mod strategy;

pub use evolution::{
    EvolutionConfig, EvolutionError, Evolver, Fitness, FitnessEvaluator, GenerationLog, Heuristic,
    Population, RunOutcome, SimEvaluator,
};
pub use gateway::{Gateway, GatewayConfig, GatewayError, GenerationResult};
pub use provider::{HttpConfig, HttpProvider, MockProvider, Provider, ProviderError, ReplayProvider};
pub use strategy::Strategy;
