//! Two-call heuristic generation: a description first, then the expression
//! implementing it, with the prompt for the second call assembled locally.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extract::{extract_code, extract_description};
use crate::prompt::{render_code_prompt, render_prompt, Message, Parent};
use crate::provider::{write_fixture, Completion, CompletionRequest, Provider, ProviderError};
use crate::strategy::Strategy;

#[derive(Debug, Error)]
pub enum GatewayError {
    #[error("strategy {0} needs a parent heuristic")]
    MissingParent(Strategy),
    #[error("prompt template: {0}")]
    Template(String),
    #[error(transparent)]
    Provider(#[from] ProviderError),
    #[error("could not extract {what} from reply: {excerpt:?}")]
    Extraction { what: &'static str, excerpt: String },
    #[error("call budget of {limit} model calls exhausted")]
    BudgetExceeded { limit: u64 },
}

impl GatewayError {
    /// A malformed reply is worth another attempt; everything else is not.
    pub fn is_generation_failure(&self) -> bool {
        matches!(self, GatewayError::Extraction { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GatewayConfig {
    pub model: String,
    /// Per-strategy overrides of [`Strategy::default_temperature`].
    pub temperatures: BTreeMap<Strategy, f64>,
    /// Maximum number of model calls in one run.
    pub max_calls: Option<u64>,
    /// Every request/response pair is written here before it is used.
    pub record_dir: Option<PathBuf>,
}

impl Default for GatewayConfig {
    fn default() -> Self {
        Self { model: "mock".into(), temperatures: BTreeMap::new(), max_calls: None, record_dir: None }
    }
}

impl GatewayConfig {
    pub fn temperature(&self, s: Strategy) -> f64 {
        self.temperatures.get(&s).copied().unwrap_or_else(|| s.default_temperature())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenerationResult {
    pub strategy: Strategy,
    pub parent_id: Option<usize>,
    pub description: String,
    pub source: String,
    pub raw_replies: [String; 2],
    pub model: String,
    pub latency_ms: u64,
    pub prompt_tokens: Option<u64>,
    pub completion_tokens: Option<u64>,
}

#[derive(Default)]
struct Counters {
    run_seq: u64,
    per_strategy: BTreeMap<Strategy, usize>,
}

pub struct Gateway {
    provider: Box<dyn Provider>,
    cfg: GatewayConfig,
    counters: Mutex<Counters>,
}

fn excerpt(text: &str) -> String {
    text.chars().take(120).collect()
}

fn add(a: Option<u64>, b: Option<u64>) -> Option<u64> {
    match (a, b) {
        (None, None) => None,
        _ => Some(a.unwrap_or(0) + b.unwrap_or(0)),
    }
}

impl Gateway {
    pub fn new(provider: Box<dyn Provider>, cfg: GatewayConfig) -> Self {
        Self { provider, cfg, counters: Mutex::new(Counters::default()) }
    }

    pub fn provider_name(&self) -> &str {
        self.provider.name()
    }

    pub fn calls_made(&self) -> u64 {
        self.counters.lock().unwrap_or_else(|e| e.into_inner()).run_seq
    }

    fn call(&self, strategy: Strategy, messages: Vec<Message>) -> Result<Completion, GatewayError> {
        let req = {
            let mut c = self.counters.lock().unwrap_or_else(|e| e.into_inner());
            if let Some(limit) = self.cfg.max_calls {
                if c.run_seq >= limit {
                    return Err(GatewayError::BudgetExceeded { limit });
                }
            }
            let run_seq = c.run_seq;
            let idx = c.per_strategy.entry(strategy).or_insert(0);
            let req = CompletionRequest {
                run_seq,
                strategy,
                call_index: *idx,
                model: self.cfg.model.clone(),
                messages,
                temperature: self.cfg.temperature(strategy),
            };
            *idx += 1;
            c.run_seq += 1;
            req
        };
        let completion = self.provider.complete(&req)?;
        if let Some(dir) = &self.cfg.record_dir {
            write_fixture(dir, &req, &completion)?;
        }
        Ok(completion)
    }

    /// Call 1 yields the description, which is folded into the code prompt
    /// for call 2; the expression is the first fenced block of that reply.
    pub fn generate(&self, strategy: Strategy, parent: Option<Parent<'_>>) -> Result<GenerationResult, GatewayError> {
        let first = render_prompt(strategy, parent)?;
        let c1 = self.call(strategy, first.messages)?;
        let description = extract_description(&c1.text)
            .ok_or_else(|| GatewayError::Extraction { what: "description", excerpt: excerpt(&c1.text) })?;
        let second = render_code_prompt(strategy, &description, parent)?;
        let c2 = self.call(strategy, second.messages)?;
        let source = extract_code(&c2.text)
            .ok_or_else(|| GatewayError::Extraction { what: "code block", excerpt: excerpt(&c2.text) })?;
        Ok(GenerationResult {
            strategy,
            parent_id: first.parent_id,
            description,
            source,
            model: if c2.model.is_empty() { self.cfg.model.clone() } else { c2.model.clone() },
            latency_ms: c1.latency_ms + c2.latency_ms,
            prompt_tokens: add(c1.prompt_tokens, c2.prompt_tokens),
            completion_tokens: add(c1.completion_tokens, c2.completion_tokens),
            raw_replies: [c1.text, c2.text],
        })
    }
}
