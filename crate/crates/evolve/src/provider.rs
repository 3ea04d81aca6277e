//! Completion back ends: scripted mock, recorded-fixture replay and a live
//! OpenAI-compatible HTTP client.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Condvar, Mutex};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::extract::format_reply;
use crate::prompt::Message;
use crate::strategy::Strategy;

pub const API_KEY_ENV: &str = "TSEOH_API_KEY";

#[derive(Debug, Error)]
pub enum ProviderError {
    #[error("transport error: {0}")]
    Transport(String),
    #[error("authentication failed (HTTP {status})")]
    Auth { status: u16, body: String },
    #[error("HTTP {status}: {body}")]
    Http { status: u16, body: String },
    #[error("no recorded fixture `{0}`")]
    FixtureExhausted(String),
    #[error("malformed response: {0}")]
    Malformed(String),
    #[error("{0}")]
    Io(String),
    #[error("environment variable {API_KEY_ENV} is not set")]
    MissingApiKey,
}

impl ProviderError {
    pub fn status(&self) -> Option<u16> {
        match self {
            ProviderError::Auth { status, .. } | ProviderError::Http { status, .. } => Some(*status),
            _ => None,
        }
    }
}

/// One model call. `run_seq` counts every call of the run; `call_index`
/// counts calls made for `strategy`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompletionRequest {
    pub run_seq: u64,
    pub strategy: Strategy,
    pub call_index: usize,
    pub model: String,
    pub messages: Vec<Message>,
    pub temperature: f64,
}

impl CompletionRequest {
    /// Chat-completions request body.
    pub fn body(&self) -> Value {
        json!({ "model": self.model, "messages": self.messages, "temperature": self.temperature })
    }

    pub fn fixture_name(&self) -> String {
        fixture_name(self.run_seq, self.strategy, self.call_index)
    }
}

pub fn fixture_name(run_seq: u64, strategy: Strategy, call_index: usize) -> String {
    format!("{run_seq:04}_{strategy}_{call_index}.json")
}

#[derive(Clone, Debug, PartialEq)]
pub struct Completion {
    pub text: String,
    pub model: String,
    pub latency_ms: u64,
    pub prompt_tokens: Option<u64>,
    pub completion_tokens: Option<u64>,
    /// Response body as received (or synthesized, for offline providers).
    pub body: Value,
}

impl Completion {
    /// Reads the first choice of a chat-completions response body.
    pub fn from_body(body: Value, latency_ms: u64) -> Result<Self, ProviderError> {
        let text = body
            .pointer("/choices/0/message/content")
            .and_then(Value::as_str)
            .ok_or_else(|| ProviderError::Malformed("no choices[0].message.content".into()))?
            .to_string();
        Ok(Self {
            text,
            model: body.get("model").and_then(Value::as_str).unwrap_or("").to_string(),
            latency_ms,
            prompt_tokens: body.pointer("/usage/prompt_tokens").and_then(Value::as_u64),
            completion_tokens: body.pointer("/usage/completion_tokens").and_then(Value::as_u64),
            body,
        })
    }

    fn synthetic(model: &str, text: String) -> Self {
        let body = json!({
            "model": model,
            "choices": [{ "index": 0, "message": { "role": "assistant", "content": text } }],
        });
        Self::from_body(body, 0).expect("well-formed")
    }
}

pub trait Provider: Send + Sync {
    fn name(&self) -> &str;
    fn complete(&self, req: &CompletionRequest) -> Result<Completion, ProviderError>;
}

/// Fixture file content: request and response bodies verbatim.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fixture {
    pub request: Value,
    pub response: Value,
}

pub fn write_fixture(dir: &Path, req: &CompletionRequest, c: &Completion) -> Result<PathBuf, ProviderError> {
    fs::create_dir_all(dir).map_err(|e| ProviderError::Io(format!("{}: {e}", dir.display())))?;
    let path = dir.join(req.fixture_name());
    let fx = Fixture { request: req.body(), response: c.body.clone() };
    let text = serde_json::to_string_pretty(&fx).expect("json values serialize");
    fs::write(&path, text).map_err(|e| ProviderError::Io(format!("{}: {e}", path.display())))?;
    Ok(path)
}

// ---------------------------------------------------------------- mock

/// Scripted replies keyed by (strategy, call index); a strategy's list is
/// reused cyclically once exhausted.
#[derive(Clone, Debug, PartialEq)]
pub struct MockProvider {
    script: BTreeMap<Strategy, Vec<String>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ScriptEntry {
    Raw(String),
    Pair { description: String, source: String },
}

impl MockProvider {
    pub fn new(script: BTreeMap<Strategy, Vec<String>>) -> Self {
        Self { script }
    }

    /// Parses `{"INIT": [...], "M1": [...], ...}`. Each entry is either a raw
    /// reply string (one call) or `{"description", "source"}`, which covers
    /// both calls of one generation with the canonical reply.
    pub fn from_json(text: &str) -> Result<Self, ProviderError> {
        let raw: BTreeMap<Strategy, Vec<ScriptEntry>> =
            serde_json::from_str(text).map_err(|e| ProviderError::Malformed(format!("mock script: {e}")))?;
        let script = raw
            .into_iter()
            .map(|(s, entries)| {
                let replies = entries
                    .into_iter()
                    .flat_map(|e| match e {
                        ScriptEntry::Raw(r) => vec![r],
                        ScriptEntry::Pair { description, source } => {
                            let r = format_reply(&description, &source);
                            vec![r.clone(), r]
                        }
                    })
                    .collect();
                (s, replies)
            })
            .collect();
        Ok(Self { script })
    }

    pub fn load(path: &Path) -> Result<Self, ProviderError> {
        let text = fs::read_to_string(path).map_err(|e| ProviderError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

impl Provider for MockProvider {
    fn name(&self) -> &str {
        "mock"
    }

    fn complete(&self, req: &CompletionRequest) -> Result<Completion, ProviderError> {
        let replies = self
            .script
            .get(&req.strategy)
            .filter(|r| !r.is_empty())
            .ok_or_else(|| ProviderError::Malformed(format!("mock script has no {} entries", req.strategy)))?;
        Ok(Completion::synthetic("mock", replies[req.call_index % replies.len()].clone()))
    }
}

// -------------------------------------------------------------- replay

/// Serves recorded fixtures by file name. When a fixture is missing it
/// falls through to `inner` (recording its answer) or fails.
pub struct ReplayProvider {
    dir: PathBuf,
    inner: Option<Box<dyn Provider>>,
}

impl ReplayProvider {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into(), inner: None }
    }

    pub fn with_fallback(dir: impl Into<PathBuf>, inner: Box<dyn Provider>) -> Self {
        Self { dir: dir.into(), inner: Some(inner) }
    }
}

impl Provider for ReplayProvider {
    fn name(&self) -> &str {
        "replay"
    }

    fn complete(&self, req: &CompletionRequest) -> Result<Completion, ProviderError> {
        let path = self.dir.join(req.fixture_name());
        match fs::read_to_string(&path) {
            Ok(text) => {
                let fx: Fixture = serde_json::from_str(&text)
                    .map_err(|e| ProviderError::Malformed(format!("{}: {e}", path.display())))?;
                if fx.request != req.body() {
                    log::warn!("{}: recorded request differs from the current prompt", path.display());
                }
                Completion::from_body(fx.response, 0)
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => match &self.inner {
                Some(inner) => {
                    let c = inner.complete(req)?;
                    write_fixture(&self.dir, req, &c)?;
                    Ok(c)
                }
                None => Err(ProviderError::FixtureExhausted(path.display().to_string())),
            },
            Err(e) => Err(ProviderError::Io(format!("{}: {e}", path.display()))),
        }
    }
}

// ---------------------------------------------------------------- http

/// Counting semaphore bounding concurrent live requests.
struct Limiter {
    free: Mutex<usize>,
    cv: Condvar,
}

struct Permit<'a>(&'a Limiter);

impl Limiter {
    fn new(n: usize) -> Self {
        Self { free: Mutex::new(n.max(1)), cv: Condvar::new() }
    }

    fn acquire(&self) -> Permit<'_> {
        let mut free = self.free.lock().unwrap_or_else(|e| e.into_inner());
        while *free == 0 {
            free = self.cv.wait(free).unwrap_or_else(|e| e.into_inner());
        }
        *free -= 1;
        Permit(self)
    }
}

impl Drop for Permit<'_> {
    fn drop(&mut self) {
        *self.0.free.lock().unwrap_or_else(|e| e.into_inner()) += 1;
        self.0.cv.notify_one();
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HttpConfig {
    pub base_url: String,
    pub api_key: String,
    pub timeout: Duration,
    pub max_attempts: u32,
    /// First retry delay; doubles on every further attempt.
    pub backoff: Duration,
    pub max_in_flight: usize,
}

impl HttpConfig {
    pub fn new(base_url: impl Into<String>, api_key: impl Into<String>) -> Self {
        Self {
            base_url: base_url.into(),
            api_key: api_key.into(),
            timeout: Duration::from_secs(120),
            max_attempts: 5,
            backoff: Duration::from_millis(500),
            max_in_flight: 4,
        }
    }

    /// Reads the bearer token from `TSEOH_API_KEY`.
    pub fn from_env(base_url: impl Into<String>) -> Result<Self, ProviderError> {
        match std::env::var(API_KEY_ENV) {
            Ok(k) if !k.trim().is_empty() => Ok(Self::new(base_url, k.trim())),
            _ => Err(ProviderError::MissingApiKey),
        }
    }
}

pub struct HttpProvider {
    cfg: HttpConfig,
    agent: ureq::Agent,
    limiter: Limiter,
}

enum Attempt {
    Done(Result<Completion, ProviderError>),
    Retry(ProviderError),
}

impl HttpProvider {
    pub fn new(cfg: HttpConfig) -> Self {
        let config = ureq::Agent::config_builder()
            .timeout_global(Some(cfg.timeout))
            .http_status_as_error(false)
            .build();
        Self { agent: ureq::Agent::new_with_config(config), limiter: Limiter::new(cfg.max_in_flight), cfg }
    }

    fn url(&self) -> String {
        format!("{}/chat/completions", self.cfg.base_url.trim_end_matches('/'))
    }

    fn attempt(&self, body: &str) -> Attempt {
        let started = Instant::now();
        let sent = self
            .agent
            .post(self.url())
            .header("Authorization", format!("Bearer {}", self.cfg.api_key))
            .header("Content-Type", "application/json")
            .send(body);
        let mut resp = match sent {
            Ok(r) => r,
            Err(e) => return Attempt::Retry(ProviderError::Transport(e.to_string())),
        };
        let status = resp.status().as_u16();
        let text = match resp.body_mut().read_to_string() {
            Ok(t) => t,
            Err(e) => return Attempt::Retry(ProviderError::Transport(e.to_string())),
        };
        let latency = started.elapsed().as_millis() as u64;
        match status {
            200..=299 => Attempt::Done(
                serde_json::from_str(&text)
                    .map_err(|e| ProviderError::Malformed(e.to_string()))
                    .and_then(|v| Completion::from_body(v, latency)),
            ),
            401 | 403 => Attempt::Done(Err(ProviderError::Auth { status, body: text })),
            429 | 500..=599 => Attempt::Retry(ProviderError::Http { status, body: text }),
            _ => Attempt::Done(Err(ProviderError::Http { status, body: text })),
        }
    }
}

impl Provider for HttpProvider {
    fn name(&self) -> &str {
        "http"
    }

    fn complete(&self, req: &CompletionRequest) -> Result<Completion, ProviderError> {
        if req.messages.is_empty() {
            return Err(ProviderError::Malformed("empty message list".into()));
        }
        let _permit = self.limiter.acquire();
        let body = req.body().to_string();
        let mut delay = self.cfg.backoff;
        let mut last = None;
        for attempt in 1..=self.cfg.max_attempts.max(1) {
            match self.attempt(&body) {
                Attempt::Done(r) => return r,
                Attempt::Retry(e) => {
                    log::warn!("{} attempt {attempt} failed: {e}", req.fixture_name());
                    last = Some(e);
                    if attempt < self.cfg.max_attempts {
                        std::thread::sleep(delay);
                        delay = delay.saturating_mul(2);
                    }
                }
            }
        }
        Err(last.expect("at least one attempt"))
    }
}
