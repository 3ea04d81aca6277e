//! Flat JSON run configuration. Every key has a flag of the same name (with
//! dashes); a flag given on the command line wins over the file.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use tseoh_core::ingest::InstanceSource;
use tseoh_core::{Execution, FitnessConfig, Instance};
use tseoh_evolve::provider::API_KEY_ENV;
use tseoh_evolve::{
    EvolutionConfig, Gateway, GatewayConfig, HttpConfig, HttpProvider, MockProvider, Provider,
    ProviderError, ReplayProvider, Strategy,
};

use crate::{usage, CliError};

/// Script used by `--provider mock` when no `mock_script` is given.
pub const BUILTIN_MOCK_SCRIPT: &str = include_str!("../fixtures/mock_script.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ProviderKind {
    Mock,
    Replay,
    Http,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Instance JSON path or `synth:key=value,...`.
    pub instance: String,
    /// Further instances whose fitness is averaged with the main one.
    pub train_instances: Vec<String>,
    pub population: usize,
    pub generations: usize,
    /// Comma or plus separated, e.g. `M1,M2,E1,E2`.
    pub strategies: String,
    pub tau: f64,
    pub max_attempts: usize,
    pub seed: u64,
    pub alpha: f64,
    pub beta: f64,
    pub provider: ProviderKind,
    /// JSON mock script; the built-in script when absent.
    pub mock_script: Option<PathBuf>,
    pub replay_dir: Option<PathBuf>,
    pub base_url: String,
    pub model: Option<String>,
    /// Per-strategy overrides such as `M1=0.9,E2=0.1`.
    pub temperatures: String,
    pub max_calls: Option<u64>,
    pub timeout_secs: u64,
    pub max_in_flight: usize,
    /// Evaluate offspring on one thread.
    pub sequential: bool,
    pub out: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        let fit = FitnessConfig::default();
        let evo = EvolutionConfig::default();
        Self {
            instance: "synth:n=300,m=10,seed=7".into(),
            train_instances: vec![],
            population: evo.population,
            generations: evo.generations,
            strategies: "M1,M2,E1,E2".into(),
            tau: evo.tau,
            max_attempts: evo.max_attempts,
            seed: 0,
            alpha: fit.alpha,
            beta: fit.beta,
            provider: ProviderKind::Mock,
            mock_script: None,
            replay_dir: None,
            base_url: "https://api.openai.com/v1".into(),
            model: None,
            temperatures: String::new(),
            max_calls: None,
            timeout_secs: 120,
            max_in_flight: 4,
            sequential: false,
            out: PathBuf::from("run"),
        }
    }
}

#[derive(Clone, Debug, Default, Args)]
pub struct RunOverrides {
    /// Flat JSON config file; flags override its keys.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub instance: Option<String>,
    #[arg(long = "train-instance")]
    pub train_instances: Vec<String>,
    #[arg(long)]
    pub population: Option<usize>,
    #[arg(long)]
    pub generations: Option<usize>,
    #[arg(long)]
    pub strategies: Option<String>,
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long)]
    pub max_attempts: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long, value_enum)]
    pub provider: Option<ProviderKind>,
    #[arg(long)]
    pub mock_script: Option<PathBuf>,
    #[arg(long)]
    pub replay_dir: Option<PathBuf>,
    #[arg(long)]
    pub base_url: Option<String>,
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long)]
    pub temperatures: Option<String>,
    #[arg(long)]
    pub max_calls: Option<u64>,
    #[arg(long)]
    pub timeout_secs: Option<u64>,
    #[arg(long)]
    pub max_in_flight: Option<usize>,
    #[arg(long)]
    pub sequential: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl RunOverrides {
    /// Config file (if any) with the flags applied on top.
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut c = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        macro_rules! set {
            ($($f:ident),*) => {$(
                if let Some(v) = &self.$f {
                    c.$f = v.clone().into();
                }
            )*};
        }
        set!(instance, population, generations, strategies, tau, max_attempts, seed, alpha, beta);
        set!(provider, base_url, temperatures, timeout_secs, max_in_flight, out);
        if self.mock_script.is_some() {
            c.mock_script = self.mock_script.clone();
        }
        if self.replay_dir.is_some() {
            c.replay_dir = self.replay_dir.clone();
        }
        if self.model.is_some() {
            c.model = self.model.clone();
        }
        if self.max_calls.is_some() {
            c.max_calls = self.max_calls;
        }
        if !self.train_instances.is_empty() {
            c.train_instances = self.train_instances.clone();
        }
        c.sequential |= self.sequential;
        Ok(c)
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
    }

    pub fn fitness(&self) -> FitnessConfig {
        FitnessConfig { alpha: self.alpha, beta: self.beta }
    }

    pub fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        }
    }

    pub fn strategy_list(&self) -> Result<Vec<Strategy>, CliError> {
        Strategy::parse_group(&self.strategies).map_err(|e| usage(format!("strategies: {e}")))
    }

    pub fn temperature_map(&self) -> Result<BTreeMap<Strategy, f64>, CliError> {
        let mut out = BTreeMap::new();
        for part in self.temperatures.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| usage(format!("temperatures: expected STRATEGY=VALUE, got `{part}`")))?;
            let s: Strategy = k.trim().parse().map_err(|e| usage(format!("temperatures: {e}")))?;
            let t: f64 = v.trim().parse().map_err(|_| usage(format!("temperatures: bad value `{v}`")))?;
            if !(0.0..=2.0).contains(&t) {
                return Err(usage(format!("temperatures: {s}={t} outside [0, 2]")));
            }
            out.insert(s, t);
        }
        Ok(out)
    }

    pub fn evolution(&self) -> Result<EvolutionConfig, CliError> {
        let e = EvolutionConfig {
            population: self.population,
            generations: self.generations,
            strategies: self.strategy_list()?,
            tau: self.tau,
            max_attempts: self.max_attempts,
            seed: self.seed,
        };
        e.validate().map_err(usage)?;
        Ok(e)
    }

    /// Everything that can be checked without doing work.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.population == 0 || self.generations == 0 {
            return Err(usage("population and generations must be at least 1"));
        }
        self.evolution()?;
        self.temperature_map()?;
        if !(self.alpha.is_finite() && self.beta.is_finite()) {
            return Err(usage("alpha and beta must be finite"));
        }
        if let Some(p) = &self.mock_script {
            if !p.is_file() {
                return Err(usage(format!("mock script {}: no such file", p.display())));
            }
        }
        if self.provider == ProviderKind::Replay {
            match &self.replay_dir {
                Some(d) if d.is_dir() => {}
                Some(d) => return Err(usage(format!("replay dir {}: no such directory", d.display()))),
                None => return Err(usage("--provider replay needs --replay-dir")),
            }
        }
        if self.provider == ProviderKind::Http && self.model.is_none() {
            return Err(usage("--provider http needs --model"));
        }
        Ok(())
    }

    pub fn mock_script_text(&self) -> Result<String, CliError> {
        match &self.mock_script {
            Some(p) => fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display()))),
            None => Ok(BUILTIN_MOCK_SCRIPT.to_string()),
        }
    }

    pub fn provider(&self) -> Result<Box<dyn Provider>, CliError> {
        let bad = |e: ProviderError| usage(e);
        Ok(match self.provider {
            ProviderKind::Mock => Box::new(MockProvider::from_json(&self.mock_script_text()?).map_err(bad)?),
            ProviderKind::Replay => {
                let dir = self.replay_dir.clone().ok_or_else(|| usage("--provider replay needs --replay-dir"))?;
                Box::new(ReplayProvider::new(dir))
            }
            ProviderKind::Http => {
                let mut h = HttpConfig::from_env(self.base_url.clone())
                    .map_err(|_| usage(format!("{API_KEY_ENV} is not set; it is required for --provider http")))?;
                h.timeout = Duration::from_secs(self.timeout_secs);
                h.max_in_flight = self.max_in_flight.max(1);
                Box::new(HttpProvider::new(h))
            }
        })
    }

    /// Provider plus gateway; calls are recorded under `record_dir`.
    pub fn gateway(&self, record_dir: Option<PathBuf>) -> Result<Gateway, CliError> {
        let provider = self.provider()?;
        let cfg = GatewayConfig {
            model: self.model.clone().unwrap_or_else(|| "mock".into()),
            temperatures: self.temperature_map()?,
            max_calls: self.max_calls,
            record_dir,
        };
        Ok(Gateway::new(provider, cfg))
    }
}

/// Instance JSON path or `synth:...` spec.
pub fn load_instance(spec: &str) -> Result<Instance, CliError> {
    let src = InstanceSource::parse(spec).map_err(|e| usage(format!("instance `{spec}`: {e}")))?;
    src.load().map_err(|e| usage(format!("instance `{spec}`: {e}")))
}
