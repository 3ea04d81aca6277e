use std::path::PathBuf;

use clap::Args;

use tseoh_core::ingest::{load, SynthSpec, TraceFormat, TraceSpec};
use tseoh_core::ResourceVector;

use crate::{runtime, usage, CliError};

#[derive(Debug, Args)]
pub struct IngestArgs {
    /// google | alibaba | eua | synthetic
    #[arg(long)]
    pub format: String,
    /// Trace files; for eua give the station file, then the user file.
    #[arg(long = "input")]
    pub inputs: Vec<PathBuf>,
    /// Keep the earliest N tasks.
    #[arg(long)]
    pub limit: Option<usize>,
    /// Server count for cluster traces.
    #[arg(long)]
    pub servers: Option<usize>,
    /// Uniform per-resource server capacity.
    #[arg(long)]
    pub capacity: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// EUA coverage radius in metres.
    #[arg(long)]
    pub radius_m: Option<f64>,
    /// EUA: fail on users no station covers instead of dropping them.
    #[arg(long)]
    pub strict_coverage: bool,
    /// Synthetic generator settings, e.g. `n=300,m=10`.
    #[arg(long)]
    pub synth: Option<String>,
    #[arg(long)]
    pub out: PathBuf,
}

pub fn cmd_ingest(args: &IngestArgs) -> Result<(), CliError> {
    let format: TraceFormat = args.format.parse().map_err(usage)?;
    let mut spec = TraceSpec::new(format).with_paths(args.inputs.clone());
    spec.limit = args.limit;
    spec.seed = args.seed;
    spec.strict_coverage = args.strict_coverage;
    if let Some(s) = args.servers {
        if s == 0 {
            return Err(usage("--servers must be at least 1"));
        }
        spec.servers = s;
    }
    if let Some(c) = args.capacity {
        if !(c > 0.0 && c.is_finite()) {
            return Err(usage("--capacity must be positive"));
        }
        spec.capacity = Some(ResourceVector::splat(c));
    }
    if let Some(r) = args.radius_m {
        spec.radius_m = r;
    }
    if let Some(kv) = &args.synth {
        spec.synth = SynthSpec::parse_kv(kv).map_err(usage)?;
    }
    let inst = load(&spec).map_err(usage)?;
    inst.save(&args.out).map_err(runtime)?;
    let prov = inst.provenance.clone().unwrap_or_default();
    println!(
        "wrote {}: {} tasks on {} servers ({})",
        args.out.display(),
        inst.num_tasks(),
        inst.num_servers(),
        prov.format
    );
    if !prov.synthetic_fields.is_empty() {
        println!("sampled fields: {}", prov.synthetic_fields.join(", "));
    }
    for note in &prov.notes {
        println!("note: {note}");
    }
    Ok(())
}
