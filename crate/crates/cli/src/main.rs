use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use ffgalois::harness::{self, ExperimentConfig, Mutation, SelfcheckOptions};
use ffgalois::Error;

#[derive(Parser)]
#[command(name = "ffgalois", version, about = "Seeded experiments on random polynomials over F_q[t][x]")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Content of f against the exact law.
    ContentLaw(Overrides),
    /// Rate of const*square discriminants across an n-list.
    DiscSquareRate(Overrides),
    /// Certificate levels on random inputs and negative controls.
    GaloisCert(Overrides),
    /// Condition on b1, b2 and the derivative-curve group test.
    DerivativeGroup(Overrides),
    /// |S_m| against q^m/m for a fixed f0.
    PlacesCount(Overrides),
    /// Divisibility laws and unique-divisor events for a fixed f0.
    SieveEvents(Overrides),
    /// Deterministic invariant suite.
    Selfcheck {
        #[command(flatten)]
        o: Overrides,
        /// Inject a known defect; the suite must then fail.
        #[arg(long, value_parser = ["resultant-sign"])]
        mutate: Option<String>,
    },
    /// Seeded search for an f0 suitable for the sieve experiments.
    SampleF0(Overrides),
}

#[derive(Args, Clone, Default)]
struct Overrides {
    /// JSON config; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads, 0 for one per core.
    #[arg(long)]
    workers: Option<usize>,
    /// Output directory for CSV, JSONL and manifest.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    f0_file: Option<PathBuf>,
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    m_max: Option<usize>,
    /// Comma-separated list of n.
    #[arg(long, value_delimiter = ',')]
    n_list: Option<Vec<usize>>,
}

impl Overrides {
    fn apply(self, name: &str) -> anyhow::Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(p) => ExperimentConfig::from_json_file(p)?,
            None => ExperimentConfig::default(),
        };
        if !cfg.command.is_empty() && cfg.command != name {
            anyhow::bail!(Error::Config(format!(
                "config is for {:?}, not {name:?}",
                cfg.command
            )));
        }
        cfg.command = name.to_string();
        macro_rules! set {
            ($($f:ident),*) => { $(if let Some(v) = self.$f { cfg.$f = v; })* };
        }
        set!(q, d, n, samples, seed, workers, budget);
        if let Some(v) = self.n_list {
            cfg.n_list = v;
        }
        cfg.out = self.out.or(cfg.out);
        cfg.f0_file = self.f0_file.or(cfg.f0_file);
        cfg.m = self.m.or(cfg.m);
        cfg.m_max = self.m_max.or(cfg.m_max);
        Ok(cfg)
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let started = Instant::now();
    let (name, o, mutate) = match cli.command {
        Cmd::ContentLaw(o) => ("content-law", o, None),
        Cmd::DiscSquareRate(o) => ("disc-square-rate", o, None),
        Cmd::GaloisCert(o) => ("galois-cert", o, None),
        Cmd::DerivativeGroup(o) => ("derivative-group", o, None),
        Cmd::PlacesCount(o) => ("places-count", o, None),
        Cmd::SieveEvents(o) => ("sieve-events", o, None),
        Cmd::Selfcheck { o, mutate } => ("selfcheck", o, mutate),
        Cmd::SampleF0(o) => ("sample-f0", o, None),
    };
    let cfg = o.apply(name)?;
    let out = match mutate {
        Some(_) => {
            cfg.validate()?;
            harness::selfcheck(&SelfcheckOptions {
                mutate: Some(Mutation::ResultantSign),
            })?
        }
        None => harness::run(&cfg)?,
    };
    print!("{}", out.csv()?);
    if let Some(dir) = &cfg.out {
        harness::write_outputs(&out, &cfg, dir, started)
            .with_context(|| format!("writing outputs to {}", dir.display()))?;
    }
    eprintln!("{}", out.summary);
    eprintln!("{name}: {}", if out.accepted { "accepted" } else { "REJECTED" });
    Ok(out.accepted)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
