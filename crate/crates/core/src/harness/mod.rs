//! Seeded experiment runs with CSV, JSONL and manifest outputs.
//!
//! Every sample `i` of a run draws from `substream(seed, i)`, so results do
//! not depend on the number of workers. Aggregates are counts and sums.

mod experiments;
mod selfcheck;
pub mod stats;

pub use experiments::{
    run_content_law, run_derivative_group, run_disc_square_rate, run_galois_cert, run_places_count,
    run_sample_f0, run_sieve_events,
};
pub use selfcheck::{selfcheck, Mutation, SelfcheckOptions};

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::fields::{prime_power, Field, FieldSpec, Tower};
use crate::model::{CoeffModel, ModelParams};
use crate::rng::substream_seed;

/// Stream index reserved for tower moduli.
const TOWER_STREAM: u64 = u64::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    ContentLaw,
    DiscSquareRate,
    GaloisCert,
    DerivativeGroup,
    PlacesCount,
    SieveEvents,
    Selfcheck,
    SampleF0,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::ContentLaw,
        Command::DiscSquareRate,
        Command::GaloisCert,
        Command::DerivativeGroup,
        Command::PlacesCount,
        Command::SieveEvents,
        Command::Selfcheck,
        Command::SampleF0,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::ContentLaw => "content-law",
            Command::DiscSquareRate => "disc-square-rate",
            Command::GaloisCert => "galois-cert",
            Command::DerivativeGroup => "derivative-group",
            Command::PlacesCount => "places-count",
            Command::SieveEvents => "sieve-events",
            Command::Selfcheck => "selfcheck",
            Command::SampleF0 => "sample-f0",
        }
    }

    pub fn parse(s: &str) -> Result<Command> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown subcommand {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub command: String,
    pub q: u32,
    pub d: usize,
    pub n: usize,
    pub coeffs: CoeffModel,
    pub samples: u64,
    pub seed: u64,
    /// 0 means one worker per core.
    pub workers: usize,
    /// Primes per certificate, or `x0` draws per derivative test.
    pub budget: usize,
    /// Budget for each negative-control certificate.
    pub control_budget: usize,
    pub controls: u64,
    pub m: Option<usize>,
    pub m_max: Option<usize>,
    pub n_list: Vec<usize>,
    pub window: Option<(usize, usize)>,
    /// Place degrees for the joint divisibility law.
    pub pair_degrees: (usize, usize),
    pub min_rate: f64,
    pub max_final_rate: f64,
    pub f0_file: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            command: String::new(),
            q: 3,
            d: 1,
            n: 25,
            coeffs: CoeffModel::Uniform,
            samples: 1000,
            seed: 1,
            workers: 0,
            budget: 400,
            control_budget: 100,
            controls: 30,
            m: None,
            m_max: None,
            n_list: Vec::new(),
            window: None,
            pair_degrees: (2, 3),
            min_rate: 0.99,
            max_final_rate: 0.05,
            f0_file: None,
            out: None,
        }
    }
}

impl ExperimentConfig {
    pub fn from_json_file(path: &Path) -> Result<ExperimentConfig> {
        let text = fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn command(&self) -> Result<Command> {
        Command::parse(&self.command)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(Error::Config(s));
        self.command()?;
        let (p, _) = prime_power(self.q).map_err(|_| Error::Config(format!("q = {} is not a prime power", self.q)))?;
        if p == 2 {
            return bad(format!("q = {} must be odd", self.q));
        }
        if self.n == 0 || self.d == 0 || self.samples == 0 || self.budget == 0 {
            return bad("n, d, samples and budget must be positive".into());
        }
        if self.control_budget == 0 {
            return bad("control_budget must be positive".into());
        }
        if self.n_list.contains(&0) {
            return bad("n-list entries must be positive".into());
        }
        if self.m == Some(0) || self.m_max == Some(0) {
            return bad("m and m-max must be positive".into());
        }
        if let (Some(a), Some(b)) = (self.m, self.m_max) {
            if a > b {
                return bad(format!("m = {a} exceeds m-max = {b}"));
            }
        }
        if let Some((lo, hi)) = self.window {
            if lo == 0 || lo > hi {
                return bad(format!("bad degree window [{lo}, {hi}]"));
            }
        }
        if self.pair_degrees.0 == 0 || self.pair_degrees.1 == 0 {
            return bad("pair degrees must be positive".into());
        }
        if !(0.0..=1.0).contains(&self.min_rate) || !(0.0..=1.0).contains(&self.max_final_rate) {
            return bad("rates must lie in [0, 1]".into());
        }
        Ok(())
    }

    pub fn field(&self) -> Result<Arc<Field>> {
        Field::from_q(self.q, 0)
    }

    pub fn tower(&self, field: Arc<Field>) -> Tower {
        Tower::new(field, substream_seed(self.seed, TOWER_STREAM))
    }

    pub fn model(&self, field: Arc<Field>) -> ModelParams {
        let mut m = ModelParams::new(field, self.d, self.n);
        m.coeffs = self.coeffs;
        m
    }

    pub fn load_f0(&self) -> Result<BiPoly> {
        let path = self
            .f0_file
            .as_ref()
            .ok_or_else(|| Error::Config(format!("{} needs --f0-file", self.command)))?;
        let v: Value = serde_json::from_str(&fs::read_to_string(path)?)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        BiPoly::from_json(&v)
    }

    /// SHA-256 of the config with `out` and `workers` cleared, which do not
    /// affect results.
    pub fn digest(&self) -> String {
        let mut c = self.clone();
        c.out = None;
        c.workers = 0;
        let bytes = serde_json::to_vec(&c).expect("config serializes");
        hex::encode(Sha256::digest(&bytes))
    }
}

/// Aggregate table, per-sample records and the acceptance verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct RunOutput {
    pub command: Command,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub records: Vec<Value>,
    pub summary: Value,
    pub accepted: bool,
    pub fields: Vec<FieldSpec>,
}

impl RunOutput {
    pub(crate) fn new(command: Command, header: &[&str]) -> RunOutput {
        RunOutput {
            command,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            records: Vec::new(),
            summary: json!({}),
            accepted: true,
            fields: Vec::new(),
        }
    }

    pub(crate) fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.header.len());
        self.rows.push(cells);
    }

    pub fn csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Format(e.to_string());
        w.write_record(&self.header).map_err(io)?;
        for r in &self.rows {
            w.write_record(r).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    }

    pub fn jsonl(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }

    /// The cell in column `col` of the first row whose first cell is `key`.
    pub fn lookup(&self, key: &str, col: &str) -> Option<&str> {
        let c = self.header.iter().position(|h| h == col)?;
        self.rows.iter().find(|r| r[0] == key).map(|r| r[c].as_str())
    }
}

/// Runs a validated config.
pub fn run(cfg: &ExperimentConfig) -> Result<RunOutput> {
    cfg.validate()?;
    crate::par::with_workers(cfg.workers, || match cfg.command()? {
        Command::ContentLaw => run_content_law(cfg),
        Command::DiscSquareRate => run_disc_square_rate(cfg),
        Command::GaloisCert => run_galois_cert(cfg),
        Command::DerivativeGroup => run_derivative_group(cfg),
        Command::PlacesCount => run_places_count(cfg),
        Command::SieveEvents => run_sieve_events(cfg),
        Command::Selfcheck => selfcheck(&SelfcheckOptions::default()),
        Command::SampleF0 => run_sample_f0(cfg),
    })
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Manifest {
    pub command: String,
    pub version: String,
    pub config: ExperimentConfig,
    pub config_sha256: String,
    pub fields: Vec<FieldSpec>,
    pub outputs: Vec<String>,
    pub accepted: bool,
    pub elapsed_ms: u128,
}

/// Writes `<command>.csv`, `<command>.jsonl` and `manifest.json` into `dir`.
pub fn write_outputs(out: &RunOutput, cfg: &ExperimentConfig, dir: &Path, started: Instant) -> Result<Manifest> {
    fs::create_dir_all(dir)?;
    let name = out.command.name();
    let csv_name = format!("{name}.csv");
    let jsonl_name = format!("{name}.jsonl");
    fs::write(dir.join(&csv_name), out.csv()?)?;
    fs::write(dir.join(&jsonl_name), out.jsonl())?;
    let mut outputs = vec![csv_name, jsonl_name];
    if out.command == Command::SampleF0 {
        if let Some(f0) = out.summary.get("f0") {
            fs::write(dir.join("f0.json"), serde_json::to_string_pretty(f0)?)?;
            outputs.push("f0.json".into());
        }
    }
    let manifest = Manifest {
        command: name.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: cfg.clone(),
        config_sha256: cfg.digest(),
        fields: out.fields.clone(),
        outputs,
        accepted: out.accepted,
        elapsed_ms: started.elapsed().as_millis(),
    };
    fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(&manifest)?)?;
    Ok(manifest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        let mut c = ExperimentConfig {
            command: "content-law".into(),
            ..Default::default()
        };
        assert!(c.validate().is_ok());
        c.q = 4;
        assert!(matches!(c.validate(), Err(Error::Config(_))));
        c.q = 6;
        assert!(c.validate().is_err());
        c.q = 9;
        c.command = "nope".into();
        assert!(c.validate().is_err());
        let bad: std::result::Result<ExperimentConfig, _> = serde_json::from_str(r#"{"command":"x","qq":3}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn digest_ignores_workers_and_out() {
        let a = ExperimentConfig {
            command: "content-law".into(),
            ..Default::default()
        };
        let mut b = a.clone();
        b.workers = 7;
        b.out = Some("/tmp/x".into());
        assert_eq!(a.digest(), b.digest());
        b.seed = 2;
        assert_ne!(a.digest(), b.digest());
    }
}
