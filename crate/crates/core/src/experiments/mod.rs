//! Scripted, seeded experiments. Each one implements [`Experiment`] and is
//! registered by name; a run yields named CSV tables plus a JSON summary.

mod batch;
mod config;
mod pipeline;
mod ratio;
mod sweep;
mod theorem;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::io::fmt_real;
use crate::pointcloud::GeneratorKind;

pub use batch::{mean_entrywise_std, run_batch_for, sample_seed, BatchResult, Dispersion};
pub use config::{parse_generator, ExperimentConfig, Perturb};
pub use pipeline::{cloud_diagrams, normalized_sequence};
pub use ratio::{example_diagrams, ratio_at, ratio_limit, run_ratio_curve};
pub use sweep::{run_instability_sweep, stretched_cloud, sweep_csv, SweepRow};
pub use theorem::{construction, run_theorem_2_5_demo, InstabilityReport};

/// One CSV output of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    /// File name without directory, e.g. `batch_uniform.csv`.
    pub file: String,
    pub csv: String,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub tables: Vec<Table>,
    pub summary: serde_json::Value,
}

pub trait Experiment: Send + Sync {
    fn name(&self) -> &'static str;

    /// Configuration reproducing the reference run.
    fn default_config(&self) -> ExperimentConfig;

    fn run(&self, cfg: &ExperimentConfig) -> Result<RunOutput>;
}

pub struct RatioCurve;
pub struct InstabilityDemo;
pub struct InstabilitySweep;
pub struct Batch;

impl Experiment for RatioCurve {
    fn name(&self) -> &'static str {
        "ratio-curve"
    }

    fn default_config(&self) -> ExperimentConfig {
        ExperimentConfig {
            name: self.name().into(),
            tau_max: 1.0,
            n_bins: 2,
            epsilon_lo: 1e-6,
            epsilon_hi: 1.0,
            epsilon_count: 10_000,
            ..ExperimentConfig::default()
        }
    }

    fn run(&self, cfg: &ExperimentConfig) -> Result<RunOutput> {
        if !(cfg.epsilon_lo > 0.0 && cfg.epsilon_lo < cfg.epsilon_hi) || cfg.epsilon_count == 0 {
            return Err(Error::param("ratio curve needs 0 < epsilon_lo < epsilon_hi and epsilon_count >= 1"));
        }
        let curve = run_ratio_curve(cfg.epsilon_lo, cfg.epsilon_hi, cfg.epsilon_count);
        let mut csv = String::from("epsilon,ratio,w1\n");
        for &(eps, w1, r) in &curve {
            writeln!(csv, "{},{},{}", fmt_real(eps), fmt_real(r), fmt_real(w1)).unwrap();
        }
        let max = curve.iter().map(|c| c.2).fold(f64::NEG_INFINITY, f64::max);
        Ok(RunOutput {
            tables: vec![Table {
                file: format!("{}.csv", self.name()),
                csv,
            }],
            summary: json!({ "max_ratio": max, "limit": ratio_limit() }),
        })
    }
}

impl Experiment for InstabilityDemo {
    fn name(&self) -> &'static str {
        "theorem-2-5-demo"
    }

    fn default_config(&self) -> ExperimentConfig {
        ExperimentConfig {
            name: self.name().into(),
            n_bins: 4,
            epsilons: vec![1e-2, 1e-4, 1e-8],
            ..ExperimentConfig::default()
        }
    }

    fn run(&self, cfg: &ExperimentConfig) -> Result<RunOutput> {
        let reports = cfg
            .epsilon_grid()
            .into_iter()
            .map(|eps| run_theorem_2_5_demo(eps, cfg.n_bins))
            .collect::<Result<Vec<_>>>()?;
        let mut csv = String::from("epsilon,sup_dist,w1,bottleneck,ratio,stable_sup_dist,stable_ratio,stable_bound\n");
        for r in &reports {
            writeln!(
                csv,
                "{},{},{},{},{},{},{},{}",
                fmt_real(r.eps),
                fmt_real(r.sup_dist),
                fmt_real(r.w1),
                fmt_real(r.bottleneck),
                fmt_real(r.ratio),
                fmt_real(r.stable_sup_dist),
                fmt_real(r.stable_ratio),
                fmt_real(r.stable_bound)
            )
            .unwrap();
        }
        Ok(RunOutput {
            tables: vec![Table {
                file: format!("{}.csv", self.name()),
                csv,
            }],
            summary: serde_json::to_value(&reports)?,
        })
    }
}

impl Experiment for InstabilitySweep {
    fn name(&self) -> &'static str {
        "instability-sweep"
    }

    fn default_config(&self) -> ExperimentConfig {
        ExperimentConfig {
            name: self.name().into(),
            lattice_scale: 0.7,
            perturb: Perturb::Fixed(0.0),
            generators: vec![GeneratorKind::PerturbedLattice, GeneratorKind::Uniform],
            ..ExperimentConfig::default()
        }
    }

    fn run(&self, cfg: &ExperimentConfig) -> Result<RunOutput> {
        let mut tables = Vec::new();
        let mut summary = serde_json::Map::new();
        for &kind in &cfg.generators {
            let rows = run_instability_sweep(cfg, kind)?;
            let distinct = |f: fn(&SweepRow) -> f64| {
                let mut v: Vec<u64> = rows.iter().map(|r| f(r).to_bits()).collect();
                v.sort_unstable();
                v.dedup();
                v.len()
            };
            summary.insert(
                kind.name().into(),
                json!({
                    "distinct_v1_original": distinct(|r| r.v1_original),
                    "distinct_v1_stable": distinct(|r| r.v1_stable),
                }),
            );
            tables.push(Table {
                file: format!("{}_{}.csv", self.name(), kind),
                csv: sweep_csv(&rows),
            });
        }
        Ok(RunOutput {
            tables,
            summary: summary.into(),
        })
    }
}

impl Experiment for Batch {
    fn name(&self) -> &'static str {
        "batch"
    }

    fn default_config(&self) -> ExperimentConfig {
        ExperimentConfig {
            name: self.name().into(),
            ..ExperimentConfig::default()
        }
    }

    fn run(&self, cfg: &ExperimentConfig) -> Result<RunOutput> {
        let mut tables = Vec::new();
        let mut dispersion = Vec::new();
        for &kind in &cfg.generators {
            let result = run_batch_for(cfg, kind)?;
            for &dim in &cfg.dims {
                dispersion.push(result.dispersion(dim));
            }
            tables.push(Table {
                file: format!("{}_{}.csv", self.name(), kind),
                csv: result.csv(cfg.n_bins),
            });
        }
        Ok(RunOutput {
            tables,
            summary: json!({ "dispersion": dispersion }),
        })
    }
}

pub struct ExperimentRegistry {
    entries: BTreeMap<&'static str, Box<dyn Experiment>>,
}

impl ExperimentRegistry {
    pub fn register(&mut self, e: Box<dyn Experiment>) {
        self.entries.insert(e.name(), e);
    }

    pub fn get(&self, name: &str) -> Result<&dyn Experiment> {
        self.entries.get(name).map(|e| e.as_ref()).ok_or_else(|| Error::UnknownStrategy {
            kind: "experiment",
            name: name.to_string(),
        })
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }
}

impl Default for ExperimentRegistry {
    fn default() -> Self {
        let mut r = Self {
            entries: BTreeMap::new(),
        };
        r.register(Box::new(RatioCurve));
        r.register(Box::new(InstabilityDemo));
        r.register(Box::new(InstabilitySweep));
        r.register(Box::new(Batch));
        r
    }
}

#[derive(Debug, Serialize)]
struct Manifest<'a> {
    experiment: &'a str,
    seed: u64,
    version: &'a str,
    config: &'a ExperimentConfig,
    outputs: Vec<String>,
    summary: &'a serde_json::Value,
}

/// Writes the tables and a manifest. A path ending in `.csv` receives the
/// single table of a one-table run, with the manifest beside it as
/// `<stem>.manifest.json`; any other path is used as a directory holding
/// every table and `manifest.json`.
pub fn write_run(out: &RunOutput, cfg: &ExperimentConfig, path: &Path) -> Result<Vec<PathBuf>> {
    let single = path.extension().is_some_and(|e| e == "csv");
    let mut written = Vec::new();
    let manifest_path = if single {
        if out.tables.len() != 1 {
            return Err(Error::param(format!(
                "experiment writes {} tables; give a directory instead of a .csv path",
                out.tables.len()
            )));
        }
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            fs::create_dir_all(parent)?;
        }
        fs::write(path, &out.tables[0].csv)?;
        written.push(path.to_path_buf());
        path.with_extension("manifest.json")
    } else {
        fs::create_dir_all(path)?;
        for t in &out.tables {
            let p = path.join(&t.file);
            fs::write(&p, &t.csv)?;
            written.push(p);
        }
        path.join("manifest.json")
    };
    let manifest = Manifest {
        experiment: &cfg.name,
        seed: cfg.seed,
        version: env!("CARGO_PKG_VERSION"),
        config: cfg,
        outputs: written.iter().map(|p| p.display().to_string()).collect(),
        summary: &out.summary,
    };
    fs::write(&manifest_path, serde_json::to_string_pretty(&manifest)?)?;
    written.push(manifest_path);
    Ok(written)
}
