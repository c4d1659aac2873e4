//! First entry of the normalized cumulative sequences as the sampling
//! domain is stretched by `1 + ε`.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::io::fmt_real;
use crate::pointcloud::{gen_perturbed_lattice, gen_uniform, GeneratorKind, PointCloud};
use crate::vectorize::{Interval, VectorizerRegistry};

use super::config::ExperimentConfig;
use super::pipeline::{cloud_diagrams, normalized_sequence};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub epsilon: f64,
    pub dim: usize,
    pub v1_original: f64,
    pub v1_stable: f64,
}

/// The stretched cloud for one ε. The lattice is exact (no jitter) so its
/// spacing is `lattice_scale·(1+ε)/(side-1)`; other families are sampled on
/// `[0, 1+ε]²` from the same seed, so every ε sees a rescaled copy.
pub fn stretched_cloud(kind: GeneratorKind, cfg: &ExperimentConfig, eps: f64) -> Result<PointCloud> {
    match kind {
        GeneratorKind::PerturbedLattice => {
            let side = (cfg.n_points as f64).sqrt().round() as usize;
            if side * side != cfg.n_points {
                return Err(Error::param("lattice sweep needs a square point count"));
            }
            gen_perturbed_lattice(side, cfg.lattice_scale, eps, 0.0, cfg.seed)
        }
        GeneratorKind::Uniform => gen_uniform(cfg.n_points, 1.0 + eps, cfg.seed),
        other => Err(Error::param(format!("the sweep supports lattice and uniform clouds, not {other}"))),
    }
}

pub fn run_instability_sweep(cfg: &ExperimentConfig, kind: GeneratorKind) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let grid = cfg.grid()?;
    let registry = VectorizerRegistry::default();
    let stable = registry.get(&cfg.stable)?;
    let per_eps: Vec<Result<Vec<SweepRow>>> = cfg
        .epsilon_grid()
        .into_par_iter()
        .map(|eps| {
            let pc = stretched_cloud(kind, cfg, eps)?;
            let diagrams = cloud_diagrams(&pc, grid.tau_max(), &cfg.dims)?;
            diagrams
                .iter()
                .map(|pd| {
                    Ok(SweepRow {
                        epsilon: eps,
                        dim: pd.dim,
                        v1_original: normalized_sequence(&Interval, pd, &grid)?.values[0],
                        v1_stable: normalized_sequence(stable, pd, &grid)?.values[0],
                    })
                })
                .collect()
        })
        .collect();
    let mut rows = Vec::new();
    for r in per_eps {
        rows.extend(r?);
    }
    Ok(rows)
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("epsilon,dim,v1_original,v1_stable\n");
    for r in rows {
        writeln!(out, "{},{},{},{}", fmt_real(r.epsilon), r.dim, fmt_real(r.v1_original), fmt_real(r.v1_stable)).unwrap();
    }
    out
}
