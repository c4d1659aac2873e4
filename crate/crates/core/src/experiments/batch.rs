//! Normalized cumulative sequences of many sampled clouds per generator.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::io::{write_vectors, VectorRow};
use crate::pointcloud::{CloudParams, GeneratorKind, GeneratorRegistry};
use crate::rng::Stream;
use crate::vectorize::{Interval, VectorizerRegistry};

use super::config::ExperimentConfig;
use super::pipeline::{cloud_diagrams, normalized_sequence};

/// Seed of sample `index` for generator `kind`: first output of the stream
/// seeded with `base ^ (generator_index << 32) ^ index`.
pub fn sample_seed(base: u64, kind: GeneratorKind, index: usize) -> u64 {
    let g = GeneratorKind::ALL.iter().position(|&k| k == kind).unwrap() as u64;
    Stream::new(base ^ (g << 32) ^ index as u64).next_u64()
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatchResult {
    pub generator: GeneratorKind,
    /// Per sample index, for each requested dim: (original, stable).
    pub original: Vec<VectorRow>,
    pub stable: Vec<VectorRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Dispersion {
    pub generator: GeneratorKind,
    pub dim: usize,
    pub original: f64,
    pub stable: f64,
}

pub fn run_batch_for(cfg: &ExperimentConfig, kind: GeneratorKind) -> Result<BatchResult> {
    cfg.validate()?;
    let grid = cfg.grid()?;
    let generators = GeneratorRegistry::default();
    let generator = generators.get(kind.name())?;
    let registry = VectorizerRegistry::default();
    let stable = registry.get(&cfg.stable)?;
    let base = CloudParams {
        n: cfg.n_points,
        seed: 0,
        scale: if kind == GeneratorKind::PerturbedLattice { cfg.lattice_scale } else { 1.0 },
        epsilon: 0.0,
        perturb: cfg.perturb_magnitude(),
        burn_in: cfg.burn_in,
        hole_lo: cfg.hole_lo,
        hole_hi: cfg.hole_hi,
    };
    let samples: Vec<Result<Vec<(VectorRow, VectorRow)>>> = (0..cfg.n_samples)
        .into_par_iter()
        .map(|s| {
            let seed = sample_seed(cfg.seed, kind, s);
            let pc = generator.generate(&CloudParams { seed, ..base.clone() })?;
            cloud_diagrams(&pc, grid.tau_max(), &cfg.dims)?
                .iter()
                .map(|pd| {
                    let row = |label: &str, values: Vec<f64>| VectorRow {
                        variant: label.to_string(),
                        dim: pd.dim,
                        seed,
                        values,
                    };
                    Ok((
                        row("original", normalized_sequence(&Interval, pd, &grid)?.values),
                        row("stable", normalized_sequence(stable, pd, &grid)?.values),
                    ))
                })
                .collect()
        })
        .collect();
    let mut original = Vec::new();
    let mut stable_rows = Vec::new();
    for s in samples {
        for (o, st) in s? {
            original.push(o);
            stable_rows.push(st);
        }
    }
    Ok(BatchResult {
        generator: kind,
        original,
        stable: stable_rows,
    })
}

impl BatchResult {
    pub fn csv(&self, n_bins: usize) -> String {
        let rows: Vec<VectorRow> = self.original.iter().chain(&self.stable).cloned().collect();
        write_vectors(&rows, n_bins)
    }

    pub fn dispersion(&self, dim: usize) -> Dispersion {
        let pick = |rows: &[VectorRow]| -> Vec<Vec<f64>> {
            rows.iter().filter(|r| r.dim == dim).map(|r| r.values.clone()).collect()
        };
        Dispersion {
            generator: self.generator,
            dim,
            original: mean_entrywise_std(&pick(&self.original)),
            stable: mean_entrywise_std(&pick(&self.stable)),
        }
    }
}

/// Mean over entries of the population standard deviation across rows.
pub fn mean_entrywise_std(rows: &[Vec<f64>]) -> f64 {
    if rows.is_empty() {
        return 0.0;
    }
    let n = rows.len() as f64;
    let len = rows[0].len();
    let total: f64 = (0..len)
        .map(|k| {
            let mean = rows.iter().map(|r| r[k]).sum::<f64>() / n;
            (rows.iter().map(|r| (r[k] - mean).powi(2)).sum::<f64>() / n).sqrt()
        })
        .sum();
    total / len as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn std_of_constant_rows_is_zero() {
        assert_eq!(mean_entrywise_std(&[vec![1.0, 2.0], vec![1.0, 2.0]]), 0.0);
        assert_eq!(mean_entrywise_std(&[vec![0.0], vec![2.0]]), 1.0);
    }

    #[test]
    fn seeds_differ_across_generators_and_samples() {
        let a = sample_seed(0, GeneratorKind::Uniform, 0);
        assert_ne!(a, sample_seed(0, GeneratorKind::Uniform, 1));
        assert_ne!(a, sample_seed(0, GeneratorKind::Sierpinski, 0));
        assert_eq!(a, sample_seed(0, GeneratorKind::Uniform, 0));
    }
}
