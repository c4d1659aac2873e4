//! Flat `key = value` experiment configuration.

use serde::{Deserialize, Serialize};

use crate::diagram::FiltrationGrid;
use crate::error::{Error, Result};
use crate::pointcloud::GeneratorKind;

/// Lattice jitter: a fixed magnitude or `1/N` of the filtration grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Perturb {
    Fixed(f64),
    GridFraction,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub name: String,
    pub tau_max: f64,
    pub n_bins: usize,
    pub dims: Vec<usize>,
    pub n_samples: usize,
    pub seed: u64,
    pub epsilon_lo: f64,
    pub epsilon_hi: f64,
    pub epsilon_count: usize,
    /// Explicit ε values; overrides the range when non-empty.
    pub epsilons: Vec<f64>,
    pub n_points: usize,
    pub lattice_scale: f64,
    pub perturb: Perturb,
    pub burn_in: usize,
    pub hole_lo: f64,
    pub hole_hi: f64,
    /// Registry name of the vectorizer used as the "stable" variant.
    pub stable: String,
    pub generators: Vec<GeneratorKind>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            name: String::new(),
            tau_max: 1.0,
            n_bins: 20,
            dims: vec![1],
            n_samples: 100,
            seed: 0,
            epsilon_lo: -1e-8,
            epsilon_hi: 1e-8,
            epsilon_count: 100,
            epsilons: Vec::new(),
            n_points: 225,
            lattice_scale: 1.0,
            perturb: Perturb::GridFraction,
            burn_in: crate::pointcloud::DEFAULT_BURN_IN,
            hole_lo: 0.15,
            hole_hi: 0.85,
            stable: "new-extended".into(),
            generators: GeneratorKind::ALL.to_vec(),
        }
    }
}

fn parse_list<T>(v: &str, f: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    v.split(',').map(str::trim).filter(|s| !s.is_empty()).map(f).collect()
}

pub fn parse_generator(s: &str) -> Result<GeneratorKind> {
    GeneratorKind::ALL
        .into_iter()
        .find(|g| g.name() == s)
        .ok_or_else(|| Error::UnknownStrategy {
            kind: "generator",
            name: s.to_string(),
        })
}

impl ExperimentConfig {
    pub fn grid(&self) -> Result<FiltrationGrid> {
        FiltrationGrid::new(self.tau_max, self.n_bins)
    }

    pub fn perturb_magnitude(&self) -> f64 {
        match self.perturb {
            Perturb::Fixed(p) => p,
            Perturb::GridFraction => 1.0 / self.n_bins as f64,
        }
    }

    /// ε values: the explicit list, or `epsilon_count` midpoints of equal
    /// subdivisions of `(epsilon_lo, epsilon_hi)`, so both ends stay open.
    pub fn epsilon_grid(&self) -> Vec<f64> {
        if !self.epsilons.is_empty() {
            return self.epsilons.clone();
        }
        let (lo, hi, n) = (self.epsilon_lo, self.epsilon_hi, self.epsilon_count);
        (0..n).map(|k| lo + (hi - lo) * (k as f64 + 0.5) / n as f64).collect()
    }

    pub fn validate(&self) -> Result<()> {
        self.grid()?;
        if self.epsilon_count == 0 && self.epsilons.is_empty() {
            return Err(Error::param("epsilon_count must be >= 1"));
        }
        if !(self.epsilon_lo < self.epsilon_hi) {
            return Err(Error::param("epsilon_lo must be below epsilon_hi"));
        }
        if self.dims.is_empty() || self.dims.iter().any(|&d| d > 1) {
            return Err(Error::param("dims must be a non-empty subset of {0, 1}"));
        }
        if self.n_points == 0 {
            return Err(Error::param("n_points must be >= 1"));
        }
        Ok(())
    }

    /// Applies one `key = value` assignment.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let real = |v: &str| v.parse::<f64>().map_err(|_| Error::param(format!("{key}: not a number: `{v}`")));
        let count = |v: &str| v.parse::<usize>().map_err(|_| Error::param(format!("{key}: not a count: `{v}`")));
        match key {
            "name" => self.name = value.to_string(),
            "tau_max" => self.tau_max = real(value)?,
            "n_bins" => self.n_bins = count(value)?,
            "dims" => self.dims = parse_list(value, count)?,
            "n_samples" => self.n_samples = count(value)?,
            "seed" => self.seed = value.parse().map_err(|_| Error::param(format!("seed: `{value}`")))?,
            "epsilon_lo" => self.epsilon_lo = real(value)?,
            "epsilon_hi" => self.epsilon_hi = real(value)?,
            "epsilon_count" => self.epsilon_count = count(value)?,
            "epsilons" => self.epsilons = parse_list(value, real)?,
            "n_points" => self.n_points = count(value)?,
            "lattice_scale" => self.lattice_scale = real(value)?,
            "perturb" => {
                self.perturb = if value == "auto" {
                    Perturb::GridFraction
                } else {
                    Perturb::Fixed(real(value)?)
                }
            }
            "burn_in" => self.burn_in = count(value)?,
            "hole_lo" => self.hole_lo = real(value)?,
            "hole_hi" => self.hole_hi = real(value)?,
            "stable" => self.stable = value.to_string(),
            "generators" => self.generators = parse_list(value, parse_generator)?,
            _ => return Err(Error::param(format!("unknown config key `{key}`"))),
        }
        Ok(())
    }

    /// Overlays a config file on `self`. Blank lines and `#` comments are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: i + 1,
                msg: "expected `key = value`".into(),
            })?;
            self.set(k.trim(), v.trim()).map_err(|e| Error::Parse {
                line: i + 1,
                msg: e.to_string(),
            })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_text() {
        let mut c = ExperimentConfig::default();
        c.apply_text("# sweep\nseed = 9\nn_bins=10\ndims = 0, 1\nperturb = 0\ngenerators = lattice,hole\n").unwrap();
        assert_eq!(c.seed, 9);
        assert_eq!(c.n_bins, 10);
        assert_eq!(c.dims, vec![0, 1]);
        assert_eq!(c.perturb, Perturb::Fixed(0.0));
        assert_eq!(c.generators, vec![GeneratorKind::PerturbedLattice, GeneratorKind::UniformWithHole]);
        assert!(c.apply_text("bogus = 1").is_err());
        assert!(c.apply_text("seed").is_err());
    }

    #[test]
    fn epsilon_grid_is_open_and_symmetric() {
        let c = ExperimentConfig::default();
        let e = c.epsilon_grid();
        assert_eq!(e.len(), 100);
        assert!(e.iter().all(|&x| x > -1e-8 && x < 1e-8 && x != 0.0));
        assert_eq!(e.iter().filter(|&&x| x < 0.0).count(), 50);
    }

    #[test]
    fn perturb_defaults_to_grid_fraction() {
        assert_eq!(ExperimentConfig::default().perturb_magnitude(), 0.05);
    }
}
