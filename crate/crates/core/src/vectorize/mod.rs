//! Betti-sequence vectorizations of persistence diagrams.
//!
//! Every vectorization implements [`Vectorizer`] and is looked up by name in
//! a [`VectorizerRegistry`]:
//!
//! | name              | entry `i` counts / weighs                                   |
//! |-------------------|-------------------------------------------------------------|
//! | `grid-sample`     | bars alive at the sample point `τ_i`                        |
//! | `interval`        | diagram points in the bin region `D_i`                      |
//! | `stable-gaussian` | Gaussian density at `(τ_{i-1}, τ_i)`, weight `1/N`          |
//! | `new-extended`    | points in `D_i` or within `γ_i·Δτ` outside its boundaries   |
//!
//! [`cumulative`] and [`normalize_sup`] post-process any of them.

mod extended;
mod grid_sample;
mod interval;
mod stable;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{truncate_essential, FiltrationGrid};
use crate::error::{Error, Result};
use crate::homology::PersistenceDiagram;

pub use extended::{betti_new, GammaRule, NewExtended};
pub use grid_sample::{betti_grid_sample, GridSample};
pub use interval::{betti_interval, Interval};
pub use stable::{gaussian_density, lipschitz_constant, stable_betti, stable_betti_with, NormExponent, StableGaussian};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    GridSample,
    Interval,
    StableGaussian,
    NewExtended,
    Cumulative,
    NormalizedCumulative,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::GridSample => "grid-sample",
            Variant::Interval => "interval",
            Variant::StableGaussian => "stable-gaussian",
            Variant::NewExtended => "new-extended",
            Variant::Cumulative => "cumulative",
            Variant::NormalizedCumulative => "normalized-cumulative",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BettiVector {
    pub values: Vec<f64>,
    pub grid: FiltrationGrid,
    pub variant: Variant,
}

impl BettiVector {
    pub fn zeros(grid: FiltrationGrid, variant: Variant) -> Self {
        Self {
            values: vec![0.0; grid.n_bins()],
            grid,
            variant,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Running sum: `out_1 = v_1`, `out_i = v_i + out_{i-1}`.
pub fn cumulative(v: &BettiVector) -> BettiVector {
    let mut acc = 0.0;
    BettiVector {
        values: v
            .values
            .iter()
            .map(|x| {
                acc += x;
                acc
            })
            .collect(),
        grid: v.grid,
        variant: Variant::Cumulative,
    }
}

/// Divides by the sup-norm; the zero vector maps to itself.
pub fn normalize_sup(v: &BettiVector) -> BettiVector {
    let norm = v.sup_norm();
    let values = if norm > 0.0 {
        v.values.iter().map(|x| x / norm).collect()
    } else {
        v.values.clone()
    };
    BettiVector {
        values,
        grid: v.grid,
        variant: Variant::NormalizedCumulative,
    }
}

/// `normalize_sup(cumulative(v))`.
pub fn normalized_cumulative(v: &BettiVector) -> BettiVector {
    normalize_sup(&cumulative(v))
}

pub trait Vectorizer: Send + Sync {
    fn name(&self) -> &'static str;

    fn variant(&self) -> Variant;

    /// Vectorizes a diagram whose essential classes are already clamped.
    fn vectorize_finite(&self, pd: &PersistenceDiagram, grid: &FiltrationGrid) -> Result<BettiVector>;

    /// Clamps essential classes to `tau_max`, then vectorizes.
    fn vectorize(&self, pd: &PersistenceDiagram, grid: &FiltrationGrid) -> Result<BettiVector> {
        self.vectorize_finite(&truncate_essential(pd, grid.tau_max()), grid)
    }
}

pub struct VectorizerRegistry {
    entries: BTreeMap<&'static str, Box<dyn Vectorizer>>,
}

impl VectorizerRegistry {
    pub fn empty() -> Self {
        Self { entries: BTreeMap::new() }
    }

    pub fn register(&mut self, v: Box<dyn Vectorizer>) {
        self.entries.insert(v.name(), v);
    }

    pub fn get(&self, name: &str) -> Result<&dyn Vectorizer> {
        self.entries.get(name).map(|v| v.as_ref()).ok_or_else(|| Error::UnknownStrategy {
            kind: "vectorizer",
            name: name.to_string(),
        })
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }
}

impl Default for VectorizerRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(GridSample));
        r.register(Box::new(Interval));
        r.register(Box::new(StableGaussian::default()));
        r.register(Box::new(NewExtended::default()));
        r
    }
}
