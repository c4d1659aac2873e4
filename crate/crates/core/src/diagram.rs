//! Filtration grid, barcodes, the per-bin diagram regions and truncation of
//! essential classes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{PersistenceDiagram, PersistencePair};

/// `[0, tau_max]` split into `n_bins` equal subintervals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiltrationGrid {
    tau_max: f64,
    n_bins: usize,
}

impl FiltrationGrid {
    pub fn new(tau_max: f64, n_bins: usize) -> Result<Self> {
        if !(tau_max > 0.0) || !tau_max.is_finite() {
            return Err(Error::param("tau_max must be positive and finite"));
        }
        if n_bins == 0 {
            return Err(Error::param("the grid needs at least one bin"));
        }
        Ok(Self { tau_max, n_bins })
    }

    pub fn tau_max(&self) -> f64 {
        self.tau_max
    }

    pub fn n_bins(&self) -> usize {
        self.n_bins
    }

    pub fn delta(&self) -> f64 {
        self.tau_max / self.n_bins as f64
    }

    /// `τ_i` for `i` in `0..=n_bins`.
    pub fn endpoint(&self, i: usize) -> f64 {
        debug_assert!(i <= self.n_bins);
        if i == self.n_bins {
            self.tau_max
        } else {
            i as f64 * self.tau_max / self.n_bins as f64
        }
    }

    pub fn endpoints(&self) -> Vec<f64> {
        (0..=self.n_bins).map(|i| self.endpoint(i)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bar {
    pub start: f64,
    pub end: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Barcode {
    pub dim: usize,
    pub bars: Vec<Bar>,
}

pub fn to_barcode(pd: &PersistenceDiagram) -> Barcode {
    Barcode {
        dim: pd.dim,
        bars: pd.pairs.iter().map(|p| Bar { start: p.birth, end: p.death }).collect(),
    }
}

pub fn from_barcode(bc: &Barcode) -> PersistenceDiagram {
    PersistenceDiagram::new(
        bc.dim,
        bc.bars.iter().map(|b| PersistencePair::new(b.start, b.end, bc.dim)).collect(),
    )
}

/// Lower boundary of the birth coordinate in the bin regions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BirthBoundary {
    /// `0 < b`, as the region is stated.
    Open,
    /// `0 <= b`, so classes born at 0 are counted.
    Closed,
}

impl BirthBoundary {
    /// Closed for H0 (every class is born at 0), open otherwise.
    pub fn for_dim(dim: usize) -> Self {
        if dim == 0 {
            BirthBoundary::Closed
        } else {
            BirthBoundary::Open
        }
    }
}

/// Membership of `p` in the region of bin `i` (1-based), using the open
/// birth boundary.
pub fn region_contains(grid: &FiltrationGrid, i: usize, p: &PersistencePair) -> bool {
    region_contains_with(grid, i, p, BirthBoundary::Open)
}

/// `p ∈ K_i \ C_i` with
/// `K_i = {0 < b < τ_i, d > τ_{i-1}}` and
/// `C_i = {τ_{i-1} <= b <= τ_i, τ_{i-1} < d < b}`.
pub fn region_contains_with(grid: &FiltrationGrid, i: usize, p: &PersistencePair, boundary: BirthBoundary) -> bool {
    assert!(i >= 1 && i <= grid.n_bins(), "bin index {i} out of 1..={}", grid.n_bins());
    let (lo, hi) = (grid.endpoint(i - 1), grid.endpoint(i));
    let (b, d) = (p.birth, p.death);
    let birth_ok = match boundary {
        BirthBoundary::Open => 0.0 < b,
        BirthBoundary::Closed => 0.0 <= b,
    };
    let in_k = birth_ok && b < hi && d > lo;
    let in_c = lo <= b && b <= hi && lo < d && d < b;
    in_k && !in_c
}

/// Replaces essential deaths and deaths beyond `tau_max` by `tau_max` and
/// drops pairs born at or after `tau_max`.
pub fn truncate_essential(pd: &PersistenceDiagram, tau_max: f64) -> PersistenceDiagram {
    PersistenceDiagram::new(
        pd.dim,
        pd.pairs
            .iter()
            .filter(|p| p.birth < tau_max)
            .map(|p| PersistencePair::new(p.birth, p.death.min(tau_max), p.dim))
            .collect(),
    )
}
