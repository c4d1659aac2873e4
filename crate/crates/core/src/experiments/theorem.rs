//! The instability construction: one diagram point per bin, with a single
//! death nudged across a bin boundary.

use serde::Serialize;

use crate::diagram::FiltrationGrid;
use crate::error::{Error, Result};
use crate::homology::PersistenceDiagram;
use crate::metrics::{bottleneck, sup_distance, wasserstein};
use crate::vectorize::{betti_interval, lipschitz_constant, stable_betti};

#[derive(Debug, Clone, Serialize)]
pub struct InstabilityReport {
    pub eps: f64,
    pub n_bins: usize,
    pub shifted_bin: usize,
    pub sup_dist: f64,
    pub w1: f64,
    pub bottleneck: f64,
    pub ratio: f64,
    pub stable_sup_dist: f64,
    pub stable_ratio: f64,
    /// `√2 · max_i w_i L_i`.
    pub stable_bound: f64,
}

/// Diagrams `B`, `B'` on `[0, 1]` with `n_bins` bins. Bin `i` holds the
/// point `(τ_{i-1} + Δτ/4, τ_{i-1} + 3Δτ/4)`, except bin `j` whose death is
/// `τ_j − ε/2` in `B` and `τ_j + ε/2` in `B'`.
pub fn construction(eps: f64, n_bins: usize) -> Result<(FiltrationGrid, usize, PersistenceDiagram, PersistenceDiagram)> {
    if n_bins < 2 {
        return Err(Error::param("the construction needs at least 2 bins"));
    }
    let grid = FiltrationGrid::new(1.0, n_bins)?;
    let delta = grid.delta();
    if !(eps > 0.0 && eps < delta / 2.0) {
        return Err(Error::param(format!("eps must lie in (0, Δτ/2) = (0, {})", delta / 2.0)));
    }
    let j = n_bins / 2;
    let mut b = Vec::with_capacity(n_bins);
    let mut b2 = Vec::with_capacity(n_bins);
    for i in 1..=n_bins {
        let lo = grid.endpoint(i - 1);
        let birth = lo + delta / 4.0;
        if i == j {
            b.push((birth, grid.endpoint(j) - eps / 2.0));
            b2.push((birth, grid.endpoint(j) + eps / 2.0));
        } else {
            let p = (birth, lo + 3.0 * delta / 4.0);
            b.push(p);
            b2.push(p);
        }
    }
    Ok((
        grid,
        j,
        PersistenceDiagram::from_points(1, &b),
        PersistenceDiagram::from_points(1, &b2),
    ))
}

pub fn run_theorem_2_5_demo(eps: f64, n_bins: usize) -> Result<InstabilityReport> {
    let (grid, j, b, b2) = construction(eps, n_bins)?;
    let sup_dist = sup_distance(&betti_interval(&b, &grid), &betti_interval(&b2, &grid))?;
    let w1 = wasserstein(&b, &b2, 1.0)?;
    let stable_sup_dist = sup_distance(&stable_betti(&b, &grid), &stable_betti(&b2, &grid))?;
    let c = lipschitz_constant(&grid) / n_bins as f64;
    Ok(InstabilityReport {
        eps,
        n_bins,
        shifted_bin: j,
        sup_dist,
        w1,
        bottleneck: bottleneck(&b, &b2)?,
        ratio: sup_dist / w1,
        stable_sup_dist,
        stable_ratio: stable_sup_dist / w1,
        stable_bound: std::f64::consts::SQRT_2 * c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_values() {
        for eps in [1e-3, 1e-6] {
            let r = run_theorem_2_5_demo(eps, 4).unwrap();
            assert_eq!(r.sup_dist, 1.0);
            assert!((r.w1 - eps).abs() <= 1e-15);
            assert!((r.ratio * eps - 1.0).abs() < 1e-9);
            assert!(r.stable_ratio <= r.stable_bound);
        }
    }

    #[test]
    fn interval_vectors_match_construction() {
        let (grid, j, b, b2) = construction(1e-2, 4).unwrap();
        assert_eq!(j, 2);
        assert_eq!(betti_interval(&b, &grid).values, vec![1.0; 4]);
        assert_eq!(betti_interval(&b2, &grid).values, vec![1.0, 1.0, 2.0, 1.0]);
    }

    #[test]
    fn rejects_bad_eps() {
        assert!(construction(0.0, 4).is_err());
        assert!(construction(0.2, 4).is_err());
        assert!(construction(1e-3, 1).is_err());
    }
}
