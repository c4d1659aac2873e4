use crate::diagram::{truncate_essential, FiltrationGrid};
use crate::error::Result;
use crate::filtration::build_rips;
use crate::homology::{persistence, PersistenceDiagram};
use crate::pointcloud::{pairwise_distances, PointCloud};
use crate::vectorize::{normalized_cumulative, BettiVector, Vectorizer};

/// Raw diagrams (essential classes kept) of the Rips filtration truncated at `tau_max`.
pub fn cloud_diagrams(pc: &PointCloud, tau_max: f64, dims: &[usize]) -> Result<Vec<PersistenceDiagram>> {
    let max_dim = if dims.contains(&1) { 2 } else { 1 };
    let fc = build_rips(&pairwise_distances(pc), tau_max, max_dim)?;
    Ok(persistence(&fc, dims))
}

/// Vectorizes a diagram and post-processes it to the normalized cumulative sequence.
pub fn normalized_sequence(v: &dyn Vectorizer, pd: &PersistenceDiagram, grid: &FiltrationGrid) -> Result<BettiVector> {
    Ok(normalized_cumulative(&v.vectorize_finite(&truncate_essential(pd, grid.tau_max()), grid)?))
}
