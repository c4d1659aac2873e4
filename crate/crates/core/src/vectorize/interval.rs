use crate::diagram::{region_contains_with, BirthBoundary, FiltrationGrid};
use crate::error::Result;
use crate::homology::PersistenceDiagram;

use super::{BettiVector, Variant, Vectorizer};

/// `v_i = |D_i ∩ B|`. H0 diagrams admit births at exactly 0.
pub fn betti_interval(pd: &PersistenceDiagram, grid: &FiltrationGrid) -> BettiVector {
    let boundary = BirthBoundary::for_dim(pd.dim);
    let mut v = BettiVector::zeros(*grid, Variant::Interval);
    for (i, slot) in v.values.iter_mut().enumerate() {
        *slot = pd.pairs.iter().filter(|p| region_contains_with(grid, i + 1, p, boundary)).count() as f64;
    }
    v
}

pub struct Interval;

impl Vectorizer for Interval {
    fn name(&self) -> &'static str {
        "interval"
    }

    fn variant(&self) -> Variant {
        Variant::Interval
    }

    fn vectorize_finite(&self, pd: &PersistenceDiagram, grid: &FiltrationGrid) -> Result<BettiVector> {
        Ok(betti_interval(pd, grid))
    }
}
