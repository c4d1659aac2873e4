use crate::diagram::{to_barcode, Barcode, FiltrationGrid};
use crate::error::Result;
use crate::homology::PersistenceDiagram;

use super::{BettiVector, Variant, Vectorizer};

/// `v_i = #{bars [b, d) : b <= τ_i < d}` for the sample points `τ_1 … τ_N`.
pub fn betti_grid_sample(bc: &Barcode, grid: &FiltrationGrid) -> BettiVector {
    let mut v = BettiVector::zeros(*grid, Variant::GridSample);
    for (i, slot) in v.values.iter_mut().enumerate() {
        let tau = grid.endpoint(i + 1);
        *slot = bc.bars.iter().filter(|b| b.start <= tau && tau < b.end).count() as f64;
    }
    v
}

pub struct GridSample;

impl Vectorizer for GridSample {
    fn name(&self) -> &'static str {
        "grid-sample"
    }

    fn variant(&self) -> Variant {
        Variant::GridSample
    }

    fn vectorize_finite(&self, pd: &PersistenceDiagram, grid: &FiltrationGrid) -> Result<BettiVector> {
        Ok(betti_grid_sample(&to_barcode(pd), grid))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Bar;

    fn bars(b: &[(f64, f64)]) -> Barcode {
        Barcode {
            dim: 1,
            bars: b.iter().map(|&(start, end)| Bar { start, end }).collect(),
        }
    }

    #[test]
    fn empty_is_zero() {
        let g = FiltrationGrid::new(1.0, 5).unwrap();
        assert_eq!(betti_grid_sample(&bars(&[]), &g).values, vec![0.0; 5]);
    }

    #[test]
    fn covering_bar_is_all_ones() {
        let g = FiltrationGrid::new(1.0, 5).unwrap();
        assert_eq!(betti_grid_sample(&bars(&[(0.0, 1.5)]), &g).values, vec![1.0; 5]);
    }

    #[test]
    fn bar_between_samples_is_invisible() {
        let g = FiltrationGrid::new(1.0, 4).unwrap();
        assert_eq!(betti_grid_sample(&bars(&[(0.3, 0.45)]), &g).values, vec![0.0; 4]);
    }
}
