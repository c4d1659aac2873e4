use crate::diagram::{region_contains_with, BirthBoundary, FiltrationGrid};
use crate::error::{Error, Result};
use crate::homology::{PersistenceDiagram, PersistencePair};

use super::{BettiVector, Variant, Vectorizer};

/// Per-bin widening factor `γ_i`.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum GammaRule {
    /// `γ_i = (N - i + 1) / 10`.
    #[default]
    Decreasing,
    Constant(f64),
    PerBin(Vec<f64>),
}

impl GammaRule {
    pub fn gammas(&self, n_bins: usize) -> Result<Vec<f64>> {
        let g: Vec<f64> = match self {
            GammaRule::Decreasing => (1..=n_bins).map(|i| (n_bins - i + 1) as f64 / 10.0).collect(),
            GammaRule::Constant(c) => vec![*c; n_bins],
            GammaRule::PerBin(v) => {
                if v.len() != n_bins {
                    return Err(Error::LengthMismatch(v.len(), n_bins));
                }
                v.clone()
            }
        };
        if g.iter().any(|x| !(*x >= 0.0)) {
            return Err(Error::param("gamma must be non-negative"));
        }
        Ok(g)
    }
}

/// Membership in `X_i = {τ_i < b < τ_i + γΔτ} ∪ {τ_{i-1} - γΔτ < d < τ_{i-1}}`.
fn in_margin(grid: &FiltrationGrid, i: usize, gamma: f64, p: &PersistencePair) -> bool {
    let (lo, hi) = (grid.endpoint(i - 1), grid.endpoint(i));
    let w = gamma * grid.delta();
    (hi < p.birth && p.birth < hi + w) || (lo - w < p.death && p.death < lo)
}

/// `v_i = |(D_i ∪ X_i) ∩ B|`, each diagram point counted at most once per bin.
pub fn betti_new(pd: &PersistenceDiagram, grid: &FiltrationGrid, gamma: &GammaRule) -> Result<BettiVector> {
    let gammas = gamma.gammas(grid.n_bins())?;
    let boundary = BirthBoundary::for_dim(pd.dim);
    let mut v = BettiVector::zeros(*grid, Variant::NewExtended);
    for (k, slot) in v.values.iter_mut().enumerate() {
        let i = k + 1;
        *slot = pd
            .pairs
            .iter()
            .filter(|p| region_contains_with(grid, i, p, boundary) || in_margin(grid, i, gammas[k], p))
            .count() as f64;
    }
    Ok(v)
}

#[derive(Debug, Clone, Default)]
pub struct NewExtended {
    pub gamma: GammaRule,
}

impl Vectorizer for NewExtended {
    fn name(&self) -> &'static str {
        "new-extended"
    }

    fn variant(&self) -> Variant {
        Variant::NewExtended
    }

    fn vectorize_finite(&self, pd: &PersistenceDiagram, grid: &FiltrationGrid) -> Result<BettiVector> {
        betti_new(pd, grid, &self.gamma)
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::vectorize::betti_interval;

    #[test]
    fn default_gammas() {
        let g = GammaRule::Decreasing.gammas(20).unwrap();
        assert_eq!(g[0], 2.0);
        assert_eq!(g[19], 0.1);
        assert!(GammaRule::Constant(-0.1).gammas(3).is_err());
        assert!(GammaRule::PerBin(vec![0.1]).gammas(3).is_err());
    }

    #[test]
    fn late_birth_counted_in_previous_bin() {
        let g = FiltrationGrid::new(1.0, 20).unwrap();
        let pd = PersistenceDiagram::from_points(1, &[(0.05 + 1e-9, 0.07)]);
        let v = betti_new(&pd, &g, &GammaRule::Decreasing).unwrap();
        assert_eq!(v.values[0], 1.0);
        assert_eq!(v.values[1], 1.0);
        assert_eq!(betti_interval(&pd, &g).values[0], 0.0);
    }

    #[test]
    fn empty_is_zero() {
        let g = FiltrationGrid::new(1.0, 5).unwrap();
        let v = betti_new(&PersistenceDiagram::default(), &g, &GammaRule::Decreasing).unwrap();
        assert_eq!(v.values, vec![0.0; 5]);
    }

    #[test]
    fn no_double_count() {
        let g = FiltrationGrid::new(1.0, 2).unwrap();
        // In D_1 and in the death margin of bin 2? Use a wide constant gamma.
        let pd = PersistenceDiagram::from_points(1, &[(0.2, 0.45)]);
        let v = betti_new(&pd, &g, &GammaRule::Constant(1.0)).unwrap();
        assert_eq!(v.values, vec![1.0, 1.0]);
    }

    proptest! {
        #[test]
        fn zero_gamma_reduces_to_interval(
            pts in proptest::collection::vec((0.0f64..1.0, 0.0f64..1.0), 0..20),
            n in 1usize..25,
        ) {
            let g = FiltrationGrid::new(1.0, n).unwrap();
            let pd = PersistenceDiagram::from_points(1, &pts.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect::<Vec<_>>());
            let a = betti_new(&pd, &g, &GammaRule::Constant(0.0)).unwrap();
            prop_assert_eq!(a.values, betti_interval(&pd, &g).values);
        }

        #[test]
        fn extension_only_adds(
            pts in proptest::collection::vec((0.0f64..1.0, 0.0f64..1.0), 0..20),
            n in 1usize..25,
        ) {
            let g = FiltrationGrid::new(1.0, n).unwrap();
            let pd = PersistenceDiagram::from_points(1, &pts.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect::<Vec<_>>());
            let a = betti_new(&pd, &g, &GammaRule::Decreasing).unwrap();
            let b = betti_interval(&pd, &g);
            for (x, y) in a.values.iter().zip(&b.values) {
                prop_assert!(x >= y);
            }
        }
    }
}
