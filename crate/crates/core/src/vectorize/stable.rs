use std::f64::consts::PI;

use crate::diagram::FiltrationGrid;
use crate::error::Result;
use crate::homology::PersistenceDiagram;

use super::{BettiVector, Variant, Vectorizer};

/// How the distance to the bin centre enters the Gaussian exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NormExponent {
    /// `exp(-‖x-μ‖² / 2Δτ)`: the isotropic density with covariance `Δτ·I`.
    #[default]
    Squared,
    /// `exp(-‖x-μ‖ / 2Δτ)`: kept for comparison only, not a density.
    Unsquared,
}

/// Isotropic Gaussian with covariance `var·I` centred at `mean`, evaluated at `x`.
pub fn gaussian_density(x: [f64; 2], mean: [f64; 2], var: f64, exponent: NormExponent) -> f64 {
    let sq = (x[0] - mean[0]).powi(2) + (x[1] - mean[1]).powi(2);
    let r = match exponent {
        NormExponent::Squared => sq,
        NormExponent::Unsquared => sq.sqrt(),
    };
    (-r / (2.0 * var)).exp() / (2.0 * PI * var)
}

/// Sup of the gradient norm of the squared-exponent density: `e^{-1/2} / (2π Δτ^{3/2})`.
pub fn lipschitz_constant(grid: &FiltrationGrid) -> f64 {
    (-0.5f64).exp() / (2.0 * PI * grid.delta().powf(1.5))
}

/// `v_i = (1/N) Σ_j p_i(x_j)` with `p_i` centred at `(τ_{i-1}, τ_i)`.
pub fn stable_betti(pd: &PersistenceDiagram, grid: &FiltrationGrid) -> BettiVector {
    stable_betti_with(pd, grid, NormExponent::Squared)
}

pub fn stable_betti_with(pd: &PersistenceDiagram, grid: &FiltrationGrid, exponent: NormExponent) -> BettiVector {
    let var = grid.delta();
    let weight = 1.0 / grid.n_bins() as f64;
    let mut v = BettiVector::zeros(*grid, Variant::StableGaussian);
    for (i, slot) in v.values.iter_mut().enumerate() {
        let mean = [grid.endpoint(i), grid.endpoint(i + 1)];
        let total: f64 = pd
            .pairs
            .iter()
            .map(|p| gaussian_density([p.birth, p.death], mean, var, exponent))
            .sum();
        *slot = weight * total;
    }
    v
}

#[derive(Debug, Clone, Copy, Default)]
pub struct StableGaussian {
    pub exponent: NormExponent,
}

impl Vectorizer for StableGaussian {
    fn name(&self) -> &'static str {
        "stable-gaussian"
    }

    fn variant(&self) -> Variant {
        Variant::StableGaussian
    }

    fn vectorize_finite(&self, pd: &PersistenceDiagram, grid: &FiltrationGrid) -> Result<BettiVector> {
        Ok(stable_betti_with(pd, grid, self.exponent))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn peak_contribution() {
        let g = FiltrationGrid::new(1.0, 4).unwrap();
        let pd = PersistenceDiagram::from_points(1, &[(0.25, 0.5)]);
        let v = stable_betti(&pd, &g);
        let expected = 0.25 / (2.0 * PI * 0.25);
        assert!((v.values[1] - expected).abs() < 1e-15);
        assert!(v.values.iter().all(|&x| x <= expected));
    }

    #[test]
    fn worked_example_second_entry_of_perturbed_diagram() {
        // ‖(0.75, 0.8) − (0.5, 1)‖² = 41/400.
        let g = FiltrationGrid::new(1.0, 2).unwrap();
        let pd = PersistenceDiagram::from_points(1, &[(0.75, 0.8)]);
        let v = stable_betti(&pd, &g);
        let expected = (-41.0f64 / 400.0).exp() / (2.0 * PI);
        assert!((v.values[1] - expected).abs() < 1e-15);
    }

    #[test]
    fn lipschitz_constant_bounds_finite_differences() {
        let g = FiltrationGrid::new(1.0, 10).unwrap();
        let l = lipschitz_constant(&g);
        let mean = [0.3, 0.4];
        let var = g.delta();
        let mut max_slope: f64 = 0.0;
        let h = 1e-7;
        for k in 0..2000 {
            let r = k as f64 * 1e-3;
            let x = [mean[0] + r, mean[1]];
            let y = [mean[0] + r + h, mean[1]];
            let slope = (gaussian_density(y, mean, var, NormExponent::Squared)
                - gaussian_density(x, mean, var, NormExponent::Squared))
            .abs()
                / h;
            max_slope = max_slope.max(slope);
        }
        assert!(max_slope <= l * (1.0 + 1e-6));
        assert!(max_slope >= l * 0.999);
    }

    #[test]
    fn unsquared_differs() {
        let g = FiltrationGrid::new(1.0, 2).unwrap();
        let pd = PersistenceDiagram::from_points(1, &[(0.25, 0.45)]);
        let a = stable_betti_with(&pd, &g, NormExponent::Squared);
        let b = stable_betti_with(&pd, &g, NormExponent::Unsquared);
        assert_ne!(a.values, b.values);
    }
}
