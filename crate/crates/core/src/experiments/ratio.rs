//! Lipschitz ratio of the Gaussian-stabilised sequence on the two-point
//! example, as a function of the death shift ε.

use crate::diagram::FiltrationGrid;
use crate::homology::PersistenceDiagram;
use crate::metrics::{sup_distance, wasserstein};
use crate::vectorize::stable_betti;

/// Diagrams `B` and `B'`: the first point's death sits at `0.5 ∓ ε/2`.
pub fn example_diagrams(eps: f64) -> (PersistenceDiagram, PersistenceDiagram) {
    (
        PersistenceDiagram::from_points(1, &[(0.25, 0.5 - eps / 2.0), (0.75, 0.8)]),
        PersistenceDiagram::from_points(1, &[(0.25, 0.5 + eps / 2.0), (0.75, 0.8)]),
    )
}

/// `e^{-5/16} / 2π`, the ε → 0 limit of the ratio.
pub fn ratio_limit() -> f64 {
    (-5.0f64 / 16.0).exp() / (2.0 * std::f64::consts::PI)
}

/// `‖v(B) − v(B')‖_∞ / ε` on the grid `(τ_max = 1, N = 2)`.
pub fn ratio_at(eps: f64) -> f64 {
    let grid = FiltrationGrid::new(1.0, 2).expect("valid grid");
    let (b, b2) = example_diagrams(eps);
    sup_distance(&stable_betti(&b, &grid), &stable_betti(&b2, &grid)).expect("same grid") / eps
}

/// `(ε, W₁(B, B'), ratio)` at `n` log-spaced ε in `[eps_lo, eps_hi]`.
pub fn run_ratio_curve(eps_lo: f64, eps_hi: f64, n: usize) -> Vec<(f64, f64, f64)> {
    let (a, b) = (eps_lo.ln(), eps_hi.ln());
    (0..n)
        .map(|k| {
            let eps = if n == 1 {
                eps_lo
            } else {
                (a + (b - a) * k as f64 / (n - 1) as f64).exp()
            };
            let (x, y) = example_diagrams(eps);
            let w1 = wasserstein(&x, &y, 1.0).expect("finite diagrams");
            (eps, w1, ratio_at(eps))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limit_value() {
        assert!((ratio_limit() - 0.116440243790144).abs() < 1e-15);
    }

    #[test]
    fn ratio_decreases_towards_large_eps() {
        let curve = run_ratio_curve(1e-4, 1.0, 50);
        assert!(curve.windows(2).all(|w| w[0].2 >= w[1].2));
        assert!(curve.iter().all(|&(_, _, r)| r < 0.2));
    }
}
