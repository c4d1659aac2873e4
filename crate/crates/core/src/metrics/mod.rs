//! Distances between persistence diagrams and between Betti vectors.
//!
//! Diagrams are compared with the ℓ∞ ground metric; a point left unmatched
//! pays its ℓ∞ distance to the diagonal, `(d - b) / 2`.

mod bottleneck;
mod brute;
mod hungarian;

use crate::error::{Error, Result};
use crate::homology::PersistenceDiagram;
use crate::vectorize::BettiVector;

pub use brute::{brute_force_bottleneck, brute_force_wasserstein, BRUTE_FORCE_LIMIT};

#[inline]
pub(crate) fn linf(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).abs().max((a[1] - b[1]).abs())
}

#[inline]
pub(crate) fn diag_dist(a: [f64; 2]) -> f64 {
    (a[1] - a[0]).abs() / 2.0
}

pub(crate) fn finite_points(pd: &PersistenceDiagram) -> Result<Vec<[f64; 2]>> {
    pd.pairs
        .iter()
        .map(|p| {
            if p.birth.is_finite() && p.death.is_finite() {
                Ok([p.birth, p.death])
            } else {
                Err(Error::param("diagram has non-finite points; truncate essential classes first"))
            }
        })
        .collect()
}

/// Slot in a matching: a diagram point or the diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Point(usize),
    Diagonal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Matching {
    pub pairs: Vec<(Slot, Slot)>,
    /// Sum of `edge^p`.
    pub cost: f64,
}

/// Square `(n+m)` cost matrix: X points and Y's diagonal copies as rows, Y
/// points and X's diagonal copies as columns. Entries are raw ℓ∞ edge lengths.
fn augmented_lengths(xs: &[[f64; 2]], ys: &[[f64; 2]]) -> Vec<f64> {
    let (n, m) = (xs.len(), ys.len());
    let size = n + m;
    let mut c = vec![0.0; size * size];
    for i in 0..size {
        for j in 0..size {
            c[i * size + j] = match (i < n, j < m) {
                (true, true) => linf(xs[i], ys[j]),
                (true, false) => diag_dist(xs[i]),
                (false, true) => diag_dist(ys[j]),
                (false, false) => 0.0,
            };
        }
    }
    c
}

/// Optimal matching for the `p`-Wasserstein objective.
pub fn wasserstein_matching(x: &PersistenceDiagram, y: &PersistenceDiagram, p: f64) -> Result<Matching> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::param("p must be a finite real >= 1"));
    }
    let (xs, ys) = (finite_points(x)?, finite_points(y)?);
    let (n, m) = (xs.len(), ys.len());
    let size = n + m;
    let lengths = augmented_lengths(&xs, &ys);
    let cost: Vec<f64> = lengths.iter().map(|l| l.powf(p)).collect();
    let assign = hungarian::solve(&cost, size);
    let mut pairs = Vec::new();
    let mut total = 0.0;
    for (i, &j) in assign.iter().enumerate() {
        let slot = match (i < n, j < m) {
            (true, true) => (Slot::Point(i), Slot::Point(j)),
            (true, false) => (Slot::Point(i), Slot::Diagonal),
            (false, true) => (Slot::Diagonal, Slot::Point(j)),
            (false, false) => continue,
        };
        total += cost[i * size + j];
        pairs.push(slot);
    }
    Ok(Matching { pairs, cost: total })
}

/// Orders the arguments canonically so that `d(x, y)` and `d(y, x)` run
/// the identical computation.
fn canonical<'a>(x: &'a PersistenceDiagram, y: &'a PersistenceDiagram) -> (&'a PersistenceDiagram, &'a PersistenceDiagram) {
    let key = |pd: &PersistenceDiagram| {
        let mut k: Vec<(u64, u64)> = pd.pairs.iter().map(|p| (p.birth.to_bits(), p.death.to_bits())).collect();
        k.sort_unstable();
        k
    };
    if key(x) <= key(y) {
        (x, y)
    } else {
        (y, x)
    }
}

pub fn wasserstein(x: &PersistenceDiagram, y: &PersistenceDiagram, p: f64) -> Result<f64> {
    let (x, y) = canonical(x, y);
    Ok(wasserstein_matching(x, y, p)?.cost.powf(1.0 / p))
}

pub fn bottleneck(x: &PersistenceDiagram, y: &PersistenceDiagram) -> Result<f64> {
    let (xs, ys) = (finite_points(x)?, finite_points(y)?);
    let lengths = augmented_lengths(&xs, &ys);
    Ok(bottleneck::min_max_matching(&lengths, xs.len() + ys.len()))
}

/// `max_i |u_i - v_i|`.
pub fn sup_distance(u: &BettiVector, v: &BettiVector) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch(u.len(), v.len()));
    }
    if u.grid != v.grid {
        return Err(Error::param("vectors are on different grids"));
    }
    Ok(u.values.iter().zip(&v.values).fold(0.0, |m, (a, b)| m.max((a - b).abs())))
}
