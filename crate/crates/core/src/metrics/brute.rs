//! Exhaustive enumeration of partial matchings, used as a test oracle.

use crate::error::{Error, Result};
use crate::homology::PersistenceDiagram;

use super::{diag_dist, finite_points, linf};

pub const BRUTE_FORCE_LIMIT: usize = 8;

/// Minimum over all partial matchings of `(cost sum, max edge)` where
/// unmatched points pay their distance to the diagonal.
fn enumerate(xs: &[[f64; 2]], ys: &[[f64; 2]], p: f64) -> (f64, f64) {
    struct Search<'a> {
        xs: &'a [[f64; 2]],
        ys: &'a [[f64; 2]],
        p: f64,
        used: Vec<bool>,
        best_sum: f64,
        best_max: f64,
    }
    impl Search<'_> {
        fn rec(&mut self, i: usize, sum: f64, max: f64) {
            if i == self.xs.len() {
                let (mut s, mut m) = (sum, max);
                for (j, y) in self.ys.iter().enumerate() {
                    if !self.used[j] {
                        let c = diag_dist(*y);
                        s += c.powf(self.p);
                        m = m.max(c);
                    }
                }
                self.best_sum = self.best_sum.min(s);
                self.best_max = self.best_max.min(m);
                return;
            }
            let x = self.xs[i];
            let c = diag_dist(x);
            self.rec(i + 1, sum + c.powf(self.p), max.max(c));
            for j in 0..self.ys.len() {
                if !self.used[j] {
                    self.used[j] = true;
                    let c = linf(x, self.ys[j]);
                    self.rec(i + 1, sum + c.powf(self.p), max.max(c));
                    self.used[j] = false;
                }
            }
        }
    }
    let mut s = Search {
        xs,
        ys,
        p,
        used: vec![false; ys.len()],
        best_sum: f64::INFINITY,
        best_max: f64::INFINITY,
    };
    s.rec(0, 0.0, 0.0);
    (s.best_sum, s.best_max)
}

type PointPair = (Vec<[f64; 2]>, Vec<[f64; 2]>);

fn checked_points(x: &PersistenceDiagram, y: &PersistenceDiagram) -> Result<PointPair> {
    let (xs, ys) = (finite_points(x)?, finite_points(y)?);
    let largest = xs.len().max(ys.len());
    if largest > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge(largest, BRUTE_FORCE_LIMIT));
    }
    Ok((xs, ys))
}

pub fn brute_force_wasserstein(x: &PersistenceDiagram, y: &PersistenceDiagram, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::param("p must be >= 1"));
    }
    let (xs, ys) = checked_points(x, y)?;
    Ok(enumerate(&xs, &ys, p).0.powf(1.0 / p))
}

pub fn brute_force_bottleneck(x: &PersistenceDiagram, y: &PersistenceDiagram) -> Result<f64> {
    let (xs, ys) = checked_points(x, y)?;
    Ok(enumerate(&xs, &ys, 1.0).1)
}
