//! Seeded point-cloud generators and Euclidean distance matrices.
//!
//! Each generator family implements [`CloudGenerator`] and is registered by
//! name in a [`GeneratorRegistry`], so callers pick one at runtime.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::Stream;

/// Vertices of the chaos-game triangle.
pub const SIERPINSKI_VERTICES: [[f64; 2]; 3] = [[0.0, 0.0], [1.0, 0.0], [0.5, 0.866_025_403_784_438_6]];

pub const DEFAULT_BURN_IN: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GeneratorKind {
    PerturbedLattice,
    Uniform,
    Sierpinski,
    UniformWithHole,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 4] = [
        GeneratorKind::PerturbedLattice,
        GeneratorKind::Uniform,
        GeneratorKind::Sierpinski,
        GeneratorKind::UniformWithHole,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::PerturbedLattice => "lattice",
            GeneratorKind::Uniform => "uniform",
            GeneratorKind::Sierpinski => "sierpinski",
            GeneratorKind::UniformWithHole => "hole",
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    pub points: Vec<[f64; 2]>,
    pub seed: u64,
    pub generator: GeneratorKind,
    pub domain_scale: f64,
}

impl PointCloud {
    /// Wraps externally supplied points (e.g. read from CSV).
    pub fn from_points(points: Vec<[f64; 2]>, seed: u64, generator: GeneratorKind) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::param("point cloud must be non-empty"));
        }
        if points.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::param("point coordinates must be finite"));
        }
        let domain_scale = points
            .iter()
            .flatten()
            .fold(0.0_f64, |m, c| m.max(c.abs()))
            .max(f64::MIN_POSITIVE);
        Ok(Self {
            points,
            seed,
            generator,
            domain_scale,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Regular `n_side × n_side` lattice on `[0, (1+epsilon)·domain_scale]²`,
/// each coordinate shifted by an independent uniform draw in `[-perturb, perturb]`.
pub fn gen_perturbed_lattice(
    n_side: usize,
    domain_scale: f64,
    epsilon: f64,
    perturb: f64,
    seed: u64,
) -> Result<PointCloud> {
    if n_side < 2 {
        return Err(Error::param("lattice needs n_side >= 2"));
    }
    if !(domain_scale > 0.0) || !domain_scale.is_finite() {
        return Err(Error::param("domain_scale must be positive"));
    }
    if !(1.0 + epsilon > 0.0) {
        return Err(Error::param("1 + epsilon must be positive"));
    }
    if !(perturb >= 0.0) || !perturb.is_finite() {
        return Err(Error::param("perturbation magnitude must be non-negative"));
    }
    let extent = (1.0 + epsilon) * domain_scale;
    let spacing = extent / (n_side - 1) as f64;
    let mut rng = Stream::new(seed);
    let mut points = Vec::with_capacity(n_side * n_side);
    for i in 0..n_side {
        for j in 0..n_side {
            let mut p = [i as f64 * spacing, j as f64 * spacing];
            if perturb > 0.0 {
                p[0] += rng.uniform(-perturb, perturb);
                p[1] += rng.uniform(-perturb, perturb);
            }
            points.push(p);
        }
    }
    Ok(PointCloud {
        points,
        seed,
        generator: GeneratorKind::PerturbedLattice,
        domain_scale: extent,
    })
}

/// `n` i.i.d. points uniform on `[0, side]²`.
pub fn gen_uniform(n: usize, side: f64, seed: u64) -> Result<PointCloud> {
    if n == 0 {
        return Err(Error::param("n must be >= 1"));
    }
    if !(side > 0.0) || !side.is_finite() {
        return Err(Error::param("side must be positive"));
    }
    let mut rng = Stream::new(seed);
    let points = (0..n)
        .map(|_| [rng.uniform(0.0, side), rng.uniform(0.0, side)])
        .collect();
    Ok(PointCloud {
        points,
        seed,
        generator: GeneratorKind::Uniform,
        domain_scale: side,
    })
}

/// Chaos game on [`SIERPINSKI_VERTICES`]. The start point is uniform in the
/// triangle; the first `burn_in` iterates are dropped.
pub fn gen_sierpinski(n: usize, seed: u64, burn_in: usize) -> Result<PointCloud> {
    if n == 0 {
        return Err(Error::param("n must be >= 1"));
    }
    let [a, b, c] = SIERPINSKI_VERTICES;
    let mut rng = Stream::new(seed);
    let (mut u, mut v) = (rng.unit(), rng.unit());
    if u + v > 1.0 {
        u = 1.0 - u;
        v = 1.0 - v;
    }
    let mut p = [
        a[0] + u * (b[0] - a[0]) + v * (c[0] - a[0]),
        a[1] + u * (b[1] - a[1]) + v * (c[1] - a[1]),
    ];
    let mut points = Vec::with_capacity(n);
    for step in 0..burn_in + n {
        let t = SIERPINSKI_VERTICES[rng.index(3)];
        p = [0.5 * (p[0] + t[0]), 0.5 * (p[1] + t[1])];
        if step >= burn_in {
            points.push(p);
        }
    }
    Ok(PointCloud {
        points,
        seed,
        generator: GeneratorKind::Sierpinski,
        domain_scale: 1.0,
    })
}

/// Whether `p` lies in the open square hole `(lo, hi)²`.
pub fn in_hole(p: [f64; 2], hole_lo: f64, hole_hi: f64) -> bool {
    p.iter().all(|&c| hole_lo < c && c < hole_hi)
}

/// `n` points uniform on `[0,1]² \ (hole_lo, hole_hi)²` by rejection.
pub fn gen_uniform_with_hole(n: usize, hole_lo: f64, hole_hi: f64, seed: u64) -> Result<PointCloud> {
    if n == 0 {
        return Err(Error::param("n must be >= 1"));
    }
    if !(0.0 <= hole_lo && hole_lo <= hole_hi && hole_hi <= 1.0) {
        return Err(Error::param("hole must satisfy 0 <= lo <= hi <= 1"));
    }
    if hole_lo == 0.0 && hole_hi == 1.0 {
        return Err(Error::param("hole covers the whole domain"));
    }
    let mut rng = Stream::new(seed);
    let mut points = Vec::with_capacity(n);
    while points.len() < n {
        let p = [rng.unit(), rng.unit()];
        if !in_hole(p, hole_lo, hole_hi) {
            points.push(p);
        }
    }
    Ok(PointCloud {
        points,
        seed,
        generator: GeneratorKind::UniformWithHole,
        domain_scale: 1.0,
    })
}

/// Dense symmetric matrix of pairwise Euclidean distances.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<f64>,
}

impl DistanceMatrix {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }

    pub fn max_distance(&self) -> f64 {
        self.d.iter().copied().fold(0.0, f64::max)
    }

    /// Builds a matrix from explicit entries; checks symmetry and the zero diagonal.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut d = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::param("distance matrix must be square"));
            }
            d.extend_from_slice(row);
        }
        for i in 0..n {
            if d[i * n + i] != 0.0 {
                return Err(Error::param("distance matrix diagonal must be zero"));
            }
            for j in 0..n {
                let v = d[i * n + j];
                if !(v >= 0.0) || v != d[j * n + i] {
                    return Err(Error::param("distance matrix must be symmetric and non-negative"));
                }
            }
        }
        Ok(Self { n, d })
    }
}

pub fn pairwise_distances(pc: &PointCloud) -> DistanceMatrix {
    let n = pc.points.len();
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        let p = pc.points[i];
        for j in i + 1..n {
            let q = pc.points[j];
            let v = (p[0] - q[0]).hypot(p[1] - q[1]);
            d[i * n + j] = v;
            d[j * n + i] = v;
        }
    }
    DistanceMatrix { n, d }
}

/// Parameters shared by all generator strategies; each strategy reads the
/// fields it needs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CloudParams {
    pub n: usize,
    pub seed: u64,
    /// Side of the sampling square (lattice: unscaled extent).
    pub scale: f64,
    /// Relative domain stretch, lattice only.
    pub epsilon: f64,
    /// Per-coordinate lattice jitter bound.
    pub perturb: f64,
    pub burn_in: usize,
    pub hole_lo: f64,
    pub hole_hi: f64,
}

impl Default for CloudParams {
    fn default() -> Self {
        Self {
            n: 225,
            seed: 0,
            scale: 1.0,
            epsilon: 0.0,
            perturb: 0.0,
            burn_in: DEFAULT_BURN_IN,
            hole_lo: 0.15,
            hole_hi: 0.85,
        }
    }
}

pub trait CloudGenerator: Send + Sync {
    fn kind(&self) -> GeneratorKind;
    fn generate(&self, params: &CloudParams) -> Result<PointCloud>;
}

pub struct LatticeGenerator;
pub struct UniformGenerator;
pub struct SierpinskiGenerator;
pub struct HoleGenerator;

impl CloudGenerator for LatticeGenerator {
    fn kind(&self) -> GeneratorKind {
        GeneratorKind::PerturbedLattice
    }

    fn generate(&self, p: &CloudParams) -> Result<PointCloud> {
        let n_side = (p.n as f64).sqrt().round() as usize;
        if n_side * n_side != p.n {
            return Err(Error::param(format!("lattice needs a square point count, got {}", p.n)));
        }
        gen_perturbed_lattice(n_side, p.scale, p.epsilon, p.perturb, p.seed)
    }
}

impl CloudGenerator for UniformGenerator {
    fn kind(&self) -> GeneratorKind {
        GeneratorKind::Uniform
    }

    fn generate(&self, p: &CloudParams) -> Result<PointCloud> {
        gen_uniform(p.n, p.scale, p.seed)
    }
}

impl CloudGenerator for SierpinskiGenerator {
    fn kind(&self) -> GeneratorKind {
        GeneratorKind::Sierpinski
    }

    fn generate(&self, p: &CloudParams) -> Result<PointCloud> {
        gen_sierpinski(p.n, p.seed, p.burn_in)
    }
}

impl CloudGenerator for HoleGenerator {
    fn kind(&self) -> GeneratorKind {
        GeneratorKind::UniformWithHole
    }

    fn generate(&self, p: &CloudParams) -> Result<PointCloud> {
        gen_uniform_with_hole(p.n, p.hole_lo, p.hole_hi, p.seed)
    }
}

pub struct GeneratorRegistry {
    generators: BTreeMap<&'static str, Box<dyn CloudGenerator>>,
}

impl GeneratorRegistry {
    pub fn empty() -> Self {
        Self {
            generators: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, generator: Box<dyn CloudGenerator>) {
        self.generators.insert(generator.kind().name(), generator);
    }

    pub fn get(&self, name: &str) -> Result<&dyn CloudGenerator> {
        self.generators
            .get(name)
            .map(|g| g.as_ref())
            .ok_or_else(|| Error::UnknownStrategy {
                kind: "generator",
                name: name.to_string(),
            })
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.generators.keys().copied()
    }
}

impl Default for GeneratorRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(LatticeGenerator));
        r.register(Box::new(UniformGenerator));
        r.register(Box::new(SierpinskiGenerator));
        r.register(Box::new(HoleGenerator));
        r
    }
}
