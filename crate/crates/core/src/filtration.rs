//! Vietoris–Rips filtration up to dimension 2.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::pointcloud::DistanceMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Simplex {
    vertices: [u32; 3],
    dim: u8,
    pub value: f64,
}

impl Simplex {
    pub fn vertex(v: u32) -> Self {
        Self {
            vertices: [v, 0, 0],
            dim: 0,
            value: 0.0,
        }
    }

    pub fn edge(a: u32, b: u32, value: f64) -> Self {
        debug_assert!(a < b);
        Self {
            vertices: [a, b, 0],
            dim: 1,
            value,
        }
    }

    pub fn triangle(a: u32, b: u32, c: u32, value: f64) -> Self {
        debug_assert!(a < b && b < c);
        Self {
            vertices: [a, b, c],
            dim: 2,
            value,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    /// Sorted vertex indices.
    pub fn vertices(&self) -> &[u32] {
        &self.vertices[..=self.dim as usize]
    }

    /// Codimension-one faces; empty for a vertex.
    pub fn facets(&self) -> Vec<Vec<u32>> {
        let v = self.vertices();
        if v.len() == 1 {
            return Vec::new();
        }
        (0..v.len())
            .map(|skip| v.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x).collect())
            .collect()
    }
}

/// Simplices sorted by `(value, dim, vertices)`, so every face precedes its cofaces.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredComplex {
    pub simplices: Vec<Simplex>,
    pub threshold: f64,
    pub n_vertices: usize,
    pub max_dim: usize,
}

impl FilteredComplex {
    pub fn count_dim(&self, dim: usize) -> usize {
        self.simplices.iter().filter(|s| s.dim() == dim).count()
    }

    pub fn of_dim(&self, dim: usize) -> impl Iterator<Item = &Simplex> + '_ {
        self.simplices.iter().filter(move |s| s.dim() == dim)
    }

    /// One simplex per line: `value dim v0 [v1 [v2]]`.
    pub fn debug_dump(&self) -> String {
        let mut out = String::new();
        for s in &self.simplices {
            write!(out, "{} {}", s.value, s.dim).unwrap();
            for v in s.vertices() {
                write!(out, " {v}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

pub fn build_rips(d: &DistanceMatrix, threshold: f64, max_dim: usize) -> Result<FilteredComplex> {
    if max_dim > 2 {
        return Err(Error::UnsupportedDimension(max_dim));
    }
    if !(threshold >= 0.0) {
        return Err(Error::param("threshold must be non-negative"));
    }
    let n = d.len();
    let mut simplices: Vec<Simplex> = (0..n as u32).map(Simplex::vertex).collect();
    if max_dim == 0 {
        return Ok(FilteredComplex {
            simplices,
            threshold,
            n_vertices: n,
            max_dim,
        });
    }

    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let v = d.get(i, j);
            if v <= threshold {
                edges.push(Simplex::edge(i as u32, j as u32, v));
            }
        }
    }
    edges.sort_by(|a, b| a.value.total_cmp(&b.value).then_with(|| a.vertices.cmp(&b.vertices)));

    if max_dim == 1 {
        simplices.extend(edges);
        return Ok(FilteredComplex {
            simplices,
            threshold,
            n_vertices: n,
            max_dim,
        });
    }

    // Each triangle enters with the last of its three edges in edge order.
    let mut rank = vec![u32::MAX; n * n];
    for (r, e) in edges.iter().enumerate() {
        let [a, b, _] = e.vertices;
        rank[a as usize * n + b as usize] = r as u32;
        rank[b as usize * n + a as usize] = r as u32;
    }
    let mut start = 0;
    let mut group_triangles: Vec<Simplex> = Vec::new();
    while start < edges.len() {
        let value = edges[start].value;
        let mut end = start;
        while end < edges.len() && edges[end].value == value {
            end += 1;
        }
        group_triangles.clear();
        for (r, e) in edges.iter().enumerate().take(end).skip(start) {
            let r = r as u32;
            let [a, b, _] = e.vertices;
            let (ra, rb) = (&rank[a as usize * n..][..n], &rank[b as usize * n..][..n]);
            for k in 0..n {
                if ra[k] < r && rb[k] < r {
                    let mut t = [a, b, k as u32];
                    t.sort_unstable();
                    group_triangles.push(Simplex::triangle(t[0], t[1], t[2], value));
                }
            }
        }
        group_triangles.sort_by_key(|t| t.vertices);
        simplices.extend_from_slice(&edges[start..end]);
        simplices.extend_from_slice(&group_triangles);
        start = end;
    }

    Ok(FilteredComplex {
        simplices,
        threshold,
        n_vertices: n,
        max_dim,
    })
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use super::*;
    use crate::pointcloud::{gen_perturbed_lattice, gen_uniform, pairwise_distances, PointCloud, GeneratorKind};

    fn cloud(points: Vec<[f64; 2]>) -> DistanceMatrix {
        pairwise_distances(&PointCloud::from_points(points, 0, GeneratorKind::Uniform).unwrap())
    }

    fn square() -> DistanceMatrix {
        pairwise_distances(&gen_perturbed_lattice(2, 1.0, 0.0, 0.0, 0).unwrap())
    }

    fn assert_valid_order(fc: &FilteredComplex) {
        let index: HashMap<Vec<u32>, usize> =
            fc.simplices.iter().enumerate().map(|(i, s)| (s.vertices().to_vec(), i)).collect();
        for (i, s) in fc.simplices.iter().enumerate() {
            for f in s.facets() {
                let j = index[&f];
                assert!(j < i, "face {f:?} after coface {:?}", s.vertices());
                assert!(fc.simplices[j].value <= s.value);
            }
            assert!(s.value <= fc.threshold);
        }
        for w in fc.simplices.windows(2) {
            let key = |s: &Simplex| (s.value, s.dim, s.vertices);
            assert!(key(&w[0]) < key(&w[1]));
        }
    }

    #[test]
    fn square_corners_full_complex() {
        let fc = build_rips(&square(), 2.0, 2).unwrap();
        assert_eq!(fc.count_dim(0), 4);
        let edges: Vec<f64> = fc.of_dim(1).map(|s| s.value).collect();
        assert_eq!(edges.len(), 6);
        assert_eq!(edges.iter().filter(|&&v| v == 1.0).count(), 4);
        assert_eq!(edges.iter().filter(|&&v| v == 2f64.sqrt()).count(), 2);
        assert_eq!(fc.count_dim(2), 4);
        assert!(fc.of_dim(2).all(|s| s.value == 2f64.sqrt()));
        assert_valid_order(&fc);
    }

    #[test]
    fn zero_threshold_is_vertices_only() {
        let fc = build_rips(&square(), 0.0, 2).unwrap();
        assert_eq!(fc.simplices.len(), 4);
    }

    #[test]
    fn equilateral_tie_orders_edges_before_triangle() {
        let s = 0.3;
        let d = DistanceMatrix::from_rows(&[vec![0.0, s, s], vec![s, 0.0, s], vec![s, s, 0.0]]).unwrap();
        let fc = build_rips(&d, s, 2).unwrap();
        let dims: Vec<usize> = fc.simplices.iter().map(|x| x.dim()).collect();
        assert_eq!(dims, vec![0, 0, 0, 1, 1, 1, 2]);
        assert!(fc.simplices[3..].iter().all(|x| x.value == s));
        assert_valid_order(&fc);
    }

    #[test]
    fn unsupported_dimension() {
        assert!(matches!(build_rips(&square(), 1.0, 3), Err(Error::UnsupportedDimension(3))));
    }

    #[test]
    fn full_threshold_hits_binomial_counts() {
        let pc = gen_uniform(12, 1.0, 8).unwrap();
        let d = pairwise_distances(&pc);
        let fc = build_rips(&d, d.max_distance(), 2).unwrap();
        assert_eq!(fc.count_dim(1), 66);
        assert_eq!(fc.count_dim(2), 220);
        assert_valid_order(&fc);
        let partial = build_rips(&d, 0.4, 2).unwrap();
        assert!(partial.count_dim(2) < 220);
        assert_valid_order(&partial);
    }

    #[test]
    fn triangle_value_is_longest_edge() {
        let d = cloud(vec![[0.0, 0.0], [1.0, 0.0], [0.0, 2.0]]);
        let fc = build_rips(&d, 5.0, 2).unwrap();
        let t = fc.of_dim(2).next().unwrap();
        assert_eq!(t.value, 5f64.sqrt());
    }

    #[test]
    fn dump_format() {
        let fc = build_rips(&square(), 1.0, 1).unwrap();
        let dump = fc.debug_dump();
        assert!(dump.starts_with("0 0 0\n"));
        assert!(dump.contains("1 1 0 1\n"));
    }
}
