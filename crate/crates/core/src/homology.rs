//! Persistence pairs in dimensions 0 and 1 over GF(2), and a static
//! Betti-number oracle based on boundary-matrix ranks.

use serde::{Deserialize, Serialize};

use crate::filtration::{build_rips, FilteredComplex};
use crate::pointcloud::DistanceMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PersistencePair {
    pub birth: f64,
    /// `f64::INFINITY` for essential classes.
    pub death: f64,
    pub dim: usize,
}

impl PersistencePair {
    pub fn new(birth: f64, death: f64, dim: usize) -> Self {
        Self { birth, death, dim }
    }

    pub fn essential(birth: f64, dim: usize) -> Self {
        Self::new(birth, f64::INFINITY, dim)
    }

    pub fn is_essential(&self) -> bool {
        self.death == f64::INFINITY
    }

    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }

    /// `birth <= tau < death`.
    pub fn alive_at(&self, tau: f64) -> bool {
        self.birth <= tau && tau < self.death
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PersistenceDiagram {
    pub dim: usize,
    pub pairs: Vec<PersistencePair>,
}

impl PersistenceDiagram {
    pub fn new(dim: usize, pairs: Vec<PersistencePair>) -> Self {
        Self { dim, pairs }
    }

    /// Diagram of dimension `dim` from `(birth, death)` tuples.
    pub fn from_points(dim: usize, points: &[(f64, f64)]) -> Self {
        Self {
            dim,
            pairs: points.iter().map(|&(b, d)| PersistencePair::new(b, d, dim)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn alive_count(&self, tau: f64) -> usize {
        self.pairs.iter().filter(|p| p.alive_at(tau)).count()
    }

    pub fn essential_count(&self) -> usize {
        self.pairs.iter().filter(|p| p.is_essential()).count()
    }
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Zero-dimensional persistence by union-find over the edges in filtration
/// order. All vertices are born at 0, so each merge kills one class at the
/// edge value.
pub fn persistence_h0(fc: &FilteredComplex) -> PersistenceDiagram {
    let mut uf = UnionFind::new(fc.n_vertices);
    let mut pairs = Vec::new();
    let mut components = fc.n_vertices;
    for e in fc.of_dim(1) {
        let v = e.vertices();
        if uf.union(v[0] as usize, v[1] as usize) {
            components -= 1;
            if e.value > 0.0 {
                pairs.push(PersistencePair::new(0.0, e.value, 0));
            }
        }
    }
    pairs.extend((0..components).map(|_| PersistencePair::essential(0.0, 0)));
    PersistenceDiagram::new(0, pairs)
}

/// Symmetric difference of two sorted index lists.
fn xor_into<T: Ord + Copy>(acc: &mut Vec<T>, other: &[T], scratch: &mut Vec<T>) {
    scratch.clear();
    let (mut i, mut j) = (0, 0);
    while i < acc.len() && j < other.len() {
        match acc[i].cmp(&other[j]) {
            std::cmp::Ordering::Less => {
                scratch.push(acc[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                scratch.push(other[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    scratch.extend_from_slice(&acc[i..]);
    scratch.extend_from_slice(&other[j..]);
    std::mem::swap(acc, scratch);
}

/// One-dimensional persistence by column reduction of the triangle boundary
/// matrix in filtration order. Reduction stops once every cycle-creating
/// edge has been paired.
pub fn persistence_h1_boundary(fc: &FilteredComplex) -> PersistenceDiagram {
    let n = fc.n_vertices;
    let edges: Vec<_> = fc.of_dim(1).collect();
    let mut edge_rank = vec![u32::MAX; n * n];
    let mut uf = UnionFind::new(n);
    let mut positive = vec![false; edges.len()];
    for (r, e) in edges.iter().enumerate() {
        let v = e.vertices();
        let (a, b) = (v[0] as usize, v[1] as usize);
        edge_rank[a * n + b] = r as u32;
        edge_rank[b * n + a] = r as u32;
        positive[r] = !uf.union(a, b);
    }
    let n_positive = positive.iter().filter(|&&p| p).count();

    let mut reduced: Vec<Option<Vec<u32>>> = vec![None; edges.len()];
    let mut paired = 0;
    let mut pairs = Vec::new();
    let mut col = Vec::with_capacity(16);
    let mut scratch = Vec::with_capacity(16);
    for t in fc.of_dim(2) {
        if paired == n_positive {
            break;
        }
        let v = t.vertices();
        let (a, b, c) = (v[0] as usize, v[1] as usize, v[2] as usize);
        col.clear();
        col.extend([edge_rank[a * n + b], edge_rank[a * n + c], edge_rank[b * n + c]]);
        col.sort_unstable();
        while let Some(&low) = col.last() {
            match &reduced[low as usize] {
                Some(pivot_col) => xor_into(&mut col, pivot_col, &mut scratch),
                None => break,
            }
        }
        if let Some(&low) = col.last() {
            debug_assert!(positive[low as usize]);
            let birth = edges[low as usize].value;
            if t.value > birth {
                pairs.push(PersistencePair::new(birth, t.value, 1));
            }
            reduced[low as usize] = Some(col.clone());
            paired += 1;
        }
    }
    for (r, e) in edges.iter().enumerate() {
        if positive[r] && reduced[r].is_none() {
            pairs.push(PersistencePair::essential(e.value, 1));
        }
    }
    PersistenceDiagram::new(1, pairs)
}

/// Position of a triangle in filtration order: `(value bits, packed vertices)`.
/// Non-negative `f64` bit patterns sort like the values.
type TriangleKey = (u64, u64);

fn triangle_key(value: f64, mut v: [u32; 3]) -> TriangleKey {
    v.sort_unstable();
    (value.to_bits(), (v[0] as u64) << 42 | (v[1] as u64) << 21 | v[2] as u64)
}

/// One-dimensional persistence by reducing the anti-transposed boundary
/// matrix (coboundary columns of edges, processed from the last edge to the
/// first). Edges that kill H0 classes are cleared up front. The pairing is
/// the same as [`persistence_h1_boundary`], but most columns are paired
/// without any reduction, and the triangles are enumerated from the edge
/// lengths on the fly.
pub fn persistence_h1(fc: &FilteredComplex) -> PersistenceDiagram {
    let n = fc.n_vertices;
    assert!(n < 1 << 21, "vertex index does not fit the triangle key");
    let edges: Vec<_> = fc.of_dim(1).collect();
    let mut length = vec![f64::NAN; n * n];
    let mut uf = UnionFind::new(n);
    let mut positive = Vec::new();
    for (r, e) in edges.iter().enumerate() {
        let v = e.vertices();
        let (a, b) = (v[0] as usize, v[1] as usize);
        length[a * n + b] = e.value;
        length[b * n + a] = e.value;
        if !uf.union(a, b) {
            positive.push(r);
        }
    }
    let with_triangles = fc.max_dim >= 2;

    let coboundary = |e: &crate::filtration::Simplex, out: &mut Vec<TriangleKey>, sort: bool| {
        out.clear();
        if !with_triangles {
            return;
        }
        let v = e.vertices();
        let (a, b) = (v[0] as usize, v[1] as usize);
        let (ra, rb) = (&length[a * n..][..n], &length[b * n..][..n]);
        for k in 0..n {
            // NaN marks a missing edge and fails both comparisons.
            let (x, y) = (ra[k], rb[k]);
            if x >= 0.0 && y >= 0.0 && k != a && k != b {
                out.push(triangle_key(e.value.max(x).max(y), [a as u32, b as u32, k as u32]));
            }
        }
        if sort {
            out.sort_unstable();
        }
    };

    // Pivot triangle -> owning edge, plus its reduced column when it differs
    // from the plain coboundary.
    let mut pivots: std::collections::HashMap<TriangleKey, (usize, Option<Vec<TriangleKey>>)> =
        std::collections::HashMap::new();
    let mut pairs = Vec::new();
    let mut col = Vec::new();
    let mut other = Vec::new();
    let mut scratch = Vec::new();
    for &r in positive.iter().rev() {
        let e = edges[r];
        coboundary(e, &mut col, false);
        // Apparent pair: the first cofacet is not yet a pivot.
        if let Some(&low) = col.iter().min() {
            if let std::collections::hash_map::Entry::Vacant(slot) = pivots.entry(low) {
                let death = f64::from_bits(low.0);
                if death > e.value {
                    pairs.push(PersistencePair::new(e.value, death, 1));
                }
                slot.insert((r, None));
                continue;
            }
        }
        col.sort_unstable();
        let mut reduced = false;
        while let Some(&low) = col.first() {
            match pivots.get(&low) {
                Some((_, Some(stored))) => xor_into(&mut col, stored, &mut scratch),
                Some(&(owner, None)) => {
                    coboundary(edges[owner], &mut other, true);
                    xor_into(&mut col, &other, &mut scratch);
                }
                None => break,
            }
            reduced = true;
        }
        match col.first() {
            Some(&low) => {
                let death = f64::from_bits(low.0);
                if death > e.value {
                    pairs.push(PersistencePair::new(e.value, death, 1));
                }
                pivots.insert(low, (r, reduced.then(|| col.clone())));
            }
            None => pairs.push(PersistencePair::essential(e.value, 1)),
        }
    }
    pairs.reverse();
    PersistenceDiagram::new(1, pairs)
}

/// Diagrams for each requested dimension (0 and/or 1).
pub fn persistence(fc: &FilteredComplex, dims: &[usize]) -> Vec<PersistenceDiagram> {
    dims.iter()
        .map(|&d| match d {
            0 => persistence_h0(fc),
            _ => persistence_h1(fc),
        })
        .collect()
}

/// Rank over GF(2) of a matrix given as bit-packed rows.
fn gf2_rank(mut rows: Vec<Vec<u64>>, n_cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..n_cols {
        let (word, bit) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][word] & bit != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[word] & bit != 0 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `(β0, β1)` of the static Rips complex at scale `tau`, from boundary ranks
/// computed by dense Gaussian elimination.
pub fn betti_numbers_at(d: &DistanceMatrix, tau: f64) -> (usize, usize) {
    let fc = build_rips(d, tau.max(0.0), 2).expect("dimension 2 is supported");
    let n = fc.n_vertices;
    let edges: Vec<_> = fc.of_dim(1).map(|s| s.vertices().to_vec()).collect();
    let words = |k: usize| k.div_ceil(64).max(1);

    // ∂1: one row per edge, columns are vertices.
    let d1: Vec<Vec<u64>> = edges
        .iter()
        .map(|e| {
            let mut row = vec![0u64; words(n)];
            for &v in e {
                row[v as usize / 64] ^= 1 << (v % 64);
            }
            row
        })
        .collect();
    let rank1 = gf2_rank(d1, n);

    let index: std::collections::HashMap<&[u32], usize> =
        edges.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
    let d2: Vec<Vec<u64>> = fc
        .of_dim(2)
        .map(|t| {
            let mut row = vec![0u64; words(edges.len())];
            for f in t.facets() {
                let i = index[f.as_slice()];
                row[i / 64] ^= 1 << (i % 64);
            }
            row
        })
        .collect();
    let rank2 = gf2_rank(d2, edges.len());

    (n - rank1, edges.len() - rank1 - rank2)
}
