//! Plain-text CSV formats for clouds, diagrams and vectors.
//!
//! Reals are written in the shortest representation that parses back to the
//! identical `f64`, so saved intermediates reproduce fused pipeline output.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::homology::{PersistenceDiagram, PersistencePair};
use crate::pointcloud::{GeneratorKind, PointCloud};

pub fn fmt_real(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".to_string()
    } else {
        format!("{v}")
    }
}

/// Fixed-point rendering with `sig` significant digits.
pub fn fmt_significant(v: f64, sig: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return fmt_real(v);
    }
    let exp = v.abs().log10().floor() as i64;
    let decimals = (sig as i64 - 1 - exp).max(0) as usize;
    format!("{v:.decimals$}")
}

fn parse_real(s: &str, line: usize) -> Result<f64> {
    let t = s.trim();
    t.parse::<f64>().map_err(|_| Error::Parse {
        line,
        msg: format!("not a number: `{t}`"),
    })
}

fn data_lines(text: &str, header: &str) -> Result<Vec<(usize, Vec<String>)>> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, h)) if h.trim() == header => {}
        Some((i, h)) => {
            return Err(Error::Parse {
                line: i + 1,
                msg: format!("expected header `{header}`, found `{}`", h.trim()),
            })
        }
        None => {
            return Err(Error::Parse {
                line: 1,
                msg: "empty file".into(),
            })
        }
    }
    Ok(lines
        .map(|(i, l)| (i + 1, l.split(',').map(|c| c.trim().to_string()).collect()))
        .collect())
}

pub fn write_points(pc: &PointCloud) -> String {
    let mut out = String::from("x,y\n");
    for p in &pc.points {
        writeln!(out, "{},{}", fmt_real(p[0]), fmt_real(p[1])).unwrap();
    }
    out
}

pub fn read_points(text: &str) -> Result<PointCloud> {
    let mut points = Vec::new();
    for (line, cols) in data_lines(text, "x,y")? {
        if cols.len() != 2 {
            return Err(Error::Parse {
                line,
                msg: "expected 2 columns".into(),
            });
        }
        points.push([parse_real(&cols[0], line)?, parse_real(&cols[1], line)?]);
    }
    PointCloud::from_points(points, 0, GeneratorKind::Uniform)
}

pub fn write_diagrams(diagrams: &[PersistenceDiagram]) -> String {
    let mut out = String::from("dim,birth,death\n");
    for pd in diagrams {
        for p in &pd.pairs {
            writeln!(out, "{},{},{}", p.dim, fmt_real(p.birth), fmt_real(p.death)).unwrap();
        }
    }
    out
}

/// Reads a diagram CSV and splits it by dimension (ascending).
pub fn read_diagrams(text: &str) -> Result<Vec<PersistenceDiagram>> {
    let mut by_dim: std::collections::BTreeMap<usize, Vec<PersistencePair>> = Default::default();
    for (line, cols) in data_lines(text, "dim,birth,death")? {
        if cols.len() != 3 {
            return Err(Error::Parse {
                line,
                msg: "expected 3 columns".into(),
            });
        }
        let dim = cols[0].parse::<usize>().map_err(|_| Error::Parse {
            line,
            msg: format!("bad dimension `{}`", cols[0]),
        })?;
        let pair = PersistencePair::new(parse_real(&cols[1], line)?, parse_real(&cols[2], line)?, dim);
        by_dim.entry(dim).or_default().push(pair);
    }
    Ok(by_dim.into_iter().map(|(dim, pairs)| PersistenceDiagram::new(dim, pairs)).collect())
}

/// One row of the vector CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorRow {
    pub variant: String,
    pub dim: usize,
    pub seed: u64,
    pub values: Vec<f64>,
}

pub fn vector_header(n_bins: usize) -> String {
    let mut h = String::from("variant,dim,seed");
    for i in 1..=n_bins {
        write!(h, ",v{i}").unwrap();
    }
    h
}

pub fn write_vectors(rows: &[VectorRow], n_bins: usize) -> String {
    let mut out = vector_header(n_bins);
    out.push('\n');
    for r in rows {
        write!(out, "{},{},{}", r.variant, r.dim, r.seed).unwrap();
        for v in &r.values {
            write!(out, ",{}", fmt_real(*v)).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn read_vectors(text: &str) -> Result<Vec<VectorRow>> {
    let first = text.lines().next().unwrap_or_default().trim();
    let n_bins = first.split(',').count().saturating_sub(3);
    let mut rows = Vec::new();
    for (line, cols) in data_lines(text, &vector_header(n_bins))? {
        if cols.len() != n_bins + 3 {
            return Err(Error::Parse {
                line,
                msg: format!("expected {} columns", n_bins + 3),
            });
        }
        let bad = |what: &str| Error::Parse {
            line,
            msg: format!("bad {what}"),
        };
        rows.push(VectorRow {
            variant: cols[0].clone(),
            dim: cols[1].parse().map_err(|_| bad("dim"))?,
            seed: cols[2].parse().map_err(|_| bad("seed"))?,
            values: cols[3..].iter().map(|c| parse_real(c, line)).collect::<Result<_>>()?,
        });
    }
    Ok(rows)
}
