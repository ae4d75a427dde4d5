//! Value types shared by every module: the vertex problem, points on the
//! graph, sampling grids and tabulated output.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Matching condition imposed at the vertex in addition to continuity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VertexCondition {
    /// `sum_j u_j'(0) = 0`.
    Kirchhoff,
    /// `sum_j u_j'(0) = alpha u(0)` with `alpha > 0`.
    ExnerSeba { alpha: f64 },
    /// `u(0) = 0`, the `alpha -> infinity` limit.
    Dirichlet,
}

/// A single vertex with `n_edges` semi-infinite leads and its vertex condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarGraphConfig {
    n_edges: usize,
    condition: VertexCondition,
}

impl StarGraphConfig {
    /// Builds the Kirchhoff (`alpha = 0`) or delta-vertex (`alpha > 0`) problem.
    pub fn new(n_edges: usize, alpha: f64) -> Result<Self> {
        if n_edges == 0 {
            return Err(Error::domain("a star graph needs at least one edge"));
        }
        if !alpha.is_finite() {
            return Err(Error::domain(format!("alpha must be finite, got {alpha}")));
        }
        if alpha < 0.0 {
            return Err(Error::domain(format!(
                "alpha must be nonnegative, got {alpha} (attractive vertices are not supported)"
            )));
        }
        let condition = if alpha == 0.0 {
            VertexCondition::Kirchhoff
        } else {
            VertexCondition::ExnerSeba { alpha }
        };
        Ok(StarGraphConfig { n_edges, condition })
    }

    /// Builds the Dirichlet star, `u(0) = 0`.
    pub fn dirichlet(n_edges: usize) -> Result<Self> {
        if n_edges == 0 {
            return Err(Error::domain("a star graph needs at least one edge"));
        }
        Ok(StarGraphConfig {
            n_edges,
            condition: VertexCondition::Dirichlet,
        })
    }

    pub fn n_edges(&self) -> usize {
        self.n_edges
    }

    pub fn condition(&self) -> VertexCondition {
        self.condition
    }

    /// Vertex strength; `None` for Dirichlet, `Some(0.0)` for Kirchhoff.
    pub fn alpha(&self) -> Option<f64> {
        match self.condition {
            VertexCondition::Kirchhoff => Some(0.0),
            VertexCondition::ExnerSeba { alpha } => Some(alpha),
            VertexCondition::Dirichlet => None,
        }
    }

    pub fn is_dirichlet(&self) -> bool {
        matches!(self.condition, VertexCondition::Dirichlet)
    }

    /// `N` as a float, for formulas.
    pub(crate) fn n(&self) -> f64 {
        self.n_edges as f64
    }

    /// Fails unless `point` names an edge of this graph.
    pub fn check_point(&self, point: EdgePoint) -> Result<()> {
        if point.edge() > self.n_edges {
            return Err(Error::domain(format!(
                "edge {} out of range for a star with {} edges",
                point.edge(),
                self.n_edges
            )));
        }
        Ok(())
    }

    pub(crate) fn check_edge(&self, edge: usize) -> Result<()> {
        if edge == 0 || edge > self.n_edges {
            return Err(Error::domain(format!(
                "edge {edge} out of range 1..={}",
                self.n_edges
            )));
        }
        Ok(())
    }
}

impl fmt::Display for StarGraphConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.condition {
            VertexCondition::Kirchhoff => write!(f, "N={} Kirchhoff", self.n_edges),
            VertexCondition::ExnerSeba { alpha } => write!(f, "N={} alpha={alpha}", self.n_edges),
            VertexCondition::Dirichlet => write!(f, "N={} Dirichlet", self.n_edges),
        }
    }
}

/// A location on the graph: edge label (1-based) and distance from the vertex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgePoint {
    edge: usize,
    coordinate: f64,
}

impl EdgePoint {
    pub fn new(edge: usize, coordinate: f64) -> Result<Self> {
        if edge == 0 {
            return Err(Error::domain("edges are numbered from 1"));
        }
        if !(coordinate >= 0.0) || !coordinate.is_finite() {
            return Err(Error::domain(format!(
                "coordinate must be finite and nonnegative, got {coordinate}"
            )));
        }
        Ok(EdgePoint { edge, coordinate })
    }

    pub fn edge(&self) -> usize {
        self.edge
    }

    pub fn coordinate(&self) -> f64 {
        self.coordinate
    }
}

/// Uniform grid `lo, lo + h, ..., hi` with `count >= 2` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    lo: f64,
    hi: f64,
    count: usize,
}

impl Grid {
    pub fn new(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || !(lo < hi) {
            return Err(Error::domain(format!("grid needs lo < hi, got {lo}..{hi}")));
        }
        if count < 2 {
            return Err(Error::domain(format!("grid needs at least 2 points, got {count}")));
        }
        Ok(Grid { lo, hi, count })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn spacing(&self) -> f64 {
        (self.hi - self.lo) / (self.count - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        // Pin the last point to `hi` exactly.
        if i + 1 == self.count {
            self.hi
        } else {
            self.lo + i as f64 * self.spacing()
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.point(i)).collect()
    }
}

/// Parses the command-line form `lo:hi:count`.
impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Usage(format!("expected lo:hi:count, got '{s}'")));
        }
        let parse = |p: &str| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::Usage(format!("bad number '{p}' in grid '{s}'")))
        };
        let lo = parse(parts[0])?;
        let hi = parse(parts[1])?;
        let count = parts[2]
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Usage(format!("bad count '{}' in grid '{s}'", parts[2])))?;
        Grid::new(lo, hi, count).map_err(|e| Error::Usage(e.to_string()))
    }
}

/// Named columns of reals plus scalar metadata (used for Dirac weights that
/// must not be folded into the numeric rows).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TabulatedSweep {
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
    metadata: Vec<(String, f64)>,
}

impl TabulatedSweep {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        TabulatedSweep {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
            metadata: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<f64>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::Contract(format!(
                "row has {} entries but the table has {} columns",
                row.len(),
                self.columns.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn push_metadata(&mut self, key: impl Into<String>, value: f64) {
        self.metadata.push((key.into(), value));
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn metadata(&self) -> &[(String, f64)] {
        &self.metadata
    }
}
