//! Graph families, edge-list I/O, validation, and the uniform initial state.
//!
//! Every graph accepted here is simple, undirected, connected and regular;
//! the rest of the pipeline relies on `L = D*I - A`, which only holds for
//! regular graphs, so validation rejects anything else outright.

use std::collections::VecDeque;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Built-in graph families plus a tag for user-supplied graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Complete graph on `N` vertices.
    Complete { n: usize },
    /// Bipartite double cover of the all-ones block: sigma_x (x) J_n on 2n vertices.
    Dihedral { n: usize },
    /// Complete multipartite graph with `m` parts of `n` vertices each.
    Mpartite { m: usize, n: usize },
    /// Crown graph on 2n vertices: u_i ~ v_j iff i != j.
    Crown { n: usize },
    Custom,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Complete { n } => write!(f, "complete(N={n})"),
            Family::Dihedral { n } => write!(f, "dihedral(n={n})"),
            Family::Mpartite { m, n } => write!(f, "mpartite(m={m}, n={n})"),
            Family::Crown { n } => write!(f, "crown(n={n})"),
            Family::Custom => write!(f, "custom"),
        }
    }
}

/// Simple undirected regular connected graph with dense 0/1 adjacency.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    adjacency: DMatrix<f64>,
    degree: usize,
    family: Family,
}

impl Graph {
    /// Build one of the named families.
    ///
    /// Degrees: `N-1` (complete), `n` (dihedral), `n(m-1)` (m-partite),
    /// `n-1` (crown).
    pub fn build_family(family: Family) -> Result<Graph> {
        let adjacency = match family {
            Family::Complete { n } => {
                if n < 2 {
                    return Err(Error::InvalidParameter(format!(
                        "complete graph needs N >= 2, got {n}"
                    )));
                }
                DMatrix::from_fn(n, n, |i, j| if i != j { 1.0 } else { 0.0 })
            }
            Family::Dihedral { n } => {
                if n < 2 {
                    return Err(Error::InvalidParameter(format!(
                        "dihedral graph needs n >= 2, got {n}"
                    )));
                }
                // sigma_x (x) J_n: two blocks of n vertices, every cross pair adjacent.
                DMatrix::from_fn(2 * n, 2 * n, |i, j| {
                    if (i < n) != (j < n) {
                        1.0
                    } else {
                        0.0
                    }
                })
            }
            Family::Mpartite { m, n } => {
                if m < 2 || n < 1 {
                    return Err(Error::InvalidParameter(format!(
                        "m-partite graph needs m >= 2 and n >= 1, got m={m}, n={n}"
                    )));
                }
                // K_m (x) J_n: vertex v belongs to part v / n.
                DMatrix::from_fn(m * n, m * n, |i, j| {
                    if i / n != j / n {
                        1.0
                    } else {
                        0.0
                    }
                })
            }
            Family::Crown { n } => {
                if n < 3 {
                    return Err(Error::InvalidParameter(format!(
                        "crown graph needs n >= 3, got {n}"
                    )));
                }
                // Vertices 0..n are u_i, n..2n are v_i; u_i ~ v_j iff i != j.
                DMatrix::from_fn(2 * n, 2 * n, |i, j| {
                    let (a, b) = (i.min(j), i.max(j));
                    if a < n && b >= n && a != b - n {
                        1.0
                    } else {
                        0.0
                    }
                })
            }
            Family::Custom => {
                return Err(Error::InvalidParameter(
                    "custom graphs are built from adjacency or edge lists".into(),
                ))
            }
        };
        Graph::from_adjacency_tagged(adjacency, family)
    }

    /// Build from a dense adjacency matrix, running full validation.
    pub fn from_adjacency(adjacency: DMatrix<f64>) -> Result<Graph> {
        Graph::from_adjacency_tagged(adjacency, Family::Custom)
    }

    fn from_adjacency_tagged(adjacency: DMatrix<f64>, family: Family) -> Result<Graph> {
        let n = adjacency.nrows();
        if adjacency.ncols() != n || n == 0 {
            return Err(Error::InvalidParameter(
                "adjacency matrix must be square and nonempty".into(),
            ));
        }
        let degree = validate_adjacency(&adjacency)?;
        Ok(Graph {
            n,
            adjacency,
            degree,
            family,
        })
    }

    /// Parse a plain-text edge list: one `u v` pair of 0-based indices per
    /// line, `#` starting a comment, blank lines ignored, duplicate edges
    /// collapsed. The vertex count is one past the largest index seen.
    pub fn load_edge_list(text: &str) -> Result<Graph> {
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut max_vertex = 0usize;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            let line = match line.find('#') {
                Some(pos) => &line[..pos],
                None => line,
            };
            if line.trim().is_empty() {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let (a, b) = match (tokens.next(), tokens.next(), tokens.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => {
                    return Err(Error::MalformedEdgeLine {
                        line: idx + 1,
                        reason: "expected exactly two vertex indices".into(),
                    })
                }
            };
            let parse = |tok: &str| -> Result<usize> {
                tok.parse().map_err(|_| Error::MalformedEdgeLine {
                    line: idx + 1,
                    reason: format!("invalid vertex index '{tok}'"),
                })
            };
            let (u, v) = (parse(a)?, parse(b)?);
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            max_vertex = max_vertex.max(u).max(v);
            edges.push((u.min(v), u.max(v)));
        }
        if edges.is_empty() {
            return Err(Error::MalformedEdgeLine {
                line: 0,
                reason: "edge list contains no edges".into(),
            });
        }
        let n = max_vertex + 1;
        let mut adjacency = DMatrix::zeros(n, n);
        for (u, v) in edges {
            adjacency[(u, v)] = 1.0;
            adjacency[(v, u)] = 1.0;
        }
        Graph::from_adjacency(adjacency)
    }

    /// Canonical edge-list rendering: sorted `u v` lines with `u < v`.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.adjacency[(u, v)] != 0.0 {
                    out.push_str(&format!("{u} {v}\n"));
                }
            }
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn adjacency(&self) -> &DMatrix<f64> {
        &self.adjacency
    }

    pub fn edge_count(&self) -> usize {
        self.n * self.degree / 2
    }

    /// Uniform superposition over all vertices; amplitudes `1/sqrt(N)`.
    pub fn uniform_state(&self) -> StateVector {
        let amp = Complex64::new(1.0 / (self.n as f64).sqrt(), 0.0);
        StateVector::new(DVector::from_element(self.n, amp))
    }
}

/// Re-validate an adjacency matrix: symmetric, zero diagonal, 0/1 entries,
/// regular, connected. Returns the common degree.
pub fn validate(g: &Graph) -> Result<usize> {
    validate_adjacency(&g.adjacency)
}

fn validate_adjacency(adjacency: &DMatrix<f64>) -> Result<usize> {
    let n = adjacency.nrows();
    for i in 0..n {
        if adjacency[(i, i)] != 0.0 {
            return Err(Error::SelfLoop(i));
        }
        for j in (i + 1)..n {
            let a = adjacency[(i, j)];
            let b = adjacency[(j, i)];
            if a != b {
                return Err(Error::NotSymmetric(i, j));
            }
            if a != 0.0 && a != 1.0 {
                return Err(Error::InvalidParameter(format!(
                    "adjacency entry at ({i}, {j}) is {a}, expected 0 or 1"
                )));
            }
        }
    }
    let degree_of = |i: usize| adjacency.row(i).iter().filter(|&&x| x != 0.0).count();
    let degree = degree_of(0);
    for i in 1..n {
        let d = degree_of(i);
        if d != degree {
            return Err(Error::NotRegular {
                vertex: i,
                expected: degree,
                got: d,
            });
        }
    }
    // Breadth-first reachability from vertex 0.
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = queue.pop_front() {
        for v in 0..n {
            if adjacency[(u, v)] != 0.0 && !seen[v] {
                seen[v] = true;
                count += 1;
                queue.push_back(v);
            }
        }
    }
    if count != n {
        return Err(Error::NotConnected);
    }
    Ok(degree)
}

/// Complex state on the vertex set.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    coords: DVector<Complex64>,
}

impl StateVector {
    pub fn new(coords: DVector<Complex64>) -> StateVector {
        StateVector { coords }
    }

    /// Standard basis vector `e_index`.
    pub fn basis_state(n: usize, index: usize) -> Result<StateVector> {
        if index >= n {
            return Err(Error::VertexOutOfRange { index, len: n });
        }
        let mut coords = DVector::from_element(n, Complex64::default());
        coords[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { coords })
    }

    pub fn from_real(values: &[f64]) -> StateVector {
        StateVector {
            coords: DVector::from_iterator(
                values.len(),
                values.iter().map(|&x| Complex64::new(x, 0.0)),
            ),
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &DVector<Complex64> {
        &self.coords
    }

    pub fn norm(&self) -> f64 {
        self.coords.norm()
    }

    /// Scale to unit norm; errors on the zero vector.
    pub fn normalize(&mut self) -> Result<()> {
        let norm = self.norm();
        if norm == 0.0 {
            return Err(Error::DomainError("cannot normalize the zero vector".into()));
        }
        self.coords /= Complex64::new(norm, 0.0);
        Ok(())
    }
}
