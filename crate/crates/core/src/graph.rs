//! Graphs, generalised Cartan matrices and the finite/affine/hyperbolic
//! classifier.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linalg::{definiteness, Definiteness, IntMat};

/// Hard cap on the rank of user-supplied graphs.
pub const MAX_RANK: usize = 16;

/// A finite loop-permitting multigraph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    name: String,
    edge_mult: Vec<Vec<u32>>,
    loops: Vec<u32>,
}

impl Graph {
    pub fn new(name: impl Into<String>, edge_mult: Vec<Vec<u32>>, loops: Vec<u32>) -> Result<Self> {
        let n = edge_mult.len();
        if n == 0 {
            return Err(Error::InvalidGraph("graph needs at least one vertex".into()));
        }
        if n > MAX_RANK {
            return Err(Error::InvalidGraph(format!("rank {n} exceeds the cap of {MAX_RANK}")));
        }
        if loops.len() != n {
            return Err(Error::InvalidGraph("loop list length differs from vertex count".into()));
        }
        for (i, row) in edge_mult.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGraph("edge matrix is not square".into()));
            }
            if row[i] != 0 {
                return Err(Error::InvalidGraph(format!("nonzero diagonal at vertex {i}; use loops")));
            }
            for (j, &m) in row.iter().enumerate() {
                if edge_mult[j][i] != m {
                    return Err(Error::InvalidGraph(format!("edge ({i}, {j}) is asymmetric")));
                }
            }
        }
        Ok(Graph { name: name.into(), edge_mult, loops })
    }

    /// Loop-free graph from an edge list `(i, j, multiplicity)`.
    pub fn from_edges(name: impl Into<String>, n: usize, edges: &[(usize, usize, u32)]) -> Result<Self> {
        Self::from_edges_and_loops(name, n, edges, vec![0; n])
    }

    pub fn from_edges_and_loops(
        name: impl Into<String>,
        n: usize,
        edges: &[(usize, usize, u32)],
        loops: Vec<u32>,
    ) -> Result<Self> {
        let mut mult = vec![vec![0u32; n]; n];
        let mut seen = vec![vec![false; n]; n];
        for &(i, j, m) in edges {
            if i >= n || j >= n {
                return Err(Error::InvalidGraph(format!("edge ({i}, {j}) out of range")));
            }
            if i == j {
                return Err(Error::InvalidGraph(format!("self-edge at {i}; use loops")));
            }
            if seen[i][j] && mult[i][j] != m {
                return Err(Error::InvalidGraph(format!(
                    "edge ({i}, {j}) listed twice with multiplicities {} and {m}",
                    mult[i][j]
                )));
            }
            seen[i][j] = true;
            seen[j][i] = true;
            mult[i][j] = m;
            mult[j][i] = m;
        }
        Self::new(name, mult, loops)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.loops.len()
    }

    pub fn edge_mult(&self, i: usize, j: usize) -> u32 {
        self.edge_mult[i][j]
    }

    pub fn loops(&self, i: usize) -> u32 {
        self.loops[i]
    }

    pub fn has_loops(&self) -> bool {
        self.loops.iter().any(|&l| l > 0)
    }

    pub fn edges(&self) -> Vec<(usize, usize, u32)> {
        let n = self.rank();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.edge_mult[i][j] > 0 {
                    out.push((i, j, self.edge_mult[i][j]));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let all: Vec<usize> = (0..self.rank()).collect();
        self.components(&all).len() == 1
    }

    /// Connected components of the full subgraph on `vertices`.
    pub fn components(&self, vertices: &[usize]) -> Vec<Vec<usize>> {
        let mut comp = Vec::new();
        let mut done = vec![false; self.rank()];
        for &start in vertices {
            if done[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut c = Vec::new();
            done[start] = true;
            while let Some(v) = stack.pop() {
                c.push(v);
                for &u in vertices {
                    if !done[u] && self.edge_mult[v][u] > 0 {
                        done[u] = true;
                        stack.push(u);
                    }
                }
            }
            c.sort_unstable();
            comp.push(c);
        }
        comp
    }

    /// Generalised Cartan matrix `2I - Adj`, loops counted twice on the diagonal.
    pub fn gcm(&self) -> Gcm {
        let n = self.rank();
        let mut a = IntMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let v = if i == j { 2 - 2 * self.loops[i] as i64 } else { -(self.edge_mult[i][j] as i64) };
                a.set(i, j, v);
            }
        }
        Gcm(a)
    }

    pub fn classify(&self) -> Result<GraphType> {
        self.classify_with(Exec::default())
    }

    /// A graph is hyperbolic when its GCM is indefinite and every proper full
    /// subgraph has only finite or affine components. All `2^n - 2` proper
    /// vertex subsets are checked.
    pub fn classify_with(&self, exec: Exec) -> Result<GraphType> {
        if !self.is_connected() {
            return Err(Error::DisconnectedGraph);
        }
        let a = self.gcm();
        match definiteness(a.matrix()) {
            Definiteness::PositiveDefinite => return Ok(GraphType::Finite),
            Definiteness::PositiveSemidefinite(ker) => {
                return Ok(if ker.len() == 1 {
                    GraphType::Affine { delta: ker[0].clone() }
                } else {
                    GraphType::IndefiniteNonHyperbolic
                });
            }
            Definiteness::Indefinite => {}
        }
        let n = self.rank();
        let full = (1usize << n) - 1;
        let tame = exec.all_range(1..full, |mask| {
            let vs: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            self.components(&vs)
                .iter()
                .all(|c| !matches!(definiteness(&a.matrix().principal(c)), Definiteness::Indefinite))
        });
        Ok(if tame { GraphType::Hyperbolic } else { GraphType::IndefiniteNonHyperbolic })
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            name: self.name.clone(),
            vertices: self.rank(),
            edges: self.edges().into_iter().map(|(i, j, m)| [i, j, m as usize]).collect(),
            loops: self.loops.clone(),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let g: GraphJson = serde_json::from_str(s)?;
        g.into_graph()
    }
}

/// On-disk graph description with 0-based vertex indices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub name: String,
    pub vertices: usize,
    pub edges: Vec<[usize; 3]>,
    #[serde(default)]
    pub loops: Vec<u32>,
}

impl GraphJson {
    pub fn into_graph(self) -> Result<Graph> {
        let loops = if self.loops.is_empty() { vec![0; self.vertices] } else { self.loops };
        let edges: Vec<(usize, usize, u32)> = self.edges.iter().map(|e| (e[0], e[1], e[2] as u32)).collect();
        Graph::from_edges_and_loops(self.name, self.vertices, &edges, loops)
    }
}

/// Symmetric generalised Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gcm(IntMat);

impl Gcm {
    pub fn matrix(&self) -> &IntMat {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0.get(i, j)
    }

    pub fn rank(&self) -> usize {
        self.0.dim()
    }

    pub fn det(&self) -> i64 {
        self.0.det()
    }

    pub fn adjugate(&self) -> IntMat {
        self.0.adjugate()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GraphType {
    Finite,
    Affine { delta: Vec<i64> },
    Hyperbolic,
    IndefiniteNonHyperbolic,
}

impl GraphType {
    pub fn is_affine_or_hyperbolic(&self) -> bool {
        matches!(self, GraphType::Affine { .. } | GraphType::Hyperbolic)
    }

    pub fn label(&self) -> &'static str {
        match self {
            GraphType::Finite => "finite",
            GraphType::Affine { .. } => "affine",
            GraphType::Hyperbolic => "hyperbolic",
            GraphType::IndefiniteNonHyperbolic => "indefinite_non_hyperbolic",
        }
    }
}

impl fmt::Display for GraphType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}
