//! Weighted dual graphs of klt surface singularities.
//!
//! A vertex weight `n` stands for an exceptional curve with self-intersection
//! `-n` on the minimal resolution, so every weight is at least 2. Graphs are
//! trees; the bracket notation covers chains `[n1,...,nk]` and three-branch
//! stars `[c;[...],[...],[...]]`, where each branch is listed from the vertex
//! next to the centre outwards.

mod arith;
mod dynkin;
mod parse;
pub mod table;

use std::fmt;

pub use arith::{
    spectral_value_chain, BoundaryIncidence, DiscrepancyError, DiscrepancyVector, SpectralValueError,
};
pub use dynkin::DynkinType;
pub use parse::{parse_dynkin, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    Chain,
    Star,
    GeneralTree,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("vertex {vertex} has weight {weight}; weights must be at least 2")]
    WeightTooSmall { vertex: usize, weight: i64 },
    #[error("edge ({0}, {1}) refers to a missing vertex")]
    EdgeOutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) is repeated")]
    DuplicateEdge(usize, usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph contains a cycle")]
    Cycle,
    #[error("star branch {0} is empty")]
    EmptyBranch(usize),
    #[error("only chains and three-branch stars have a bracket form")]
    UnsupportedShape,
}

/// Canonical bracket form of a chain or star; the derived order is the
/// order used to sort a [`DynkinType`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Canonical {
    Chain(Vec<u32>),
    Star { center: u32, branches: [Vec<u32>; 3] },
}

/// A weighted tree of exceptional curves. Vertex ids are indices into
/// `weights`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DualGraph {
    weights: Vec<u32>,
    edges: Vec<(usize, usize)>,
    shape: Shape,
}

impl DualGraph {
    pub fn chain(weights: Vec<u32>) -> Result<Self, GraphError> {
        let edges = (1..weights.len()).map(|i| (i - 1, i)).collect();
        Self::from_edges(weights, edges)
    }

    /// Star with the given centre weight; vertex 0 is the centre and each
    /// branch follows in order, starting next to the centre.
    pub fn star(center: u32, branches: [Vec<u32>; 3]) -> Result<Self, GraphError> {
        if let Some(i) = branches.iter().position(Vec::is_empty) {
            return Err(GraphError::EmptyBranch(i));
        }
        let mut weights = vec![center];
        let mut edges = Vec::new();
        for branch in &branches {
            let mut prev = 0;
            for &w in branch {
                let id = weights.len();
                weights.push(w);
                edges.push((prev, id));
                prev = id;
            }
        }
        Self::from_edges(weights, edges)
    }

    /// Validates a tree with weights at least 2 and classifies its shape.
    pub fn from_edges(weights: Vec<u32>, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let n = weights.len();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if let Some((vertex, &w)) = weights.iter().enumerate().find(|(_, &w)| w < 2) {
            return Err(GraphError::WeightTooSmall { vertex, weight: w.into() });
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(GraphError::EdgeOutOfRange(a, b));
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        // Connected with n - 1 edges <=> tree.
        let adj = adjacency(n, &normalized);
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(GraphError::Disconnected);
        }
        if normalized.len() != n - 1 {
            return Err(GraphError::Cycle);
        }
        let max_degree = adj.iter().map(Vec::len).max().unwrap_or(0);
        let branch_points = adj.iter().filter(|a| a.len() >= 3).count();
        let shape = match (max_degree, branch_points) {
            (0..=2, _) => Shape::Chain,
            (3, 1) => Shape::Star,
            _ => Shape::GeneralTree,
        };
        Ok(DualGraph { weights, edges: normalized, shape })
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// Number of exceptional curves; for Du Val graphs this is the index.
    pub fn vertex_count(&self) -> usize {
        self.weights.len()
    }

    pub fn is_du_val(&self) -> bool {
        self.weights.iter().all(|&w| w == 2)
    }

    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        adjacency(self.weights.len(), &self.edges)
    }

    /// Chain weights read from one end, if this is a chain.
    pub fn chain_weights(&self) -> Option<Vec<u32>> {
        if self.shape != Shape::Chain {
            return None;
        }
        let adj = self.neighbours();
        let start = (0..self.weights.len()).find(|&v| adj[v].len() <= 1)?;
        Some(walk(&adj, start, usize::MAX).into_iter().map(|v| self.weights[v]).collect())
    }

    pub fn canonical(&self) -> Result<Canonical, GraphError> {
        match self.shape {
            Shape::Chain => {
                let forward = self.chain_weights().ok_or(GraphError::UnsupportedShape)?;
                let mut backward = forward.clone();
                backward.reverse();
                Ok(Canonical::Chain(forward.min(backward)))
            }
            Shape::Star => {
                let adj = self.neighbours();
                let center = (0..self.weights.len())
                    .find(|&v| adj[v].len() == 3)
                    .ok_or(GraphError::UnsupportedShape)?;
                let mut branches: Vec<Vec<u32>> = adj[center]
                    .iter()
                    .map(|&first| {
                        walk(&adj, first, center).into_iter().map(|v| self.weights[v]).collect()
                    })
                    .collect();
                branches.sort();
                let branches: [Vec<u32>; 3] =
                    branches.try_into().map_err(|_| GraphError::UnsupportedShape)?;
                Ok(Canonical::Star { center: self.weights[center], branches })
            }
            Shape::GeneralTree => Err(GraphError::UnsupportedShape),
        }
    }

    /// The same graph with vertices renumbered in canonical order.
    pub fn normalized(&self) -> Result<DualGraph, GraphError> {
        Ok(Self::from_canonical(&self.canonical()?))
    }

    pub fn from_canonical(c: &Canonical) -> DualGraph {
        match c {
            Canonical::Chain(w) => Self::chain(w.clone()),
            Canonical::Star { center, branches } => Self::star(*center, branches.clone()),
        }
        .expect("canonical forms are valid graphs")
    }

    /// Canonical bracket string, e.g. `[2^2,3]` or `[2;[2],[2],[2^2]]`.
    pub fn to_bracket(&self) -> Result<String, GraphError> {
        Ok(parse::format_canonical(&self.canonical()?))
    }
}

impl fmt::Display for DualGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_bracket() {
            Ok(s) => f.write_str(&s),
            Err(_) => write!(f, "tree{:?}{:?}", self.weights, self.edges),
        }
    }
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj
}

/// Follows a path of degree-at-most-2 vertices starting at `start`, never
/// stepping back to `from`.
fn walk(adj: &[Vec<usize>], start: usize, from: usize) -> Vec<usize> {
    let mut path = vec![start];
    let (mut prev, mut cur) = (from, start);
    while let Some(&next) = adj[cur].iter().find(|&&u| u != prev) {
        if adj[cur].len() > 2 && cur != start {
            break;
        }
        path.push(next);
        prev = cur;
        cur = next;
    }
    path
}
