//! Planar graphs with straight-line drawings, balanced separators and
//! r-divisions.

mod drawing;
mod separator;

pub use drawing::{check_drawing_planar, ClosedBox, EmbeddedEdge, EmbeddedGraph, Point, Segment, VertexDrawing};
pub use separator::{
    apply_separator, balanced_separator, component_cap, Division, Separator, SeparatorConfig, C_IMPL, SEPARATOR_BETA,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanarError {
    #[error("vertex {0} has no drawing")]
    MissingVertexDrawing(usize),
    #[error("edge {0} has no drawing")]
    MissingEdgeDrawing(usize),
    #[error("edge ({0}, {1}) is a loop or references a missing vertex")]
    BadEdge(usize, usize),
    #[error("graph with {vertices} vertices and {edges} edges cannot be planar")]
    NonPlanar { vertices: usize, edges: usize },
}

/// Simple undirected graph on vertices 0..n with sorted adjacency lists.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, PlanarError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds {u, v}; returns false if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, PlanarError> {
        if u == v || u >= self.adj.len() || v >= self.adj.len() {
            return Err(PlanarError::BadEdge(u, v));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                Ok(true)
            }
        }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as (u, v) with u < v, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, nb) in self.adj.iter().enumerate() {
            out.extend(nb.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// Connected components of the subgraph induced by `members`, each sorted,
    /// ordered by smallest vertex.
    pub fn components_within(&self, members: &[usize]) -> Vec<Vec<usize>> {
        let mut inside = vec![false; self.len()];
        for &v in members {
            inside[v] = true;
        }
        let mut seen = vec![false; self.len()];
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        let mut comps = Vec::new();
        for &s in &sorted {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for &v in &self.adj[u] {
                    if inside[v] && !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.len()).collect();
        self.components_within(&all)
    }
}
