//! Simple graphs, grid/torus layouts, the design verifier, embedding search
//! and the Hamiltonian decomposition of `C_n x C_n`.

mod design;
mod embed;
mod hamilton;
mod layout;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use design::{design_to_dot, verify_design, Design, Failure, VerificationReport};
pub use embed::find_embedding;
pub use hamilton::{hamiltonian_pair, HamiltonianPair};
pub use layout::{Family, Layout, Target};

/// An unordered vertex pair, stored with the smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge(u32, u32);

impl Edge {
    /// Normalizes the endpoint order. Returns `None` for a loop.
    pub fn new(a: u32, b: u32) -> Option<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(Edge(a, b)),
            std::cmp::Ordering::Greater => Some(Edge(b, a)),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn lo(self) -> u32 {
        self.0
    }

    pub fn hi(self) -> u32 {
        self.1
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.0, self.1)
    }
}

pub type EdgeSet = BTreeSet<Edge>;

/// A finite simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: EdgeSet,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut set = EdgeSet::new();
        for (a, b) in edges {
            if a as usize >= n || b as usize >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({a}, {b}) out of range for {n} vertices"
                )));
            }
            let e = Edge::new(a, b)
                .ok_or_else(|| Error::InvalidParameter(format!("loop at vertex {a}")))?;
            set.insert(e);
        }
        Ok(Self { n, edges: set })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            deg[e.0 as usize] += 1;
            deg[e.1 as usize] += 1;
        }
        deg
    }
}

pub fn path_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "path graph needs at least one vertex".into(),
        ));
    }
    Graph::new(n, (1..n as u32).map(|i| (i - 1, i)))
}

pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle graph needs at least 3 vertices, got {n}"
        )));
    }
    Graph::new(n, (0..n as u32).map(|i| (i, (i + 1) % n as u32)))
}

pub fn complete_graph(n: usize) -> Graph {
    let n32 = n as u32;
    let edges = (0..n32)
        .flat_map(|a| (a + 1..n32).map(move |b| Edge(a, b)))
        .collect();
    Graph { n, edges }
}

/// Cartesian product; vertex `(v, w)` is encoded as `v * |V(h)| + w`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let m = h.n as u32;
    let mut edges = EdgeSet::new();
    for e in &g.edges {
        for w in 0..m {
            edges.insert(Edge(e.0 * m + w, e.1 * m + w));
        }
    }
    for v in 0..g.n as u32 {
        for e in &h.edges {
            edges.insert(Edge(v * m + e.0, v * m + e.1));
        }
    }
    Graph {
        n: g.n * h.n,
        edges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graphs() {
        assert_eq!(path_graph(2).unwrap().edge_count(), 1);
        assert_eq!(cycle_graph(3).unwrap().edge_count(), 3);
        assert_eq!(complete_graph(16).edge_count(), 120);
        assert!(cycle_graph(2).is_err());
        assert!(path_graph(0).is_err());
    }

    #[test]
    fn product_edge_counts() {
        for n in 3..9 {
            let c = cycle_graph(n).unwrap();
            assert_eq!(cartesian_product(&c, &c).edge_count(), 2 * n * n);
            let p = path_graph(n).unwrap();
            assert_eq!(cartesian_product(&p, &p).edge_count(), 2 * n * (n - 1));
        }
    }

    #[test]
    fn product_with_single_vertex_is_identity() {
        let g = cycle_graph(5).unwrap();
        assert_eq!(cartesian_product(&path_graph(1).unwrap(), &g), g);
    }

    #[test]
    fn product_counts_match_formula() {
        let g = cycle_graph(4).unwrap();
        let h = path_graph(3).unwrap();
        let prod = cartesian_product(&g, &h);
        assert_eq!(prod.vertex_count(), 12);
        assert_eq!(prod.edge_count(), 4 * 3 + 4 * 2);
    }

    #[test]
    fn graph_rejects_loops_and_range() {
        assert!(Graph::new(3, [(1, 1)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
        assert_eq!(Graph::new(3, [(0, 1), (1, 0)]).unwrap().edge_count(), 1);
    }
}
