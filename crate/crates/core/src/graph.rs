//! Simple undirected graphs on the vertex set `{1, .., n}`.
//!
//! Vertices are 1-based at every public entry point; storage is 0-based.

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Edgeless graph `E_n`. `n = 0` gives the empty graph `E_0`.
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![VertexSet::new(); n],
        }
    }

    /// Builds a graph from 1-based edges, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::Constraint {
                    family: "graph",
                    constraint: format!("loop at vertex {u}"),
                });
            }
            if g.has_edge(u, v) {
                return Err(Error::Constraint {
                    family: "graph",
                    constraint: format!("duplicate edge {{{u},{v}}}"),
                });
            }
            g.link(u - 1, v - 1);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Edges as 1-based pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nbrs) in self.adj.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&v| v > u).map(|v| (u + 1, v + 1)));
        }
        out
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && v >= 1 && u <= self.n() && self.adj[u - 1].contains(v - 1)
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adj[v - 1].len())
    }

    /// Open neighborhood `N(v)` as 1-based labels.
    pub fn neighbors(&self, v: usize) -> Result<Vec<usize>> {
        self.check_vertex(v)?;
        Ok(self.adj[v - 1].iter().map(|w| w + 1).collect())
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut degs: Vec<usize> = self.adj.iter().map(VertexSet::len).collect();
        degs.sort_unstable();
        degs
    }

    /// 0-based adjacency rows.
    pub fn adjacency(&self) -> &[VertexSet] {
        &self.adj
    }

    pub(crate) fn row(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    /// 0-based closed neighborhood `N[v]`.
    pub(crate) fn closed_row(&self, v: usize) -> VertexSet {
        let mut set = self.adj[v].clone();
        set.insert(v);
        set
    }

    /// Whether the 0-based vertex set spans no edge.
    pub fn is_independent(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| self.adj[v].is_disjoint(set))
    }

    /// Subgraph induced on the 0-based vertex set `keep`, relabeled
    /// contiguously in increasing order of the surviving labels.
    pub fn induced(&self, keep: &VertexSet) -> Self {
        let old: Vec<usize> = keep.iter().filter(|&v| v < self.n()).collect();
        let mut new_label = vec![usize::MAX; self.n()];
        for (i, &v) in old.iter().enumerate() {
            new_label[v] = i;
        }
        let adj = old
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|&w| new_label[w] != usize::MAX)
                    .map(|w| new_label[w])
                    .collect()
            })
            .collect();
        Self { adj }
    }

    /// `G \ v` for a 1-based vertex.
    pub fn delete_vertex(&self, v: usize) -> Result<Self> {
        self.check_vertex(v)?;
        let mut keep = VertexSet::full(self.n());
        keep.remove(v - 1);
        Ok(self.induced(&keep))
    }

    /// `G \ N[v]` for a 1-based vertex.
    pub fn delete_closed_neighborhood(&self, v: usize) -> Result<Self> {
        self.check_vertex(v)?;
        let keep = VertexSet::full(self.n()).difference(&self.closed_row(v - 1));
        Ok(self.induced(&keep))
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Self {
        let offset = self.n();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|row| row.iter().map(|w| w + offset).collect()),
        );
        Self { adj }
    }

    /// Connected components as 0-based vertex sets, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::from_indices([start]);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for w in self.adj[v].iter() {
                    if !comp.contains(w) {
                        comp.insert(w);
                        stack.push(w);
                    }
                }
            }
            seen = seen.union(&comp);
            out.push(comp);
        }
        out
    }

    pub(crate) fn link(&mut self, u: usize, v: usize) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            });
        }
        Ok(())
    }
}
