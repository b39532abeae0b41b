use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A vertex on either side. Serialized as `{"u": i}` or `{"v": j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Vertex {
    U(usize),
    V(usize),
}

impl Vertex {
    /// Position in the combined ordering: all U vertices, then all V vertices.
    pub fn global_id(self, u_count: usize) -> usize {
        match self {
            Vertex::U(i) => i,
            Vertex::V(j) => u_count + j,
        }
    }

    pub fn from_global_id(id: usize, u_count: usize) -> Vertex {
        if id < u_count {
            Vertex::U(id)
        } else {
            Vertex::V(id - u_count)
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::U(i) => write!(f, "u{i}"),
            Vertex::V(j) => write!(f, "v{j}"),
        }
    }
}

/// Bipartite graph on `u_count + v_count` vertices with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphWire", into = "GraphWire")]
pub struct BipartiteGraph {
    u_adj: Vec<Vec<usize>>,
    v_adj: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GraphWire {
    u_count: usize,
    v_count: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<GraphWire> for BipartiteGraph {
    type Error = Error;

    fn try_from(w: GraphWire) -> Result<Self> {
        BipartiteGraph::from_edges(w.u_count, w.v_count, w.edges)
    }
}

impl From<BipartiteGraph> for GraphWire {
    fn from(g: BipartiteGraph) -> Self {
        GraphWire {
            u_count: g.u_count(),
            v_count: g.v_count(),
            edges: g.edges().collect(),
        }
    }
}

impl BipartiteGraph {
    pub fn empty(u_count: usize, v_count: usize) -> Self {
        BipartiteGraph {
            u_adj: vec![Vec::new(); u_count],
            v_adj: vec![Vec::new(); v_count],
        }
    }

    /// Builds a graph from `(u, v)` pairs. Repeated pairs collapse into one
    /// edge; out-of-range indices are rejected.
    pub fn from_edges(
        u_count: usize,
        v_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut g = Self::empty(u_count, v_count);
        for (u, v) in edges {
            if u >= u_count || v >= v_count {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u},{v}) out of range for {u_count}x{v_count} graph"
                )));
            }
            g.u_adj[u].push(v);
            g.v_adj[v].push(u);
        }
        for l in g.u_adj.iter_mut().chain(g.v_adj.iter_mut()) {
            l.sort_unstable();
            l.dedup();
        }
        Ok(g)
    }

    /// Complete bipartite graph `K_{a,b}`.
    pub fn complete(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|i| (0..b).map(move |j| (i, j)));
        Self::from_edges(a, b, edges).expect("in range")
    }

    pub fn u_count(&self) -> usize {
        self.u_adj.len()
    }

    pub fn v_count(&self) -> usize {
        self.v_adj.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.u_count() + self.v_count()
    }

    pub fn edge_count(&self) -> usize {
        self.u_adj.iter().map(Vec::len).sum()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.u_adj
            .get(u)
            .is_some_and(|l| l.binary_search(&v).is_ok())
    }

    pub fn u_neighbors(&self, u: usize) -> &[usize] {
        &self.u_adj[u]
    }

    pub fn v_neighbors(&self, v: usize) -> &[usize] {
        &self.v_adj[v]
    }

    /// Neighbors of `w` as vertices of the opposite side.
    pub fn neighbors(&self, w: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let (list, to_v) = match w {
            Vertex::U(i) => (&self.u_adj[i], true),
            Vertex::V(j) => (&self.v_adj[j], false),
        };
        list.iter()
            .map(move |&x| if to_v { Vertex::V(x) } else { Vertex::U(x) })
    }

    pub fn degree(&self, w: Vertex) -> usize {
        match w {
            Vertex::U(i) => self.u_adj[i].len(),
            Vertex::V(j) => self.v_adj[j].len(),
        }
    }

    pub fn is_adjacent(&self, a: Vertex, b: Vertex) -> bool {
        match (a, b) {
            (Vertex::U(u), Vertex::V(v)) | (Vertex::V(v), Vertex::U(u)) => self.has_edge(u, v),
            _ => false,
        }
    }

    /// Edges in lexicographic `(u, v)` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.u_adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().map(move |&v| (u, v)))
    }

    /// Induced subgraph on the listed vertices; vertex `k` of the result is
    /// `us[k]` (resp. `vs[k]`) of `self`.
    pub fn induced(&self, us: &[usize], vs: &[usize]) -> BipartiteGraph {
        let mut pos = vec![usize::MAX; self.v_count()];
        for (k, &v) in vs.iter().enumerate() {
            pos[v] = k;
        }
        let edges = us.iter().enumerate().flat_map(|(a, &u)| {
            let pos = &pos;
            self.u_adj[u]
                .iter()
                .filter(move |&&v| pos[v] != usize::MAX)
                .map(move |&v| (a, pos[v]))
        });
        let edges: Vec<_> = edges.collect();
        BipartiteGraph::from_edges(us.len(), vs.len(), edges).expect("in range")
    }

    /// Edge-wise intersection of two graphs on the same vertex sets.
    pub fn intersection(&self, other: &BipartiteGraph) -> Result<BipartiteGraph> {
        if self.u_count() != other.u_count() || self.v_count() != other.v_count() {
            return Err(Error::InvalidParameter(
                "graph intersection needs equal vertex counts".into(),
            ));
        }
        let edges: Vec<_> = self.edges().filter(|&(u, v)| other.has_edge(u, v)).collect();
        BipartiteGraph::from_edges(self.u_count(), self.v_count(), edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedup_and_range() {
        let g = BipartiteGraph::from_edges(2, 2, [(0, 1), (0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(BipartiteGraph::from_edges(1, 1, [(0, 1)]).is_err());
    }

    #[test]
    fn induced_relabels() {
        let g = BipartiteGraph::complete(3, 3);
        let h = g.induced(&[2, 0], &[1]);
        assert_eq!((h.u_count(), h.v_count(), h.edge_count()), (2, 1, 2));
    }

    #[test]
    fn json_roundtrip() {
        let g = BipartiteGraph::from_edges(2, 3, [(0, 2), (1, 0)]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"u_count":2,"v_count":3,"edges":[[0,2],[1,0]]}"#);
        let back: BipartiteGraph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        let v: Vertex = serde_json::from_str(r#"{"v":4}"#).unwrap();
        assert_eq!(v, Vertex::V(4));
    }
}
