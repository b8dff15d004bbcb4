//! Immutable undirected simple graphs.
//!
//! Vertices are dense indices `0..n`. Adjacency is kept as sorted neighbor
//! arrays; graphs with at most [`BITSET_MAX_VERTICES`] vertices also carry a
//! bitset row per vertex for constant-time adjacency tests.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Largest order for which bitset adjacency rows are materialized.
pub const BITSET_MAX_VERTICES: usize = 64 * 16;

/// Distance marker for vertices outside the root's component.
pub const UNREACHABLE: usize = usize::MAX;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
    words: usize,
    rows: Vec<u64>,
}

/// Minimum and maximum degree, with the common degree when they agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeProfile {
    pub min: usize,
    pub max: usize,
    pub regular: bool,
    pub d: Option<usize>,
}

/// BFS layers `S_0(root), S_1(root), …` of a root's component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerDecomposition {
    pub root: usize,
    /// Distance from the root, [`UNREACHABLE`] outside its component.
    pub dist: Vec<usize>,
    /// `layers[r]` lists the vertices at distance exactly `r`, ascending.
    pub layers: Vec<Vec<usize>>,
    pub eccentricity: usize,
}

impl LayerDecomposition {
    /// The sphere of radius `r`; empty beyond the eccentricity.
    pub fn sphere(&self, r: usize) -> &[usize] {
        self.layers.get(r).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn distance(&self, w: usize) -> Option<usize> {
        match self.dist[w] {
            UNREACHABLE => None,
            d => Some(d),
        }
    }

    /// Number of vertices in the root's component.
    pub fn reached(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }
}

/// An induced subgraph together with its vertex correspondence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `original[i]` is the vertex of the parent graph that became vertex `i`.
    pub original: Vec<usize>,
}

impl InducedSubgraph {
    /// New index of a parent vertex, if it was kept.
    pub fn index_of(&self, old: usize) -> Option<usize> {
        self.original.binary_search(&old).ok()
    }
}

impl Graph {
    /// Builds a graph from an edge list, collapsing duplicate edges.
    pub fn from_edge_list<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: x,
                        n,
                        line: None,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop {
                    vertex: u,
                    line: None,
                });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        Ok(Graph::from_adjacency_unchecked(adjacency))
    }

    /// Graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Graph {
        Graph::from_adjacency_unchecked(vec![Vec::new(); n])
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Graph {
        let adjacency = (0..n)
            .map(|v| (0..n).filter(|&w| w != v).collect())
            .collect();
        Graph::from_adjacency_unchecked(adjacency)
    }

    /// Sorts and deduplicates each row. Callers guarantee symmetry, range and
    /// loop-freeness.
    pub(crate) fn from_adjacency_unchecked(mut adjacency: Vec<Vec<usize>>) -> Graph {
        for row in &mut adjacency {
            row.sort_unstable();
            row.dedup();
        }
        let n = adjacency.len();
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        let (words, rows) = if n <= BITSET_MAX_VERTICES {
            let words = n.div_ceil(64).max(1);
            let mut rows = vec![0u64; words * n];
            for (v, nbrs) in adjacency.iter().enumerate() {
                for &w in nbrs {
                    rows[v * words + w / 64] |= 1 << (w % 64);
                }
            }
            (words, rows)
        } else {
            (0, Vec::new())
        };
        let g = Graph {
            adjacency,
            edge_count,
            words,
            rows,
        };
        debug_assert!(g.check_invariants().is_ok());
        g
    }

    /// Verifies loop-freeness, symmetry and the cached edge count.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let mut total = 0;
        for (v, nbrs) in self.adjacency.iter().enumerate() {
            total += nbrs.len();
            if nbrs.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("row {v} not strictly ascending"));
            }
            for &w in nbrs {
                if w == v {
                    return Err(format!("self-loop at {v}"));
                }
                if w >= self.n() || self.adjacency[w].binary_search(&v).is_err() {
                    return Err(format!("asymmetric edge {v}-{w}"));
                }
            }
        }
        if total != 2 * self.edge_count {
            return Err(format!("edge count {} != {total}/2", self.edge_count));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Adjacency row of `v` as a single word; graphs on at most 64 vertices.
    pub(crate) fn row64(&self, v: usize) -> u64 {
        debug_assert!(self.n() <= 64);
        self.rows[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if self.words > 0 {
            self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
        } else {
            self.adjacency[u].binary_search(&v).is_ok()
        }
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, nbrs)| {
            let start = nbrs.partition_point(|&w| w <= u);
            nbrs[start..].iter().map(move |&w| (u, w))
        })
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let min = self.adjacency.iter().map(Vec::len).min().unwrap_or(0);
        let max = self.adjacency.iter().map(Vec::len).max().unwrap_or(0);
        DegreeProfile {
            min,
            max,
            regular: min == max,
            d: (min == max).then_some(min),
        }
    }

    /// Common degree of a regular graph.
    pub fn regular_degree(&self) -> Option<usize> {
        self.degree_profile().d
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.bfs_layers(0).reached() == self.n()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.edge_count == n * n.saturating_sub(1) / 2
    }

    pub fn bfs_layers(&self, root: usize) -> LayerDecomposition {
        let n = self.n();
        let mut dist = vec![UNREACHABLE; n];
        let mut layers: Vec<Vec<usize>> = vec![vec![root]];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let next = dist[u] + 1;
            for &w in &self.adjacency[u] {
                if dist[w] == UNREACHABLE {
                    dist[w] = next;
                    if layers.len() <= next {
                        layers.push(Vec::new());
                    }
                    layers[next].push(w);
                    queue.push_back(w);
                }
            }
        }
        for layer in &mut layers {
            layer.sort_unstable();
        }
        LayerDecomposition {
            root,
            dist,
            eccentricity: layers.len() - 1,
            layers,
        }
    }

    /// Largest eccentricity; `None` for disconnected or empty graphs.
    pub fn diameter(&self) -> Option<usize> {
        if self.n() == 0 || !self.is_connected() {
            return None;
        }
        (0..self.n()).map(|v| self.bfs_layers(v).eccentricity).max()
    }

    /// Subgraph induced on `vertices`; order-preserving relabelling.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<InducedSubgraph> {
        let mut original = vertices.to_vec();
        original.sort_unstable();
        original.dedup();
        if original.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        if let Some(&bad) = original.iter().find(|&&v| v >= self.n()) {
            return Err(Error::VertexOutOfRange {
                vertex: bad,
                n: self.n(),
                line: None,
            });
        }
        let mut index = vec![UNREACHABLE; self.n()];
        for (i, &v) in original.iter().enumerate() {
            index[v] = i;
        }
        let adjacency = original
            .iter()
            .map(|&v| {
                self.adjacency[v]
                    .iter()
                    .filter_map(|&w| (index[w] != UNREACHABLE).then_some(index[w]))
                    .collect()
            })
            .collect();
        Ok(InducedSubgraph {
            graph: Graph::from_adjacency_unchecked(adjacency),
            original,
        })
    }

    /// Cartesian product; vertex `(g, h)` is flattened to `g * |H| + h`.
    pub fn cartesian_product(&self, other: &Graph) -> Graph {
        let m = other.n();
        let mut adjacency = vec![Vec::new(); self.n() * m];
        for g in 0..self.n() {
            for h in 0..m {
                let row = &mut adjacency[g * m + h];
                row.extend(other.neighbors(h).iter().map(|&h2| g * m + h2));
                row.extend(self.neighbors(g).iter().map(|&g2| g2 * m + h));
            }
        }
        Graph::from_adjacency_unchecked(adjacency)
    }

    /// Replaces each vertex by a clique of order `t`; vertex `(v, i)` is
    /// flattened to `v * t + i`.
    pub fn blow_up(&self, t: usize) -> Result<Graph> {
        if t == 0 {
            return Err(Error::param("blow-up", "clique order t must be >= 1"));
        }
        let mut adjacency = vec![Vec::new(); self.n() * t];
        for v in 0..self.n() {
            for i in 0..t {
                let x = v * t + i;
                let row = &mut adjacency[x];
                row.extend((0..t).map(|j| v * t + j).filter(|&y| y != x));
                for &w in self.neighbors(v) {
                    row.extend((0..t).map(|j| w * t + j));
                }
            }
        }
        Ok(Graph::from_adjacency_unchecked(adjacency))
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}
