//! Simple undirected graphs and the combinatorial queries the bounds need.
//!
//! Vertices are dense `0..n` indices. A [`Graph`] is immutable once built.

mod cliques;
mod distance;
pub mod enumerate;
mod format;
mod generate;

pub use cliques::{maximum_cliques, maximum_cliques_with_limit, MaximumCliques, DEFAULT_CLIQUE_LIMIT};
pub use distance::{apsp, DistanceMatrix};
pub use format::{parse_edgelist, parse_graph, parse_graph6, to_edgelist, to_graph6, GraphFormat};
pub use generate::{generate, Family};

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Simple undirected graph on the vertex set `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and endpoints outside `0..n`.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Validation("a graph needs at least one vertex".into()));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Validation(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::Validation(format!("self-loop at vertex {u}")));
            }
            if adjacency[u].contains(&v) {
                return Err(Error::Validation(format!("duplicate edge ({u}, {v})")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self { n, adjacency })
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, &[])
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for (u, list) in self.adjacency.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.size() == self.n * (self.n - 1) / 2
    }

    /// BFS from vertex 0; `None` when every vertex is reached, otherwise
    /// one reached and one unreached vertex.
    pub fn disconnected_pair(&self) -> Option<(usize, usize)> {
        let seen = self.bfs_order(0);
        let missing = seen.iter().position(|&s| s == usize::MAX)?;
        Some((0, missing))
    }

    pub fn is_connected(&self) -> bool {
        self.disconnected_pair().is_none()
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        match self.disconnected_pair() {
            None => Ok(()),
            Some((u, v)) => Err(Error::Disconnected(u, v)),
        }
    }

    // Hop distance from `source`, usize::MAX where unreachable.
    pub(crate) fn bfs_order(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::with_capacity(self.n);
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Complement graph: `uv` is an edge iff it is not one here.
    pub fn complement(&self) -> Graph {
        let adjacency = (0..self.n)
            .map(|u| {
                let own = &self.adjacency[u];
                (0..self.n)
                    .filter(|&v| v != u && own.binary_search(&v).is_err())
                    .collect()
            })
            .collect();
        Graph { n: self.n, adjacency }
    }

    /// Two-colouring by BFS. `None` when an odd cycle exists.
    ///
    /// Disconnected inputs are coloured component by component.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut color = vec![u8::MAX; self.n];
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adjacency[u] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        return None;
                    }
                }
            }
        }
        let (left, right): (Vec<usize>, Vec<usize>) = (0..self.n).partition(|&v| color[v] == 0);
        Some((left, right))
    }

    /// Maximum degree and every vertex attaining it.
    pub fn max_degree_vertices(&self) -> (usize, Vec<usize>) {
        let delta = self.adjacency.iter().map(Vec::len).max().unwrap_or(0);
        let verts = (0..self.n).filter(|&v| self.degree(v) == delta).collect();
        (delta, verts)
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::Validation("permutation length differs from order".into()));
        }
        let edges: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::new(self.n, &edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(Graph::new(3, &[(0, 0)]), Err(Error::Validation(_))));
        assert!(matches!(Graph::new(3, &[(0, 1), (1, 0)]), Err(Error::Validation(_))));
        assert!(matches!(Graph::new(3, &[(0, 3)]), Err(Error::Validation(_))));
        assert!(Graph::new(0, &[]).is_err());
    }

    #[test]
    fn complement_examples() {
        let c4c = cycle(4).complement();
        assert_eq!(c4c.edges(), vec![(0, 2), (1, 3)]);

        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(k4.complement().size(), 0);

        // P4 is self-complementary: 0-1-2-3 complements to 1-3-0-2.
        let p4c = path(4).complement();
        assert_eq!(p4c.edges(), vec![(0, 2), (0, 3), (1, 3)]);
        let relabeled = p4c.permuted(&[2, 0, 3, 1]).unwrap();
        assert_eq!(relabeled, path(4));
    }

    #[test]
    fn complement_is_involution_and_flips_degrees() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 5), (3, 4), (0, 4)]).unwrap();
        let gc = g.complement();
        assert_eq!(gc.complement(), g);
        for v in 0..6 {
            assert_eq!(gc.degree(v), 5 - g.degree(v));
        }
    }

    #[test]
    fn bipartition_examples() {
        assert_eq!(cycle(4).bipartition(), Some((vec![0, 2], vec![1, 3])));
        assert_eq!(cycle(5).bipartition(), None);
    }

    #[test]
    fn max_degree_examples() {
        assert_eq!(path(4).max_degree_vertices(), (2, vec![1, 2]));
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.max_degree_vertices(), (3, vec![0]));
        assert_eq!(cycle(4).max_degree_vertices(), (2, vec![0, 1, 2, 3]));
    }

    #[test]
    fn connectivity() {
        assert!(path(5).is_connected());
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.disconnected_pair(), Some((0, 2)));
        assert!(Graph::empty(1).unwrap().is_connected());
    }
}
