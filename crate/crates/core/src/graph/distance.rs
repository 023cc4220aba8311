use super::Graph;
use crate::error::{Error, Result};

/// All-pairs hop distances of a connected graph, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.d[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.d[i * self.n..(i + 1) * self.n]
    }

    /// Largest distance; 0 for a single vertex.
    pub fn diameter(&self) -> u32 {
        self.d.iter().copied().max().unwrap_or(0)
    }
}

/// Breadth-first search from every vertex, `O(n(n + m))`.
pub fn apsp(g: &Graph) -> Result<DistanceMatrix> {
    let n = g.order();
    let mut d = Vec::with_capacity(n * n);
    for s in 0..n {
        let row = g.bfs_order(s);
        if let Some(t) = row.iter().position(|&x| x == usize::MAX) {
            return Err(Error::Disconnected(s, t));
        }
        d.extend(row.into_iter().map(|x| x as u32));
    }
    Ok(DistanceMatrix { n, d })
}
