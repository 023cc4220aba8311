use super::Graph;
use crate::error::{domain, Result};

/// Order above which [`maximum_cliques`] refuses to run.
///
/// Bron–Kerbosch is exponential in the worst case (`3^(n/3)` maximal cliques),
/// so the enumeration is meant for desk-scale graphs.
pub const DEFAULT_CLIQUE_LIMIT: usize = 64;

/// Clique number and every clique attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximumCliques {
    pub omega: usize,
    /// Each clique sorted ascending; the list sorted lexicographically.
    pub cliques: Vec<Vec<usize>>,
}

pub fn maximum_cliques(g: &Graph) -> Result<MaximumCliques> {
    maximum_cliques_with_limit(g, DEFAULT_CLIQUE_LIMIT)
}

/// Bron–Kerbosch with Tomita pivoting, keeping only cliques of maximum size.
pub fn maximum_cliques_with_limit(g: &Graph, limit: usize) -> Result<MaximumCliques> {
    let n = g.order();
    if n > limit {
        return domain(format!("clique enumeration capped at n = {limit}, got n = {n}"));
    }
    let adj: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect();
    let mut search = Search {
        adj: &adj,
        best: 0,
        found: Vec::new(),
    };
    let mut r = Vec::new();
    search.expand(&mut r, (0..n).collect(), Vec::new());

    let mut cliques = search.found;
    for c in &mut cliques {
        c.sort_unstable();
    }
    cliques.sort();
    Ok(MaximumCliques {
        omega: search.best,
        cliques,
    })
}

struct Search<'a> {
    adj: &'a [Vec<bool>],
    best: usize,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn expand(&mut self, r: &mut Vec<usize>, mut p: Vec<usize>, mut x: Vec<usize>) {
        if p.is_empty() {
            if x.is_empty() {
                if r.len() > self.best {
                    self.best = r.len();
                    self.found.clear();
                }
                if r.len() == self.best {
                    self.found.push(r.clone());
                }
            }
            return;
        }
        if r.len() + p.len() < self.best {
            return;
        }
        // pivot maximises |P ∩ N(u)| over u in P ∪ X
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&v| self.adj[u][v]).count())
            .expect("P is non-empty");
        let candidates: Vec<usize> = p.iter().copied().filter(|&v| !self.adj[pivot][v]).collect();
        for v in candidates {
            let row = &self.adj[v];
            let p_next = p.iter().copied().filter(|&w| row[w]).collect();
            let x_next = x.iter().copied().filter(|&w| row[w]).collect();
            r.push(v);
            self.expand(r, p_next, x_next);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }
}
