//! Exhaustive enumeration of small graphs up to isomorphism.
//!
//! Graphs on `n` vertices are produced by attaching a new vertex, with every
//! possible neighbourhood, to each representative on `n - 1` vertices and
//! keeping one copy per canonical form. The canonical form is the smallest
//! graph6 bit string over all vertex orders that respect an
//! isomorphism-invariant colour refinement, so it is exact, not a hash.

use std::collections::BTreeSet;

use super::Graph;
use crate::error::{domain, Result};

/// Largest order the enumerator accepts (the bit string must fit in a `u64`).
pub const MAX_ENUMERATION_ORDER: usize = 9;

/// One representative of every isomorphism class on `n` vertices, including
/// disconnected graphs, ordered by canonical code.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return domain(format!("enumeration supports 1 <= n <= {MAX_ENUMERATION_ORDER}"));
    }
    let mut layer: BTreeSet<u64> = BTreeSet::from([0]);
    for order in 2..=n {
        let mut next = BTreeSet::new();
        for &code in &layer {
            let base = decode(order - 1, code);
            for mask in 0u32..(1 << (order - 1)) {
                let mut adj = base.clone();
                for row in adj.iter_mut() {
                    row.push(false);
                }
                let new_row: Vec<bool> = (0..order).map(|v| v < order - 1 && mask >> v & 1 == 1).collect();
                for (v, &on) in new_row.iter().take(order - 1).enumerate() {
                    adj[v][order - 1] = on;
                }
                adj.push(new_row);
                next.insert(canonical_code(&adj));
            }
        }
        layer = next;
    }
    layer.into_iter().map(|code| to_graph(&decode(n, code))).collect()
}

/// Connected representatives on `n` vertices.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(all_graphs(n)?.into_iter().filter(Graph::is_connected).collect())
}

/// Canonical graph6-order bit string of `g`; equal iff the graphs are isomorphic.
pub fn canonical_form(g: &Graph) -> Result<u64> {
    let n = g.order();
    if n > MAX_ENUMERATION_ORDER {
        return domain(format!("canonical form supports n <= {MAX_ENUMERATION_ORDER}"));
    }
    let adj: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect();
    Ok(canonical_code(&adj))
}

fn to_graph(adj: &[Vec<bool>]) -> Result<Graph> {
    let n = adj.len();
    let edges: Vec<_> = (0..n)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .filter(|&(i, j)| adj[i][j])
        .collect();
    Graph::new(n, &edges)
}

fn decode(n: usize, code: u64) -> Vec<Vec<bool>> {
    let bits = n * n.saturating_sub(1) / 2;
    let mut adj = vec![vec![false; n]; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let on = code >> (bits - 1 - k) & 1 == 1;
            adj[i][j] = on;
            adj[j][i] = on;
            k += 1;
        }
    }
    adj
}

fn encode(adj: &[Vec<bool>], order: &[usize]) -> u64 {
    let n = order.len();
    let mut code = 0u64;
    for j in 1..n {
        for i in 0..j {
            code = (code << 1) | u64::from(adj[order[i]][order[j]]);
        }
    }
    code
}

// Colour refinement: start from degrees, split by the multiset of neighbour
// colours until stable. Colours are ranks of sorted signatures, so the
// resulting ordered partition depends only on the isomorphism class.
fn refine(adj: &[Vec<bool>]) -> Vec<usize> {
    let n = adj.len();
    let mut colors: Vec<usize> = (0..n).map(|v| adj[v].iter().filter(|&&b| b).count()).collect();
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut around: Vec<usize> = (0..n).filter(|&w| adj[v][w]).map(|w| colors[w]).collect();
                around.sort_unstable();
                (colors[v], around)
            })
            .collect();
        let mut distinct = signatures.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = signatures
            .iter()
            .map(|s| distinct.binary_search(s).expect("signature present"))
            .collect();
        let before = colors.iter().collect::<BTreeSet<_>>().len();
        if distinct.len() == before {
            return next;
        }
        colors = next;
    }
}

fn canonical_code(adj: &[Vec<bool>]) -> u64 {
    let n = adj.len();
    let colors = refine(adj);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut by_color: Vec<(usize, usize)> = (0..n).map(|v| (colors[v], v)).collect();
    by_color.sort_unstable();
    for (c, v) in by_color {
        match cells.last_mut() {
            Some(cell) if colors[cell[0]] == c => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best = u64::MAX;
    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];
    search_orders(adj, &cells, 0, &mut order, &mut used, &mut best);
    best
}

fn search_orders(
    adj: &[Vec<bool>],
    cells: &[Vec<usize>],
    cell: usize,
    order: &mut Vec<usize>,
    used: &mut [bool],
    best: &mut u64,
) {
    if cell == cells.len() {
        *best = (*best).min(encode(adj, order));
        return;
    }
    let members = &cells[cell];
    let placed = members.iter().filter(|&&v| used[v]).count();
    if placed == members.len() {
        search_orders(adj, cells, cell + 1, order, used, best);
        return;
    }
    for &v in members {
        if used[v] {
            continue;
        }
        used[v] = true;
        order.push(v);
        search_orders(adj, cells, cell, order, used, best);
        order.pop();
        used[v] = false;
    }
}
