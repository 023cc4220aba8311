use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{domain, Result};

/// Attempts before `random_connected` gives up on a sparse parameter choice.
const MAX_REJECTION_ATTEMPTS: usize = 100_000;

/// Named graph families.
///
/// Vertex layouts:
/// * `CompleteBipartite { a, b }`: parts `0..a` and `a..a+b`.
/// * `DoubleStar { m, n }`: roots `u = 0`, `v = 1`; `u`'s leaves are `2..2+m`,
///   `v`'s leaves are `2+m..2+m+n`.
/// * `RandomConnected { n, p, seed }`: Erdős–Rényi `G(n, p)` draws, repeated
///   until connected. The generator is ChaCha8 seeded with
///   `ChaCha8Rng::seed_from_u64(seed)`; each draw visits pairs `(i, j)`,
///   `i < j`, in row-major order and keeps the edge when a uniform `f64` in
///   `[0, 1)` is below `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Complete { n: usize },
    CompleteBipartite { a: usize, b: usize },
    Path { n: usize },
    Cycle { n: usize },
    DoubleStar { m: usize, n: usize },
    RandomConnected { n: usize, p: f64, seed: u64 },
}

pub fn generate(family: &Family) -> Result<Graph> {
    match *family {
        Family::Complete { n } => {
            if n < 1 {
                return domain("complete graph needs n >= 1");
            }
            let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            Graph::new(n, &edges)
        }
        Family::CompleteBipartite { a, b } => {
            if a < 1 || b < 1 {
                return domain(format!("complete bipartite K({a},{b}) needs a, b >= 1"));
            }
            let edges: Vec<_> = (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))).collect();
            Graph::new(a + b, &edges)
        }
        Family::Path { n } => {
            if n < 1 {
                return domain("path needs n >= 1");
            }
            let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            Graph::new(n, &edges)
        }
        Family::Cycle { n } => {
            if n < 3 {
                return domain(format!("cycle needs n >= 3, got {n}"));
            }
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            Graph::new(n, &edges)
        }
        Family::DoubleStar { m, n } => {
            if m < 1 || n < 1 {
                return domain(format!("double star S({m},{n}) needs m, n >= 1"));
            }
            let mut edges = vec![(0, 1)];
            edges.extend((0..m).map(|i| (0, 2 + i)));
            edges.extend((0..n).map(|i| (1, 2 + m + i)));
            Graph::new(m + n + 2, &edges)
        }
        Family::RandomConnected { n, p, seed } => random_connected(n, p, seed),
    }
}

fn random_connected(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if n < 1 {
        return domain("random graph needs n >= 1");
    }
    if !(p > 0.0 && p <= 1.0) {
        return domain(format!("edge probability must lie in (0, 1], got {p}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for _ in 0..MAX_REJECTION_ATTEMPTS {
        edges.clear();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen::<f64>() < p {
                    edges.push((i, j));
                }
            }
        }
        let g = Graph::new(n, &edges)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    domain(format!(
        "no connected G({n}, {p}) draw within {MAX_REJECTION_ATTEMPTS} attempts"
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::apsp;

    #[test]
    fn family_examples() {
        let k4 = generate(&Family::Complete { n: 4 }).unwrap();
        assert_eq!(k4.size(), 6);
        assert!(k4.degrees().iter().all(|&d| d == 3));

        let s23 = generate(&Family::DoubleStar { m: 2, n: 3 }).unwrap();
        assert_eq!(s23.order(), 7);
        assert_eq!(s23.size(), 6);
        let mut degrees = s23.degrees();
        degrees.sort_unstable();
        assert_eq!(degrees, vec![1, 1, 1, 1, 1, 3, 4]);
        let (left, right) = s23.bipartition().unwrap();
        let mut sizes = [left.len(), right.len()];
        sizes.sort_unstable();
        assert_eq!(sizes, [3, 4]);

        let c4 = generate(&Family::Cycle { n: 4 }).unwrap();
        assert!(c4.bipartition().is_some());
        assert_eq!(apsp(&c4).unwrap().diameter(), 2);

        let k23 = generate(&Family::CompleteBipartite { a: 2, b: 3 }).unwrap();
        assert_eq!(k23.size(), 6);
        assert_eq!(generate(&Family::Path { n: 1 }).unwrap().size(), 0);
    }

    #[test]
    fn parameter_errors() {
        for fam in [
            Family::Complete { n: 0 },
            Family::CompleteBipartite { a: 0, b: 2 },
            Family::Cycle { n: 2 },
            Family::DoubleStar { m: 1, n: 0 },
            Family::RandomConnected { n: 4, p: 0.0, seed: 1 },
            Family::RandomConnected { n: 4, p: 1.5, seed: 1 },
        ] {
            assert!(generate(&fam).is_err(), "{fam:?}");
        }
    }

    #[test]
    fn random_connected_is_reproducible() {
        for seed in 0..20 {
            let fam = Family::RandomConnected { n: 9, p: 0.3, seed };
            let a = generate(&fam).unwrap();
            let b = generate(&fam).unwrap();
            assert_eq!(a, b);
            assert!(a.is_connected());
        }
        let a = generate(&Family::RandomConnected { n: 9, p: 0.5, seed: 1 }).unwrap();
        let b = generate(&Family::RandomConnected { n: 9, p: 0.5, seed: 2 }).unwrap();
        assert_ne!(a, b);
    }
}
