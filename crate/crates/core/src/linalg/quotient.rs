use super::{eig_sym, EigenOptions, Spectrum, SymmetricMatrix};
use crate::error::{domain, Result};

/// Block-averaged matrix over a vertex partition.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientMatrix {
    /// `b[s][t] = (1/|V_s|) Σ_{i∈V_s, j∈V_t} a_ij`; not symmetric in general.
    pub b: Vec<Vec<f64>>,
    pub cell_sizes: Vec<usize>,
    /// Eigenvalues of `D^{1/2} B D^{-1/2}`, `D = diag(|V_s|)`, which is similar to `B`.
    pub spectrum: Spectrum,
    /// For two cells, `½(tr ± √(tr² − 4 det))` computed directly from `B`.
    pub closed_form_2x2: Option<(f64, f64)>,
}

pub fn quotient_matrix(a: &SymmetricMatrix, partition: &[Vec<usize>], opts: &EigenOptions) -> Result<QuotientMatrix> {
    let n = a.order();
    let mut cell_of = vec![usize::MAX; n];
    for (s, cell) in partition.iter().enumerate() {
        if cell.is_empty() {
            return domain(format!("partition cell {s} is empty"));
        }
        for &v in cell {
            if v >= n {
                return domain(format!("partition mentions vertex {v} outside 0..{n}"));
            }
            if cell_of[v] != usize::MAX {
                return domain(format!("vertex {v} appears in more than one cell"));
            }
            cell_of[v] = s;
        }
    }
    if let Some(v) = cell_of.iter().position(|&c| c == usize::MAX) {
        return domain(format!("vertex {v} is not covered by the partition"));
    }

    let k = partition.len();
    let mut sums = vec![vec![0.0; k]; k];
    for i in 0..n {
        for j in 0..n {
            sums[cell_of[i]][cell_of[j]] += a.get(i, j);
        }
    }
    let sizes: Vec<usize> = partition.iter().map(Vec::len).collect();
    let b: Vec<Vec<f64>> = (0..k)
        .map(|s| (0..k).map(|t| sums[s][t] / sizes[s] as f64).collect())
        .collect();
    let symmetrized = SymmetricMatrix::from_fn(k, |s, t| sums[s][t] / ((sizes[s] * sizes[t]) as f64).sqrt());
    let spectrum = eig_sym(&symmetrized, opts)?;
    let closed_form_2x2 = (k == 2).then(|| two_by_two_eigenvalues(b[0][0], b[0][1], b[1][0], b[1][1]));
    Ok(QuotientMatrix {
        b,
        cell_sizes: sizes,
        spectrum,
        closed_form_2x2,
    })
}

/// Roots `½((b11+b22) ± √((b11+b22)² − 4(b11·b22 − b12·b21)))`, larger first.
pub(crate) fn two_by_two_eigenvalues(b11: f64, b12: f64, b21: f64, b22: f64) -> (f64, f64) {
    let tr = b11 + b22;
    let gap = two_by_two_gap(b11, b12, b21, b22);
    (0.5 * (tr + gap), 0.5 * (tr - gap))
}

/// `√((b11+b22)² − 4(b11·b22 − b12·b21))`, the distance between the two roots.
/// The discriminant is clamped at zero.
pub(crate) fn two_by_two_gap(b11: f64, b12: f64, b21: f64, b22: f64) -> f64 {
    let tr = b11 + b22;
    let disc = tr * tr - 4.0 * (b11 * b22 - b12 * b21);
    disc.max(0.0).sqrt()
}

fn scaled_tol(tol: f64, a: f64, b: f64) -> f64 {
    tol * 1f64.max(a.abs()).max(b.abs())
}

/// `λ_i(outer) ≥ λ_i(inner) ≥ λ_{i+n−m}(outer)` for every `i`, each comparison
/// with slack `tol · max(1, |values|)`.
pub fn interlaces(inner: &Spectrum, outer: &Spectrum, tol: f64) -> Result<bool> {
    let (m, n) = (inner.len(), outer.len());
    if m > n {
        return domain(format!("inner spectrum has {m} values, outer only {n}"));
    }
    let (iv, ov) = (inner.values(), outer.values());
    Ok((0..m).all(|i| {
        let upper_ok = ov[i] + scaled_tol(tol, ov[i], iv[i]) >= iv[i];
        let lower = ov[i + n - m];
        let lower_ok = iv[i] >= lower - scaled_tol(tol, lower, iv[i]);
        upper_ok && lower_ok
    }))
}

/// Both Weyl inequality families for `C = A + B`:
/// `λ_i(C) ≥ λ_j(A) + λ_{i−j+n}(B)` for `j ≥ i` and
/// `λ_i(C) ≤ λ_j(A) + λ_{i−j+1}(B)` for `i ≥ j`.
pub fn weyl_check(a: &SymmetricMatrix, b: &SymmetricMatrix, opts: &EigenOptions, tol: f64) -> Result<bool> {
    let n = a.order();
    if b.order() != n {
        return domain(format!("matrix orders differ: {} vs {}", n, b.order()));
    }
    let la = eig_sym(a, opts)?;
    let lb = eig_sym(b, opts)?;
    let lc = eig_sym(&(a + b), opts)?;
    let (la, lb, lc) = (la.values(), lb.values(), lc.values());
    for i in 0..n {
        for j in 0..n {
            if j >= i {
                let rhs = la[j] + lb[i + n - 1 - j];
                if lc[i] < rhs - scaled_tol(tol, lc[i], rhs) {
                    return Ok(false);
                }
            }
            if i >= j {
                let rhs = la[j] + lb[i - j];
                if lc[i] > rhs + scaled_tol(tol, lc[i], rhs) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
