//! Cyclic Jacobi eigensolver for dense symmetric matrices.
//!
//! Each sweep visits every `(p, q)` pair with `p < q` in row order and applies
//! the plane rotation that annihilates `a[p][q]`. Sweeps stop once the
//! off-diagonal Frobenius mass drops below `tol · ‖A‖_F`.

use super::{Spectrum, SymmetricMatrix};
use crate::error::{Error, Result};

pub const DEFAULT_EIGEN_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_SWEEPS: usize = 100;
pub const DEFAULT_GROUPING_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenOptions {
    /// Convergence threshold on the off-diagonal mass, relative to `‖A‖_F`.
    pub tol: f64,
    pub max_sweeps: usize,
    /// Tolerance stored in the returned [`Spectrum`] for multiplicity grouping.
    pub grouping_tol: f64,
}

impl Default for EigenOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_EIGEN_TOL,
            max_sweeps: DEFAULT_MAX_SWEEPS,
            grouping_tol: DEFAULT_GROUPING_TOL,
        }
    }
}

/// All eigenvalues of `m`, descending.
pub fn eig_sym(m: &SymmetricMatrix, opts: &EigenOptions) -> Result<Spectrum> {
    let (values, _) = jacobi(m, opts, false)?;
    Spectrum::new(values, opts.grouping_tol)
}

/// Eigenvalues descending plus unit eigenvectors; `vectors[k]` belongs to `values()[k]`.
pub fn eig_sym_with_vectors(m: &SymmetricMatrix, opts: &EigenOptions) -> Result<(Spectrum, Vec<Vec<f64>>)> {
    let n = m.order();
    let (values, v) = jacobi(m, opts, true)?;
    let v = v.expect("vectors requested");
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    let vectors = idx
        .iter()
        .map(|&k| (0..n).map(|row| v[row * n + k]).collect())
        .collect();
    let sorted = idx.iter().map(|&k| values[k]).collect();
    Ok((Spectrum::new(sorted, opts.grouping_tol)?, vectors))
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    s.sqrt()
}

#[allow(clippy::type_complexity)]
fn jacobi(m: &SymmetricMatrix, opts: &EigenOptions, want_vectors: bool) -> Result<(Vec<f64>, Option<Vec<f64>>)> {
    if !(opts.tol > 0.0) {
        return Err(Error::Domain(format!(
            "eigen tolerance must be positive, got {}",
            opts.tol
        )));
    }
    m.check_finite()?;
    let n = m.order();
    let mut a = m.a.clone();
    let mut v = want_vectors.then(|| SymmetricMatrix::identity(n).a);

    let norm = super::frobenius_norm_sq(m).sqrt();
    let threshold = opts.tol * norm;
    let mut converged = false;
    for _ in 0..=opts.max_sweeps {
        if off_diagonal_norm(&a, n) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, v.as_deref_mut(), n, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::Convergence {
            sweeps: opts.max_sweeps,
            off_norm: off_diagonal_norm(&a, n),
        });
    }
    let values = (0..n).map(|i| a[i * n + i]).collect();
    Ok((values, v))
}

fn rotate(a: &mut [f64], v: Option<&mut [f64]>, n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    if apq == 0.0 {
        return;
    }
    let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
    // tan of the rotation angle, the smaller root of t² + 2θt − 1 = 0
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = c * akp - s * akq;
        a[k * n + q] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = c * apk - s * aqk;
        a[q * n + k] = s * apk + c * aqk;
    }
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;

    if let Some(v) = v {
        for k in 0..n {
            let vkp = v[k * n + p];
            let vkq = v[k * n + q];
            v[k * n + p] = c * vkp - s * vkq;
            v[k * n + q] = s * vkp + c * vkq;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn opts() -> EigenOptions {
        EigenOptions::default()
    }

    fn assert_close(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() <= tol, "got {got:?}, want {want:?}");
        }
    }

    #[test]
    fn diagonal_matrix() {
        let s = eig_sym(&SymmetricMatrix::from_diagonal(&[3.0, 1.0, 2.0]), &opts()).unwrap();
        assert_eq!(s.values(), &[3.0, 2.0, 1.0]);
    }

    #[test]
    fn harary_matrix_of_p3() {
        let m = SymmetricMatrix::from_rows(&[vec![0.0, 1.0, 0.5], vec![1.0, 0.0, 1.0], vec![0.5, 1.0, 0.0]]).unwrap();
        let s = eig_sym(&m, &opts()).unwrap();
        // -1/2 from (1, 0, -1); the others solve λ² − λ/2 − 2 = 0
        let r = (0.25f64 + 8.0).sqrt();
        assert_close(s.values(), &[(0.5 + r) / 2.0, -0.5, (0.5 - r) / 2.0], 1e-12);
        assert_close(s.values(), &[1.68614, -0.5, -1.18614], 1e-5);
    }

    #[test]
    fn harary_matrix_of_c4() {
        // circulant with symbol (0, 1, 1/2, 1)
        let m = SymmetricMatrix::from_fn(4, |i, j| match (j + 4 - i) % 4 {
            0 => 0.0,
            2 => 0.5,
            _ => 1.0,
        });
        let s = eig_sym(&m, &opts()).unwrap();
        assert_close(s.values(), &[2.5, -0.5, -0.5, -1.5], 1e-12);
    }

    #[test]
    fn eigenvectors_satisfy_definition() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = SymmetricMatrix::from_fn(6, |_, _| rng.gen_range(-2.0..2.0));
        let (s, vecs) = eig_sym_with_vectors(&m, &opts()).unwrap();
        for (lambda, x) in s.values().iter().zip(&vecs) {
            let norm: f64 = x.iter().map(|t| t * t).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() < 1e-12);
            for i in 0..6 {
                let ax: f64 = (0..6).map(|j| m.get(i, j) * x[j]).sum();
                assert!((ax - lambda * x[i]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn errors() {
        let mut bad = SymmetricMatrix::identity(2);
        bad.a[1] = f64::INFINITY;
        bad.a[2] = f64::INFINITY;
        assert!(matches!(eig_sym(&bad, &opts()), Err(Error::Numeric(_))));

        let dense = SymmetricMatrix::from_fn(5, |i, j| 1.0 / (1 + i + j) as f64);
        let capped = EigenOptions {
            max_sweeps: 0,
            ..opts()
        };
        assert!(matches!(eig_sym(&dense, &capped), Err(Error::Convergence { .. })));

        let zero = eig_sym(&SymmetricMatrix::zeros(3), &opts()).unwrap();
        assert_eq!(zero.values(), &[0.0, 0.0, 0.0]);
        assert!(eig_sym(&SymmetricMatrix::zeros(0), &opts()).unwrap().is_empty());
    }

    fn random_symmetric(n: usize, seed: u64) -> SymmetricMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        SymmetricMatrix::from_fn(n, |_, _| rng.gen_range(-5.0..5.0))
    }

    proptest! {
        #[test]
        fn trace_and_frobenius_identities(n in 1usize..12, seed in any::<u64>()) {
            let m = random_symmetric(n, seed);
            let s = eig_sym(&m, &opts()).unwrap();
            let fro = super::super::frobenius_norm_sq(&m);
            let scale = n as f64 * opts().tol * fro.sqrt().max(1.0);
            prop_assert!((s.sum() - m.trace()).abs() <= scale);
            prop_assert!((s.sum_of_squares() - fro).abs() <= 1e-9 * fro.max(1.0));
            prop_assert!(s.values().windows(2).all(|w| w[0] >= w[1]));
        }

        #[test]
        fn permutation_invariance(n in 1usize..10, seed in any::<u64>()) {
            let m = random_symmetric(n, seed);
            let mut perm: Vec<usize> = (0..n).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37);
            for i in (1..n).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            let a = eig_sym(&m, &opts()).unwrap();
            let b = eig_sym(&m.permuted(&perm), &opts()).unwrap();
            let scale = super::super::frobenius_norm_sq(&m).sqrt().max(1.0);
            prop_assert!(a.max_deviation(&b).unwrap() <= 1e-10 * scale);
        }
    }
}
