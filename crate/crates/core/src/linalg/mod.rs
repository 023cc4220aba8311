//! Dense symmetric matrices and the spectral machinery built on them.

mod jacobi;
mod quotient;

pub use jacobi::{
    eig_sym, eig_sym_with_vectors, EigenOptions, DEFAULT_EIGEN_TOL, DEFAULT_GROUPING_TOL, DEFAULT_MAX_SWEEPS,
};
pub(crate) use quotient::two_by_two_gap;
pub use quotient::{interlaces, quotient_matrix, weyl_check, QuotientMatrix};

use std::ops::{Add, Sub};

use crate::error::{domain, Error, Result};

/// Dense real symmetric matrix, row-major. `a[i][j] == a[j][i]` holds bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    a: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, a: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&vec![1.0; n])
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.a[i * m.n + i] = d;
        }
        m
    }

    /// Evaluates `f(i, j)` for `i <= j` and mirrors it into the lower triangle.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let x = f(i, j);
                a[i * n + j] = x;
                a[j * n + i] = x;
            }
        }
        Self { n, a }
    }

    /// Rows must form an exactly symmetric square matrix.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return domain("matrix rows must all have length equal to the row count");
        }
        for i in 0..n {
            for j in i + 1..n {
                if rows[i][j] != rows[j][i] {
                    return domain(format!("entry ({i},{j}) differs from ({j},{i})"));
                }
            }
        }
        Ok(Self {
            n,
            a: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.a[i * self.n..(i + 1) * self.n]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.a.chunks(self.n.max(1)).take(self.n).map(<[f64]>::to_vec).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.a.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            n: self.n,
            a: self.a.iter().map(|x| x * factor).collect(),
        }
    }

    /// `P A Pᵀ` where vertex `i` moves to position `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.a[perm[i] * self.n + perm[j]] = self.get(i, j);
            }
        }
        out
    }

    pub(crate) fn check_finite(&self) -> Result<()> {
        match self.a.iter().position(|x| !x.is_finite()) {
            None => Ok(()),
            Some(k) => Err(Error::Numeric(format!(
                "non-finite entry at ({}, {})",
                k / self.n,
                k % self.n
            ))),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        assert_eq!(self.n, other.n, "matrix orders differ");
        Self {
            n: self.n,
            a: self.a.iter().zip(&other.a).map(|(&x, &y)| f(x, y)).collect(),
        }
    }
}

impl Add for &SymmetricMatrix {
    type Output = SymmetricMatrix;

    fn add(self, rhs: Self) -> SymmetricMatrix {
        self.zip_with(rhs, |x, y| x + y)
    }
}

impl Sub for &SymmetricMatrix {
    type Output = SymmetricMatrix;

    fn sub(self, rhs: Self) -> SymmetricMatrix {
        self.zip_with(rhs, |x, y| x - y)
    }
}

/// `Σ_ij a_ij²`.
pub fn frobenius_norm_sq(m: &SymmetricMatrix) -> f64 {
    m.a.iter().map(|x| x * x).sum()
}

/// Eigenvalues sorted descending, with the tolerance used to group them
/// into multiplicity classes.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
    tol: f64,
}

impl Spectrum {
    /// Sorts `values` descending. NaN is rejected.
    pub fn new(mut values: Vec<f64>, tol: f64) -> Result<Self> {
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::Numeric("NaN eigenvalue".into()));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { values, tol })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// λ_k with 1-based `k`, as in λ₁ ≥ λ₂ ≥ ….
    pub fn nth(&self, k: usize) -> Option<f64> {
        k.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }

    pub fn largest(&self) -> Option<f64> {
        self.values.first().copied()
    }

    pub fn smallest(&self) -> Option<f64> {
        self.values.last().copied()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }

    /// Distinct values with multiplicities. Neighbours closer than
    /// `tol · max(1, |λ|)` fall into the same class.
    pub fn distinct(&self) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = Vec::new();
        let mut prev = f64::NAN;
        for &v in &self.values {
            match out.last_mut() {
                Some((_, count)) if (prev - v).abs() <= self.tol * v.abs().max(1.0) => *count += 1,
                _ => out.push((v, 1)),
            }
            prev = v;
        }
        out
    }

    /// Largest elementwise absolute difference; `None` if the lengths differ.
    pub fn max_deviation(&self, other: &Spectrum) -> Option<f64> {
        (self.len() == other.len()).then(|| {
            self.values
                .iter()
                .zip(&other.values)
                .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
        })
    }
}

/// λ₁ − λₙ.
pub fn spread_of(s: &Spectrum) -> Result<f64> {
    match (s.largest(), s.smallest()) {
        (Some(hi), Some(lo)) => Ok(hi - lo),
        _ => domain("spread of an empty spectrum"),
    }
}
