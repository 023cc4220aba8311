//! Reciprocal distance matrices and the transmission invariants derived from
//! hop distances.
//!
//! * `RD`: off-diagonal `1/d_ij`, zero diagonal (the Harary matrix).
//! * `RT`: diagonal of reciprocal transmissions `RTr_i = Σ_{j≠i} 1/d_ij`.
//! * `RD_α = α·RT + (1−α)·RD`; `RD_0 = RD`, `RD_1 = RT`, `2·RD_½ = RQ = RT + RD`.
//! * `A_α = α·D + (1−α)·A` from degrees and adjacency.
//! * `M* = α·diag(RTr*) + (1−α)·M` with `M_ij = min{0, 1/d_ij − ½}` (zero
//!   diagonal) and `RTr*_i = Σ_{d_ij ≥ 3} (1/d_ij − ½)`.

use std::fmt;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::graph::{DistanceMatrix, Graph};
use crate::linalg::SymmetricMatrix;

/// Default tolerance for declaring a graph reciprocal transmission regular.
pub const DEFAULT_REGULARITY_TOL: f64 = 1e-10;

/// Mixing parameter `α ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Alpha(f64);

impl Alpha {
    pub const ZERO: Alpha = Alpha(0.0);
    pub const HALF: Alpha = Alpha(0.5);
    pub const ONE: Alpha = Alpha(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Alpha(value))
        } else {
            domain(format!("alpha must lie in [0, 1], got {value}"))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// `1 − α`.
    #[inline]
    pub fn complement(self) -> f64 {
        1.0 - self.0
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Neumaier-compensated sum.
pub(crate) fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    for x in values {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            carry += (sum - t) + x;
        } else {
            carry += (x - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

/// Reciprocal transmissions and the Harary index of a connected graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransmissionProfile {
    pub rtr: Vec<f64>,
    /// `H = ½ Σ RTr_i`, i.e. `Σ_{i<j} 1/d_ij`.
    pub harary: f64,
    pub rtr_max: f64,
    pub rtr_min: f64,
    pub is_regular: bool,
}

impl TransmissionProfile {
    pub fn sum_of_squares(&self) -> f64 {
        compensated_sum(self.rtr.iter().map(|r| r * r))
    }
}

pub fn transmission_profile(dm: &DistanceMatrix) -> Result<TransmissionProfile> {
    transmission_profile_with_tol(dm, DEFAULT_REGULARITY_TOL)
}

pub fn transmission_profile_with_tol(dm: &DistanceMatrix, tol: f64) -> Result<TransmissionProfile> {
    let n = dm.order();
    if n < 2 {
        return domain("reciprocal transmissions need n >= 2");
    }
    let rtr: Vec<f64> = (0..n)
        .map(|i| {
            compensated_sum(
                dm.row(i)
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &d)| 1.0 / f64::from(d)),
            )
        })
        .collect();
    let harary = 0.5 * compensated_sum(rtr.iter().copied());
    let rtr_max = rtr.iter().copied().fold(f64::MIN, f64::max);
    let rtr_min = rtr.iter().copied().fold(f64::MAX, f64::min);
    Ok(TransmissionProfile {
        is_regular: rtr_max - rtr_min <= tol,
        rtr,
        harary,
        rtr_max,
        rtr_min,
    })
}

/// Mean reciprocal transmission over the neighbours of `v`.
pub fn neighbor_mean_transmission(g: &Graph, profile: &TransmissionProfile, v: usize) -> Result<f64> {
    if v >= g.order() {
        return domain(format!("vertex {v} outside 0..{}", g.order()));
    }
    let nbrs = g.neighbors(v);
    if nbrs.is_empty() {
        return domain(format!("vertex {v} is isolated"));
    }
    Ok(compensated_sum(nbrs.iter().map(|&w| profile.rtr[w])) / nbrs.len() as f64)
}

fn require_pair(dm: &DistanceMatrix) -> Result<()> {
    if dm.order() < 2 {
        return domain("reciprocal distance matrices need n >= 2");
    }
    Ok(())
}

fn reciprocal(d: u32) -> f64 {
    1.0 / f64::from(d)
}

/// `RD_α(G)`: diagonal `α·RTr_i`, off-diagonal `(1−α)/d_ij`.
pub fn rd_alpha_matrix(dm: &DistanceMatrix, alpha: Alpha) -> Result<SymmetricMatrix> {
    require_pair(dm)?;
    let profile = transmission_profile(dm)?;
    let (a, b) = (alpha.value(), alpha.complement());
    Ok(SymmetricMatrix::from_fn(dm.order(), |i, j| {
        if i == j {
            a * profile.rtr[i]
        } else {
            b * reciprocal(dm.get(i, j))
        }
    }))
}

/// The Harary matrix `RD = RD_0`.
pub fn rd_matrix(dm: &DistanceMatrix) -> Result<SymmetricMatrix> {
    rd_alpha_matrix(dm, Alpha::ZERO)
}

/// `RT = RD_1`.
pub fn rt_matrix(dm: &DistanceMatrix) -> Result<SymmetricMatrix> {
    rd_alpha_matrix(dm, Alpha::ONE)
}

/// `RQ = RT + RD`.
pub fn rq_matrix(dm: &DistanceMatrix) -> Result<SymmetricMatrix> {
    Ok(&rt_matrix(dm)? + &rd_matrix(dm)?)
}

/// `A_α(G)`. Connectivity is not required.
pub fn a_alpha_matrix(g: &Graph, alpha: Alpha) -> SymmetricMatrix {
    let (a, b) = (alpha.value(), alpha.complement());
    SymmetricMatrix::from_fn(g.order(), |i, j| {
        if i == j {
            a * g.degree(i) as f64
        } else if g.has_edge(i, j) {
            b
        } else {
            0.0
        }
    })
}

/// `RTr*_i = Σ_{d_ij ≥ 3} (1/d_ij − ½)`; zero on diameter-2 graphs.
pub fn far_transmissions(dm: &DistanceMatrix) -> Vec<f64> {
    (0..dm.order())
        .map(|i| compensated_sum(dm.row(i).iter().filter(|&&d| d >= 3).map(|&d| reciprocal(d) - 0.5)))
        .collect()
}

/// The diameter-≥3 correction `M*(G)`.
pub fn mstar_matrix(dm: &DistanceMatrix, alpha: Alpha) -> Result<SymmetricMatrix> {
    require_pair(dm)?;
    let star = far_transmissions(dm);
    let (a, b) = (alpha.value(), alpha.complement());
    Ok(SymmetricMatrix::from_fn(dm.order(), |i, j| {
        if i == j {
            a * star[i]
        } else {
            b * (reciprocal(dm.get(i, j)) - 0.5).min(0.0)
        }
    }))
}

/// `‖RD_α‖²_F = α² Σ RTr_i² + (1−α)² Σ_{i≠j} d_ij⁻²`, evaluated from distances
/// without building the matrix.
pub fn rd_alpha_frobenius_sq(dm: &DistanceMatrix, alpha: Alpha) -> Result<f64> {
    require_pair(dm)?;
    let profile = transmission_profile(dm)?;
    let (a, b) = (alpha.value(), alpha.complement());
    Ok(a * a * profile.sum_of_squares() + b * b * reciprocal_square_sum(dm))
}

/// `Σ_{i≠j} (1/d_ij)²` over ordered pairs.
pub fn reciprocal_square_sum(dm: &DistanceMatrix) -> f64 {
    let n = dm.order();
    compensated_sum((0..n).flat_map(|i| {
        (0..n).filter(move |&j| j != i).map(move |j| {
            let r = reciprocal(dm.get(i, j));
            r * r
        })
    }))
}

impl From<Alpha> for f64 {
    fn from(a: Alpha) -> f64 {
        a.0
    }
}

impl TryFrom<f64> for Alpha {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Alpha::new(value)
    }
}
