//! Closed-form `RD_α` spectra for complete graphs, complete bipartite graphs
//! and double stars, plus the block decomposition the double-star formula is
//! built from.
//!
//! These are the independent side of the oracle checks: every value is an
//! explicit expression in `n`, `a`, `b`, `m` and `α`, except the four
//! double-star eigenvalues that come from a fixed 4×4 matrix.

use crate::error::{domain, Result};
use crate::graph::{apsp, generate, Family};
use crate::linalg::{eig_sym, EigenOptions, Spectrum, SymmetricMatrix, DEFAULT_GROUPING_TOL};
use crate::matrices::{rd_alpha_matrix, Alpha};

fn spectrum_from_families(families: &[(f64, usize)], tail: &[f64]) -> Result<Spectrum> {
    let mut values: Vec<f64> = families.iter().flat_map(|&(v, k)| std::iter::repeat_n(v, k)).collect();
    values.extend_from_slice(tail);
    Spectrum::new(values, DEFAULT_GROUPING_TOL)
}

/// `σ(RD_α(K_n)) = {n−1, (αn−1)^[n−1]}` for `α ∈ [0, 1)`.
pub fn spectrum_complete(n: usize, alpha: Alpha) -> Result<Spectrum> {
    if n < 2 {
        return domain(format!("K_n spectrum needs n >= 2, got {n}"));
    }
    if alpha.value() >= 1.0 {
        return domain("K_n closed form is stated for alpha in [0, 1)");
    }
    let nf = n as f64;
    spectrum_from_families(&[(alpha.value() * nf - 1.0, n - 1)], &[nf - 1.0])
}

/// Spectrum of `RD_α(K_{a,b})`, `n = a + b`:
/// `((α(n+b)−1)/2)^[a−1]`, `((α(n+a)−1)/2)^[b−1]` and
/// `½((α+½)n − 1 ± √((α−½)²(a−b)² + 4(1−α)²ab))`.
pub fn spectrum_complete_bipartite(a: usize, b: usize, alpha: Alpha) -> Result<Spectrum> {
    if a < 1 || b < 1 {
        return domain(format!("K(a,b) spectrum needs a, b >= 1, got ({a}, {b})"));
    }
    let (al, af, bf) = (alpha.value(), a as f64, b as f64);
    let nf = af + bf;
    let diff = af - bf;
    let root = ((al - 0.5).powi(2) * diff * diff + 4.0 * (1.0 - al).powi(2) * af * bf).sqrt();
    let centre = (al + 0.5) * nf - 1.0;
    spectrum_from_families(
        &[
            ((al * (nf + bf) - 1.0) / 2.0, a - 1),
            ((al * (nf + af) - 1.0) / 2.0, b - 1),
        ],
        &[0.5 * (centre + root), 0.5 * (centre - root)],
    )
}

/// Symmetric matrix with a `t×t` head block `E` bordered by `z` copies of
/// `γ` (`t×s`), `F` (`s×s`) on the diagonal of the copies and `Q` (`s×s`)
/// between different copies:
///
/// ```text
/// [ E   γ   γ  …  γ ]
/// [ γᵀ  F   Q  …  Q ]
/// [ γᵀ  Q   F  …  Q ]
/// [ …               ]
/// [ γᵀ  Q   Q  …  F ]
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct BlockForm {
    pub e: SymmetricMatrix,
    /// `t` rows of length `s`.
    pub gamma: Vec<Vec<f64>>,
    pub f: SymmetricMatrix,
    pub q: SymmetricMatrix,
    pub z: usize,
}

/// `σ(M) = σ^{z−1}(F − Q) ∪ σ(M′)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockDecomposition {
    /// `σ(F − Q)`, each value repeated `multiplicity` times in `σ(M)`.
    pub repeated: Spectrum,
    pub multiplicity: usize,
    /// `M′ = [[E, √z·γ], [√z·γᵀ, F + (z−1)Q]]`, order `s + t`.
    pub reduced: SymmetricMatrix,
}

impl BlockForm {
    fn shape(&self) -> Result<(usize, usize)> {
        let t = self.e.order();
        let s = self.f.order();
        if self.q.order() != s {
            return domain(format!("Q has order {}, F has order {s}", self.q.order()));
        }
        if self.gamma.len() != t || self.gamma.iter().any(|r| r.len() != s) {
            return domain(format!("gamma must be {t}×{s}"));
        }
        if self.z < 1 {
            return domain("block form needs at least one copy");
        }
        Ok((t, s))
    }

    /// The full matrix, order `t + z·s`.
    pub fn assemble(&self) -> Result<SymmetricMatrix> {
        let (t, s) = self.shape()?;
        Ok(SymmetricMatrix::from_fn(t + self.z * s, |i, j| match (i < t, j < t) {
            (true, true) => self.e.get(i, j),
            (true, false) => self.gamma[i][(j - t) % s],
            (false, true) => self.gamma[j][(i - t) % s],
            (false, false) => {
                let (bi, bj) = ((i - t) / s, (j - t) / s);
                let (ri, rj) = ((i - t) % s, (j - t) % s);
                if bi == bj {
                    self.f.get(ri, rj)
                } else {
                    self.q.get(ri, rj)
                }
            }
        }))
    }

    fn reduced_matrix(&self, t: usize, s: usize) -> SymmetricMatrix {
        let root = (self.z as f64).sqrt();
        let copies = (self.z - 1) as f64;
        SymmetricMatrix::from_fn(t + s, |i, j| match (i < t, j < t) {
            (true, true) => self.e.get(i, j),
            (true, false) => root * self.gamma[i][j - t],
            (false, true) => root * self.gamma[j][i - t],
            (false, false) => self.f.get(i - t, j - t) + copies * self.q.get(i - t, j - t),
        })
    }
}

pub fn block_decompose(form: &BlockForm, opts: &EigenOptions) -> Result<BlockDecomposition> {
    let (t, s) = form.shape()?;
    let repeated = eig_sym(&(&form.f - &form.q), opts)?;
    Ok(BlockDecomposition {
        repeated,
        multiplicity: form.z - 1,
        reduced: form.reduced_matrix(t, s),
    })
}

impl BlockDecomposition {
    /// The union multiset `σ^{z−1}(F − Q) ∪ σ(M′)`.
    pub fn spectrum(&self, opts: &EigenOptions) -> Result<Spectrum> {
        let mut values = eig_sym(&self.reduced, opts)?.into_values();
        for &v in self.repeated.values() {
            values.extend(std::iter::repeat_n(v, self.multiplicity));
        }
        Spectrum::new(values, opts.grouping_tol)
    }
}

/// How the two repeated double-star eigenvalues are paired with multiplicities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyPairing {
    /// Value of a leaf class paired with that class's size minus one:
    /// `α·RTr(y) − ½(1−α)` (with `RTr(y) = ½n + ⅓m + 1`) occurs `n − 1` times,
    /// `α·RTr(x) − ½(1−α)` (with `RTr(x) = ½m + ⅓n + 1`) occurs `m − 1` times.
    /// This is what the two block-decomposition stages produce.
    ByLeafClass,
    /// `α(½n + ⅓m + 1) − ½(1−α)` with multiplicity `m − 1` and
    /// `α(½m + ⅓n + 1) − ½(1−α)` with multiplicity `n − 1`, as the formula is
    /// usually printed. Agrees with `ByLeafClass` only when `m = n`.
    AsPrinted,
}

/// The two repeated values of `σ(RD_α(S_{m,n}))` with multiplicities.
pub fn double_star_families(m: usize, n: usize, alpha: Alpha, pairing: FamilyPairing) -> Result<[(f64, usize); 2]> {
    check_double_star(m, n)?;
    let (al, mf, nf) = (alpha.value(), m as f64, n as f64);
    let half_gap = 0.5 * (1.0 - al);
    let y_value = al * (0.5 * nf + mf / 3.0 + 1.0) - half_gap;
    let x_value = al * (0.5 * mf + nf / 3.0 + 1.0) - half_gap;
    Ok(match pairing {
        FamilyPairing::ByLeafClass => [(y_value, n - 1), (x_value, m - 1)],
        FamilyPairing::AsPrinted => [(y_value, m - 1), (x_value, n - 1)],
    })
}

fn check_double_star(m: usize, n: usize) -> Result<()> {
    if m < 1 || n < 1 {
        return domain(format!("double star S(m,n) needs m, n >= 1, got ({m}, {n})"));
    }
    Ok(())
}

/// The 4×4 matrix `U**` over the classes `{u, v, leaves of v, leaves of u}`.
pub fn double_star_quotient(m: usize, n: usize, alpha: Alpha) -> Result<SymmetricMatrix> {
    check_double_star(m, n)?;
    let (al, mf, nf) = (alpha.value(), m as f64, n as f64);
    let c = 1.0 - al;
    let (rm, rn) = (mf.sqrt(), nf.sqrt());
    let l1 = al * (0.5 * nf + mf / 3.0 + 1.0) + 0.5 * c * (nf - 1.0);
    let l2 = al * (0.5 * mf + nf / 3.0 + 1.0) + 0.5 * c * (mf - 1.0);
    SymmetricMatrix::from_rows(&[
        vec![al * (mf + 0.5 * nf + 1.0), c, 0.5 * c * rn, c * rm],
        vec![c, al * (nf + 0.5 * mf + 1.0), c * rn, 0.5 * c * rm],
        vec![0.5 * c * rn, c * rn, l1, c * (mf * nf).sqrt() / 3.0],
        vec![c * rm, 0.5 * c * rm, c * (mf * nf).sqrt() / 3.0, l2],
    ])
}

/// `σ(RD_α(S_{m,n}))`: the two repeated leaf-class values plus `σ(U**)`.
pub fn spectrum_double_star(m: usize, n: usize, alpha: Alpha) -> Result<Spectrum> {
    spectrum_double_star_with(m, n, alpha, FamilyPairing::ByLeafClass, &EigenOptions::default())
}

pub fn spectrum_double_star_with(
    m: usize,
    n: usize,
    alpha: Alpha,
    pairing: FamilyPairing,
    opts: &EigenOptions,
) -> Result<Spectrum> {
    let families = double_star_families(m, n, alpha, pairing)?;
    let theta = eig_sym(&double_star_quotient(m, n, alpha)?, opts)?;
    spectrum_from_families(&families, theta.values())
}

/// Candidate bottom-right entry of the first-stage reduced matrix `M′`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CornerEntry {
    /// `F + (z−1)Q = α(½n + ⅓m + 1) + ½(1−α)(n−1)`.
    BlockDecomposition,
    /// `α(½n + ⅓m + 1) + ½(m−1)(n−1)`.
    AsPrinted,
}

/// First decomposition stage of `RD_α(S_{m,n})`: the `n` leaves of `v` are
/// the copies (`z = n`, `s = 1`); `E` covers `u, v` and the `m` leaves of `u`.
pub fn double_star_block_form(m: usize, n: usize, alpha: Alpha) -> Result<BlockForm> {
    check_double_star(m, n)?;
    let (al, mf, nf) = (alpha.value(), m as f64, n as f64);
    let c = 1.0 - al;
    let t = m + 2;
    let rtr_u = mf + 0.5 * nf + 1.0;
    let rtr_v = nf + 0.5 * mf + 1.0;
    let rtr_x = 0.5 * mf + nf / 3.0 + 1.0;
    let rtr_y = 0.5 * nf + mf / 3.0 + 1.0;
    let e = SymmetricMatrix::from_fn(t, |i, j| match (i, j) {
        (0, 0) => al * rtr_u,
        (1, 1) => al * rtr_v,
        (0, 1) => c,
        (0, _) => c,
        (1, _) => 0.5 * c,
        _ if i == j => al * rtr_x,
        _ => 0.5 * c,
    });
    let gamma = (0..t)
        .map(|i| {
            vec![match i {
                0 => 0.5 * c,
                1 => c,
                _ => c / 3.0,
            }]
        })
        .collect();
    Ok(BlockForm {
        e,
        gamma,
        f: SymmetricMatrix::from_diagonal(&[al * rtr_y]),
        q: SymmetricMatrix::from_diagonal(&[0.5 * c]),
        z: n,
    })
}

/// `σ(RD_α(S_{m,n}))` assembled from the first decomposition stage, with the
/// chosen corner entry in `M′`.
pub fn double_star_first_stage_spectrum(
    m: usize,
    n: usize,
    alpha: Alpha,
    corner: CornerEntry,
    opts: &EigenOptions,
) -> Result<Spectrum> {
    let form = double_star_block_form(m, n, alpha)?;
    let mut dec = block_decompose(&form, opts)?;
    if corner == CornerEntry::AsPrinted {
        let (al, mf, nf) = (alpha.value(), m as f64, n as f64);
        let k = dec.reduced.order() - 1;
        let printed = al * (0.5 * nf + mf / 3.0 + 1.0) + 0.5 * (mf - 1.0) * (nf - 1.0);
        let mut rows = dec.reduced.to_rows();
        rows[k][k] = printed;
        dec.reduced = SymmetricMatrix::from_rows(&rows)?;
    }
    dec.spectrum(opts)
}

/// Deviations of each double-star candidate from the numerical spectrum of
/// `RD_α(S_{m,n})`, measured as the largest elementwise difference of the
/// sorted spectra.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubleStarDiagnostic {
    pub m: usize,
    pub n: usize,
    pub alpha: f64,
    pub leaf_class_pairing: f64,
    pub printed_pairing: f64,
    pub block_corner: f64,
    pub printed_corner: f64,
}

impl DoubleStarDiagnostic {
    /// Which corner entry reproduces the numerical spectrum within `tol`.
    pub fn reconciling_corner(&self, tol: f64) -> Option<CornerEntry> {
        if self.block_corner <= tol {
            Some(CornerEntry::BlockDecomposition)
        } else if self.printed_corner <= tol {
            Some(CornerEntry::AsPrinted)
        } else {
            None
        }
    }
}

pub fn diagnose_double_star(m: usize, n: usize, alpha: Alpha, opts: &EigenOptions) -> Result<DoubleStarDiagnostic> {
    let g = generate(&Family::DoubleStar { m, n })?;
    let numeric = eig_sym(&rd_alpha_matrix(&apsp(&g)?, alpha)?, opts)?;
    let dev = |s: Spectrum| numeric.max_deviation(&s).unwrap_or(f64::INFINITY);
    Ok(DoubleStarDiagnostic {
        m,
        n,
        alpha: alpha.value(),
        leaf_class_pairing: dev(spectrum_double_star_with(
            m,
            n,
            alpha,
            FamilyPairing::ByLeafClass,
            opts,
        )?),
        printed_pairing: dev(spectrum_double_star_with(m, n, alpha, FamilyPairing::AsPrinted, opts)?),
        block_corner: dev(double_star_first_stage_spectrum(
            m,
            n,
            alpha,
            CornerEntry::BlockDecomposition,
            opts,
        )?),
        printed_corner: dev(double_star_first_stage_spectrum(
            m,
            n,
            alpha,
            CornerEntry::AsPrinted,
            opts,
        )?),
    })
}
