//! Spread and eigenvalue bounds for `RD_α(G)`, each evaluated against the
//! numerically computed spectrum and returned as a [`BoundReport`].
//!
//! Every bound has a direct entry point taking a graph, which errors when its
//! preconditions fail, and [`check_all`] runs the whole catalogue on one
//! [`Analysis`], turning precondition failures into [`BoundOutcome::Skipped`].
//!
//! `holds` and `equality` are decided with an absolute tolerance (default
//! `1e-8`). `equality` means the observed value sits on an active bound within
//! that tolerance; it is a numerical flag, not a proof of the exact case.

use std::cell::OnceCell;
use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::graph::{apsp, maximum_cliques, DistanceMatrix, Graph};
use crate::linalg::{eig_sym, spread_of, two_by_two_gap, EigenOptions, Spectrum};
use crate::matrices::{
    a_alpha_matrix, mstar_matrix, neighbor_mean_transmission, rd_alpha_frobenius_sq, rd_alpha_matrix, rd_matrix,
    reciprocal_square_sum, transmission_profile, Alpha, TransmissionProfile,
};

pub const DEFAULT_BOUND_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Lower,
    Upper,
    Sandwich,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub kind: BoundKind,
    pub observed: f64,
    pub bound_lo: Option<f64>,
    pub bound_hi: Option<f64>,
    pub holds: bool,
    /// Distance from `observed` to the nearest present bound, negative when violated.
    pub slack: f64,
    pub equality: bool,
    pub context: BTreeMap<String, f64>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum BoundOutcome {
    Evaluated(BoundReport),
    Skipped { name: String, reason: String },
}

impl BoundOutcome {
    pub fn name(&self) -> &str {
        match self {
            BoundOutcome::Evaluated(r) => &r.name,
            BoundOutcome::Skipped { name, .. } => name,
        }
    }

    pub fn report(&self) -> Option<&BoundReport> {
        match self {
            BoundOutcome::Evaluated(r) => Some(r),
            BoundOutcome::Skipped { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundOptions {
    /// Absolute tolerance for `holds` and `equality`.
    pub tol: f64,
    pub eigen: EigenOptions,
}

impl Default for BoundOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_BOUND_TOL,
            eigen: EigenOptions::default(),
        }
    }
}

/// Distances, transmissions and the `RD_α` spectrum of one connected graph,
/// shared by all bounds. The `RD` spectrum is computed on first use.
#[derive(Debug)]
pub struct Analysis<'g> {
    graph: &'g Graph,
    alpha: Alpha,
    opts: BoundOptions,
    distances: DistanceMatrix,
    profile: TransmissionProfile,
    spectrum: Spectrum,
    spread: f64,
    rd_spectrum: OnceCell<Spectrum>,
}

impl<'g> Analysis<'g> {
    pub fn new(graph: &'g Graph, alpha: Alpha, opts: BoundOptions) -> Result<Self> {
        graph.require_connected()?;
        if graph.order() < 2 {
            return domain("RD_alpha needs at least two vertices");
        }
        let distances = apsp(graph)?;
        let profile = transmission_profile(&distances)?;
        let spectrum = eig_sym(&rd_alpha_matrix(&distances, alpha)?, &opts.eigen)?;
        let spread = spread_of(&spectrum)?;
        Ok(Self {
            graph,
            alpha,
            opts,
            distances,
            profile,
            spectrum,
            spread,
            rd_spectrum: OnceCell::new(),
        })
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn alpha(&self) -> Alpha {
        self.alpha
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.distances
    }

    pub fn profile(&self) -> &TransmissionProfile {
        &self.profile
    }

    /// `σ(RD_α(G))`, descending.
    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn spread(&self) -> f64 {
        self.spread
    }

    fn rd_spectrum(&self) -> Result<&Spectrum> {
        if let Some(s) = self.rd_spectrum.get() {
            return Ok(s);
        }
        let s = eig_sym(&rd_matrix(&self.distances)?, &self.opts.eigen)?;
        Ok(self.rd_spectrum.get_or_init(|| s))
    }

    fn n(&self) -> usize {
        self.graph.order()
    }

    fn a(&self) -> f64 {
        self.alpha.value()
    }

    fn report(&self, name: impl Into<String>, observed: f64, lo: Option<f64>, hi: Option<f64>) -> BoundReport {
        let kind = match (lo, hi) {
            (Some(_), Some(_)) => BoundKind::Sandwich,
            (Some(_), None) => BoundKind::Lower,
            _ => BoundKind::Upper,
        };
        let slack = lo
            .map(|l| observed - l)
            .into_iter()
            .chain(hi.map(|h| h - observed))
            .fold(f64::INFINITY, f64::min);
        let tol = self.opts.tol;
        let on = |b: Option<f64>| b.is_some_and(|b| (observed - b).abs() <= tol);
        let mut context = BTreeMap::new();
        context.insert("alpha".to_string(), self.a());
        context.insert("n".to_string(), self.n() as f64);
        context.insert("regular".to_string(), f64::from(u8::from(self.profile.is_regular)));
        BoundReport {
            name: name.into(),
            kind,
            observed,
            bound_lo: lo,
            bound_hi: hi,
            holds: slack >= -tol,
            slack,
            equality: on(lo) || on(hi),
            context,
            notes: Vec::new(),
        }
    }
}

trait WithContext {
    fn with(self, key: &str, value: f64) -> Self;
    fn note(self, text: &str) -> Self;
}

impl WithContext for BoundReport {
    fn with(mut self, key: &str, value: f64) -> Self {
        self.context.insert(key.to_string(), value);
        self
    }

    fn note(mut self, text: &str) -> Self {
        self.notes.push(text.to_string());
        self
    }
}

fn below_one(an: &Analysis<'_>, what: &str) -> Result<()> {
    if an.a() >= 1.0 {
        return domain(format!("{what} needs alpha < 1"));
    }
    Ok(())
}

fn mirsky(an: &Analysis<'_>) -> Result<BoundReport> {
    let n = an.n();
    if n < 3 {
        return domain(format!("Mirsky bound needs n >= 3, got {n}"));
    }
    let (a, c) = (an.a(), an.alpha.complement());
    let h = an.profile.harary;
    let radicand = 2.0 * a * a * an.profile.sum_of_squares() + 2.0 * c * c * reciprocal_square_sum(&an.distances)
        - 8.0 / n as f64 * a * a * h * h;
    let bound = radicand.max(0.0).sqrt();
    let mut r = an.report("mirsky", an.spread, None, Some(bound));
    let v = an.spectrum.values();
    let mid = 0.5 * (v[0] + v[n - 1]);
    r.equality = v[1..n - 1].iter().all(|x| (x - mid).abs() <= an.opts.tol);
    Ok(r.with("harary", h)
        .with("radicand", radicand)
        .note("equality tests lambda_2 = ... = lambda_(n-1) = (lambda_1 + lambda_n)/2 on RD_alpha(G)"))
}

fn lambda1(an: &Analysis<'_>) -> Result<BoundReport> {
    let n = an.n();
    let (a, c) = (an.a(), an.alpha.complement());
    let rtr = &an.profile.rtr;
    let lo = (an.profile.sum_of_squares() / n as f64).sqrt();
    let hi = (0..n)
        .map(|i| {
            let mixed: f64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (rtr[j] / rtr[i]).sqrt() / f64::from(an.distances.get(i, j)))
                .sum();
            a * rtr[i] + c * mixed
        })
        .fold(f64::MIN, f64::max);
    Ok(an.report("lambda1", an.spectrum.values()[0], Some(lo), Some(hi)))
}

fn lambda1_harary(an: &Analysis<'_>) -> Result<BoundReport> {
    let h = an.profile.harary;
    let lo = 2.0 * h / an.n() as f64;
    Ok(an
        .report("lambda1-harary", an.spectrum.values()[0], Some(lo), None)
        .with("harary", h))
}

fn harary_lower(an: &Analysis<'_>) -> Result<BoundReport> {
    below_one(an, "the Harary spread bound")?;
    let h = an.profile.harary;
    let lo = 2.0 * an.alpha.complement() * h / (an.n() - 1) as f64;
    Ok(an.report("harary-lower", an.spread, Some(lo), None).with("harary", h))
}

fn frobenius_lower(an: &Analysis<'_>) -> Result<BoundReport> {
    let a = an.a();
    if !(0.5..1.0).contains(&a) {
        return domain(format!("the Frobenius spread bound needs alpha in [0.5, 1), got {a}"));
    }
    let n = an.n() as f64;
    let frob = rd_alpha_frobenius_sq(&an.distances, an.alpha)?;
    let f = |x: f64| x - ((frob - x * x).max(0.0) / (n - 1.0)).sqrt();
    let x_rtr = (an.profile.sum_of_squares() / n).sqrt();
    let x_harary = 2.0 * an.profile.harary / n;
    let (f_rtr, f_harary) = (f(x_rtr), f(x_harary));
    Ok(an
        .report("frobenius-lower", an.spread, Some(f_rtr.max(f_harary)), None)
        .with("frobenius_sq", frob)
        .with("x_rtr", x_rtr)
        .with("x_harary", x_harary)
        .with("f_rtr", f_rtr)
        .with("f_harary", f_harary))
}

fn eigen_shift(an: &Analysis<'_>, k: usize) -> Result<BoundReport> {
    let n = an.n();
    if k < 1 || k > n {
        return domain(format!("eigenvalue index k must lie in 1..={n}, got {k}"));
    }
    let (a, c) = (an.a(), an.alpha.complement());
    let rd_k = an.rd_spectrum()?.values()[k - 1];
    let lo = a * an.profile.rtr_min + c * rd_k;
    let hi = a * an.profile.rtr_max + c * rd_k;
    Ok(an
        .report(
            format!("eigen-shift[k={k}]"),
            an.spectrum.values()[k - 1],
            Some(lo),
            Some(hi),
        )
        .with("k", k as f64)
        .with("rd_lambda_k", rd_k))
}

fn sandwich(an: &Analysis<'_>) -> Result<BoundReport> {
    let (a, c) = (an.a(), an.alpha.complement());
    let s_rd = spread_of(an.rd_spectrum()?)?;
    let width = an.profile.rtr_max - an.profile.rtr_min;
    Ok(an
        .report(
            "sandwich",
            an.spread,
            Some(c * s_rd - a * width),
            Some(c * s_rd + a * width),
        )
        .with("rd_spread", s_rd)
        .with("rtr_max", an.profile.rtr_max)
        .with("rtr_min", an.profile.rtr_min))
}

fn diam2(an: &Analysis<'_>) -> Result<BoundReport> {
    let d = an.distances.diameter();
    if d != 2 {
        return domain(format!("the diameter-2 spread bound needs diameter 2, got {d}"));
    }
    let comp = a_alpha_matrix(&an.graph.complement(), an.alpha);
    let s_comp = spread_of(&eig_sym(&comp, &an.opts.eigen)?)?;
    let hi = an.alpha.complement() * an.n() as f64 + 0.5 * s_comp;
    Ok(an
        .report("diam2", an.spread, None, Some(hi))
        .with("complement_a_alpha_spread", s_comp))
}

fn diam3(an: &Analysis<'_>) -> Result<BoundReport> {
    let d = an.distances.diameter();
    if d < 3 {
        return domain(format!("the diameter-3 spread bound needs diameter >= 3, got {d}"));
    }
    let s_a = spread_of(&eig_sym(&a_alpha_matrix(an.graph, an.alpha), &an.opts.eigen)?)?;
    let s_m = spread_of(&eig_sym(&mstar_matrix(&an.distances, an.alpha)?, &an.opts.eigen)?)?;
    let hi = 0.5 * an.alpha.complement() * an.n() as f64 + 0.5 * s_a + s_m;
    Ok(an
        .report("diam3", an.spread, None, Some(hi))
        .with("diameter", f64::from(d))
        .with("a_alpha_spread", s_a)
        .with("mstar_spread", s_m))
}

/// Quotient entries `[[b11, b12], [b21, b22]]` of `RD_α(G)` over the partition
/// `{N[v], V ∖ N[v]}`, from the closed expressions in `Δ`, `t_v`, `RTr(v)`, `H(G)`.
/// Valid as a quotient only for bipartite `G`, where neighbours of `v` are
/// pairwise at distance 2.
pub fn bipartite_quotient_entries(an: &Analysis<'_>, v: usize) -> Result<[[f64; 2]; 2]> {
    let n = an.n();
    let delta = an.graph.degree(v);
    if delta + 1 >= n {
        return domain(format!(
            "vertex {v} has degree {delta}; the partition needs degree <= n - 2"
        ));
    }
    let (a, c) = (an.a(), an.alpha.complement());
    let dl = delta as f64;
    let t = neighbor_mean_transmission(an.graph, &an.profile, v)?;
    let rtr = an.profile.rtr[v];
    let h2 = 2.0 * an.profile.harary;
    let inner = 0.5 * dl * (dl + 3.0);
    let cross = dl * t + rtr - inner;
    let (p, q) = (dl + 1.0, (n - delta - 1) as f64);
    Ok([
        [(c * inner + a * dl * t + a * rtr) / p, c * cross / p],
        [
            c * cross / q,
            (a * (h2 - dl * t - rtr) + c * (h2 - 2.0 * dl * t - 2.0 * rtr + inner)) / q,
        ],
    ])
}

fn bipartite(an: &Analysis<'_>) -> Result<BoundReport> {
    let n = an.n();
    if n < 3 {
        return domain(format!("the bipartite spread bound needs n >= 3, got {n}"));
    }
    if an.graph.bipartition().is_none() {
        return domain("the bipartite spread bound needs a bipartite graph");
    }
    let (delta, tops) = an.graph.max_degree_vertices();
    if delta + 2 > n {
        return domain(format!(
            "maximum degree {delta} = n - 1: the graph is a star, whose spread is given by the complete bipartite closed form"
        ));
    }
    let mut best: Option<(f64, usize, [[f64; 2]; 2])> = None;
    for &v in &tops {
        let b = bipartite_quotient_entries(an, v)?;
        let gap = two_by_two_gap(b[0][0], b[0][1], b[1][0], b[1][1]);
        if best.is_none_or(|(g, _, _)| gap > g) {
            best = Some((gap, v, b));
        }
    }
    let (gap, v, b) = best.expect("a connected graph has a vertex");
    Ok(an
        .report("bipartite", an.spread, Some(gap), None)
        .with("delta", delta as f64)
        .with("vertex", v as f64)
        .with("harary", an.profile.harary)
        .with("b11", b[0][0])
        .with("b12", b[0][1])
        .with("b21", b[1][0])
        .with("b22", b[1][1])
        .note("H is the Harary index of G"))
}

/// Quotient entries `[[c11, c12], [c21, c22]]` of `RD_α(G)` over
/// `{clique, V ∖ clique}` from `ω`, `s = Σ_{v∈clique} RTr(v)` and `H(G)`.
pub fn clique_quotient_entries(an: &Analysis<'_>, clique: &[usize]) -> Result<[[f64; 2]; 2]> {
    let n = an.n();
    let w = clique.len();
    if w < 1 || w >= n {
        return domain(format!("clique size {w} must lie in 1..n"));
    }
    let (a, c) = (an.a(), an.alpha.complement());
    let wf = w as f64;
    let s: f64 = clique.iter().map(|&v| an.profile.rtr[v]).sum();
    let h2 = 2.0 * an.profile.harary;
    let inner = wf * (wf - 1.0);
    let q = (n - w) as f64;
    Ok([
        [(a * s + c * inner) / wf, c * (s - inner) / wf],
        [c * (s - inner) / q, (a * (h2 - s) + c * (h2 - 2.0 * s + inner)) / q],
    ])
}

fn clique(an: &Analysis<'_>) -> Result<BoundReport> {
    let n = an.n();
    if n < 3 {
        return domain(format!("the clique spread bound needs n >= 3, got {n}"));
    }
    let found = maximum_cliques(an.graph)?;
    if found.omega >= n {
        return domain("clique number n: the graph is complete, with spread n(1 - alpha)");
    }
    let mut best: Option<(f64, usize)> = None;
    for (i, cl) in found.cliques.iter().enumerate() {
        let c = clique_quotient_entries(an, cl)?;
        let gap = two_by_two_gap(c[0][0], c[0][1], c[1][0], c[1][1]);
        if best.is_none_or(|(g, _)| gap > g) {
            best = Some((gap, i));
        }
    }
    let (gap, i) = best.expect("a graph with an edge has a maximum clique");
    let s: f64 = found.cliques[i].iter().map(|&v| an.profile.rtr[v]).sum();
    Ok(an
        .report("clique", an.spread, Some(gap), None)
        .with("omega", found.omega as f64)
        .with("cliques", found.cliques.len() as f64)
        .with("s", s)
        .with("harary", an.profile.harary))
}

macro_rules! entry_point {
    ($(#[$doc:meta])* $name:ident => $inner:ident) => {
        $(#[$doc])*
        pub fn $name(g: &Graph, alpha: Alpha, opts: &BoundOptions) -> Result<BoundReport> {
            $inner(&Analysis::new(g, alpha, *opts)?)
        }
    };
}

entry_point!(
    /// `S ≤ √(2α²ΣRTr² + 2(1−α)²Σ_{i≠j} d_ij⁻² − (8/n)α²H²)`, `n ≥ 3`.
    mirsky_upper => mirsky
);
entry_point!(
    /// `√(ΣRTr²/n) ≤ λ₁ ≤ max_i (α RTr_i + (1−α) Σ_j d_ij⁻¹ √(RTr_j/RTr_i))`.
    lambda1_bounds => lambda1
);
entry_point!(
    /// `λ₁ ≥ 2H/n`.
    lambda1_harary_lower => lambda1_harary
);
entry_point!(
    /// `S ≥ 2(1−α)H/(n−1)`, `α < 1`.
    spread_lower_harary => harary_lower
);
entry_point!(
    /// `S ≥ x − √((‖RD_α‖²_F − x²)/(n−1))`, the larger over
    /// `x ∈ {√(ΣRTr²/n), 2H/n}`, `α ∈ [½, 1)`.
    spread_lower_frobenius => frobenius_lower
);
entry_point!(
    /// `α(RTr_min − RTr_max) + (1−α)S(RD) ≤ S ≤ α(RTr_max − RTr_min) + (1−α)S(RD)`.
    spread_sandwich_transmission => sandwich
);
entry_point!(
    /// `S ≤ (1−α)n + ½S(A_α(Ḡ))` for diameter 2.
    spread_upper_diam2 => diam2
);
entry_point!(
    /// `S ≤ ½(1−α)n + ½S(A_α(G)) + S(M*)` for diameter at least 3.
    spread_upper_diam3 => diam3
);
entry_point!(
    /// Quotient lower bound over `{N[v], rest}` for bipartite graphs with `Δ ≤ n−2`,
    /// maximised over maximum-degree vertices `v`.
    spread_lower_bipartite => bipartite
);
entry_point!(
    /// Quotient lower bound over `{clique, rest}`, maximised over all maximum
    /// cliques; needs `2 ≤ ω ≤ n−1`.
    spread_lower_clique => clique
);

/// `α RTr_min + (1−α)λ_k(RD) ≤ λ_k(RD_α) ≤ α RTr_max + (1−α)λ_k(RD)`, `1 ≤ k ≤ n`.
pub fn eigen_shift_bounds(g: &Graph, alpha: Alpha, k: usize, opts: &BoundOptions) -> Result<BoundReport> {
    eigen_shift(&Analysis::new(g, alpha, *opts)?, k)
}

fn outcome(name: &str, r: Result<BoundReport>) -> Result<BoundOutcome> {
    match r {
        Ok(rep) => Ok(BoundOutcome::Evaluated(rep)),
        Err(Error::Domain(reason)) => Ok(BoundOutcome::Skipped {
            name: name.to_string(),
            reason,
        }),
        Err(e) => Err(e),
    }
}

/// Every bound in a fixed order: mirsky, lambda1, lambda1-harary,
/// harary-lower, frobenius-lower, eigen-shift for k = 1..=n, sandwich, diam2,
/// diam3, bipartite, clique.
pub fn check_all(g: &Graph, alpha: Alpha, opts: &BoundOptions) -> Result<Vec<BoundOutcome>> {
    check_all_with(&Analysis::new(g, alpha, *opts)?)
}

pub fn check_all_with(an: &Analysis<'_>) -> Result<Vec<BoundOutcome>> {
    let mut out = vec![
        outcome("mirsky", mirsky(an))?,
        outcome("lambda1", lambda1(an))?,
        outcome("lambda1-harary", lambda1_harary(an))?,
        outcome("harary-lower", harary_lower(an))?,
        outcome("frobenius-lower", frobenius_lower(an))?,
    ];
    for k in 1..=an.n() {
        out.push(outcome(&format!("eigen-shift[k={k}]"), eigen_shift(an, k))?);
    }
    out.push(outcome("sandwich", sandwich(an))?);
    out.push(outcome("diam2", diam2(an))?);
    out.push(outcome("diam3", diam3(an))?);
    out.push(outcome("bipartite", bipartite(an))?);
    out.push(outcome("clique", clique(an))?);
    Ok(out)
}
