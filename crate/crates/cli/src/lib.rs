//! Implementation of the `rdspread` command-line tool. [`run`] executes a
//! parsed [`Cli`] and writes the report to any writer, so the binary and the
//! integration tests share one code path.

pub mod args;
pub mod output;

use std::fmt::Write as _;
use std::io::Write;

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use rdspread::bounds::{check_all_with, Analysis, BoundOptions, BoundOutcome, DEFAULT_BOUND_TOL};
use rdspread::closed_forms::{
    diagnose_double_star, spectrum_complete, spectrum_complete_bipartite, spectrum_double_star_with, FamilyPairing,
};
use rdspread::graph::{apsp, generate, parse_edgelist, parse_graph6, to_graph6, Family, Graph};
use rdspread::linalg::{eig_sym, EigenOptions, Spectrum};
use rdspread::matrices::{rd_alpha_matrix, Alpha};

pub use args::Cli;
use args::{Command, FamilyName, GraphInput, OutputFormat, VerifyFamilyName};
use output::{num, opt_num, round_json, table};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] rdspread::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn input_err<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Input(msg.into()))
}

/// Whether every checked bound held (or every closed form matched).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Violation,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Violation => 1,
        }
    }
}

/// Spread bounds, in the order `check_all` emits them.
pub const SPREAD_BOUNDS: [&str; 8] = [
    "mirsky",
    "harary-lower",
    "frobenius-lower",
    "sandwich",
    "diam2",
    "diam3",
    "bipartite",
    "clique",
];

struct Settings {
    format: OutputFormat,
    bound: BoundOptions,
    tol: f64,
}

fn settings(cli: &Cli, default_format: OutputFormat) -> Result<Settings, CliError> {
    let tol = cli.tol.unwrap_or(DEFAULT_BOUND_TOL);
    if !(tol.is_finite() && tol > 0.0) {
        return input_err(format!("--tol must be a positive number, got {tol}"));
    }
    let mut bound = BoundOptions::default();
    if cli.tol.is_some() {
        bound.tol = tol;
        bound.eigen.grouping_tol = tol;
    }
    Ok(Settings {
        format: cli.format.unwrap_or(default_format),
        bound,
        tol,
    })
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Status, CliError> {
    match &cli.command {
        Command::Spectrum { input, alpha } => {
            let s = settings(cli, OutputFormat::Json)?;
            let (g, source) = load_graph(input)?;
            cmd_spectrum(&g, source, parse_alpha(*alpha)?, &s, out)
        }
        Command::Bounds { input, alpha } => {
            let s = settings(cli, OutputFormat::Json)?;
            let (g, source) = load_graph(input)?;
            cmd_bounds(&g, source, parse_alpha(*alpha)?, &s, out)
        }
        Command::Sweep {
            input,
            alphas,
            all_bounds,
        } => {
            let s = settings(cli, OutputFormat::Csv)?;
            let grid = parse_grid(alphas)?;
            let (g, source) = load_graph(input)?;
            cmd_sweep(&g, source, &grid, *all_bounds, &s, out)
        }
        Command::VerifyFamily {
            family,
            max_size,
            alphas,
        } => {
            let s = settings(cli, OutputFormat::Json)?;
            let grid = parse_grid(alphas)?;
            cmd_verify_family(*family, *max_size, &grid, &s, out)
        }
    }
}

fn parse_alpha(x: f64) -> Result<Alpha, CliError> {
    Alpha::new(x).or_else(|_| input_err(format!("--alpha must lie in [0, 1], got {x}")))
}

/// `start:stop:step` with `stop` included when it lies on the grid.
pub fn parse_grid(grid: &str) -> Result<Vec<Alpha>, CliError> {
    let parts: Vec<&str> = grid.split(':').collect();
    let [start, stop, step] = parts[..] else {
        return input_err(format!("alpha grid must look like start:stop:step, got {grid:?}"));
    };
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| CliError::Input(format!("alpha grid entry {s:?} is not a number")))
    };
    let (start, stop, step) = (parse(start)?, parse(stop)?, parse(step)?);
    if !(step.is_finite() && step > 0.0) {
        return input_err(format!("alpha grid step must be positive, got {step}"));
    }
    if !(start.is_finite() && stop.is_finite()) || start > stop {
        return input_err(format!("alpha grid {grid:?} is empty"));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    (0..count)
        .map(|i| {
            let x = output::round12(start + i as f64 * step);
            Alpha::new(x).or_else(|_| input_err(format!("alpha grid value {x} lies outside [0, 1]")))
        })
        .collect()
}

fn need(value: Option<usize>, flag: &str, family: &str) -> Result<usize, CliError> {
    value.ok_or_else(|| CliError::Input(format!("--family {family} needs --{flag}")))
}

fn load_graph(input: &GraphInput) -> Result<(Graph, &'static str), CliError> {
    if let Some(code) = &input.graph6 {
        return Ok((parse_graph6(code)?, "graph6"));
    }
    if let Some(path) = &input.edgelist {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        return Ok((parse_edgelist(&text)?, "edgelist"));
    }
    let Some(name) = input.family else {
        return input_err("one of --graph6, --edgelist or --family is required");
    };
    let family = match name {
        FamilyName::Complete => Family::Complete {
            n: need(input.n, "n", "complete")?,
        },
        FamilyName::CompleteBipartite => Family::CompleteBipartite {
            a: need(input.a, "a", "complete_bipartite")?,
            b: need(input.b, "b", "complete_bipartite")?,
        },
        FamilyName::Path => Family::Path {
            n: need(input.n, "n", "path")?,
        },
        FamilyName::Cycle => Family::Cycle {
            n: need(input.n, "n", "cycle")?,
        },
        FamilyName::DoubleStar => Family::DoubleStar {
            m: need(input.m, "m", "double_star")?,
            n: need(input.n, "n", "double_star")?,
        },
        FamilyName::Random => Family::RandomConnected {
            n: need(input.n, "n", "random")?,
            p: input
                .p
                .ok_or_else(|| CliError::Input("--family random needs --p".into()))?,
            seed: input.seed,
        },
    };
    Ok((generate(&family)?, "family"))
}

#[derive(Serialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    format: &'static str,
    graph6: String,
}

impl GraphJson {
    fn new(g: &Graph, format: &'static str) -> Self {
        Self {
            n: g.order(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            format,
            graph6: to_graph6(g),
        }
    }
}

#[derive(Serialize)]
struct Report<'a> {
    graph: GraphJson,
    alpha: f64,
    spectrum: &'a [f64],
    spread: f64,
    harary: f64,
    transmissions: &'a [f64],
    regular: bool,
    bounds: &'a [BoundOutcome],
}

fn write_json(out: &mut dyn Write, value: &impl Serialize) -> Result<(), CliError> {
    let mut v: Value = serde_json::to_value(value)?;
    round_json(&mut v);
    serde_json::to_writer_pretty(&mut *out, &v)?;
    writeln!(out)?;
    Ok(())
}

fn analyze<'g>(g: &'g Graph, alpha: Alpha, s: &Settings) -> Result<Analysis<'g>, CliError> {
    Ok(Analysis::new(g, alpha, s.bound)?)
}

fn summary_table(g: &Graph, an: &Analysis<'_>) -> String {
    let mut t = String::new();
    let p = an.profile();
    let _ = writeln!(t, "graph6         {}", to_graph6(g));
    let _ = writeln!(t, "n              {}", g.order());
    let _ = writeln!(t, "edges          {}", g.size());
    let _ = writeln!(t, "alpha          {}", num(an.alpha().value()));
    let _ = writeln!(t, "spread         {}", num(an.spread()));
    let _ = writeln!(t, "harary         {}", num(p.harary));
    let _ = writeln!(t, "regular        {}", p.is_regular);
    t
}

fn cmd_spectrum(
    g: &Graph,
    source: &'static str,
    alpha: Alpha,
    s: &Settings,
    out: &mut dyn Write,
) -> Result<Status, CliError> {
    let an = analyze(g, alpha, s)?;
    let values = an.spectrum().values();
    let rtr = &an.profile().rtr;
    match s.format {
        OutputFormat::Json => write_json(
            out,
            &Report {
                graph: GraphJson::new(g, source),
                alpha: alpha.value(),
                spectrum: values,
                spread: an.spread(),
                harary: an.profile().harary,
                transmissions: rtr,
                regular: an.profile().is_regular,
                bounds: &[],
            },
        )?,
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["quantity", "index", "value"])?;
            for (k, v) in values.iter().enumerate() {
                w.write_record(["eigenvalue".to_string(), (k + 1).to_string(), num(*v)])?;
            }
            for (v, r) in rtr.iter().enumerate() {
                w.write_record(["transmission".to_string(), v.to_string(), num(*r)])?;
            }
            w.write_record(["spread", "", &num(an.spread())])?;
            w.write_record(["harary", "", &num(an.profile().harary)])?;
            w.write_record(["regular", "", &an.profile().is_regular.to_string()])?;
            w.flush()?;
        }
        OutputFormat::Table => {
            let eig: Vec<Vec<String>> = values
                .iter()
                .enumerate()
                .map(|(k, v)| vec![(k + 1).to_string(), num(*v)])
                .collect();
            let tr: Vec<Vec<String>> = rtr
                .iter()
                .enumerate()
                .map(|(v, r)| vec![v.to_string(), num(*r)])
                .collect();
            out.write_all(summary_table(g, &an).as_bytes())?;
            writeln!(out)?;
            out.write_all(table(&["k", "eigenvalue"], &eig).as_bytes())?;
            writeln!(out)?;
            out.write_all(table(&["vertex", "transmission"], &tr).as_bytes())?;
        }
    }
    Ok(Status::Ok)
}

fn status_of(outcomes: &[BoundOutcome]) -> Status {
    if outcomes.iter().filter_map(BoundOutcome::report).all(|r| r.holds) {
        Status::Ok
    } else {
        Status::Violation
    }
}

fn bound_cells(alpha: f64, o: &BoundOutcome) -> Vec<String> {
    match o {
        BoundOutcome::Evaluated(r) => vec![
            num(alpha),
            r.name.clone(),
            "evaluated".into(),
            opt_num(r.bound_lo),
            opt_num(r.bound_hi),
            num(r.observed),
            num(r.slack),
            r.holds.to_string(),
            r.equality.to_string(),
            String::new(),
        ],
        BoundOutcome::Skipped { name, reason } => {
            let mut cells = vec![num(alpha), name.clone(), "skipped".into()];
            cells.extend(std::iter::repeat_n(String::new(), 6));
            cells.push(reason.clone());
            cells
        }
    }
}

const BOUND_COLUMNS: [&str; 10] = [
    "alpha",
    "bound_name",
    "status",
    "bound_lo",
    "bound_hi",
    "observed",
    "slack",
    "holds",
    "equality",
    "reason",
];

fn cmd_bounds(
    g: &Graph,
    source: &'static str,
    alpha: Alpha,
    s: &Settings,
    out: &mut dyn Write,
) -> Result<Status, CliError> {
    let an = analyze(g, alpha, s)?;
    let outcomes = check_all_with(&an)?;
    match s.format {
        OutputFormat::Json => write_json(
            out,
            &Report {
                graph: GraphJson::new(g, source),
                alpha: alpha.value(),
                spectrum: an.spectrum().values(),
                spread: an.spread(),
                harary: an.profile().harary,
                transmissions: &an.profile().rtr,
                regular: an.profile().is_regular,
                bounds: &outcomes,
            },
        )?,
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(BOUND_COLUMNS)?;
            for o in &outcomes {
                w.write_record(bound_cells(alpha.value(), o))?;
            }
            w.flush()?;
        }
        OutputFormat::Table => {
            let rows: Vec<Vec<String>> = outcomes
                .iter()
                .map(|o| bound_cells(alpha.value(), o)[1..].to_vec())
                .collect();
            out.write_all(summary_table(g, &an).as_bytes())?;
            writeln!(out)?;
            out.write_all(table(&BOUND_COLUMNS[1..], &rows).as_bytes())?;
        }
    }
    Ok(status_of(&outcomes))
}

#[derive(Serialize)]
struct SweepRow<'a> {
    alpha: f64,
    #[serde(flatten)]
    outcome: &'a BoundOutcome,
}

#[derive(Serialize)]
struct SweepReport<'a> {
    graph: GraphJson,
    alphas: Vec<f64>,
    rows: Vec<SweepRow<'a>>,
}

const SWEEP_COLUMNS: [&str; 7] = [
    "alpha",
    "bound_name",
    "bound_lo",
    "bound_hi",
    "observed",
    "slack",
    "holds",
];

fn cmd_sweep(
    g: &Graph,
    source: &'static str,
    grid: &[Alpha],
    all_bounds: bool,
    s: &Settings,
    out: &mut dyn Write,
) -> Result<Status, CliError> {
    let mut cells: Vec<(f64, Vec<BoundOutcome>)> = Vec::with_capacity(grid.len());
    for &alpha in grid {
        let an = analyze(g, alpha, s)?;
        let outcomes = check_all_with(&an)?
            .into_iter()
            .filter(|o| all_bounds || SPREAD_BOUNDS.contains(&o.name()))
            .collect();
        cells.push((alpha.value(), outcomes));
    }
    let status = if cells.iter().all(|(_, o)| status_of(o) == Status::Ok) {
        Status::Ok
    } else {
        Status::Violation
    };
    let evaluated = cells
        .iter()
        .flat_map(|(a, os)| os.iter().filter_map(move |o| o.report().map(|r| (*a, r))));
    match s.format {
        OutputFormat::Json => {
            let rows = cells
                .iter()
                .flat_map(|(a, os)| os.iter().map(move |o| SweepRow { alpha: *a, outcome: o }))
                .collect();
            write_json(
                out,
                &SweepReport {
                    graph: GraphJson::new(g, source),
                    alphas: grid.iter().map(|a| a.value()).collect(),
                    rows,
                },
            )?
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(SWEEP_COLUMNS)?;
            for (a, r) in evaluated {
                w.write_record([
                    num(a),
                    r.name.clone(),
                    opt_num(r.bound_lo),
                    opt_num(r.bound_hi),
                    num(r.observed),
                    num(r.slack),
                    r.holds.to_string(),
                ])?;
            }
            w.flush()?;
        }
        OutputFormat::Table => {
            let rows: Vec<Vec<String>> = evaluated
                .map(|(a, r)| {
                    vec![
                        num(a),
                        r.name.clone(),
                        opt_num(r.bound_lo),
                        opt_num(r.bound_hi),
                        num(r.observed),
                        num(r.slack),
                        r.holds.to_string(),
                    ]
                })
                .collect();
            out.write_all(table(&SWEEP_COLUMNS, &rows).as_bytes())?;
        }
    }
    Ok(status)
}

#[derive(Serialize)]
struct VerifyCase {
    params: String,
    alpha: f64,
    deviation: f64,
}

#[derive(Serialize, Default)]
struct DoubleStarSummary {
    leaf_class_pairing: f64,
    printed_pairing: f64,
    block_corner: f64,
    printed_corner: f64,
}

#[derive(Serialize)]
struct VerifyReport {
    family: &'static str,
    max_size: usize,
    alphas: Vec<f64>,
    tol: f64,
    cases: Vec<VerifyCase>,
    skipped: Vec<String>,
    max_deviation: f64,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    double_star: Option<DoubleStarSummary>,
}

fn numeric_spectrum(family: &Family, alpha: Alpha, opts: &EigenOptions) -> Result<Spectrum, CliError> {
    let g = generate(family)?;
    Ok(eig_sym(&rd_alpha_matrix(&apsp(&g)?, alpha)?, opts)?)
}

fn deviation(closed: &Spectrum, numeric: &Spectrum) -> f64 {
    closed.max_deviation(numeric).unwrap_or(f64::INFINITY)
}

fn cmd_verify_family(
    family: VerifyFamilyName,
    max_size: Option<usize>,
    grid: &[Alpha],
    s: &Settings,
    out: &mut dyn Write,
) -> Result<Status, CliError> {
    let eigen = s.bound.eigen;
    let (name, max_size) = match family {
        VerifyFamilyName::Complete => ("complete", max_size.unwrap_or(12)),
        VerifyFamilyName::CompleteBipartite => ("complete_bipartite", max_size.unwrap_or(12)),
        VerifyFamilyName::DoubleStar => ("double_star", max_size.unwrap_or(10)),
    };
    let mut cases = Vec::new();
    let mut skipped = Vec::new();
    let mut ds = (family == VerifyFamilyName::DoubleStar).then(DoubleStarSummary::default);
    for &alpha in grid {
        match family {
            VerifyFamilyName::Complete => {
                for n in 2..=max_size {
                    let params = format!("n={n}");
                    if alpha.value() >= 1.0 {
                        skipped.push(format!("{params} alpha=1: the closed form covers alpha < 1"));
                        continue;
                    }
                    let dev = deviation(
                        &spectrum_complete(n, alpha)?,
                        &numeric_spectrum(&Family::Complete { n }, alpha, &eigen)?,
                    );
                    cases.push(VerifyCase {
                        params,
                        alpha: alpha.value(),
                        deviation: dev,
                    });
                }
            }
            VerifyFamilyName::CompleteBipartite => {
                for total in 2..=max_size {
                    for a in 1..total {
                        let b = total - a;
                        let dev = deviation(
                            &spectrum_complete_bipartite(a, b, alpha)?,
                            &numeric_spectrum(&Family::CompleteBipartite { a, b }, alpha, &eigen)?,
                        );
                        cases.push(VerifyCase {
                            params: format!("a={a} b={b}"),
                            alpha: alpha.value(),
                            deviation: dev,
                        });
                    }
                }
            }
            VerifyFamilyName::DoubleStar => {
                let summary = ds.as_mut().expect("double star summary");
                for total in 2..=max_size {
                    for m in 1..total {
                        let n = total - m;
                        let closed = spectrum_double_star_with(m, n, alpha, FamilyPairing::ByLeafClass, &eigen)?;
                        let dev = deviation(&closed, &numeric_spectrum(&Family::DoubleStar { m, n }, alpha, &eigen)?);
                        let d = diagnose_double_star(m, n, alpha, &eigen)?;
                        summary.leaf_class_pairing = summary.leaf_class_pairing.max(d.leaf_class_pairing);
                        summary.printed_pairing = summary.printed_pairing.max(d.printed_pairing);
                        summary.block_corner = summary.block_corner.max(d.block_corner);
                        summary.printed_corner = summary.printed_corner.max(d.printed_corner);
                        cases.push(VerifyCase {
                            params: format!("m={m} n={n}"),
                            alpha: alpha.value(),
                            deviation: dev,
                        });
                    }
                }
            }
        }
    }
    let max_deviation = cases.iter().map(|c| c.deviation).fold(0.0f64, f64::max);
    let pass = max_deviation <= s.tol;
    let report = VerifyReport {
        family: name,
        max_size,
        alphas: grid.iter().map(|a| a.value()).collect(),
        tol: s.tol,
        cases,
        skipped,
        max_deviation,
        pass,
        double_star: ds,
    };
    match s.format {
        OutputFormat::Json => write_json(out, &report)?,
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["family", "params", "alpha", "deviation"])?;
            for c in &report.cases {
                w.write_record([name.to_string(), c.params.clone(), num(c.alpha), num(c.deviation)])?;
            }
            w.flush()?;
        }
        OutputFormat::Table => {
            let rows: Vec<Vec<String>> = report
                .cases
                .iter()
                .map(|c| vec![c.params.clone(), num(c.alpha), num(c.deviation)])
                .collect();
            out.write_all(table(&["params", "alpha", "deviation"], &rows).as_bytes())?;
            writeln!(
                out,
                "\nmax deviation {} (tol {}): {}",
                num(max_deviation),
                num(s.tol),
                if pass { "pass" } else { "FAIL" }
            )?;
            if let Some(d) = &report.double_star {
                writeln!(
                    out,
                    "double star max deviations: leaf-class pairing {}, printed pairing {}, block-decomposition corner {}, printed corner {}",
                    num(d.leaf_class_pairing),
                    num(d.printed_pairing),
                    num(d.block_corner),
                    num(d.printed_corner)
                )?;
            }
        }
    }
    Ok(if pass { Status::Ok } else { Status::Violation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    fn run_args(args: &[&str]) -> (Result<Status, CliError>, String) {
        let cli = Cli::try_parse_from(std::iter::once("rdspread").chain(args.iter().copied())).unwrap();
        let mut buf = Vec::new();
        let r = run(&cli, &mut buf);
        (r, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn grid_parsing() {
        let g: Vec<f64> = parse_grid("0:1:0.25").unwrap().iter().map(|a| a.value()).collect();
        assert_eq!(g, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let g = parse_grid("0:1:0.05").unwrap();
        assert_eq!(g.len(), 21);
        assert_eq!(g[6].value(), 0.3);
        assert_eq!(parse_grid("0.5:0.5:0.1").unwrap().len(), 1);
        for bad in ["1:0:0.1", "0:1:0", "0:1", "a:1:0.1", "0:1.5:0.5"] {
            assert!(parse_grid(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn family_parameters_are_required() {
        let (r, _) = run_args(&["spectrum", "--family", "path"]);
        assert!(matches!(r, Err(CliError::Input(m)) if m.contains("--n")));
        let (r, _) = run_args(&["spectrum", "--family", "random", "--n", "5"]);
        assert!(matches!(r, Err(CliError::Input(m)) if m.contains("--p")));
    }

    #[test]
    fn input_sources_are_exclusive() {
        let r = Cli::try_parse_from(["rdspread", "spectrum", "--graph6", "C~", "--family", "path", "--n", "3"]);
        assert!(r.is_err());
        assert!(Cli::try_parse_from(["rdspread", "spectrum"]).is_err());
    }

    #[test]
    fn spectrum_table_lists_values() {
        let (r, text) = run_args(&[
            "spectrum", "--family", "complete", "--n", "4", "--alpha", "0.5", "--format", "table",
        ]);
        assert_eq!(r.unwrap(), Status::Ok);
        assert!(text.contains("spread         2\n"));
        assert!(text.contains("1  3"));
    }

    #[test]
    fn bad_tolerance_is_rejected() {
        let (r, _) = run_args(&["spectrum", "--family", "complete", "--n", "3", "--tol", "0"]);
        assert!(matches!(r, Err(CliError::Input(_))));
    }
}
