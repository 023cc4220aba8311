//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits with a
//! non-zero status if any criterion fails.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rdspread::bounds::{
    check_all_with, spread_lower_bipartite, spread_lower_clique, spread_upper_diam2, Analysis, BoundOptions,
    BoundOutcome,
};
use rdspread::closed_forms::{
    diagnose_double_star, spectrum_complete, spectrum_complete_bipartite, spectrum_double_star, CornerEntry,
};
use rdspread::graph::{apsp, enumerate::connected_graphs, generate, Family, Graph};
use rdspread::linalg::{eig_sym, frobenius_norm_sq, interlaces, quotient_matrix, spread_of, EigenOptions, Spectrum};
use rdspread::matrices::{rd_alpha_frobenius_sq, rd_alpha_matrix, rd_matrix, transmission_profile, Alpha};

const GRID: [f64; 4] = [0.0, 0.25, 0.5, 0.75];
const SWEEP_ALPHAS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 0.9];
const ORACLE_TOL: f64 = 1e-8;
const SPREAD_TOL: f64 = 1e-9;
const SLACK_TOL: f64 = 1e-8;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn alpha(x: f64) -> Alpha {
    Alpha::new(x).unwrap()
}

fn opts() -> EigenOptions {
    EigenOptions::default()
}

fn fam(f: Family) -> Graph {
    generate(&f).unwrap()
}

fn numeric(g: &Graph, a: Alpha) -> Spectrum {
    eig_sym(&rd_alpha_matrix(&apsp(g).unwrap(), a).unwrap(), &opts()).unwrap()
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sweep_graphs() -> Vec<Graph> {
    (0..200u64)
        .map(|seed| {
            let n = 3 + (seed % 10) as usize;
            let p = [0.3, 0.5, 0.8][(seed % 3) as usize];
            fam(Family::RandomConnected { n, p, seed })
        })
        .collect()
}

fn regular_graphs() -> Vec<Graph> {
    let cycles = (3..=12).map(|n| fam(Family::Cycle { n }));
    let balanced = (1..=6).map(|a| fam(Family::CompleteBipartite { a, b: a }));
    cycles.chain(balanced).collect()
}

fn criterion_1() -> Outcome {
    let mut worst = 0.0f64;
    let mut cases = 0;
    for n in 2..=12 {
        for &x in &GRID {
            let g = fam(Family::Complete { n });
            let num = numeric(&g, alpha(x));
            let closed = spectrum_complete(n, alpha(x)).unwrap();
            let dev = closed.max_deviation(&num).unwrap();
            check(dev <= ORACLE_TOL, || format!("K{n} alpha={x}: deviation {dev:e}"))?;
            let spread = spread_of(&num).unwrap();
            let want = n as f64 * (1.0 - x);
            check((spread - want).abs() <= SPREAD_TOL, || {
                format!("K{n} alpha={x}: spread {spread} != {want}")
            })?;
            worst = worst.max(dev);
            cases += 1;
        }
    }
    Ok(format!("{cases} cases, max deviation {worst:.2e}"))
}

fn criterion_2() -> Outcome {
    let mut worst = 0.0f64;
    let mut cases = 0;
    for total in 2..=12 {
        for a in 1..total {
            let b = total - a;
            for &x in &GRID {
                let num = numeric(&fam(Family::CompleteBipartite { a, b }), alpha(x));
                let dev = spectrum_complete_bipartite(a, b, alpha(x))
                    .unwrap()
                    .max_deviation(&num)
                    .unwrap();
                check(dev <= ORACLE_TOL, || format!("K({a},{b}) alpha={x}: deviation {dev:e}"))?;
                worst = worst.max(dev);
                cases += 1;
            }
        }
    }
    // C4 is the circulant with first row (0, 1, 1/2, 1): λ_j = 2cos(πj/2) + ½cos(πj)
    let mut circulant: Vec<f64> = (0..4)
        .map(|j| 2.0 * (PI * j as f64 / 2.0).cos() + 0.5 * (PI * j as f64).cos())
        .collect();
    circulant.sort_by(|a, b| b.total_cmp(a));
    let circulant: Vec<f64> = circulant.iter().map(|x| (x * 1e12).round() / 1e12).collect();
    let k22 = spectrum_complete_bipartite(2, 2, Alpha::ZERO).unwrap();
    for (got, want) in k22.values().iter().zip(&circulant) {
        check((got - want).abs() <= ORACLE_TOL, || {
            format!("K(2,2) {:?} vs circulant {circulant:?}", k22.values())
        })?;
    }
    Ok(format!(
        "{cases} cases, max deviation {worst:.2e}; K(2,2) = C4 circulant {circulant:?}"
    ))
}

fn criterion_3() -> Outcome {
    let mut worst = 0.0f64;
    let mut cases = 0;
    for total in 2..=10 {
        for m in 1..total {
            let n = total - m;
            for &x in &GRID {
                let num = numeric(&fam(Family::DoubleStar { m, n }), alpha(x));
                let dev = spectrum_double_star(m, n, alpha(x))
                    .unwrap()
                    .max_deviation(&num)
                    .unwrap();
                if dev > ORACLE_TOL {
                    let d = diagnose_double_star(m, n, alpha(x), &opts()).unwrap();
                    let corner = match d.reconciling_corner(ORACLE_TOL) {
                        Some(CornerEntry::BlockDecomposition) => "block-decomposition value (1-alpha)(n-1)/2",
                        Some(CornerEntry::AsPrinted) => "printed value (m-1)(n-1)/2",
                        None => "neither corner entry",
                    };
                    return Err(format!(
                        "S({m},{n}) alpha={x}: deviation {dev:e}; reconciled by {corner} \
                         (block-decomposition corner dev {:e}, printed corner dev {:e})",
                        d.block_corner, d.printed_corner
                    ));
                }
                worst = worst.max(dev);
                cases += 1;
            }
        }
    }
    let p4 = spectrum_double_star(1, 1, Alpha::ZERO).unwrap();
    let lambda1 = (4.0 + 85f64.sqrt()) / 6.0;
    let rd_p4 = numeric(&fam(Family::Path { n: 4 }), Alpha::ZERO);
    check((p4.values()[0] - lambda1).abs() <= SPREAD_TOL, || {
        format!("S(1,1) lambda1 {} != {lambda1}", p4.values()[0])
    })?;
    check(p4.max_deviation(&rd_p4).unwrap() <= SPREAD_TOL, || {
        "S(1,1) differs from RD(P4)".into()
    })?;

    let d = diagnose_double_star(3, 2, alpha(0.5), &opts()).unwrap();
    println!(
        "INFO  [3] S(3,2) alpha=0.5: leaf-class pairing dev {:.1e}, printed pairing dev {:.3}, \
         block-decomposition corner dev {:.1e}, printed corner dev {:.3}",
        d.leaf_class_pairing, d.printed_pairing, d.block_corner, d.printed_corner
    );
    Ok(format!(
        "{cases} cases, max deviation {worst:.2e}; S(1,1) lambda1 = (4+sqrt85)/6"
    ))
}

fn criterion_4() -> Outcome {
    let bopts = BoundOptions {
        tol: SLACK_TOL,
        eigen: opts(),
    };
    let mut evaluated = 0;
    let mut min_slack = f64::INFINITY;
    let mut per_bound = std::collections::BTreeMap::<String, usize>::new();
    for (seed, g) in sweep_graphs().iter().enumerate() {
        for &x in &SWEEP_ALPHAS {
            let an = Analysis::new(g, alpha(x), bopts).unwrap();
            for o in check_all_with(&an).unwrap() {
                let BoundOutcome::Evaluated(r) = o else { continue };
                check(r.slack >= -SLACK_TOL && r.holds, || {
                    format!("seed {seed} alpha={x} {}: slack {:e} ({:?})", r.name, r.slack, r)
                })?;
                let key = if r.name.starts_with("eigen-shift") {
                    "eigen-shift".to_string()
                } else {
                    r.name.clone()
                };
                *per_bound.entry(key).or_default() += 1;
                min_slack = min_slack.min(r.slack);
                evaluated += 1;
            }
        }
    }
    let counts: Vec<String> = per_bound.iter().map(|(k, v)| format!("{k}={v}")).collect();
    Ok(format!(
        "{evaluated} reports, min slack {min_slack:.2e}; {}",
        counts.join(" ")
    ))
}

fn criterion_5() -> Outcome {
    let bopts = BoundOptions {
        tol: ORACLE_TOL,
        eigen: opts(),
    };
    let mut graphs = 0;
    let mut counts = Vec::new();
    let mut two_distinct_mismatches = Vec::new();
    for n in 2..=7 {
        let corpus = connected_graphs(n).unwrap();
        counts.push(corpus.len());
        for g in &corpus {
            let complete = g.is_complete();
            for &x in &GRID {
                let an = Analysis::new(g, alpha(x), bopts).unwrap();
                let outcomes = check_all_with(&an).unwrap();
                let find = |name: &str| {
                    outcomes
                        .iter()
                        .find(|o| o.name() == name)
                        .and_then(BoundOutcome::report)
                };
                let harary = find("harary-lower").expect("harary-lower applies for alpha < 1");
                check(harary.equality == complete, || {
                    format!(
                        "n={n} alpha={x} {:?}: harary-lower equality {} (complete {complete})",
                        g.edges(),
                        harary.equality
                    )
                })?;
                if x >= 0.5 {
                    let frob = find("frobenius-lower").expect("frobenius-lower applies for alpha in [0.5, 1)");
                    check(frob.equality == complete, || {
                        format!(
                            "n={n} alpha={x} {:?}: frobenius-lower equality {} (complete {complete})",
                            g.edges(),
                            frob.equality
                        )
                    })?;
                }
                if x == 0.0 || x == 0.5 {
                    let distinct = an.spectrum().distinct();
                    if (distinct.len() == 2) != complete {
                        two_distinct_mismatches.push(format!(
                            "n={n} alpha={x} edges={:?} spectrum={:?}",
                            g.edges(),
                            distinct
                        ));
                    }
                }
            }
            graphs += 1;
        }
    }
    check(counts == [1, 2, 6, 21, 112, 853], || format!("corpus sizes {counts:?}"))?;
    check(two_distinct_mismatches.is_empty(), || {
        let star = spectrum_complete_bipartite(1, 4, Alpha::HALF).unwrap();
        format!(
            "spread-bound equality cases agree with completeness on all {graphs} graphs, but exactly two \
             distinct eigenvalues also occur on non-complete graphs: {}; closed form for K(1,4) at alpha=0.5: {:?}",
            two_distinct_mismatches.join("; "),
            star.values()
        )
    })?;
    Ok(format!("{graphs} connected graphs on 2..7 vertices (sizes {counts:?})"))
}

fn criterion_6() -> Outcome {
    let bopts = BoundOptions {
        tol: ORACLE_TOL,
        eigen: opts(),
    };
    let mut cases = 0;
    for g in regular_graphs() {
        let rd = eig_sym(&rd_matrix(&apsp(&g).unwrap()).unwrap(), &opts()).unwrap();
        let s_rd = spread_of(&rd).unwrap();
        for &x in &GRID {
            let an = Analysis::new(&g, alpha(x), bopts).unwrap();
            let want = (1.0 - x) * s_rd;
            check((an.spread() - want).abs() <= SPREAD_TOL, || {
                format!(
                    "{:?} alpha={x}: spread {} != (1-alpha) S(RD) = {want}",
                    g.edges(),
                    an.spread()
                )
            })?;
            for o in check_all_with(&an).unwrap() {
                let Some(r) = o.report() else { continue };
                if ["lambda1", "lambda1-harary", "sandwich"].contains(&r.name.as_str()) {
                    check(r.equality, || {
                        format!("{:?} alpha={x}: {} not an equality", g.edges(), r.name)
                    })?;
                }
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (graph, alpha) cases on C3..C12 and K(a,a), a <= 6"))
}

fn criterion_7() -> Outcome {
    let bopts = BoundOptions::default();
    let rd_p3 = numeric(&fam(Family::Path { n: 3 }), Alpha::ZERO);
    for (got, want) in rd_p3.values().iter().zip([1.68614, -0.5, -1.18614]) {
        check((got - want).abs() <= 1e-5, || format!("RD(P3) {:?}", rd_p3.values()))?;
    }
    let spot = [
        (
            "bipartite P4",
            spread_lower_bipartite(&fam(Family::Path { n: 4 }), Alpha::ZERO, &bopts)
                .unwrap()
                .bound_lo
                .unwrap(),
            (196.0f64 / 27.0).sqrt(),
        ),
        (
            "clique P3",
            spread_lower_clique(&fam(Family::Path { n: 3 }), Alpha::ZERO, &bopts)
                .unwrap()
                .bound_lo
                .unwrap(),
            5.5f64.sqrt(),
        ),
        (
            "diam2 C4",
            spread_upper_diam2(&fam(Family::Cycle { n: 4 }), Alpha::ZERO, &bopts)
                .unwrap()
                .bound_hi
                .unwrap(),
            5.0,
        ),
    ];
    for (name, got, want) in spot {
        check((got - want).abs() <= SPREAD_TOL, || format!("{name}: {got} != {want}"))?;
    }
    Ok("RD(P3), sqrt(196/27), sqrt(5.5), 5".into())
}

fn random_partition(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    let k = rng.gen_range(1..=n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut cells: Vec<Vec<usize>> = order[..k].iter().map(|&v| vec![v]).collect();
    for &v in &order[k..] {
        cells[rng.gen_range(0..k)].push(v);
    }
    cells
}

fn criterion_8() -> Outcome {
    let mut graphs: Vec<Graph> = sweep_graphs();
    graphs.extend(regular_graphs());
    for n in 2..=7 {
        graphs.extend(connected_graphs(n).unwrap());
    }
    let mut checked = 0;
    for g in &graphs {
        let dm = apsp(g).unwrap();
        let h = transmission_profile(&dm).unwrap().harary;
        for &x in &SWEEP_ALPHAS {
            let m = rd_alpha_matrix(&dm, alpha(x)).unwrap();
            let trace = m.trace();
            check((trace - 2.0 * x * h).abs() <= SPREAD_TOL, || {
                format!("{:?}: trace {trace} != 2 alpha H", g.edges())
            })?;
            let direct = frobenius_norm_sq(&m);
            let closed = rd_alpha_frobenius_sq(&dm, alpha(x)).unwrap();
            check((direct - closed).abs() <= SPREAD_TOL, || {
                format!("{:?}: Frobenius {direct} vs {closed}", g.edges())
            })?;
            checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(812);
    for i in 0..100u64 {
        let n = rng.gen_range(3..=12);
        let p = rng.gen_range(0.2..0.9);
        let g = fam(Family::RandomConnected { n, p, seed: 10_000 + i });
        let x = SWEEP_ALPHAS[rng.gen_range(0..SWEEP_ALPHAS.len())];
        let m = rd_alpha_matrix(&apsp(&g).unwrap(), alpha(x)).unwrap();
        let full = eig_sym(&m, &opts()).unwrap();
        let cells = random_partition(n, &mut rng);
        let q = quotient_matrix(&m, &cells, &opts()).unwrap();
        check(interlaces(&q.spectrum, &full, 1e-9).unwrap(), || {
            format!("pair {i}: quotient over {cells:?} does not interlace")
        })?;
    }
    Ok(format!(
        "{checked} trace/Frobenius checks on {} graphs; 100 interlacing pairs",
        graphs.len()
    ))
}

fn cli(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_rdspread"))
        .args(args)
        .output()
        .expect("binary runs");
    let mut bytes = out.stdout;
    bytes.extend(out.status.code().unwrap_or(-1).to_string().bytes());
    bytes
}

fn criterion_9() -> Outcome {
    let runs: [&[&str]; 7] = [
        &[
            "spectrum", "--family", "random", "--n", "10", "--p", "0.4", "--seed", "7", "--alpha", "0.3",
        ],
        &[
            "bounds", "--family", "random", "--n", "12", "--p", "0.5", "--seed", "42", "--alpha", "0.6",
        ],
        &[
            "bounds",
            "--family",
            "double_star",
            "--m",
            "3",
            "--n",
            "2",
            "--alpha",
            "0.25",
            "--format",
            "csv",
        ],
        &[
            "sweep", "--family", "random", "--n", "9", "--p", "0.3", "--seed", "3", "--alphas", "0:1:0.1",
        ],
        &[
            "sweep",
            "--family",
            "path",
            "--n",
            "6",
            "--alphas",
            "0:1:0.25",
            "--format",
            "json",
            "--all-bounds",
        ],
        &["verify-family", "--family", "double_star", "--max-size", "6"],
        &["spectrum", "--graph6", "C~", "--format", "table"],
    ];
    for args in runs {
        let first = cli(args);
        let second = cli(args);
        check(first == second, || {
            format!("rdspread {} differs between runs", args.join(" "))
        })?;
    }
    Ok(format!("{} command lines byte-identical across two runs", runs.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("closed-form spectra of complete graphs", criterion_1),
        ("closed-form spectra of complete bipartite graphs", criterion_2),
        ("closed-form spectra of double stars", criterion_3),
        ("bound soundness on 200 random graphs x 5 alphas", criterion_4),
        ("equality cases on all connected graphs with n <= 7", criterion_5),
        ("transmission-regular identities", criterion_6),
        ("hand-derived spot values", criterion_7),
        ("trace, Frobenius and interlacing invariants", criterion_8),
        ("deterministic CLI output", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("PASS  [{}] {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  [{}] {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
