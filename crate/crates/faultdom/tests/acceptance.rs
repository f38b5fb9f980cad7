//! End-to-end acceptance gate: one test (and one printed PASS/FAIL line)
//! per advertised guarantee of the crate.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use faultdom::corpus::cubic_corpus;
use faultdom::enumerate::errld_admissible_graphs;
use faultdom::corpus::moebius_ladder;
use faultdom::graph::{cycle, petersen, Graph, LatticeKind};
use faultdom::grids::{build_tree3_errld, ladder_pattern, certify_pattern, search_min_pattern};
use faultdom::localize::{confusion_witness, exhaustive_sweep, simulate, decode_consistency};
use faultdom::reduce::{
    build_reduction, roundtrip_check, unsat_formula, CnfFormula, Literal,
};
use faultdom::solve::{
    brute_force_min, exact_min, greedy_distance5_packing, packing_complement, SearchConfig,
};
use faultdom::verify::{
    code_min_distance, errld_exists, verify, verify_with, DetectorSet, PairScan, Variant,
    VerifyOptions,
};

fn gate(number: usize, name: &str, failures: &[String]) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {number:2} {name}: {status}");
    for f in failures.iter().take(20) {
        println!("    {f}");
    }
    assert!(failures.is_empty(), "criterion {number} ({name}) failed");
}

/// Connected twin-free graphs with minimum degree 2, exhaustively for
/// every order up to 8.
fn small_corpus() -> &'static Vec<Graph> {
    static CORPUS: OnceLock<Vec<Graph>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut all = Vec::new();
        for n in 1..=8 {
            all.extend(errld_admissible_graphs(n));
        }
        all
    })
}

#[test]
fn criterion_01_petersen_values() {
    let start = Instant::now();
    let g = petersen();
    let want = [
        (Variant::Ld, 4),
        (Variant::RedLd, 6),
        (Variant::DetLd, 6),
        (Variant::ErrLd, 9),
    ];
    let mut failures = Vec::new();
    for (variant, expected) in want {
        let res = exact_min(&g, variant, &SearchConfig::default()).unwrap();
        if !res.proved || res.optimum() != Some(expected) {
            failures.push(format!(
                "{}: got {:?} (proved {}), want {}",
                variant.name(),
                res.optimum(),
                res.proved,
                expected
            ));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        failures.push(format!("took {elapsed:?}, budget 60 s"));
    }
    gate(1, "petersen-minimums", &failures);
}

#[test]
fn criterion_02_exact_solver_matches_brute_force() {
    let mut failures = Vec::new();
    for g in small_corpus() {
        let exact = exact_min(g, Variant::ErrLd, &SearchConfig::default()).unwrap();
        let brute = brute_force_min(g, Variant::ErrLd);
        let want = brute.map(|s| s.len());
        if !exact.proved || exact.optimum() != want {
            failures.push(format!(
                "n={} edges={:?}: solver {:?}, brute force {:?}",
                g.n(),
                g.edges(),
                exact.optimum(),
                want
            ));
        }
    }
    if small_corpus().is_empty() {
        failures.push("corpus is empty".into());
    }
    gate(2, "solver-vs-brute-force", &failures);
}

#[test]
fn criterion_03_characterization_equals_code_distance() {
    let mut failures = Vec::new();
    let mut pairs = 0usize;
    for g in small_corpus() {
        let n = g.n();
        for mask in 0u32..(1 << n) {
            let idx: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let s = DetectorSet::from_indices(n, &idx).unwrap();
            let ok = verify(g, &s, Variant::ErrLd).ok;
            let dist_ok = code_min_distance(g, &s).at_least(3);
            pairs += 1;
            if ok != dist_ok {
                failures.push(format!(
                    "n={} mask={mask:#x}: verify {ok}, min distance >= 3 {dist_ok}",
                    g.n()
                ));
            }
        }
    }
    if pairs == 0 {
        failures.push("no (graph, set) pairs checked".into());
    }
    gate(3, "characterization-vs-code-distance", &failures);
}

#[test]
fn criterion_04_existence_criterion() {
    // Checked on all connected small graphs, not only the admissible ones,
    // so both outcomes of the criterion are exercised.
    let mut failures = Vec::new();
    for n in 1..=7 {
        for rows in faultdom::enumerate::all_graphs(n) {
            let g = faultdom::enumerate::rows_to_graph(&rows);
            if !g.is_connected() {
                continue;
            }
            let exists = errld_exists(&g);
            let full_ok = verify(&g, &DetectorSet::full(n), Variant::ErrLd).ok;
            if exists != full_ok {
                failures.push(format!(
                    "n={n} edges={:?}: errld_exists {exists}, verify(V) {full_ok}",
                    g.edges()
                ));
            }
        }
    }
    for g in small_corpus() {
        let exists = errld_exists(g);
        let full_ok = verify(g, &DetectorSet::full(g.n()), Variant::ErrLd).ok;
        if exists != full_ok {
            failures.push(format!(
                "corpus n={} edges={:?}: errld_exists {exists}, verify(V) {full_ok}",
                g.n(),
                g.edges()
            ));
        }
    }
    gate(4, "existence-criterion", &failures);
}

#[test]
fn criterion_05_variant_hierarchy() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let chain = [Variant::ErrLd, Variant::DetLd, Variant::RedLd, Variant::Ld];
    let mut failures = Vec::new();
    let mut samples = 0usize;
    while samples < 10_000 {
        let n = rng.gen_range(3..=10);
        let p = rng.gen_range(0.2..0.8);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::new(n, &edges).unwrap();
        let idx: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        let s = DetectorSet::from_indices(n, &idx).unwrap();
        samples += 1;
        let verdicts: Vec<bool> = chain.iter().map(|&v| verify(&g, &s, v).ok).collect();
        for w in verdicts.windows(2) {
            if w[0] && !w[1] {
                failures.push(format!(
                    "hierarchy broken: n={n} edges={edges:?} set={idx:?} verdicts={verdicts:?}"
                ));
            }
        }
    }
    gate(5, "variant-hierarchy", &failures);
}

#[test]
fn criterion_06_reduction_roundtrip() {
    let cfg = SearchConfig::default();
    let mut failures = Vec::new();

    // Exhaustive single-clause formulas on three variables: all eight sign
    // patterns.  Each is satisfiable with optimum exactly 10*3 + 8*1 = 38.
    for signs in 0u8..8 {
        let clause: Vec<i64> = (1..=3)
            .map(|v| if signs >> (v - 1) & 1 == 1 { -v } else { v })
            .collect();
        let f = formula(3, &[[clause[0], clause[1], clause[2]]]);
        match roundtrip_check(&f, &cfg) {
            Ok(r) => {
                if !(r.consistent && r.satisfiable && r.optimum_within_target == Some(38)) {
                    failures.push(format!("single clause {clause:?}: {r:?}"));
                }
            }
            Err(e) => failures.push(format!("single clause {clause:?}: {e}")),
        }
    }

    // Random formulas.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    for trial in 0..20 {
        let n = rng.gen_range(3..=4);
        let m = rng.gen_range(1..=5);
        let mut clauses = Vec::new();
        for _ in 0..m {
            let mut vars: Vec<i64> = (1..=n as i64).collect();
            for i in (1..vars.len()).rev() {
                vars.swap(i, rng.gen_range(0..=i));
            }
            let lits: Vec<i64> = vars[..3]
                .iter()
                .map(|&v| if rng.gen_bool(0.5) { -v } else { v })
                .collect();
            clauses.push([lits[0], lits[1], lits[2]]);
        }
        let f = formula(n, &clauses);
        check_counts(&f, &mut failures);
        match roundtrip_check(&f, &cfg) {
            Ok(r) if r.consistent => {}
            Ok(r) => failures.push(format!("trial {trial} {clauses:?}: {r:?}")),
            Err(e) => failures.push(format!("trial {trial} {clauses:?}: {e}")),
        }
    }

    // A brute-force-verified unsatisfiable instance.
    let f = unsat_formula();
    if f.brute_force_sat().is_some() {
        failures.push("unsat_formula is satisfiable".into());
    }
    check_counts(&f, &mut failures);
    match roundtrip_check(&f, &cfg) {
        Ok(r) if r.consistent && !r.satisfiable => {}
        Ok(r) => failures.push(format!("unsat instance: {r:?}")),
        Err(e) => failures.push(format!("unsat instance: {e}")),
    }

    gate(6, "reduction-roundtrip", &failures);
}

fn formula(num_vars: usize, clauses: &[[i64; 3]]) -> CnfFormula {
    let clauses = clauses
        .iter()
        .map(|c| {
            let lit = |l: i64| Literal {
                var: l.unsigned_abs() as usize - 1,
                negated: l < 0,
            };
            [lit(c[0]), lit(c[1]), lit(c[2])]
        })
        .collect();
    CnfFormula { num_vars, clauses }
}

fn check_counts(f: &CnfFormula, failures: &mut Vec<String>) {
    let red = build_reduction(f).unwrap();
    let (n, m) = (f.num_vars, f.clauses.len());
    if red.graph.n() != 11 * n + 8 * m {
        failures.push(format!("vertex count {} != 11N+8M", red.graph.n()));
    }
    if red.graph.m() != 15 * n + 12 * m {
        failures.push(format!("edge count {} != 15N+12M", red.graph.m()));
    }
    if red.mandatory.len() != 9 * n + 8 * m {
        failures.push(format!("mandatory count {} != 9N+8M", red.mandatory.len()));
    }
    if red.target() != 10 * n + 8 * m {
        failures.push(format!("target {} != 10N+8M", red.target()));
    }
}

#[test]
fn criterion_07_grid_certifications() {
    let mut failures = Vec::new();

    let check = |name: &str,
                     found: Option<(faultdom::grids::PeriodicPattern, faultdom::grids::Certification)>,
                     want: Ratio<u64>,
                     elapsed: Duration,
                     failures: &mut Vec<String>| {
        match found {
            Some((p, cert)) => {
                if !cert.ok {
                    failures.push(format!("{name}: certification failed: {}", cert.verdict.report()));
                }
                if cert.density != want {
                    failures.push(format!("{name}: density {} != {want}", cert.density));
                }
                if !cert.meets_domination_bound {
                    failures.push(format!("{name}: domination lower bound violated"));
                }
                // Re-certify to bound a single certification's cost.
                let t = Instant::now();
                let again = certify_pattern(&p).unwrap();
                let cert_time = t.elapsed();
                if !again.ok {
                    failures.push(format!("{name}: re-certification failed"));
                }
                if cert_time > Duration::from_secs(10) {
                    failures.push(format!("{name}: certification took {cert_time:?}"));
                }
            }
            None => failures.push(format!("{name}: no pattern found")),
        }
        // The search itself stays comfortably inside an interactive budget.
        if elapsed > Duration::from_secs(120) {
            failures.push(format!("{name}: search took {elapsed:?}"));
        }
    };

    let t = Instant::now();
    let sq = search_min_pattern(LatticeKind::Sq, (3, 3));
    check("square", sq, Ratio::new(2, 3), t.elapsed(), &mut failures);

    let t = Instant::now();
    let hex = search_min_pattern(LatticeKind::Hex, (4, 4));
    check("hex", hex, Ratio::new(3, 4), t.elapsed(), &mut failures);

    let t = Instant::now();
    let tri = search_min_pattern(LatticeKind::Tri, (3, 3));
    check("triangular", tri, Ratio::new(1, 2), t.elapsed(), &mut failures);

    let t = Instant::now();
    let king = search_min_pattern(LatticeKind::King, (4, 4));
    check("king", king, Ratio::new(7, 16), t.elapsed(), &mut failures);

    // The ladder pattern is fixed data rather than a search product.
    let ladder = ladder_pattern();
    let t = Instant::now();
    let cert = certify_pattern(&ladder).unwrap();
    let cert_time = t.elapsed();
    if !(cert.ok && cert.meets_domination_bound) {
        failures.push(format!("ladder: certification failed: {}", cert.verdict.report()));
    }
    if cert.density != Ratio::new(5, 6) {
        failures.push(format!("ladder: density {} != 5/6", cert.density));
    }
    if cert_time > Duration::from_secs(10) {
        failures.push(format!("ladder: certification took {cert_time:?}"));
    }

    gate(7, "grid-certifications", &failures);
}

#[test]
fn criterion_08_cubic_lower_bound() {
    let mut failures = Vec::new();
    for (name, g) in cubic_corpus() {
        let n = g.n();
        if n > 12 {
            continue;
        }
        let res = exact_min(&g, Variant::ErrLd, &SearchConfig::default()).unwrap();
        let bound = (3 * n).div_ceil(4);
        match res.optimum() {
            Some(opt) if res.proved && opt >= bound => {}
            other => failures.push(format!(
                "{name}: optimum {other:?} (proved {}) vs bound {bound}",
                res.proved
            )),
        }
    }
    let res = exact_min(&petersen(), Variant::ErrLd, &SearchConfig::default()).unwrap();
    if res.optimum() != Some(9) {
        failures.push(format!("petersen optimum {:?} != 9", res.optimum()));
    }
    gate(8, "cubic-lower-bound", &failures);
}

#[test]
fn criterion_09_tree_construction() {
    let mut failures = Vec::new();
    let radius = 6;
    match build_tree3_errld(radius) {
        Ok((g, s)) => {
            // A finite tree has leaves, so the set cannot be globally valid;
            // every defect must involve the boundary (depth within 2 of the
            // radius), leaving the interior clean.
            let dist = g.bfs_distances(0);
            let verdict = verify_with(
                &g,
                &s,
                Variant::ErrLd,
                &VerifyOptions { pair_scan: PairScan::Full, max_violations: usize::MAX },
            );
            for viol in &verdict.violations {
                let (u, v) = viol.witnesses;
                let deep = |w: usize| dist[w].unwrap_or(0) + 2 > radius;
                if !(deep(u) || v.is_some_and(deep)) {
                    failures.push(format!("interior-only violation: {viol}"));
                }
            }
            let mut interior = 0usize;
            let mut interior_detectors = 0usize;
            for v in 0..g.n() {
                let d = dist[v].expect("tree is connected");
                if d + 2 <= radius {
                    interior += 1;
                    if s.contains(v) {
                        interior_detectors += 1;
                    }
                    let dom = faultdom::verify::domination_count(&g, &s, v);
                    if dom != 3 {
                        failures.push(format!("interior vertex {v} is {dom}-dominated"));
                    }
                }
            }
            let frac = interior_detectors as f64 / interior as f64;
            if (frac - 0.75).abs() > 0.05 {
                failures.push(format!(
                    "interior detector fraction {interior_detectors}/{interior} = {frac:.4} not within 0.05 of 3/4"
                ));
            }
        }
        Err(e) => failures.push(format!("construction failed: {e}")),
    }
    gate(9, "tree-construction", &failures);
}

#[test]
fn criterion_10_localization() {
    let mut failures = Vec::new();

    let g = petersen();
    let s = DetectorSet::from_indices(10, &(1..10).collect::<Vec<_>>()).unwrap();
    let report = exhaustive_sweep(&g, &s);
    if !report.all_correct() {
        failures.push(format!(
            "petersen sweep: {}/{} correct, {} disagreements",
            report.correct, report.scenarios, report.disagreements
        ));
        failures.extend(report.failures.iter().take(5).cloned());
    }

    let c5 = cycle(5).unwrap();
    let full = DetectorSet::full(5);
    let report = exhaustive_sweep(&c5, &full);
    if !report.all_correct() {
        failures.push(format!(
            "c5 sweep: {}/{} correct, {} disagreements",
            report.correct, report.scenarios, report.disagreements
        ));
    }

    // A set violating exactly one pair condition admits two scenarios that
    // produce the same observation with different ground truths.
    let bad = DetectorSet::from_indices(5, &[0, 1, 2, 3]).unwrap();
    let verdict = verify_with(
        &c5,
        &bad,
        Variant::ErrLd,
        &VerifyOptions { pair_scan: PairScan::Full, max_violations: usize::MAX },
    );
    if verdict.ok {
        failures.push("expected a violation on C5 with {0,1,2,3}".into());
    } else {
        match confusion_witness(&c5, &bad, &verdict.violations[0]) {
            Some((sc1, sc2, seen)) => {
                if sc1.intruder == sc2.intruder {
                    failures.push("witness scenarios share the same ground truth".into());
                }
                for sc in [&sc1, &sc2] {
                    let obs = simulate(&c5, &bad, sc).unwrap();
                    if obs.symbols != seen.symbols {
                        failures.push(format!("witness scenario {sc:?} does not produce the claimed vector"));
                    }
                }
                // Even an oracle decoder cannot answer correctly for both.
                let d = decode_consistency(&c5, &bad, &seen).unwrap();
                let truths = [sc1.intruder, sc2.intruder];
                let correct = truths
                    .iter()
                    .filter(|&&t| match (t, &d) {
                        (None, faultdom::localize::Decode::NoIntruder) => true,
                        (Some(p), faultdom::localize::Decode::Located(q)) => p == *q,
                        _ => false,
                    })
                    .count();
                if correct > 1 {
                    failures.push("decoder claims to resolve confused scenarios".into());
                }
            }
            None => failures.push("no confusion witness produced".into()),
        }
    }

    gate(10, "localization", &failures);
}

#[test]
fn criterion_11_packing_construction() {
    let mut failures = Vec::new();
    let mut graphs = cubic_corpus();
    graphs.push(("moebius-ladder-48", moebius_ladder(48)));
    for (name, g) in &graphs {
        let packing = greedy_distance5_packing(g);
        match packing_complement(g, &packing) {
            Ok((s, verdict)) => {
                if !verdict.ok {
                    failures.push(format!("{name}: complement is not valid: {}", verdict.report()));
                }
                let n = g.n();
                if n >= 46 {
                    let bound = (45 * n).div_ceil(46);
                    if s.len() > bound {
                        failures.push(format!("{name}: size {} exceeds bound {bound}", s.len()));
                    }
                }
            }
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    gate(11, "packing-construction", &failures);
}
