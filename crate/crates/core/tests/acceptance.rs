//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach stdout; the
//! process exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use sizeramsey::arrowing::{arrows, arrows_with, brute_force_arrows, verify_colouring, EngineConfig};
use sizeramsey::extremal::{compute_rhat, compute_rhat_star, erdos_graph, extremal_candidate, SearchConfig};
use sizeramsey::formulas::{
    audit_inequalities, choose2, pikhurko_lower_bound, ramsey_star_clique, rhat_star, rhat_theorem3,
    theorem3_threshold, Grid, Inequality, NPolicy, NStart, Params,
};
use sizeramsey::graph::{canonical_form, EnumOptions};
use sizeramsey::lemmas::{
    good_colouring, mindeg_or_matching, oracle_mindeg_subset, peel_cascade, peel_t, DichotomyKind,
};
use sizeramsey::Graph;

type Outcome = Result<String, String>;

fn params(k: u64, n: u64) -> Params {
    Params::new(k, n).expect("valid parameters")
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let cfg = SearchConfig::default();
    let p = params(2, 3);
    let rhat = compute_rhat(p, &cfg).map_err(|e| e.to_string())?;
    let star = compute_rhat_star(p, &cfg).map_err(|e| e.to_string())?;
    let expected = choose2(5).unwrap() - 2;
    check(rhat.exact_value() == Some(8) && star.exact_value() == Some(8) && expected == 8, || {
        format!("rhat = {:?}, rhat_star = {:?}", rhat.exact_value(), star.exact_value())
    })?;
    let classes: usize = EnumOptions::new(7).connected().levels().unwrap().map(|(_, l)| l.len()).sum();
    Ok(format!("rhat(2,3) = rhat*(2,3) = 8; {classes} connected classes with <= 7 edges exhausted"))
}

fn criterion_2() -> Outcome {
    let outcome = compute_rhat_star(params(3, 3), &SearchConfig::default()).map_err(|e| e.to_string())?;
    let expected = choose2(7).unwrap() - choose2(3).unwrap();
    match outcome.exact_value() {
        Some(18) if expected == 18 => {
            let w = outcome.witness().unwrap();
            check(arrows(w, 3, 3).unwrap().arrows && w.edge_count() == 18, || "witness does not verify".into())?;
            Ok("rhat*(3,3) = 18 = C(7,2) - C(3,2); every 7-vertex class with <= 17 edges certified".into())
        }
        other => Err(format!("got {other:?} ({outcome:?})")),
    }
}

fn criterion_3() -> Outcome {
    let mut parts = Vec::new();
    for k in [2usize, 3] {
        let g = erdos_graph(k).unwrap();
        let count = choose2(2 * k as u64 + 1).unwrap() - choose2(k as u64).unwrap();
        check(g.edge_count() as u64 == count, || format!("k={k}: {} edges, expected {count}", g.edge_count()))?;
        check(brute_force_arrows(&g, k, 3).unwrap(), || format!("k={k}: oracle found a good colouring"))?;
        parts.push(format!("k={k} oracle ({} colourings)", 1u64 << g.edge_count()));
    }
    let g4 = erdos_graph(4).unwrap();
    let count = choose2(9).unwrap() - choose2(4).unwrap();
    check(g4.edge_count() as u64 == count, || format!("k=4: {} edges", g4.edge_count()))?;
    let start = Instant::now();
    let decision = arrows(&g4, 4, 3).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    check(decision.arrows, || "k=4: engine found a good colouring".into())?;
    check(elapsed < Duration::from_secs(600), || format!("k=4 took {elapsed:?}"))?;
    parts.push(format!("k=4 engine ({} nodes, {:.2?})", decision.stats.nodes, elapsed));
    Ok(parts.join(", "))
}

fn criterion_4() -> Outcome {
    let graphs: Vec<Graph> = EnumOptions::new(9).levels().unwrap().flat_map(|(_, l)| l).collect();
    let mut compared = 0;
    for (k, n) in [(2, 3), (3, 3), (2, 4)] {
        for g in &graphs {
            let engine = arrows_with(g, k, n, &EngineConfig::sequential()).map_err(|e| e.to_string())?.arrows;
            let oracle = brute_force_arrows(g, k, n).map_err(|e| e.to_string())?;
            check(engine == oracle, || format!("(k,n)=({k},{n}) {g:?}: engine {engine}, oracle {oracle}"))?;
            compared += 1;
        }
    }
    Ok(format!("{} graphs x 3 parameter pairs, {compared} comparisons, 0 discrepancies", graphs.len()))
}

fn criterion_5() -> Outcome {
    let mut count = 0;
    for (_, level) in EnumOptions::new(7).with_isolated().on_order(5).levels().unwrap() {
        for g in level {
            let c = good_colouring(&g, 2, 3)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("no colouring for {g:?}"))?;
            check(verify_colouring(&c, 2, 3).unwrap().is_good(), || format!("bad certificate for {g:?}"))?;
            check(!arrows(&g, 2, 3).unwrap().arrows, || format!("engine says {g:?} arrows"))?;
            count += 1;
        }
    }
    let k5 = good_colouring(&Graph::complete(5).unwrap(), 2, 3).map_err(|e| e.to_string())?;
    check(k5.is_none(), || "K_5 received a colouring".into())?;
    Ok(format!("{count} five-vertex graphs with <= 7 edges coloured and verified; K_5 gives none"))
}

fn criterion_6() -> Outcome {
    let graphs: Vec<Graph> = EnumOptions::new(28).with_isolated().on_order(8).levels().unwrap().flat_map(|(_, l)| l).collect();
    let mut checked = 0;
    for k in [2usize, 3, 4] {
        let need = k * (k - 1) / 2 + 1;
        for g in graphs.iter().filter(|g| g.edge_count() >= need) {
            let r = mindeg_or_matching(g, k).map_err(|e| format!("k={k} {g:?}: {e}"))?;
            check(r.verify(g, k), || format!("k={k} {g:?}: output fails verification"))?;
            let oracle = oracle_mindeg_subset(g, k).unwrap();
            check((r.kind == DichotomyKind::Matching) == oracle.is_none(), || format!("k={k} {g:?}: branch mismatch"))?;
            check(k != 3 || r.kind != DichotomyKind::Matching, || format!("k=3 {g:?}: matching branch"))?;
            checked += 1;
        }
    }
    Ok(format!("{} classes on 8 vertices, {checked} (graph, k) instances, 0 violations", graphs.len()))
}

fn criterion_7() -> Outcome {
    let grid = Grid::new(2, 5, NPolicy { start: NStart::Threshold, window: 50 });
    let reports = audit_inequalities(&grid).map_err(|e| e.to_string())?;
    let required = [
        Inequality::MidDepth,
        Inequality::Deep,
        Inequality::FullDepthEven,
        Inequality::FullDepthOdd,
        Inequality::SingleStepWideTotal,
        Inequality::SingleStepNarrowTotal,
        Inequality::PackingBudget,
    ];
    let mut points = 0;
    for r in &reports {
        check(r.is_clean(), || format!("{}: {} violations, first {:?}", r.inequality.id(), r.violations.len(), r.violations[0]))?;
        points += r.points;
    }
    for id in required {
        let r = reports.iter().find(|r| r.inequality == id).unwrap();
        check(r.points > 0, || format!("{} scanned no points", id.id()))?;
    }
    Ok(format!("{} statements, {points} points, 0 violations", reports.len()))
}

fn criterion_8() -> Outcome {
    let mut checked = 0;
    for k in 2..=5u64 {
        let t = theorem3_threshold(k).unwrap();
        for n in t..t + 200 {
            let p = params(k, n);
            check(rhat_theorem3(p).unwrap() == rhat_star(p).unwrap(), || format!("({k},{n}) large-n form differs"))?;
            checked += 1;
        }
    }
    for k in 2..=12u64 {
        for n in 2..=12u64 {
            let p = params(k, n);
            let star = rhat_star(p).unwrap();
            check(star <= choose2(ramsey_star_clique(p).unwrap()).unwrap(), || format!("({k},{n}) above C(R,2)"))?;
            check(pikhurko_lower_bound(k, n).unwrap() <= star, || format!("({k},{n}) below edge bound"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} parameter pairs, 0 violations"))
}

/// Arrowing graphs from the small-graph enumeration plus the constructions.
fn arrowing_corpus() -> Vec<(Graph, usize, usize)> {
    let mut corpus = Vec::new();
    let graphs: Vec<Graph> = EnumOptions::new(9).levels().unwrap().flat_map(|(_, l)| l).collect();
    for (k, n) in [(2, 3), (3, 3), (2, 4)] {
        corpus.extend(graphs.iter().filter(|g| arrows(g, k, n).unwrap().arrows).map(|g| (g.clone(), k, n)));
    }
    for (order, k, n) in [(5, 2, 3), (6, 2, 3), (7, 3, 3), (7, 2, 4)] {
        for (_, level) in EnumOptions::new(21).with_isolated().on_order(order).levels().unwrap() {
            corpus.extend(level.into_iter().filter(|g| arrows(g, k, n).unwrap().arrows).map(|g| (g, k, n)));
        }
    }
    for (k, n) in [(2, 3), (3, 3), (2, 4), (3, 4), (4, 3)] {
        corpus.push((extremal_candidate(params(k as u64, n as u64)).unwrap(), k, n));
    }
    for k in 2..=4 {
        corpus.push((erdos_graph(k).unwrap(), k, 3));
    }
    corpus.push((Graph::complete(7).unwrap(), 2, 4));
    corpus.push((Graph::complete(10).unwrap(), 3, 4));
    corpus
}

fn criterion_9() -> Outcome {
    let corpus = arrowing_corpus();
    let wide = EngineConfig { max_edges: 64, ..Default::default() };
    let arrows = |g: &Graph, k, n| arrows_with(g, k, n, &wide);
    let mut layers = 0;
    for (g, k, n) in &corpus {
        let (k, n) = (*k, *n);
        check(arrows(g, k, n).unwrap().arrows, || format!("{g:?} is not arrowing"))?;
        let peel = peel_t(g, k).unwrap().ok_or_else(|| format!("({k},{n}) {g:?}: no peel"))?;
        check(peel.verify(g, k), || format!("({k},{n}) {g:?}: peel fails its conditions"))?;
        let trace = peel_cascade(g, k, n).unwrap();
        let mut prev_surplus = g.order() as i64 - (k * (n - 1) + 1) as i64;
        let mut prev_t = g.vertices();
        for layer in &trace {
            check(layer.b.len() >= k, || format!("({k},{n}) {g:?}: |B| < k at step {}", layer.step))?;
            check(layer.surplus <= prev_surplus, || format!("({k},{n}) {g:?}: surplus grew at step {}", layer.step))?;
            check(layer.t.union(layer.b) == prev_t, || format!("({k},{n}) {g:?}: layers do not nest"))?;
            check(g.max_degree_within(layer.b) < k, || format!("({k},{n}) {g:?}: dense B"))?;
            check(layer.t.iter().all(|v| g.degree_into(v, layer.b) >= k), || format!("({k},{n}) {g:?}: weak T"))?;
            prev_surplus = layer.surplus;
            prev_t = layer.t;
            layers += 1;
        }
        if let Some(first) = trace.first() {
            let inner = g.induced(first.t).unwrap();
            check(arrows(&inner, k, n - 1).unwrap().arrows, || format!("({k},{n}) {g:?}: first layer does not arrow"))?;
        }
    }
    let distinct: std::collections::BTreeSet<String> = corpus.iter().map(|(g, _, _)| canonical_form(g)).collect();
    Ok(format!("{} arrowing instances ({} distinct graphs), {layers} layers, 0 violations", corpus.len(), distinct.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("exact r-hat and r-hat* for k=2, n=3", criterion_1),
        ("exact r-hat* for k=3, n=3", criterion_2),
        ("join construction arrows for k=2,3,4", criterion_3),
        ("engine agrees with brute-force oracle", criterion_4),
        ("good colourings on sparse 5-vertex graphs", criterion_5),
        ("min-degree subset or matching dichotomy", criterion_6),
        ("inequality audit", criterion_7),
        ("formula consistency", criterion_8),
        ("peeling properties", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} [{took:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{took:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
