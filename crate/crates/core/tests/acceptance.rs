//! Acceptance suite. Runs every criterion, prints one line per criterion and
//! exits non-zero if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use ecg_core::bounds::{binomial, BoundFormula, BoundId};
use ecg_core::constructions::{
    build_join_construction, build_lili_construction, build_main_construction, build_tn,
};
use ecg_core::extraction::{audit_trace, extract_proper_mk3, Extraction, ExtractionTrace, FailureReason};
use ecg_core::rainbow::{enumerate_rainbow_cliques, enumerate_rainbow_triangles, find_disjoint_rainbow_cliques};
use ecg_core::saturation::{ideally_saturated_colors, subset_sum_check, witness_edges};
use ecg_core::verify::sample::random_complete_coloring;
use ecg_core::verify::{exhaustive_verify, random_verify, trial_rng, Mode, SamplingConfig};
use ecg_core::{ColorId, ColoredGraph, Vertex};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn c2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

// Independent validators: plain loops over the graph, no library search code.

fn brute_is_rainbow_triangle(g: &ColoredGraph, t: &[Vertex]) -> bool {
    let (a, b, c) = (t[0], t[1], t[2]);
    match (g.color(a, b), g.color(a, c), g.color(b, c)) {
        (Some(x), Some(y), Some(z)) => x != y && x != z && y != z && a != b && b != c && a != c,
        _ => false,
    }
}

fn brute_valid_pack(g: &ColoredGraph, triangles: &[[Vertex; 3]], m: usize) -> bool {
    let mut seen = BTreeSet::new();
    triangles.len() == m
        && triangles.iter().all(|t| brute_is_rainbow_triangle(g, t) && t.iter().all(|&v| seen.insert(v)))
}

fn brute_saturated(g: &ColoredGraph, set: &[Vertex]) -> BTreeSet<ColorId> {
    g.colors()
        .filter(|&c| g.edges().filter(|e| e.2 == c).all(|(u, v, _)| set.contains(&u) || set.contains(&v)))
        .collect()
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> ColoredGraph {
    let density: f64 = rng.gen_range(0.3..=1.0);
    let palette = rng.gen_range(1..=c2(n).max(1));
    let mut g = ColoredGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                g.set_edge(u, v, ColorId(rng.gen_range(0..palette) as u64)).unwrap();
            }
        }
    }
    g
}

fn c1_construction_identities() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for m in 1..=5usize {
        for n in 5 * m + 2..=40 {
            let g = build_main_construction(n, m).map_err(|e| e.to_string())?;
            let expect = m * n - m * (m + 1) / 2;
            ensure(g.color_count() == expect, || format!("main({n},{m}): c = {} != {expect}", g.color_count()))?;
            ensure(g.edge_count() + g.color_count() == c2(n) + expect, || format!("main({n},{m}): e + c"))?;
            checked += 1;
        }
        for n in 5 * m..=40 {
            let g = build_lili_construction(n, m).map_err(|e| e.to_string())?;
            ensure(g.color_count() == n + 6 * m - 7, || format!("lili({n},{m}): c = {}", g.color_count()))?;
            checked += 1;
        }
        for n in 3 * m..=40 {
            let g = build_join_construction(n, m).map_err(|e| e.to_string())?;
            let expect = n - 3 * m + c2(3 * m - 1) + 1;
            ensure(g.color_count() == expect, || format!("join({n},{m}): c = {} != {expect}", g.color_count()))?;
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}, limit 1 s"))?;
    Ok(format!("{checked} instances in {elapsed:?}"))
}

fn c2_refutation() -> Outcome {
    let g = build_main_construction(10, 2).unwrap();
    let sum = g.edge_count() + g.color_count();
    let old = BoundFormula::new(BoundId::RefutedVertexDisjoint, 10, 2, 3).threshold().unwrap();
    ensure(old.value == 61 && old.value as usize == binomial(11, 2) as usize + 6 * 2 - 6, || "old threshold".into())?;
    ensure(sum == 62 && sum >= 61, || format!("e + c = {sum}"))?;
    ensure(find_disjoint_rainbow_cliques(&g, 3, 2).is_none(), || "found a proper 2K_3".into())?;
    Ok(format!("e + c = {sum} >= 61, no proper 2K_3"))
}

fn c3_staircase_rainbow_free() -> Outcome {
    for n in 2..=60 {
        let g = build_tn(n).unwrap();
        ensure(enumerate_rainbow_triangles(&g).is_empty(), || format!("T_{n} has a rainbow triangle"))?;
    }
    Ok("T_2 .. T_60 rainbow-triangle-free".into())
}

fn c4_exhaustive_triangle_bound() -> Outcome {
    let f = BoundFormula::new(BoundId::RainbowTriangle, 5, 1, 3);
    let v = exhaustive_verify(&f).map_err(|e| e.to_string())?;
    ensure(v.mode == Mode::Exhaustive, || "mode".into())?;
    ensure(v.instances_checked == 115_975, || format!("{} colorings enumerated", v.instances_checked))?;
    ensure(v.passed && v.counterexample.is_none(), || format!("counterexample {:?}", v.counterexample))?;
    let t5 = build_tn(5).unwrap();
    let sum = t5.edge_count() + t5.color_count();
    ensure(sum == 14 && enumerate_rainbow_triangles(&t5).is_empty(), || "T_5 boundary".into())?;
    Ok(format!("{} colorings, {} meeting e + c >= 15, all with a rainbow triangle; T_5 has e + c = 14 and none", v.instances_checked, v.hypothesis_met))
}

const C5_SEED: u64 = 0x5eed_0026;
const C5_TRIALS: u64 = 200;

/// Traces from criteria 5 and 6, for the audit in criterion 9.
struct Runs {
    traces: Vec<(ColoredGraph, ExtractionTrace)>,
}

fn c5_extraction(runs: &mut Runs) -> Outcome {
    let results: Vec<Result<(ColoredGraph, ExtractionTrace, bool), String>> = (0..C5_TRIALS)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(C5_SEED, t);
            let g = random_complete_coloring(26, 50, &mut rng);
            if g.color_count() != 50 {
                return Err(format!("trial {t}: {} colors", g.color_count()));
            }
            match extract_proper_mk3(&g, 2).map_err(|e| format!("trial {t}: {e}"))? {
                Extraction::Found { pack, trace } => {
                    if !brute_valid_pack(&g, &pack.triangles, 2) {
                        return Err(format!("trial {t}: invalid pack {:?}", pack.triangles));
                    }
                    let cross = t % 10 == 0;
                    if cross && find_disjoint_rainbow_cliques(&g, 3, 2).is_none() {
                        return Err(format!("trial {t}: packing search disagrees"));
                    }
                    Ok((g, trace, cross))
                }
                Extraction::Failed(report) => Err(format!("trial {t}: extraction failed ({:?})", report.reason)),
            }
        })
        .collect();
    let mut cross = 0;
    for r in results {
        let (g, trace, c) = r?;
        cross += usize::from(c);
        runs.traces.push((g, trace));
    }
    ensure(cross == 20, || format!("{cross} cross-checks"))?;

    // The harness path produces the same verdict on the same distribution.
    let f = BoundFormula::new(BoundId::CompleteHostColors, 26, 2, 3);
    let config = SamplingConfig { slack: 0, near_complete: false, cross_check_every: 10 };
    let v = random_verify(&f, C5_TRIALS as usize, C5_SEED, config).map_err(|e| e.to_string())?;
    let tally = v.extraction.clone().unwrap_or_default();
    ensure(v.passed && tally.extracted == C5_TRIALS, || format!("harness verdict {v:?}"))?;
    Ok(format!("{C5_TRIALS}/{C5_TRIALS} extractions valid, {cross} cross-checked by exact search"))
}

fn c6_sharpness(runs: &mut Runs) -> Outcome {
    let g = build_main_construction(26, 2).unwrap();
    ensure(g.color_count() == 49, || format!("c = {}", g.color_count()))?;
    let triangles = enumerate_rainbow_triangles(&g);
    ensure(!triangles.is_empty() && triangles.iter().all(|t| t.contains(&25)), || {
        "some rainbow triangle avoids the apex".into()
    })?;
    ensure(find_disjoint_rainbow_cliques(&g, 3, 2).is_none(), || "found a proper 2K_3".into())?;
    match extract_proper_mk3(&g, 2).map_err(|e| e.to_string())? {
        Extraction::Failed(report) if report.reason == FailureReason::KBelowM => {
            let trace = report.trace.expect("trace");
            let k = trace.final_k;
            runs.traces.push((g, trace));
            Ok(format!("c = 49, {} rainbow triangles all through vertex 25, peeling stops at k = {k}", triangles.len()))
        }
        other => Err(format!("unexpected extraction outcome {other:?}")),
    }
}

fn c7_saturation_lemmas() -> Outcome {
    let failures: Vec<String> = (0..1000u64)
        .into_par_iter()
        .filter_map(|t| {
            let mut rng = trial_rng(0x5a7, t);
            let n = rng.gen_range(1..=12);
            let g = random_graph(&mut rng, n);
            saturation_suite(&g, &mut rng).err().map(|e| format!("graph {t}: {e}"))
        })
        .collect();
    ensure(failures.is_empty(), || failures[0].clone())?;
    Ok("1000 graphs: subset-sum inequality, incidence, decomposition, witness edges".into())
}

fn saturation_suite(g: &ColoredGraph, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = g.index_bound();
    let mut sets: Vec<Vec<Vertex>> = vec![vec![]];
    for a in 0..n {
        sets.push(vec![a]);
        for b in a + 1..n {
            sets.push(vec![a, b]);
            for c in b + 1..n {
                sets.push(vec![a, b, c]);
            }
        }
    }
    for set in &sets {
        let s = subset_sum_check(g, set).map_err(|e| e.to_string())?;
        let brute = brute_saturated(g, set);
        let deleted = g.color_count() - g.delete_vertices(set).unwrap().color_count();
        ensure(s.d_s == brute.len() && s.d_s == deleted, || format!("{set:?}: d_s {} vs {} vs {deleted}", s.d_s, brute.len()))?;
        ensure(s.d_s <= s.sum_phi, || format!("{set:?}: d_s {} > sum phi {}", s.d_s, s.sum_phi))?;
        ensure(s.decomposition_holds, || format!("{set:?}: saturated colors not covered by ideal ones"))?;
        for c in ideally_saturated_colors(g, set).unwrap() {
            ensure(brute.contains(&c), || format!("{set:?}: ideal color {c} not saturated"))?;
            for &v in set {
                let incident = g.vertices().any(|u| g.color(u, v) == Some(c));
                ensure(incident, || format!("{set:?}: vertex {v} misses ideal color {c}"))?;
            }
        }
    }
    // Witness edges for singletons and random ordered pairs and triples.
    let mut seqs: Vec<Vec<Vertex>> = (0..n).map(|v| vec![v]).collect();
    for _ in 0..12 {
        let len = rng.gen_range(2..=3usize);
        if n >= len {
            let mut seq = Vec::new();
            while seq.len() < len {
                let v = rng.gen_range(0..n);
                if !seq.contains(&v) {
                    seq.push(v);
                }
            }
            seqs.push(seq);
        }
    }
    for seq in seqs {
        let phi = ecg_core::saturation::phi_sequence(g, &seq).unwrap();
        let slack = phi + 1;
        if slack < seq.len() + 1 {
            continue;
        }
        let k = slack - seq.len();
        if k == 0 {
            continue;
        }
        let w = witness_edges(g, &seq, k).map_err(|e| format!("{seq:?}: {e}"))?;
        ensure(w.edges.len() >= k, || format!("{seq:?}: {} edges < k = {k}", w.edges.len()))?;
        let distinct: BTreeSet<_> = w.colors.iter().collect();
        ensure(distinct.len() == w.colors.len(), || format!("{seq:?}: repeated colors"))?;
        for (&(a, b), &c) in w.edges.iter().zip(&w.colors) {
            ensure(a == seq[0] && !seq.contains(&b), || format!("{seq:?}: edge {a}-{b} meets the sequence wrongly"))?;
            ensure(g.color(a, b) == Some(c), || format!("{seq:?}: edge {a}-{b} color mismatch"))?;
            let saturated_by_prefix = (1..=seq.len()).any(|i| brute_saturated(g, &seq[..i]).contains(&c));
            ensure(saturated_by_prefix, || format!("{seq:?}: color {c} not saturated by a prefix"))?;
        }
    }
    Ok(())
}

fn c8_clique_removal_loss() -> Outcome {
    let results: Vec<Result<usize, String>> = (0..1000u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(0xc1c, t);
            let k = if t % 2 == 0 { 3 } else { 4 };
            let n = rng.gen_range(k + 1..=12);
            let mut g = random_graph(&mut rng, n);
            // Plant a rainbow K_k on fresh colors.
            let mut planted: Vec<Vertex> = Vec::new();
            while planted.len() < k {
                let v = rng.gen_range(0..n);
                if !planted.contains(&v) {
                    planted.push(v);
                }
            }
            let mut fresh = 1_000_000;
            for (i, &u) in planted.iter().enumerate() {
                for &v in &planted[i + 1..] {
                    g.set_edge(u, v, ColorId(fresh)).unwrap();
                    fresh += 1;
                }
            }
            let cliques = enumerate_rainbow_cliques(&g, k);
            if cliques.is_empty() {
                return Err(format!("graph {t}: planted clique not found"));
            }
            let limit = 2 * k * (n - k) + k * (k - 1);
            let before = g.edge_count() + g.color_count();
            for h in &cliques {
                let rest = g.delete_vertices(h).unwrap();
                let loss = before - (rest.edge_count() + rest.color_count());
                if loss > limit {
                    return Err(format!("graph {t}: removing {h:?} lost {loss} > {limit}"));
                }
            }
            Ok(cliques.len())
        })
        .collect();
    let mut total = 0;
    for r in results {
        total += r?;
    }
    Ok(format!("1000 graphs, {total} rainbow cliques removed within the loss bound"))
}

fn c9_trace_audit(runs: &Runs) -> Outcome {
    ensure(runs.traces.len() == C5_TRIALS as usize + 1, || format!("{} traces collected", runs.traces.len()))?;
    let mut residual_checked = 0;
    for (i, (g, trace)) in runs.traces.iter().enumerate() {
        let audit = audit_trace(g, trace);
        ensure(audit.passed, || format!("trace {i}: {:?}", audit.failure))?;
        let total: usize = trace.color_losses().iter().sum::<usize>() + trace.residual_colors;
        ensure(total == g.color_count(), || format!("trace {i}: telescoping"))?;
        for (j, w) in trace.color_losses().iter().enumerate() {
            ensure(*w <= trace.n - (j + 1), || format!("trace {i}: W({}) = {w}", j + 1))?;
        }
        if trace.final_k < trace.m {
            ensure(audit.residual_checked, || format!("trace {i}: residual not checked"))?;
            let residual = trace.replay(g).unwrap().pop().unwrap();
            ensure(enumerate_rainbow_triangles(&residual).is_empty(), || format!("trace {i}: residual has a rainbow triangle"))?;
            ensure(residual.color_count() <= trace.n - trace.final_k - 1, || format!("trace {i}: residual colors"))?;
            residual_checked += 1;
        }
    }
    Ok(format!("{} traces audited, {residual_checked} short runs with rainbow-free residual", runs.traces.len()))
}

fn c10_conjecture_sampling() -> Outcome {
    let f = BoundFormula::new(BoundId::ProperTrianglePacking, 12, 2, 3);
    let t = f.threshold().unwrap();
    ensure(t.value == 87 && t.strict, || format!("threshold {t:?}"))?;
    let config = SamplingConfig::default();
    let a = random_verify(&f, 500, 0xc0_14, config).map_err(|e| e.to_string())?;
    let b = random_verify(&f, 500, 0xc0_14, config).map_err(|e| e.to_string())?;
    ensure(a == b, || "report not reproducible".into())?;
    ensure(a.in_stated_range, || "n = 12 should be in range for m = 2".into())?;
    ensure(a.hypothesis_met + a.vacuous == 500 && a.hypothesis_met > 0, || format!("{a:?}"))?;
    if let Some(cx) = &a.counterexample {
        let g = ColoredGraph::from_ecg(&cx.ecg).map_err(|e| e.to_string())?;
        ensure(g.edge_count() + g.color_count() > 87, || "counterexample misses the hypothesis".into())?;
        ensure(find_disjoint_rainbow_cliques(&g, 3, 2).is_none(), || "counterexample has a proper 2K_3".into())?;
        return Ok(format!("COUNTEREXAMPLE at trial {} (re-verified from its ecg file)", cx.index));
    }
    Ok(format!("{} trials meeting e + c > 87, no counterexample, reproducible", a.hypothesis_met))
}

fn main() {
    let mut runs = Runs { traces: Vec::new() };
    let mut results: Vec<(usize, &str, Outcome, Duration)> = Vec::new();
    let mut run = |id: usize, name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let out = f();
        let elapsed = start.elapsed();
        let tag = if out.is_ok() { "PASS" } else { "FAIL" };
        let detail = match &out {
            Ok(s) | Err(s) => s.clone(),
        };
        println!("criterion {id:>2} [{tag}] {name}: {detail} ({:.2?})", elapsed);
        results.push((id, name, out, elapsed));
    };
    run(1, "construction identities", &mut c1_construction_identities);
    run(2, "refutation reproduction", &mut c2_refutation);
    run(3, "staircase rainbow-freeness", &mut c3_staircase_rainbow_free);
    run(4, "triangle bound exhaustive at n = 5", &mut c4_exhaustive_triangle_bound);
    run(5, "complete-host extraction, K_26 with 50 colors", &mut || c5_extraction(&mut runs));
    run(6, "complete-host sharpness at n = 26", &mut || c6_sharpness(&mut runs));
    run(7, "saturation lemma suite", &mut c7_saturation_lemmas);
    run(8, "clique-removal loss bound", &mut c8_clique_removal_loss);
    run(9, "peeling trace audit", &mut || c9_trace_audit(&runs));
    run(10, "conjectured bound sampling at n = 12, m = 2", &mut c10_conjecture_sampling);

    let failed = results.iter().filter(|r| r.2.is_err()).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
