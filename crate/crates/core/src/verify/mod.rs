//! Verification harness: checks bound statements on every coloring of a
//! small complete host, or on seeded random colorings at the threshold.
//!
//! A counterexample is only reported after it has been serialized to the
//! `ecg` text format, parsed back, and re-checked from scratch.

pub mod enumerate;
pub mod sample;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{BoundFormula, BoundId, Conclusion, Status, Threshold};
use crate::error::{Error, Result};
use crate::extraction::{audit_trace, extract_proper_mk3, Extraction};
use crate::graph::ColoredGraph;
use crate::rainbow::{find_disjoint_rainbow_cliques, find_rainbow_clique};

pub use enumerate::{bell, partitions_with_at_least, ColoringEnumerator, Cursor, Host, MAX_EXHAUSTIVE_EDGES};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Mode {
    Exhaustive,
    Sampled { trials: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Position in the canonical instance order (enumeration rank or trial index).
    pub index: u64,
    pub edges: usize,
    pub colors: usize,
    pub ecg: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub schema: u32,
    pub bound: BoundId,
    pub status: Status,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub threshold: Threshold,
    pub in_stated_range: bool,
    pub mode: Mode,
    /// Colorings generated and examined.
    pub instances_checked: u64,
    /// Of those, how many met the hypothesis (and so had their conclusion checked).
    pub hypothesis_met: u64,
    /// Trials skipped because no coloring of the sampled host can meet the hypothesis.
    pub vacuous: u64,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
    /// Peeling-specific tallies, present for the complete-host color bound.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub extraction: Option<ExtractionTally>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionTally {
    pub extracted: u64,
    /// Extractions additionally confirmed by the exact packing search.
    pub cross_checked: u64,
    pub audits_passed: u64,
    pub audits_failed: u64,
    /// Runs where peeling came up short although a packing exists.
    pub extractor_shortfalls: u64,
}

/// Checks the conclusion of `formula` on `g` with the exact searchers.
pub fn conclusion_holds(g: &ColoredGraph, formula: &BoundFormula) -> Result<bool> {
    match formula.conclusion() {
        Conclusion::DisjointRainbowCliques { k, count: 1 } => Ok(find_rainbow_clique(g, k).is_some()),
        Conclusion::DisjointRainbowCliques { k, count } => Ok(find_disjoint_rainbow_cliques(g, k, count).is_some()),
        Conclusion::EdgeDisjointRainbowTriangles { .. } => {
            Err(Error::Unsupported(format!("{}: edge-disjoint packings are not searched", formula.id)))
        }
    }
}

fn applies_to(formula: &BoundFormula, g: &ColoredGraph, threshold: &Threshold) -> bool {
    (!formula.requires_complete_host() || g.is_complete()) && threshold.is_met(g.edge_count(), g.color_count())
}

/// Serializes, re-parses and re-checks a candidate counterexample.
fn confirm_counterexample(formula: &BoundFormula, threshold: &Threshold, index: u64, g: &ColoredGraph) -> Result<Counterexample> {
    let ecg = g.to_ecg();
    let back = ColoredGraph::from_ecg(&ecg)?;
    if !applies_to(formula, &back, threshold) || conclusion_holds(&back, formula)? {
        return Err(Error::InvariantViolation(format!("counterexample #{index} did not re-verify from its serialization")));
    }
    Ok(Counterexample { index, edges: back.edge_count(), colors: back.color_count(), ecg })
}

fn verdict_shell(formula: &BoundFormula, threshold: Threshold, mode: Mode) -> Verdict {
    Verdict {
        schema: SCHEMA_VERSION,
        bound: formula.id,
        status: formula.id.status(),
        n: formula.n,
        m: formula.m,
        k: formula.k,
        threshold,
        in_stated_range: formula.in_stated_range(),
        mode,
        instances_checked: 0,
        hypothesis_met: 0,
        vacuous: 0,
        passed: true,
        counterexample: None,
        extraction: None,
    }
}

/// Checks `formula` on every coloring of `K_n` (up to relabeling colors).
pub fn exhaustive_verify(formula: &BoundFormula) -> Result<Verdict> {
    exhaustive_with_threshold(formula, formula.threshold()?)
}

fn exhaustive_with_threshold(formula: &BoundFormula, threshold: Threshold) -> Result<Verdict> {
    if let Conclusion::EdgeDisjointRainbowTriangles { .. } = formula.conclusion() {
        return Err(Error::Unsupported(format!("{}: edge-disjoint packings are not searched", formula.id)));
    }
    let enumerator = ColoringEnumerator::new(formula.n, &Host::Complete, 0)?;
    let outcomes: Vec<(u64, bool, Option<ColoredGraph>)> = enumerator
        .enumerate()
        .par_bridge()
        .map(|(i, g)| {
            let met = applies_to(formula, &g, &threshold);
            let bad = met && !conclusion_holds(&g, formula).unwrap_or(true);
            (i as u64, met, bad.then_some(g))
        })
        .collect();
    let mut verdict = verdict_shell(formula, threshold, Mode::Exhaustive);
    verdict.instances_checked = outcomes.len() as u64;
    verdict.hypothesis_met = outcomes.iter().filter(|o| o.1).count() as u64;
    if let Some((i, _, Some(g))) = outcomes.into_iter().filter(|o| o.2.is_some()).min_by_key(|o| o.0) {
        verdict.counterexample = Some(confirm_counterexample(formula, &threshold, i, &g)?);
        verdict.passed = false;
    }
    Ok(verdict)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplingConfig {
    /// Extra colors drawn uniformly from `0..=slack` above the least admissible count.
    pub slack: usize,
    /// Whether hosts may be `K_n` minus a few random edges (ignored for complete-host bounds).
    pub near_complete: bool,
    /// Every `cross_check_every`-th extraction is re-confirmed by the exact packing search.
    pub cross_check_every: usize,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        Self { slack: 1, near_complete: true, cross_check_every: 10 }
    }
}

enum TrialOutcome {
    Vacuous,
    Held { extraction: Option<ExtractionTally> },
    Violated(ColoredGraph, Option<ExtractionTally>),
}

/// Per-trial generator: stream `trial` of a ChaCha8 generator keyed by `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Checks `formula` on `trials` seeded random colorings that meet its hypothesis.
pub fn random_verify(formula: &BoundFormula, trials: usize, seed: u64, config: SamplingConfig) -> Result<Verdict> {
    let threshold = formula.threshold()?;
    if let Conclusion::EdgeDisjointRainbowTriangles { .. } = formula.conclusion() {
        return Err(Error::Unsupported(format!("{}: edge-disjoint packings are not searched", formula.id)));
    }
    let outcomes: Vec<TrialOutcome> = (0..trials as u64)
        .into_par_iter()
        .map(|t| run_trial(formula, &threshold, &config, seed, t))
        .collect::<Result<_>>()?;

    let mut verdict = verdict_shell(formula, threshold, Mode::Sampled { trials, seed });
    let mut tally = formula.requires_complete_host().then(ExtractionTally::default);
    let mut first_bad = None;
    for (t, outcome) in outcomes.into_iter().enumerate() {
        let ex = match outcome {
            TrialOutcome::Vacuous => {
                verdict.vacuous += 1;
                continue;
            }
            TrialOutcome::Held { extraction } => extraction,
            TrialOutcome::Violated(g, extraction) => {
                if first_bad.is_none() {
                    first_bad = Some((t as u64, g));
                }
                extraction
            }
        };
        verdict.instances_checked += 1;
        verdict.hypothesis_met += 1;
        if let (Some(total), Some(ex)) = (tally.as_mut(), ex) {
            total.extracted += ex.extracted;
            total.cross_checked += ex.cross_checked;
            total.audits_passed += ex.audits_passed;
            total.audits_failed += ex.audits_failed;
            total.extractor_shortfalls += ex.extractor_shortfalls;
        }
    }
    if let Some((t, g)) = first_bad {
        verdict.counterexample = Some(confirm_counterexample(formula, &threshold, t, &g)?);
        verdict.passed = false;
    }
    if let Some(total) = &tally {
        if total.audits_failed > 0 || total.extractor_shortfalls > 0 {
            verdict.passed = false;
        }
    }
    verdict.extraction = tally;
    Ok(verdict)
}

fn run_trial(formula: &BoundFormula, threshold: &Threshold, config: &SamplingConfig, seed: u64, t: u64) -> Result<TrialOutcome> {
    let mut rng = trial_rng(seed, t);
    let n = formula.n;
    let edges = if config.near_complete && !formula.requires_complete_host() {
        sample::near_complete_host(n, &mut rng)
    } else {
        Host::Complete.edges(n)
    };
    let least = threshold.min_colors(edges.len()).max(1) as usize;
    if least > edges.len() {
        return Ok(TrialOutcome::Vacuous);
    }
    let colors = (least + rng.gen_range(0..=config.slack)).min(edges.len());
    let g = sample::exact_coloring(n, &edges, colors, &mut rng);
    debug_assert!(applies_to(formula, &g, threshold));

    if !formula.requires_complete_host() {
        return Ok(if conclusion_holds(&g, formula)? {
            TrialOutcome::Held { extraction: None }
        } else {
            TrialOutcome::Violated(g, None)
        });
    }

    let mut tally = ExtractionTally::default();
    let extraction = extract_proper_mk3(&g, formula.m)?;
    if let Some(trace) = extraction.trace() {
        if audit_trace(&g, trace).passed {
            tally.audits_passed += 1;
        } else {
            tally.audits_failed += 1;
        }
    }
    match extraction {
        Extraction::Found { pack, .. } => {
            if !pack.is_valid_in(&g) || pack.len() != formula.m {
                return Err(Error::InvariantViolation(format!("trial {t}: extracted pack is invalid")));
            }
            tally.extracted += 1;
            if config.cross_check_every > 0 && t.is_multiple_of(config.cross_check_every as u64) {
                if !conclusion_holds(&g, formula)? {
                    return Err(Error::InvariantViolation(format!("trial {t}: packing search disagrees with extraction")));
                }
                tally.cross_checked += 1;
            }
            Ok(TrialOutcome::Held { extraction: Some(tally) })
        }
        Extraction::Failed(_) => {
            if conclusion_holds(&g, formula)? {
                tally.extractor_shortfalls += 1;
                Ok(TrialOutcome::Held { extraction: Some(tally) })
            } else {
                Ok(TrialOutcome::Violated(g, Some(tally)))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    /// A published theorem fails on this graph.
    Critical,
    /// The open conjecture fails on this graph.
    ConjectureCounterexample,
    /// The graph witnesses the already refuted statement.
    KnownRefutation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub bound: BoundId,
    pub status: Status,
    pub threshold: Option<Threshold>,
    /// Why the bound was not evaluated, when it was not.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub not_applicable: Option<String>,
    pub in_stated_range: bool,
    pub hypothesis_met: bool,
    /// `None` when the conclusion is not searched.
    pub conclusion_found: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub severity: Option<Severity>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub schema: u32,
    pub n: usize,
    pub edges: usize,
    pub colors: usize,
    pub complete: bool,
    pub m: usize,
    pub k: usize,
    pub checks: Vec<BoundCheck>,
    pub theorem_violations: usize,
    pub conjecture_counterexamples: usize,
    pub reproduces_refutation: bool,
}

/// Evaluates every bound statement on `g` with parameters `m` and `k`.
pub fn check_graph(g: &ColoredGraph, m: usize, k: usize) -> BoundReport {
    let n = g.vertex_count();
    let checks: Vec<BoundCheck> = BoundId::ALL
        .into_iter()
        .map(|id| {
            let formula = BoundFormula::new(id, n, m, k);
            let mut check = BoundCheck {
                bound: id,
                status: id.status(),
                threshold: None,
                not_applicable: None,
                in_stated_range: formula.in_stated_range(),
                hypothesis_met: false,
                conclusion_found: None,
                severity: None,
            };
            let threshold = match formula.threshold() {
                Ok(t) => t,
                Err(e) => {
                    check.not_applicable = Some(e.to_string());
                    return check;
                }
            };
            check.threshold = Some(threshold);
            if formula.requires_complete_host() && !g.is_complete() {
                check.not_applicable = Some("statement is about complete hosts".into());
                return check;
            }
            check.hypothesis_met = threshold.is_met(g.edge_count(), g.color_count());
            check.conclusion_found = conclusion_holds(g, &formula).ok();
            if check.in_stated_range && check.hypothesis_met && check.conclusion_found == Some(false) {
                check.severity = Some(match id.status() {
                    Status::Theorem => Severity::Critical,
                    Status::Conjecture => Severity::ConjectureCounterexample,
                    Status::Refuted => Severity::KnownRefutation,
                });
            }
            check
        })
        .collect();
    let count = |s: Severity| checks.iter().filter(|c| c.severity == Some(s)).count();
    BoundReport {
        schema: SCHEMA_VERSION,
        n,
        edges: g.edge_count(),
        colors: g.color_count(),
        complete: g.is_complete(),
        m,
        k,
        theorem_violations: count(Severity::Critical),
        conjecture_counterexamples: count(Severity::ConjectureCounterexample),
        reproduces_refutation: count(Severity::KnownRefutation) > 0,
        checks,
    }
}
