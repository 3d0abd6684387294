//! Peeling extraction of vertex-disjoint rainbow triangles from complete hosts.
//!
//! Starting from `G_0 = G`, each step deletes either
//!
//! * a vertex `v_1` that heads a sequence `v_1, ..., v_N` (`N <= 3`) with
//!   `phi(v_1, ..., v_N) > 3(m - i) + N` in `G_i`, or
//! * a rainbow triangle `uvw` with `d^s({u, v, w}) <= n - i - 1` in `G_i`,
//!
//! until neither rule applies or `m` steps have been taken. Replaying the
//! steps backwards turns every step into one rainbow triangle: a deleted
//! triangle is kept as is, and a deleted vertex is completed to a triangle
//! through two of its witness edges that avoid the triangles built so far.
//!
//! Each step loses at most `n - i` colors. So if the loop stops after
//! `k < m` steps on a host with `n >= 9m + 8`, the host had at most
//! `mn - C(m+1, 2)` colors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Vertex};
use crate::rainbow::{enumerate_rainbow_triangles, Triangle, TrianglePack};
use crate::saturation::{phi_sequence, saturated_count, witness_edges, PhiTable};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "rule")]
pub enum StepKind {
    /// Deleted `head`; `sequence` is `v_1, ..., v_N` with `v_1 = head`.
    Vertex { head: Vertex, sequence: Vec<Vertex>, phi: usize },
    /// Deleted a rainbow triangle saturating `saturated` colors.
    Triangle { triangle: Triangle, saturated: usize },
}

impl StepKind {
    pub fn deleted(&self) -> Vec<Vertex> {
        match self {
            StepKind::Vertex { head, .. } => vec![*head],
            StepKind::Triangle { triangle, .. } => triangle.to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelStep {
    #[serde(flatten)]
    pub kind: StepKind,
    /// `W(G_i) = c(G_{i-1}) - c(G_i)`.
    pub color_loss: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionTrace {
    pub n: usize,
    pub m: usize,
    pub initial_colors: usize,
    pub steps: Vec<PeelStep>,
    pub final_k: usize,
    pub residual_vertices: usize,
    pub residual_colors: usize,
}

impl ExtractionTrace {
    pub fn color_losses(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.color_loss).collect()
    }

    /// `G_0, ..., G_k` replayed from the host.
    pub fn replay(&self, g: &ColoredGraph) -> Result<Vec<ColoredGraph>> {
        let mut graphs = Vec::with_capacity(self.steps.len() + 1);
        graphs.push(g.clone());
        for step in &self.steps {
            let next = graphs.last().unwrap().delete_vertices(&step.kind.deleted())?;
            graphs.push(next);
        }
        Ok(graphs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureReason {
    KBelowM,
    HostNotComplete,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureReport {
    pub reason: FailureReason,
    pub trace: Option<ExtractionTrace>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extraction {
    Found { pack: TrianglePack, trace: ExtractionTrace },
    Failed(FailureReport),
}

impl Extraction {
    pub fn pack(&self) -> Option<&TrianglePack> {
        match self {
            Extraction::Found { pack, .. } => Some(pack),
            Extraction::Failed(_) => None,
        }
    }

    pub fn trace(&self) -> Option<&ExtractionTrace> {
        match self {
            Extraction::Found { trace, .. } => Some(trace),
            Extraction::Failed(report) => report.trace.as_ref(),
        }
    }
}

fn vertex_rule_bound(m: usize, i: usize, len: usize) -> usize {
    3 * (m - i) + len
}

/// First sequence `v_1..v_N` (`N = 1, 2, 3`, each in lexicographic order) with
/// `phi > 3(m - i) + N`.
fn find_vertex_step(g: &ColoredGraph, table: &PhiTable, m: usize, i: usize) -> Option<(Vec<Vertex>, usize)> {
    let verts: Vec<Vertex> = g.vertices().collect();
    let bound = |len| vertex_rule_bound(m, i, len);
    for &a in &verts {
        let phi = table.phi(&[a]);
        if phi > bound(1) {
            return Some((vec![a], phi));
        }
    }
    for &a in &verts {
        let head = table.phi(&[a]);
        for &b in &verts {
            if b == a {
                continue;
            }
            let phi = head + table.phi(&[a, b]);
            if phi > bound(2) {
                return Some((vec![a, b], phi));
            }
        }
    }
    for &a in &verts {
        let head = table.phi(&[a]);
        for &b in &verts {
            if b == a {
                continue;
            }
            let two = head + table.phi(&[a, b]);
            for &c in &verts {
                if c == a || c == b {
                    continue;
                }
                let phi = two + table.phi(&[a, b, c]);
                if phi > bound(3) {
                    return Some((vec![a, b, c], phi));
                }
            }
        }
    }
    None
}

fn find_triangle_step(g: &ColoredGraph, n: usize, i: usize) -> Result<Option<(Triangle, usize)>> {
    let limit = n - i - 1;
    for t in enumerate_rainbow_triangles(g) {
        let sat = saturated_count(g, &t)?;
        if sat <= limit {
            return Ok(Some((t, sat)));
        }
    }
    Ok(None)
}

/// Runs the peeling loop on a complete host, stopping after `m` steps.
pub fn run_peeling(g: &ColoredGraph, m: usize) -> Result<ExtractionTrace> {
    if m == 0 {
        return Err(Error::params("m must be at least 1"));
    }
    if !g.is_complete() {
        return Err(Error::HostNotComplete);
    }
    let n = g.vertex_count();
    let mut current = g.clone();
    let mut steps = Vec::new();
    let mut i = 0;
    while i < m {
        let table = PhiTable::build(&current);
        let kind = if let Some((sequence, phi)) = find_vertex_step(&current, &table, m, i) {
            StepKind::Vertex { head: sequence[0], sequence, phi }
        } else if let Some((triangle, saturated)) = find_triangle_step(&current, n, i)? {
            StepKind::Triangle { triangle, saturated }
        } else {
            break;
        };
        let next = current.delete_vertices(&kind.deleted())?;
        let color_loss = current.color_count() - next.color_count();
        if color_loss > n - (i + 1) {
            return Err(Error::InvariantViolation(format!(
                "step {} lost {color_loss} colors, more than n - i = {}",
                i + 1,
                n - (i + 1)
            )));
        }
        steps.push(PeelStep { kind, color_loss });
        current = next;
        i += 1;
    }
    Ok(ExtractionTrace {
        n,
        m,
        initial_colors: g.color_count(),
        final_k: steps.len(),
        steps,
        residual_vertices: current.vertex_count(),
        residual_colors: current.color_count(),
    })
}

/// Rebuilds `m` vertex-disjoint rainbow triangles of `g` from a peeling trace.
pub fn reconstruct_pack(g: &ColoredGraph, trace: &ExtractionTrace, m: usize) -> Result<TrianglePack> {
    if trace.final_k < m {
        return Err(Error::InsufficientPeeling { k: trace.final_k, m });
    }
    if !g.is_complete() {
        return Err(Error::HostNotComplete);
    }
    let graphs = trace.replay(g)?;
    let mut pack: Vec<Triangle> = Vec::with_capacity(m);
    let mut used: Vec<Vertex> = Vec::new();
    for (j, step) in trace.steps.iter().enumerate().rev() {
        if pack.len() == m {
            break;
        }
        let before = &graphs[j];
        let triangle = match &step.kind {
            StepKind::Triangle { triangle, .. } => *triangle,
            StepKind::Vertex { head, sequence, .. } => {
                // phi > 3(m - j) + N gives phi >= (3(m - j - 1) + 2) + N - 1 with room to spare.
                let need = 3 * (trace.m - j - 1) + 2;
                let witnesses = witness_edges(before, sequence, need)?;
                let mut ends = witnesses.far_ends().filter(|v| !used.contains(v)).collect::<Vec<_>>();
                ends.sort_unstable();
                if ends.len() < 2 {
                    return Err(Error::InvariantViolation(format!(
                        "step {}: only {} witness endpoints avoid the partial pack",
                        j + 1,
                        ends.len()
                    )));
                }
                let mut t = [*head, ends[0], ends[1]];
                t.sort_unstable();
                t
            }
        };
        if !before.is_rainbow_clique(&triangle) || triangle.iter().any(|v| used.contains(v)) {
            return Err(Error::InvariantViolation(format!(
                "step {}: {triangle:?} is not a fresh rainbow triangle",
                j + 1
            )));
        }
        used.extend(triangle);
        pack.push(triangle);
    }
    pack.sort_unstable();
    let pack = TrianglePack { triangles: pack };
    if !pack.is_valid_in(g) {
        return Err(Error::InvariantViolation("reconstructed pack is invalid in the host".into()));
    }
    Ok(pack)
}

/// Peeling followed by reconstruction.
pub fn extract_proper_mk3(g: &ColoredGraph, m: usize) -> Result<Extraction> {
    if !g.is_complete() {
        return Ok(Extraction::Failed(FailureReport { reason: FailureReason::HostNotComplete, trace: None }));
    }
    let trace = run_peeling(g, m)?;
    if trace.final_k < m {
        return Ok(Extraction::Failed(FailureReport { reason: FailureReason::KBelowM, trace: Some(trace) }));
    }
    let pack = reconstruct_pack(g, &trace, m)?;
    Ok(Extraction::Found { pack, trace })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Audit {
    pub passed: bool,
    pub failure: Option<String>,
    /// Whether the residual-graph checks for a short run were applicable.
    pub residual_checked: bool,
}

/// Re-verifies a trace against its host using the definitional saturation
/// functions rather than the cover table used while peeling.
pub fn audit_trace(g: &ColoredGraph, trace: &ExtractionTrace) -> Audit {
    match audit_inner(g, trace) {
        Ok(residual_checked) => Audit { passed: true, failure: None, residual_checked },
        Err(msg) => Audit { passed: false, failure: Some(msg), residual_checked: false },
    }
}

fn audit_inner(g: &ColoredGraph, trace: &ExtractionTrace) -> std::result::Result<bool, String> {
    let n = g.vertex_count();
    let m = trace.m;
    if !g.is_complete() {
        return Err("host is not complete".into());
    }
    if trace.n != n || trace.initial_colors != g.color_count() {
        return Err(format!("trace header (n = {}, c = {}) does not match the host", trace.n, trace.initial_colors));
    }
    if trace.final_k != trace.steps.len() || trace.final_k > m {
        return Err(format!("final_k = {} inconsistent with {} steps and m = {m}", trace.final_k, trace.steps.len()));
    }
    let mut current = g.clone();
    let mut lost = 0;
    for (j, step) in trace.steps.iter().enumerate() {
        let label = j + 1;
        match &step.kind {
            StepKind::Vertex { head, sequence, phi } => {
                if sequence.is_empty() || sequence.len() > 3 || sequence[0] != *head {
                    return Err(format!("step {label}: malformed sequence {sequence:?}"));
                }
                let actual = phi_sequence(&current, sequence).map_err(|e| format!("step {label}: {e}"))?;
                if actual != *phi {
                    return Err(format!("step {label}: recorded phi {phi}, actual {actual}"));
                }
                if actual <= vertex_rule_bound(m, j, sequence.len()) {
                    return Err(format!("step {label}: phi {actual} does not exceed 3(m - i) + N"));
                }
            }
            StepKind::Triangle { triangle, saturated } => {
                if !current.is_rainbow_clique(triangle) {
                    return Err(format!("step {label}: {triangle:?} is not a rainbow triangle"));
                }
                let actual = saturated_count(&current, triangle).map_err(|e| format!("step {label}: {e}"))?;
                if actual != *saturated || actual > n - j - 1 {
                    return Err(format!("step {label}: d^s = {actual} (recorded {saturated}), limit {}", n - j - 1));
                }
            }
        }
        let next = current.delete_vertices(&step.kind.deleted()).map_err(|e| format!("step {label}: {e}"))?;
        let w = current.color_count() - next.color_count();
        if w != step.color_loss {
            return Err(format!("step {label}: recorded W = {}, actual {w}", step.color_loss));
        }
        if w > n - label {
            return Err(format!("step {label}: W = {w} exceeds n - i = {}", n - label));
        }
        lost += w;
        current = next;
    }
    if current.color_count() != trace.residual_colors || current.vertex_count() != trace.residual_vertices {
        return Err("residual graph does not match the trace".into());
    }
    if g.color_count() != lost + trace.residual_colors {
        return Err(format!("telescoping failed: c(G) = {} but sum W + c(G_k) = {}", g.color_count(), lost + trace.residual_colors));
    }
    let k = trace.final_k;
    if k < m {
        if let Some(seq) = vertex_rule_applies(&current, m, k) {
            return Err(format!("run stopped although the vertex rule applies to {seq:?}"));
        }
        for t in enumerate_rainbow_triangles(&current) {
            if saturated_count(&current, &t).unwrap() <= n - k - 1 {
                return Err(format!("run stopped although the triangle rule applies to {t:?}"));
            }
        }
        if n >= 9 * m + 8 {
            if !enumerate_rainbow_triangles(&current).is_empty() {
                return Err("residual graph of a short run contains a rainbow triangle".into());
            }
            if current.color_count() > n - k - 1 {
                return Err(format!("residual graph has {} colors, more than n - k - 1 = {}", current.color_count(), n - k - 1));
            }
            return Ok(true);
        }
    }
    Ok(false)
}

fn vertex_rule_applies(g: &ColoredGraph, m: usize, i: usize) -> Option<Vec<Vertex>> {
    let verts: Vec<Vertex> = g.vertices().collect();
    let mut seq = Vec::with_capacity(3);
    fn rec(g: &ColoredGraph, verts: &[Vertex], seq: &mut Vec<Vertex>, m: usize, i: usize) -> bool {
        if !seq.is_empty() && phi_sequence(g, seq).unwrap() > vertex_rule_bound(m, i, seq.len()) {
            return true;
        }
        if seq.len() == 3 {
            return false;
        }
        for &v in verts {
            if seq.contains(&v) {
                continue;
            }
            seq.push(v);
            if rec(g, verts, seq, m, i) {
                return true;
            }
            seq.pop();
        }
        false
    }
    rec(g, &verts, &mut seq, m, i).then_some(seq)
}
