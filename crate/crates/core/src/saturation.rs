//! Color saturation.
//!
//! A color is *saturated* by a vertex set `A` when every edge of that color
//! meets `A`, so deleting `A` removes the color. It is *ideally saturated*
//! by `A` when `A` saturates it and no proper subset of `A` does. In other
//! words `A` is an inclusion-minimal vertex cover of the color class.
//!
//! The free functions here evaluate the definitions directly. [`PhiTable`]
//! precomputes ideal saturation for every vertex set of size at most three
//! by enumerating small minimal covers of each color class, which is what
//! the peeling loop queries.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ColorId, ColoredGraph, Vertex};

/// Largest `|A|` accepted by [`subset_sum_check`].
pub const DEFAULT_SUBSET_CAP: usize = 4;

fn normalize_set(g: &ColoredGraph, set: &[Vertex]) -> Result<Vec<Vertex>> {
    for &v in set {
        g.check_vertex(v)?;
    }
    let mut out = set.to_vec();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn check_sequence(g: &ColoredGraph, seq: &[Vertex]) -> Result<()> {
    if seq.is_empty() {
        return Err(Error::params("vertex sequence must be non-empty"));
    }
    for (i, &v) in seq.iter().enumerate() {
        g.check_vertex(v)?;
        if seq[..i].contains(&v) {
            return Err(Error::DuplicateVertex(v));
        }
    }
    Ok(())
}

/// Colors all of whose edges meet `set` (assumed deduplicated and live).
fn saturated_unchecked(g: &ColoredGraph, set: &[Vertex]) -> BTreeSet<ColorId> {
    let mut meeting: HashMap<ColorId, usize> = HashMap::new();
    for (i, &a) in set.iter().enumerate() {
        for b in g.neighbors(a).iter() {
            // Count an edge inside `set` once, from its earlier endpoint.
            if let Some(j) = set.iter().position(|&x| x == b) {
                if j < i {
                    continue;
                }
            }
            *meeting.entry(g.color(a, b).unwrap()).or_insert(0) += 1;
        }
    }
    meeting
        .into_iter()
        .filter(|&(c, hits)| hits == g.color_multiplicity(c))
        .map(|(c, _)| c)
        .collect()
}

fn ideally_saturated_unchecked(g: &ColoredGraph, set: &[Vertex]) -> BTreeSet<ColorId> {
    let mut colors = saturated_unchecked(g, set);
    // Saturation is monotone, so the maximal proper subsets are the only ones to rule out.
    for skip in 0..set.len() {
        if colors.is_empty() {
            break;
        }
        let smaller: Vec<Vertex> = set.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
        for c in saturated_unchecked(g, &smaller) {
            colors.remove(&c);
        }
    }
    colors
}

/// Colors saturated by `set`; its size is `d^s(A) = c(G) - c(G - A)`.
pub fn saturated_colors(g: &ColoredGraph, set: &[Vertex]) -> Result<BTreeSet<ColorId>> {
    let set = normalize_set(g, set)?;
    Ok(saturated_unchecked(g, &set))
}

pub fn saturated_count(g: &ColoredGraph, set: &[Vertex]) -> Result<usize> {
    saturated_colors(g, set).map(|s| s.len())
}

/// Colors ideally saturated by `set`; its size is `phi(A)`.
pub fn ideally_saturated_colors(g: &ColoredGraph, set: &[Vertex]) -> Result<BTreeSet<ColorId>> {
    let set = normalize_set(g, set)?;
    Ok(ideally_saturated_unchecked(g, &set))
}

/// `phi(v_1, ..., v_N)`: the sum of `phi` over the prefixes `{v_1..v_i}`.
pub fn phi_sequence(g: &ColoredGraph, seq: &[Vertex]) -> Result<usize> {
    check_sequence(g, seq)?;
    Ok(prefix_colors(g, seq).iter().map(BTreeSet::len).sum())
}

/// Ideally saturated colors of each prefix of `seq`.
fn prefix_colors(g: &ColoredGraph, seq: &[Vertex]) -> Vec<BTreeSet<ColorId>> {
    (1..=seq.len())
        .map(|i| {
            let mut prefix = seq[..i].to_vec();
            prefix.sort_unstable();
            ideally_saturated_unchecked(g, &prefix)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "vertices")]
pub enum Subject {
    Set(Vec<Vertex>),
    Sequence(Vec<Vertex>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefixReport {
    pub prefix: Vec<Vertex>,
    pub phi: usize,
    pub colors: Vec<ColorId>,
}

/// Saturation data for a vertex set or an ordered vertex sequence.
///
/// For a sequence, `d_s` and `saturated` refer to the set of all its
/// vertices and `phi` is the prefix sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationReport {
    pub subject: Subject,
    pub d_s: usize,
    pub phi: usize,
    pub saturated: Vec<ColorId>,
    pub ideally_saturated: Vec<ColorId>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub prefixes: Vec<PrefixReport>,
}

pub fn saturation_report(g: &ColoredGraph, subject: Subject) -> Result<SaturationReport> {
    match &subject {
        Subject::Set(set) => {
            let set = normalize_set(g, set)?;
            let saturated = saturated_unchecked(g, &set);
            let ideal = ideally_saturated_unchecked(g, &set);
            Ok(SaturationReport {
                d_s: saturated.len(),
                phi: ideal.len(),
                saturated: saturated.into_iter().collect(),
                ideally_saturated: ideal.into_iter().collect(),
                prefixes: Vec::new(),
                subject: Subject::Set(set),
            })
        }
        Subject::Sequence(seq) => {
            check_sequence(g, seq)?;
            let mut all = seq.clone();
            all.sort_unstable();
            let saturated = saturated_unchecked(g, &all);
            let prefixes: Vec<PrefixReport> = prefix_colors(g, seq)
                .into_iter()
                .enumerate()
                .map(|(i, colors)| PrefixReport {
                    prefix: seq[..=i].to_vec(),
                    phi: colors.len(),
                    colors: colors.into_iter().collect(),
                })
                .collect();
            let ideal = prefixes.last().map(|p| p.colors.clone()).unwrap_or_default();
            Ok(SaturationReport {
                d_s: saturated.len(),
                phi: prefixes.iter().map(|p| p.phi).sum(),
                saturated: saturated.into_iter().collect(),
                ideally_saturated: ideal,
                prefixes,
                subject,
            })
        }
    }
}

/// Edges at `v_1` with distinct colors, each color saturated by a prefix of the sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEdges {
    pub edges: Vec<(Vertex, Vertex)>,
    pub colors: Vec<ColorId>,
    /// For each edge, the length of the prefix ideally saturating its color.
    pub prefix_len: Vec<usize>,
}

impl WitnessEdges {
    /// Endpoints other than `v_1`, in edge order.
    pub fn far_ends(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.edges.iter().map(|&(_, b)| b)
    }
}

/// At least `k` edges at `seq[0]` that miss `seq[1..]`, carry distinct
/// colors, and whose colors are each saturated by a prefix of `seq`.
///
/// Requires `phi(seq) >= k + N - 1`. One edge is taken per ideally saturated
/// color of every prefix (the one with the smallest far endpoint); the at
/// most `N - 1` that land on `seq[1..]` are dropped.
pub fn witness_edges(g: &ColoredGraph, seq: &[Vertex], k: usize) -> Result<WitnessEdges> {
    check_sequence(g, seq)?;
    let prefixes = prefix_colors(g, seq);
    let phi: usize = prefixes.iter().map(BTreeSet::len).sum();
    let required = k + seq.len() - 1;
    if phi < required {
        return Err(Error::HypothesisNotSatisfied { phi, required });
    }
    let head = seq[0];
    let mut first_at_head: HashMap<ColorId, Vertex> = HashMap::new();
    for b in g.neighbors(head).iter() {
        first_at_head.entry(g.color(head, b).unwrap()).or_insert(b);
    }
    let mut out = WitnessEdges { edges: Vec::new(), colors: Vec::new(), prefix_len: Vec::new() };
    for (i, colors) in prefixes.iter().enumerate() {
        for &c in colors {
            let b = *first_at_head.get(&c).ok_or_else(|| {
                Error::InvariantViolation(format!("ideally saturated color {c} has no edge at vertex {head}"))
            })?;
            if seq[1..].contains(&b) {
                continue;
            }
            out.edges.push((head, b));
            out.colors.push(c);
            out.prefix_len.push(i + 1);
        }
    }
    debug_assert!(out.edges.len() >= k);
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetSum {
    pub d_s: usize,
    pub sum_phi: usize,
    /// Every color saturated by `A` is ideally saturated by some `B ⊆ A`, and conversely.
    pub decomposition_holds: bool,
}

/// `d^s(A)` next to `sum over B ⊆ A of phi(B)`.
pub fn subset_sum_check(g: &ColoredGraph, set: &[Vertex]) -> Result<SubsetSum> {
    subset_sum_check_capped(g, set, DEFAULT_SUBSET_CAP)
}

pub fn subset_sum_check_capped(g: &ColoredGraph, set: &[Vertex], cap: usize) -> Result<SubsetSum> {
    let set = normalize_set(g, set)?;
    if set.len() > cap {
        return Err(Error::params(format!("|A| = {} exceeds the cap of {cap}", set.len())));
    }
    let saturated = saturated_unchecked(g, &set);
    let mut covered = BTreeSet::new();
    let mut sum_phi = 0;
    for mask in 0u32..(1 << set.len()) {
        let subset: Vec<Vertex> = (0..set.len()).filter(|i| mask >> i & 1 == 1).map(|i| set[i]).collect();
        let ideal = ideally_saturated_unchecked(g, &subset);
        sum_phi += ideal.len();
        covered.extend(ideal);
    }
    Ok(SubsetSum { d_s: saturated.len(), sum_phi, decomposition_holds: covered == saturated })
}

type Key = [Vertex; 3];

const NONE: Vertex = Vertex::MAX;

fn key(set: &[Vertex]) -> Key {
    let mut k = [NONE; 3];
    k[..set.len()].copy_from_slice(set);
    k[..set.len()].sort_unstable();
    k
}

/// `phi(A)` for every vertex set with `1 <= |A| <= 3`, built from the
/// minimal vertex covers of size at most three of each color class.
#[derive(Clone, Debug, Default)]
pub struct PhiTable {
    counts: HashMap<Key, usize>,
}

impl PhiTable {
    pub fn build(g: &ColoredGraph) -> Self {
        let mut counts: HashMap<Key, usize> = HashMap::new();
        for edges in g.color_classes().values() {
            for cover in small_minimal_covers(edges) {
                *counts.entry(key(&cover)).or_insert(0) += 1;
            }
        }
        PhiTable { counts }
    }

    /// `phi(A)` for `|A| <= 3`; `A` must not repeat a vertex.
    pub fn phi(&self, set: &[Vertex]) -> usize {
        debug_assert!(set.len() <= 3);
        if set.is_empty() {
            return 0;
        }
        self.counts.get(&key(set)).copied().unwrap_or(0)
    }

    /// `phi(v_1, ..., v_N)` for `N <= 3`.
    pub fn phi_sequence(&self, seq: &[Vertex]) -> usize {
        (1..=seq.len()).map(|i| self.phi(&seq[..i])).sum()
    }
}

fn covers(edges: &[(Vertex, Vertex)], set: &[Vertex]) -> bool {
    edges.iter().all(|(a, b)| set.contains(a) || set.contains(b))
}

/// Inclusion-minimal vertex covers of `edges` with at most three vertices, sorted.
pub fn small_minimal_covers(edges: &[(Vertex, Vertex)]) -> Vec<Vec<Vertex>> {
    fn branch(edges: &[(Vertex, Vertex)], partial: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        match edges.iter().find(|(a, b)| !partial.contains(a) && !partial.contains(b)) {
            None => {
                let mut c = partial.clone();
                c.sort_unstable();
                out.push(c);
            }
            Some(&(a, b)) if partial.len() < 3 => {
                for v in [a, b] {
                    partial.push(v);
                    branch(edges, partial, out);
                    partial.pop();
                }
            }
            Some(_) => {}
        }
    }
    let mut found = Vec::new();
    branch(edges, &mut Vec::with_capacity(3), &mut found);
    found.sort();
    found.dedup();
    found.retain(|c| {
        (0..c.len()).all(|skip| {
            let smaller: Vec<Vertex> = c.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
            !covers(edges, &smaller)
        })
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_rainbow_clique, build_tn};

    fn colors(ids: &[u64]) -> BTreeSet<ColorId> {
        ids.iter().map(|&c| ColorId(c)).collect()
    }

    // T_4 with labels v_1..v_4 = vertices 0..3; edge {v_i, v_j} has color i.
    fn t4() -> ColoredGraph {
        build_tn(4).unwrap()
    }

    #[test]
    fn saturated_examples() {
        let g = t4();
        assert_eq!(saturated_colors(&g, &[0]).unwrap(), colors(&[1]));
        assert_eq!(saturated_colors(&g, &[2, 3]).unwrap(), colors(&[2, 3]));
        assert!(saturated_colors(&g, &[]).unwrap().is_empty());
        let h = g.delete_vertices(&[0]).unwrap();
        assert_eq!(g.color_count() - h.color_count(), 1);
    }

    #[test]
    fn ideal_examples() {
        let g = t4();
        assert_eq!(ideally_saturated_colors(&g, &[2, 3]).unwrap(), colors(&[2]));
        assert!(ideally_saturated_colors(&g, &[0, 1]).unwrap().is_empty());
        for v in 0..4 {
            assert_eq!(ideally_saturated_colors(&g, &[v]).unwrap(), saturated_colors(&g, &[v]).unwrap());
        }
    }

    #[test]
    fn phi_sequence_examples() {
        assert_eq!(phi_sequence(&t4(), &[0, 1]).unwrap(), 1);
        assert_eq!(phi_sequence(&t4(), &[2]).unwrap(), saturated_count(&t4(), &[2]).unwrap());
        assert_eq!(phi_sequence(&build_rainbow_clique(4), &[0]).unwrap(), 3);
        assert_eq!(phi_sequence(&t4(), &[0, 0]), Err(Error::DuplicateVertex(0)));
        assert!(phi_sequence(&t4(), &[]).is_err());
        assert!(phi_sequence(&t4(), &[9]).is_err());
    }

    #[test]
    fn witness_examples() {
        let w = witness_edges(&build_rainbow_clique(5), &[0], 4).unwrap();
        assert_eq!(w.edges, vec![(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_eq!(w.colors.iter().collect::<BTreeSet<_>>().len(), 4);
        let w = witness_edges(&t4(), &[0], 1).unwrap();
        assert_eq!(w.colors, vec![ColorId(1)]);
        assert_eq!(w.edges[0].0, 0);
        assert_eq!(
            witness_edges(&t4(), &[0], 2),
            Err(Error::HypothesisNotSatisfied { phi: 1, required: 2 })
        );
    }

    #[test]
    fn witness_drops_edges_into_the_sequence() {
        // Rainbow K_4: phi(0) = 3 and phi({0,1}) = 0, so phi(0, 1) = 3 = 2 + 2 - 1.
        let g = build_rainbow_clique(4);
        let w = witness_edges(&g, &[0, 1], 2).unwrap();
        assert!(w.edges.iter().all(|&(a, b)| a == 0 && b != 1));
        assert_eq!(w.edges.len(), 2);
    }

    #[test]
    fn subset_sum_examples() {
        let s = subset_sum_check(&t4(), &[2, 3]).unwrap();
        assert_eq!((s.d_s, s.sum_phi), (2, 3));
        assert!(s.decomposition_holds);
        let s = subset_sum_check(&t4(), &[]).unwrap();
        assert_eq!((s.d_s, s.sum_phi), (0, 0));
        let mono = ColoredGraph::complete_with(4, |_, _| ColorId(5));
        assert_eq!(subset_sum_check(&mono, &[0, 1]).unwrap().d_s, 0);
        assert!(subset_sum_check(&build_rainbow_clique(6), &[0, 1, 2, 3, 4]).is_err());
    }

    #[test]
    fn report_for_sequence() {
        let r = saturation_report(&t4(), Subject::Sequence(vec![2, 3])).unwrap();
        assert_eq!(r.phi, 1 + 1);
        assert_eq!(r.d_s, 2);
        assert_eq!(r.prefixes.len(), 2);
        let r = saturation_report(&t4(), Subject::Set(vec![3, 2])).unwrap();
        assert_eq!(r.subject, Subject::Set(vec![2, 3]));
        assert_eq!((r.d_s, r.phi), (2, 1));
    }

    #[test]
    fn minimal_covers() {
        assert_eq!(small_minimal_covers(&[(0, 1)]), vec![vec![0], vec![1]]);
        assert_eq!(small_minimal_covers(&[(0, 1), (0, 2)]), vec![vec![0], vec![1, 2]]);
        // A matching of size four has no cover with three vertices.
        assert!(small_minimal_covers(&[(0, 1), (2, 3), (4, 5), (6, 7)]).is_empty());
    }

    #[test]
    fn phi_table_agrees_with_definition_on_tn() {
        let g = build_tn(6).unwrap();
        let table = PhiTable::build(&g);
        for a in 0..6 {
            assert_eq!(table.phi(&[a]), ideally_saturated_colors(&g, &[a]).unwrap().len());
            for b in 0..6 {
                if b == a {
                    continue;
                }
                assert_eq!(table.phi(&[a, b]), ideally_saturated_colors(&g, &[a, b]).unwrap().len());
            }
        }
    }
}
