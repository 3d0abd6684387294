//! Edge-colored simple graphs with stable vertex identities.
//!
//! A [`ColoredGraph`] owns an index range `0..n`. Deleting vertices keeps the
//! range and marks the removed vertices dead, so a vertex keeps its index
//! across any sequence of deletions.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

pub type Vertex = usize;

/// An edge color. Only equality between colors is meaningful.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColorId(pub u64);

impl fmt::Display for ColorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    n: usize,
    alive: VertexSet,
    adj: Vec<VertexSet>,
    colors: Vec<Option<ColorId>>,
    multiplicity: BTreeMap<ColorId, usize>,
    edge_count: usize,
}

impl ColoredGraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            alive: VertexSet::full(n),
            adj: vec![VertexSet::new(n); n],
            colors: vec![None; n * n],
            multiplicity: BTreeMap::new(),
            edge_count: 0,
        }
    }

    /// Complete graph on `n` vertices with `color(u, v)` on each edge `u < v`.
    pub fn complete_with(n: usize, mut color: impl FnMut(Vertex, Vertex) -> ColorId) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_unchecked(u, v, color(u, v));
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex, ColorId)>) -> Result<Self> {
        let mut g = Self::new(n);
        for (u, v, c) in edges {
            g.set_edge(u, v, c)?;
        }
        Ok(g)
    }

    /// Inserts or recolors the edge `{u, v}`.
    pub fn set_edge(&mut self, u: Vertex, v: Vertex, color: ColorId) -> Result<()> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.insert_unchecked(u, v, color);
        Ok(())
    }

    pub fn with_edge(mut self, u: Vertex, v: Vertex, color: ColorId) -> Result<Self> {
        self.set_edge(u, v, color)?;
        Ok(self)
    }

    fn insert_unchecked(&mut self, u: Vertex, v: Vertex, color: ColorId) {
        if let Some(old) = self.colors[u * self.n + v] {
            self.release(old);
        } else {
            self.edge_count += 1;
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
        self.colors[u * self.n + v] = Some(color);
        self.colors[v * self.n + u] = Some(color);
        *self.multiplicity.entry(color).or_insert(0) += 1;
    }

    fn release(&mut self, color: ColorId) {
        if let Some(count) = self.multiplicity.get_mut(&color) {
            *count -= 1;
            if *count == 0 {
                self.multiplicity.remove(&color);
            }
        }
    }

    fn remove_edge_unchecked(&mut self, u: Vertex, v: Vertex) {
        if let Some(old) = self.colors[u * self.n + v].take() {
            self.colors[v * self.n + u] = None;
            self.adj[u].remove(v);
            self.adj[v].remove(u);
            self.edge_count -= 1;
            self.release(old);
        }
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else if !self.alive.contains(v) {
            Err(Error::DeletedVertex(v))
        } else {
            Ok(())
        }
    }

    /// Size of the index range, including deleted vertices.
    #[inline]
    pub fn index_bound(&self) -> usize {
        self.n
    }

    /// Number of live vertices.
    pub fn vertex_count(&self) -> usize {
        self.alive.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn color_count(&self) -> usize {
        self.multiplicity.len()
    }

    #[inline]
    pub fn is_alive(&self, v: Vertex) -> bool {
        self.alive.contains(v)
    }

    pub fn alive(&self) -> &VertexSet {
        &self.alive
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.alive.iter()
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn color(&self, u: Vertex, v: Vertex) -> Option<ColorId> {
        if u >= self.n || v >= self.n {
            return None;
        }
        self.colors[u * self.n + v]
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.color(u, v).is_some()
    }

    /// Edges `(u, v, color)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex, ColorId)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u]
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v, self.colors[u * self.n + v].expect("adjacency and color table agree")))
        })
    }

    /// Distinct colors in ascending order.
    pub fn colors(&self) -> impl Iterator<Item = ColorId> + '_ {
        self.multiplicity.keys().copied()
    }

    pub fn color_multiplicity(&self, color: ColorId) -> usize {
        self.multiplicity.get(&color).copied().unwrap_or(0)
    }

    pub fn max_color(&self) -> Option<ColorId> {
        self.multiplicity.keys().next_back().copied()
    }

    /// Edge lists per color, each in lexicographic edge order.
    pub fn color_classes(&self) -> BTreeMap<ColorId, Vec<(Vertex, Vertex)>> {
        let mut classes: BTreeMap<ColorId, Vec<(Vertex, Vertex)>> = BTreeMap::new();
        for (u, v, c) in self.edges() {
            classes.entry(c).or_default().push((u, v));
        }
        classes
    }

    /// True when every pair of live vertices is adjacent.
    pub fn is_complete(&self) -> bool {
        let k = self.vertex_count();
        self.edge_count == k * k.saturating_sub(1) / 2
    }

    /// `G - A`: the same index range with the vertices of `A` and their edges removed.
    pub fn delete_vertices(&self, set: &[Vertex]) -> Result<ColoredGraph> {
        for &v in set {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        let mut g = self.clone();
        for &v in set {
            if !g.alive.contains(v) {
                continue;
            }
            let nbrs: Vec<Vertex> = g.adj[v].iter().collect();
            for u in nbrs {
                g.remove_edge_unchecked(u, v);
            }
            g.alive.remove(v);
        }
        Ok(g)
    }

    /// True iff `set` spans a clique whose edges carry pairwise distinct colors.
    pub fn is_rainbow_clique(&self, set: &[Vertex]) -> bool {
        let mut seen = Vec::with_capacity(set.len() * set.len().saturating_sub(1) / 2);
        for (i, &u) in set.iter().enumerate() {
            if u >= self.n || !self.alive.contains(u) {
                return false;
            }
            for &v in &set[i + 1..] {
                match self.color(u, v) {
                    Some(c) if !seen.contains(&c) => seen.push(c),
                    _ => return false,
                }
            }
        }
        true
    }

    /// Applies `f` to every edge color.
    pub fn map_colors(&self, mut f: impl FnMut(ColorId) -> ColorId) -> ColoredGraph {
        let mut g = ColoredGraph::new(self.n);
        g.alive = self.alive.clone();
        for (u, v, c) in self.edges() {
            g.insert_unchecked(u, v, f(c));
        }
        g
    }

    /// Serializes to the line-oriented `ecg` text format.
    pub fn to_ecg(&self) -> String {
        use std::fmt::Write;
        let mut out = String::with_capacity(16 + self.edge_count * 12);
        writeln!(out, "ecg {} {}", self.n, self.edge_count).unwrap();
        for (u, v, c) in self.edges() {
            writeln!(out, "{u} {v} {c}").unwrap();
        }
        out
    }

    /// Parses the canonical `ecg` text format. Line numbers in errors are 1-based.
    pub fn from_ecg(text: &str) -> Result<ColoredGraph> {
        let parse_err = |line: usize, message: String| Error::Parse { line, message };
        if text.is_empty() {
            return Err(parse_err(1, "empty input".into()));
        }
        let lines: Vec<&str> = text.split('\n').collect();
        let last = lines.len();
        if !text.ends_with('\n') {
            return Err(parse_err(last, "missing trailing newline".into()));
        }
        let body = &lines[..last - 1];

        let header: Vec<&str> = body[0].split(' ').collect();
        if header.len() != 3 || header[0] != "ecg" {
            return Err(parse_err(1, format!("expected `ecg <n> <edge_count>`, got {:?}", body[0])));
        }
        let n = parse_number(header[1]).ok_or_else(|| parse_err(1, format!("bad vertex count {:?}", header[1])))?;
        let m = parse_number(header[2]).ok_or_else(|| parse_err(1, format!("bad edge count {:?}", header[2])))?;
        if body.len() - 1 != m as usize {
            return Err(parse_err(
                body.len().max(1),
                format!("header declares {m} edges, found {}", body.len() - 1),
            ));
        }
        let n = n as usize;
        let mut g = ColoredGraph::new(n);
        let mut prev: Option<(usize, usize)> = None;
        for (i, line) in body.iter().enumerate().skip(1) {
            let lineno = i + 1;
            let fields: Vec<&str> = line.split(' ').collect();
            if fields.len() != 3 {
                return Err(parse_err(lineno, format!("expected `<u> <v> <color>`, got {line:?}")));
            }
            let nums: Vec<u64> = fields
                .iter()
                .map(|f| parse_number(f).ok_or_else(|| parse_err(lineno, format!("bad number {f:?}"))))
                .collect::<Result<_>>()?;
            let (u, v, c) = (nums[0] as usize, nums[1] as usize, ColorId(nums[2]));
            if u >= v {
                return Err(parse_err(lineno, format!("expected u < v, got {u} {v}")));
            }
            if v >= n {
                return Err(parse_err(lineno, format!("vertex {v} out of range for n = {n}")));
            }
            if prev.is_some_and(|p| p >= (u, v)) {
                return Err(parse_err(lineno, "edges not strictly sorted by (u, v)".into()));
            }
            prev = Some((u, v));
            g.insert_unchecked(u, v, c);
        }
        Ok(g)
    }
}

/// ASCII decimal without sign or superfluous leading zeros.
fn parse_number(s: &str) -> Option<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) || (s.len() > 1 && s.starts_with('0')) {
        return None;
    }
    s.parse().ok()
}

impl fmt::Debug for ColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ColoredGraph")
            .field("n", &self.n)
            .field("alive", &self.alive)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(Vertex, Vertex, ColorId)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    deleted: Vec<Vertex>,
}

impl Serialize for ColoredGraph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            n: self.n,
            edges: self.edges().collect(),
            deleted: (0..self.n).filter(|&v| !self.alive.contains(v)).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ColoredGraph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(deserializer)?;
        let g = ColoredGraph::from_edges(repr.n, repr.edges).map_err(serde::de::Error::custom)?;
        g.delete_vertices(&repr.deleted).map_err(serde::de::Error::custom)
    }
}
