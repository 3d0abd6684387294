//! Colorings of a host graph up to color relabeling, enumerated as set
//! partitions of its edge set in restricted-growth-string order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ColorId, ColoredGraph, Vertex};

/// Largest edge count enumerated without an explicit override (`K_5`).
pub const MAX_EXHAUSTIVE_EDGES: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Host {
    Complete,
    Edges(Vec<(Vertex, Vertex)>),
}

impl Host {
    pub fn edges(&self, n: usize) -> Vec<(Vertex, Vertex)> {
        match self {
            Host::Complete => (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect(),
            Host::Edges(edges) => {
                let mut e: Vec<_> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
                e.sort_unstable();
                e.dedup();
                e
            }
        }
    }
}

/// Bell numbers via the Bell triangle; saturates instead of overflowing.
pub fn bell(n: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for &x in &row {
            let last = *next.last().unwrap();
            next.push(last.saturating_add(x));
        }
        row = next;
    }
    row[0]
}

/// Number of partitions of an `n`-element set into at least `min_blocks` blocks.
pub fn partitions_with_at_least(n: usize, min_blocks: usize) -> u128 {
    // Stirling numbers of the second kind by the usual recurrence.
    let mut s = vec![vec![0u128; n + 1]; n + 1];
    s[0][0] = 1;
    for i in 1..=n {
        for j in 1..=i {
            s[i][j] = (j as u128).saturating_mul(s[i - 1][j]).saturating_add(s[i - 1][j - 1]);
        }
    }
    (min_blocks..=n).map(|j| s[n][j]).fold(0u128, u128::saturating_add)
}

/// Resumable position of a [`ColoringEnumerator`]: the next string to emit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cursor {
    pub rgs: Option<Vec<u32>>,
}

#[derive(Clone, Debug)]
pub struct ColoringEnumerator {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    min_colors: usize,
    next: Option<Vec<u32>>,
}

impl ColoringEnumerator {
    pub fn new(n: usize, host: &Host, min_colors: usize) -> Result<Self> {
        Self::with_edge_cap(n, host, min_colors, MAX_EXHAUSTIVE_EDGES)
    }

    pub fn with_edge_cap(n: usize, host: &Host, min_colors: usize, cap: usize) -> Result<Self> {
        let edges = host.edges(n);
        if let Some(&(_, v)) = edges.iter().find(|&&(u, v)| u == v || v >= n) {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if edges.len() > cap {
            let estimate = partitions_with_at_least(edges.len(), min_colors);
            return Err(Error::Intractable {
                edges: edges.len(),
                partitions: if estimate == u128::MAX { "more than 2^128".into() } else { estimate.to_string() },
            });
        }
        let mut first = vec![0u32; edges.len()];
        let first = if min_colors > edges.len() {
            None
        } else if edges.is_empty() {
            Some(first)
        } else {
            fill_tail(&mut first, 0, min_colors);
            Some(first)
        };
        Ok(Self { n, edges, min_colors, next: first })
    }

    pub fn resume(n: usize, host: &Host, min_colors: usize, cursor: Cursor) -> Result<Self> {
        let mut e = Self::new(n, host, min_colors)?;
        if let Some(rgs) = &cursor.rgs {
            if rgs.len() != e.edges.len() || !is_rgs(rgs) {
                return Err(Error::params("cursor does not match the host"));
            }
        }
        e.next = cursor.rgs;
        Ok(e)
    }

    pub fn cursor(&self) -> Cursor {
        Cursor { rgs: self.next.clone() }
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn to_graph(&self, rgs: &[u32]) -> ColoredGraph {
        let mut g = ColoredGraph::new(self.n);
        for (&(u, v), &c) in self.edges.iter().zip(rgs) {
            g.set_edge(u, v, ColorId(u64::from(c))).expect("host edges validated");
        }
        g
    }
}

fn is_rgs(a: &[u32]) -> bool {
    let mut max = None::<u32>;
    for &x in a {
        let bound = max.map_or(0, |m| m + 1);
        if x > bound {
            return false;
        }
        max = Some(max.map_or(x, |m| m.max(x)));
    }
    true
}

/// Lexicographically least completion of `a[..=i]` that reaches `min` blocks.
fn fill_tail(a: &mut [u32], i: usize, min: usize) {
    let mut blocks = a[..=i].iter().max().map_or(0, |&m| m as usize + 1);
    for j in i + 1..a.len() {
        let remaining = a.len() - j;
        if min.saturating_sub(blocks) >= remaining {
            a[j] = blocks as u32;
            blocks += 1;
        } else {
            a[j] = 0;
        }
    }
}

/// Next restricted growth string with at least `min` blocks.
fn advance(a: &mut [u32], min: usize) -> bool {
    let len = a.len();
    for i in (1..len).rev() {
        let prefmax = *a[..i].iter().max().unwrap();
        let remaining = len - i - 1;
        let candidate = if a[i] <= prefmax && prefmax as usize + 1 + remaining >= min {
            Some(a[i] + 1)
        } else if a[i] < prefmax + 1 && prefmax as usize + 2 + remaining >= min {
            Some(prefmax + 1)
        } else {
            None
        };
        if let Some(v) = candidate {
            a[i] = v;
            fill_tail(a, i, min);
            return true;
        }
    }
    false
}

impl Iterator for ColoringEnumerator {
    type Item = ColoredGraph;

    fn next(&mut self) -> Option<ColoredGraph> {
        let current = self.next.take()?;
        let g = self.to_graph(&current);
        let mut following = current;
        if advance(&mut following, self.min_colors) {
            self.next = Some(following);
        }
        Some(g)
    }
}
