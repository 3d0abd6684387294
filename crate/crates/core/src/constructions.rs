//! Extremal colorings of complete graphs that avoid vertex-disjoint rainbow
//! triangles.
//!
//! Vertex `i` (0-based) plays the role of `v_{i+1}` in the staircase coloring
//! [`build_tn`]: the edge `{i, j}` with `i < j` gets color `i + 1`. Every
//! builder hands out fresh colors sequentially, starting one past the largest
//! color already present, in lexicographic edge order.

use crate::error::{Error, Result};
use crate::graph::{ColorId, ColoredGraph, Vertex};

struct FreshColors(u64);

impl FreshColors {
    fn after(g: &ColoredGraph) -> Self {
        FreshColors(g.max_color().map_or(1, |c| c.0 + 1))
    }

    fn next(&mut self) -> ColorId {
        let c = ColorId(self.0);
        self.0 += 1;
        c
    }
}

/// Staircase coloring on `n` vertices embedded in an index range of size `total`.
fn staircase(total: usize, n: usize) -> ColoredGraph {
    let mut g = ColoredGraph::new(total);
    for u in 0..n {
        for v in u + 1..n {
            g.set_edge(u, v, ColorId(u as u64 + 1)).expect("indices in range");
        }
    }
    g
}

/// `T_n`: complete graph where edge `{i, j}`, `i < j`, has color `i + 1`.
///
/// Contains no rainbow triangle and has `n - 1` colors.
pub fn build_tn(n: usize) -> Result<ColoredGraph> {
    if n < 2 {
        return Err(Error::params(format!("T_n needs n >= 2, got {n}")));
    }
    Ok(staircase(n, n))
}

/// `T_{n-m+1}` on vertices `0..=n-m`, every other edge of `K_n` in its own color.
///
/// Has `mn - m(m+1)/2` colors and no `m` vertex-disjoint rainbow triangles,
/// since every rainbow triangle uses one of the last `m - 1` vertices.
pub fn build_main_construction(n: usize, m: usize) -> Result<ColoredGraph> {
    if m < 1 || n < m + 1 {
        return Err(Error::params(format!("main construction needs m >= 1 and n >= m + 1, got n = {n}, m = {m}")));
    }
    let core = n - m + 1;
    let mut g = staircase(n, core);
    let mut fresh = FreshColors::after(&g);
    for u in 0..n {
        for v in (u + 1).max(core)..n {
            g.set_edge(u, v, fresh.next())?;
        }
    }
    Ok(g)
}

/// `T_{n-5m+5}` joined in turn with `m - 1` rainbow `K_5` blocks.
///
/// Each join step adds ten fresh colors inside the new block and one fresh
/// color shared by every edge from the block back to the earlier vertices.
/// Has `n + 6m - 7` colors.
pub fn build_lili_construction(n: usize, m: usize) -> Result<ColoredGraph> {
    if m < 1 || n < 5 * m {
        return Err(Error::params(format!("Li-Li construction needs m >= 1 and n >= 5m, got n = {n}, m = {m}")));
    }
    let core = n - 5 * m + 5;
    let mut g = staircase(n, core);
    let mut fresh = FreshColors::after(&g);
    for block in 0..m - 1 {
        let start = core + 5 * block;
        let block_range = start..start + 5;
        let cross = fresh.next();
        for u in 0..start {
            for v in block_range.clone() {
                g.set_edge(u, v, cross)?;
            }
        }
        for u in block_range.clone() {
            for v in u + 1..block_range.end {
                g.set_edge(u, v, fresh.next())?;
            }
        }
    }
    Ok(g)
}

/// `T_{n-3m+1}` joined with a rainbow `K_{3m-1}`; all cross edges share one fresh color.
///
/// Has `n - 3m + C(3m-1, 2) + 1` colors.
pub fn build_join_construction(n: usize, m: usize) -> Result<ColoredGraph> {
    if m < 1 || n < 3 * m {
        return Err(Error::params(format!("join construction needs m >= 1 and n >= 3m, got n = {n}, m = {m}")));
    }
    let core = n - 3 * m + 1;
    let mut g = staircase(n, core);
    let mut fresh = FreshColors::after(&g);
    let cross = fresh.next();
    for u in 0..core {
        for v in core..n {
            g.set_edge(u, v, cross)?;
        }
    }
    for u in core..n {
        for v in u + 1..n {
            g.set_edge(u, v, fresh.next())?;
        }
    }
    Ok(g)
}

/// Rainbow `K_n` with colors `1..=C(n,2)` in lexicographic edge order.
pub fn build_rainbow_clique(n: usize) -> ColoredGraph {
    let mut next = 0;
    ColoredGraph::complete_with(n, |_, _| {
        next += 1;
        ColorId(next)
    })
}

/// Vertices outside the staircase block of the main construction.
pub fn main_construction_apex(n: usize, m: usize) -> Vec<Vertex> {
    (n + 1 - m..n).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstructionKind {
    Tn,
    Main,
    LiLi,
    Join,
}

impl ConstructionKind {
    pub fn build(self, n: usize, m: usize) -> Result<ColoredGraph> {
        match self {
            ConstructionKind::Tn => build_tn(n),
            ConstructionKind::Main => build_main_construction(n, m),
            ConstructionKind::LiLi => build_lili_construction(n, m),
            ConstructionKind::Join => build_join_construction(n, m),
        }
    }
}

impl std::str::FromStr for ConstructionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tn" => Ok(ConstructionKind::Tn),
            "main" => Ok(ConstructionKind::Main),
            "lili" => Ok(ConstructionKind::LiLi),
            "join" => Ok(ConstructionKind::Join),
            other => Err(Error::params(format!("unknown construction kind {other:?}"))),
        }
    }
}
