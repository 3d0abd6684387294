//! Exact search for rainbow cliques and vertex-disjoint packings of them.

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::graph::{ColorId, ColoredGraph, Vertex};

pub type Triangle = [Vertex; 3];

/// Vertex-disjoint rainbow triangles.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TrianglePack {
    pub triangles: Vec<Triangle>,
}

impl TrianglePack {
    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    /// Checks disjointness and rainbowness against `g` from scratch.
    pub fn is_valid_in(&self, g: &ColoredGraph) -> bool {
        let mut seen = Vec::new();
        for t in &self.triangles {
            if !g.is_rainbow_clique(t) {
                return false;
            }
            for &v in t {
                if seen.contains(&v) {
                    return false;
                }
                seen.push(v);
            }
        }
        true
    }
}

/// Vertex-disjoint rainbow cliques of a common order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CliquePack {
    pub cliques: Vec<Vec<Vertex>>,
}

impl CliquePack {
    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn is_valid_in(&self, g: &ColoredGraph, k: usize) -> bool {
        let mut seen = Vec::new();
        for c in &self.cliques {
            if c.len() != k || !g.is_rainbow_clique(c) {
                return false;
            }
            for &v in c {
                if seen.contains(&v) {
                    return false;
                }
                seen.push(v);
            }
        }
        true
    }

    pub fn to_triangles(&self) -> Option<TrianglePack> {
        let triangles = self
            .cliques
            .iter()
            .map(|c| <[Vertex; 3]>::try_from(c.as_slice()).ok())
            .collect::<Option<Vec<_>>>()?;
        Some(TrianglePack { triangles })
    }
}

/// All rainbow triangles `[u, v, w]` with `u < v < w`, in lexicographic order.
pub fn enumerate_rainbow_triangles(g: &ColoredGraph) -> Vec<Triangle> {
    let mut out = Vec::new();
    for (u, v, cuv) in g.edges() {
        for w in g.neighbors(u).iter_common_above(g.neighbors(v), v) {
            let cuw = g.color(u, w).unwrap();
            let cvw = g.color(v, w).unwrap();
            if cuv != cuw && cuv != cvw && cuw != cvw {
                out.push([u, v, w]);
            }
        }
    }
    out
}

/// All rainbow `K_k` as ascending vertex lists, in lexicographic order.
pub fn enumerate_rainbow_cliques(g: &ColoredGraph, k: usize) -> Vec<Vec<Vertex>> {
    match k {
        0 => vec![vec![]],
        1 => g.vertices().map(|v| vec![v]).collect(),
        3 => enumerate_rainbow_triangles(g).into_iter().map(|t| t.to_vec()).collect(),
        _ => {
            let mut out = Vec::new();
            let mut clique = Vec::with_capacity(k);
            let mut colors = Vec::with_capacity(k * (k - 1) / 2);
            extend_cliques(g, k, g.alive().clone(), &mut clique, &mut colors, &mut 0, &mut |c| {
                out.push(c.to_vec());
                true
            });
            out
        }
    }
}

/// Depth-first extension of a rainbow clique. `candidates` holds vertices
/// above the current maximum adjacent to every clique member. `visit` returns
/// `false` to stop the search; the function then returns `false` as well.
fn extend_cliques(
    g: &ColoredGraph,
    k: usize,
    candidates: VertexSet,
    clique: &mut Vec<Vertex>,
    colors: &mut Vec<ColorId>,
    nodes: &mut u64,
    visit: &mut dyn FnMut(&[Vertex]) -> bool,
) -> bool {
    *nodes += 1;
    if clique.len() == k {
        return visit(clique);
    }
    let needed = k - clique.len();
    for v in candidates.iter() {
        let mark = colors.len();
        let mut ok = true;
        for &u in clique.iter() {
            let c = g.color(u, v).expect("candidate is adjacent to the clique");
            if colors.contains(&c) {
                ok = false;
                break;
            }
            colors.push(c);
        }
        if ok {
            let mut next = candidates.clone();
            next.intersect_with(g.neighbors(v));
            for w in 0..=v {
                next.remove(w);
            }
            if next.len() + 1 >= needed {
                clique.push(v);
                let go_on = extend_cliques(g, k, next, clique, colors, nodes, visit);
                clique.pop();
                if !go_on {
                    colors.truncate(mark);
                    return false;
                }
            }
        }
        colors.truncate(mark);
    }
    true
}

/// Lexicographically least rainbow `K_k`, if any.
pub fn find_rainbow_clique(g: &ColoredGraph, k: usize) -> Option<Vec<Vertex>> {
    find_rainbow_clique_with_stats(g, k).0
}

/// As [`find_rainbow_clique`], also returning the number of search nodes.
pub fn find_rainbow_clique_with_stats(g: &ColoredGraph, k: usize) -> (Option<Vec<Vertex>>, u64) {
    let mut nodes = 0;
    if k == 3 {
        for (u, v, cuv) in g.edges() {
            for w in g.neighbors(u).iter_common_above(g.neighbors(v), v) {
                nodes += 1;
                let cuw = g.color(u, w).unwrap();
                let cvw = g.color(v, w).unwrap();
                if cuv != cuw && cuv != cvw && cuw != cvw {
                    return (Some(vec![u, v, w]), nodes);
                }
            }
        }
        return (None, nodes);
    }
    let mut found = None;
    let mut clique = Vec::with_capacity(k);
    let mut colors = Vec::new();
    extend_cliques(g, k, g.alive().clone(), &mut clique, &mut colors, &mut nodes, &mut |c| {
        found = Some(c.to_vec());
        false
    });
    (found, nodes)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub candidates: usize,
    pub nodes_explored: u64,
    /// Size of the greedy hitting set used for the upper bound, when computed.
    pub hitting_set: Option<usize>,
}

/// Exact search for `m` vertex-disjoint rainbow `K_k`.
///
/// Returns the lexicographically least packing (cliques sorted by their
/// lowest vertex) together with search statistics.
pub fn find_disjoint_rainbow_cliques_with_stats(
    g: &ColoredGraph,
    k: usize,
    m: usize,
) -> (Option<CliquePack>, SearchStats) {
    let cliques = if k >= 1 { enumerate_rainbow_cliques(g, k) } else { Vec::new() };
    pack_search(g, k, m, cliques)
}

pub fn find_disjoint_rainbow_cliques(g: &ColoredGraph, k: usize, m: usize) -> Option<CliquePack> {
    find_disjoint_rainbow_cliques_with_stats(g, k, m).0
}

fn pack_search(g: &ColoredGraph, k: usize, m: usize, cliques: Vec<Vec<Vertex>>) -> (Option<CliquePack>, SearchStats) {
    let mut stats = SearchStats { candidates: cliques.len(), ..SearchStats::default() };
    if m == 0 {
        return (Some(CliquePack::default()), stats);
    }
    if k == 0 || cliques.len() < m || g.vertex_count() < k * m {
        return (None, stats);
    }
    // Every clique of a disjoint family contains its own element of a hitting set.
    let hitting = greedy_hitting_set(g.index_bound(), &cliques);
    stats.hitting_set = Some(hitting);
    if hitting < m {
        return (None, stats);
    }

    let n = g.index_bound();
    let mut by_low: Vec<Vec<VertexSet>> = vec![Vec::new(); n];
    let mut raw: Vec<Vec<&Vec<Vertex>>> = vec![Vec::new(); n];
    for c in &cliques {
        by_low[c[0]].push(VertexSet::from_iter_with_capacity(n, c.iter().copied()));
        raw[c[0]].push(c);
    }
    let mut search = PackSearch {
        k,
        m,
        by_low: &by_low,
        raw: &raw,
        alive: g.alive(),
        chosen: Vec::with_capacity(m),
        nodes: 0,
    };
    let used = VertexSet::new(n);
    let found = search.descend(0, &used);
    stats.nodes_explored = search.nodes;
    let pack = found.then(|| CliquePack {
        cliques: search.chosen.iter().map(|&(p, i)| raw[p][i].clone()).collect(),
    });
    (pack, stats)
}

struct PackSearch<'a> {
    k: usize,
    m: usize,
    by_low: &'a [Vec<VertexSet>],
    raw: &'a [Vec<&'a Vec<Vertex>>],
    alive: &'a VertexSet,
    chosen: Vec<(Vertex, usize)>,
    nodes: u64,
}

impl PackSearch<'_> {
    /// Branch on the smallest undecided vertex `p`: cover it with a clique
    /// whose lowest vertex is `p`, or leave it uncovered.
    fn descend(&mut self, from: Vertex, used: &VertexSet) -> bool {
        self.nodes += 1;
        if self.chosen.len() == self.m {
            return true;
        }
        let n = self.by_low.len();
        let mut p = from;
        while p < n && (used.contains(p) || !self.alive.contains(p) || self.by_low[p].is_empty()) {
            p += 1;
        }
        if p >= n {
            return false;
        }
        let free = (p..n).filter(|&v| self.alive.contains(v) && !used.contains(v)).count();
        if free / self.k < self.m - self.chosen.len() {
            return false;
        }
        for (i, clique) in self.by_low[p].iter().enumerate() {
            if clique.is_disjoint(used) {
                let mut next = used.clone();
                for v in self.raw[p][i].iter().copied() {
                    next.insert(v);
                }
                self.chosen.push((p, i));
                if self.descend(p + 1, &next) {
                    return true;
                }
                self.chosen.pop();
            }
        }
        self.descend(p + 1, used)
    }
}

/// Size of a greedily built vertex set meeting every clique.
fn greedy_hitting_set(n: usize, cliques: &[Vec<Vertex>]) -> usize {
    let mut remaining: Vec<&Vec<Vertex>> = cliques.iter().collect();
    let mut size = 0;
    while !remaining.is_empty() {
        let mut hits = vec![0usize; n];
        for c in &remaining {
            for &v in c.iter() {
                hits[v] += 1;
            }
        }
        let best = (0..n).max_by_key(|&v| (hits[v], std::cmp::Reverse(v))).unwrap();
        remaining.retain(|c| !c.contains(&best));
        size += 1;
    }
    size
}

/// Largest `m` admitting `m` vertex-disjoint rainbow triangles, with a witness.
pub fn max_disjoint_rainbow_triangles(g: &ColoredGraph) -> (usize, TrianglePack) {
    let (pack, _) = max_disjoint_rainbow_triangles_with_stats(g);
    (pack.len(), pack)
}

/// Maximum packing plus the search nodes summed over every `m` tried.
pub fn max_disjoint_rainbow_triangles_with_stats(g: &ColoredGraph) -> (TrianglePack, u64) {
    let triangles: Vec<Vec<Vertex>> = enumerate_rainbow_triangles(g).into_iter().map(|t| t.to_vec()).collect();
    let mut best = TrianglePack::default();
    let mut nodes = 0;
    for m in 1..=g.vertex_count() / 3 {
        let (found, stats) = pack_search(g, 3, m, triangles.clone());
        nodes += stats.nodes_explored;
        match found {
            Some(pack) => best = pack.to_triangles().expect("triangles"),
            None => break,
        }
    }
    (best, nodes)
}
