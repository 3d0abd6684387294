//! Random hosts and exact-color-count colorings.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{ColorId, ColoredGraph, Vertex};

/// Rejection rounds before falling back to forcing one edge per color.
pub const SURJECTION_RETRIES: usize = 1000;

/// `K_n` minus a random edge set whose size is geometric with parameter
/// `p = 1/2` (so about half the hosts are complete), capped at a quarter of the edges.
pub fn near_complete_host<R: Rng>(n: usize, rng: &mut R) -> Vec<(Vertex, Vertex)> {
    let mut edges: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let cap = edges.len() / 4;
    let mut drop = 0;
    while drop < cap && rng.gen_bool(0.5) {
        drop += 1;
    }
    edges.shuffle(rng);
    edges.truncate(edges.len() - drop);
    edges.sort_unstable();
    edges
}

/// Colors `edges` with exactly `colors` distinct colors `0..colors`.
///
/// Draws uniform maps until one is onto; after [`SURJECTION_RETRIES`]
/// failures, assigns the colors to a random choice of distinct edges and
/// the rest uniformly.
pub fn exact_coloring<R: Rng>(n: usize, edges: &[(Vertex, Vertex)], colors: usize, rng: &mut R) -> ColoredGraph {
    assert!(colors >= 1 && colors <= edges.len(), "need 1 <= colors <= edges");
    let mut assignment = vec![0usize; edges.len()];
    let mut onto = false;
    for _ in 0..SURJECTION_RETRIES {
        let mut hit = vec![false; colors];
        for slot in assignment.iter_mut() {
            *slot = rng.gen_range(0..colors);
            hit[*slot] = true;
        }
        if hit.iter().all(|&h| h) {
            onto = true;
            break;
        }
    }
    if !onto {
        let mut order: Vec<usize> = (0..edges.len()).collect();
        order.shuffle(rng);
        for (rank, &e) in order.iter().enumerate() {
            assignment[e] = if rank < colors { rank } else { rng.gen_range(0..colors) };
        }
    }
    let mut g = ColoredGraph::new(n);
    for (&(u, v), &c) in edges.iter().zip(&assignment) {
        g.set_edge(u, v, ColorId(c as u64)).expect("host edges are valid");
    }
    g
}

/// A uniformly random coloring of `K_n` with exactly `colors` colors.
pub fn random_complete_coloring<R: Rng>(n: usize, colors: usize, rng: &mut R) -> ColoredGraph {
    let edges: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    exact_coloring(n, &edges, colors, rng)
}
