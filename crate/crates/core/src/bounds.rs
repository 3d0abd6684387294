//! Closed-form thresholds: Turán counts, anti-Ramsey numbers and the
//! `e(G) + c(G)` / `c(G)` thresholds that force rainbow structures.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Edges of the balanced complete `k`-partite graph on `n` vertices.
///
/// The `n mod k` larger parts come first; the count does not depend on that choice.
pub fn turan_edges(n: usize, k: usize) -> Result<u64> {
    if k == 0 || k > n {
        return Err(Error::params(format!("Turán count needs 1 <= k <= n, got n = {n}, k = {k}")));
    }
    let (q, r) = (n / k, n % k);
    let parts = (0..k).map(|i| if i < r { q + 1 } else { q });
    Ok(binomial(n as u64, 2) - parts.map(|p| binomial(p as u64, 2)).sum::<u64>())
}

/// Minimum number of colors forcing a rainbow `K_k` in every coloring of `K_n`.
///
/// `n` for triangles, `t(n, k-2) + 2` for `k >= 4`.
pub fn anti_ramsey_rb(n: usize, k: usize) -> Result<u64> {
    if k < 3 || n < k {
        return Err(Error::params(format!("anti-Ramsey number needs n >= k >= 3, got n = {n}, k = {k}")));
    }
    if k == 3 {
        Ok(n as u64)
    } else {
        Ok(turan_edges(n, k - 2)? + 2)
    }
}

/// The guarantee statements, by what each one forces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundId {
    /// `e + c >= C(n+1, 2)` forces a rainbow triangle.
    #[serde(rename = "thm11")]
    RainbowTriangle,
    /// `e + c >= C(n, 2) + t(n, k-2) + 2` forces a rainbow `K_k`, `n >= k >= 4`.
    #[serde(rename = "thm12")]
    RainbowClique,
    /// `e + c >= C(n, 2) + rb(n, k)` forces a rainbow `K_k`.
    #[serde(rename = "cor13")]
    RainbowCliqueAntiRamsey,
    /// `e + c >= f(k, m, n)` forces `m` vertex-disjoint rainbow `K_k`.
    #[serde(rename = "prop14_f")]
    DisjointRainbowCliques,
    /// On complete hosts with `n >= 9m + 8`, `c > mn - C(m+1, 2)` forces a proper `mK_3`.
    #[serde(rename = "thm15")]
    CompleteHostColors,
    /// Open: `e + c > C(n, 2) + mn - C(m+1, 2)` with `n >= 5m + 2` forces a proper `mK_3`.
    #[serde(rename = "conj14")]
    ProperTrianglePacking,
    /// `e + c >= C(n+1, 2) + 3k - 3` forces `k` edge-disjoint rainbow triangles.
    #[serde(rename = "lili_edge_disjoint")]
    EdgeDisjointTriangles,
    /// Refuted: `e + c >= C(n+1, 2) + 6m - 6` with `n >= 5m` was claimed to force a proper `mK_3`.
    #[serde(rename = "lili_vertex_disjoint")]
    RefutedVertexDisjoint,
}

impl BoundId {
    pub const ALL: [BoundId; 8] = [
        BoundId::RainbowTriangle,
        BoundId::RainbowClique,
        BoundId::RainbowCliqueAntiRamsey,
        BoundId::DisjointRainbowCliques,
        BoundId::CompleteHostColors,
        BoundId::ProperTrianglePacking,
        BoundId::EdgeDisjointTriangles,
        BoundId::RefutedVertexDisjoint,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundId::RainbowTriangle => "thm11",
            BoundId::RainbowClique => "thm12",
            BoundId::RainbowCliqueAntiRamsey => "cor13",
            BoundId::DisjointRainbowCliques => "prop14_f",
            BoundId::CompleteHostColors => "thm15",
            BoundId::ProperTrianglePacking => "conj14",
            BoundId::EdgeDisjointTriangles => "lili_edge_disjoint",
            BoundId::RefutedVertexDisjoint => "lili_vertex_disjoint",
        }
    }

    pub fn status(self) -> Status {
        match self {
            BoundId::ProperTrianglePacking => Status::Conjecture,
            BoundId::RefutedVertexDisjoint => Status::Refuted,
            _ => Status::Theorem,
        }
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::params(format!("unknown bound id {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Theorem,
    Conjecture,
    Refuted,
}

/// Which graph quantity a threshold constrains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Quantity {
    #[serde(rename = "e+c")]
    EdgesPlusColors,
    #[serde(rename = "c")]
    Colors,
}

/// A guaranteed substructure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Conclusion {
    /// `count` vertex-disjoint rainbow `K_k`.
    DisjointRainbowCliques { k: usize, count: usize },
    /// `count` edge-disjoint rainbow triangles, not checked by this crate.
    EdgeDisjointRainbowTriangles { count: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Threshold {
    pub value: u64,
    /// `true` when the quantity must exceed `value`, `false` when reaching it suffices.
    pub strict: bool,
    pub quantity: Quantity,
}

impl Threshold {
    pub fn is_met(&self, edges: usize, colors: usize) -> bool {
        let x = match self.quantity {
            Quantity::EdgesPlusColors => (edges + colors) as u64,
            Quantity::Colors => colors as u64,
        };
        if self.strict { x > self.value } else { x >= self.value }
    }

    /// Least color count meeting the threshold for a host with `edges` edges.
    pub fn min_colors(&self, edges: usize) -> u64 {
        let need = self.value + u64::from(self.strict);
        match self.quantity {
            Quantity::EdgesPlusColors => need.saturating_sub(edges as u64),
            Quantity::Colors => need,
        }
    }
}

/// A bound statement with its parameters. Parameters a statement does not use
/// are ignored: `m` counts disjoint copies, `k` is the clique order (or the
/// number of edge-disjoint triangles for [`BoundId::EdgeDisjointTriangles`]).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundFormula {
    pub id: BoundId,
    pub n: usize,
    pub m: usize,
    pub k: usize,
}

impl BoundFormula {
    pub fn new(id: BoundId, n: usize, m: usize, k: usize) -> Self {
        Self { id, n, m, k }
    }

    /// Exact threshold, or an error outside the formula's domain.
    pub fn threshold(&self) -> Result<Threshold> {
        let Self { id, n, m, k } = *self;
        let c2 = |x: usize| binomial(x as u64, 2);
        let need = |ok: bool, what: &str| {
            if ok { Ok(()) } else { Err(Error::params(format!("{id}: {what} (n = {n}, m = {m}, k = {k})"))) }
        };
        let sum = |value| Threshold { value, strict: false, quantity: Quantity::EdgesPlusColors };
        match id {
            BoundId::RainbowTriangle => {
                need(n >= 1, "needs n >= 1")?;
                Ok(sum(c2(n + 1)))
            }
            BoundId::RainbowClique => {
                need(k >= 4 && n >= k, "needs n >= k >= 4")?;
                Ok(sum(c2(n) + turan_edges(n, k - 2)? + 2))
            }
            BoundId::RainbowCliqueAntiRamsey => {
                need(k >= 3 && n >= k, "needs n >= k >= 3")?;
                Ok(sum(c2(n) + anti_ramsey_rb(n, k)?))
            }
            BoundId::DisjointRainbowCliques => {
                need(k >= 3 && m >= 1 && n >= k * m, "needs k >= 3, m >= 1, n >= km")?;
                Ok(sum(disjoint_cliques_threshold(k, m, n)?))
            }
            BoundId::CompleteHostColors => {
                need(m >= 1 && n >= 1, "needs n, m >= 1")?;
                Ok(Threshold {
                    value: (m * n) as u64 - binomial(m as u64 + 1, 2),
                    strict: true,
                    quantity: Quantity::Colors,
                })
            }
            BoundId::ProperTrianglePacking => {
                need(m >= 1 && n >= 1, "needs n, m >= 1")?;
                Ok(Threshold {
                    value: c2(n) + (m * n) as u64 - binomial(m as u64 + 1, 2),
                    strict: true,
                    quantity: Quantity::EdgesPlusColors,
                })
            }
            BoundId::EdgeDisjointTriangles => {
                need(k >= 1 && n >= 1, "needs n, k >= 1")?;
                Ok(sum(c2(n + 1) + 3 * k as u64 - 3))
            }
            BoundId::RefutedVertexDisjoint => {
                need(m >= 1 && n >= 1, "needs n, m >= 1")?;
                Ok(sum(c2(n + 1) + 6 * m as u64 - 6))
            }
        }
    }

    /// Whether `(n, m, k)` lies in the range where the statement is asserted.
    pub fn in_stated_range(&self) -> bool {
        let Self { id, n, m, k } = *self;
        match id {
            BoundId::RainbowTriangle => n >= 1,
            BoundId::RainbowClique => k >= 4 && n >= k,
            BoundId::RainbowCliqueAntiRamsey => k >= 3 && n >= k,
            BoundId::DisjointRainbowCliques => k >= 3 && m >= 1 && n >= k * m,
            BoundId::CompleteHostColors => m >= 1 && n >= 9 * m + 8,
            BoundId::ProperTrianglePacking => m >= 1 && n >= 5 * m + 2,
            BoundId::EdgeDisjointTriangles => k >= 1 && n >= 1,
            BoundId::RefutedVertexDisjoint => m >= 1 && n >= 5 * m,
        }
    }

    /// Whether the statement only speaks about complete host graphs.
    pub fn requires_complete_host(&self) -> bool {
        self.id == BoundId::CompleteHostColors
    }

    pub fn conclusion(&self) -> Conclusion {
        match self.id {
            BoundId::RainbowTriangle => Conclusion::DisjointRainbowCliques { k: 3, count: 1 },
            BoundId::RainbowClique | BoundId::RainbowCliqueAntiRamsey => {
                Conclusion::DisjointRainbowCliques { k: self.k, count: 1 }
            }
            BoundId::DisjointRainbowCliques => Conclusion::DisjointRainbowCliques { k: self.k, count: self.m },
            BoundId::CompleteHostColors | BoundId::ProperTrianglePacking | BoundId::RefutedVertexDisjoint => {
                Conclusion::DisjointRainbowCliques { k: 3, count: self.m }
            }
            BoundId::EdgeDisjointTriangles => Conclusion::EdgeDisjointRainbowTriangles { count: self.k },
        }
    }
}

/// `C(N, 2) + rb(N, k) + k(m-1)(2n-1) - k^2 (m-1)^2` with `N = n - k(m-1)`.
pub fn disjoint_cliques_threshold(k: usize, m: usize, n: usize) -> Result<u64> {
    if k < 3 || m < 1 || n < k * m {
        return Err(Error::params(format!("needs k >= 3, m >= 1, n >= km, got k = {k}, m = {m}, n = {n}")));
    }
    let removed = k * (m - 1);
    let rest = n - removed;
    let base = binomial(rest as u64, 2) + anti_ramsey_rb(rest, k)?;
    let (k, a, n) = (k as i128, (m - 1) as i128, n as i128);
    let total = base as i128 + k * a * (2 * n - 1) - k * k * a * a;
    Ok(u64::try_from(total).expect("threshold is positive for n >= km"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn turan_examples() {
        assert_eq!(turan_edges(6, 2).unwrap(), 9);
        assert_eq!(turan_edges(5, 3).unwrap(), 8);
        for n in 1..12 {
            assert_eq!(turan_edges(n, n).unwrap(), binomial(n as u64, 2));
            assert_eq!(turan_edges(n, 1).unwrap(), 0);
        }
        assert!(turan_edges(3, 4).is_err());
        assert!(turan_edges(3, 0).is_err());
    }

    #[test]
    fn turan_matches_brute_force_partition_count() {
        // Count cross-part pairs directly from an explicit balanced assignment.
        for n in 1..15 {
            for k in 1..=n {
                let part = |v: usize| v % k;
                let brute = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| part(u) != part(v)).count();
                assert_eq!(turan_edges(n, k).unwrap(), brute as u64, "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn anti_ramsey_examples() {
        assert_eq!(anti_ramsey_rb(7, 3).unwrap(), 7);
        assert_eq!(anti_ramsey_rb(9, 4).unwrap(), 22);
        assert_eq!(anti_ramsey_rb(4, 4).unwrap(), 6);
        assert!(anti_ramsey_rb(5, 2).is_err());
        assert!(anti_ramsey_rb(3, 4).is_err());
    }

    #[test]
    fn threshold_examples() {
        let t = BoundFormula::new(BoundId::RainbowTriangle, 5, 1, 3).threshold().unwrap();
        assert_eq!((t.value, t.strict), (15, false));
        let t = BoundFormula::new(BoundId::DisjointRainbowCliques, 10, 2, 3).threshold().unwrap();
        assert_eq!(t.value, 21 + 7 + 57 - 9);
        assert_eq!(t.value, 76);
        let t = BoundFormula::new(BoundId::ProperTrianglePacking, 10, 2, 3).threshold().unwrap();
        assert_eq!((t.value, t.strict, t.quantity), (62, true, Quantity::EdgesPlusColors));
        let t = BoundFormula::new(BoundId::CompleteHostColors, 26, 2, 3).threshold().unwrap();
        assert_eq!((t.value, t.strict, t.quantity), (49, true, Quantity::Colors));
        let t = BoundFormula::new(BoundId::RainbowClique, 6, 1, 4).threshold().unwrap();
        assert_eq!(t.value, 26);
        let t = BoundFormula::new(BoundId::RefutedVertexDisjoint, 10, 2, 3).threshold().unwrap();
        assert_eq!(t.value, 61);
        let t = BoundFormula::new(BoundId::EdgeDisjointTriangles, 10, 1, 2).threshold().unwrap();
        assert_eq!(t.value, 58);
        assert!(BoundFormula::new(BoundId::RainbowClique, 6, 1, 3).threshold().is_err());
    }

    #[test]
    fn packing_bound_reduces_to_triangle_bound_at_m1() {
        for n in 1..40 {
            let a = BoundFormula::new(BoundId::ProperTrianglePacking, n, 1, 3).threshold().unwrap();
            let b = BoundFormula::new(BoundId::RainbowTriangle, n, 1, 3).threshold().unwrap();
            assert_eq!(a.value + 1, b.value);
            for e in 0..60 {
                for c in 0..60 {
                    assert_eq!(a.is_met(e, c), b.is_met(e, c));
                }
            }
        }
    }

    #[test]
    fn clique_removal_recurrence() {
        for k in 3..7 {
            for m in 2..6 {
                for n in k * m..k * m + 20 {
                    let f = disjoint_cliques_threshold(k, m, n).unwrap();
                    let g = disjoint_cliques_threshold(k, m - 1, n - k).unwrap();
                    assert_eq!(f - g, (2 * k * (n - k) + k * (k - 1)) as u64);
                }
            }
        }
    }

    #[test]
    fn min_colors_inverts_is_met() {
        let t = BoundFormula::new(BoundId::ProperTrianglePacking, 12, 2, 3).threshold().unwrap();
        let c = t.min_colors(60) as usize;
        assert!(t.is_met(60, c));
        assert!(!t.is_met(60, c - 1));
        let t = BoundFormula::new(BoundId::CompleteHostColors, 26, 2, 3).threshold().unwrap();
        assert_eq!(t.min_colors(325), 50);
    }

    #[test]
    fn ids_round_trip_through_strings_and_serde() {
        for id in BoundId::ALL {
            assert_eq!(id.as_str().parse::<BoundId>().unwrap(), id);
            assert_eq!(serde_json::to_string(&id).unwrap(), format!("\"{id}\""));
        }
    }

    #[test]
    fn stated_ranges() {
        assert!(!BoundFormula::new(BoundId::CompleteHostColors, 25, 2, 3).in_stated_range());
        assert!(BoundFormula::new(BoundId::CompleteHostColors, 26, 2, 3).in_stated_range());
        assert!(BoundFormula::new(BoundId::ProperTrianglePacking, 12, 2, 3).in_stated_range());
        assert!(!BoundFormula::new(BoundId::ProperTrianglePacking, 11, 2, 3).in_stated_range());
    }
}
