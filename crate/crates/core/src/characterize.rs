// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Exact obstructions to extending precolorings of forests, balanced complete
//! bipartite graphs and complete graphs.
//!
//! Each checker reports the first condition that holds, in a fixed order,
//! together with a witness that [`ConditionReport::recheck`] can verify
//! against the coloring. Within each checker's preconditions a `None` report
//! means the precoloring extends; the tests confirm this against the oracle.

use serde::Serialize;

use crate::coloring::{Color, ColorSet, PartialEdgeColoring};
use crate::error::{Error, Result};
use crate::graph::{
    balanced_complete_bipartite_order, edge_distance, is_complete, is_forest, max_degree, EdgeId,
    Graph, VertexId,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Condition {
    C1,
    C2,
    C3,
    C4,
    #[serde(rename = "AH_A")]
    AhA,
    #[serde(rename = "AH_B")]
    AhB,
    CompleteEvenMatching,
    CompleteOddTriangle,
    /// Two colors whose precolored edges are near-perfect matchings of
    /// `K_{2n-1}` missing the same vertex. Only possible for `K_5` within
    /// `n + 1` precolored edges.
    CompleteOddSharedMissing,
    None,
}

/// Concrete configuration realizing a condition. Edges are endpoint pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    None,
    /// An uncolored edge whose endpoints together see every color.
    BlockedEdge { edge: (VertexId, VertexId), colors_u: Vec<Color>, colors_v: Vec<Color> },
    /// A vertex `u` and a color `c` missing at `u` that appears at the far
    /// end of every uncolored edge at `u`.
    Vertex { vertex: VertexId, color: Color, neighbors: Vec<VertexId> },
    /// Two precolored edges of a maximum degree 2 forest.
    EdgePair { first: (VertexId, VertexId), second: (VertexId, VertexId), distance: usize, colors: (Color, Color) },
    /// `n - 1` matching edges colored `color` and one more colored
    /// `odd_color`.
    Matching { edges: Vec<(VertexId, VertexId)>, color: Color, odd_edge: (VertexId, VertexId), odd_color: Color },
    /// `n - 2` independent edges colored `color` and a rainbow triangle.
    Triangle {
        matching: Vec<(VertexId, VertexId)>,
        color: Option<Color>,
        triangle: [(VertexId, VertexId); 3],
        triangle_colors: [Color; 3],
    },
    /// Two color classes, each of `n - 1` edges, that both miss `vertex`.
    SharedMissing { vertex: VertexId, colors: (Color, Color), edges: Vec<(VertexId, VertexId)> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub condition: Condition,
    pub witness: Witness,
}

impl ConditionReport {
    pub fn none() -> Self {
        ConditionReport { condition: Condition::None, witness: Witness::None }
    }

    pub fn holds(&self) -> bool {
        self.condition != Condition::None
    }

    /// Re-evaluates the reported condition at the witness.
    pub fn recheck(&self, c: &PartialEdgeColoring) -> bool {
        let g = c.graph();
        let edge = |(u, v): (VertexId, VertexId)| g.edge_id(u, v);
        match (&self.condition, &self.witness) {
            (Condition::None, Witness::None) => true,
            (Condition::C1 | Condition::AhA, Witness::BlockedEdge { edge: uv, .. }) => {
                edge(*uv).is_some_and(|e| blocked_edge(c, e))
            }
            (Condition::C2, Witness::Vertex { vertex, color, .. }) => {
                c2_at(c, max_degree(g), *vertex, *color).is_some()
            }
            (Condition::C3, Witness::Vertex { vertex, color, .. }) => {
                c3_at(c, max_degree(g), *vertex, *color).is_some()
            }
            (Condition::AhB, Witness::Vertex { vertex, color, .. }) => ah_b_at(c, *vertex, *color).is_some(),
            (Condition::C4, Witness::EdgePair { first, second, .. }) => match (edge(*first), edge(*second)) {
                (Some(e), Some(f)) => c4_pair(c, e, f).is_some(),
                _ => false,
            },
            (Condition::CompleteEvenMatching, Witness::Matching { .. }) => {
                complete_even_pattern(c).as_ref() == Some(&self.witness)
            }
            (Condition::CompleteOddTriangle, Witness::Triangle { .. }) => {
                complete_odd_pattern(c).as_ref() == Some(&self.witness)
            }
            (Condition::CompleteOddSharedMissing, Witness::SharedMissing { .. }) => {
                shared_missing(c).as_ref() == Some(&self.witness)
            }
            _ => false,
        }
    }
}

fn report(condition: Condition, witness: Witness) -> ConditionReport {
    ConditionReport { condition, witness }
}

/// Uncolored `e = uv` such that the colors at `u` and at `v` together cover
/// the palette.
fn blocked_edge(c: &PartialEdgeColoring, e: EdgeId) -> bool {
    let (u, v) = c.graph().endpoints(e);
    c.get(e).is_none() && c.colors_at(u).union(c.colors_at(v)) == ColorSet::full(c.palette())
}

fn blocked_witness(c: &PartialEdgeColoring, e: EdgeId) -> Witness {
    let (u, v) = c.graph().endpoints(e);
    Witness::BlockedEdge {
        edge: (u, v),
        colors_u: c.colors_at(u).iter().collect(),
        colors_v: c.colors_at(v).iter().collect(),
    }
}

/// Far endpoints of the uncolored edges at `u`.
fn uncolored_neighbors(c: &PartialEdgeColoring, u: VertexId) -> Vec<VertexId> {
    c.graph()
        .incidences(u)
        .iter()
        .filter(|&&(_, e)| c.get(e).is_none())
        .map(|&(w, _)| w)
        .collect()
}

/// Color `col` missing at `u` but present at the far end of every uncolored
/// edge at `u`.
fn sees_color_everywhere(c: &PartialEdgeColoring, u: VertexId, col: Color) -> Option<Vec<VertexId>> {
    if c.colors_at(u).contains(col) {
        return None;
    }
    let far = uncolored_neighbors(c, u);
    far.iter().all(|&w| c.colors_at(w).contains(col)).then_some(far)
}

fn c2_at(c: &PartialEdgeColoring, delta: usize, u: VertexId, col: Color) -> Option<Vec<VertexId>> {
    let g = c.graph();
    let colored = g.incident_edges(u).filter(|&e| c.get(e).is_some()).count();
    if g.degree(u) != delta || colored == 0 || colored == delta {
        return None;
    }
    sees_color_everywhere(c, u, col)
}

fn c3_at(c: &PartialEdgeColoring, delta: usize, u: VertexId, col: Color) -> Option<Vec<VertexId>> {
    let g = c.graph();
    if g.degree(u) != delta || g.incident_edges(u).any(|e| c.get(e).is_some()) {
        return None;
    }
    sees_color_everywhere(c, u, col)
}

fn ah_b_at(c: &PartialEdgeColoring, v: VertexId, col: Color) -> Option<Vec<VertexId>> {
    sees_color_everywhere(c, v, col)
}

/// Two precolored edges at even distance with equal colors, or at odd
/// distance with different colors.
fn c4_pair(c: &PartialEdgeColoring, e: EdgeId, f: EdgeId) -> Option<usize> {
    let (a, b) = (c.get(e)?, c.get(f)?);
    let d = edge_distance(c.graph(), e, f).ok()?;
    ((d % 2 == 0) == (a == b)).then_some(d)
}

fn pair(g: &Graph, e: EdgeId) -> (VertexId, VertexId) {
    g.endpoints(e)
}

fn check_forest_input(c: &PartialEdgeColoring) -> Result<usize> {
    let g = c.graph();
    if !is_forest(g) {
        return Err(Error::Precondition("graph is not a forest".into()));
    }
    let delta = max_degree(g);
    if delta < 2 {
        return Err(Error::Precondition("maximum degree below 2".into()));
    }
    if c.palette() as usize != delta {
        return Err(Error::Precondition(format!("palette {} differs from maximum degree {delta}", c.palette())));
    }
    c.ensure_proper()?;
    if c.colored_count() > delta {
        return Err(Error::Precondition(format!("more than {delta} precolored edges")));
    }
    Ok(delta)
}

/// First witness of one tree condition, scanning edges, vertices and colors
/// in increasing order.
fn tree_witness(c: &PartialEdgeColoring, delta: usize, which: Condition) -> Option<Witness> {
    let g = c.graph();
    match which {
        Condition::C1 => (0..g.edge_count()).find(|&e| blocked_edge(c, e)).map(|e| blocked_witness(c, e)),
        Condition::C2 | Condition::C3 => {
            let check = if which == Condition::C2 { c2_at } else { c3_at };
            (0..g.vertex_count()).find_map(|u| {
                (1..=c.palette()).find_map(|col| {
                    check(c, delta, u, col).map(|neighbors| Witness::Vertex { vertex: u, color: col, neighbors })
                })
            })
        }
        Condition::C4 if delta == 2 => {
            let pre = c.precolored_edges();
            (0..pre.len()).find_map(|i| {
                (i + 1..pre.len()).find_map(|j| {
                    c4_pair(c, pre[i], pre[j]).map(|distance| Witness::EdgePair {
                        first: pair(g, pre[i]),
                        second: pair(g, pre[j]),
                        distance,
                        colors: (c.get(pre[i]).unwrap(), c.get(pre[j]).unwrap()),
                    })
                })
            })
        }
        _ => None,
    }
}

const TREE_ORDER: [Condition; 4] = [Condition::C1, Condition::C2, Condition::C3, Condition::C4];

/// Conditions (C1)–(C4) for a forest whose palette equals its maximum
/// degree `Δ >= 2`, with at most `Δ` precolored edges.
///
/// When several conditions hold the first in the order C1, C2, C3, C4 is
/// reported.
pub fn tree_condition(c: &PartialEdgeColoring) -> Result<ConditionReport> {
    let delta = check_forest_input(c)?;
    Ok(TREE_ORDER
        .iter()
        .find_map(|&cond| tree_witness(c, delta, cond).map(|w| report(cond, w)))
        .unwrap_or_else(ConditionReport::none))
}

/// Every tree condition that holds, each with its first witness.
pub fn all_tree_conditions(c: &PartialEdgeColoring) -> Result<Vec<ConditionReport>> {
    let delta = check_forest_input(c)?;
    Ok(TREE_ORDER
        .iter()
        .filter_map(|&cond| tree_witness(c, delta, cond).map(|w| report(cond, w)))
        .collect())
}

/// Conditions (a) and (b) for `K_{n,n}` with palette `n` and at most `n`
/// precolored edges.
pub fn ah_bipartite_condition(n: usize, c: &PartialEdgeColoring) -> Result<ConditionReport> {
    let g = c.graph();
    if balanced_complete_bipartite_order(g) != Some(n) {
        return Err(Error::Precondition(format!("graph is not K_{{{n},{n}}}")));
    }
    if c.palette() as usize != n {
        return Err(Error::Precondition(format!("palette {} differs from {n}", c.palette())));
    }
    c.ensure_proper()?;
    if c.colored_count() > n {
        return Err(Error::Precondition(format!("more than {n} precolored edges")));
    }
    for e in 0..g.edge_count() {
        if blocked_edge(c, e) {
            return Ok(report(Condition::AhA, blocked_witness(c, e)));
        }
    }
    for v in 0..g.vertex_count() {
        for col in 1..=c.palette() {
            if let Some(neighbors) = ah_b_at(c, v, col) {
                return Ok(report(Condition::AhB, Witness::Vertex { vertex: v, color: col, neighbors }));
            }
        }
    }
    Ok(ConditionReport::none())
}

fn is_matching(g: &Graph, edges: &[EdgeId]) -> bool {
    let mut seen = vec![false; g.vertex_count()];
    for &e in edges {
        let (u, v) = g.endpoints(e);
        if seen[u] || seen[v] {
            return false;
        }
        seen[u] = true;
        seen[v] = true;
    }
    true
}

/// Matching of `n` precolored edges, `n - 1` of one color and one other.
fn complete_even_pattern(c: &PartialEdgeColoring) -> Option<Witness> {
    let g = c.graph();
    let pre = c.precolored_edges();
    let n = g.vertex_count() / 2;
    if pre.len() != n || !is_matching(g, &pre) {
        return None;
    }
    let mut by_color: Vec<(Color, Vec<EdgeId>)> = Vec::new();
    for &e in &pre {
        let col = c.get(e).unwrap();
        match by_color.iter_mut().find(|(k, _)| *k == col) {
            Some((_, list)) => list.push(e),
            None => by_color.push((col, vec![e])),
        }
    }
    if by_color.len() != 2 {
        return None;
    }
    by_color.sort_by_key(|(col, list)| (std::cmp::Reverse(list.len()), *col));
    let (major, ref edges) = by_color[0];
    let (minor, ref odd) = by_color[1];
    if odd.len() != 1 || edges.len() != n - 1 {
        return None;
    }
    Some(Witness::Matching {
        edges: edges.iter().map(|&e| pair(g, e)).collect(),
        color: major,
        odd_edge: pair(g, odd[0]),
        odd_color: minor,
    })
}

/// Rainbow triangle plus `n - 2` independent edges of one further color,
/// disjoint from the triangle, on `K_{2n-1}`.
fn complete_odd_pattern(c: &PartialEdgeColoring) -> Option<Witness> {
    let g = c.graph();
    let pre = c.precolored_edges();
    let n = g.vertex_count().div_ceil(2);
    if n < 3 || pre.len() != n + 1 {
        return None;
    }
    for i in 0..pre.len() {
        for j in i + 1..pre.len() {
            for k in j + 1..pre.len() {
                let tri = [pre[i], pre[j], pre[k]];
                let mut verts: Vec<VertexId> = tri.iter().flat_map(|&e| {
                    let (u, v) = g.endpoints(e);
                    [u, v]
                }).collect();
                verts.sort_unstable();
                verts.dedup();
                if verts.len() != 3 {
                    continue;
                }
                let cols = tri.map(|e| c.get(e).unwrap());
                if cols[0] == cols[1] || cols[1] == cols[2] || cols[0] == cols[2] {
                    continue;
                }
                let rest: Vec<EdgeId> = pre.iter().copied().filter(|e| !tri.contains(e)).collect();
                if !is_matching(g, &rest) {
                    continue;
                }
                let disjoint = rest.iter().all(|&e| {
                    let (u, v) = g.endpoints(e);
                    !verts.contains(&u) && !verts.contains(&v)
                });
                let color = rest.first().map(|&e| c.get(e).unwrap());
                let uniform = rest.iter().all(|&e| c.get(e) == color);
                if disjoint && uniform && color.is_none_or(|x| !cols.contains(&x)) {
                    return Some(Witness::Triangle {
                        matching: rest.iter().map(|&e| pair(g, e)).collect(),
                        color,
                        triangle: tri.map(|e| pair(g, e)),
                        triangle_colors: cols,
                    });
                }
            }
        }
    }
    None
}

/// The exceptional configuration for `K_{2n}` with palette `2n - 1` and at
/// most `n` precolored edges.
pub fn complete_even_condition(n: usize, c: &PartialEdgeColoring) -> Result<ConditionReport> {
    let g = c.graph();
    if n < 2 || g.vertex_count() != 2 * n || !is_complete(g) {
        return Err(Error::Precondition(format!("graph is not K_{}", 2 * n)));
    }
    if c.palette() as usize != 2 * n - 1 {
        return Err(Error::Precondition(format!("palette {} differs from {}", c.palette(), 2 * n - 1)));
    }
    c.ensure_proper()?;
    if c.colored_count() > n {
        return Err(Error::Precondition(format!("more than {n} precolored edges")));
    }
    Ok(match complete_even_pattern(c) {
        Some(w) => report(Condition::CompleteEvenMatching, w),
        None => ConditionReport::none(),
    })
}

/// In a `(2n - 1)`-edge coloring of `K_{2n-1}` every color class is a
/// matching of `n - 1` edges missing one vertex, and distinct colors miss
/// distinct vertices. Returns the first pair of full classes missing the
/// same vertex.
fn shared_missing(c: &PartialEdgeColoring) -> Option<Witness> {
    let g = c.graph();
    let n = g.vertex_count().div_ceil(2);
    let mut missing: Vec<(Color, VertexId)> = Vec::new();
    for color in 1..=c.palette() {
        let class: Vec<EdgeId> = c.colored().filter(|&(_, x)| x == color).map(|(e, _)| e).collect();
        if class.len() != n - 1 {
            continue;
        }
        let vertex = (0..g.vertex_count()).find(|&v| !c.colors_at(v).contains(color))?;
        if let Some(&(first, _)) = missing.iter().find(|&&(_, v)| v == vertex) {
            let edges = c
                .colored()
                .filter(|&(_, x)| x == first || x == color)
                .map(|(e, _)| g.endpoints(e))
                .collect();
            return Some(Witness::SharedMissing { vertex, colors: (first, color), edges });
        }
        missing.push((color, vertex));
    }
    None
}

/// The exceptional configurations for `K_{2n-1}` with palette `2n - 1` and
/// at most `n + 1` precolored edges: the triangle configuration and, for
/// `K_5` only, two full color classes missing the same vertex.
///
/// For `n = 2` the triangle configuration would be a rainbow triangle on
/// `K_3`, which is already a proper total coloring, so no condition is
/// reported.
pub fn complete_odd_condition(n: usize, c: &PartialEdgeColoring) -> Result<ConditionReport> {
    let g = c.graph();
    if n < 2 || g.vertex_count() != 2 * n - 1 || !is_complete(g) {
        return Err(Error::Precondition(format!("graph is not K_{}", 2 * n - 1)));
    }
    if c.palette() as usize != 2 * n - 1 {
        return Err(Error::Precondition(format!("palette {} differs from {}", c.palette(), 2 * n - 1)));
    }
    c.ensure_proper()?;
    if c.colored_count() > n + 1 {
        return Err(Error::Precondition(format!("more than {} precolored edges", n + 1)));
    }
    if let Some(w) = complete_odd_pattern(c) {
        return Ok(report(Condition::CompleteOddTriangle, w));
    }
    Ok(shared_missing(c).map_or_else(ConditionReport::none, |w| report(Condition::CompleteOddSharedMissing, w)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_complete, build_complete_bipartite, build_path};
    use std::sync::Arc;

    fn col(g: &Arc<Graph>, t: u32, pairs: &[((usize, usize), Color)]) -> PartialEdgeColoring {
        let p: Vec<_> = pairs.iter().map(|&((u, v), c)| (g.edge_id(u, v).unwrap(), c)).collect();
        PartialEdgeColoring::from_pairs(g.clone(), t, &p).unwrap()
    }

    #[test]
    fn path_end_edges() {
        let p4 = Arc::new(build_path(4).unwrap());
        let c = col(&p4, 2, &[((0, 1), 1), ((2, 3), 2)]);
        // the middle edge is blocked too, and C1 comes first
        assert_eq!(tree_condition(&c).unwrap().condition, Condition::C1);
        let all = all_tree_conditions(&c).unwrap();
        let c4 = all.iter().find(|r| r.condition == Condition::C4).unwrap();
        assert!(matches!(c4.witness, Witness::EdgePair { distance: 1, .. }));
        assert!(all.iter().all(|r| r.recheck(&c)));
        let single = col(&p4, 2, &[((0, 1), 1)]);
        assert_eq!(tree_condition(&single).unwrap().condition, Condition::None);
    }

    #[test]
    fn spider_c3() {
        // center 0, legs 0-1-4, 0-2-5, 0-3-6
        let g = Arc::new(Graph::from_edges(7, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]).unwrap());
        let c = col(&g, 3, &[((1, 4), 1), ((2, 5), 1), ((3, 6), 1)]);
        let r = tree_condition(&c).unwrap();
        assert_eq!(r.condition, Condition::C3);
        assert_eq!(r.witness, Witness::Vertex { vertex: 0, color: 1, neighbors: vec![1, 2, 3] });
        assert!(r.recheck(&c));
    }

    #[test]
    fn bipartite_conditions() {
        // parts {0,1} and {2,3}; u=0, v=2, u'=1, v'=3
        let k22 = Arc::new(build_complete_bipartite(2, 2).unwrap());
        let c = col(&k22, 2, &[((0, 3), 1), ((1, 2), 2)]);
        let r = ah_bipartite_condition(2, &c).unwrap();
        assert_eq!(r.condition, Condition::AhA);
        assert!(matches!(r.witness, Witness::BlockedEdge { edge: (0, 2), .. }));

        // K33 parts {0,1,2}, {3,4,5}; color 1 blocks both uncolored edges at 0
        let k33 = Arc::new(build_complete_bipartite(3, 3).unwrap());
        let c = col(&k33, 3, &[((1, 3), 1), ((2, 4), 1), ((0, 5), 2)]);
        let r = ah_bipartite_condition(3, &c).unwrap();
        assert_eq!(r.condition, Condition::AhB);
        assert_eq!(r.witness, Witness::Vertex { vertex: 0, color: 1, neighbors: vec![3, 4] });
        assert!(r.recheck(&c));
        let empty = PartialEdgeColoring::empty(k33, 3).unwrap();
        assert!(!ah_bipartite_condition(3, &empty).unwrap().holds());
    }

    #[test]
    fn complete_conditions() {
        let k4 = Arc::new(build_complete(4).unwrap());
        let c = col(&k4, 3, &[((0, 1), 1), ((2, 3), 2)]);
        let r = complete_even_condition(2, &c).unwrap();
        assert_eq!(r.condition, Condition::CompleteEvenMatching);
        assert!(r.recheck(&c));

        let k5 = Arc::new(build_complete(5).unwrap());
        let c = col(&k5, 5, &[((3, 4), 4), ((0, 1), 1), ((1, 2), 2), ((0, 2), 3)]);
        let r = complete_odd_condition(3, &c).unwrap();
        assert_eq!(r.condition, Condition::CompleteOddTriangle);
        assert!(r.recheck(&c));

        let c = col(&k5, 5, &[((0, 3), 2), ((0, 4), 3), ((2, 3), 3), ((2, 4), 2)]);
        let r = complete_odd_condition(3, &c).unwrap();
        assert_eq!(r.condition, Condition::CompleteOddSharedMissing);
        assert!(matches!(r.witness, Witness::SharedMissing { vertex: 1, colors: (2, 3), .. }));
        assert!(r.recheck(&c));

        let k6 = Arc::new(build_complete(6).unwrap());
        let c = col(&k6, 5, &[((0, 1), 1), ((2, 3), 1), ((4, 5), 1)]);
        assert!(!complete_even_condition(3, &c).unwrap().holds());

        let k3 = Arc::new(build_complete(3).unwrap());
        let c = col(&k3, 3, &[((0, 1), 1), ((1, 2), 2), ((0, 2), 3)]);
        assert!(!complete_odd_condition(2, &c).unwrap().holds());
    }

    #[test]
    fn wrong_hosts_rejected() {
        let p4 = Arc::new(build_path(4).unwrap());
        let c = PartialEdgeColoring::empty(p4.clone(), 3).unwrap();
        assert!(tree_condition(&c).is_err());
        assert!(ah_bipartite_condition(2, &c).is_err());
        assert!(complete_even_condition(2, &c).is_err());
    }
}
