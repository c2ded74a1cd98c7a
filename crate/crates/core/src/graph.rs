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

//! Simple undirected graphs with a canonical edge order.
//!
//! Edges are stored as pairs `(u, v)` with `u < v`, sorted lexicographically.
//! An [`EdgeId`] is the position of an edge in that order, and every
//! tie-breaking rule elsewhere in the crate scans edges in increasing
//! [`EdgeId`] order.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// A simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    // (neighbor, edge id), sorted by neighbor
    adj: Vec<Vec<(VertexId, EdgeId)>>,
}

impl Graph {
    /// Builds a graph from an edge list in any order and orientation.
    ///
    /// Loops and repeated edges are rejected.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<Self> {
        let mut list: Vec<(VertexId, VertexId)> = edges
            .into_iter()
            .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect();
        list.sort_unstable();
        Self::from_sorted_edges(n, list)
    }

    /// Builds a graph from an edge list that is already canonical: every
    /// pair has `u < v` and the list is strictly increasing.
    pub fn from_sorted_edges(n: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self> {
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            if u > v {
                return Err(Error::InvalidGraph(format!("edge ({u},{v}) is not oriented u < v")));
            }
            if v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u},{v}) exceeds vertex count {n}")));
            }
            if i > 0 && edges[i - 1] >= (u, v) {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) is repeated or out of order"
                )));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges, adj })
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    /// `(neighbor, edge)` pairs at `v`, by increasing neighbor.
    pub fn incidences(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adj[v]
    }

    /// Edges incident with `v`, in increasing neighbor order.
    pub fn incident_edges(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.adj[v].iter().map(|&(_, e)| e)
    }

    pub fn edge_id(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        if u >= self.n || v >= self.n {
            return None;
        }
        let list = &self.adj[u];
        list.binary_search_by_key(&v, |&(w, _)| w).ok().map(|i| list[i].1)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edge_id(u, v).is_some()
    }

    /// Whether two distinct edges share an endpoint.
    pub fn adjacent_edges(&self, e: EdgeId, f: EdgeId) -> bool {
        let (a, b) = self.edges[e];
        let (c, d) = self.edges[f];
        e != f && (a == c || a == d || b == c || b == d)
    }

    /// Edges sharing an endpoint with `e`, excluding `e`, in increasing order.
    pub fn edges_adjacent_to(&self, e: EdgeId) -> Vec<EdgeId> {
        let (u, v) = self.edges[e];
        let mut out: Vec<EdgeId> = self
            .incident_edges(u)
            .chain(self.incident_edges(v))
            .filter(|&f| f != e)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut seq: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        seq.sort_unstable_by(|a, b| b.cmp(a));
        seq
    }

    /// Adjacency stays consistent with the edge list.
    pub fn check_invariants(&self) -> bool {
        let mut count = 0;
        for v in 0..self.n {
            for &(w, e) in &self.adj[v] {
                let (a, b) = self.edges[e];
                if !((a == v && b == w) || (a == w && b == v)) {
                    return false;
                }
                count += 1;
            }
            if self.adj[v].windows(2).any(|p| p[0].0 >= p[1].0) {
                return false;
            }
        }
        count == 2 * self.edges.len()
            && self.edges.iter().all(|&(u, v)| u < v && v < self.n)
            && self.edges.windows(2).all(|p| p[0] < p[1])
    }

    /// Spanning subgraph keeping only the listed edges.
    ///
    /// Returns the subgraph and, for each of its edges, the original id.
    pub fn edge_subgraph(&self, keep: &[EdgeId]) -> (Graph, Vec<EdgeId>) {
        let mut ids = keep.to_vec();
        ids.sort_unstable();
        ids.dedup();
        let edges = ids.iter().map(|&e| self.edges[e]).collect();
        let g = Graph::from_sorted_edges(self.n, edges).expect("subset of a canonical edge list");
        (g, ids)
    }

    /// Relabels vertices through `map` (old id -> new id, a permutation).
    pub fn relabel(&self, map: &[VertexId]) -> Result<Graph> {
        if map.len() != self.n {
            return Err(Error::InvalidParameter("relabel map has wrong length".into()));
        }
        Graph::from_edges(self.n, self.edges.iter().map(|&(u, v)| (map[u], map[v])))
    }
}

// ---------------------------------------------------------------------------
// Family builders

/// Path on `n` vertices `0 - 1 - ... - (n-1)`.
pub fn build_path(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::InvalidParameter("path needs n >= 1".into()));
    }
    Graph::from_sorted_edges(n, (1..n).map(|i| (i - 1, i)).collect())
}

/// Cycle `0 - 1 - ... - (n-1) - 0`.
pub fn build_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter("cycle needs n >= 3".into()));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Star `K_{1,n}`: center 0, leaves `1..=n`.
pub fn build_star(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::InvalidParameter("star needs n >= 1".into()));
    }
    Graph::from_sorted_edges(n + 1, (1..=n).map(|i| (0, i)).collect())
}

pub fn build_complete(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::InvalidParameter("complete graph needs n >= 1".into()));
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_sorted_edges(n, edges)
}

/// `K_{m,n}` with parts `0..m` and `m..m+n`.
pub fn build_complete_bipartite(m: usize, n: usize) -> Result<Graph> {
    if m < 1 || n < 1 {
        return Err(Error::InvalidParameter("complete bipartite graph needs m, n >= 1".into()));
    }
    let mut edges = Vec::with_capacity(m * n);
    for u in 0..m {
        for v in m..m + n {
            edges.push((u, v));
        }
    }
    Graph::from_sorted_edges(m + n, edges)
}

/// Hypercube `Q_d`: vertices are `d`-bit words, adjacent when they differ in
/// exactly one bit.
pub fn build_hypercube(d: usize) -> Result<Graph> {
    if d > 20 {
        return Err(Error::InvalidParameter("hypercube dimension above 20".into()));
    }
    let n = 1usize << d;
    let mut edges = Vec::new();
    for u in 0..n {
        for bit in 0..d {
            let v = u ^ (1 << bit);
            if u < v {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Decodes a Prüfer sequence over `0..seq.len()+2` into a labeled tree.
pub fn build_tree_from_pruefer(seq: &[usize]) -> Result<Graph> {
    let n = seq.len() + 2;
    if let Some(&bad) = seq.iter().find(|&&x| x >= n) {
        return Err(Error::InvalidParameter(format!("Prüfer entry {bad} out of range 0..{n}")));
    }
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf always exists");
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(n, edges)
}

// ---------------------------------------------------------------------------
// Products

/// Cartesian product `G□H`; vertex `(u, v)` gets id `u * |V(H)| + v`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph> {
    if g.vertex_count() == 0 || h.vertex_count() == 0 {
        return Err(Error::InvalidParameter("cartesian product of an empty graph".into()));
    }
    let nh = h.vertex_count();
    let id = |u: VertexId, v: VertexId| u * nh + v;
    let mut edges = Vec::with_capacity(g.vertex_count() * h.edge_count() + nh * g.edge_count());
    for u in 0..g.vertex_count() {
        for &(a, b) in h.edges() {
            edges.push((id(u, a), id(u, b)));
        }
    }
    for &(a, b) in g.edges() {
        for v in 0..nh {
            edges.push((id(a, v), id(b, v)));
        }
    }
    Graph::from_edges(g.vertex_count() * nh, edges)
}

/// Which part of a prism an edge belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PrismEdge {
    /// Copy `copy` (0 or 1) of base edge `base`.
    Copy { copy: usize, base: EdgeId },
    /// Matching edge joining the two copies of base vertex `vertex`.
    Matching { vertex: VertexId },
}

/// `G□K2` split into copies `G1`, `G2` and the perfect matching `M`.
///
/// Copy 1 occupies vertices `0..n`, copy 2 occupies `n..2n`, and the
/// matching edge of base vertex `v` joins `v` and `n + v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrismDecomposition {
    pub base: Graph,
    pub product: Graph,
    /// Product edge ids of each copy, indexed by base edge id.
    pub copy_edges: [Vec<EdgeId>; 2],
    /// Product edge id of the matching edge at each base vertex.
    pub matching_edges: Vec<EdgeId>,
    kinds: Vec<PrismEdge>,
}

impl PrismDecomposition {
    pub fn base_vertex_count(&self) -> usize {
        self.base.vertex_count()
    }

    /// Product vertex of base vertex `v` in copy `copy` (0 or 1).
    pub fn vertex(&self, v: VertexId, copy: usize) -> VertexId {
        copy * self.base.vertex_count() + v
    }

    /// Inverse of [`PrismDecomposition::vertex`].
    pub fn base_vertex(&self, p: VertexId) -> (VertexId, usize) {
        let n = self.base.vertex_count();
        (p % n, p / n)
    }

    pub fn kind(&self, e: EdgeId) -> PrismEdge {
        self.kinds[e]
    }

    pub fn copy_edge(&self, copy: usize, base_edge: EdgeId) -> EdgeId {
        self.copy_edges[copy][base_edge]
    }

    pub fn matching_edge(&self, v: VertexId) -> EdgeId {
        self.matching_edges[v]
    }

    /// The edge in the other copy joined to `e` by two matching edges.
    pub fn corresponding(&self, e: EdgeId) -> Option<EdgeId> {
        match self.kinds[e] {
            PrismEdge::Copy { copy, base } => Some(self.copy_edges[1 - copy][base]),
            PrismEdge::Matching { .. } => None,
        }
    }

    /// Image of `e` under the automorphism swapping the two copies.
    pub fn mirror_edge(&self, e: EdgeId) -> EdgeId {
        match self.kinds[e] {
            PrismEdge::Copy { copy, base } => self.copy_edges[1 - copy][base],
            PrismEdge::Matching { .. } => e,
        }
    }

    /// Checks the structural invariants of the decomposition.
    pub fn check_invariants(&self) -> bool {
        let n = self.base.vertex_count();
        let p = &self.product;
        if p.vertex_count() != 2 * n || self.matching_edges.len() != n {
            return false;
        }
        let mut covered = vec![false; 2 * n];
        for (v, &e) in self.matching_edges.iter().enumerate() {
            let (a, b) = p.endpoints(e);
            if (a, b) != (v, n + v) || covered[a] || covered[b] {
                return false;
            }
            covered[a] = true;
            covered[b] = true;
        }
        for copy in 0..2 {
            if self.copy_edges[copy].len() != self.base.edge_count() {
                return false;
            }
            for (be, &pe) in self.copy_edges[copy].iter().enumerate() {
                let (u, v) = self.base.endpoints(be);
                if p.endpoints(pe) != (self.vertex(u, copy), self.vertex(v, copy)) {
                    return false;
                }
            }
        }
        // correspondence: copy edges over the same base edge have endpoints
        // joined by matching edges
        (0..self.base.edge_count()).all(|be| {
            let (a1, b1) = p.endpoints(self.copy_edges[0][be]);
            let (a2, b2) = p.endpoints(self.copy_edges[1][be]);
            p.has_edge(a1, a2) && p.has_edge(b1, b2)
        }) && covered.iter().all(|&c| c)
            && p.edge_count() == 2 * self.base.edge_count() + n
    }
}

/// Builds `g□K2` with the copy/matching labeling of [`PrismDecomposition`].
pub fn prism(g: &Graph) -> Result<PrismDecomposition> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::InvalidParameter("prism over an empty graph".into()));
    }
    let mut edges = Vec::with_capacity(2 * g.edge_count() + n);
    for copy in 0..2 {
        for &(u, v) in g.edges() {
            edges.push((copy * n + u, copy * n + v));
        }
    }
    for v in 0..n {
        edges.push((v, n + v));
    }
    let product = Graph::from_edges(2 * n, edges)?;
    let mut copy_edges = [vec![0; g.edge_count()], vec![0; g.edge_count()]];
    let mut kinds = vec![PrismEdge::Matching { vertex: 0 }; product.edge_count()];
    for copy in 0..2 {
        for (be, &(u, v)) in g.edges().iter().enumerate() {
            let pe = product.edge_id(copy * n + u, copy * n + v).expect("copy edge present");
            copy_edges[copy][be] = pe;
            kinds[pe] = PrismEdge::Copy { copy, base: be };
        }
    }
    let matching_edges: Vec<EdgeId> = (0..n)
        .map(|v| product.edge_id(v, n + v).expect("matching edge present"))
        .collect();
    for (v, &pe) in matching_edges.iter().enumerate() {
        kinds[pe] = PrismEdge::Matching { vertex: v };
    }
    Ok(PrismDecomposition { base: g.clone(), product, copy_edges, matching_edges, kinds })
}

/// Recognizes `product` as a prism in the canonical labeling and returns its
/// decomposition.
pub fn recognize_prism(product: &Graph) -> Option<PrismDecomposition> {
    let total = product.vertex_count();
    if total == 0 || !total.is_multiple_of(2) {
        return None;
    }
    let n = total / 2;
    let mut base_edges = Vec::new();
    for &(u, v) in product.edges() {
        if u < n && v < n {
            base_edges.push((u, v));
        } else if u < n && v == u + n {
        } else if u >= n && v >= n {
            if !product.has_edge(u - n, v - n) {
                return None;
            }
        } else {
            return None;
        }
    }
    let base = Graph::from_sorted_edges(n, base_edges).ok()?;
    let p = prism(&base).ok()?;
    (p.product == *product).then_some(p)
}

// ---------------------------------------------------------------------------
// Predicates

pub fn max_degree(g: &Graph) -> usize {
    (0..g.vertex_count()).map(|v| g.degree(v)).max().unwrap_or(0)
}

pub fn is_regular(g: &Graph) -> bool {
    let d = max_degree(g);
    (0..g.vertex_count()).all(|v| g.degree(v) == d)
}

pub fn is_triangle_free(g: &Graph) -> bool {
    g.edges().iter().all(|&(u, v)| {
        let (a, b) = (g.incidences(u), g.incidences(v));
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    })
}

/// Component index of every vertex, numbered by smallest member.
pub fn components(g: &Graph) -> Vec<usize> {
    let mut comp = vec![usize::MAX; g.vertex_count()];
    let mut next = 0;
    for s in 0..g.vertex_count() {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v) {
                if comp[w] == usize::MAX {
                    comp[w] = next;
                    queue.push_back(w);
                }
            }
        }
        next += 1;
    }
    comp
}

pub fn is_connected(g: &Graph) -> bool {
    components(g).iter().all(|&c| c == 0)
}

pub fn is_forest(g: &Graph) -> bool {
    let count = components(g).iter().copied().max().map_or(0, |c| c + 1);
    g.edge_count() + count == g.vertex_count()
}

pub fn is_tree(g: &Graph) -> bool {
    g.vertex_count() > 0 && is_connected(g) && g.edge_count() + 1 == g.vertex_count()
}

pub fn is_cycle_graph(g: &Graph) -> bool {
    g.vertex_count() >= 3
        && is_connected(g)
        && (0..g.vertex_count()).all(|v| g.degree(v) == 2)
}

pub fn is_path_graph(g: &Graph) -> bool {
    is_tree(g) && max_degree(g) <= 2
}

pub fn is_complete(g: &Graph) -> bool {
    let n = g.vertex_count();
    n > 0 && g.edge_count() == n * (n - 1) / 2
}

/// Two-coloring of the vertices, if the graph is bipartite.
pub fn bipartition(g: &Graph) -> Option<Vec<bool>> {
    let mut side: Vec<Option<bool>> = vec![None; g.vertex_count()];
    for s in 0..g.vertex_count() {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let sv = side[v].expect("visited");
            for w in g.neighbors(v) {
                match side[w] {
                    None => {
                        side[w] = Some(!sv);
                        queue.push_back(w);
                    }
                    Some(sw) if sw == sv => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(side.into_iter().map(|s| s.expect("all visited")).collect())
}

/// `Some(n)` when `g` is `K_{n,n}` (in any labeling).
pub fn balanced_complete_bipartite_order(g: &Graph) -> Option<usize> {
    let side = bipartition(g)?;
    let left = side.iter().filter(|&&s| !s).count();
    let right = side.len() - left;
    (left == right && left > 0 && g.edge_count() == left * right).then_some(left)
}

/// Whether `g` is a star `K_{1,n}` with `n >= 1`.
pub fn is_star(g: &Graph) -> bool {
    let n = g.vertex_count();
    n >= 2 && is_tree(g) && (0..n).any(|v| g.degree(v) == n - 1)
}

/// Shortest-path distance between two edges: the fewest edges on a path from
/// an endpoint of `e` to an endpoint of `f`. Adjacent edges are at distance 0.
pub fn edge_distance(g: &Graph, e: EdgeId, f: EdgeId) -> Result<usize> {
    if e >= g.edge_count() || f >= g.edge_count() {
        return Err(Error::InvalidParameter("edge id out of range".into()));
    }
    if e == f {
        return Err(Error::InvalidParameter("edge distance needs two distinct edges".into()));
    }
    let (a, b) = g.endpoints(e);
    let (c, d) = g.endpoints(f);
    let mut dist = vec![usize::MAX; g.vertex_count()];
    let mut queue = VecDeque::new();
    for s in [a, b] {
        dist[s] = 0;
        queue.push_back(s);
    }
    while let Some(v) = queue.pop_front() {
        if v == c || v == d {
            return Ok(dist[v]);
        }
        for w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    Err(Error::Unreachable)
}

/// Stars and odd cycles: the connected graphs where every partial
/// `χ'(G)`-edge coloring extends.
pub fn always_extendable_class(g: &Graph) -> Result<bool> {
    if g.edge_count() == 0 {
        return Err(Error::Precondition("graph has no edges".into()));
    }
    if !is_connected(g) {
        return Err(Error::Precondition("graph is disconnected".into()));
    }
    Ok(is_star(g) || (is_cycle_graph(g) && g.vertex_count() % 2 == 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_four_edges() {
        let c4 = build_cycle(4).unwrap();
        assert_eq!(c4.vertex_count(), 4);
        assert_eq!(c4.edges(), &[(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert!(c4.check_invariants());
    }

    #[test]
    fn k22_is_a_four_cycle() {
        let k = build_complete_bipartite(2, 2).unwrap();
        assert!(is_cycle_graph(&k));
        assert_eq!(k.edge_count(), 4);
    }

    #[test]
    fn hypercube_three() {
        let q = build_hypercube(3).unwrap();
        assert_eq!((q.vertex_count(), q.edge_count()), (8, 12));
        assert!(is_regular(&q) && max_degree(&q) == 3);
        assert_eq!(build_hypercube(0).unwrap().vertex_count(), 1);
    }

    #[test]
    fn builder_ranges() {
        assert!(build_path(0).is_err());
        assert!(build_cycle(2).is_err());
        assert!(build_star(0).is_err());
        assert!(build_complete(0).is_err());
        assert!(build_complete_bipartite(0, 3).is_err());
        assert!(build_tree_from_pruefer(&[7]).is_err());
    }

    #[test]
    fn pruefer_decoding() {
        // sequence [3,3,3] -> star centred at 3 on 5 vertices
        let t = build_tree_from_pruefer(&[3, 3, 3]).unwrap();
        assert!(is_tree(&t));
        assert_eq!(t.degree(3), 4);
        let p = build_tree_from_pruefer(&[]).unwrap();
        assert_eq!(p.edges(), &[(0, 1)]);
    }

    #[test]
    fn rejects_bad_edge_lists() {
        assert!(Graph::from_sorted_edges(3, vec![(0, 0)]).is_err());
        assert!(Graph::from_sorted_edges(3, vec![(1, 0)]).is_err());
        assert!(Graph::from_sorted_edges(3, vec![(0, 1), (0, 1)]).is_err());
        assert!(Graph::from_sorted_edges(3, vec![(1, 2), (0, 1)]).is_err());
        assert!(Graph::from_sorted_edges(2, vec![(0, 2)]).is_err());
        assert!(Graph::from_edges(3, [(1, 0), (0, 1)]).is_err());
    }

    #[test]
    fn products() {
        let k2 = build_path(2).unwrap();
        let q2 = cartesian_product(&k2, &k2).unwrap();
        assert!(is_cycle_graph(&q2));
        let p3 = build_path(3).unwrap();
        let pp = cartesian_product(&p3, &k2).unwrap();
        assert_eq!((pp.vertex_count(), pp.edge_count()), (6, 7));
        let c3 = build_cycle(3).unwrap();
        let tri = cartesian_product(&c3, &k2).unwrap();
        assert_eq!((tri.vertex_count(), tri.edge_count()), (6, 9));
        assert!(is_regular(&tri) && max_degree(&tri) == 3);
        assert!(!is_triangle_free(&tri));
    }

    #[test]
    fn prism_counts() {
        let p = prism(&build_path(2).unwrap()).unwrap();
        assert!(is_cycle_graph(&p.product));
        assert_eq!(p.matching_edges.len(), 2);
        assert_eq!(p.copy_edges[0].len(), 1);
        let p5 = prism(&build_cycle(5).unwrap()).unwrap();
        assert_eq!(p5.product.edge_count(), 15);
        assert_eq!(p5.copy_edges[1].len(), 5);
        assert!(p5.check_invariants());
    }

    #[test]
    fn prism_of_q3_is_q4() {
        let p = prism(&build_hypercube(3).unwrap()).unwrap();
        let q4 = build_hypercube(4).unwrap();
        // vertex (v, copy) = copy*8 + v is exactly the 4-bit word with the
        // copy as the top bit
        assert_eq!(p.product, q4);
    }

    #[test]
    fn prism_matches_product_with_k2_first() {
        let k2 = build_path(2).unwrap();
        for g in [build_cycle(5).unwrap(), build_star(3).unwrap(), build_complete(4).unwrap()] {
            let p = prism(&g).unwrap();
            assert_eq!(p.product, cartesian_product(&k2, &g).unwrap());
            // G□K2 in row-major order, relabeled (u, i) -> i*n + u
            let n = g.vertex_count();
            let map: Vec<usize> = (0..2 * n).map(|x| (x % 2) * n + x / 2).collect();
            assert_eq!(p.product, cartesian_product(&g, &k2).unwrap().relabel(&map).unwrap());
            assert_eq!(recognize_prism(&p.product).unwrap().base, g);
        }
        assert!(recognize_prism(&build_cycle(5).unwrap()).is_none());
    }

    #[test]
    fn predicates() {
        assert!(is_triangle_free(&build_cycle(4).unwrap()));
        assert!(!is_triangle_free(&build_complete(4).unwrap()));
        assert_eq!(max_degree(&build_complete_bipartite(3, 3).unwrap()), 3);
        assert!(!is_connected(&Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap()));
        assert!(is_forest(&Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap()));
        assert_eq!(balanced_complete_bipartite_order(&build_cycle(4).unwrap()), Some(2));
        assert_eq!(balanced_complete_bipartite_order(&build_cycle(6).unwrap()), None);
    }

    #[test]
    fn edge_distances() {
        let p4 = build_path(4).unwrap();
        assert_eq!(edge_distance(&p4, 0, 1).unwrap(), 0);
        assert_eq!(edge_distance(&p4, 0, 2).unwrap(), 1);
        let c6 = build_cycle(6).unwrap();
        let e = c6.edge_id(0, 1).unwrap();
        let f = c6.edge_id(3, 4).unwrap();
        assert_eq!(edge_distance(&c6, e, f).unwrap(), 2);
        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(edge_distance(&two, 0, 1), Err(Error::Unreachable));
    }

    #[test]
    fn always_extendable() {
        assert!(always_extendable_class(&build_star(5).unwrap()).unwrap());
        assert!(always_extendable_class(&build_cycle(7).unwrap()).unwrap());
        assert!(!always_extendable_class(&build_path(4).unwrap()).unwrap());
        assert!(!always_extendable_class(&build_cycle(6).unwrap()).unwrap());
        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(always_extendable_class(&two).is_err());
    }
}
