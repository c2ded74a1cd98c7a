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

//! Graph families for batch verification.

use std::collections::BTreeSet;
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    build_complete, build_complete_bipartite, build_cycle, build_tree_from_pruefer, is_connected, is_forest, max_degree,
    Graph, VertexId,
};
use crate::io::read_graph;

/// All labeled trees on `n >= 2` vertices, in Prüfer order.
pub fn labeled_trees(n: usize) -> Result<Vec<Graph>> {
    if n < 2 {
        return Err(Error::InvalidParameter("trees need n >= 2".into()));
    }
    if n == 2 {
        return Ok(vec![build_tree_from_pruefer(&[])?]);
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    (0..total)
        .map(|mut code| {
            let seq: Vec<usize> = (0..len)
                .map(|_| {
                    let d = code % n;
                    code /= n;
                    d
                })
                .collect::<Vec<_>>()
                .into_iter()
                .rev()
                .collect();
            build_tree_from_pruefer(&seq)
        })
        .collect()
}

/// Canonical string of a tree rooted at `root` (AHU encoding).
fn ahu(g: &Graph, v: VertexId, parent: Option<VertexId>) -> String {
    let mut kids: Vec<String> = g.neighbors(v).filter(|&w| Some(w) != parent).map(|w| ahu(g, w, Some(v))).collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// Isomorphism-invariant code of a tree: the smallest AHU encoding over
/// its centers.
pub fn tree_code(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut layer: Vec<VertexId> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for w in g.neighbors(v) {
                if degree[w] > 1 {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
            degree[v] = 0;
        }
        layer = next;
    }
    layer.iter().map(|&c| ahu(g, c, None)).min().unwrap_or_default()
}

/// One representative per isomorphism class of trees on `n` vertices: the
/// first labeled tree of each class in Prüfer order.
pub fn nonisomorphic_trees(n: usize) -> Result<Vec<Graph>> {
    let mut seen = BTreeSet::new();
    Ok(labeled_trees(n)?.into_iter().filter(|t| seen.insert(tree_code(t))).collect())
}

/// Every labeled spanning subgraph of `K_n`, in order of the edge-subset
/// bit mask.
fn spanning_subgraphs(n: usize) -> Result<Vec<Graph>> {
    let all: Vec<(VertexId, VertexId)> = build_complete(n)?.edges().to_vec();
    if all.len() > 20 {
        return Err(Error::InvalidParameter("labeled enumeration limited to n <= 6".into()));
    }
    (0u32..1 << all.len())
        .map(|mask| {
            let edges: Vec<(VertexId, VertexId)> =
                all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            Graph::from_edges(n, edges)
        })
        .collect()
}

/// Connected labeled graphs on `n` vertices with at least one edge.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(spanning_subgraphs(n)?.into_iter().filter(|g| g.edge_count() > 0 && is_connected(g)).collect())
}

/// Labeled forests on `n` vertices with at least one edge.
pub fn labeled_forests(n: usize) -> Result<Vec<Graph>> {
    Ok(spanning_subgraphs(n)?.into_iter().filter(|g| g.edge_count() > 0 && is_forest(g)).collect())
}

/// Random simple `d`-regular graph on `n` vertices by the pairing model with
/// rejection.
pub fn random_regular(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Result<Graph> {
    if d >= n || (n * d) % 2 == 1 {
        return Err(Error::InvalidParameter(format!("no {d}-regular graph on {n} vertices")));
    }
    for _ in 0..10_000 {
        let mut points: Vec<VertexId> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        points.shuffle(rng);
        let mut edges = BTreeSet::new();
        let ok = points.chunks(2).all(|p| {
            let (u, v) = (p[0].min(p[1]), p[0].max(p[1]));
            u != v && edges.insert((u, v))
        });
        if ok {
            return Graph::from_edges(n, edges.into_iter().collect::<Vec<_>>());
        }
    }
    Err(Error::Internal("pairing model did not produce a simple graph".into()))
}

/// A family of graphs for counterexample hunting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum Family {
    /// Non-isomorphic trees with `2..=max_n` vertices.
    Trees { max_n: usize },
    /// Cycles `C_3..=C_max_n`.
    Cycles { max_n: usize },
    /// `K_3..=K_max_n`.
    Complete { max_n: usize },
    /// `K_{2,2}..=K_{max_n,max_n}`.
    CompleteBipartite { max_n: usize },
    /// `count` random `d`-regular graphs on `n` vertices.
    RandomRegular { n: usize, d: usize, count: usize, seed: u64 },
    /// One graph read from a file.
    FromFile { path: PathBuf },
}

/// A graph with a display name.
#[derive(Debug, Clone)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
}

impl Family {
    pub fn generate(&self) -> Result<Vec<NamedGraph>> {
        let named = |name: String, graph: Graph| NamedGraph { name, graph };
        Ok(match self {
            Family::Trees { max_n } => {
                let mut out = Vec::new();
                for n in 2..=*max_n {
                    for (i, t) in nonisomorphic_trees(n)?.into_iter().enumerate() {
                        out.push(named(format!("tree{n}.{i}"), t));
                    }
                }
                out
            }
            Family::Cycles { max_n } => (3..=*max_n).map(|n| Ok(named(format!("C{n}"), build_cycle(n)?))).collect::<Result<_>>()?,
            Family::Complete { max_n } => {
                (3..=*max_n).map(|n| Ok(named(format!("K{n}"), build_complete(n)?))).collect::<Result<_>>()?
            }
            Family::CompleteBipartite { max_n } => (2..=*max_n)
                .map(|n| Ok(named(format!("K{n},{n}"), build_complete_bipartite(n, n)?)))
                .collect::<Result<_>>()?,
            Family::RandomRegular { n, d, count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                (0..*count)
                    .map(|i| Ok(named(format!("regular{d}.{n}.{i}"), random_regular(*n, *d, &mut rng)?)))
                    .collect::<Result<_>>()?
            }
            Family::FromFile { path } => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))?;
                vec![named(path.display().to_string(), read_graph(&text)?)]
            }
        })
    }
}

/// Default `k` for a graph in the conjecture harness: the largest number of
/// precolored edges the known results guarantee extendable with `χ'` colors
/// for the family (trees `Δ - 1`, even cycles 1, odd cycles 2, `K_{2n}`
/// `n - 1`, `K_{2n-1}` `n`, `K_{n,n}` `n - 1`), and 1 otherwise.
pub fn default_k(g: &Graph) -> usize {
    use crate::graph::{balanced_complete_bipartite_order, is_complete, is_cycle_graph, is_tree};
    let n = g.vertex_count();
    if is_tree(g) {
        return max_degree(g).saturating_sub(1);
    }
    if is_cycle_graph(g) && n != 4 {
        return if n.is_multiple_of(2) { 1 } else { 2 };
    }
    if let Some(m) = balanced_complete_bipartite_order(g) {
        return m - 1;
    }
    if is_complete(g) && n >= 3 {
        return if n.is_multiple_of(2) { n / 2 - 1 } else { n.div_ceil(2) };
    }
    1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(labeled_trees(5).unwrap().len(), 125);
        let sizes: Vec<usize> = (2..=8).map(|n| nonisomorphic_trees(n).unwrap().len()).collect();
        assert_eq!(sizes, vec![1, 1, 2, 3, 6, 11, 23]);
        // Connected labeled graphs on 4 and 5 vertices.
        assert_eq!(connected_graphs(4).unwrap().len(), 38);
        assert_eq!(connected_graphs(5).unwrap().len(), 728);
        // Labeled forests on 4 vertices, excluding the empty one.
        assert_eq!(labeled_forests(4).unwrap().len(), 37);
    }

    #[test]
    fn random_regular_is_regular() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = random_regular(10, 3, &mut rng).unwrap();
        assert!(crate::graph::is_regular(&g) && max_degree(&g) == 3);
    }

    #[test]
    fn default_k_values() {
        assert_eq!(default_k(&build_cycle(5).unwrap()), 2);
        assert_eq!(default_k(&build_cycle(6).unwrap()), 1);
        assert_eq!(default_k(&build_cycle(4).unwrap()), 1);
        assert_eq!(default_k(&build_complete(4).unwrap()), 1);
        assert_eq!(default_k(&build_complete(5).unwrap()), 3);
        assert_eq!(default_k(&build_complete_bipartite(3, 3).unwrap()), 2);
    }
}
