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

//! Exact backtracking search for precoloring extension.
//!
//! The core is a list edge coloring solver: every edge is either fixed to a
//! color or carries a set of admissible colors, and the search looks for a
//! proper assignment. Plain extension uses the full palette as every list;
//! the extenders use restricted lists for their base-graph steps.
//!
//! Variable order is fewest remaining colors first, ties broken by edge id.
//! Values are tried in increasing order. Two cheap prunings are applied at
//! every node: an uncolored edge with no remaining color, and a vertex whose
//! uncolored edges together have fewer remaining colors than there are such
//! edges.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coloring::{Color, ColorSet, PartialEdgeColoring, MAX_PALETTE};
use crate::error::{Error, Result};
use crate::graph::{max_degree, EdgeId, Graph};

/// Resource limits for a single search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl SearchBudget {
    pub const UNLIMITED: SearchBudget = SearchBudget { max_nodes: None, time_limit: None };

    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget { max_nodes: Some(max_nodes), time_limit: None }
    }
}

/// Result of an extension attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtensionOutcome {
    /// A total proper coloring agreeing with the input.
    Extended(PartialEdgeColoring),
    /// The search completed without finding an extension.
    NotExtendable,
    /// The budget ran out after expanding `nodes` search nodes.
    Unknown { nodes: u64 },
}

impl ExtensionOutcome {
    pub fn is_extended(&self) -> bool {
        matches!(self, ExtensionOutcome::Extended(_))
    }

    pub fn coloring(&self) -> Option<&PartialEdgeColoring> {
        match self {
            ExtensionOutcome::Extended(c) => Some(c),
            _ => None,
        }
    }

    pub fn verdict(&self) -> Verdict {
        match self {
            ExtensionOutcome::Extended(_) => Verdict::Extended,
            ExtensionOutcome::NotExtendable => Verdict::NotExtendable,
            ExtensionOutcome::Unknown { .. } => Verdict::Unknown,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Extended,
    NotExtendable,
    Unknown,
}

/// Result of [`solve_lists`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ListOutcome {
    /// One color per edge.
    Found(Vec<Color>),
    Infeasible,
    Exhausted { nodes: u64 },
}

struct Search<'a> {
    ends: &'a [(usize, usize)],
    incident: Vec<Vec<EdgeId>>,
    dom: Vec<u64>,
    color: Vec<Color>,
    used: Vec<u64>,
    open_at: Vec<u32>,
    open: usize,
    nodes: u64,
    max_nodes: u64,
    deadline: Option<Instant>,
    aborted: bool,
}

enum Pick {
    Done,
    Dead,
    Edge(EdgeId, u64),
}

impl<'a> Search<'a> {
    /// Returns `None` when the fixed edges already clash.
    fn new(g: &'a Graph, fixed: &[Option<Color>], domains: &[ColorSet], budget: SearchBudget) -> Option<Self> {
        let n = g.vertex_count();
        let m = g.edge_count();
        let mut s = Search {
            ends: g.edges(),
            incident: (0..n).map(|v| g.incident_edges(v).collect()).collect(),
            dom: domains.iter().map(|d| d.bits()).collect(),
            color: vec![0; m],
            used: vec![0; n],
            open_at: vec![0; n],
            open: 0,
            nodes: 0,
            max_nodes: budget.max_nodes.unwrap_or(u64::MAX),
            deadline: budget.time_limit.map(|d| Instant::now() + d),
            aborted: false,
        };
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            match fixed[e] {
                Some(c) => {
                    let bit = 1u64 << c;
                    if (s.used[u] | s.used[v]) & bit != 0 {
                        return None;
                    }
                    s.color[e] = c;
                    s.used[u] |= bit;
                    s.used[v] |= bit;
                }
                None => {
                    s.open += 1;
                    s.open_at[u] += 1;
                    s.open_at[v] += 1;
                }
            }
        }
        Some(s)
    }

    fn avail(&self, e: EdgeId) -> u64 {
        let (u, v) = self.ends[e];
        self.dom[e] & !(self.used[u] | self.used[v])
    }

    fn pick(&self) -> Pick {
        if self.open == 0 {
            return Pick::Done;
        }
        let mut best: Option<(u32, EdgeId, u64)> = None;
        for e in 0..self.color.len() {
            if self.color[e] != 0 {
                continue;
            }
            let a = self.avail(e);
            let k = a.count_ones();
            if k == 0 {
                return Pick::Dead;
            }
            if best.is_none_or(|(bk, _, _)| k < bk) {
                best = Some((k, e, a));
            }
        }
        for (v, edges) in self.incident.iter().enumerate() {
            let k = self.open_at[v];
            if k < 2 {
                continue;
            }
            let mut union = 0u64;
            for &e in edges {
                if self.color[e] == 0 {
                    union |= self.avail(e);
                }
            }
            if union.count_ones() < k {
                return Pick::Dead;
            }
        }
        let (_, e, a) = best.expect("an open edge exists");
        Pick::Edge(e, a)
    }

    fn assign(&mut self, e: EdgeId, c: Color) {
        let (u, v) = self.ends[e];
        self.color[e] = c;
        self.used[u] |= 1 << c;
        self.used[v] |= 1 << c;
        self.open_at[u] -= 1;
        self.open_at[v] -= 1;
        self.open -= 1;
    }

    fn unassign(&mut self, e: EdgeId) {
        let (u, v) = self.ends[e];
        let c = self.color[e];
        self.color[e] = 0;
        self.used[u] &= !(1 << c);
        self.used[v] &= !(1 << c);
        self.open_at[u] += 1;
        self.open_at[v] += 1;
        self.open += 1;
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.aborted = true;
        } else if self.nodes.is_multiple_of(1024) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.aborted = true;
                }
            }
        }
        !self.aborted
    }

    fn find(&mut self) -> bool {
        if !self.tick() {
            return false;
        }
        match self.pick() {
            Pick::Done => true,
            Pick::Dead => false,
            Pick::Edge(e, mut a) => {
                while a != 0 {
                    let c = a.trailing_zeros();
                    a &= a - 1;
                    self.assign(e, c);
                    if self.find() {
                        return true;
                    }
                    self.unassign(e);
                    if self.aborted {
                        return false;
                    }
                }
                false
            }
        }
    }

    fn count(&mut self, cap: u64, acc: &mut u64) {
        if *acc >= cap || !self.tick() {
            return;
        }
        match self.pick() {
            Pick::Done => *acc += 1,
            Pick::Dead => {}
            Pick::Edge(e, mut a) => {
                while a != 0 && *acc < cap && !self.aborted {
                    let c = a.trailing_zeros();
                    a &= a - 1;
                    self.assign(e, c);
                    self.count(cap, acc);
                    self.unassign(e);
                }
            }
        }
    }
}

fn check_lists(g: &Graph, fixed: &[Option<Color>], domains: &[ColorSet]) -> Result<()> {
    if fixed.len() != g.edge_count() || domains.len() != g.edge_count() {
        return Err(Error::InvalidParameter("one entry per edge required".into()));
    }
    if fixed.iter().flatten().any(|&c| c == 0 || c > MAX_PALETTE) {
        return Err(Error::InvalidParameter(format!("fixed colors must lie in 1..={MAX_PALETTE}")));
    }
    Ok(())
}

/// Finds a proper edge coloring in which every fixed edge keeps its color and
/// every other edge takes a color from its list.
///
/// Lists of fixed edges are ignored. Fixed edges that clash make the instance
/// infeasible.
pub fn solve_lists(g: &Graph, fixed: &[Option<Color>], domains: &[ColorSet], budget: SearchBudget) -> Result<ListOutcome> {
    check_lists(g, fixed, domains)?;
    let Some(mut s) = Search::new(g, fixed, domains, budget) else {
        return Ok(ListOutcome::Infeasible);
    };
    Ok(if s.find() {
        ListOutcome::Found(s.color)
    } else if s.aborted {
        ListOutcome::Exhausted { nodes: s.nodes }
    } else {
        ListOutcome::Infeasible
    })
}

/// Number of solutions of a list problem, saturating at `cap`. `None` when
/// the budget runs out first.
pub fn count_lists(g: &Graph, fixed: &[Option<Color>], domains: &[ColorSet], cap: u64, budget: SearchBudget) -> Result<Option<u64>> {
    check_lists(g, fixed, domains)?;
    let Some(mut s) = Search::new(g, fixed, domains, budget) else {
        return Ok(Some(0));
    };
    let mut acc = 0;
    s.count(cap, &mut acc);
    Ok(if s.aborted && acc < cap { None } else { Some(acc.min(cap)) })
}

/// Decides whether `c` extends to a proper coloring with its own palette.
pub fn extend_exhaustive(c: &PartialEdgeColoring, budget: SearchBudget) -> Result<ExtensionOutcome> {
    c.ensure_proper()?;
    let g = c.graph();
    let domains = vec![ColorSet::full(c.palette()); g.edge_count()];
    Ok(match solve_lists(g, c.as_slice(), &domains, budget)? {
        ListOutcome::Found(colors) => {
            let full = PartialEdgeColoring::from_colors(
                c.graph_arc().clone(),
                c.palette(),
                colors.into_iter().map(Some).collect(),
            )?;
            ExtensionOutcome::Extended(full)
        }
        ListOutcome::Infeasible => ExtensionOutcome::NotExtendable,
        ListOutcome::Exhausted { nodes } => ExtensionOutcome::Unknown { nodes },
    })
}

/// Number of total proper extensions of `c`, saturating at `cap`.
pub fn count_extensions(c: &PartialEdgeColoring, cap: u64) -> Result<u64> {
    c.ensure_proper()?;
    let g = c.graph();
    let domains = vec![ColorSet::full(c.palette()); g.edge_count()];
    Ok(count_lists(g, c.as_slice(), &domains, cap, SearchBudget::UNLIMITED)?.expect("unlimited budget"))
}

/// Classification of a graph by chromatic index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChromaticIndex {
    /// A proper `Δ`-edge coloring exists; the witness is kept.
    Class1(PartialEdgeColoring),
    /// No proper `Δ`-edge coloring exists, so `χ' = Δ + 1`.
    Class2,
    Unknown { nodes: u64 },
}

impl ChromaticIndex {
    /// `χ'` given the maximum degree, when decided.
    pub fn value(&self, max_degree: usize) -> Option<u32> {
        match self {
            ChromaticIndex::Class1(_) => Some(max_degree as u32),
            ChromaticIndex::Class2 => Some(max_degree as u32 + 1),
            ChromaticIndex::Unknown { .. } => None,
        }
    }
}

/// Decides whether `g` is Class 1 or Class 2 by exact search.
///
/// The edges at one vertex of maximum degree are fixed to `1..=Δ`, which
/// loses no generality. An edgeless graph is reported as Class 1 with an
/// empty witness over palette 1.
pub fn chromatic_index(g: &Graph, budget: SearchBudget) -> Result<ChromaticIndex> {
    let delta = max_degree(g);
    let arc = std::sync::Arc::new(g.clone());
    if delta == 0 {
        return Ok(ChromaticIndex::Class1(PartialEdgeColoring::empty(arc, 1)?));
    }
    if delta as u32 > MAX_PALETTE {
        return Err(Error::InvalidParameter(format!("maximum degree {delta} exceeds {MAX_PALETTE}")));
    }
    let hub = (0..g.vertex_count()).find(|&v| g.degree(v) == delta).expect("vertex of max degree");
    let mut fixed = vec![None; g.edge_count()];
    for (i, e) in g.incident_edges(hub).enumerate() {
        fixed[e] = Some(i as Color + 1);
    }
    let domains = vec![ColorSet::full(delta as u32); g.edge_count()];
    Ok(match solve_lists(g, &fixed, &domains, budget)? {
        ListOutcome::Found(colors) => ChromaticIndex::Class1(PartialEdgeColoring::from_colors(
            arc,
            delta as u32,
            colors.into_iter().map(Some).collect(),
        )?),
        ListOutcome::Infeasible => ChromaticIndex::Class2,
        ListOutcome::Exhausted { nodes } => ChromaticIndex::Unknown { nodes },
    })
}

/// `χ'(g)`, or `None` when the budget runs out.
pub fn chromatic_index_value(g: &Graph, budget: SearchBudget) -> Result<Option<u32>> {
    Ok(chromatic_index(g, budget)?.value(max_degree(g)))
}

// ---------------------------------------------------------------------------
// Enumeration

/// How [`enumerate_precolorings`] draws instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnumerationMode {
    /// Every candidate in canonical order.
    Exhaustive,
    /// `count` proper instances drawn uniformly (with replacement) from the
    /// candidate index space of the exhaustive order.
    Sample { seed: u64, count: u64 },
}

/// Options for [`enumerate_precolorings`].
#[derive(Clone, Copy, Default)]
pub struct EnumerationOptions<'a> {
    /// Only emit colorings whose color tuple is the first-appearance
    /// representative of its class under color permutations. Exhaustive
    /// mode only.
    pub canonical_colors: bool,
    pub filter: Option<&'a (dyn Fn(&PartialEdgeColoring) -> bool + Sync)>,
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// Number of candidates (proper or not) in the exhaustive order.
pub fn candidate_count(m: usize, t: u32, k: usize) -> u128 {
    binomial(m as u64, k as u64).saturating_mul((t as u128).saturating_pow(k as u32))
}

/// The `rank`-th `k`-subset of `0..m` in lexicographic order.
fn unrank_subset(m: usize, k: usize, mut rank: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut next = 0;
    for i in 0..k {
        loop {
            let with = binomial((m - next - 1) as u64, (k - i - 1) as u64);
            if rank < with {
                out.push(next);
                next += 1;
                break;
            }
            rank -= with;
            next += 1;
        }
    }
    out
}

fn next_subset(sub: &mut [usize], m: usize) -> bool {
    let k = sub.len();
    for i in (0..k).rev() {
        if sub[i] < m - k + i {
            sub[i] += 1;
            for j in i + 1..k {
                sub[j] = sub[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn next_tuple(tuple: &mut [Color], t: Color, canonical: bool) -> bool {
    for i in (0..tuple.len()).rev() {
        let limit = if canonical {
            let prefix_max = tuple[..i].iter().copied().max().unwrap_or(0);
            t.min(prefix_max + 1)
        } else {
            t
        };
        if tuple[i] < limit {
            tuple[i] += 1;
            for j in i + 1..tuple.len() {
                tuple[j] = 1;
            }
            return true;
        }
    }
    false
}

fn tuple_is_proper(g: &Graph, sub: &[EdgeId], tuple: &[Color]) -> bool {
    for i in 0..sub.len() {
        for j in i + 1..sub.len() {
            if tuple[i] == tuple[j] && g.adjacent_edges(sub[i], sub[j]) {
                return false;
            }
        }
    }
    true
}

/// Streams proper precolorings of `g` with exactly `k` colored edges and
/// palette `t`.
///
/// Exhaustive order: edge subsets in lexicographic order, and for each
/// subset the color tuples in lexicographic order.
pub fn enumerate_precolorings<'a>(
    g: &'a std::sync::Arc<Graph>,
    t: u32,
    k: usize,
    mode: EnumerationMode,
    options: EnumerationOptions<'a>,
) -> Result<Box<dyn Iterator<Item = PartialEdgeColoring> + 'a>> {
    let m = g.edge_count();
    if k > m {
        return Err(Error::InvalidParameter(format!("{k} colored edges requested, graph has {m}")));
    }
    if t == 0 || t > MAX_PALETTE {
        return Err(Error::InvalidParameter(format!("palette {t} outside 1..={MAX_PALETTE}")));
    }
    let build = move |sub: &[EdgeId], tuple: &[Color]| {
        let pairs: Vec<_> = sub.iter().copied().zip(tuple.iter().copied()).collect();
        PartialEdgeColoring::from_pairs(g.clone(), t, &pairs).expect("colors in range")
    };
    let accept = move |c: &PartialEdgeColoring| options.filter.is_none_or(|f| f(c));
    match mode {
        EnumerationMode::Exhaustive => {
            let mut sub: Vec<usize> = (0..k).collect();
            let mut tuple: Vec<Color> = vec![1; k];
            let mut started = false;
            let mut finished = false;
            let canonical = options.canonical_colors;
            Ok(Box::new(std::iter::from_fn(move || loop {
                if finished {
                    return None;
                }
                if started && !next_tuple(&mut tuple, t, canonical) {
                    if !next_subset(&mut sub, m) {
                        finished = true;
                        return None;
                    }
                    tuple.iter_mut().for_each(|c| *c = 1);
                }
                started = true;
                if k == 0 {
                    finished = true;
                }
                if tuple_is_proper(g, &sub, &tuple) {
                    let c = build(&sub, &tuple);
                    if accept(&c) {
                        return Some(c);
                    }
                }
            })))
        }
        EnumerationMode::Sample { seed, count } => {
            let total = candidate_count(m, t, k);
            let per_subset = (t as u128).pow(k as u32);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut emitted = 0u64;
            let mut attempts = 0u64;
            let max_attempts = count.saturating_mul(1000).max(10_000);
            Ok(Box::new(std::iter::from_fn(move || {
                while emitted < count && attempts < max_attempts {
                    attempts += 1;
                    let index = rng.gen_range(0..total);
                    let sub = unrank_subset(m, k, index / per_subset);
                    let mut rest = index % per_subset;
                    let mut tuple = vec![0; k];
                    for slot in tuple.iter_mut().rev() {
                        *slot = (rest % t as u128) as Color + 1;
                        rest /= t as u128;
                    }
                    if tuple_is_proper(g, &sub, &tuple) {
                        let c = build(&sub, &tuple);
                        if accept(&c) {
                            emitted += 1;
                            return Some(c);
                        }
                    }
                }
                None
            })))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_complete, build_cycle, build_path, prism};
    use std::sync::Arc;

    #[test]
    fn forced_extension() {
        let p3 = Arc::new(build_path(3).unwrap());
        let c = PartialEdgeColoring::from_pairs(p3, 2, &[(0, 1)]).unwrap();
        let out = extend_exhaustive(&c, SearchBudget::UNLIMITED).unwrap();
        assert_eq!(out.coloring().unwrap().get(1), Some(2));
        assert_eq!(count_extensions(&c, 10).unwrap(), 1);
    }

    #[test]
    fn counts_on_c4() {
        let c4 = Arc::new(build_cycle(4).unwrap());
        let e3 = PartialEdgeColoring::empty(c4.clone(), 3).unwrap();
        assert_eq!(count_extensions(&e3, 1000).unwrap(), 18);
        let e2 = PartialEdgeColoring::empty(c4, 2).unwrap();
        assert_eq!(count_extensions(&e2, 1000).unwrap(), 2);
        assert_eq!(count_extensions(&e3, 5).unwrap(), 5);
    }

    #[test]
    fn k4_matching_two_colors() {
        let k4 = Arc::new(build_complete(4).unwrap());
        let e = k4.edge_id(0, 1).unwrap();
        let f = k4.edge_id(2, 3).unwrap();
        let c = PartialEdgeColoring::from_pairs(k4, 3, &[(e, 1), (f, 2)]).unwrap();
        assert_eq!(extend_exhaustive(&c, SearchBudget::UNLIMITED).unwrap(), ExtensionOutcome::NotExtendable);
    }

    #[test]
    fn c5_prism_corresponding_edges() {
        let p = prism(&build_cycle(5).unwrap()).unwrap();
        let g = Arc::new(p.product.clone());
        let c = PartialEdgeColoring::from_pairs(g, 3, &[(p.copy_edge(0, 0), 1), (p.copy_edge(1, 0), 2)]).unwrap();
        assert_eq!(extend_exhaustive(&c, SearchBudget::UNLIMITED).unwrap(), ExtensionOutcome::NotExtendable);
    }

    #[test]
    fn improper_input_rejected() {
        let p3 = Arc::new(build_path(3).unwrap());
        let c = PartialEdgeColoring::from_pairs(p3, 2, &[(0, 1), (1, 1)]).unwrap();
        assert!(extend_exhaustive(&c, SearchBudget::UNLIMITED).is_err());
    }

    #[test]
    fn budget_exhaustion() {
        let k = Arc::new(build_complete(7).unwrap());
        let c = PartialEdgeColoring::empty(k, 6).unwrap();
        match extend_exhaustive(&c, SearchBudget::nodes(50)).unwrap() {
            ExtensionOutcome::Unknown { nodes } => assert!(nodes > 50),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn chromatic_classes() {
        let b = SearchBudget::UNLIMITED;
        assert!(matches!(chromatic_index(&build_cycle(4).unwrap(), b).unwrap(), ChromaticIndex::Class1(_)));
        assert_eq!(chromatic_index(&build_cycle(5).unwrap(), b).unwrap(), ChromaticIndex::Class2);
        assert!(matches!(chromatic_index(&build_complete(4).unwrap(), b).unwrap(), ChromaticIndex::Class1(_)));
        assert_eq!(chromatic_index(&build_complete(5).unwrap(), b).unwrap(), ChromaticIndex::Class2);
    }

    #[test]
    fn enumeration_counts() {
        let p3 = Arc::new(build_path(3).unwrap());
        let all: Vec<_> = enumerate_precolorings(&p3, 2, 1, EnumerationMode::Exhaustive, Default::default())
            .unwrap()
            .collect();
        assert_eq!(all.len(), 4);

        let c4 = Arc::new(build_cycle(4).unwrap());
        let indep = |c: &PartialEdgeColoring| c.is_independent();
        let opts = EnumerationOptions { canonical_colors: false, filter: Some(&indep) };
        let n = enumerate_precolorings(&c4, 3, 2, EnumerationMode::Exhaustive, opts).unwrap().count();
        assert_eq!(n, 18);

        let canon = EnumerationOptions { canonical_colors: true, filter: None };
        // subsets: 4 adjacent pairs (1 class each: {1,2}) and 2 opposite pairs (2 classes)
        let n = enumerate_precolorings(&c4, 3, 2, EnumerationMode::Exhaustive, canon).unwrap().count();
        assert_eq!(n, 8);

        let empty = enumerate_precolorings(&c4, 3, 0, EnumerationMode::Exhaustive, Default::default())
            .unwrap()
            .count();
        assert_eq!(empty, 1);
        assert!(enumerate_precolorings(&c4, 3, 5, EnumerationMode::Exhaustive, Default::default()).is_err());
    }

    #[test]
    fn sampling_is_deterministic() {
        let g = Arc::new(build_complete(5).unwrap());
        let mode = EnumerationMode::Sample { seed: 42, count: 5 };
        let a: Vec<_> = enumerate_precolorings(&g, 5, 3, mode, Default::default()).unwrap().collect();
        let b: Vec<_> = enumerate_precolorings(&g, 5, 3, mode, Default::default()).unwrap().collect();
        assert_eq!(a.len(), 5);
        assert_eq!(a, b);
        assert!(a.iter().all(|c| c.is_proper() && c.colored_count() == 3));
    }

    #[test]
    fn unranking_matches_iteration() {
        let mut sub: Vec<usize> = (0..3).collect();
        let mut rank = 0u128;
        loop {
            assert_eq!(unrank_subset(6, 3, rank), sub);
            rank += 1;
            if !next_subset(&mut sub, 6) {
                break;
            }
        }
        assert_eq!(rank, binomial(6, 3));
    }
}
