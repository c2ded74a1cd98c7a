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

//! List edge-coloring of paths and cycles.
//!
//! [`list_color_path`] colors a path whose edges have lists of size at least
//! two, except one edge whose list may have size one. [`list_color_cycle`]
//! colors a cycle whose lists all have size at least two and are not all
//! equal. Both are greedy sweeps and never fail under their preconditions.

use crate::coloring::{Color, ColorSet};
use crate::error::{Error, Result};
use crate::graph::{is_cycle_graph, is_path_graph, EdgeId, Graph};

use super::plan::CopySolver;

/// Edges of a path graph from one end to the other.
fn path_order(p: &Graph) -> Vec<EdgeId> {
    let start = (0..p.vertex_count()).find(|&v| p.degree(v) == 1).expect("path has an end");
    walk(p, start, None)
}

/// Edges of a cycle graph in cyclic order starting at edge 0.
fn cycle_order(cy: &Graph) -> Vec<EdgeId> {
    let (u, _) = cy.endpoints(0);
    walk(cy, u, Some(0))
}

fn walk(g: &Graph, start: usize, first: Option<EdgeId>) -> Vec<EdgeId> {
    let mut order = Vec::with_capacity(g.edge_count());
    let mut at = start;
    let mut next = first.or_else(|| g.incident_edges(start).next());
    while let Some(e) = next {
        if order.len() == g.edge_count() {
            break;
        }
        order.push(e);
        let (a, b) = g.endpoints(e);
        at = if a == at { b } else { a };
        next = g.incident_edges(at).find(|&f| f != e && !order.contains(&f));
    }
    order
}

/// Sweeps along `order` starting at position `from`, in both directions.
/// `seed` is the color of `order[from]`; every other edge takes the smallest
/// color of its list different from its already colored neighbour.
fn sweep(order: &[EdgeId], lists: &[ColorSet], from: usize, seed: Color, out: &mut [Color]) -> bool {
    out[order[from]] = seed;
    for dir in [1isize, -1] {
        let mut prev = seed;
        let mut i = from as isize + dir;
        while i >= 0 && (i as usize) < order.len() {
            let e = order[i as usize];
            match lists[e].without(prev).first() {
                Some(c) => {
                    out[e] = c;
                    prev = c;
                }
                None => return false,
            }
            i += dir;
        }
    }
    true
}

/// Colors the path `p` from the lists, indexed by edge id.
pub fn list_color_path(p: &Graph, lists: &[ColorSet]) -> Result<Vec<Color>> {
    if !is_path_graph(p) || p.edge_count() == 0 {
        return Err(Error::Precondition("graph is not a path with at least one edge".into()));
    }
    if lists.len() != p.edge_count() {
        return Err(Error::InvalidParameter("one list per edge required".into()));
    }
    let short: Vec<EdgeId> = (0..lists.len()).filter(|&e| lists[e].len() < 2).collect();
    if short.len() > 1 || short.iter().any(|&e| lists[e].is_empty()) {
        return Err(Error::Precondition("all lists but one need two colors, and that one needs a color".into()));
    }
    let order = path_order(p);
    let from = short.first().map_or(0, |&e| order.iter().position(|&f| f == e).unwrap());
    let mut out = vec![0; lists.len()];
    if !sweep(&order, lists, from, lists[order[from]].first().unwrap(), &mut out) {
        return Err(Error::Internal("path sweep failed".into()));
    }
    Ok(out)
}

/// Colors the cycle `cy` from the lists, indexed by edge id.
pub fn list_color_cycle(cy: &Graph, lists: &[ColorSet]) -> Result<Vec<Color>> {
    if !is_cycle_graph(cy) {
        return Err(Error::Precondition("graph is not a cycle".into()));
    }
    if lists.len() != cy.edge_count() {
        return Err(Error::InvalidParameter("one list per edge required".into()));
    }
    if lists.iter().any(|l| l.len() < 2) {
        return Err(Error::Precondition("every list needs at least two colors".into()));
    }
    if lists.iter().all(|l| *l == lists[0]) {
        return Err(Error::Precondition("lists must not all be equal".into()));
    }
    let mut order = cycle_order(cy);
    let len = order.len();
    // Find consecutive e, f with a color of e missing from f's list.
    let (i, x) = match (0..len).find_map(|i| {
        let (e, f) = (order[i], order[(i + 1) % len]);
        lists[e].difference(lists[f]).first().map(|x| (i, x))
    }) {
        Some(found) => found,
        None => {
            order.reverse();
            (0..len)
                .find_map(|i| {
                    let (e, f) = (order[i], order[(i + 1) % len]);
                    lists[e].difference(lists[f]).first().map(|x| (i, x))
                })
                .expect("unequal lists differ somewhere")
        }
    };
    // Color e with x, then the path g, ..., f from g = the other neighbour of e.
    let e = order[i];
    let path: Vec<EdgeId> = (1..len).map(|d| order[(i + len - d) % len]).collect();
    let mut reduced = lists.to_vec();
    reduced[path[0]] = lists[path[0]].without(x);
    let mut out = vec![0; len];
    out[e] = x;
    let seed = reduced[path[0]].first().ok_or_else(|| Error::Internal("cycle reduction emptied a list".into()))?;
    if !sweep(&path, &reduced, 0, seed, &mut out) {
        return Err(Error::Internal("cycle sweep failed".into()));
    }
    Ok(out)
}

/// Exact coloring of a sequence of edges forming a path, with `closed`
/// requiring the last edge to differ from the first.
fn exact_sequence(lists: &[ColorSet], closed: bool) -> Option<Vec<Color>> {
    let firsts: Vec<Color> = lists.first()?.iter().collect();
    for first in firsts {
        // reach[i] = colors possible at position i given position 0 = first.
        let mut reach = vec![ColorSet::EMPTY; lists.len()];
        reach[0] = ColorSet::single(first);
        for i in 1..lists.len() {
            reach[i] = lists[i].iter().filter(|&c| !reach[i - 1].without(c).is_empty()).collect();
        }
        let last = lists.len() - 1;
        let mut end = reach[last];
        if closed && lists.len() > 1 {
            end = end.without(first);
        }
        let Some(mut c) = end.first() else { continue };
        let mut out = vec![0; lists.len()];
        out[last] = c;
        for i in (0..last).rev() {
            c = reach[i].without(c).first()?;
            out[i] = c;
        }
        return Some(out);
    }
    None
}

/// Copy solver for cycles: list lemmas where they apply, exact dynamic
/// programming elsewhere.
pub(crate) struct CycleSolver;

impl CopySolver for CycleSolver {
    fn solve(&self, cy: &Graph, fixed: &[Option<Color>], domains: &[ColorSet]) -> Option<Vec<Color>> {
        let order = cycle_order(cy);
        let len = order.len();
        for i in 0..len {
            let (e, f) = (order[i], order[(i + 1) % len]);
            if fixed[e].is_some() && fixed[e] == fixed[f] {
                return None;
            }
        }
        let lists: Vec<ColorSet> = (0..cy.edge_count())
            .map(|e| match fixed[e] {
                Some(c) => ColorSet::single(c),
                None => cy
                    .edges_adjacent_to(e)
                    .into_iter()
                    .filter_map(|f| fixed[f])
                    .fold(domains[e], |l, c| l.without(c)),
            })
            .collect();
        let mut out: Vec<Color> = fixed.iter().map(|c| c.unwrap_or(0)).collect();
        let Some(start) = (0..len).find(|&i| fixed[order[i]].is_some()) else {
            if lists.iter().all(|l| l.len() >= 2) && lists.iter().any(|l| *l != lists[0]) {
                return list_color_cycle(cy, &lists).ok();
            }
            let seq: Vec<ColorSet> = order.iter().map(|&e| lists[e]).collect();
            let colors = exact_sequence(&seq, true)?;
            for (k, &e) in order.iter().enumerate() {
                out[e] = colors[k];
            }
            return Some(out);
        };
        // Free runs between fixed edges are paths whose lists already avoid
        // the fixed neighbours.
        let mut k = 1;
        while k <= len {
            let idx = (start + k) % len;
            if fixed[order[idx]].is_some() {
                k += 1;
                continue;
            }
            let mut run = Vec::new();
            while k <= len && fixed[order[(start + k) % len]].is_none() {
                run.push(order[(start + k) % len]);
                k += 1;
            }
            let seq: Vec<ColorSet> = run.iter().map(|&e| lists[e]).collect();
            let short = seq.iter().filter(|l| l.len() < 2).count();
            let colors = if short <= 1 && seq.iter().all(|l| !l.is_empty()) {
                let pos = seq.iter().position(|l| l.len() < 2).unwrap_or(0);
                let mut tmp = vec![0; seq.len()];
                let idx: Vec<usize> = (0..seq.len()).collect();
                sweep(&idx, &seq, pos, seq[pos].first().unwrap(), &mut tmp).then_some(tmp)?
            } else {
                exact_sequence(&seq, false)?
            };
            for (j, &e) in run.iter().enumerate() {
                out[e] = colors[j];
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_cycle, build_path};

    fn sets(v: &[&[Color]]) -> Vec<ColorSet> {
        v.iter().map(|s| s.iter().copied().collect()).collect()
    }

    fn proper_from_lists(g: &Graph, lists: &[ColorSet], colors: &[Color]) -> bool {
        (0..g.edge_count()).all(|e| lists[e].contains(colors[e]) && g.edges_adjacent_to(e).iter().all(|&f| colors[f] != colors[e]))
    }

    #[test]
    fn path_examples() {
        let p3 = build_path(3).unwrap();
        assert_eq!(list_color_path(&p3, &sets(&[&[1], &[1, 2]])).unwrap(), vec![1, 2]);
        let p4 = build_path(4).unwrap();
        assert_eq!(list_color_path(&p4, &sets(&[&[2], &[1, 2], &[1, 2]])).unwrap(), vec![2, 1, 2]);
        let p5 = build_path(5).unwrap();
        assert_eq!(list_color_path(&p5, &sets(&[&[1, 2][..]; 4])).unwrap(), vec![1, 2, 1, 2]);
        assert!(list_color_path(&p4, &sets(&[&[1], &[1], &[1, 2]])).is_err());
    }

    #[test]
    fn cycle_examples() {
        let c3 = build_cycle(3).unwrap();
        let l = sets(&[&[1, 2], &[1, 2], &[1, 3]]);
        assert!(proper_from_lists(&c3, &l, &list_color_cycle(&c3, &l).unwrap()));
        let c4 = build_cycle(4).unwrap();
        assert!(matches!(list_color_cycle(&c4, &sets(&[&[1, 2][..]; 4])), Err(Error::Precondition(_))));
        let c5 = build_cycle(5).unwrap();
        let l = sets(&[&[1, 2], &[1, 2], &[1, 2], &[1, 2], &[2, 3]]);
        assert!(proper_from_lists(&c5, &l, &list_color_cycle(&c5, &l).unwrap()));
    }

    #[test]
    fn solver_is_exact_on_small_cycles() {
        // Compare against brute force for every list assignment over {1,2,3}
        // with one optional fixed edge on C3 and C4.
        for n in [3usize, 4] {
            let cy = build_cycle(n).unwrap();
            let subsets: Vec<ColorSet> = (1u64..8).map(|b| ColorSet::from_bits(b << 1)).collect();
            let mut idx = vec![0usize; n];
            loop {
                let lists: Vec<ColorSet> = idx.iter().map(|&i| subsets[i]).collect();
                for fix in [None, Some(1u32)] {
                    let mut fixed = vec![None; n];
                    fixed[0] = fix;
                    let got = CycleSolver.solve(&cy, &fixed, &lists);
                    let mut exists = false;
                    let total = 3usize.pow(n as u32);
                    for code in 0..total {
                        let cols: Vec<Color> = (0..n).map(|e| (code / 3usize.pow(e as u32) % 3) as Color + 1).collect();
                        let ok_lists = (0..n).all(|e| match fixed[e] {
                            Some(c) => cols[e] == c,
                            None => lists[e].contains(cols[e]),
                        });
                        if ok_lists && (0..n).all(|e| cy.edges_adjacent_to(e).iter().all(|&f| cols[f] != cols[e])) {
                            exists = true;
                            break;
                        }
                    }
                    assert_eq!(got.is_some(), exists, "n={n} lists={lists:?} fixed={fix:?}");
                    if let Some(cols) = got {
                        assert!((0..n).all(|e| cy.edges_adjacent_to(e).iter().all(|&f| cols[f] != cols[e])));
                        assert!((0..n).all(|e| fixed[e].map_or(lists[e].contains(cols[e]), |c| c == cols[e])));
                    }
                }
                let mut i = 0;
                while i < n {
                    idx[i] += 1;
                    if idx[i] < subsets.len() {
                        break;
                    }
                    idx[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
    }
}
