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

//! Prisms over trees with `Δ + 1` colors.

use crate::coloring::{Color, ColorSet, PartialEdgeColoring};
use crate::error::{Error, Result};
use crate::graph::{is_tree, max_degree, prism, EdgeId, Graph, VertexId};
use crate::oracle::ExtensionOutcome;

use super::plan::{check_instance, choose_matching, edge_list, run_plans, CopyTask, Plan, Prepared, Second, SearchSolver};
use super::{certify, oracle_fallback, ExtensionTrace};

/// Extends a precoloring of at most `Δ` edges of `T□K2` to a proper
/// `(Δ+1)`-edge coloring.
pub fn extend_tree_prism(tree: &Graph, c: &PartialEdgeColoring) -> Result<(ExtensionOutcome, ExtensionTrace)> {
    if !is_tree(tree) {
        return Err(Error::Precondition("base graph is not a tree".into()));
    }
    let delta = max_degree(tree);
    if delta == 0 {
        return Err(Error::Precondition("tree needs an edge".into()));
    }
    let p = prism(tree)?;
    check_instance(&p, c, delta as u32 + 1, delta)?;
    let mut trace = ExtensionTrace::new("tree");
    let mut prep = Prepared::new(&p, c)?;
    let d = delta as u32;
    let n = tree.vertex_count();
    let plans = if prep.m_precolored().is_empty() {
        trace.step("Case 1", "no precolored matching edge");
        if prep.copy_precolored(1).len() > prep.copy_precolored(0).len() {
            prep.swap();
        }
        if prep.copy_precolored(1).is_empty() {
            let first = CopyTask::from_copy(&prep, 0, ColorSet::full(d + 1));
            vec![Plan::new("T1 extended with Δ+1 colors, T2 mirrored, M colored by missing colors", first, Second::Mirror, n)]
        } else {
            let first = CopyTask::from_copy(&prep, 0, ColorSet::full(d));
            let second = CopyTask::from_copy(&prep, 1, ColorSet::full(d));
            vec![Plan::new("T1 and T2 extended with Δ colors, M colored Δ+1", first, Second::Own(second), n).pref_all(d + 1)]
        }
    } else {
        trace.step("Case 2", "some matching edge is precolored");
        if prep.copy_precolored(0).is_empty() {
            prep.swap();
        }
        if prep.copy_precolored(1).is_empty() {
            let first = CopyTask::transferred(&prep, ColorSet::full(d + 1)).unwrap().forbid_m_colors(&prep);
            vec![Plan::new("G1 = T1 + M extended with Δ+1 colors, T2 mirrored", first, Second::Mirror, n)]
        } else {
            both_copies(&prep, d).into_iter().collect()
        }
    };
    match run_plans(&prep, &plans, &SearchSolver, &mut trace)? {
        Some(full) => Ok((certify(c, full, &mut trace)?, trace)),
        None => Ok((oracle_fallback(c, &mut trace)?, trace)),
    }
}

/// Vertices of the component of `T - v` containing `w`.
fn side(tree: &Graph, v: VertexId, w: VertexId) -> Vec<VertexId> {
    let mut seen = vec![false; tree.vertex_count()];
    seen[v] = true;
    seen[w] = true;
    let mut stack = vec![w];
    let mut out = vec![w];
    while let Some(x) = stack.pop() {
        for y in tree.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                out.push(y);
                stack.push(y);
            }
        }
    }
    out
}

/// Case 2 with precolored edges in both copies.
fn both_copies(prep: &Prepared, d: u32) -> Option<Plan> {
    let tree = prep.base();
    let n = tree.vertex_count();
    let v_m: Vec<VertexId> = prep.m_precolored().into_iter().filter(|&v| tree.degree(v) == d as usize).collect();
    let in_vm = |x: VertexId| v_m.contains(&x);
    let clean_side = |v: VertexId, w: VertexId| {
        let s = side(tree, v, w);
        let mut inside = vec![false; n];
        s.iter().for_each(|&x| inside[x] = true);
        s.iter().all(|&x| prep.m_col(x).is_none())
            && (0..tree.edge_count()).all(|be| {
                let (a, b) = tree.endpoints(be);
                !(inside[a] && inside[b]) || (prep.copy_col(0, be).is_none() && prep.copy_col(1, be).is_none())
            })
    };
    let choices = |v: VertexId| -> Vec<EdgeId> {
        tree.incident_edges(v)
            .filter(|&be| {
                let (a, b) = tree.endpoints(be);
                let w = if a == v { b } else { a };
                !in_vm(w) && prep.copy_col(0, be).is_none() && prep.copy_col(1, be).is_none() && clean_side(v, w)
            })
            .collect()
    };
    let m1 = choose_matching(tree, &v_m, &choices)?;
    let fixed_c: Color = 1;
    let mut tasks = [CopyTask::from_copy(prep, 0, ColorSet::full(d)), CopyTask::from_copy(prep, 1, ColorSet::full(d))];
    let mut m_pref = vec![Some(d + 1); n];
    let mut dangling = Vec::new();
    for &be in &m1 {
        for task in tasks.iter_mut() {
            task.fixed[be] = Some(d + 1);
        }
        let (a, b) = tree.endpoints(be);
        let w = if in_vm(a) { b } else { a };
        if prep.m_col(w).is_none() {
            m_pref[w] = Some(fixed_c);
            dangling.push(w);
        }
    }
    for x in 0..n {
        let banned = prep.m_col(x).or_else(|| dangling.contains(&x).then_some(fixed_c));
        if let Some(col) = banned {
            for task in tasks.iter_mut() {
                task.forbid[x] = task.forbid[x].with(col);
            }
        }
    }
    let m_rest: Vec<VertexId> = (0..n).filter(|&x| prep.m_col(x).is_none() && !dangling.contains(&x)).collect();
    let [first, second] = tasks;
    let mut plan = Plan::new("matchings M1, M2 colored Δ+1; G1'', G2'' extended with Δ colors", first, Second::Own(second), n)
        .note("V_M", format!("{v_m:?}"))
        .note("M1", edge_list(tree, m1.iter().copied()))
        .note("fixed color c", fixed_c.to_string())
        .note("M' colored Δ+1", format!("{m_rest:?}"));
    plan.m_pref = m_pref;
    Some(plan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_path, build_star, prism};
    use crate::oracle::{extend_exhaustive, SearchBudget};
    use std::sync::Arc;

    fn run(tree: &Graph, pairs: &[(usize, usize, Color)]) -> (ExtensionOutcome, ExtensionTrace) {
        let p = prism(tree).unwrap();
        let g = Arc::new(p.product.clone());
        let pairs: Vec<(usize, Color)> = pairs.iter().map(|&(u, v, c)| (g.edge_id(u, v).unwrap(), c)).collect();
        let d = max_degree(tree) as u32;
        let c = PartialEdgeColoring::from_pairs(g, d + 1, &pairs).unwrap();
        let out = extend_tree_prism(tree, &c).unwrap();
        let full = out.0.coloring().expect("extended");
        assert!(full.is_proper() && full.is_total() && full.agrees_with(&c).unwrap());
        assert_eq!(out.1.replay(&c).unwrap(), *full);
        assert!(!out.1.fallback, "{:?}", out.1);
        out
    }

    #[test]
    fn k2_base() {
        let k2 = build_path(2).unwrap();
        run(&k2, &[(0, 1, 1)]);
    }

    #[test]
    fn star_with_matching_colored() {
        // K_{1,3}: vertices 0..4, matching edges (v, 4+v).
        let star = build_star(3).unwrap();
        let (_, trace) = run(&star, &[(1, 5, 1), (2, 6, 2), (3, 7, 3)]);
        assert!(trace.steps.iter().any(|s| s.label == "Case 2"));
    }

    #[test]
    fn both_copies_and_matching() {
        // P5 with Δ = 2; the matching edge at the center and one edge in each copy.
        let p5 = build_path(5).unwrap();
        let (_, trace) = run(&p5, &[(2, 7, 1), (0, 1, 2)]);
        assert!(trace.steps.iter().any(|s| s.label == "Case 2"));
        // Star K_{1,3}: precolored matching edge at the center and an edge
        // at the center in each copy.
        let star = build_star(3).unwrap();
        let (_, trace) = run(&star, &[(0, 4, 1), (0, 1, 2), (4, 6, 3)]);
        assert!(trace.steps.iter().any(|s| s.label == "M1"));
    }

    #[test]
    fn every_p4_instance_with_two_edges() {
        let p4 = build_path(4).unwrap();
        let p = prism(&p4).unwrap();
        let g = Arc::new(p.product.clone());
        let m = g.edge_count();
        for a in 0..m {
            for b in a + 1..m {
                for ca in 1..=3 {
                    for cb in 1..=3 {
                        let Ok(c) = PartialEdgeColoring::from_pairs(g.clone(), 3, &[(a, ca), (b, cb)]) else { continue };
                        if !c.is_proper() {
                            continue;
                        }
                        let (out, trace) = extend_tree_prism(&p4, &c).unwrap();
                        assert!(out.is_extended() && !trace.fallback, "{c:?} {trace:?}");
                        assert!(extend_exhaustive(&c, SearchBudget::UNLIMITED).unwrap().is_extended());
                    }
                }
            }
        }
    }
}
