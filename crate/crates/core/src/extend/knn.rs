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

//! Prisms over `K_{n,n}` with `n + 1` colors.

use std::sync::Arc;

use crate::characterize::{ah_bipartite_condition, Condition};
use crate::coloring::{Color, ColorSet, PartialEdgeColoring};
use crate::error::{Error, Result};
use crate::graph::{build_complete_bipartite, prism, Graph, VertexId};
use crate::oracle::{solve_lists, ExtensionOutcome, ListOutcome, SearchBudget};

use super::cycle::extend_cycle_prism;
use super::plan::{
    check_instance, independent, run_plans, temp_matching, CopySolver, CopyTask, Plan, Post, Prepared, SearchSolver, Second,
};
use super::{certify, oracle_fallback, ExtensionTrace};

/// Colors `K_{n,n}` inside `K_{n+1,n+1}` with `n + 1` colors, so that every
/// vertex misses exactly the color of its edge to the added part.
struct SupergraphSolver {
    n: usize,
}

impl CopySolver for SupergraphSolver {
    fn solve(&self, base: &Graph, fixed: &[Option<Color>], domains: &[ColorSet]) -> Option<Vec<Color>> {
        let n = self.n;
        let big = build_complete_bipartite(n + 1, n + 1).ok()?;
        let lift = |v: VertexId| if v < n { v } else { v + 1 };
        let map: Vec<usize> = base.edges().iter().map(|&(u, v)| big.edge_id(lift(u), lift(v)).unwrap()).collect();
        let mut big_fixed = vec![None; big.edge_count()];
        let mut big_dom = vec![ColorSet::full(n as u32 + 1); big.edge_count()];
        for (e, &f) in map.iter().enumerate() {
            big_fixed[f] = fixed[e];
            big_dom[f] = domains[e];
        }
        match solve_lists(&big, &big_fixed, &big_dom, SearchBudget::nodes(20_000_000)) {
            Ok(ListOutcome::Found(colors)) => Some(map.iter().map(|&f| colors[f]).collect()),
            _ => None,
        }
    }
}

/// Extends a precoloring of at most `n` edges of `K_{n,n}□K2` (canonical
/// labeling of `K_{n,n}`, parts `0..n` and `n..2n`) to `n + 1` colors.
pub fn extend_knn_prism(n: usize, c: &PartialEdgeColoring) -> Result<(ExtensionOutcome, ExtensionTrace)> {
    if n < 2 {
        return Err(Error::Precondition("K_{n,n} prism needs n >= 2".into()));
    }
    let base = build_complete_bipartite(n, n)?;
    if n == 2 {
        let p = prism(&base)?;
        check_instance(&p, c, 3, 2)?;
        let (out, mut trace) = extend_cycle_prism(&base, c)?;
        trace.route = "knn".into();
        trace.step("n = 2", "K_{2,2} is the 4-cycle; even cycle construction");
        return Ok((out, trace));
    }
    let p = prism(&base)?;
    let t = n as u32 + 1;
    check_instance(&p, c, t, n)?;
    let mut trace = ExtensionTrace::new("knn");
    let mut prep = Prepared::new(&p, c)?;
    let nv = base.vertex_count();
    let mut result = None;
    if prep.m_precolored().is_empty() {
        trace.step("Case 1", "no precolored matching edge");
        if prep.copy_precolored(1).len() > prep.copy_precolored(0).len() {
            prep.swap();
        }
        if prep.copy_precolored(0).len() == n {
            trace.step("supergraph", "all precolored edges in one copy; K_{n,n} embedded in K_{n+1,n+1}");
            let first = CopyTask::from_copy(&prep, 0, ColorSet::full(t));
            let plan = Plan::new("copy colored inside K_{n+1,n+1} and mirrored", first, Second::Mirror, nv);
            result = run_plans(&prep, &[plan], &SupergraphSolver { n }, &mut trace)?;
        } else {
            let plan = independent(&prep, t).note("copies", "each copy holds at most n - 1 precolored edges");
            result = run_plans(&prep, &[plan], &SearchSolver, &mut trace)?;
        }
    } else {
        trace.step("Case 2", "some matching edge is precolored");
        if prep.copy_precolored(0).is_empty() {
            prep.swap();
        }
        if !prep.copy_precolored(1).is_empty() {
            trace.step("both copies", "matchings M1, M2 of corresponding edges");
            let plans: Vec<Plan> = temp_matching(&prep, t, false).into_iter().collect();
            result = run_plans(&prep, &plans, &SearchSolver, &mut trace)?;
        } else if let Some(plan) = temp_matching(&prep, t, true) {
            let mut plans = vec![plan.clone()];
            plans.extend(condition_plans(&prep, &plan, n, &mut trace)?);
            result = run_plans(&prep, &plans, &SearchSolver, &mut trace)?;
        }
    }
    match result {
        Some(full) => Ok((certify(c, full, &mut trace)?, trace)),
        None => Ok((oracle_fallback(c, &mut trace)?, trace)),
    }
}

/// The plans used when the precoloring `φ1` of the first copy (with the
/// temporary matching colors) is not extendable with `n` colors.
fn condition_plans(prep: &Prepared, temp: &Plan, n: usize, trace: &mut ExtensionTrace) -> Result<Vec<Plan>> {
    let base = prep.base();
    let t = n as u32 + 1;
    let phi1 = PartialEdgeColoring::from_colors(Arc::new(base.clone()), n as u32, temp.first.fixed.clone())?;
    let report = ah_bipartite_condition(n, &phi1)?;
    trace.step("φ1 condition", format!("{:?}", report.condition));
    if report.condition == Condition::None {
        return Ok(Vec::new());
    }
    let uses = |x: Color| prep.c.as_slice().iter().filter(|&&c| c == Some(x)).count();
    let m1: Vec<usize> = (0..base.edge_count())
        .filter(|&be| temp.first.fixed[be].is_some() && prep.copy_col(0, be).is_none())
        .collect();
    let mut plans = Vec::new();
    // (a), or (b) with a once-used color on the matching: drop that color
    // from one edge of M1 and color the copy without it.
    for &e in &m1 {
        let x = temp.first.fixed[e].unwrap();
        if uses(x) != 1 {
            continue;
        }
        let mut first = CopyTask::transferred(prep, ColorSet::full(t).without(x)).unwrap();
        for &f in &m1 {
            if f != e {
                first.fixed[f] = temp.first.fixed[f];
                first.post.push(Post::Recolor(f, x));
            }
        }
        let label = format!("color {x} removed from e_M1, other M1 edges recolored {x}");
        plans.push(Plan::new(label, first, Second::Mirror, base.vertex_count()).note("e_M1", super::plan::edge_list(base, [e])));
    }
    // (b) with a single color c on the matching: recolor the edges colored c
    // at its vertices to n + 1.
    let m_colors = prep.m_colors();
    if m_colors.len() == 1 {
        let cc = m_colors.first().unwrap();
        let mut first = CopyTask::transferred(prep, ColorSet::full(n as u32)).unwrap();
        for v in prep.m_precolored() {
            first.post.push(Post::ColorAt { vertex: v, from: cc, to: t });
        }
        plans.push(Plan::new(format!("M_c with c = {cc} recolored {t}"), first, Second::Mirror, base.vertex_count()));
    }
    Ok(plans)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(n: usize, pairs: &[(usize, usize, Color)]) -> ExtensionTrace {
        let p = prism(&build_complete_bipartite(n, n).unwrap()).unwrap();
        let g = Arc::new(p.product.clone());
        let pairs: Vec<(usize, Color)> = pairs.iter().map(|&(u, v, c)| (g.edge_id(u, v).unwrap(), c)).collect();
        let c = PartialEdgeColoring::from_pairs(g, n as u32 + 1, &pairs).unwrap();
        let (out, trace) = extend_knn_prism(n, &c).unwrap();
        let full = out.coloring().expect("extended");
        assert!(full.is_total() && full.is_proper() && full.agrees_with(&c).unwrap());
        assert!(!trace.fallback, "{trace:?}");
        trace
    }

    #[test]
    fn examples() {
        run(3, &[]);
        // Three matching edges (v, 6 + v) colored 1, 1, 2.
        run(3, &[(0, 6, 1), (1, 7, 1), (3, 9, 2)]);
        // All three precolored edges in one copy.
        let trace = run(3, &[(0, 3, 1), (1, 4, 2), (2, 5, 3)]);
        assert!(trace.steps.iter().any(|s| s.label == "supergraph"));
        run(2, &[(0, 2, 1), (4, 6, 2)]);
    }

    #[test]
    fn one_copy_forces_condition_handling() {
        // Copy edges 0-3 and 1-3 colored 1 and 2 and the matching edge at 2
        // colored 3: every color is used once.
        run(3, &[(0, 3, 1), (1, 4, 2), (2, 8, 3)]);
        run(3, &[(0, 3, 1), (2, 8, 1), (1, 7, 2)]);
    }
}
