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

//! Prisms over regular graphs with independent precolored edges and
//! `χ'(G) + 1` colors.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::coloring::{Color, ColorSet, PartialEdgeColoring};
use crate::error::{Error, Result};
use crate::graph::{is_regular, is_triangle_free, max_degree, prism, EdgeId, Graph, VertexId};
use crate::oracle::{
    chromatic_index_value, enumerate_precolorings, extend_exhaustive, EnumerationMode, EnumerationOptions, ExtensionOutcome,
    SearchBudget,
};

use super::plan::{
    check_instance, choose_matching, edge_list, run_plans, CopySolver, CopyTask, Plan, Post, Prepared, Second,
};
use super::{certify, oracle_fallback, ExtensionTrace};

/// Extension of precolorings of a base graph with the palette carried by
/// the coloring.
pub trait BaseExtender: Sync {
    fn extend(&self, c: &PartialEdgeColoring) -> Result<ExtensionOutcome>;

    /// Whether every precoloring of at most `k` independent edges of `g` is
    /// known to extend to a `χ'(g)`-edge coloring.
    fn certifies(&self, g: &Graph, k: usize) -> bool;
}

/// Edge list, vertex count and `k`.
type CacheKey = (Vec<(VertexId, VertexId)>, usize, usize);

/// Base extender backed by the exact search; certification is checked
/// exhaustively over independent precolorings (up to color permutation) and
/// cached per graph.
#[derive(Default)]
pub struct OracleBase {
    cache: Mutex<HashMap<CacheKey, bool>>,
}

impl BaseExtender for OracleBase {
    fn extend(&self, c: &PartialEdgeColoring) -> Result<ExtensionOutcome> {
        extend_exhaustive(c, SearchBudget::UNLIMITED)
    }

    fn certifies(&self, g: &Graph, k: usize) -> bool {
        let key = (g.edges().to_vec(), g.vertex_count(), k);
        if let Some(&known) = self.cache.lock().unwrap().get(&key) {
            return known;
        }
        let verdict = certify_independent(g, k).unwrap_or(false);
        self.cache.lock().unwrap().insert(key, verdict);
        verdict
    }
}

fn certify_independent(g: &Graph, k: usize) -> Result<bool> {
    let Some(chi) = chromatic_index_value(g, SearchBudget::UNLIMITED)? else { return Ok(false) };
    let arc = Arc::new(g.clone());
    let filter = |c: &PartialEdgeColoring| c.is_independent();
    for j in 0..=k.min(g.edge_count()) {
        let opts = EnumerationOptions { canonical_colors: true, filter: Some(&filter) };
        for c in enumerate_precolorings(&arc, chi, j, EnumerationMode::Exhaustive, opts)? {
            if !extend_exhaustive(&c, SearchBudget::UNLIMITED)?.is_extended() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether the precoloring fits the hypothesis with `k = |c| - 1`: regular
/// base, independent precolored edges and either a triangle-free base with
/// `k < Δ` or `k < Δ/2`.
pub(crate) fn within_hypothesis(base: &Graph, c: &PartialEdgeColoring) -> Result<bool> {
    let delta = max_degree(base);
    let k = c.colored_count().saturating_sub(1);
    Ok(is_regular(base)
        && delta >= 1
        && c.is_independent()
        && ((is_triangle_free(base) && k < delta) || 2 * k < delta))
}

/// Copy solver delegating to a base extender: the allowed colors are
/// relabeled onto `1..=χ'` and edges fixed with a color outside them are
/// held aside and restored.
struct BaseSolver<'a> {
    ext: &'a dyn BaseExtender,
    chi: u32,
}

impl CopySolver for BaseSolver<'_> {
    fn solve(&self, base: &Graph, fixed: &[Option<Color>], domains: &[ColorSet]) -> Option<Vec<Color>> {
        let allowed = domains.iter().fold(ColorSet::EMPTY, |a, &d| a.union(d));
        if allowed.len() as u32 != self.chi {
            return None;
        }
        let order: Vec<Color> = allowed.iter().collect();
        let to_local = |c: Color| order.iter().position(|&x| x == c).map(|i| i as Color + 1);
        let local: Vec<Option<Color>> = fixed.iter().map(|c| c.and_then(to_local)).collect();
        let pc = PartialEdgeColoring::from_colors(Arc::new(base.clone()), self.chi, local).ok()?;
        if !pc.is_proper() {
            return None;
        }
        let ExtensionOutcome::Extended(full) = self.ext.extend(&pc).ok()? else { return None };
        Some(
            (0..base.edge_count())
                .map(|e| match fixed[e] {
                    Some(c) if !allowed.contains(c) => c,
                    _ => order[full.get(e).unwrap() as usize - 1],
                })
                .collect(),
        )
    }
}

/// Extends a precoloring of at most `k + 1` independent edges of `G□K2` to
/// `χ'(G) + 1` colors, where `G` is regular and `base` certifies that
/// precolorings of at most `k` independent edges of `G` extend.
pub fn extend_regular_independent_prism(
    g: &Graph,
    c: &PartialEdgeColoring,
    base: &dyn BaseExtender,
) -> Result<(ExtensionOutcome, ExtensionTrace)> {
    if !is_regular(g) || max_degree(g) == 0 {
        return Err(Error::Precondition("base graph must be regular with an edge".into()));
    }
    let chi = chromatic_index_value(g, SearchBudget::UNLIMITED)?.ok_or_else(|| Error::Internal("chromatic index undecided".into()))?;
    let p = prism(g)?;
    check_instance(&p, c, chi + 1, usize::MAX)?;
    if !c.is_independent() {
        return Err(Error::Precondition("precolored edges must be independent".into()));
    }
    if !within_hypothesis(g, c)? {
        return Err(Error::Precondition("too many precolored edges for the degree and triangle hypothesis".into()));
    }
    let k = c.colored_count().saturating_sub(1);
    if !base.certifies(g, k) {
        return Err(Error::Precondition(format!("base extender does not certify k = {k}")));
    }
    let t = chi + 1;
    let mut trace = ExtensionTrace::new("regular");
    trace.step("k", k.to_string());
    let mut prep = Prepared::new(&p, c)?;
    if prep.copy_precolored(1).len() > prep.copy_precolored(0).len() {
        prep.swap();
    }
    let nv = g.vertex_count();
    let in_m = !prep.m_precolored().is_empty();
    let c0 = !prep.copy_precolored(0).is_empty();
    let c1 = !prep.copy_precolored(1).is_empty();
    let plan = match (in_m, c0, c1) {
        (false, _, true) => {
            trace.step("Case 1", "both copies precolored, none in M");
            let first = CopyTask::from_copy(&prep, 0, ColorSet::full(chi));
            let second = CopyTask::from_copy(&prep, 1, ColorSet::full(chi));
            Some(Plan::new("copies extended with χ' colors, M colored χ'+1", first, Second::Own(second), nv).pref_all(t))
        }
        (false, _, false) => {
            trace.step("Case 1", "all precolored edges in G1");
            let first = CopyTask::from_copy(&prep, 0, ColorSet::full(t).without(1));
            Some(Plan::new("color 1 removed, G1 extended with 2..χ'+1, color 1 restored, G2 mirrored", first, Second::Mirror, nv))
        }
        (true, true, false) => {
            trace.step("Case 2", "precolored edges in G1 and M");
            case2(&prep, t)
        }
        (true, true, true) => {
            trace.step("Case 3", "precolored edges in G1, G2 and M");
            case3(&prep, chi)
        }
        (true, false, _) => {
            trace.step("Case 4", "all precolored edges in M");
            case4(&prep, t)
        }
    };
    let solver = BaseSolver { ext: base, chi };
    let plans: Vec<Plan> = plan.into_iter().collect();
    match run_plans(&prep, &plans, &solver, &mut trace)? {
        Some(full) => Ok((certify(c, full, &mut trace)?, trace)),
        None => Ok((oracle_fallback(c, &mut trace)?, trace)),
    }
}

/// Matching covering `targets` whose edges are uncolored in both copies and
/// whose far ends meet no precolored edge.
fn select_m1(prep: &Prepared, targets: &[VertexId]) -> Option<Vec<EdgeId>> {
    let g = prep.base();
    let clear = |w: VertexId| {
        prep.m_col(w).is_none() && prep.copy_colors_at(0, w).is_empty() && prep.copy_colors_at(1, w).is_empty()
    };
    let choices = |v: VertexId| -> Vec<EdgeId> {
        g.incident_edges(v)
            .filter(|&be| {
                let (a, b) = g.endpoints(be);
                let w = if a == v { b } else { a };
                prep.copy_col(0, be).is_none() && prep.copy_col(1, be).is_none() && clear(w)
            })
            .collect()
    };
    choose_matching(g, targets, &choices)
}

fn case2(prep: &Prepared, t: Color) -> Option<Plan> {
    let g = prep.base();
    let e_m = prep.m_precolored();
    let m1 = select_m1(prep, &e_m)?;
    let mut first = CopyTask::from_copy(prep, 0, ColorSet::full(t).without(1));
    for &be in &m1 {
        let (a, b) = g.endpoints(be);
        let x = prep.m_col(a).or(prep.m_col(b)).unwrap();
        if x != 1 {
            first.fixed[be] = Some(x);
            first.post.push(Post::Recolor(be, 1));
        }
    }
    Some(
        Plan::new("φ1 = φ on G1 plus M1; color 1 removed, M1 recolored 1, G2 mirrored", first, Second::Mirror, g.vertex_count())
            .note("E_M", format!("{e_m:?}"))
            .note("M1", edge_list(g, m1)),
    )
}

fn case3(prep: &Prepared, chi: Color) -> Option<Plan> {
    let g = prep.base();
    let e_m = prep.m_precolored();
    let m1 = select_m1(prep, &e_m)?;
    let mut tasks = [CopyTask::from_copy(prep, 0, ColorSet::full(chi)), CopyTask::from_copy(prep, 1, ColorSet::full(chi))];
    for &be in &m1 {
        let (a, b) = g.endpoints(be);
        let x = prep.m_col(a).or(prep.m_col(b)).unwrap();
        for task in tasks.iter_mut() {
            task.fixed[be] = Some(x);
            task.post.push(Post::Recolor(be, chi + 1));
        }
    }
    let [first, second] = tasks;
    Some(
        Plan::new("φ1', φ2' extended with χ' colors, M1 and M2 recolored χ'+1", first, Second::Own(second), g.vertex_count())
            .note("E_M", format!("{e_m:?}"))
            .note("M1", edge_list(g, m1)),
    )
}

fn case4(prep: &Prepared, t: Color) -> Option<Plan> {
    let g = prep.base();
    let e1: Vec<VertexId> = prep.m_precolored().into_iter().filter(|&v| prep.m_col(v) != Some(1)).collect();
    let m1 = select_m1(prep, &e1)?;
    let mut first = CopyTask::new(g, ColorSet::full(t).without(1));
    for &be in &m1 {
        let (a, b) = g.endpoints(be);
        first.fixed[be] = prep.m_col(a).or(prep.m_col(b));
        first.post.push(Post::Recolor(be, 1));
    }
    Some(
        Plan::new("M1 colored from E_1, G1 extended with 2..χ'+1, M1 recolored 1, G2 mirrored", first, Second::Mirror, g.vertex_count())
            .note("E_1", format!("{e1:?}"))
            .note("M1", edge_list(g, m1)),
    )
}
