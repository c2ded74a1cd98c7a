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

//! Copy plans: the common skeleton of the prism constructions.

use crate::coloring::{normalize_colors, Color, ColorPermutation, ColorSet, PartialEdgeColoring};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, PrismDecomposition, VertexId};
use crate::oracle::{solve_lists, ListOutcome, SearchBudget};

use super::ExtensionTrace;

const COPY_BUDGET: u64 = 20_000_000;

/// A precoloring of a prism, normalized and oriented.
pub(crate) struct Prepared<'a> {
    pub p: &'a PrismDecomposition,
    input: &'a PartialEdgeColoring,
    /// Normalized and possibly mirrored precoloring.
    pub c: PartialEdgeColoring,
    pi: ColorPermutation,
    swapped: bool,
}

impl<'a> Prepared<'a> {
    pub fn new(p: &'a PrismDecomposition, input: &'a PartialEdgeColoring) -> Result<Self> {
        let r = input.used_colors().len() as u32;
        let (c, pi) = normalize_colors(input, r)?;
        Ok(Prepared { p, input, c, pi, swapped: false })
    }

    pub fn palette(&self) -> u32 {
        self.c.palette()
    }

    pub fn base(&self) -> &Graph {
        &self.p.base
    }

    /// Exchanges the roles of the two copies.
    pub fn swap(&mut self) {
        self.c = mirror(self.p, &self.c);
        self.swapped = !self.swapped;
    }

    pub fn copy_col(&self, copy: usize, be: EdgeId) -> Option<Color> {
        self.c.get(self.p.copy_edge(copy, be))
    }

    pub fn m_col(&self, v: VertexId) -> Option<Color> {
        self.c.get(self.p.matching_edge(v))
    }

    pub fn copy_precolored(&self, copy: usize) -> Vec<EdgeId> {
        (0..self.base().edge_count()).filter(|&be| self.copy_col(copy, be).is_some()).collect()
    }

    pub fn m_precolored(&self) -> Vec<VertexId> {
        (0..self.base().vertex_count()).filter(|&v| self.m_col(v).is_some()).collect()
    }

    /// Colors of precolored edges of copy `copy` at base vertex `v`.
    pub fn copy_colors_at(&self, copy: usize, v: VertexId) -> ColorSet {
        self.base().incident_edges(v).filter_map(|be| self.copy_col(copy, be)).collect()
    }

    /// Colors on precolored matching edges.
    pub fn m_colors(&self) -> ColorSet {
        self.m_precolored().into_iter().filter_map(|v| self.m_col(v)).collect()
    }

    /// Maps a total coloring of the working instance back to the input.
    pub fn finish(&self, total: &PartialEdgeColoring) -> Result<PartialEdgeColoring> {
        let mut out = if self.swapped { mirror(self.p, total) } else { total.clone() };
        out = out.permuted(&self.pi.inverse())?;
        if !out.is_total() || !out.is_proper() || !out.agrees_with(self.input)? {
            return Err(Error::Internal("plan result does not extend the input".into()));
        }
        Ok(out)
    }
}

/// The coloring with the two copies exchanged.
pub(crate) fn mirror(p: &PrismDecomposition, c: &PartialEdgeColoring) -> PartialEdgeColoring {
    let mut colors = vec![None; c.as_slice().len()];
    for (e, col) in c.as_slice().iter().enumerate() {
        colors[p.mirror_edge(e)] = *col;
    }
    PartialEdgeColoring::from_colors(c.graph_arc().clone(), c.palette(), colors).expect("same palette")
}

#[derive(Debug, Clone)]
pub(crate) enum Post {
    /// Recolor a base edge.
    Recolor(EdgeId, Color),
    /// Recolor the edge colored `from` at `vertex`, if any.
    ColorAt { vertex: VertexId, from: Color, to: Color },
}

/// Coloring problem for one copy of the base graph.
#[derive(Debug, Clone)]
pub(crate) struct CopyTask {
    pub fixed: Vec<Option<Color>>,
    pub allowed: ColorSet,
    pub forbid: Vec<ColorSet>,
    pub post: Vec<Post>,
}

impl CopyTask {
    pub fn new(base: &Graph, allowed: ColorSet) -> Self {
        CopyTask {
            fixed: vec![None; base.edge_count()],
            allowed,
            forbid: vec![ColorSet::EMPTY; base.vertex_count()],
            post: Vec::new(),
        }
    }

    /// Task keeping the precolored edges of `copy`.
    pub fn from_copy(prep: &Prepared, copy: usize, allowed: ColorSet) -> Self {
        let mut task = CopyTask::new(prep.base(), allowed);
        for be in prep.copy_precolored(copy) {
            task.fixed[be] = prep.copy_col(copy, be);
        }
        task
    }

    /// Task for a copy that will be mirrored: both copies' precolored edges
    /// are fixed. `None` if they disagree.
    pub fn transferred(prep: &Prepared, allowed: ColorSet) -> Option<Self> {
        let mut task = CopyTask::from_copy(prep, 0, allowed);
        for be in prep.copy_precolored(1) {
            match task.fixed[be] {
                Some(x) if Some(x) != prep.copy_col(1, be) => return None,
                _ => task.fixed[be] = prep.copy_col(1, be),
            }
        }
        Some(task)
    }

    /// Forbids each precolored matching color at its vertex.
    pub fn forbid_m_colors(mut self, prep: &Prepared) -> Self {
        for v in prep.m_precolored() {
            self.forbid[v] = self.forbid[v].with(prep.m_col(v).unwrap());
        }
        self
    }

    fn domains(&self, base: &Graph) -> Vec<ColorSet> {
        base.edges()
            .iter()
            .map(|&(u, v)| self.allowed.difference(self.forbid[u]).difference(self.forbid[v]))
            .collect()
    }

    fn apply_post(&self, base: &Graph, colors: &mut [Color]) {
        for step in &self.post {
            match *step {
                Post::Recolor(be, c) => colors[be] = c,
                Post::ColorAt { vertex, from, to } => {
                    if let Some(be) = base.incident_edges(vertex).find(|&be| colors[be] == from) {
                        colors[be] = to;
                    }
                }
            }
        }
    }
}

/// Solves the coloring of one copy.
pub(crate) trait CopySolver {
    fn solve(&self, base: &Graph, fixed: &[Option<Color>], domains: &[ColorSet]) -> Option<Vec<Color>>;
}

/// Exact list-coloring search.
pub(crate) struct SearchSolver;

impl CopySolver for SearchSolver {
    fn solve(&self, base: &Graph, fixed: &[Option<Color>], domains: &[ColorSet]) -> Option<Vec<Color>> {
        match solve_lists(base, fixed, domains, SearchBudget::nodes(COPY_BUDGET)) {
            Ok(ListOutcome::Found(colors)) => Some(colors),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) enum Second {
    Mirror,
    Own(CopyTask),
}

/// A complete construction: how to color both copies and the matching.
#[derive(Debug, Clone)]
pub(crate) struct Plan {
    pub label: String,
    pub notes: Vec<(String, String)>,
    pub first: CopyTask,
    pub second: Second,
    /// Preferred color of each uncolored matching edge.
    pub m_pref: Vec<Option<Color>>,
    /// Reason the plan's base step is only sketched by the construction.
    pub assisted: Option<String>,
}

impl Plan {
    pub fn new(label: impl Into<String>, first: CopyTask, second: Second, n: usize) -> Self {
        Plan { label: label.into(), notes: Vec::new(), first, second, m_pref: vec![None; n], assisted: None }
    }

    pub fn note(mut self, label: impl Into<String>, detail: impl Into<String>) -> Self {
        self.notes.push((label.into(), detail.into()));
        self
    }

    pub fn pref_all(mut self, c: Color) -> Self {
        self.m_pref.iter_mut().for_each(|p| *p = Some(c));
        self
    }

    pub fn assisted(mut self, why: impl Into<String>) -> Self {
        self.assisted = Some(why.into());
        self
    }
}

fn solve_task(base: &Graph, task: &CopyTask, solver: &dyn CopySolver) -> Option<Vec<Color>> {
    let domains = task.domains(base);
    let mut colors = solver.solve(base, &task.fixed, &domains)?;
    task.apply_post(base, &mut colors);
    Some(colors)
}

/// Executes a plan on the working coloring; `None` if any step fails.
pub(crate) fn execute(prep: &Prepared, plan: &Plan, solver: &dyn CopySolver) -> Option<PartialEdgeColoring> {
    let base = prep.base();
    let first = solve_task(base, &plan.first, solver)?;
    let second = match &plan.second {
        Second::Mirror => first.clone(),
        Second::Own(task) => solve_task(base, task, solver)?,
    };
    let t = prep.palette();
    let mut colors: Vec<Option<Color>> = vec![None; prep.c.as_slice().len()];
    for be in 0..base.edge_count() {
        colors[prep.p.copy_edge(0, be)] = Some(first[be]);
        colors[prep.p.copy_edge(1, be)] = Some(second[be]);
    }
    let at = |copy: &[Color], v: VertexId| -> ColorSet { base.incident_edges(v).map(|be| copy[be]).collect() };
    for v in 0..base.vertex_count() {
        let free = ColorSet::full(t).difference(at(&first, v)).difference(at(&second, v));
        let chosen = match prep.m_col(v) {
            Some(x) => x,
            None => match plan.m_pref[v] {
                Some(x) if free.contains(x) => x,
                _ => free.first()?,
            },
        };
        if !free.contains(chosen) {
            return None;
        }
        colors[prep.p.matching_edge(v)] = Some(chosen);
    }
    let total = PartialEdgeColoring::from_colors(prep.c.graph_arc().clone(), t, colors).ok()?;
    (total.is_proper() && total.agrees_with(&prep.c).ok()?).then_some(total)
}

/// Tries the plans in order and returns the first success mapped back to the
/// input coloring.
pub(crate) fn run_plans(
    prep: &Prepared,
    plans: &[Plan],
    solver: &dyn CopySolver,
    trace: &mut ExtensionTrace,
) -> Result<Option<PartialEdgeColoring>> {
    for plan in plans {
        if let Some(total) = execute(prep, plan, solver) {
            trace.step("plan", plan.label.clone());
            for (l, d) in &plan.notes {
                trace.step(l.clone(), d.clone());
            }
            if let Some(why) = &plan.assisted {
                trace.assisted.push(format!("{}: {}", plan.label, why));
            }
            return prep.finish(&total).map(Some);
        }
        trace.step("plan rejected", plan.label.clone());
    }
    Ok(None)
}

/// Formats base edges for trace entries.
pub(crate) fn edge_list(base: &Graph, edges: impl IntoIterator<Item = EdgeId>) -> String {
    let parts: Vec<String> = edges
        .into_iter()
        .map(|e| {
            let (u, v) = base.endpoints(e);
            format!("{u}-{v}")
        })
        .collect();
    format!("{{{}}}", parts.join(", "))
}

/// Common checks for prism extenders: canonical prism of `base`, palette,
/// properness and a bound on the number of precolored edges.
pub(crate) fn check_instance(p: &PrismDecomposition, c: &PartialEdgeColoring, palette: u32, max_colored: usize) -> Result<()> {
    if c.graph() != &p.product {
        return Err(Error::GraphMismatch);
    }
    if c.palette() != palette {
        return Err(Error::Precondition(format!("palette must be {palette}, got {}", c.palette())));
    }
    c.ensure_proper()?;
    if c.colored_count() > max_colored {
        return Err(Error::Precondition(format!(
            "at most {max_colored} precolored edges allowed, got {}",
            c.colored_count()
        )));
    }
    Ok(())
}

/// Backtracking search for a system of distinct representatives: one edge
/// for each vertex in `targets`, chosen from `choices(v)` in order, such that
/// the chosen edges form a matching together with `pairwise_ok`.
pub(crate) fn choose_matching(
    base: &Graph,
    targets: &[VertexId],
    choices: &dyn Fn(VertexId) -> Vec<EdgeId>,
) -> Option<Vec<EdgeId>> {
    fn go(
        base: &Graph,
        targets: &[VertexId],
        choices: &dyn Fn(VertexId) -> Vec<EdgeId>,
        used: &mut Vec<bool>,
        chosen: &mut Vec<EdgeId>,
    ) -> bool {
        let Some(&v) = targets.get(chosen.len()) else { return true };
        // An edge chosen earlier may already cover v.
        if used[v] {
            chosen.push(usize::MAX);
            if go(base, targets, choices, used, chosen) {
                return true;
            }
            chosen.pop();
            return false;
        }
        for e in choices(v) {
            let (a, b) = base.endpoints(e);
            if used[a] || used[b] {
                continue;
            }
            used[a] = true;
            used[b] = true;
            chosen.push(e);
            if go(base, targets, choices, used, chosen) {
                return true;
            }
            chosen.pop();
            used[a] = false;
            used[b] = false;
        }
        false
    }
    let mut used = vec![false; base.vertex_count()];
    let mut chosen = Vec::new();
    go(base, targets, choices, &mut used, &mut chosen).then(|| chosen.into_iter().filter(|&e| e != usize::MAX).collect())
}

/// Both copies colored independently avoiding `r`, precolored matching
/// colors kept off their vertices; uncolored matching edges prefer `r`.
pub(crate) fn independent(prep: &Prepared, r: Color) -> Plan {
    let allowed = ColorSet::full(prep.palette()).without(r);
    let first = CopyTask::from_copy(prep, 0, allowed).forbid_m_colors(prep);
    let second = CopyTask::from_copy(prep, 1, allowed).forbid_m_colors(prep);
    Plan::new(format!("copies colored independently without color {r}"), first, Second::Own(second), prep.base().vertex_count())
        .pref_all(r)
}

/// One copy colored with all precolored copy edges transferred to it,
/// avoiding `removed` apart from edges precolored with it, then mirrored.
pub(crate) fn mirrored(prep: &Prepared, removed: Option<Color>) -> Option<Plan> {
    let full = ColorSet::full(prep.palette());
    let allowed = removed.map_or(full, |c| full.without(c));
    let first = CopyTask::transferred(prep, allowed)?.forbid_m_colors(prep);
    let label = match removed {
        Some(c) => format!("color {c} removed, copy colored with the rest and mirrored"),
        None => "copy colored with the full palette and mirrored".to_string(),
    };
    Some(Plan::new(label, first, Second::Mirror, prep.base().vertex_count()))
}

/// Matching of uncolored copy edges covering the vertices whose matching
/// edge is precolored with a color other than `r`. Each chosen edge takes the
/// color of the matching edge it covers, the copies are colored avoiding `r`,
/// and the chosen edges are recolored `r` afterwards.
pub(crate) fn temp_matching(prep: &Prepared, r: Color, mirror: bool) -> Option<Plan> {
    let base = prep.base();
    let cover: Vec<VertexId> = prep.m_precolored().into_iter().filter(|&v| prep.m_col(v) != Some(r)).collect();
    if cover.is_empty() {
        return None;
    }
    let at_both = |v: VertexId| prep.copy_colors_at(0, v).union(prep.copy_colors_at(1, v));
    let choices = |v: VertexId| -> Vec<EdgeId> {
        let x = prep.m_col(v).unwrap();
        base.incident_edges(v)
            .filter(|&be| {
                let (a, b) = base.endpoints(be);
                let w = if a == v { b } else { a };
                prep.copy_col(0, be).is_none()
                    && prep.copy_col(1, be).is_none()
                    && prep.m_col(w).is_none_or(|y| y == x)
                    && !at_both(w).contains(x)
                    && !at_both(w).contains(r)
                    && !at_both(v).contains(r)
            })
            .collect()
    };
    let m1 = choose_matching(base, &cover, &choices)?;
    let allowed = ColorSet::full(prep.palette()).without(r);
    let build = |mut task: CopyTask| {
        for &be in &m1 {
            let (a, b) = base.endpoints(be);
            let x = prep.m_col(a).or(prep.m_col(b)).unwrap();
            task.fixed[be] = Some(x);
            task.post.push(Post::Recolor(be, r));
        }
        task.forbid_m_colors(prep)
    };
    let (first, second) = if mirror {
        (build(CopyTask::transferred(prep, allowed)?), Second::Mirror)
    } else {
        (
            build(CopyTask::from_copy(prep, 0, allowed)),
            Second::Own(build(CopyTask::from_copy(prep, 1, allowed))),
        )
    };
    let label = format!(
        "matching {} with temporary colors, recolored {r}{}",
        if mirror { "M1" } else { "M1, M2" },
        if mirror { ", copy mirrored" } else { "" }
    );
    Some(Plan::new(label, first, second, base.vertex_count()).note("M1", edge_list(base, m1.iter().copied())))
}

/// Plans in the order the case analysis tries them: color removal for a
/// single matching color, matchings recolored with the reserved color `2n`
/// or with a matching color, then copy colorings avoiding matching colors.
pub(crate) fn complete_candidates(prep: &Prepared, t: Color, why: &str) -> Vec<Plan> {
    let mirror = prep.copy_precolored(1).is_empty();
    let m_colors = prep.m_colors();
    let mut plans = Vec::new();
    if m_colors.len() == 1 {
        let x = m_colors.first().unwrap();
        plans.extend(mirrored(prep, Some(x)));
        plans.push(independent(prep, x));
    }
    plans.extend(temp_matching(prep, t, mirror));
    if mirror {
        plans.extend(temp_matching(prep, t, false));
    }
    for x in m_colors.iter() {
        plans.extend(temp_matching(prep, x, mirror));
        if mirror {
            plans.extend(temp_matching(prep, x, false));
        }
    }
    for x in prep.c.used_colors().iter() {
        if m_colors.len() == 1 && m_colors.contains(x) {
            continue;
        }
        plans.extend(mirrored(prep, Some(x)).map(|p| p.assisted(why)));
    }
    plans.extend(mirrored(prep, Some(t)).map(|p| p.assisted(why)));
    plans.extend(mirrored(prep, None).map(|p| p.assisted(why)));
    for r in (1..=t).rev() {
        plans.push(independent(prep, r).assisted(why));
    }
    plans
}

/// Copy colorings avoiding matching colors: one copy mirrored without a
/// color, or both copies with one color reserved for the matching.
pub(crate) fn fallback_candidates(prep: &Prepared, why: &str) -> Vec<Plan> {
    let t = prep.palette();
    let mut plans: Vec<Plan> = (1..=t).rev().filter_map(|x| mirrored(prep, Some(x))).collect();
    plans.extend(mirrored(prep, None));
    plans.extend((1..=t).rev().map(|r| independent(prep, r)));
    plans.into_iter().map(|p| p.assisted(why)).collect()
}
