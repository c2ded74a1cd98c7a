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

//! Prisms over cycles: 3 colors for even cycles with at most two precolored
//! edges, 4 colors for odd cycles with at most three.

use crate::coloring::{ColorSet, PartialEdgeColoring};
use crate::error::{Error, Result};
use crate::graph::{build_cycle, is_cycle_graph, prism, Graph};
use crate::oracle::ExtensionOutcome;

use super::lists::CycleSolver;
use super::plan::{check_instance, independent, mirrored, run_plans, CopyTask, Plan, Prepared, Second};
use super::{certify, oracle_fallback, ExtensionTrace};

/// `C_{2n}□K2`, `n >= 2`, canonical cycle labeling.
pub fn extend_even_cycle_prism(n: usize, c: &PartialEdgeColoring) -> Result<(ExtensionOutcome, ExtensionTrace)> {
    if n < 2 {
        return Err(Error::Precondition("even cycle needs n >= 2".into()));
    }
    extend_cycle_prism(&build_cycle(2 * n)?, c)
}

/// `C_{2n+1}□K2`, `n >= 1`, canonical cycle labeling.
pub fn extend_odd_cycle_prism(n: usize, c: &PartialEdgeColoring) -> Result<(ExtensionOutcome, ExtensionTrace)> {
    if n < 1 {
        return Err(Error::Precondition("odd cycle needs n >= 1".into()));
    }
    extend_cycle_prism(&build_cycle(2 * n + 1)?, c)
}

/// Prism over any labeling of a cycle.
pub fn extend_cycle_prism(cy: &Graph, c: &PartialEdgeColoring) -> Result<(ExtensionOutcome, ExtensionTrace)> {
    if !is_cycle_graph(cy) {
        return Err(Error::Precondition("base graph is not a cycle".into()));
    }
    let even = cy.vertex_count().is_multiple_of(2);
    let (palette, bound) = if even { (3, 2) } else { (4, 3) };
    let p = prism(cy)?;
    check_instance(&p, c, palette, bound)?;
    let mut trace = ExtensionTrace::new(if even { "even cycle" } else { "odd cycle" });
    let mut prep = Prepared::new(&p, c)?;
    if prep.copy_precolored(1).len() > prep.copy_precolored(0).len() {
        prep.swap();
    }
    let n = cy.vertex_count();
    let m_count = prep.m_precolored().len();
    let copies = [prep.copy_precolored(0).len(), prep.copy_precolored(1).len()];
    trace.step(
        "case",
        format!("{m_count} precolored matching edges, {} and {} in the copies, {} colors", copies[0], copies[1], prep.c.used_colors().len()),
    );
    if !even && n == 3 {
        trace.step("n = 1", "triangle prism");
    }
    let t = palette;
    let mut plans: Vec<Plan> = Vec::new();
    // One copy carrying every copy constraint, then mirrored: the list of
    // each edge is the palette minus the colors of precolored matching edges
    // at its ends.
    if let Some(plan) = mirrored(&prep, None) {
        plans.push(plan);
    }
    // The same with one color kept for the matching.
    for r in (1..=t).rev() {
        if let Some(plan) = mirrored(&prep, Some(r)) {
            plans.push(plan.pref_all(r));
        }
    }
    // Independent copies, one color reserved for the matching.
    for r in (1..=t).rev() {
        plans.push(independent(&prep, r));
    }
    // Independent copies with the full palette and an explicit list for
    // uncolored matching edges.
    let first = CopyTask::from_copy(&prep, 0, ColorSet::full(t)).forbid_m_colors(&prep);
    let second = CopyTask::from_copy(&prep, 1, ColorSet::full(t)).forbid_m_colors(&prep);
    plans.push(Plan::new("copies colored independently from lists", first, Second::Own(second), n));
    match run_plans(&prep, &plans, &CycleSolver, &mut trace)? {
        Some(full) => Ok((certify(c, full, &mut trace)?, trace)),
        None => Ok((oracle_fallback(c, &mut trace)?, trace)),
    }
}
