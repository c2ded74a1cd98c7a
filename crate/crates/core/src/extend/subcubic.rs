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

//! Prisms over Class 1 graphs of maximum degree 3 with 4 colors.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::coloring::{ColorSet, PartialEdgeColoring};
use crate::error::{Error, Result};
use crate::graph::{max_degree, prism, Graph, VertexId};
use crate::oracle::{
    chromatic_index, enumerate_precolorings, extend_exhaustive, ChromaticIndex, EnumerationMode, EnumerationOptions,
    ExtensionOutcome, SearchBudget,
};

use super::plan::{check_instance, fallback_candidates, independent, mirrored, run_plans, temp_matching, Plan, Prepared, SearchSolver};
use super::{certify, oracle_fallback, ExtensionTrace};

/// How the hypothesis "every precoloring of at most two edges of `G` with
/// three colors extends" is established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Premise {
    /// Checked exhaustively (cached per graph).
    Verify,
    /// Taken from the caller.
    Assume,
}

type PremiseCache = Mutex<HashMap<(usize, Vec<(VertexId, VertexId)>), bool>>;

fn premise_cache() -> &'static PremiseCache {
    static CACHE: OnceLock<PremiseCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `Δ = 3`, Class 1, and every precoloring of at most two edges with three
/// colors extends.
pub(crate) fn premise_holds(g: &Graph) -> bool {
    let key = (g.vertex_count(), g.edges().to_vec());
    if let Some(&v) = premise_cache().lock().unwrap().get(&key) {
        return v;
    }
    let verdict = check_premise(g).unwrap_or(false);
    premise_cache().lock().unwrap().insert(key, verdict);
    verdict
}

fn check_premise(g: &Graph) -> Result<bool> {
    if max_degree(g) != 3 || !matches!(chromatic_index(g, SearchBudget::UNLIMITED)?, ChromaticIndex::Class1(_)) {
        return Ok(false);
    }
    let arc = Arc::new(g.clone());
    for j in 0..=2 {
        let opts = EnumerationOptions { canonical_colors: true, filter: None };
        for c in enumerate_precolorings(&arc, 3, j, EnumerationMode::Exhaustive, opts)? {
            if !extend_exhaustive(&c, SearchBudget::UNLIMITED)?.is_extended() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// For a graph of maximum degree 3 containing a triangle with a vertex `x`
/// of degree 3: the two-edge precoloring with the edge at `x` off the
/// triangle colored 2 and the opposite triangle edge colored 1, palette 3.
/// Such a precoloring does not extend.
pub fn triangle_witness(g: &Graph) -> Option<PartialEdgeColoring> {
    let arc = Arc::new(g.clone());
    for x in 0..g.vertex_count() {
        if g.degree(x) != 3 {
            continue;
        }
        let nb: Vec<VertexId> = g.neighbors(x).collect();
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                let (y, z) = (nb[i], nb[j]);
                let Some(yz) = g.edge_id(y, z) else { continue };
                let w = nb.iter().copied().find(|&w| w != y && w != z).unwrap();
                let xw = g.edge_id(x, w).unwrap();
                return PartialEdgeColoring::from_pairs(arc, 3, &[(xw, 2), (yz, 1)]).ok();
            }
        }
    }
    None
}

/// Extends a precoloring of at most three edges of `G□K2` to 4 colors, for
/// a Class 1 graph `G` with `Δ = 3` in which every precoloring of at most two
/// edges with 3 colors extends.
pub fn extend_subcubic_class1_prism(
    g: &Graph,
    c: &PartialEdgeColoring,
    premise: Premise,
) -> Result<(ExtensionOutcome, ExtensionTrace)> {
    if max_degree(g) != 3 {
        return Err(Error::Precondition("base graph must have maximum degree 3".into()));
    }
    if let Some(w) = triangle_witness(g) {
        let confirmed = !extend_exhaustive(&w, SearchBudget::UNLIMITED)?.is_extended();
        let pairs: Vec<String> = w.colored().map(|(e, col)| format!("{:?}={col}", g.endpoints(e))).collect();
        return Err(Error::Precondition(format!(
            "base graph has a triangle; precoloring {} of the base does not extend{}",
            pairs.join(", "),
            if confirmed { "" } else { " (not confirmed)" }
        )));
    }
    if premise == Premise::Verify && !premise_holds(g) {
        return Err(Error::Precondition("base graph is not Class 1 or has a non-extendable two-edge precoloring".into()));
    }
    let p = prism(g)?;
    check_instance(&p, c, 4, 3)?;
    let mut trace = ExtensionTrace::new("subcubic");
    let mut prep = Prepared::new(&p, c)?;
    if prep.copy_precolored(1).len() > prep.copy_precolored(0).len() {
        prep.swap();
    }
    let t = 4;
    let v_m = prep.m_precolored();
    let m_colors = prep.m_colors();
    let both = !prep.copy_precolored(1).is_empty();
    let once = |x| prep.c.as_slice().iter().filter(|&&y| y == Some(x)).count() == 1;
    let mut plans: Vec<Plan> = Vec::new();
    match v_m.len() {
        0 => {
            trace.step("Case 1", "all precolored edges in the copies");
            if both {
                plans.push(independent(&prep, t));
            } else {
                plans.extend(mirrored(&prep, Some(1)));
            }
        }
        1 => {
            let u = v_m[0];
            let x = prep.m_col(u).unwrap();
            trace.step("Case 2", format!("one precolored matching edge at {u}, color {x}"));
            if once(x) {
                plans.push(independent(&prep, x));
            } else if !both {
                plans.extend(mirrored(&prep, Some(x)));
            } else {
                trace.step("degree of u1", g.degree(u).to_string());
                plans.extend(temp_matching(&prep, t, false));
                if g.degree(u) < 3 {
                    plans.push(independent(&prep, t).assisted("copies colored with the matching color kept off u1 and u2"));
                }
            }
        }
        2 => {
            trace.step("Case 3", "two precolored matching edges");
            if m_colors.len() == 1 {
                plans.extend(mirrored(&prep, m_colors.first()));
            } else {
                for x in m_colors.iter() {
                    plans.extend(temp_matching(&prep, x, true));
                }
                for y in ColorSet::full(t).iter() {
                    plans.extend(mirrored(&prep, Some(y)).map(|p| p.assisted("copy colored avoiding one color with matching colors kept off their ends")));
                }
            }
        }
        _ => {
            trace.step("Case 4", format!("three precolored matching edges, {} colors", m_colors.len()));
            match m_colors.len() {
                1 => plans.extend(mirrored(&prep, m_colors.first())),
                2 => {
                    let twice = m_colors.iter().find(|&x| !once(x)).unwrap();
                    plans.extend(mirrored(&prep, Some(twice)));
                    plans.extend(temp_matching(&prep, twice, true));
                }
                _ => {
                    for r in m_colors.iter().collect::<Vec<_>>().into_iter().rev() {
                        plans.extend(temp_matching(&prep, r, true));
                    }
                    for y in ColorSet::full(t).iter() {
                        plans.extend(mirrored(&prep, Some(y)).map(|p| p.assisted("neighbourhood of u1, v1, w1 colored by search")));
                    }
                }
            }
        }
    }
    plans.extend(fallback_candidates(&prep, "remaining sub-case resolved by copy search"));
    match run_plans(&prep, &plans, &SearchSolver, &mut trace)? {
        Some(full) => Ok((certify(c, full, &mut trace)?, trace)),
        None => Ok((oracle_fallback(c, &mut trace)?, trace)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_complete_bipartite, build_hypercube, cartesian_product, build_cycle, build_path};

    #[test]
    fn k33_and_cube() {
        for g in [build_complete_bipartite(3, 3).unwrap(), build_hypercube(3).unwrap()] {
            assert!(premise_holds(&g));
            let p = prism(&g).unwrap();
            let arc = Arc::new(p.product.clone());
            let m = arc.edge_count();
            for (a, b, d) in [(0, 1, 2), (0, m - 1, m / 2), (3, 7, 11)] {
                let c = PartialEdgeColoring::from_pairs(arc.clone(), 4, &[(a, 1), (b, 2), (d, 1)]).unwrap();
                if !c.is_proper() {
                    continue;
                }
                let (out, _) = extend_subcubic_class1_prism(&g, &c, Premise::Verify).unwrap();
                let full = out.coloring().unwrap();
                assert!(full.is_proper() && full.agrees_with(&c).unwrap());
            }
        }
    }

    #[test]
    fn triangle_is_rejected_with_witness() {
        let tri_prism = cartesian_product(&build_cycle(3).unwrap(), &build_path(2).unwrap()).unwrap();
        let w = triangle_witness(&tri_prism).unwrap();
        assert!(!extend_exhaustive(&w, SearchBudget::UNLIMITED).unwrap().is_extended());
        let p = prism(&tri_prism).unwrap();
        let c = PartialEdgeColoring::empty(Arc::new(p.product.clone()), 4).unwrap();
        assert!(matches!(extend_subcubic_class1_prism(&tri_prism, &c, Premise::Assume), Err(Error::Precondition(_))));
    }
}
