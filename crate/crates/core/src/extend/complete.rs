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

//! Prisms over complete graphs with `2n` colors: `K_{2n}` with at most `n`
//! precolored edges and `K_{2n-1}` with at most `n + 1`.

use crate::coloring::{ColorSet, PartialEdgeColoring};
use crate::error::{Error, Result};
use crate::graph::{build_complete, prism};
use crate::oracle::ExtensionOutcome;

use super::cycle::extend_cycle_prism;
use super::plan::{check_instance, complete_candidates, independent, mirrored, run_plans, Prepared, SearchSolver};
use super::{certify, oracle_fallback, ExtensionTrace};

const ASSISTED: &str = "copy colored by search with matching colors forbidden at their ends";

/// Palette and bound on precolored edges for `K_m□K2`.
pub fn complete_prism_bounds(m: usize) -> (u32, usize) {
    let n = m.div_ceil(2);
    let bound = if m.is_multiple_of(2) { n } else { n + 1 };
    (2 * n as u32, bound)
}

/// Extends a precoloring of `K_m□K2`, `m >= 3`, within the bound of
/// [`complete_prism_bounds`] to a proper coloring with `2⌈m/2⌉` colors.
pub fn extend_complete_prism(m: usize, c: &PartialEdgeColoring) -> Result<(ExtensionOutcome, ExtensionTrace)> {
    if m < 3 {
        return Err(Error::Precondition("complete prism needs m >= 3".into()));
    }
    let base = build_complete(m)?;
    let p = prism(&base)?;
    let (t, bound) = complete_prism_bounds(m);
    check_instance(&p, c, t, bound)?;
    if m == 3 {
        let (out, mut trace) = extend_cycle_prism(&base, c)?;
        trace.route = "complete".into();
        trace.step("m = 3", "K_3 is the 3-cycle; odd cycle construction");
        return Ok((out, trace));
    }
    let mut trace = ExtensionTrace::new("complete");
    let mut prep = Prepared::new(&p, c)?;
    if prep.copy_precolored(1).len() > prep.copy_precolored(0).len() {
        prep.swap();
    }
    let plans = if prep.m_precolored().is_empty() {
        trace.step("no matching edge precolored", "copies as for K_{n,n}");
        let mut plans = vec![independent(&prep, t)];
        plans.extend(mirrored(&prep, None));
        plans
    } else {
        trace.step("case", case_label(&prep, m));
        complete_candidates(&prep, t, ASSISTED)
    };
    match run_plans(&prep, &plans, &SearchSolver, &mut trace)? {
        Some(full) => Ok((certify(c, full, &mut trace)?, trace)),
        None => Ok((oracle_fallback(c, &mut trace)?, trace)),
    }
}

fn copy_colors(prep: &Prepared) -> ColorSet {
    (0..prep.base().edge_count())
        .flat_map(|be| [prep.copy_col(0, be), prep.copy_col(1, be)])
        .flatten()
        .collect()
}

fn case_label(prep: &Prepared, m: usize) -> String {
    let m_colors = prep.m_colors().len();
    let in_m = prep.m_precolored().len();
    let both = !prep.copy_precolored(1).is_empty();
    if m == 5 {
        if both {
            return format!("Case 2: both copies precolored, {in_m} matching edges precolored");
        }
        if m_colors == 1 {
            return "Case 1: one color on the matching".into();
        }
        return match in_m {
            2 => "Case 1.1: two matching edges precolored".into(),
            3 => "Case 1.2: three matching edges precolored".into(),
            _ => "Case 1.3: four matching edges precolored".into(),
        };
    }
    if m.is_multiple_of(2) {
        return format!("matching edges precolored, {m_colors} colors on M");
    }
    match (m_colors, copy_colors(prep).len()) {
        (1, _) => "Case 1: one color on the matching".into(),
        (_, 0 | 1) => "Case 2: several colors on M, at most one on the copies".into(),
        _ => "Case 3: several colors on M and on the copies".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::Color;
    use std::sync::Arc;

    fn run(m: usize, pairs: &[(usize, usize, Color)]) -> ExtensionTrace {
        let p = prism(&build_complete(m).unwrap()).unwrap();
        let g = Arc::new(p.product.clone());
        let pairs: Vec<(usize, Color)> = pairs.iter().map(|&(u, v, c)| (g.edge_id(u, v).unwrap(), c)).collect();
        let c = PartialEdgeColoring::from_pairs(g, complete_prism_bounds(m).0, &pairs).unwrap();
        let (out, trace) = extend_complete_prism(m, &c).unwrap();
        let full = out.coloring().expect("extended");
        assert!(full.is_total() && full.is_proper() && full.agrees_with(&c).unwrap());
        trace
    }

    #[test]
    fn examples() {
        run(4, &[(0, 1, 1), (4, 5, 2)]);
        // Four matching edges of K5□K2 colored 1.
        let trace = run(5, &[(0, 5, 1), (1, 6, 1), (2, 7, 1), (3, 8, 1)]);
        assert!(!trace.fallback);
        run(5, &[(0, 5, 1), (1, 6, 2), (0, 1, 3), (7, 8, 2)]);
        run(6, &[(0, 6, 1), (1, 7, 2), (2, 3, 1)]);
        run(3, &[(0, 1, 1), (0, 3, 2), (4, 5, 3)]);
    }

    #[test]
    fn palette_below_bound() {
        // With 5 colors the 5 matching edges of K5□K2 need distinct colors.
        let g = Arc::new(prism(&build_complete(5).unwrap()).unwrap().product);
        let pairs = [(g.edge_id(0, 5).unwrap(), 1), (g.edge_id(1, 6).unwrap(), 1)];
        let c = PartialEdgeColoring::from_pairs(g, 5, &pairs).unwrap();
        assert!(matches!(extend_complete_prism(5, &c), Err(Error::Precondition(_))));
        assert_eq!(crate::oracle::extend_exhaustive(&c, Default::default()).unwrap(), ExtensionOutcome::NotExtendable);
    }
}
