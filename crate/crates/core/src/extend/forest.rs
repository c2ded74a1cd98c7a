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

//! Extension of precolorings of forests with `Δ` colors.

use crate::characterize::{tree_condition, Condition};
use crate::coloring::PartialEdgeColoring;
use crate::error::{Error, Result};
use crate::graph::{is_forest, max_degree};
use crate::oracle::{extend_exhaustive, ExtensionOutcome, SearchBudget};

/// Extends a precoloring of a forest with palette `Δ` that has at most
/// `Δ - 1` precolored edges, or exactly `Δ` precolored edges none of the
/// tree conditions applies to.
pub fn extend_forest(c: &PartialEdgeColoring) -> Result<ExtensionOutcome> {
    let f = c.graph();
    if !is_forest(f) {
        return Err(Error::Precondition("graph is not a forest".into()));
    }
    let delta = max_degree(f);
    if delta == 0 {
        return Err(Error::Precondition("forest has no edges".into()));
    }
    if c.palette() as usize != delta {
        return Err(Error::Precondition(format!("palette must equal the maximum degree {delta}")));
    }
    c.ensure_proper()?;
    let k = c.colored_count();
    if k > delta {
        return Err(Error::Precondition(format!("at most {delta} precolored edges allowed, got {k}")));
    }
    if k == delta && delta >= 2 {
        let report = tree_condition(c)?;
        if report.condition != Condition::None {
            return Err(Error::Precondition(format!("condition {:?} applies", report.condition)));
        }
    }
    match extend_exhaustive(c, SearchBudget::UNLIMITED)? {
        ExtensionOutcome::Extended(full) => Ok(ExtensionOutcome::Extended(full)),
        _ => Err(Error::Internal("forest precoloring within the hypothesis was not extended".into())),
    }
}
