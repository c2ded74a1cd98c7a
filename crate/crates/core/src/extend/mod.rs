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

//! Constructive extension of precolorings on prisms `G□K2`.
//!
//! Every prism extender follows the same outline. The precoloring is
//! normalized so that its colors are `1..=r` in order of first appearance,
//! the two copies are oriented so that the case at hand matches the
//! construction, and one or more copy plans are built: colorings of each copy
//! with extra fixed edges, forbidden colors at vertices and recolorings
//! applied afterwards. The matching edges are colored last with a color
//! missing at both ends. Base-graph coloring steps are solved by the exact
//! search in [`crate::oracle`] (or by the list lemmas for cycles).
//!
//! If no plan of the construction succeeds, the whole instance is handed to
//! the oracle and the trace is marked as a fallback. Steps that the
//! construction resolves by a constrained base search where the underlying
//! argument is only sketched are listed in [`ExtensionTrace::assisted`].

mod complete;
mod cycle;
mod forest;
mod knn;
pub mod lists;
mod plan;
mod regular;
mod subcubic;
mod tree;

use serde::Serialize;

use crate::coloring::{Color, PartialEdgeColoring};
use crate::error::{Error, Result};
use crate::graph::{
    balanced_complete_bipartite_order, is_complete, is_cycle_graph, is_regular, is_tree, max_degree,
    recognize_prism, Graph, VertexId,
};
use crate::oracle::{extend_exhaustive, ExtensionOutcome, SearchBudget};

pub use complete::extend_complete_prism;
pub use cycle::{extend_cycle_prism, extend_even_cycle_prism, extend_odd_cycle_prism};
pub use forest::extend_forest;
pub use knn::extend_knn_prism;
pub use regular::{extend_regular_independent_prism, BaseExtender, OracleBase};
pub use subcubic::{extend_subcubic_class1_prism, triangle_witness, Premise};
pub use tree::extend_tree_prism;

/// One labelled step of a construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub label: String,
    pub detail: String,
}

/// An edge named by its endpoints together with the color it received.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Assignment {
    pub edge: (VertexId, VertexId),
    pub color: Color,
}

/// Record of the choices made by an extender.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ExtensionTrace {
    /// Which extender handled the instance.
    pub route: String,
    pub steps: Vec<TraceStep>,
    /// Sub-steps resolved by a constrained base-graph search where the
    /// construction is only sketched.
    pub assisted: Vec<String>,
    /// Whether the whole instance was solved by the oracle.
    pub fallback: bool,
    /// Colors given to the uncolored edges of the input, in order.
    pub assignments: Vec<Assignment>,
}

impl ExtensionTrace {
    pub fn new(route: &str) -> Self {
        ExtensionTrace { route: route.into(), ..Default::default() }
    }

    pub fn step(&mut self, label: impl Into<String>, detail: impl Into<String>) {
        self.steps.push(TraceStep { label: label.into(), detail: detail.into() });
    }

    /// Applies the recorded assignments to `input`.
    pub fn replay(&self, input: &PartialEdgeColoring) -> Result<PartialEdgeColoring> {
        let mut out = input.clone();
        for a in &self.assignments {
            let e = input
                .graph()
                .edge_id(a.edge.0, a.edge.1)
                .ok_or_else(|| Error::InvalidColoring(format!("trace names a non-edge {:?}", a.edge)))?;
            out = out.with(e, a.color)?;
        }
        Ok(out)
    }

    fn record_result(&mut self, input: &PartialEdgeColoring, output: &PartialEdgeColoring) {
        self.assignments = (0..input.graph().edge_count())
            .filter(|&e| input.get(e).is_none())
            .map(|e| Assignment { edge: input.graph().endpoints(e), color: output.get(e).expect("total") })
            .collect();
    }
}

/// Runs the oracle on the whole instance and marks the trace as a fallback.
pub(crate) fn oracle_fallback(c: &PartialEdgeColoring, trace: &mut ExtensionTrace) -> Result<ExtensionOutcome> {
    trace.fallback = true;
    trace.step("fallback", "construction found no plan; whole instance solved by exact search");
    let out = extend_exhaustive(c, SearchBudget::UNLIMITED)?;
    if let ExtensionOutcome::Extended(full) = &out {
        trace.record_result(c, full);
    }
    Ok(out)
}

/// Checks an extender's output before it is returned.
pub(crate) fn certify(input: &PartialEdgeColoring, full: PartialEdgeColoring, trace: &mut ExtensionTrace) -> Result<ExtensionOutcome> {
    if !full.is_proper() || !full.agrees_with(input)? || full.palette() != input.palette() {
        return Err(Error::Internal(format!("{} extender produced an invalid coloring", trace.route)));
    }
    trace.record_result(input, &full);
    Ok(ExtensionOutcome::Extended(full))
}

/// Extender selection for [`extend_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Auto,
    Tree,
    Knn,
    Complete,
    Cycle,
    Regular,
    Subcubic,
    Oracle,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => Method::Auto,
            "tree" => Method::Tree,
            "knn" => Method::Knn,
            "complete" => Method::Complete,
            "cycle" => Method::Cycle,
            "regular" => Method::Regular,
            "subcubic" => Method::Subcubic,
            "oracle" => Method::Oracle,
            other => return Err(Error::InvalidParameter(format!("unknown method '{other}'"))),
        })
    }
}

/// Runs the requested extender on a coloring of a prism in canonical
/// labeling (or any graph for [`Method::Oracle`] and [`Method::Auto`]).
pub fn extend_with(method: Method, c: &PartialEdgeColoring, budget: SearchBudget) -> Result<(ExtensionOutcome, ExtensionTrace)> {
    if matches!(method, Method::Auto) {
        return extend_auto(c, budget);
    }
    if matches!(method, Method::Oracle) {
        let mut trace = ExtensionTrace::new("oracle");
        let out = extend_exhaustive(c, budget)?;
        if let ExtensionOutcome::Extended(full) = &out {
            trace.record_result(c, full);
        }
        return Ok((out, trace));
    }
    let p = recognize_prism(c.graph())
        .ok_or_else(|| Error::Precondition("graph is not a prism in canonical labeling".into()))?;
    let base = &p.base;
    match method {
        Method::Tree => extend_tree_prism(base, c),
        Method::Knn => {
            let n = balanced_complete_bipartite_order(base)
                .ok_or_else(|| Error::Precondition("base graph is not K_{n,n}".into()))?;
            extend_knn_prism(n, c)
        }
        Method::Complete => extend_complete_prism(base.vertex_count(), c),
        Method::Cycle => extend_cycle_prism(base, c),
        Method::Regular => extend_regular_independent_prism(base, c, &OracleBase::default()),
        Method::Subcubic => extend_subcubic_class1_prism(base, c, Premise::Verify),
        Method::Auto | Method::Oracle => unreachable!(),
    }
}

/// Picks the extender whose theorem covers the instance, or the oracle.
fn route(base: &Graph, c: &PartialEdgeColoring) -> Method {
    let k = c.colored_count();
    let t = c.palette() as usize;
    let delta = max_degree(base);
    let n = base.vertex_count();
    if is_tree(base) && delta >= 1 && t == delta + 1 && k <= delta {
        return Method::Tree;
    }
    if is_cycle_graph(base) {
        let even = n.is_multiple_of(2);
        if (even && t == 3 && k <= 2) || (!even && t == 4 && k <= 3) {
            return Method::Cycle;
        }
    }
    if let Some(m) = balanced_complete_bipartite_order(base) {
        if m >= 2 && t == m + 1 && k <= m {
            return Method::Knn;
        }
    }
    if n >= 3 && is_complete(base) && t == n + n % 2 {
        let bound = if n.is_multiple_of(2) { n / 2 } else { n.div_ceil(2) + 1 };
        if k <= bound {
            return Method::Complete;
        }
    }
    if delta == 3 && t == 4 && k <= 3 && subcubic::premise_holds(base) {
        return Method::Subcubic;
    }
    if is_regular(base) && (t == delta + 1 || t == delta + 2) && regular::within_hypothesis(base, c).unwrap_or(false) {
        let chi = crate::oracle::chromatic_index_value(base, SearchBudget::UNLIMITED).ok().flatten();
        if chi.is_some_and(|chi| t == chi as usize + 1) {
            return Method::Regular;
        }
    }
    Method::Oracle
}

/// Recognizes a prism over a tree, cycle, `K_{n,n}`, `K_m`, subcubic Class 1
/// graph or regular graph within the matching theorem's hypothesis and
/// dispatches to its extender; everything else goes to the oracle.
pub fn extend_auto(c: &PartialEdgeColoring, budget: SearchBudget) -> Result<(ExtensionOutcome, ExtensionTrace)> {
    let method = recognize_prism(c.graph()).map_or(Method::Oracle, |p| route(&p.base, c));
    let (out, mut trace) = extend_with(method, c, budget)?;
    trace.steps.insert(0, TraceStep { label: "route".into(), detail: format!("{method:?}").to_lowercase() });
    Ok((out, trace))
}
