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

//! Extension of partial proper edge colorings of graphs and of their prisms
//! `G□K2`.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: simple graphs with a canonical edge order, family builders,
//!   Cartesian products and the prism decomposition.
//! * [`coloring`]: partial edge colorings and color permutations.
//! * [`oracle`]: exact backtracking search for extensions, used as ground
//!   truth and as the backend for base-graph extension steps.
//! * [`characterize`]: exact non-extendability conditions for forests,
//!   balanced complete bipartite graphs and complete graphs.
//! * [`extend`]: constructive extenders for prisms over trees, `K_{n,n}`,
//!   `K_m`, cycles, regular graphs and subcubic Class 1 graphs.
//! * [`harness`]: batch verification, cross validation and counterexample
//!   hunting.

pub mod characterize;
pub mod coloring;
pub mod error;
pub mod extend;
pub mod graph;
pub mod harness;
pub mod io;
pub mod oracle;

pub use coloring::{Color, ColorPermutation, ColorSet, PartialEdgeColoring};
pub use error::{Error, Result};
pub use graph::{EdgeId, Graph, PrismDecomposition, VertexId};
pub use oracle::{chromatic_index, ChromaticIndex, ExtensionOutcome, SearchBudget};
