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

use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter out of range: {0}")]
    InvalidParameter(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("improper coloring: color {color} repeated at vertex {vertex}")]
    ImproperColoring { vertex: VertexId, color: u32 },
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("colorings refer to different graphs")]
    GraphMismatch,
    #[error("no path between the requested edges")]
    Unreachable,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal failure: {0}")]
    Internal(String),
}
