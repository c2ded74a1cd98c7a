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

//! Text and JSON formats for graphs and colorings.
//!
//! Graph text: a header line `n m` followed by `m` lines `u v` with
//! `u < v`, in strictly increasing lexicographic order. Graph JSON:
//! `{"n": 4, "edges": [[0, 1], ...]}` with the same ordering rules.
//!
//! Coloring text: a header line `t k` followed by `k` lines `u v c` naming an
//! edge by its endpoints (`u < v`) and its color in `1..=t`. Coloring JSON:
//! `{"palette": 3, "colors": [[0, 1, 2], ...]}`.
//!
//! Blank lines and lines starting with `#` are ignored in the text formats.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coloring::{Color, PartialEdgeColoring};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[VertexId; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoringJson {
    pub palette: u32,
    pub colors: Vec<[u64; 3]>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines(s: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    s.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim();
        (!l.is_empty() && !l.starts_with('#')).then(|| (i + 1, l.split_whitespace().collect()))
    })
}

fn numbers<const N: usize>(line: usize, fields: &[&str]) -> Result<[u64; N]> {
    if fields.len() != N {
        return Err(parse_err(line, format!("expected {N} integers, found {}", fields.len())));
    }
    let mut out = [0u64; N];
    for (slot, f) in out.iter_mut().zip(fields) {
        *slot = f.parse().map_err(|_| parse_err(line, format!("'{f}' is not a nonnegative integer")))?;
    }
    Ok(out)
}

fn checked_graph(n: usize, edges: Vec<(VertexId, VertexId)>, lines: &[usize]) -> Result<Graph> {
    for (i, &(u, v)) in edges.iter().enumerate() {
        let line = lines.get(i).copied().unwrap_or(0);
        if u >= v {
            return Err(parse_err(line, format!("edge ({u},{v}) must satisfy u < v")));
        }
        if v >= n {
            return Err(parse_err(line, format!("vertex {v} out of range for n = {n}")));
        }
        if i > 0 && edges[i - 1] >= (u, v) {
            return Err(parse_err(line, format!("edge ({u},{v}) out of order or repeated")));
        }
    }
    Graph::from_sorted_edges(n, edges)
}

pub fn read_graph_text(s: &str) -> Result<Graph> {
    let mut lines = content_lines(s);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing header 'n m'"))?;
    let [n, m] = numbers::<2>(hl, &header)?;
    let mut edges = Vec::new();
    let mut at = Vec::new();
    for (line, fields) in lines {
        let [u, v] = numbers::<2>(line, &fields)?;
        edges.push((u as usize, v as usize));
        at.push(line);
    }
    if edges.len() as u64 != m {
        return Err(parse_err(hl, format!("header declares {m} edges, found {}", edges.len())));
    }
    checked_graph(n as usize, edges, &at)
}

pub fn write_graph_text(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn read_graph_json(s: &str) -> Result<Graph> {
    let j: GraphJson = serde_json::from_str(s).map_err(|e| parse_err(e.line(), e.to_string()))?;
    checked_graph(j.n, j.edges.iter().map(|&[u, v]| (u, v)).collect(), &[])
}

pub fn graph_json(g: &Graph) -> GraphJson {
    GraphJson { n: g.vertex_count(), edges: g.edges().iter().map(|&(u, v)| [u, v]).collect() }
}

pub fn write_graph_json(g: &Graph) -> String {
    serde_json::to_string(&graph_json(g)).expect("serializable")
}

/// Reads either format, choosing JSON when the input starts with `{`.
pub fn read_graph(s: &str) -> Result<Graph> {
    if s.trim_start().starts_with('{') {
        read_graph_json(s)
    } else {
        read_graph_text(s)
    }
}

fn checked_coloring(g: Arc<Graph>, palette: u64, triples: &[(usize, [u64; 3])]) -> Result<PartialEdgeColoring> {
    if palette == 0 || palette > crate::coloring::MAX_PALETTE as u64 {
        return Err(Error::InvalidColoring(format!("palette {palette} outside 1..=63")));
    }
    let mut colors: Vec<Option<Color>> = vec![None; g.edge_count()];
    for &(line, [u, v, c]) in triples {
        if u >= v {
            return Err(parse_err(line, format!("edge ({u},{v}) must satisfy u < v")));
        }
        let e = g
            .edge_id(u as usize, v as usize)
            .ok_or_else(|| parse_err(line, format!("({u},{v}) is not an edge of the graph")))?;
        if c == 0 || c > palette {
            return Err(parse_err(line, format!("color {c} outside 1..={palette}")));
        }
        if colors[e].is_some() {
            return Err(parse_err(line, format!("edge ({u},{v}) colored twice")));
        }
        colors[e] = Some(c as Color);
    }
    let c = PartialEdgeColoring::from_colors(g, palette as u32, colors)?;
    c.ensure_proper()?;
    Ok(c)
}

/// Reads a coloring of `g`; improper colorings are rejected with the first
/// vertex where a color repeats.
pub fn read_coloring_text(g: Arc<Graph>, s: &str) -> Result<PartialEdgeColoring> {
    let mut lines = content_lines(s);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing header 't k'"))?;
    let [t, k] = numbers::<2>(hl, &header)?;
    let mut triples = Vec::new();
    for (line, fields) in lines {
        triples.push((line, numbers::<3>(line, &fields)?));
    }
    if triples.len() as u64 != k {
        return Err(parse_err(hl, format!("header declares {k} colored edges, found {}", triples.len())));
    }
    checked_coloring(g, t, &triples)
}

pub fn write_coloring_text(c: &PartialEdgeColoring) -> String {
    let mut out = format!("{} {}\n", c.palette(), c.colored_count());
    for (e, col) in c.colored() {
        let (u, v) = c.graph().endpoints(e);
        out.push_str(&format!("{u} {v} {col}\n"));
    }
    out
}

pub fn read_coloring_json(g: Arc<Graph>, s: &str) -> Result<PartialEdgeColoring> {
    let j: ColoringJson = serde_json::from_str(s).map_err(|e| parse_err(e.line(), e.to_string()))?;
    let triples: Vec<_> = j.colors.iter().map(|&t| (0, t)).collect();
    checked_coloring(g, j.palette as u64, &triples)
}

pub fn coloring_json(c: &PartialEdgeColoring) -> ColoringJson {
    ColoringJson {
        palette: c.palette(),
        colors: c
            .colored()
            .map(|(e, col)| {
                let (u, v) = c.graph().endpoints(e);
                [u as u64, v as u64, col as u64]
            })
            .collect(),
    }
}

pub fn write_coloring_json(c: &PartialEdgeColoring) -> String {
    serde_json::to_string(&coloring_json(c)).expect("serializable")
}

pub fn read_coloring(g: Arc<Graph>, s: &str) -> Result<PartialEdgeColoring> {
    if s.trim_start().starts_with('{') {
        read_coloring_json(g, s)
    } else {
        read_coloring_text(g, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_cycle, build_hypercube};

    #[test]
    fn graph_round_trips() {
        let g = build_hypercube(3).unwrap();
        assert_eq!(read_graph(&write_graph_text(&g)).unwrap(), g);
        assert_eq!(read_graph(&write_graph_json(&g)).unwrap(), g);
    }

    #[test]
    fn graph_reader_rejects() {
        assert!(matches!(read_graph_text("3 2\n1 0\n1 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(read_graph_text("3 2\n1 2\n0 1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(read_graph_text("3 2\n0 1\n").is_err());
        assert!(read_graph_text("2 1\n0 2\n").is_err());
        assert!(read_graph_text("2 1\n0 x\n").is_err());
        assert!(read_graph_json(r#"{"n":3,"edges":[[0,1],[0,1]]}"#).is_err());
    }

    #[test]
    fn coloring_round_trips() {
        let g = Arc::new(build_cycle(6).unwrap());
        let c = read_coloring_text(g.clone(), "3 2\n0 1 1\n# note\n2 3 1\n").unwrap();
        assert_eq!(c.colored_count(), 2);
        assert_eq!(read_coloring(g.clone(), &write_coloring_text(&c)).unwrap(), c);
        assert_eq!(read_coloring(g, &write_coloring_json(&c)).unwrap(), c);
    }

    #[test]
    fn coloring_reader_names_vertex() {
        let g = Arc::new(build_cycle(4).unwrap());
        let err = read_coloring_text(g.clone(), "2 2\n0 1 1\n1 2 1\n").unwrap_err();
        assert_eq!(err, Error::ImproperColoring { vertex: 1, color: 1 });
        assert!(read_coloring_text(g.clone(), "2 1\n0 2 1\n").is_err());
        assert!(read_coloring_text(g.clone(), "2 1\n0 1 3\n").is_err());
        assert!(read_coloring_text(g, "2 1\n1 0 1\n").is_err());
    }
}
