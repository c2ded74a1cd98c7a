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

//! Batch verification: extendability hypotheses, the prism conjecture,
//! cross-validation of extenders against the oracle and counterexample
//! hunting.
//!
//! Instances are evaluated in parallel in fixed-size chunks and aggregated
//! in enumeration order, so reports do not depend on the number of workers.

pub mod families;

use std::io::{BufRead, Write};
use std::path::Path;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::{Color, PartialEdgeColoring};
use crate::error::{Error, Result};
use crate::extend::{extend_with, Method};
use crate::graph::{prism, Graph, VertexId};
use crate::oracle::{
    binomial, candidate_count, chromatic_index_value, enumerate_precolorings, extend_exhaustive, EnumerationMode, EnumerationOptions,
    SearchBudget, Verdict,
};

pub use families::{default_k, Family, NamedGraph};

/// Exhaustive runs above this many candidates need `force`.
pub const EXHAUSTIVE_LIMIT: u128 = 10_000_000;
/// Default number of samples per `(graph, k)` pair.
pub const DEFAULT_SAMPLES: u64 = 10_000;

const CHUNK: usize = 2048;

#[derive(Debug, Clone, Copy)]
pub struct HarnessConfig {
    pub budget: SearchBudget,
    /// Number of failure witnesses kept per report.
    pub max_witnesses: usize,
    /// Allow exhaustive runs above [`EXHAUSTIVE_LIMIT`].
    pub force: bool,
    /// Stop a hypothesis check at the first non-extendable instance.
    pub early_stop: bool,
    /// In exhaustive mode, enumerate one precoloring per class under color
    /// permutations. Extendability is invariant under such permutations.
    pub canonical_colors: bool,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig { budget: SearchBudget::UNLIMITED, max_witnesses: 5, force: false, early_stop: false, canonical_colors: true }
    }
}

/// A precolored instance named by its edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceWitness {
    pub palette: u32,
    pub edges: Vec<(VertexId, VertexId, Color)>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl InstanceWitness {
    fn of(c: &PartialEdgeColoring, verdict: Verdict, note: Option<String>) -> Self {
        let edges = c
            .colored()
            .map(|(e, col)| {
                let (u, v) = c.graph().endpoints(e);
                (u, v, col)
            })
            .collect();
        InstanceWitness { palette: c.palette(), edges, verdict, note }
    }

    /// Rebuilds the precoloring on `g`.
    pub fn coloring(&self, g: &Arc<Graph>) -> Result<PartialEdgeColoring> {
        let pairs = self
            .edges
            .iter()
            .map(|&(u, v, c)| {
                g.edge_id(u, v).map(|e| (e, c)).ok_or_else(|| Error::InvalidColoring(format!("no edge {u}-{v}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PartialEdgeColoring::from_pairs(g.clone(), self.palette, &pairs)
    }

    /// Whether the oracle still gives the recorded verdict.
    pub fn recheck(&self, g: &Arc<Graph>) -> Result<bool> {
        Ok(extend_exhaustive(&self.coloring(g)?, SearchBudget::UNLIMITED)?.verdict() == self.verdict)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub graph: String,
    pub vertices: usize,
    pub edges: usize,
    /// Largest number of precolored edges checked.
    pub k: usize,
    pub palette: u32,
    pub mode: EnumerationMode,
    pub total: u64,
    pub extended: u64,
    pub not_extendable: u64,
    pub unknown: u64,
    /// Instances where an extender fell back to the oracle.
    pub fallbacks: u64,
    /// Instances where an extender used a search-assisted step.
    pub assisted: u64,
    /// Instances where an extender and the oracle disagree.
    pub mismatches: u64,
    pub witnesses: Vec<InstanceWitness>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerificationReport {
    fn new(graph: &Graph, name: &str, k: usize, palette: u32, mode: EnumerationMode) -> Self {
        VerificationReport {
            graph: name.to_string(),
            vertices: graph.vertex_count(),
            edges: graph.edge_count(),
            k,
            palette,
            mode,
            total: 0,
            extended: 0,
            not_extendable: 0,
            unknown: 0,
            fallbacks: 0,
            assisted: 0,
            mismatches: 0,
            witnesses: Vec::new(),
            wall_time: Duration::ZERO,
        }
    }

    /// Counters add up.
    pub fn is_consistent(&self) -> bool {
        self.extended + self.not_extendable + self.unknown == self.total && self.witnesses.len() as u64 <= self.total
    }

    /// Every instance extended.
    pub fn all_extended(&self) -> bool {
        self.total == self.extended
    }

    fn count(&mut self, verdict: Verdict) {
        self.total += 1;
        match verdict {
            Verdict::Extended => self.extended += 1,
            Verdict::NotExtendable => self.not_extendable += 1,
            Verdict::Unknown => self.unknown += 1,
        }
    }

    fn keep(&mut self, w: InstanceWitness, max: usize) {
        if self.witnesses.len() < max {
            self.witnesses.push(w);
        }
    }
}

/// Default name of a graph in reports: vertex count and edge list.
pub fn describe(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
    format!("n={} [{}]", g.vertex_count(), edges.join(" "))
}

/// Precolorings of exactly `j` edges in the given mode. Sampling uses the
/// seed offset by `j` so that the per-size streams are independent.
fn instances<'a>(
    g: &'a Arc<Graph>,
    palette: u32,
    j: usize,
    mode: EnumerationMode,
    cfg: &HarnessConfig,
    filter: Option<&'a (dyn Fn(&PartialEdgeColoring) -> bool + Sync)>,
) -> Result<Box<dyn Iterator<Item = PartialEdgeColoring> + 'a>> {
    let mode = match mode {
        EnumerationMode::Sample { seed, count } => EnumerationMode::Sample { seed: seed.wrapping_add(j as u64), count },
        m => m,
    };
    let canonical = cfg.canonical_colors && matches!(mode, EnumerationMode::Exhaustive);
    enumerate_precolorings(g, palette, j, mode, EnumerationOptions { canonical_colors: canonical, filter })
}

/// Color tuples of length `j` over `t` colors in which each color first
/// appears after all smaller ones: the sum of Stirling numbers `S(j, i)`
/// for `i <= t`.
fn canonical_tuples(t: u32, j: usize) -> u128 {
    let mut row = vec![1u128];
    for n in 1..=j {
        let mut next = vec![0u128; n + 1];
        for (i, &s) in row.iter().enumerate() {
            next[i] += s * i as u128;
            next[i + 1] += s;
        }
        row = next;
    }
    row.iter().take(t as usize + 1).sum()
}

/// Candidates an exhaustive run over `j` colored edges visits.
pub fn exhaustive_size(m: usize, palette: u32, j: usize, canonical: bool) -> u128 {
    if canonical {
        binomial(m as u64, j as u64).saturating_mul(canonical_tuples(palette, j))
    } else {
        candidate_count(m, palette, j)
    }
}

fn check_size(g: &Graph, palette: u32, sizes: impl IntoIterator<Item = usize>, mode: EnumerationMode, cfg: &HarnessConfig) -> Result<()> {
    if matches!(mode, EnumerationMode::Exhaustive) && !cfg.force {
        let total: u128 = sizes.into_iter().map(|j| exhaustive_size(g.edge_count(), palette, j, cfg.canonical_colors)).sum();
        if total > EXHAUSTIVE_LIMIT {
            return Err(Error::InvalidParameter(format!(
                "exhaustive space has {total} candidates, above {EXHAUSTIVE_LIMIT}; sample or force"
            )));
        }
    }
    Ok(())
}

/// Evaluates `f` on every instance in parallel chunks, feeding results to
/// `sink` in enumeration order. `sink` returns `false` to stop.
fn drive<T: Send>(
    iter: impl Iterator<Item = PartialEdgeColoring>,
    f: impl Fn(&PartialEdgeColoring) -> T + Sync,
    mut sink: impl FnMut(&PartialEdgeColoring, T) -> bool,
) {
    let mut iter = iter.peekable();
    while iter.peek().is_some() {
        let chunk: Vec<PartialEdgeColoring> = iter.by_ref().take(CHUNK).collect();
        let results: Vec<T> = chunk.par_iter().map(&f).collect();
        for (c, r) in chunk.iter().zip(results) {
            if !sink(c, r) {
                return;
            }
        }
    }
}

fn oracle_verdict(c: &PartialEdgeColoring, budget: SearchBudget) -> Verdict {
    extend_exhaustive(c, budget).map(|o| o.verdict()).unwrap_or(Verdict::Unknown)
}

/// Checks that every precoloring of at most `k` edges of `g` with `palette`
/// colors extends.
pub fn verify_hypothesis(g: &Graph, k: usize, palette: u32, mode: EnumerationMode, cfg: &HarnessConfig) -> Result<VerificationReport> {
    verify_hypothesis_named(g, &describe(g), k, palette, mode, cfg)
}

pub fn verify_hypothesis_named(
    g: &Graph,
    name: &str,
    k: usize,
    palette: u32,
    mode: EnumerationMode,
    cfg: &HarnessConfig,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let k = k.min(g.edge_count());
    check_size(g, palette, 0..=k, mode, cfg)?;
    let arc = Arc::new(g.clone());
    let mut report = VerificationReport::new(g, name, k, palette, mode);
    let mut stop = false;
    for j in 0..=k {
        if stop {
            break;
        }
        drive(
            instances(&arc, palette, j, mode, cfg, None)?,
            |c| oracle_verdict(c, cfg.budget),
            |c, verdict| {
                report.count(verdict);
                if verdict != Verdict::Extended {
                    report.keep(InstanceWitness::of(c, verdict, None), cfg.max_witnesses);
                    if cfg.early_stop && verdict == Verdict::NotExtendable {
                        stop = true;
                        return false;
                    }
                }
                true
            },
        );
    }
    report.wall_time = start.elapsed();
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConjectureStatus {
    ConjectureConsistent,
    AntecedentFails,
    Counterexample,
    /// Search budget exhausted before a decision.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub graph: String,
    pub k: usize,
    pub chromatic_index: u32,
    pub antecedent: VerificationReport,
    pub consequent: Option<VerificationReport>,
    pub status: ConjectureStatus,
}

/// Checks the prism conjecture for `g` and `k`: if every precoloring of at
/// most `k` edges of `g` extends with `χ'(g)` colors, every precoloring of
/// at most `k + 1` edges of `g□K2` extends with `χ'(g) + 1` colors.
pub fn verify_conjecture_instance(g: &Graph, k: usize, mode: EnumerationMode, cfg: &HarnessConfig) -> Result<ConjectureReport> {
    verify_conjecture_with_palette(g, &describe(g), k, mode, None, cfg)
}

/// As [`verify_conjecture_instance`], with the prism palette overridden.
pub fn verify_conjecture_with_palette(
    g: &Graph,
    name: &str,
    k: usize,
    mode: EnumerationMode,
    prism_palette: Option<u32>,
    cfg: &HarnessConfig,
) -> Result<ConjectureReport> {
    let chi = chromatic_index_value(g, cfg.budget)?;
    let Some(chi) = chi else {
        let antecedent = VerificationReport::new(g, name, k, 0, mode);
        return Ok(ConjectureReport { graph: name.into(), k, chromatic_index: 0, antecedent, consequent: None, status: ConjectureStatus::Unknown });
    };
    let early = HarnessConfig { early_stop: true, ..*cfg };
    let antecedent = verify_hypothesis_named(g, name, k, chi, mode, &early)?;
    let mut out = ConjectureReport { graph: name.into(), k, chromatic_index: chi, antecedent, consequent: None, status: ConjectureStatus::Unknown };
    if out.antecedent.not_extendable > 0 {
        out.status = ConjectureStatus::AntecedentFails;
        return Ok(out);
    }
    if out.antecedent.unknown > 0 {
        return Ok(out);
    }
    let product = prism(g)?.product;
    let palette = prism_palette.unwrap_or(chi + 1);
    let consequent = verify_hypothesis_named(&product, &format!("{name} □ K2"), k + 1, palette, mode, cfg)?;
    out.status = if consequent.not_extendable > 0 {
        ConjectureStatus::Counterexample
    } else if consequent.unknown > 0 {
        ConjectureStatus::Unknown
    } else {
        ConjectureStatus::ConjectureConsistent
    };
    out.consequent = Some(consequent);
    Ok(out)
}

/// Instances for [`cross_validate`]: precolorings of exactly `colored` edges
/// of `graph` with `palette` colors.
pub struct InstanceSpec {
    pub name: String,
    pub graph: Arc<Graph>,
    pub palette: u32,
    pub colored: usize,
    /// Only precolorings whose colored edges are pairwise non-adjacent.
    pub independent_only: bool,
}

/// Runs an extender on every instance, checks its output and compares its
/// verdict with the oracle's.
pub fn cross_validate(method: Method, spec: &InstanceSpec, mode: EnumerationMode, cfg: &HarnessConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    check_size(&spec.graph, spec.palette, [spec.colored], mode, cfg)?;
    let mut report = VerificationReport::new(&spec.graph, &spec.name, spec.colored, spec.palette, mode);
    let independent = |c: &PartialEdgeColoring| c.is_independent();
    let filter: Option<&(dyn Fn(&PartialEdgeColoring) -> bool + Sync)> = if spec.independent_only { Some(&independent) } else { None };
    let iter = instances(&spec.graph, spec.palette, spec.colored, mode, cfg, filter)?;
    drive(
        iter,
        |c| {
            let oracle = oracle_verdict(c, cfg.budget);
            match extend_with(method, c, cfg.budget) {
                Ok((out, trace)) => {
                    let valid = out.coloring().is_none_or(|f| f.is_total() && f.is_proper() && f.agrees_with(c).unwrap_or(false));
                    (out.verdict(), oracle, trace.fallback, !trace.assisted.is_empty(), (!valid).then(|| "invalid output".to_string()))
                }
                Err(e) => (Verdict::Unknown, oracle, false, false, Some(e.to_string())),
            }
        },
        |c, (verdict, oracle, fallback, assisted, error)| {
            report.count(verdict);
            report.fallbacks += fallback as u64;
            report.assisted += assisted as u64;
            let mismatch = error.is_some() || (verdict != oracle && verdict != Verdict::Unknown && oracle != Verdict::Unknown);
            if mismatch {
                report.mismatches += 1;
                let note = error.unwrap_or_else(|| format!("extender {verdict:?}, oracle {oracle:?}"));
                report.keep(InstanceWitness::of(c, oracle, Some(note)), cfg.max_witnesses);
            }
            true
        },
    );
    report.wall_time = start.elapsed();
    Ok(report)
}

/// How `k` is chosen per graph in [`hunt_counterexamples`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KChoice {
    Fixed(usize),
    /// [`default_k`] of each graph.
    Default,
}

#[derive(Serialize, Deserialize)]
struct CheckpointLine {
    index: usize,
    report: ConjectureReport,
}

/// Runs the conjecture check over a family. With a checkpoint file, finished
/// graphs are appended as JSON lines keyed by their index and skipped when
/// the hunt is resumed.
pub fn hunt_counterexamples(
    family: &Family,
    k: KChoice,
    mode: EnumerationMode,
    cfg: &HarnessConfig,
    checkpoint: Option<&Path>,
    mut on_report: impl FnMut(usize, &ConjectureReport),
) -> Result<Vec<ConjectureReport>> {
    let graphs = family.generate()?;
    let mut done: Vec<Option<ConjectureReport>> = vec![None; graphs.len()];
    if let Some(path) = checkpoint {
        if path.exists() {
            let file = std::fs::File::open(path).map_err(|e| Error::InvalidParameter(format!("checkpoint: {e}")))?;
            for line in std::io::BufReader::new(file).lines() {
                let line = line.map_err(|e| Error::InvalidParameter(format!("checkpoint: {e}")))?;
                if line.trim().is_empty() {
                    continue;
                }
                // A partial last line from an interrupted run is ignored.
                if let Ok(entry) = serde_json::from_str::<CheckpointLine>(&line) {
                    if entry.index < done.len() {
                        done[entry.index] = Some(entry.report);
                    }
                }
            }
        }
    }
    let mut writer = match checkpoint {
        Some(path) => Some(
            std::fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|e| Error::InvalidParameter(format!("checkpoint: {e}")))?,
        ),
        None => None,
    };
    let mut out = Vec::with_capacity(graphs.len());
    for (index, ng) in graphs.iter().enumerate() {
        let report = match done[index].take() {
            Some(r) => r,
            None => {
                let kk = match k {
                    KChoice::Fixed(k) => k,
                    KChoice::Default => default_k(&ng.graph),
                };
                let r = verify_conjecture_with_palette(&ng.graph, &ng.name, kk, mode, None, cfg)?;
                if let Some(w) = writer.as_mut() {
                    let line = serde_json::to_string(&CheckpointLine { index, report: r.clone() }).expect("serializable");
                    writeln!(w, "{line}").and_then(|_| w.flush()).map_err(|e| Error::InvalidParameter(format!("checkpoint: {e}")))?;
                }
                r
            }
        };
        on_report(index, &report);
        out.push(report);
    }
    Ok(out)
}

/// Runs `f` on a dedicated pool with `jobs` workers (`None`: the default).
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| Error::Internal(format!("thread pool: {e}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_complete_bipartite, build_cycle, build_path};

    #[test]
    fn hypothesis_examples() {
        let cfg = HarnessConfig::default();
        let c4 = build_cycle(4).unwrap();
        assert!(verify_hypothesis(&c4, 1, 2, EnumerationMode::Exhaustive, &cfg).unwrap().all_extended());
        let p4 = build_path(4).unwrap();
        let r = verify_hypothesis(&p4, 2, 2, EnumerationMode::Exhaustive, &cfg).unwrap();
        assert!(r.not_extendable > 0 && r.is_consistent());
        let arc = Arc::new(p4);
        assert!(r.witnesses.iter().all(|w| w.recheck(&arc).unwrap()));
        let k33 = build_complete_bipartite(3, 3).unwrap();
        assert!(verify_hypothesis(&k33, 2, 3, EnumerationMode::Exhaustive, &cfg).unwrap().all_extended());
    }

    #[test]
    fn conjecture_examples() {
        let cfg = HarnessConfig::default();
        let c5 = build_cycle(5).unwrap();
        let r = verify_conjecture_instance(&c5, 2, EnumerationMode::Exhaustive, &cfg).unwrap();
        assert_eq!(r.status, ConjectureStatus::ConjectureConsistent);
        let r = verify_conjecture_with_palette(&c5, "C5", 2, EnumerationMode::Exhaustive, Some(3), &cfg).unwrap();
        assert_eq!(r.status, ConjectureStatus::Counterexample);
        let p3 = build_path(3).unwrap();
        let r = verify_conjecture_instance(&p3, 1, EnumerationMode::Exhaustive, &cfg).unwrap();
        assert_eq!(r.status, ConjectureStatus::ConjectureConsistent);
    }

    #[test]
    fn canonical_sizes() {
        assert_eq!(canonical_tuples(3, 0), 1);
        assert_eq!(canonical_tuples(5, 4), 15);
        assert_eq!(canonical_tuples(2, 3), 4);
        assert_eq!(exhaustive_size(10, 3, 2, false), candidate_count(10, 3, 2));
    }

    #[test]
    fn refuses_large_exhaustive_spaces() {
        let g = crate::graph::build_complete(8).unwrap();
        let cfg = HarnessConfig::default();
        assert!(verify_hypothesis(&g, 6, 7, EnumerationMode::Exhaustive, &cfg).is_err());
    }
}
