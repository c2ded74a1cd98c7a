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

//! Acceptance suite. Each criterion prints one PASS or FAIL line; the test
//! fails if any criterion fails.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use prismext::characterize::{ah_bipartite_condition, complete_even_condition, complete_odd_condition, tree_condition};
use prismext::extend::Method;
use prismext::graph::{
    always_extendable_class, build_complete, build_complete_bipartite, build_cycle, build_hypercube, max_degree, prism,
};
use prismext::harness::families::{connected_graphs, labeled_forests, labeled_trees, nonisomorphic_trees};
use prismext::harness::{
    cross_validate, hunt_counterexamples, verify_conjecture_with_palette, verify_hypothesis, with_jobs, ConjectureStatus, Family,
    HarnessConfig, InstanceSpec, KChoice, VerificationReport,
};
use prismext::oracle::{
    chromatic_index_value, count_extensions, enumerate_precolorings, extend_exhaustive, EnumerationMode, EnumerationOptions,
    Verdict,
};
use prismext::{Graph, PartialEdgeColoring, SearchBudget};

type Outcome = Result<String, String>;

const SEED: u64 = 42;
const EXHAUSTIVE: EnumerationMode = EnumerationMode::Exhaustive;

fn sample(count: u64) -> EnumerationMode {
    EnumerationMode::Sample { seed: SEED, count }
}

/// Every precoloring, not one per color class.
fn literal() -> HarnessConfig {
    HarnessConfig { canonical_colors: false, ..HarnessConfig::default() }
}

fn spec(name: &str, graph: Graph, palette: u32, colored: usize) -> InstanceSpec {
    InstanceSpec { name: name.to_string(), graph: Arc::new(graph), palette, colored, independent_only: false }
}

fn prism_of(g: &Graph) -> Graph {
    prism(g).unwrap().product
}

fn coloring(g: &Arc<Graph>, palette: u32, edges: &[(usize, usize, u32)]) -> PartialEdgeColoring {
    let pairs: Vec<_> = edges.iter().map(|&(u, v, c)| (g.edge_id(u, v).expect("edge"), c)).collect();
    PartialEdgeColoring::from_pairs(g.clone(), palette, &pairs).unwrap()
}

fn verdict(c: &PartialEdgeColoring) -> Verdict {
    extend_exhaustive(c, SearchBudget::UNLIMITED).unwrap().verdict()
}

/// Totals of several extender runs.
#[derive(Default)]
struct Tally {
    total: u64,
    extended: u64,
    mismatches: u64,
    fallbacks: u64,
    assisted: u64,
    failures: Vec<String>,
}

impl Tally {
    fn add(&mut self, r: &VerificationReport) {
        self.total += r.total;
        self.extended += r.extended;
        self.mismatches += r.mismatches;
        self.fallbacks += r.fallbacks;
        self.assisted += r.assisted;
        if r.extended != r.total || r.mismatches > 0 {
            self.failures.push(format!("{} j={}: {:?}", r.graph, r.k, r.witnesses.first()));
        }
    }

    fn run(&mut self, method: Method, spec: &InstanceSpec, mode: EnumerationMode, cfg: &HarnessConfig) {
        match cross_validate(method, spec, mode, cfg) {
            Ok(r) => self.add(&r),
            Err(e) => self.failures.push(format!("{}: {e}", spec.name)),
        }
    }

    fn summary(&self) -> String {
        format!(
            "{} instances, {} extended, {} mismatches, {} fallbacks, {} assisted",
            self.total, self.extended, self.mismatches, self.fallbacks, self.assisted
        )
    }

    fn require(&self, no_fallbacks: bool) -> Outcome {
        let ok = self.failures.is_empty() && self.total > 0 && (!no_fallbacks || self.fallbacks == 0);
        if ok {
            Ok(self.summary())
        } else {
            Err(format!("{}; {}", self.summary(), self.failures.iter().take(3).cloned().collect::<Vec<_>>().join("; ")))
        }
    }
}

/// Compares a condition checker with the oracle on every precoloring of
/// exactly `j` edges. Returns (instances, discrepancies).
fn condition_vs_oracle(
    g: &Arc<Graph>,
    palette: u32,
    j: usize,
    mode: EnumerationMode,
    check: &(dyn Fn(&PartialEdgeColoring) -> bool + Sync),
) -> (u64, Vec<String>) {
    let opts = EnumerationOptions { canonical_colors: false, filter: None };
    let mode = match mode {
        EnumerationMode::Sample { seed, count } => EnumerationMode::Sample { seed: seed.wrapping_add(j as u64), count },
        m => m,
    };
    let all: Vec<PartialEdgeColoring> = enumerate_precolorings(g, palette, j, mode, opts).unwrap().collect();
    let bad: Vec<String> = all
        .par_iter()
        .filter(|c| check(c) != (verdict(c) == Verdict::NotExtendable))
        .map(|c| format!("{:?}", c.colored().collect::<Vec<_>>()))
        .collect();
    (all.len() as u64, bad)
}

fn discrepancies(label: &str, n: u64, bad: &[String]) -> Outcome {
    if bad.is_empty() {
        Ok(format!("{n} instances, 0 discrepancies"))
    } else {
        Err(format!("{label}: {} discrepancies in {n}, first {}", bad.len(), bad[0]))
    }
}

fn criterion_1() -> Outcome {
    let mut tally = Tally::default();
    for n in 2..=5 {
        for t in labeled_trees(n).unwrap() {
            let d = max_degree(&t);
            tally.run(Method::Tree, &spec(&format!("tree {:?}", t.edges()), prism_of(&t), d as u32 + 1, d), EXHAUSTIVE, &literal());
        }
    }
    for n in 6..=7 {
        for t in nonisomorphic_trees(n).unwrap() {
            let d = max_degree(&t);
            tally.run(Method::Tree, &spec(&format!("tree {:?}", t.edges()), prism_of(&t), d as u32 + 1, d), sample(1000), &literal());
        }
    }
    tally.require(true)
}

fn criterion_2() -> Outcome {
    let mut total = 0;
    let mut bad = Vec::new();
    for n in 2..=6 {
        for f in labeled_forests(n).unwrap() {
            // The conditions are stated for maximum degree at least 2.
            let d = max_degree(&f);
            if d < 2 {
                continue;
            }
            let g = Arc::new(f);
            let (k, b) = condition_vs_oracle(&g, d as u32, d, EXHAUSTIVE, &|c| tree_condition(c).unwrap().holds());
            total += k;
            bad.extend(b.into_iter().map(|w| format!("{:?} {w}", g.edges())));
        }
    }
    discrepancies("tree conditions", total, &bad)
}

fn criterion_3() -> Outcome {
    let mut total = 0;
    let mut bad = Vec::new();
    for n in 2..=3 {
        let g = Arc::new(build_complete_bipartite(n, n).unwrap());
        for j in 0..=n {
            let (k, b) = condition_vs_oracle(&g, n as u32, j, EXHAUSTIVE, &|c| ah_bipartite_condition(n, c).unwrap().holds());
            total += k;
            bad.extend(b);
        }
    }
    discrepancies("bipartite conditions", total, &bad)?;
    let mut tally = Tally::default();
    let k22 = prism_of(&build_complete_bipartite(2, 2).unwrap());
    tally.run(Method::Knn, &spec("K2,2 prism", k22, 3, 2), EXHAUSTIVE, &literal());
    let k33 = prism_of(&build_complete_bipartite(3, 3).unwrap());
    tally.run(Method::Knn, &spec("K3,3 prism", k33, 4, 3), sample(10_000), &literal());
    Ok(format!("conditions: {total} instances, 0 discrepancies; extender: {}", tally.require(false)?))
}

fn criterion_4() -> Outcome {
    let mut total = 0;
    let mut bad = Vec::new();
    let mut compare = |m: usize, j: usize, mode: EnumerationMode| {
        let g = Arc::new(build_complete(m).unwrap());
        let half = m.div_ceil(2);
        let check = move |c: &PartialEdgeColoring| {
            if m.is_multiple_of(2) {
                complete_even_condition(half, c).unwrap().holds()
            } else {
                complete_odd_condition(half, c).unwrap().holds()
            }
        };
        let palette = if m.is_multiple_of(2) { m as u32 - 1 } else { m as u32 };
        let (k, b) = condition_vs_oracle(&g, palette, j, mode, &check);
        total += k;
        bad.extend(b.into_iter().map(|w| format!("K{m} {w}")));
    };
    for j in 0..=2 {
        compare(4, j, EXHAUSTIVE);
    }
    for j in 0..=3 {
        compare(5, j, EXHAUSTIVE);
    }
    compare(5, 4, sample(10_000));
    for j in 1..=3 {
        compare(6, j, sample(10_000));
    }
    discrepancies("complete conditions", total, &bad)?;

    let mut tally = Tally::default();
    let k4 = prism_of(&build_complete(4).unwrap());
    for j in 0..=2 {
        tally.run(Method::Complete, &spec("K4 prism", k4.clone(), 4, j), EXHAUSTIVE, &literal());
    }
    let k5 = prism_of(&build_complete(5).unwrap());
    for j in 1..=4 {
        tally.run(Method::Complete, &spec("K5 prism", k5.clone(), 6, j), sample(10_000), &literal());
    }
    let k6 = prism_of(&build_complete(6).unwrap());
    for j in 1..=3 {
        tally.run(Method::Complete, &spec("K6 prism", k6.clone(), 6, j), sample(10_000), &literal());
    }
    let summary = tally.require(false)?;

    // With 5 colors every matching edge of K5□K2 needs its own color, so two
    // matching edges colored alike cannot be extended. Corresponding copy
    // edges colored 1 and 2 do extend.
    let k5 = Arc::new(k5);
    let negative = coloring(&k5, 5, &[(0, 5, 1), (1, 6, 1)]);
    if verdict(&negative) != Verdict::NotExtendable {
        return Err("K5 prism palette 5 negative was extendable".into());
    }
    let corresponding = verdict(&coloring(&k5, 5, &[(0, 1, 1), (5, 6, 2)]));
    Ok(format!(
        "conditions: {total} instances, 0 discrepancies; extender: {summary}; palette 5 negative confirmed \
         (corresponding copy edges 1/2: {corresponding:?})"
    ))
}

fn criterion_5() -> Outcome {
    let mut tally = Tally::default();
    for n in [4, 6, 8] {
        let g = prism_of(&build_cycle(n).unwrap());
        for j in 0..=2 {
            tally.run(Method::Cycle, &spec(&format!("C{n} prism"), g.clone(), 3, j), EXHAUSTIVE, &literal());
        }
    }
    for n in [3, 5, 7] {
        let g = prism_of(&build_cycle(n).unwrap());
        for j in 0..=3 {
            tally.run(Method::Cycle, &spec(&format!("C{n} prism"), g.clone(), 4, j), EXHAUSTIVE, &literal());
        }
    }
    let summary = tally.require(true)?;
    for n in [3, 5, 7] {
        let g = Arc::new(prism_of(&build_cycle(n).unwrap()));
        let corresponding = coloring(&g, 3, &[(0, 1, 1), (n, n + 1, 2)]);
        let four = coloring(&g, 4, &[(0, 1, 1), (1, 2, 2), (n, n + 1, 3), (n + 1, n + 2, 4)]);
        if verdict(&corresponding) != Verdict::NotExtendable || verdict(&four) != Verdict::NotExtendable {
            return Err(format!("negative fixture on C{n} prism was extendable"));
        }
    }
    Ok(format!("{summary}; negative fixtures confirmed"))
}

fn criterion_6() -> Outcome {
    let mut tally = Tally::default();
    let bases = [("C4", build_cycle(4).unwrap()), ("C6", build_cycle(6).unwrap()), ("Q3", build_hypercube(3).unwrap()), ("K4", build_complete(4).unwrap())];
    for (name, g) in bases {
        let chi = chromatic_index_value(&g, SearchBudget::UNLIMITED).unwrap().unwrap();
        let s = InstanceSpec { independent_only: true, ..spec(&format!("{name} prism"), prism_of(&g), chi + 1, 2) };
        tally.run(Method::Regular, &s, EXHAUSTIVE, &literal());
    }
    tally.require(false)
}

fn criterion_7() -> Outcome {
    let mut tally = Tally::default();
    for (name, g) in [("K3,3", build_complete_bipartite(3, 3).unwrap()), ("Q3", build_hypercube(3).unwrap())] {
        let premise = verify_hypothesis(&g, 2, 3, EXHAUSTIVE, &literal()).unwrap();
        if !premise.all_extended() {
            return Err(format!("premise fails on {name}"));
        }
        tally.run(Method::Subcubic, &spec(&format!("{name} prism"), prism_of(&g), 4, 3), sample(10_000), &literal());
    }
    tally.require(false)
}

/// Smallest edge list over all relabelings.
fn canonical_form(g: &Graph) -> Vec<(usize, usize)> {
    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }
    permutations(g.vertex_count())
        .into_iter()
        .map(|p| {
            let mut e: Vec<_> = g.edges().iter().map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v]))).collect();
            e.sort_unstable();
            e
        })
        .min()
        .unwrap()
}

fn criterion_8() -> Outcome {
    let cfg = HarnessConfig { early_stop: true, force: true, ..HarnessConfig::default() };
    let mut cache: HashMap<Vec<(usize, usize)>, bool> = HashMap::new();
    let mut graphs = 0;
    let mut bad = Vec::new();
    for n in 2..=5 {
        for g in connected_graphs(n).unwrap() {
            graphs += 1;
            let claimed = always_extendable_class(&g).unwrap();
            let key = canonical_form(&g);
            let observed = *cache.entry(key).or_insert_with(|| {
                let chi = chromatic_index_value(&g, SearchBudget::UNLIMITED).unwrap().unwrap();
                let r = verify_hypothesis(&g, g.edge_count(), chi, EXHAUSTIVE, &cfg).unwrap();
                assert_eq!(r.unknown, 0);
                r.all_extended()
            });
            if claimed != observed {
                bad.push(format!("{:?}", g.edges()));
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("{graphs} labeled graphs, {} isomorphism classes, 0 discrepancies", cache.len()))
    } else {
        Err(format!("{} discrepancies, first {}", bad.len(), bad[0]))
    }
}

fn criterion_9() -> Outcome {
    let c4 = Arc::new(build_cycle(4).unwrap());
    let n = count_extensions(&PartialEdgeColoring::empty(c4, 3).unwrap(), u64::MAX).unwrap();
    if n != 18 {
        return Err(format!("count_extensions(C4, empty, 3) = {n}"));
    }
    let mut checked = 0u64;
    let suite: Vec<(Graph, u32)> = vec![
        (build_cycle(5).unwrap(), 3),
        (build_cycle(8).unwrap(), 2),
        (build_complete(4).unwrap(), 3),
        (build_complete(5).unwrap(), 5),
        (build_complete_bipartite(3, 3).unwrap(), 3),
        (prism_of(&build_cycle(3).unwrap()), 3),
        (prism_of(&build_cycle(4).unwrap()), 3),
        (build_hypercube(3).unwrap(), 3),
        (prism_of(&labeled_trees(4).unwrap()[0]), 4),
    ];
    for (g, t) in suite {
        assert!(g.edge_count() <= 12);
        let g = Arc::new(g);
        for j in 0..=4.min(g.edge_count()) {
            let all: Vec<_> = enumerate_precolorings(&g, t, j, sample(500), EnumerationOptions { canonical_colors: false, filter: None })
                .unwrap()
                .collect();
            let bad = all.par_iter().find_any(|c| {
                let out = extend_exhaustive(c, SearchBudget::UNLIMITED).unwrap();
                let count = count_extensions(c, 1).unwrap();
                let valid = out.coloring().is_none_or(|f| f.is_total() && f.is_proper() && f.agrees_with(c).unwrap());
                !valid || out.is_extended() != (count > 0)
            });
            if let Some(c) = bad {
                return Err(format!("oracle disagreement on {:?}", c.colored().collect::<Vec<_>>()));
            }
            checked += all.len() as u64;
        }
    }
    let k33 = build_complete_bipartite(3, 3).unwrap();
    let p4 = prism_of(&build_cycle(5).unwrap());
    let run = || {
        let a = verify_hypothesis(&p4, 3, 3, EXHAUSTIVE, &HarnessConfig { max_witnesses: 50, ..HarnessConfig::default() }).unwrap();
        let b = verify_hypothesis(&k33, 2, 3, sample(2000), &HarnessConfig::default()).unwrap();
        let s = spec("K3,3 prism", prism_of(&k33), 4, 3);
        let c = cross_validate(Method::Knn, &s, sample(2000), &HarnessConfig::default()).unwrap();
        serde_json::to_string(&(a, b, c)).unwrap()
    };
    let first = with_jobs(Some(1), run).unwrap();
    let again = with_jobs(Some(1), run).unwrap();
    let parallel = with_jobs(Some(4), run).unwrap();
    if first != again || first != parallel {
        return Err("reports differ across runs or worker counts".into());
    }
    Ok(format!("count 18; {checked} instances cross-checked; reports identical across runs and 1/4 workers"))
}

fn criterion_10() -> Outcome {
    let cfg = HarnessConfig { force: true, ..HarnessConfig::default() };
    let families = [
        Family::Trees { max_n: 6 },
        Family::Cycles { max_n: 7 },
        Family::Complete { max_n: 5 },
        Family::CompleteBipartite { max_n: 3 },
    ];
    let mut checked = 0;
    for family in &families {
        let reports = hunt_counterexamples(family, KChoice::Default, EXHAUSTIVE, &cfg, None, |_, _| {}).unwrap();
        for r in &reports {
            // K3 is part of the complete family; it is also the cycle C3.
            if r.status != ConjectureStatus::ConjectureConsistent {
                return Err(format!("{} k={}: {:?}", r.graph, r.k, r.status));
            }
        }
        checked += reports.len();
    }
    let c5 = build_cycle(5).unwrap();
    let r = verify_conjecture_with_palette(&c5, "C5", 2, EXHAUSTIVE, Some(3), &literal()).unwrap();
    let witness = r.consequent.as_ref().and_then(|c| c.witnesses.iter().find(|w| w.edges == [(0, 1, 1), (5, 6, 2)]));
    if r.status != ConjectureStatus::Counterexample || witness.is_none() {
        return Err(format!("C5 with prism palette 3: {:?}, corresponding-edge witness found: {}", r.status, witness.is_some()));
    }
    Ok(format!("{checked} graphs consistent; C5 prism palette 3 counterexample reproduced"))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("tree prisms", criterion_1),
        ("tree conditions", criterion_2),
        ("complete bipartite", criterion_3),
        ("complete graphs", criterion_4),
        ("cycle prisms", criterion_5),
        ("regular, independent precolorings", criterion_6),
        ("subcubic class 1", criterion_7),
        ("always extendable classes", criterion_8),
        ("oracle self-tests", criterion_9),
        ("conjecture harness", criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let result = std::panic::catch_unwind(f).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match result {
            Ok(detail) => println!("criterion {} ({name}): PASS: {detail} [{:.1?}]", i + 1, start.elapsed()),
            Err(detail) => {
                println!("criterion {} ({name}): FAIL: {detail} [{:.1?}]", i + 1, start.elapsed());
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
