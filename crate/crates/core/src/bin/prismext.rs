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

//! Command-line front end.
//!
//! Exit codes: 0 success or consistent, 1 counterexample or no extension,
//! 2 input error, 3 budget exhausted.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use prismext::characterize::{ah_bipartite_condition, complete_even_condition, complete_odd_condition, tree_condition, ConditionReport};
use prismext::extend::{extend_with, ExtensionTrace, Method};
use prismext::graph::{
    balanced_complete_bipartite_order, build_complete, build_complete_bipartite, build_cycle, build_hypercube, build_path,
    build_star, cartesian_product, is_complete, is_forest, prism,
};
use prismext::harness::{
    cross_validate, hunt_counterexamples, verify_conjecture_with_palette, verify_hypothesis_named, with_jobs, ConjectureStatus,
    Family, HarnessConfig, InstanceSpec, KChoice, VerificationReport,
};
use prismext::io::{read_coloring, read_graph, write_coloring_text, write_graph_text};
use prismext::oracle::{chromatic_index, count_extensions, extend_exhaustive, EnumerationMode};
use prismext::{ChromaticIndex, Error, ExtensionOutcome, Graph, PartialEdgeColoring, SearchBudget};

#[derive(Parser)]
#[command(name = "prismext", version, about = "Precoloring extension for edge colorings of graphs and prisms")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Seed for sampling and random families.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Search node limit per oracle call.
    #[arg(long, global = true)]
    budget_nodes: Option<u64>,
    /// Time limit per oracle call, in seconds.
    #[arg(long, global = true)]
    time_limit: Option<f64>,
    /// Write the JSON report to this file.
    #[arg(long, global = true, value_name = "OUT")]
    json: Option<PathBuf>,
    /// Checkpoint file for `hunt`.
    #[arg(long, global = true, value_name = "FILE")]
    checkpoint: Option<PathBuf>,
    /// Allow exhaustive runs above the candidate limit.
    #[arg(long, global = true)]
    force: bool,
}

impl Global {
    fn budget(&self) -> SearchBudget {
        SearchBudget { max_nodes: self.budget_nodes, time_limit: self.time_limit.map(Duration::from_secs_f64) }
    }

    fn config(&self) -> HarnessConfig {
        HarnessConfig { budget: self.budget(), force: self.force, ..HarnessConfig::default() }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit the graphs of a family.
    Gen {
        /// trees:N, cycles:N, complete:N, complete_bipartite:N,
        /// random_regular:N,D,COUNT or file:PATH.
        family: String,
    },
    /// Cartesian product of two graphs.
    Product {
        left: String,
        /// Defaults to K2, giving the prism with copy `c` of vertex `v` at
        /// `c * n + v`.
        right: Option<String>,
    },
    /// Chromatic index.
    Chi {
        #[arg(long)]
        graph: String,
    },
    /// Exhaustive extension search.
    Oracle {
        #[command(flatten)]
        instance: Instance,
        /// Count extensions up to this cap instead of finding one.
        #[arg(long)]
        count: Option<u64>,
    },
    /// Extend with a constructive extender.
    Extend {
        #[command(flatten)]
        instance: Instance,
        #[arg(long, default_value = "auto")]
        method: Method,
        /// Write the trace as JSON to FILE, or to stderr without a value.
        #[arg(long, value_name = "FILE", num_args = 0..=1)]
        trace: Option<Option<PathBuf>>,
    },
    /// Evaluate the non-extendability conditions.
    Check {
        #[command(flatten)]
        instance: Instance,
        #[arg(long, value_enum, default_value_t = ConditionKind::Auto)]
        condition: ConditionKind,
    },
    /// Check a hypothesis or a conjecture instance.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// Check the conjecture over a family of graphs.
    Hunt {
        family: String,
        /// Precolored edges of the base graph (default: per family).
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Run an extender against the oracle on all precolorings of a size.
    Cross {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        method: Method,
        #[arg(long)]
        palette: u32,
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        independent: bool,
        #[command(flatten)]
        mode: ModeArgs,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// Every precoloring of at most k edges extends.
    Hypothesis {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        palette: u32,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// The prism conjecture for one graph.
    Conjecture {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        k: usize,
        /// Palette used on the prism instead of χ' + 1.
        #[arg(long)]
        prism_palette: Option<u32>,
        #[command(flatten)]
        mode: ModeArgs,
    },
}

#[derive(Args)]
struct Instance {
    /// Graph file or builder (path:N, cycle:N, star:N, complete:N, kmn:M,N,
    /// hypercube:D, prism:<builder>).
    #[arg(long)]
    graph: String,
    #[arg(long)]
    coloring: PathBuf,
    /// Palette overriding the one in the coloring file.
    #[arg(long)]
    palette: Option<u32>,
}

#[derive(Args)]
struct ModeArgs {
    /// Sample this many instances per size instead of enumerating.
    #[arg(long, num_args = 0..=1, default_missing_value = "10000")]
    sample: Option<u64>,
}

impl ModeArgs {
    fn mode(&self, seed: u64) -> EnumerationMode {
        match self.sample {
            Some(count) => EnumerationMode::Sample { seed, count },
            None => EnumerationMode::Exhaustive,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConditionKind {
    Auto,
    Tree,
    Bipartite,
    Complete,
}

enum Failure {
    Input(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Run = Result<u8, Failure>;

const OK: u8 = 0;
const NEGATIVE: u8 = 1;
const BUDGET: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.global.jobs;
    let result = with_jobs(jobs, || run(&cli)).unwrap_or_else(|e| Err(e.into()));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("budget exhausted: {m}");
            ExitCode::from(BUDGET)
        }
    }
}

fn run(cli: &Cli) -> Run {
    let g = &cli.global;
    match &cli.command {
        Command::Gen { family } => {
            let family = parse_family(family, g.seed)?;
            let graphs = family.generate()?;
            for ng in &graphs {
                print!("# {}\n{}", ng.name, write_graph_text(&ng.graph));
            }
            let json: Vec<_> = graphs.iter().map(|ng| serde_json::json!({"name": ng.name, "graph": prismext::io::graph_json(&ng.graph)})).collect();
            write_json(g, &json)?;
            Ok(OK)
        }
        Command::Product { left, right } => {
            let a = load_graph(left)?;
            let p = match right {
                Some(r) => cartesian_product(&a, &load_graph(r)?)?,
                None => prism(&a)?.product,
            };
            print!("{}", write_graph_text(&p));
            write_json(g, &prismext::io::graph_json(&p))?;
            Ok(OK)
        }
        Command::Chi { graph } => {
            let graph = load_graph(graph)?;
            let delta = prismext::graph::max_degree(&graph);
            let chi = chromatic_index(&graph, g.budget())?;
            let (class, value) = match chi {
                ChromaticIndex::Class1(_) => ("class1", chi.value(delta)),
                ChromaticIndex::Class2 => ("class2", chi.value(delta)),
                ChromaticIndex::Unknown { .. } => ("unknown", None),
            };
            let report = serde_json::json!({"max_degree": delta, "class": class, "chromatic_index": value});
            println!("{report}");
            write_json(g, &report)?;
            Ok(if value.is_some() { OK } else { BUDGET })
        }
        Command::Oracle { instance, count } => {
            let c = load_instance(instance)?;
            if let Some(cap) = count {
                let n = count_extensions(&c, *cap)?;
                println!("{n}");
                write_json(g, &serde_json::json!({"extensions": n, "cap": cap}))?;
                return Ok(OK);
            }
            let out = extend_exhaustive(&c, g.budget())?;
            write_json(g, &serde_json::json!({"verdict": out.verdict()}))?;
            report_outcome(&out)
        }
        Command::Extend { instance, method, trace } => {
            let c = load_instance(instance)?;
            let (out, tr) = extend_with(*method, &c, g.budget())?;
            if let Some(target) = trace {
                write_trace(target.as_deref(), &tr)?;
            }
            write_json(g, &serde_json::json!({"verdict": out.verdict(), "trace": tr}))?;
            report_outcome(&out)
        }
        Command::Check { instance, condition } => {
            let c = load_instance(instance)?;
            let report = check(&c, *condition)?;
            let text = serde_json::to_string(&report).expect("serializable");
            println!("{text}");
            write_json(g, &report)?;
            Ok(OK)
        }
        Command::Verify { what } => match what {
            Verify::Hypothesis { graph, k, palette, mode } => {
                let base = load_graph(graph)?;
                let r = verify_hypothesis_named(&base, graph, *k, *palette, mode.mode(g.seed), &g.config())?;
                print_report(&r);
                write_json(g, &r)?;
                Ok(if r.not_extendable > 0 {
                    NEGATIVE
                } else if r.unknown > 0 {
                    BUDGET
                } else {
                    OK
                })
            }
            Verify::Conjecture { graph, k, prism_palette, mode } => {
                let base = load_graph(graph)?;
                let r = verify_conjecture_with_palette(&base, graph, *k, mode.mode(g.seed), *prism_palette, &g.config())?;
                println!("{}: {:?}", r.graph, r.status);
                print_report(&r.antecedent);
                if let Some(c) = &r.consequent {
                    print_report(c);
                }
                write_json(g, &r)?;
                Ok(status_code(r.status))
            }
        },
        Command::Hunt { family, k, mode } => {
            let family = parse_family(family, g.seed)?;
            let k = k.map_or(KChoice::Default, KChoice::Fixed);
            let reports = hunt_counterexamples(&family, k, mode.mode(g.seed), &g.config(), g.checkpoint.as_deref(), |_, r| {
                println!("{} k={}: {:?}", r.graph, r.k, r.status);
            })?;
            write_json(g, &reports)?;
            let code = reports.iter().map(|r| status_code(r.status)).fold(OK, |acc, c| match (acc, c) {
                (NEGATIVE, _) | (_, NEGATIVE) => NEGATIVE,
                (BUDGET, _) | (_, BUDGET) => BUDGET,
                _ => OK,
            });
            Ok(code)
        }
        Command::Cross { graph, method, palette, edges, independent, mode } => {
            let spec = InstanceSpec {
                name: graph.clone(),
                graph: Arc::new(load_graph(graph)?),
                palette: *palette,
                colored: *edges,
                independent_only: *independent,
            };
            let r = cross_validate(*method, &spec, mode.mode(g.seed), &g.config())?;
            print_report(&r);
            println!("mismatches {}, fallbacks {}, assisted {}", r.mismatches, r.fallbacks, r.assisted);
            write_json(g, &r)?;
            Ok(if r.mismatches > 0 {
                NEGATIVE
            } else if r.unknown > 0 {
                BUDGET
            } else {
                OK
            })
        }
    }
}

fn status_code(s: ConjectureStatus) -> u8 {
    match s {
        ConjectureStatus::Counterexample => NEGATIVE,
        ConjectureStatus::Unknown => BUDGET,
        ConjectureStatus::ConjectureConsistent | ConjectureStatus::AntecedentFails => OK,
    }
}

fn report_outcome(out: &ExtensionOutcome) -> Run {
    match out {
        ExtensionOutcome::Extended(f) => {
            print!("{}", write_coloring_text(f));
            Ok(OK)
        }
        ExtensionOutcome::NotExtendable => {
            println!("# not extendable");
            Ok(NEGATIVE)
        }
        ExtensionOutcome::Unknown { nodes } => Err(Failure::Budget(format!("undecided after {nodes} nodes"))),
    }
}

fn print_report(r: &VerificationReport) {
    println!(
        "{} k={} palette={}: total {}, extended {}, not extendable {}, unknown {} ({:.2?})",
        r.graph, r.k, r.palette, r.total, r.extended, r.not_extendable, r.unknown, r.wall_time
    );
    for w in &r.witnesses {
        println!("  witness {:?}: {:?}{}", w.verdict, w.edges, w.note.as_deref().map(|n| format!(" ({n})")).unwrap_or_default());
    }
}

fn check(c: &PartialEdgeColoring, kind: ConditionKind) -> Result<ConditionReport, Failure> {
    let g = c.graph();
    let kind = match kind {
        ConditionKind::Auto if is_forest(g) => ConditionKind::Tree,
        ConditionKind::Auto if balanced_complete_bipartite_order(g).is_some() => ConditionKind::Bipartite,
        ConditionKind::Auto if is_complete(g) => ConditionKind::Complete,
        ConditionKind::Auto => return Err(Failure::Input("no characterization applies to this graph".into())),
        k => k,
    };
    Ok(match kind {
        ConditionKind::Tree => tree_condition(c)?,
        ConditionKind::Bipartite => {
            let n = balanced_complete_bipartite_order(g).ok_or_else(|| Failure::Input("graph is not K_{n,n}".into()))?;
            ah_bipartite_condition(n, c)?
        }
        _ => {
            let n = g.vertex_count();
            if n.is_multiple_of(2) {
                complete_even_condition(n / 2, c)?
            } else {
                complete_odd_condition(n.div_ceil(2), c)?
            }
        }
    })
}

fn write_json<T: Serialize + ?Sized>(g: &Global, value: &T) -> Result<(), Failure> {
    if let Some(path) = &g.json {
        let mut text = serde_json::to_string_pretty(value).expect("serializable");
        text.push('\n');
        std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn write_trace(target: Option<&Path>, tr: &ExtensionTrace) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(tr).expect("serializable");
    match target {
        Some(path) => std::fs::write(path, text + "\n").map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            eprintln!("{text}");
            Ok(())
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn numbers(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| Failure::Input(format!("bad number '{x}'")))).collect()
}

/// A graph file, or a builder such as `cycle:5` or `prism:complete:4`.
fn load_graph(arg: &str) -> Result<Graph, Failure> {
    let path = Path::new(arg);
    if path.exists() {
        return Ok(read_graph(&read_file(path)?)?);
    }
    let (kind, rest) = arg.split_once(':').ok_or_else(|| Failure::Input(format!("no such file or builder: {arg}")))?;
    if kind == "prism" {
        return Ok(prism(&load_graph(rest)?)?.product);
    }
    let args = numbers(rest)?;
    let one = || match args[..] {
        [n] => Ok(n),
        _ => Err(Failure::Input(format!("{kind} takes one number"))),
    };
    Ok(match kind {
        "path" => build_path(one()?)?,
        "cycle" => build_cycle(one()?)?,
        "star" => build_star(one()?)?,
        "complete" => build_complete(one()?)?,
        "hypercube" => build_hypercube(one()?)?,
        "kmn" => match args[..] {
            [m, n] => build_complete_bipartite(m, n)?,
            _ => return Err(Failure::Input("kmn takes two numbers".into())),
        },
        _ => return Err(Failure::Input(format!("unknown builder '{kind}'"))),
    })
}

fn load_instance(inst: &Instance) -> Result<PartialEdgeColoring, Failure> {
    let g = Arc::new(load_graph(&inst.graph)?);
    let c = read_coloring(g, &read_file(&inst.coloring)?)?;
    Ok(match inst.palette {
        Some(t) => c.with_palette(t)?,
        None => c,
    })
}

fn parse_family(arg: &str, seed: u64) -> Result<Family, Failure> {
    let (kind, rest) = arg.split_once(':').ok_or_else(|| Failure::Input(format!("bad family '{arg}'")))?;
    if kind == "file" {
        return Ok(Family::FromFile { path: PathBuf::from(rest) });
    }
    let args = numbers(rest)?;
    Ok(match (kind, &args[..]) {
        ("trees", &[max_n]) => Family::Trees { max_n },
        ("cycles", &[max_n]) => Family::Cycles { max_n },
        ("complete", &[max_n]) => Family::Complete { max_n },
        ("complete_bipartite", &[max_n]) => Family::CompleteBipartite { max_n },
        ("random_regular", &[n, d, count]) => Family::RandomRegular { n, d, count, seed },
        _ => return Err(Failure::Input(format!("bad family '{arg}'"))),
    })
}
