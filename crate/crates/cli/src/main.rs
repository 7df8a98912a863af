//! `anchorset`: degenerate triangles, saturation closures and metric
//! realizability from the command line.
//!
//! Every subcommand reads JSON from a file argument or standard input and
//! writes JSON to standard output (or `--output`). Exit status is 0 for an
//! affirmative or clean result, 1 for a negative verdict, 2 for errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anchorset_core::formats::{
    parse_certificate, parse_graph, parse_hypergraph, parse_matrix, parse_matrix_csv,
    parse_rational, write_certificate, write_graph, write_hypergraph, write_matrix,
    write_matrix_csv,
};
use anchorset_core::subset::binomial;
use anchorset_core::*;
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "anchorset", version, about = "Metric betweenness and weak hypergraph saturation")]
struct Cli {
    #[command(flatten)]
    opts: Options,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Options {
    /// Size of the k-subsets driving the closure rule.
    #[arg(short, long, default_value_t = 6, global = true)]
    k: usize,
    /// Uniformity of generated hypergraphs in sweeps.
    #[arg(short, long, default_value_t = 3, global = true)]
    r: usize,
    /// Maximum number of hypergraphs an exhaustive search may visit.
    #[arg(long, default_value_t = 1_000_000, global = true)]
    budget: u128,
    /// Seed for random generators and shuffled closures.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Worker threads for exhaustive searches (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Distance matrix format, for both input and output.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the result here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Accept distance matrices without checking the metric axioms.
    #[arg(long, global = true)]
    no_validate: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Degenerate triangles of a metric.
    Degenerate { metric: Option<PathBuf> },
    /// Weak saturation closure with its certificate.
    Close {
        hypergraph: Option<PathBuf>,
        /// Also write the bare certificate to this file.
        #[arg(long)]
        cert_out: Option<PathBuf>,
        /// Pick eligible k-subsets in seeded random order.
        #[arg(long)]
        shuffle: bool,
    },
    /// Replay a closure certificate.
    VerifyCert { certificate: Option<PathBuf> },
    /// Whether the closure reaches the complete hypergraph.
    Saturated { hypergraph: Option<PathBuf> },
    /// Whether the triples are certainly an anchor (via the closure).
    Anchor { hypergraph: Option<PathBuf> },
    /// A linear order realizing a collinear metric.
    Reconstruct { metric: Option<PathBuf> },
    /// Check that a metric refutes anchorhood of a hypergraph.
    WitnessCheck { hypergraph: PathBuf, metric: PathBuf },
    /// Decide whether a hypergraph is the degenerate-triangle set of a metric.
    Realize {
        hypergraph: Option<PathBuf>,
        /// Largest vertex count to attempt.
        #[arg(long, default_value_t = 6)]
        ceiling: usize,
    },
    /// Shortest-path metric of a graph.
    GraphMetric { graph: Option<PathBuf> },
    /// Generate standard inputs.
    #[command(subcommand)]
    Gen(Gen),
    /// Batch experiments.
    #[command(subcommand)]
    Sweep(Sweep),
}

#[derive(Subcommand)]
enum Gen {
    /// All triples meeting {0,1,2}.
    Star { n: usize },
    /// Theta graph metric, or the graph itself with --graph.
    Theta {
        n: usize,
        #[arg(long)]
        graph: bool,
    },
    /// The 4-cycle metric.
    Cycle4,
    /// Points on a line at comma-separated coordinates, e.g. `0,-1/2,3`.
    Line {
        #[arg(allow_hyphen_values = true)]
        coords: String,
    },
    /// A random rational L1 metric, deterministic in n and --seed.
    Random { n: usize },
}

#[derive(Subcommand)]
enum Sweep {
    /// Exhaustive check of the size C(n,3) - n + 5 and one below it.
    #[command(name = "theorem2", alias = "size-bound")]
    SizeBound {
        #[arg(long, default_value_t = 6)]
        from: usize,
        #[arg(long, default_value_t = 7)]
        to: usize,
    },
    /// Star construction sizes and saturation.
    #[command(name = "theorem3", alias = "stars")]
    Stars {
        #[arg(long, default_value_t = 5)]
        from: usize,
        #[arg(long, default_value_t = 10)]
        to: usize,
    },
    /// Smallest weakly saturated hypergraph size on n vertices.
    MinSat { n: usize },
    /// Menger rule on random metrics.
    Menger {
        #[arg(long, default_value_t = 1000)]
        count: u64,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
    /// Minimal non-metric audit of the 19-edge hypergraph on six vertices.
    Audit,
}

/// Result of a subcommand: the text to emit and whether it is affirmative.
struct Reply {
    text: String,
    affirmative: bool,
}

impl Reply {
    fn ok(text: String) -> Self {
        Self { text, affirmative: true }
    }

    fn json(value: &impl Serialize, affirmative: bool) -> Self {
        Self { text: serde_json::to_string(value).expect("output serializes"), affirmative }
    }
}

fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading standard input")?;
            Ok(s)
        }
    }
}

impl Options {
    fn metric(&self, path: Option<&Path>) -> Result<DistanceMatrix> {
        let text = read_input(path)?;
        let d = match self.format {
            Format::Json => parse_matrix(&text, !self.no_validate),
            Format::Csv => parse_matrix_csv(&text, !self.no_validate),
        };
        d.context("parsing distance matrix")
    }

    fn hypergraph(&self, path: Option<&Path>) -> Result<UniformHypergraph> {
        parse_hypergraph(&read_input(path)?).context("parsing hypergraph")
    }

    fn write_metric(&self, d: &DistanceMatrix) -> Reply {
        match self.format {
            Format::Json => Reply::ok(write_matrix(d)),
            Format::Csv => Reply::ok(write_matrix_csv(d)),
        }
    }

    fn search(&self) -> SearchOptions {
        SearchOptions { budget: self.budget, ..SearchOptions::default() }
    }
}

fn run(cli: &Cli) -> Result<Reply> {
    let o = &cli.opts;
    Ok(match &cli.command {
        Command::Degenerate { metric } => {
            let d = o.metric(metric.as_deref())?;
            Reply::ok(write_hypergraph(&degenerate_hypergraph(&d)?))
        }
        Command::Close { hypergraph, cert_out, shuffle } => {
            let h = o.hypergraph(hypergraph.as_deref())?;
            let order = if *shuffle { ProcessingOrder::Shuffled(o.seed) } else { ProcessingOrder::Canonical };
            let res = weak_saturation_closure_with_order(&h, o.k, order)?;
            if let Some(path) = cert_out {
                write_file(path, &write_certificate(&res.certificate))?;
            }
            Reply::json(&json!({ "closure": res.closure, "certificate": res.certificate }), true)
        }
        Command::VerifyCert { certificate } => {
            let text = read_input(certificate.as_deref())?;
            let value: Value = serde_json::from_str(&text).context("parsing certificate")?;
            // accept the output of `close` as well as a bare certificate
            let cert = match value.get("certificate") {
                Some(inner) => parse_certificate(&inner.to_string()),
                None => parse_certificate(&text),
            }
            .context("parsing certificate")?;
            let replayed = ClosureResult::replayed(&cert);
            let out = json!({
                "valid": replayed.is_some(),
                "steps": cert.steps.len(),
                "complete": replayed.as_ref().is_some_and(|h| h.is_complete()),
            });
            Reply::json(&out, replayed.is_some())
        }
        Command::Saturated { hypergraph } => {
            let h = o.hypergraph(hypergraph.as_deref())?;
            let saturated = is_weakly_saturated(&h, o.k)?;
            Reply::json(&json!({ "k": o.k, "saturated": saturated }), saturated)
        }
        Command::Anchor { hypergraph } => {
            let h = o.hypergraph(hypergraph.as_deref())?;
            let anchor = anchor_via_closure(&h)?;
            Reply::json(&json!({ "anchor": if anchor { "yes" } else { "unknown" } }), anchor)
        }
        Command::Reconstruct { metric } => {
            let d = o.metric(metric.as_deref())?;
            match reconstruct_line(&d) {
                Some(order) => {
                    let reversed = order.order.first() > order.order.last();
                    Reply::json(&json!({ "order": order.order, "reversed": reversed }), true)
                }
                None => Reply::json(&json!({ "order": null }), false),
            }
        }
        Command::WitnessCheck { hypergraph, metric } => {
            let h = o.hypergraph(Some(hypergraph))?;
            let d = o.metric(Some(metric))?;
            let ok = verify_non_anchor_witness(&h, &d)?;
            Reply::json(&json!({ "witness": ok }), ok)
        }
        Command::Realize { hypergraph, ceiling } => {
            let h = o.hypergraph(hypergraph.as_deref())?;
            if *ceiling > 6 {
                eprintln!("warning: the search is exponential in the edge count; n > 6 may not finish");
            }
            let verdict = is_metric_hypergraph_with_ceiling(&h, *ceiling)?;
            let metric = verdict.status == MetricStatus::Metric;
            Reply::json(&verdict, metric)
        }
        Command::GraphMetric { graph } => {
            let g = parse_graph(&read_input(graph.as_deref())?).context("parsing graph")?;
            o.write_metric(&graph_metric(&g)?)
        }
        Command::Gen(g) => gen(o, g)?,
        Command::Sweep(s) => sweep(o, s)?,
    })
}

fn gen(o: &Options, g: &Gen) -> Result<Reply> {
    Ok(match g {
        Gen::Star { n } => Reply::ok(write_hypergraph(&star_construction(*n)?)),
        Gen::Theta { n, graph } => {
            let g = theta_graph(*n)?;
            if *graph {
                Reply::ok(write_graph(&g))
            } else {
                o.write_metric(&graph_metric(&g)?)
            }
        }
        Gen::Cycle4 => o.write_metric(&four_cycle_metric()),
        Gen::Line { coords } => {
            let xs = coords.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
            o.write_metric(&line_metric(&xs)?)
        }
        Gen::Random { n } => {
            if *n == 0 {
                bail!("need at least one point");
            }
            o.write_metric(&random_rational_metric(*n, o.seed))
        }
    })
}

fn sweep(o: &Options, s: &Sweep) -> Result<Reply> {
    Ok(match s {
        Sweep::SizeBound { from, to } => {
            let mut rows = Vec::new();
            let mut clean = true;
            for n in (*from).max(6)..=*to {
                let size = binomial(n, 3) as usize - n + 5;
                let above = exhaustive_size_check(n, 3, 6, size, &o.search())?;
                let below = exhaustive_size_check(n, 3, 6, size - 1, &o.search())?;
                clean &= above.is_none() && below.is_some();
                rows.push(json!({
                    "n": n,
                    "size": size,
                    "all_saturated": above.is_none(),
                    "counterexample_below": below,
                }));
            }
            Reply::json(&rows, clean)
        }
        Sweep::Stars { from, to } => {
            let mut rows = Vec::new();
            let mut clean = true;
            for n in (*from).max(5)..=*to {
                let h = star_construction(n)?;
                let m = n as u64 - 2;
                let expected = 3 * (m * (m - 1) / 2) + 1;
                let saturated = is_weakly_saturated(&h, 6)?;
                clean &= saturated && h.len() as u64 == expected;
                rows.push(json!({ "n": n, "edges": h.len(), "expected": expected, "saturated": saturated }));
            }
            Reply::json(&rows, clean)
        }
        Sweep::MinSat { n } => {
            let min = min_saturation_search(*n, o.r, o.k, &o.search())?;
            Reply::json(&json!({ "n": n, "r": o.r, "k": o.k, "min_size": min }), true)
        }
        Sweep::Menger { count, max_n } => {
            if *max_n == 0 {
                bail!("--max-n must be positive");
            }
            let mut failures = Vec::new();
            for i in 0..*count {
                let seed = o.seed.wrapping_add(i);
                let n = 1 + (seed % *max_n as u64) as usize;
                let d = random_rational_metric(n, seed);
                let v = check_menger(&d);
                if !v.is_empty() {
                    failures.push(json!({ "seed": seed, "n": n, "violations": v }));
                }
            }
            let clean = failures.is_empty();
            Reply::json(&json!({ "checked": count, "failures": failures }), clean)
        }
        Sweep::Audit => {
            let report = minimal_nonmetric_audit()?;
            let minimal = report.is_minimal_non_metric();
            Reply::json(&report, minimal)
        }
    })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.opts.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let reply = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.opts.output {
        Some(path) => write_file(path, &reply.text),
        None => {
            let mut out = io::stdout().lock();
            let end = if reply.text.ends_with('\n') { "" } else { "\n" };
            write!(out, "{}{end}", reply.text).context("writing standard output")
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    ExitCode::from(if reply.affirmative { 0 } else { 1 })
}
