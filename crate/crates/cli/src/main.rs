//! `ttmap`: command-line front end for tt-core.
//!
//! Exit status: 0 when the question was decided (or the object built),
//! 2 when a search ran out of budget, 1 on usage, parse or input errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgMatches, CommandFactory, FromArgMatches, Parser, Subcommand};
use serde_json::{json, Map, Value};

use tt_core::abelian::GroupSpec;
use tt_core::delta::{
    chi_tt, delta, functor_f, integer_cone_member, rigid_search, tt_set_circuit_union, RigidBase,
    RigidSearchOptions, RigidSearchOutcome, CHI_TT_MAX,
};
use tt_core::graph::{circuit_union, named, parse_graph, product, subdivide_balanced, to_edge_list, Digraph};
use tt_core::hom::{chromatic_number, find_hom, homotens_pair, k5_target_check, nice_failure, HomOptions};
use tt_core::randlab::{estimate_fraction, Experiment, Predicate};
use tt_core::search::{Search, Verdict, DEFAULT_BUDGET};
use tt_core::suite::{run_suite, SuiteOptions};
use tt_core::ttmap::{
    compare, find_tt, g_invariant, is_cut_tt_z, is_tt, is_tt_rigid, tt_divisor_set, EdgeMap, Girth, SearchOptions,
};

#[derive(Parser, Debug)]
#[command(name = "ttmap", version, about = "Tension-continuous maps between finite graphs")]
struct Cli {
    /// Emit one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Node budget for searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget_nodes: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    verb: Verb,
}

/// Graph arguments accept a file (edge list or graph6) or a builtin name
/// such as `petersen`, `k_5`, `c_7`, `dc_9`, `p_4`, `q_3`.
#[derive(Subcommand, Debug)]
enum Verb {
    /// Is the edge map TT over the group?
    CheckTt {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        map: PathBuf,
        #[arg(long, default_value = "Z_2")]
        group: String,
    },
    /// Is the edge map cut-continuous over Z?
    CheckCutTt {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        map: PathBuf,
    },
    /// The set of n for which the map is TT_n.
    DivisorSet {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        map: PathBuf,
    },
    /// Search for a TT map G -> H.
    FindTt {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long, default_value = "Z_2")]
        group: String,
        /// Write the witness here instead of printing it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Place G and H in the TT quasi-order.
    Compare {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long, default_value = "Z_2")]
        group: String,
    },
    /// Is the identity the only TT self-map?
    Rigid {
        #[arg(long)]
        g: String,
        #[arg(long, default_value = "Z_2")]
        group: String,
    },
    /// Length of a shortest M-unbalanced circuit.
    Gm {
        #[arg(long)]
        g: String,
        #[arg(long, default_value = "Z_2")]
        group: String,
    },
    /// Search for a homomorphism G -> H.
    FindHom {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Chromatic number.
    Chi {
        #[arg(long)]
        g: String,
    },
    /// Least n with a TT_2 map into K_n.
    ChiTt {
        #[arg(long)]
        g: String,
        #[arg(long, default_value_t = CHI_TT_MAX)]
        nmax: usize,
    },
    /// The four clique conditions.
    Nice {
        #[arg(long)]
        g: String,
    },
    /// Is every TT_2 map G -> H induced by a homomorphism?
    HomotensPair {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
    },
    /// Is every TT_2 map K_5 -> H induced by an injective homomorphism?
    K5Check {
        #[arg(long)]
        h: String,
    },
    /// The graph Delta(H) whose homomorphisms encode TT_2 maps into H.
    Delta {
        #[arg(long)]
        h: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The image F(G) for a rigid base.
    FunctorF {
        #[arg(long)]
        g: String,
        /// Base file: an edge list followed by `marks p q r s`.
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Look for a triangle-free TT_2-rigid base.
    RigidSearch {
        #[arg(long, default_value_t = 12)]
        max_vertices: usize,
        #[arg(long, default_value_t = 7)]
        exhaustive_up_to: usize,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Is a in the cone of b_1..b_k modulo n?
    Cone {
        #[arg(long)]
        a: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<u64>,
        #[arg(long)]
        n: u64,
    },
    /// TT(G, H) for disjoint unions of oriented circuits.
    TtSetCircuits {
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<u64>,
        #[arg(long, default_value_t = 30)]
        nmax: u64,
    },
    /// Fraction of G(n, p) samples satisfying a predicate.
    Experiment {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// nice | tt-rigid-bounded
        #[arg(long, default_value = "nice")]
        predicate: String,
        /// Write each failing sample here as graph6.
        #[arg(long)]
        failures_dir: Option<PathBuf>,
    },
    /// Build a graph.
    Construct {
        #[command(subcommand)]
        kind: Construct,
    },
    /// Run the fourteen acceptance criteria.
    PaperSuite {
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// Replace each edge by an alternating path of odd length p.
    Subdivide {
        #[arg(long)]
        h: String,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tensor-style product H x R.
    Product {
        #[arg(long)]
        h: String,
        #[arg(long)]
        r: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Disjoint union of oriented circuits.
    Circuits {
        #[arg(long, value_delimiter = ',', required = true)]
        lengths: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Proof {
    Exhaustive,
    Budget,
    NotApplicable,
}

impl Proof {
    fn as_str(self) -> &'static str {
        match self {
            Proof::Exhaustive => "exhaustive",
            Proof::Budget => "budget",
            Proof::NotApplicable => "n/a",
        }
    }
}

struct Outcome {
    result: Value,
    /// Human-readable form of `result`.
    text: String,
    witness: Option<String>,
    proof: Proof,
    /// Where the witness goes instead of stdout.
    out: Option<PathBuf>,
}

impl Outcome {
    fn plain(result: Value, text: impl Into<String>) -> Self {
        Outcome { result, text: text.into(), witness: None, proof: Proof::NotApplicable, out: None }
    }

    fn with_witness(mut self, w: String, out: Option<PathBuf>) -> Self {
        self.witness = Some(w);
        self.out = out;
        self
    }

    fn proof(mut self, p: Proof) -> Self {
        self.proof = p;
        self
    }
}

type CliResult<T> = Result<T, String>;

fn load_graph(spec: &str) -> CliResult<Digraph> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| format!("{spec}: {e}"))?;
        return parse_graph(&text).map_err(|e| format!("{spec}: {e}"));
    }
    named(spec).ok_or_else(|| format!("{spec}: no such file or builtin graph"))
}

fn load_map(path: &Path, g: &Digraph, h: &Digraph) -> CliResult<EdgeMap> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    EdgeMap::parse(&text, g, h).map_err(|e| format!("{}: {e}", path.display()))
}

fn group(s: &str) -> CliResult<GroupSpec> {
    s.parse().map_err(|e| format!("group {s:?}: {e}"))
}

fn core<T>(r: tt_core::Result<T>) -> CliResult<T> {
    r.map_err(|e| e.to_string())
}

fn bool_verdict(v: Verdict<bool>) -> Outcome {
    match v {
        Verdict::Decided(b) => Outcome::plain(json!(b), b.to_string()).proof(Proof::Exhaustive),
        Verdict::Unknown => Outcome::plain(Value::Null, "unknown").proof(Proof::Budget),
    }
}

fn graph_outcome(g: &Digraph, out: Option<PathBuf>) -> Outcome {
    let text = format!("{} vertices, {} edges", g.vertex_count(), g.edge_count());
    Outcome::plain(json!({"vertices": g.vertex_count(), "edges": g.edge_count()}), text)
        .with_witness(to_edge_list(g), out)
}

fn search_outcome<T>(s: Search<T>, witness: impl FnOnce(T) -> String, out: Option<PathBuf>) -> Outcome {
    match s {
        Search::Found(w) => Outcome::plain(json!(true), "found").with_witness(witness(w), out),
        Search::Exhausted => Outcome::plain(json!(false), "none").proof(Proof::Exhaustive),
        Search::BudgetExceeded => Outcome::plain(Value::Null, "unknown").proof(Proof::Budget),
    }
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    let budget = cli.budget_nodes;
    let opts = SearchOptions { budget, threads: cli.threads.max(1) };
    Ok(match &cli.verb {
        Verb::CheckTt { g, h, map, group: m } => {
            let (g, h) = (load_graph(g)?, load_graph(h)?);
            let f = load_map(map, &g, &h)?;
            let b = core(is_tt(&g, &h, &f, &group(m)?))?;
            Outcome::plain(json!(b), b.to_string())
        }
        Verb::CheckCutTt { g, h, map } => {
            let (g, h) = (load_graph(g)?, load_graph(h)?);
            let f = load_map(map, &g, &h)?;
            let b = core(is_cut_tt_z(&g, &h, &f))?;
            Outcome::plain(json!(b), b.to_string())
        }
        Verb::DivisorSet { g, h, map } => {
            let (g, h) = (load_graph(g)?, load_graph(h)?);
            let f = load_map(map, &g, &h)?;
            let s = core(tt_divisor_set(&g, &h, &f))?.to_string();
            Outcome::plain(json!(s), s)
        }
        Verb::FindTt { g, h, group: m, out } => {
            let (g, h) = (load_graph(g)?, load_graph(h)?);
            search_outcome(core(find_tt(&g, &h, &group(m)?, &opts))?, |f| f.to_text(), out.clone())
        }
        Verb::Compare { g, h, group: m } => {
            let (g, h) = (load_graph(g)?, load_graph(h)?);
            match core(compare(&g, &h, &group(m)?, &opts))? {
                Verdict::Decided(r) => Outcome::plain(json!(r.to_string()), r.to_string()).proof(Proof::Exhaustive),
                Verdict::Unknown => Outcome::plain(Value::Null, "unknown").proof(Proof::Budget),
            }
        }
        Verb::Rigid { g, group: m } => bool_verdict(core(is_tt_rigid(&load_graph(g)?, &group(m)?, &opts))?),
        Verb::Gm { g, group: m } => match core(g_invariant(&load_graph(g)?, &group(m)?))? {
            Girth::Finite(k) => Outcome::plain(json!(k), k.to_string()),
            Girth::Infinite => Outcome::plain(json!("inf"), "inf"),
        },
        Verb::FindHom { g, h, out } => {
            let (g, h) = (load_graph(g)?, load_graph(h)?);
            let s = core(find_hom(&g, &h, &HomOptions { budget, ..HomOptions::default() }))?;
            search_outcome(s, |vm| vm.to_text(), out.clone())
        }
        Verb::Chi { g } => {
            let k = core(chromatic_number(&load_graph(g)?))?;
            Outcome::plain(json!(k), k.to_string())
        }
        Verb::ChiTt { g, nmax } => match core(chi_tt(&load_graph(g)?, *nmax, budget))? {
            Verdict::Decided(k) => Outcome::plain(json!(k), k.to_string()).proof(Proof::Exhaustive),
            Verdict::Unknown => Outcome::plain(Value::Null, "unknown").proof(Proof::Budget),
        },
        Verb::Nice { g } => match nice_failure(&load_graph(g)?) {
            None => Outcome::plain(json!(true), "true"),
            Some(why) => Outcome::plain(json!(false), "false").with_witness(format!("{why}\n"), None),
        },
        Verb::HomotensPair { g, h } => {
            let (g, h) = (load_graph(g)?, load_graph(h)?);
            homotens_outcome(core(homotens_pair(&g, &h, budget))?)
        }
        Verb::K5Check { h } => homotens_outcome(core(k5_target_check(&load_graph(h)?, budget))?),
        Verb::Delta { h, out } => graph_outcome(&core(delta(&load_graph(h)?))?, out.clone()),
        Verb::FunctorF { g, base, out } => {
            let text = fs::read_to_string(base).map_err(|e| format!("{}: {e}", base.display()))?;
            let base = RigidBase::parse(&text).map_err(|e| format!("{}: {e}", base.display()))?;
            graph_outcome(&core(functor_f(&load_graph(g)?, &base))?, out.clone())
        }
        Verb::RigidSearch { max_vertices, exhaustive_up_to, samples, out } => {
            let ropts = RigidSearchOptions {
                seed: cli.seed,
                exhaustive_up_to: *exhaustive_up_to,
                samples_per_order: *samples,
                budget,
            };
            let outcome = core(rigid_search(*max_vertices, &ropts))?;
            let text = outcome.to_string();
            match outcome {
                RigidSearchOutcome::Found { base, candidates } => Outcome::plain(
                    json!({"found": true, "vertices": base.graph.vertex_count(), "marks": base.marks, "candidates": candidates}),
                    text,
                )
                .with_witness(base.to_text(), out.clone()),
                RigidSearchOutcome::Exhausted { candidates } => {
                    Outcome::plain(json!({"found": false, "candidates": candidates}), text).proof(Proof::Exhaustive)
                }
                RigidSearchOutcome::NotFound { candidates, undecided } => Outcome::plain(
                    json!({"found": null, "candidates": candidates, "undecided": undecided}),
                    text,
                )
                .proof(Proof::Budget),
            }
        }
        Verb::Cone { a, b, n } => {
            let r = integer_cone_member(*a, b, *n);
            Outcome::plain(json!(r), r.to_string())
        }
        Verb::TtSetCircuits { a, b, nmax } => {
            let set = core(tt_set_circuit_union(a, b, *nmax))?;
            let inner: Vec<String> = set.iter().map(|x| x.to_string()).collect();
            Outcome::plain(json!(set), format!("{{{}}}", inner.join(",")))
        }
        Verb::Experiment { n, p, trials, predicate, failures_dir } => {
            let pred: Predicate = core(predicate.parse())?;
            let mut exp = Experiment::new(*n, *p, *trials, cli.seed, pred);
            exp.budget = budget;
            let r = core(estimate_fraction(&exp, cli.threads))?;
            if let Some(dir) = failures_dir {
                fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
                for f in &r.failures {
                    let path = dir.join(format!("trial_{}.g6", f.trial));
                    fs::write(&path, format!("{}\n", f.graph6)).map_err(|e| format!("{}: {e}", path.display()))?;
                }
            }
            let label = if pred == Predicate::Nice { "nice (=> homotens)" } else { "tt-rigid (bounded)" };
            let text = format!(
                "{label}: {}/{} = {:.4}, 95% interval [{:.4}, {:.4}], {} unknown",
                r.hits,
                r.hits + r.misses,
                r.fraction,
                r.interval.0,
                r.interval.1,
                r.unknown
            );
            let failures: Vec<Value> = r
                .failures
                .iter()
                .map(|f| json!({"trial": f.trial, "graph6": f.graph6, "reason": f.reason}))
                .collect();
            let proof = if r.unknown > 0 { Proof::Budget } else { Proof::NotApplicable };
            Outcome::plain(
                json!({
                    "predicate": label, "hits": r.hits, "misses": r.misses, "unknown": r.unknown,
                    "fraction": r.fraction, "interval": [r.interval.0, r.interval.1], "failures": failures,
                }),
                text,
            )
            .proof(proof)
        }
        Verb::Construct { kind } => match kind {
            Construct::Subdivide { h, p, out } => {
                graph_outcome(&core(subdivide_balanced(&load_graph(h)?, *p))?, out.clone())
            }
            Construct::Product { h, r, out } => graph_outcome(&product(&load_graph(h)?, &load_graph(r)?), out.clone()),
            Construct::Circuits { lengths, out } => graph_outcome(&core(circuit_union(lengths))?, out.clone()),
        },
        Verb::PaperSuite { only } => {
            let sopts = SuiteOptions { threads: cli.threads.max(1), only: only.clone(), ..SuiteOptions::default() };
            let quiet = cli.json;
            let results = run_suite(&sopts, |r| {
                if !quiet {
                    println!("{r}");
                }
            });
            let passed = results.iter().filter(|r| r.passed).count();
            let rows: Vec<Value> = results
                .iter()
                .map(|r| {
                    json!({"id": r.id, "title": r.title, "passed": r.passed, "detail": r.detail,
                           "elapsed_ms": r.elapsed.as_millis() as u64})
                })
                .collect();
            Outcome::plain(json!(rows), format!("{passed}/{} criteria passed", results.len()))
        }
    })
}

fn homotens_outcome(r: tt_core::hom::HomotensReport) -> Outcome {
    let holds = match r.verdict {
        Verdict::Decided(b) => json!(b),
        Verdict::Unknown => Value::Null,
    };
    let (text, proof) = match r.verdict {
        Verdict::Decided(true) => (format!("true ({} maps)", r.maps), Proof::Exhaustive),
        // a counterexample settles it regardless of how far the search got
        Verdict::Decided(false) => (format!("false (after {} maps)", r.maps), Proof::NotApplicable),
        Verdict::Unknown => (format!("unknown ({} maps checked)", r.maps), Proof::Budget),
    };
    let mut o = Outcome::plain(json!({"holds": holds, "maps": r.maps}), text).proof(proof);
    if let Some(f) = r.counterexample {
        o = o.with_witness(f.to_text(), None);
    }
    o
}

/// Explicitly given arguments of the innermost subcommand.
fn params(m: &ArgMatches) -> (String, Value) {
    let (mut name, mut m) = match m.subcommand() {
        Some((n, sub)) => (n.to_string(), sub),
        None => return (String::new(), Value::Null),
    };
    while let Some((n, sub)) = m.subcommand() {
        name = format!("{name} {n}");
        m = sub;
    }
    let mut out = Map::new();
    for id in m.ids() {
        let key = id.as_str();
        // derive-generated argument groups are named after the variant
        if matches!(key, "json" | "threads") || key.starts_with(|c: char| c.is_ascii_uppercase()) {
            continue;
        }
        let Some(vals) = m.get_raw(key) else { continue };
        let vals: Vec<String> = vals.map(|v| v.to_string_lossy().into_owned()).collect();
        let v = match vals.as_slice() {
            [one] => json!(one),
            many => json!(many),
        };
        out.insert(key.replace('_', "-"), v);
    }
    (name, Value::Object(out))
}

fn main() -> ExitCode {
    let matches = match Cli::command().try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    let (verb, params) = params(&matches);
    let start = Instant::now();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(msg) => {
            if cli.json {
                println!("{}", json!({"verb": verb, "params": params, "error": msg}));
            } else {
                eprintln!("ttmap: {msg}");
            }
            return ExitCode::from(1);
        }
    };
    let elapsed_ms = start.elapsed().as_millis() as u64;
    if let (Some(path), Some(w)) = (&outcome.out, &outcome.witness) {
        if let Err(e) = fs::write(path, w) {
            eprintln!("ttmap: {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    let mut stdout = std::io::stdout().lock();
    if cli.json {
        let doc = json!({
            "verb": verb,
            "params": params,
            "result": outcome.result,
            "witness": outcome.witness,
            "proof_status": outcome.proof.as_str(),
            "elapsed_ms": elapsed_ms,
        });
        let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&doc).expect("json"));
    } else {
        let _ = writeln!(stdout, "{}", outcome.text);
        if outcome.proof != Proof::NotApplicable {
            let _ = writeln!(stdout, "proof: {}", outcome.proof.as_str());
        }
        if let (None, Some(w)) = (&outcome.out, &outcome.witness) {
            let _ = write!(stdout, "{w}");
        }
    }
    ExitCode::from(if outcome.proof == Proof::Budget && outcome.result_undecided() { 2 } else { 0 })
}

impl Outcome {
    fn result_undecided(&self) -> bool {
        match &self.result {
            Value::Null => true,
            Value::Object(o) => o.values().any(Value::is_null) || o.get("unknown").is_some_and(|u| u != &json!(0)),
            _ => false,
        }
    }
}
