//! `sizeramsey`: arrowing checks, constructions, formula tables, audits and
//! exact searches for star-versus-clique size Ramsey numbers.
//!
//! Exit codes: 0 success, 1 negative verdict from a check, 2 usage or input
//! error, 3 search budget exceeded.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sizeramsey::arrowing::{arrows_with, EngineConfig, TwoColouring};
use sizeramsey::extremal::{
    compute_rhat, compute_rhat_star, conjecture_gap_report, erdos_graph, extremal_candidate, SearchConfig,
    SearchOutcome,
};
use sizeramsey::formulas::{audit_one, formula_row, Grid, Inequality, NPolicy, NStart, Params};
use sizeramsey::graph::{parse_edge_list, parse_graph6, to_edge_list, to_graph6};
use sizeramsey::lemmas::{
    disjoint_packing, good_colouring, mindeg_or_matching, peel_cascade, peel_t, redundant_vertices, DichotomyKind,
};
use sizeramsey::{Error, Exec, Graph, VertexSet};

const EXAMPLES: &str = "\
Examples:
  sizeramsey arrows --k 2 --n 3 --graph K5.g6          ARROWS, exit 0
  sizeramsey witness --k 2 --n 3 --graph K4.g6         good colouring, exit 1
  sizeramsey formulas --k 2 --n 3                      r=5 r̂*=8 pikhurko_lb=4
  sizeramsey rhat --k 2 --n 3                          k=2 n=3 rhat=8 exact=true
  sizeramsey rhat-star --k 3 --n 3                     k=3 n=3 rhat*=18 exact=true
  sizeramsey audit --k-min 2 --k-max 6                 one OK/FAIL line per statement
  sizeramsey construct --k 3 --n 3                     extremal candidate in graph6
  sizeramsey lemma colouring --k 2 --n 3 --ell 0 --graph G.txt
  sizeramsey lemma packing --k 2 --n 11 --t 1 --graph H.g6
  sizeramsey peel --k 2 --n 3 --graph K5.g6
  sizeramsey report --k 3 --n 3

Graph files hold graph6 or the edge-list format ('p <order> <edges>' then
one 'u v' line per edge). A first byte of 'p' or '#' selects edge-list;
--format overrides the detection. '--graph -' reads standard input.";

#[derive(Parser, Debug)]
#[command(name = "sizeramsey", version, about = "Size Ramsey workbench for stars versus cliques", after_help = EXAMPLES)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads; 1 runs everything sequentially.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Decide F -> (K_{1,k}, K_n); exit 1 when F does not arrow.
    Arrows(CheckArgs),
    /// Print a good colouring of F when one exists (exit 1), else exit 0.
    Witness(CheckArgs),
    /// Build the extremal candidate for (k, n), or the (k+1)-clique join when --n is absent.
    Construct {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        n: Option<u64>,
    },
    /// Closed-form values for one pair, or a table up to --k-max/--n-max.
    Formulas {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k_max: Option<u64>,
        #[arg(long)]
        n_max: Option<u64>,
    },
    /// Check the proof inequalities exactly over a grid; exit 1 on any violation.
    Audit(AuditArgs),
    /// Exact r̂ by enumerating connected graphs up to --max-edges edges.
    Rhat(SearchArgs),
    /// Exact r̂* by enumerating subgraphs of the complete graph on r vertices.
    RhatStar(SearchArgs),
    /// Run one constructive lemma on a graph.
    Lemma(LemmaArgs),
    /// Peel a graph once, or run the full cascade when --n is given.
    Peel {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        input: GraphInput,
    },
    /// Compare computed r̂ and r̂* with the closed forms for all k, n up to the given values.
    Report(SearchArgs),
}

#[derive(Args, Debug)]
struct GraphInput {
    /// Graph file (graph6 or edge list); '-' for standard input.
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Auto)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Auto,
    Graph6,
    Edges,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    input: GraphInput,
    /// Largest component, in edges, the engine will search.
    #[arg(long, default_value_t = sizeramsey::arrowing::DEFAULT_EDGE_BUDGET)]
    budget_edges: usize,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    k: u64,
    #[arg(long)]
    n: u64,
    /// Largest edge count enumerated by the r̂ search.
    #[arg(long, default_value_t = 10)]
    max_edges: usize,
    /// Largest component, in edges, the engine will search.
    #[arg(long, default_value_t = sizeramsey::arrowing::DEFAULT_EDGE_BUDGET)]
    budget_edges: usize,
}

#[derive(Args, Debug)]
struct AuditArgs {
    #[arg(long, default_value_t = 2)]
    k_min: u64,
    #[arg(long, default_value_t = 6)]
    k_max: u64,
    /// Start every row at this n instead of the large-n threshold.
    #[arg(long)]
    n: Option<u64>,
    /// Number of consecutive n values per k.
    #[arg(long, default_value_t = 50)]
    window: u64,
    /// Restrict to these statements (repeatable); all by default.
    #[arg(long = "inequality")]
    inequalities: Vec<String>,
}

#[derive(Args, Debug)]
struct LemmaArgs {
    #[arg(value_enum)]
    which: LemmaKind,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Number of extra vertices over r for the packing host.
    #[arg(long)]
    t: Option<usize>,
    /// Expected order offset over r for the colouring host.
    #[arg(long)]
    ell: Option<usize>,
    #[command(flatten)]
    input: GraphInput,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum LemmaKind {
    /// k+1 vertices of minimum degree one, or a matching.
    Dichotomy,
    /// t+1 disjoint parts of size k+1.
    Packing,
    /// Good colouring built from a packing of the complement.
    Colouring,
    /// Vertices lying in no n-clique.
    Redundant,
}

enum Failure {
    Usage(String),
    Module(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Module(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Module(Error::BudgetExceeded(_) | Error::Ceiling { .. }) => 3,
            _ => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Io(m) => m.clone(),
            Failure::Module(e) => e.to_string(),
        }
    }
}

type Outcome = Result<bool, Failure>;

struct Ctx {
    json: bool,
    exec: Exec,
}

impl Ctx {
    fn emit<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) -> Result<(), Failure> {
        let body = if self.json { serde_json::to_string_pretty(value)? } else { text() };
        match writeln!(io::stdout().lock(), "{body}") {
            Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(Failure::Io(e.to_string())),
            _ => Ok(()),
        }
    }

    fn engine(&self, budget_edges: usize) -> EngineConfig {
        EngineConfig { max_edges: budget_edges, exec: self.exec, ..EngineConfig::default() }
    }

    fn search(&self, args: &SearchArgs) -> SearchConfig {
        let mut engine = self.engine(args.budget_edges);
        engine.exec = Exec::Sequential;
        SearchConfig { engine, max_edges: args.max_edges, exec: self.exec }
    }
}

fn read_graph(input: &GraphInput) -> Result<Graph, Failure> {
    let text = if input.graph.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Io(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(&input.graph).map_err(|e| Failure::Io(format!("{}: {e}", input.graph.display())))?
    };
    parse_graph(&text, input.format).map_err(Failure::from)
}

fn parse_graph(text: &str, format: Format) -> sizeramsey::Result<Graph> {
    let edges = match format {
        Format::Edges => true,
        Format::Graph6 => false,
        Format::Auto => matches!(text.trim_start().bytes().next(), Some(b'p' | b'#')),
    };
    if edges {
        parse_edge_list(text)
    } else {
        parse_graph6(text.trim())
    }
}

fn set(s: VertexSet) -> String {
    let items: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn edge_text(edges: &[(usize, usize)]) -> String {
    if edges.is_empty() {
        return "(none)".into();
    }
    edges.iter().map(|(u, v)| format!("{u}-{v}")).collect::<Vec<_>>().join(" ")
}

fn colouring_text(c: &TwoColouring) -> String {
    let red = c.red_edges();
    let blue: Vec<_> = c.host().edges().into_iter().filter(|&(u, v)| !c.is_red(u, v)).collect();
    format!("red:  {}\nblue: {}", edge_text(&red), edge_text(&blue))
}

fn require<T>(value: Option<T>, flag: &str, verb: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("{verb} needs {flag}")))
}

fn params(k: u64, n: u64) -> Result<Params, Failure> {
    Ok(Params::new(k, n)?)
}

fn run(cli: Cli) -> Outcome {
    let exec = if cli.threads == Some(1) { Exec::Sequential } else { Exec::Parallel };
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(Failure::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Failure::Io(e.to_string()))?;
    }
    let ctx = Ctx { json: cli.json, exec };
    match cli.verb {
        Verb::Arrows(a) => {
            let g = read_graph(&a.input)?;
            let d = arrows_with(&g, a.k, a.n, &ctx.engine(a.budget_edges))?;
            ctx.emit(&d, || {
                let verdict = if d.arrows { "ARROWS" } else { "DOES NOT ARROW" };
                format!("{verdict}\nnodes={} conflicts={}", d.stats.nodes, d.stats.conflicts)
            })?;
            Ok(d.arrows)
        }
        Verb::Witness(a) => {
            let g = read_graph(&a.input)?;
            let d = arrows_with(&g, a.k, a.n, &ctx.engine(a.budget_edges))?;
            ctx.emit(&d.certificate, || match &d.certificate {
                Some(c) => format!("GOOD COLOURING (k={}, n={})\n{}", a.k, a.n, colouring_text(c)),
                None => "ARROWS: no good colouring exists".into(),
            })?;
            Ok(d.arrows)
        }
        Verb::Construct { k, n } => {
            let g = match n {
                Some(n) => extremal_candidate(params(k, n)?)?,
                None => erdos_graph(k as usize)?,
            };
            let out = ConstructOut { graph6: to_graph6(&g), order: g.order(), edges: g.edge_count(), graph: &g };
            ctx.emit(&out, || format!("{}\norder={} edges={}\n{}", out.graph6, out.order, out.edges, to_edge_list(&g).trim_end()))?;
            Ok(true)
        }
        Verb::Formulas { k, n, k_max, n_max } => {
            let mut rows = Vec::new();
            for k in k..=k_max.unwrap_or(k).max(k) {
                for n in n..=n_max.unwrap_or(n).max(n) {
                    rows.push(formula_row(params(k, n)?)?);
                }
            }
            ctx.emit(&rows, || {
                rows.iter()
                    .map(|r| {
                        let large = r.rhat_theorem3.map_or("-".to_string(), |v| v.to_string());
                        format!(
                            "k={} n={} r={} r̂*={} r̂(large n)={} f={} R'={} pikhurko_lb={} C(r,2)={}",
                            r.k, r.n, r.ramsey, r.rhat_star, large, r.f_threshold, r.r_prime, r.edge_lower_bound,
                            r.complete_graph_edges
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            })?;
            Ok(true)
        }
        Verb::Audit(a) => audit(&ctx, a),
        Verb::Rhat(a) => {
            let out = compute_rhat(params(a.k, a.n)?, &ctx.search(&a))?;
            ctx.emit(&out, || outcome_text("rhat", &out))?;
            Ok(true)
        }
        Verb::RhatStar(a) => {
            let out = compute_rhat_star(params(a.k, a.n)?, &ctx.search(&a))?;
            ctx.emit(&out, || outcome_text("rhat*", &out))?;
            Ok(true)
        }
        Verb::Lemma(a) => lemma(&ctx, a),
        Verb::Peel { k, n, input } => {
            let g = read_graph(&input)?;
            match n {
                None => {
                    let p = peel_t(&g, k)?;
                    ctx.emit(&p, || match &p {
                        Some(p) => format!("T={} B={} minimal={}", set(p.t), set(p.b), p.minimal),
                        None => "no peel".into(),
                    })?;
                    Ok(p.is_some())
                }
                Some(n) => {
                    let layers = peel_cascade(&g, k, n)?;
                    ctx.emit(&layers, || {
                        layers
                            .iter()
                            .map(|l| {
                                format!(
                                    "step={} |T|={} |B|={} surplus={} minimal={} T={}",
                                    l.step,
                                    l.t.len(),
                                    l.b.len(),
                                    l.surplus,
                                    l.minimal,
                                    set(l.t)
                                )
                            })
                            .collect::<Vec<_>>()
                            .join("\n")
                    })?;
                    Ok(!layers.is_empty())
                }
            }
        }
        Verb::Report(a) => {
            let report = conjecture_gap_report(a.k, a.n, &ctx.search(&a))?;
            ctx.emit(&report, || {
                let opt = |v: Option<u64>| v.map_or("-".to_string(), |v| v.to_string());
                let mut lines: Vec<String> = report
                    .rows
                    .iter()
                    .map(|r| {
                        format!(
                            "k={} n={} rhat={} rhat*={} closed_form={} large_n={} equal={} status={}",
                            r.k,
                            r.n,
                            opt(r.rhat),
                            opt(r.rhat_star),
                            r.closed_form,
                            opt(r.large_n_form),
                            r.equal.map_or("-".to_string(), |e| e.to_string()),
                            r.status
                        )
                    })
                    .collect();
                lines.push(report.note.clone());
                lines.join("\n")
            })?;
            Ok(true)
        }
    }
}

#[derive(Serialize)]
struct ConstructOut<'a> {
    graph6: String,
    order: usize,
    edges: usize,
    graph: &'a Graph,
}

fn outcome_text(name: &str, out: &SearchOutcome) -> String {
    match out {
        SearchOutcome::Exact(r) => format!(
            "k={} n={} {name}={} exact=true\nwitness={} classes_checked={}\n{}",
            r.params.k, r.params.n, r.value, r.witness, r.classes_checked, r.exhausted
        ),
        SearchOutcome::Bounds(b) => format!(
            "k={} n={} {name}>={} {name}<={} exact=false\nclasses_checked={}\n{}",
            b.params.k,
            b.params.n,
            b.lower,
            b.upper.map_or("?".to_string(), |u| u.to_string()),
            b.classes_checked,
            b.reason
        ),
    }
}

fn audit(ctx: &Ctx, a: AuditArgs) -> Outcome {
    let start = match a.n {
        Some(n) => NStart::Fixed(n),
        None => NStart::Threshold,
    };
    let mut grid = Grid::new(a.k_min, a.k_max, NPolicy { start, window: a.window });
    grid.exec = ctx.exec;
    let chosen: Vec<Inequality> = if a.inequalities.is_empty() {
        Inequality::ALL.to_vec()
    } else {
        a.inequalities
            .iter()
            .map(|id| Inequality::from_id(id).ok_or_else(|| Failure::Usage(format!("unknown inequality {id:?}"))))
            .collect::<Result<_, _>>()?
    };
    let reports = chosen.iter().map(|&i| audit_one(i, &grid)).collect::<sizeramsey::Result<Vec<_>>>()?;
    ctx.emit(&reports, || {
        let mut lines = Vec::new();
        for r in &reports {
            let verdict = if r.is_clean() { "OK" } else { "FAIL" };
            lines.push(format!(
                "{:<30} {verdict} ({} violations over {} points)",
                r.inequality.id(),
                r.violations.len(),
                r.points
            ));
            for v in r.violations.iter().take(5) {
                let at = v.index.map_or(String::new(), |j| format!(" j={j}"));
                lines.push(format!("    k={} n={}{at}: lhs={} rhs={}", v.k, v.n, v.lhs, v.rhs));
            }
        }
        lines.join("\n")
    })?;
    Ok(reports.iter().all(|r| r.is_clean()))
}

fn lemma(ctx: &Ctx, a: LemmaArgs) -> Outcome {
    let g = read_graph(&a.input)?;
    match a.which {
        LemmaKind::Dichotomy => {
            let k = require(a.k, "--k", "dichotomy")?;
            let r = mindeg_or_matching(&g, k)?;
            ctx.emit(&r, || match r.kind {
                DichotomyKind::MindegSubset => format!("subset {}", set(r.subset.unwrap_or_default())),
                DichotomyKind::Matching => format!("matching with {} edges", r.matching_size.unwrap_or(0)),
            })?;
            Ok(true)
        }
        LemmaKind::Packing => {
            let k = require(a.k, "--k", "packing")?;
            let n = require(a.n, "--n", "packing")?;
            let t = require(a.t, "--t", "packing")?;
            let p = disjoint_packing(&g, k, n, t)?;
            ctx.emit(&p, || p.parts.iter().enumerate().map(|(i, &s)| format!("part {i}: {}", set(s))).collect::<Vec<_>>().join("\n"))?;
            Ok(true)
        }
        LemmaKind::Colouring => {
            let k = require(a.k, "--k", "colouring")?;
            let n = require(a.n, "--n", "colouring")?;
            if let Some(ell) = a.ell {
                let r = k * n.saturating_sub(1) + 1;
                if g.order() != r + ell {
                    return Err(Failure::Usage(format!("graph has order {}, expected r + ell = {}", g.order(), r + ell)));
                }
            }
            let c = good_colouring(&g, k, n)?;
            ctx.emit(&c, || match &c {
                Some(c) => format!("GOOD COLOURING (k={k}, n={n})\n{}", colouring_text(c)),
                None => "no colouring: the complement is below the packing threshold".into(),
            })?;
            Ok(c.is_some())
        }
        LemmaKind::Redundant => {
            let n = require(a.n, "--n", "redundant")?;
            let r = redundant_vertices(&g, n)?;
            ctx.emit(&r, || set(r))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_detection() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(parse_graph(&to_graph6(&k3), Format::Auto).unwrap(), k3);
        assert_eq!(parse_graph(&to_edge_list(&k3), Format::Auto).unwrap(), k3);
        assert_eq!(parse_graph("# triangle\np 3 3\n0 1\n0 2\n1 2\n", Format::Auto).unwrap(), k3);
        assert!(parse_graph("Bw", Format::Edges).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Failure::Module(Error::BudgetExceeded("x".into())).code(), 3);
        assert_eq!(Failure::Module(Error::Parse("x".into())).code(), 2);
        assert_eq!(Failure::Usage("x".into()).code(), 2);
    }

    #[test]
    fn set_rendering() {
        assert_eq!(set(VertexSet::from_bits(0b1011)), "{0, 1, 3}");
        assert_eq!(edge_text(&[]), "(none)");
    }
}
