use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use linforest::forest::{hc_construct, max_linear_forest};
use linforest::generate::DEFAULT_ENUMERATION_CAP;
use linforest::graph::{line_graph, normalize, parse_graph, to_dot, Edge, Graph};
use linforest::oracle::{Oracle, OracleCaps, OracleResult, Witness};
use linforest::tree::{diameter, root_at_center, RootedTree};
use linforest::verify::{verify_theorems, ExchangeSampling, VerifyConfig};

mod family;

/// Largest `--cap-n` accepted; 11^9 labeled trees is already out of reach.
const MAX_ENUMERATION_N: usize = 10;
const COMPUTE_SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(author, version, about = "Linear forests, Hamiltonian completion and line-graph decycling of trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Seed for every random choice.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output file (default: standard output).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Largest graph order (and edge count) handed to exact oracles.
    #[arg(long, global = true)]
    cap_oracle: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph from a family spec and print n, m, d.
    Gen {
        family: String,
        params: Vec<String>,
    },
    /// Compute one quantity of a graph.
    Compute {
        #[arg(value_enum)]
        quantity: Quantity,
        #[command(flatten)]
        source: Source,
        /// Apply the quantity to the line graph L(G).
        #[arg(long)]
        of_linegraph: bool,
    },
    /// Check every bound over all labeled trees up to N vertices.
    Verify {
        n_max: usize,
        /// Enumeration cap; N above it is rejected.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap_n: usize,
        /// Lower every upper bound by one; the run must then fail.
        #[arg(long)]
        mutate_bounds: bool,
        /// Leaf pairs exchanged per tree; 0 checks all ordered pairs.
        #[arg(long, default_value_t = 4)]
        exchange_pairs: usize,
    },
    /// Write the line graph as an edge list.
    Linegraph {
        #[command(flatten)]
        source: Source,
    },
    /// Write a graph in DOT, optionally highlighting a witness.
    Dot {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Highlight::None)]
        highlight: Highlight,
        #[arg(long)]
        of_linegraph: bool,
    },
}

#[derive(Args)]
struct Source {
    /// Edge-list file, or `-` for standard input.
    input: Option<PathBuf>,
    /// Inline generator spec instead of a file, e.g. "perfect-kary 2 3".
    #[arg(long = "gen", conflicts_with = "input")]
    spec: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Quantity {
    L,
    Hc,
    HcConstruct,
    Linegraph,
    Decycling,
    LongestPath,
    InducedForest,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Highlight {
    None,
    Forest,
    Path,
}

/// Run outcome that is not an error but must be reported in the exit code.
enum Status {
    Ok,
    Violations,
}

fn load(source: &Source, seed: Option<u64>) -> Result<Graph> {
    if let Some(spec) = &source.spec {
        return family::build_inline(spec, seed);
    }
    let path = source.input.as_deref().ok_or_else(|| anyhow!("need an input file or --gen SPEC"))?;
    let text = if path == Path::new("-") {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn oracle_for(cap: Option<usize>) -> Oracle {
    let caps = match cap {
        Some(c) => OracleCaps { vertices: c, edges: c, ..OracleCaps::default() },
        None => OracleCaps::default(),
    };
    Oracle::new(caps)
}

fn stats_line(g: &Graph) -> String {
    if g.is_tree() {
        format!("n={} m={} d={}", g.n(), g.m(), diameter(g))
    } else {
        format!("n={} m={}", g.n(), g.m())
    }
}

fn cmd_gen(cli: &Cli, family: &str, params: &[String]) -> Result<Status> {
    let g = family::build(family, params, cli.seed)?;
    let body = match cli.format {
        Format::Dot => to_dot(&g, &[])?,
        _ => g.to_edge_list(),
    };
    emit(cli.out.as_deref(), &body)?;
    if cli.out.is_some() {
        println!("{}", stats_line(&g));
    } else {
        eprintln!("{}", stats_line(&g));
    }
    Ok(Status::Ok)
}

/// One computed value; `witness` is rendered per kind.
struct Row {
    label: String,
    value: usize,
    method: &'static str,
    witness: Option<Witness>,
}

fn render_witness(w: &Witness) -> String {
    match w {
        Witness::Vertices(vs) => vs.iter().map(usize::to_string).collect::<Vec<_>>().join(" "),
        Witness::Edges(es) => es.iter().map(|(u, v)| format!("{u}-{v}")).collect::<Vec<_>>().join(" "),
        Witness::Walk(walk) => walk.iter().map(usize::to_string).collect::<Vec<_>>().join("-"),
    }
}

fn witness_edges(g: &Graph, w: &Witness) -> Vec<Edge> {
    match w {
        Witness::Edges(es) => es.clone(),
        Witness::Walk(walk) => walk.windows(2).map(|p| normalize(p[0], p[1])).filter(|&(u, v)| g.has_edge(u, v)).collect(),
        Witness::Vertices(vs) => g
            .edges()
            .iter()
            .copied()
            .filter(|(u, v)| vs.contains(u) && vs.contains(v))
            .collect(),
    }
}

fn rooted(g: &Graph) -> Result<RootedTree> {
    Ok(root_at_center(g.clone())?)
}

fn dp_forest(g: &Graph) -> Result<OracleResult> {
    let forest = max_linear_forest(&rooted(g)?).best;
    Ok(OracleResult { value: forest.len(), witness: Witness::Edges(forest.edges().to_vec()) })
}

fn row(label: String, method: &'static str, r: OracleResult) -> Row {
    Row { label, value: r.value, method, witness: Some(r.witness) }
}

fn compute_rows(g: &Graph, quantity: Quantity, of_linegraph: bool, oracle: &Oracle) -> Result<Vec<Row>> {
    let lg = line_graph(g);
    let target = if of_linegraph { &lg.graph } else { g };
    let suffix = if of_linegraph { "(L)" } else { "" };
    let tree = target.is_tree();
    let rows = match quantity {
        Quantity::L if tree => vec![row(format!("l{suffix}"), "dp", dp_forest(target)?)],
        Quantity::L => vec![row(format!("l{suffix}"), "oracle", oracle.max_linear_forest(target)?)],
        Quantity::Hc if tree && target.n() >= 2 => {
            let l = dp_forest(target)?.value;
            vec![Row { label: format!("hc{suffix}"), value: target.n() - l, method: "dp", witness: None }]
        }
        Quantity::Hc => vec![row(format!("hc{suffix}"), "oracle", oracle.hc(target)?)],
        Quantity::HcConstruct => {
            if !tree {
                bail!("hc-construct needs a tree; this graph has n={} m={}", target.n(), target.m());
            }
            let done = hc_construct(target)?;
            vec![
                Row {
                    label: format!("added{suffix}"),
                    value: done.added_edges.len(),
                    method: "construct",
                    witness: Some(Witness::Edges(done.added_edges)),
                },
                Row {
                    label: format!("cycle{suffix}"),
                    value: done.cycle.len(),
                    method: "construct",
                    witness: Some(Witness::Walk(done.cycle)),
                },
            ]
        }
        Quantity::Linegraph => vec![
            Row { label: "n(L)".into(), value: lg.graph.n(), method: "exact", witness: None },
            Row { label: "m(L)".into(), value: lg.graph.m(), method: "exact", witness: None },
        ],
        Quantity::Decycling => {
            let mut rows = Vec::new();
            if of_linegraph && g.is_tree() {
                let l = dp_forest(g)?.value;
                rows.push(Row { label: "∇(L)".into(), value: g.n() - 1 - l, method: "dp", witness: None });
                if target.n() <= oracle.caps.vertices {
                    rows.push(row("∇(L)".into(), "oracle", oracle.decycling_number(target)?));
                }
            } else {
                rows.push(row(format!("∇{suffix}"), "oracle", oracle.decycling_number(target)?));
            }
            rows
        }
        Quantity::LongestPath if tree => {
            let t = rooted(target)?;
            let far = |from: usize| {
                let t = RootedTree::new(target.clone(), from).expect("tree");
                (0..target.n()).max_by_key(|&v| (t.depth(v), std::cmp::Reverse(v))).expect("non-empty")
            };
            let a = far(t.root());
            let b = far(a);
            let walk = RootedTree::new(target.clone(), a)?.path(a, b);
            vec![Row { label: format!("p{suffix}"), value: walk.len() - 1, method: "bfs", witness: Some(Witness::Walk(walk)) }]
        }
        Quantity::LongestPath => vec![row(format!("p{suffix}"), "oracle", oracle.longest_path(target)?)],
        Quantity::InducedForest => vec![row(format!("f{suffix}"), "oracle", oracle.max_induced_forest(target)?)],
    };
    Ok(rows)
}

fn cmd_compute(cli: &Cli, source: &Source, quantity: Quantity, of_linegraph: bool) -> Result<Status> {
    let g = load(source, cli.seed)?;
    let oracle = oracle_for(cli.cap_oracle);
    let rows = compute_rows(&g, quantity, of_linegraph, &oracle)?;
    let body = match cli.format {
        Format::Text => {
            let mut out = String::new();
            let mut last: Option<&str> = None;
            for r in &rows {
                if last == Some(r.label.as_str()) {
                    let _ = write!(out, " ={} ({})", r.value, r.method);
                } else {
                    if last.is_some() {
                        out.push('\n');
                    }
                    let _ = write!(out, "{}={} ({})", r.label, r.value, r.method);
                }
                last = Some(&r.label);
            }
            out.push('\n');
            for r in &rows {
                if let Some(w) = &r.witness {
                    let _ = writeln!(out, "witness {}: {}", r.label, render_witness(w));
                }
            }
            out
        }
        Format::Csv => {
            let mut out = format!("# linforest compute schema {COMPUTE_SCHEMA_VERSION}\nquantity,value,method,witness\n");
            for r in &rows {
                let w = r.witness.as_ref().map(render_witness).unwrap_or_default();
                let _ = writeln!(out, "{},{},{},{}", r.label, r.value, r.method, w);
            }
            out
        }
        Format::Dot => {
            let target = if of_linegraph { line_graph(&g).graph } else { g.clone() };
            let highlight = rows
                .iter()
                .filter_map(|r| r.witness.as_ref())
                .find(|w| !matches!(w, Witness::Vertices(_)) || quantity == Quantity::InducedForest)
                .map(|w| witness_edges(&target, w))
                .unwrap_or_default();
            to_dot(&target, &highlight)?
        }
    };
    emit(cli.out.as_deref(), &body)?;
    Ok(Status::Ok)
}

fn cmd_verify(cli: &Cli, n_max: usize, cap_n: usize, mutate: bool, exchange_pairs: usize) -> Result<Status> {
    if cap_n > MAX_ENUMERATION_N {
        bail!("--cap-n {cap_n} exceeds the compiled limit {MAX_ENUMERATION_N}");
    }
    if n_max > cap_n {
        bail!("n_max {n_max} exceeds the enumeration cap {cap_n}");
    }
    let mut cfg = VerifyConfig::new(n_max);
    cfg.enumeration_cap = cap_n;
    cfg.mutate_bounds = mutate;
    cfg.seed = cli.seed.unwrap_or(0);
    cfg.exchange = if exchange_pairs == 0 { ExchangeSampling::All } else { ExchangeSampling::PerTree(exchange_pairs) };
    if let Some(cap) = cli.cap_oracle {
        cfg.oracle_max_m = cap.min(linforest::oracle::MAX_VERTEX_CAP);
    }
    let summary = verify_theorems(&cfg)?;
    let body = match cli.format {
        Format::Csv => summary.to_csv(),
        Format::Text => summary.to_text(),
        Format::Dot => bail!("verify writes text or csv"),
    };
    emit(cli.out.as_deref(), &body)?;
    if cli.out.is_some() {
        println!("{}", body.lines().last().unwrap_or_default());
    }
    Ok(if summary.is_clean() { Status::Ok } else { Status::Violations })
}

fn cmd_linegraph(cli: &Cli, source: &Source) -> Result<Status> {
    let g = load(source, cli.seed)?;
    let lg = line_graph(&g);
    let body = match cli.format {
        Format::Dot => to_dot(&lg.graph, &[])?,
        _ => lg.graph.to_edge_list(),
    };
    emit(cli.out.as_deref(), &body)?;
    for (i, (u, v)) in lg.source.iter().enumerate() {
        eprintln!("vertex {i} = edge {u}-{v}");
    }
    Ok(Status::Ok)
}

fn cmd_dot(cli: &Cli, source: &Source, highlight: Highlight, of_linegraph: bool) -> Result<Status> {
    let g = load(source, cli.seed)?;
    let target = if of_linegraph { line_graph(&g).graph } else { g };
    let oracle = oracle_for(cli.cap_oracle);
    let marked = match highlight {
        Highlight::None => Vec::new(),
        Highlight::Forest => {
            let q = compute_rows(&target, Quantity::L, false, &oracle)?;
            witness_edges(&target, q[0].witness.as_ref().expect("l has a witness"))
        }
        Highlight::Path => {
            let q = compute_rows(&target, Quantity::LongestPath, false, &oracle)?;
            witness_edges(&target, q[0].witness.as_ref().expect("p has a witness"))
        }
    };
    emit(cli.out.as_deref(), &to_dot(&target, &marked)?)?;
    Ok(Status::Ok)
}

fn run(cli: &Cli) -> Result<Status> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    match &cli.command {
        Command::Gen { family, params } => cmd_gen(cli, family, params),
        Command::Compute { source, quantity, of_linegraph } => cmd_compute(cli, source, *quantity, *of_linegraph),
        Command::Verify { n_max, cap_n, mutate_bounds, exchange_pairs } => {
            cmd_verify(cli, *n_max, *cap_n, *mutate_bounds, *exchange_pairs)
        }
        Command::Linegraph { source } => cmd_linegraph(cli, source),
        Command::Dot { source, highlight, of_linegraph } => cmd_dot(cli, source, *highlight, *of_linegraph),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Violations) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
