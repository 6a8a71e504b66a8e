//! Command-line front end: covering families, stable solvers, the multicut
//! sparsifier, brute-force oracles and instance generators.
//!
//! [`run`] takes the argument vector and returns the exit code together with
//! everything that would go to stdout and stderr, so tests can drive it
//! without spawning a process.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use stablecut::covering::{
    build_hash_family, build_lopsided_family, build_modulator_family, build_random_family, verify_covering,
    Construction, CoverageVerdict, CoveringFamily, FamilyOptions,
};
use stablecut::gen::{generate, InstanceSpec};
use stablecut::io::{format_set, parse_graph, parse_terminals, write_digraph, write_graph, write_terminals};
use stablecut::oracle::{self, OracleLimits, Problem};
use stablecut::rng::{DEFAULT_SEED, SEED_ENV};
use stablecut::solvers::{stable_dfvs, stable_multicut, stable_oct, stable_st_separator, Mode, Scope, SolveResult};
use stablecut::sparsifier::{degeneracy_reduce, Thresholds};
use stablecut::{AnyGraph, Digraph, TerminalPairs, UndirectedGraph, Vertex};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: stablecut::Error },
    #[error(transparent)]
    Core(#[from] stablecut::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "stablecut",
    version,
    about = "Independence covering families and stable cut solvers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a k-independence covering family for a graph.
    Cover(CoverArgs),
    /// Solve a stable cut problem.
    Solve(SolveArgs),
    /// Delete vertices that lie in no small minimal multicut.
    Sparsify(SparsifyArgs),
    /// Exhaustive reference answers for small graphs.
    Oracle {
        #[command(subcommand)]
        query: OracleQuery,
    },
    /// Generate an instance.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ConstructionArg {
    Lopsided,
    Hash,
    Random,
}

impl From<ConstructionArg> for Construction {
    fn from(c: ConstructionArg) -> Self {
        match c {
            ConstructionArg::Lopsided => Construction::Lopsided,
            ConstructionArg::Hash => Construction::Hash,
            ConstructionArg::Random => Construction::Random,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Rand,
    Det,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ProblemArg {
    Separator,
    Oct,
    Dfvs,
    Multicut,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScopeArg {
    Degenerate,
    General,
}

#[derive(Debug, Args)]
struct SeedArg {
    /// Base seed for randomized steps.
    #[arg(long, env = SEED_ENV, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Debug, Args)]
struct CoverArgs {
    graph: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value = "lopsided")]
    construction: ConstructionArg,
    /// Extend a family of G - S to G, for a comma-separated vertex set S.
    #[arg(long, value_delimiter = ',')]
    modulator: Option<Vec<Vertex>>,
    /// Check the covering property exhaustively; exit 1 if it fails.
    #[arg(long)]
    verify: bool,
    #[command(flatten)]
    seed: SeedArg,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(value_enum)]
    problem: ProblemArg,
    graph: PathBuf,
    /// Terminal pair file (multicut).
    #[arg(long)]
    terminals: Option<PathBuf>,
    /// Source vertex (separator).
    #[arg(long)]
    source: Option<Vertex>,
    /// Target vertex (separator).
    #[arg(long)]
    target: Option<Vertex>,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value = "det")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "lopsided")]
    construction: ConstructionArg,
    /// Multicut only: `general` sparsifies first.
    #[arg(long, value_enum, default_value = "degenerate")]
    scope: ScopeArg,
    #[command(flatten)]
    thresholds: ThresholdArgs,
    #[command(flatten)]
    seed: SeedArg,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct ThresholdArgs {
    /// Override for the connected set size used by the sparsifier.
    #[arg(long)]
    connected_set_size: Option<u64>,
    /// Override for the root in-degree cap used by the sparsifier.
    #[arg(long)]
    root_in_cap: Option<u64>,
    /// Override for the terminal separator limit used by the sparsifier.
    #[arg(long)]
    separator_limit: Option<u64>,
}

impl ThresholdArgs {
    fn thresholds(&self) -> Thresholds {
        Thresholds {
            connected_set_size: self.connected_set_size,
            root_in_cap: self.root_in_cap,
            separator_limit: self.separator_limit,
            ..Thresholds::default()
        }
    }
}

#[derive(Debug, Args)]
struct SparsifyArgs {
    graph: PathBuf,
    terminals: PathBuf,
    #[arg(long)]
    k: usize,
    #[command(flatten)]
    thresholds: ThresholdArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct OracleLimitArgs {
    #[arg(long, default_value_t = 16)]
    max_vertices: usize,
    #[arg(long, default_value_t = 4)]
    max_budget: usize,
}

impl OracleLimitArgs {
    fn limits(&self) -> OracleLimits {
        OracleLimits {
            max_vertices: self.max_vertices,
            max_budget: self.max_budget,
        }
    }
}

#[derive(Debug, Subcommand)]
enum OracleQuery {
    /// All independent sets of size at most k.
    IndependentSets {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        limits: OracleLimitArgs,
    },
    /// All inclusion-minimal multicuts of size at most k.
    Multicuts {
        graph: PathBuf,
        terminals: PathBuf,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        limits: OracleLimitArgs,
    },
    /// All important X-Y separators of size at most k.
    ImportantSeparators {
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        sources: Vec<Vertex>,
        #[arg(long, value_delimiter = ',', required = true)]
        sinks: Vec<Vertex>,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        limits: OracleLimitArgs,
    },
    /// Brute-force decision for one of the solver problems.
    Solve {
        #[arg(value_enum)]
        problem: ProblemArg,
        graph: PathBuf,
        #[arg(long)]
        terminals: Option<PathBuf>,
        #[arg(long)]
        source: Option<Vertex>,
        #[arg(long)]
        target: Option<Vertex>,
        #[arg(long)]
        k: usize,
        /// Require the solution to be independent.
        #[arg(long)]
        stable: bool,
        #[command(flatten)]
        limits: OracleLimitArgs,
    },
}

#[derive(Debug, Args)]
struct GenArgs {
    #[command(subcommand)]
    generator: Generator,
    /// Also write the terminal pairs to this file.
    #[arg(long, global = true)]
    terminals_out: Option<PathBuf>,
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Generator {
    /// Disjoint cliques.
    Cliques {
        #[arg(long)]
        count: usize,
        #[arg(long)]
        size: usize,
    },
    /// Disjoint stars.
    Stars {
        #[arg(long)]
        count: usize,
        #[arg(long)]
        leaves: usize,
    },
    /// Disjoint copies of K_{2,m}.
    Bicliques {
        #[arg(long)]
        count: usize,
        #[arg(long)]
        m: usize,
    },
    /// Random graph of degeneracy at most d.
    Degenerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0.8)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        terminals: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Random digraph.
    Digraph {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.2)]
        arc_probability: f64,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// A clique with a sparse tail.
    DenseCore {
        #[arg(long)]
        core: usize,
        #[arg(long, default_value_t = 0)]
        extra: usize,
        #[arg(long, default_value_t = 0)]
        terminals: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
}

impl Generator {
    fn spec(&self) -> InstanceSpec {
        match *self {
            Generator::Cliques { count, size } => InstanceSpec::Cliques { count, size },
            Generator::Stars { count, leaves } => InstanceSpec::Stars { count, leaves },
            Generator::Bicliques { count, m } => InstanceSpec::Bicliques { count, m },
            Generator::Degenerate {
                n,
                d,
                density,
                terminals,
                ref seed,
            } => InstanceSpec::Degenerate {
                n,
                d,
                density,
                terminals,
                seed: seed.seed,
            },
            Generator::Digraph {
                n,
                arc_probability,
                ref seed,
            } => InstanceSpec::Digraph {
                n,
                arc_probability,
                seed: seed.seed,
            },
            Generator::DenseCore {
                core,
                extra,
                terminals,
                ref seed,
            } => InstanceSpec::DenseCore {
                core,
                extra,
                terminals,
                seed: seed.seed,
            },
        }
    }
}

/// Exit code plus captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Report
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Report {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Report {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut out = String::new();
    match dispatch(cli.command, &mut out) {
        Ok(code) => Report {
            code,
            stdout: out,
            stderr: String::new(),
        },
        Err(e) => Report {
            code: EXIT_USAGE,
            stdout: out,
            stderr: format!("error: {e}\n"),
        },
    }
}

fn dispatch(command: Command, out: &mut String) -> CliResult<i32> {
    match command {
        Command::Cover(args) => cover(args, out),
        Command::Solve(args) => solve(args, out),
        Command::Sparsify(args) => sparsify(args, out),
        Command::Oracle { query } => oracle_query(query, out),
        Command::Gen(args) => gen(args, out),
    }
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_graph(path: &Path) -> CliResult<AnyGraph> {
    parse_graph(&read(path)?).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn load_undirected(path: &Path) -> CliResult<UndirectedGraph> {
    match load_graph(path)? {
        AnyGraph::Undirected(g) => Ok(g),
        AnyGraph::Directed(_) => Err(CliError::Usage(format!(
            "{}: expected an undirected graph",
            path.display()
        ))),
    }
}

fn load_directed(path: &Path) -> CliResult<Digraph> {
    match load_graph(path)? {
        AnyGraph::Directed(d) => Ok(d),
        AnyGraph::Undirected(_) => Err(CliError::Usage(format!(
            "{}: expected a directed graph",
            path.display()
        ))),
    }
}

fn load_terminals(path: &Path, n: usize) -> CliResult<TerminalPairs> {
    parse_terminals(&read(path)?, n).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn required<T>(value: Option<T>, flag: &str, problem: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::Usage(format!("{problem} needs --{flag}")))
}

fn family_for(g: &UndirectedGraph, args: &CoverArgs, options: &FamilyOptions) -> CliResult<CoveringFamily> {
    let build = |g: &UndirectedGraph| -> CliResult<CoveringFamily> {
        Ok(match args.construction {
            ConstructionArg::Lopsided => build_lopsided_family(g, args.k, options)?,
            ConstructionArg::Hash => build_hash_family(g, args.k, options)?,
            ConstructionArg::Random => build_random_family(g, args.k, args.seed.seed, options)?,
        })
    };
    let Some(modulator) = &args.modulator else {
        return build(g);
    };
    if let Some(&v) = modulator.iter().find(|&&v| v >= g.vertex_count()) {
        return Err(stablecut::Error::VertexOutOfRange {
            vertex: v,
            n: g.vertex_count(),
        }
        .into());
    }
    let rest = g.without_vertices(modulator);
    let mut inner = build(&rest.graph)?;
    for member in &mut inner.members {
        *member = rest.to_original(member);
    }
    Ok(build_modulator_family(g, modulator, args.k, &inner, options)?)
}

fn cover(args: CoverArgs, out: &mut String) -> CliResult<i32> {
    let g = load_undirected(&args.graph)?;
    let options = FamilyOptions {
        seed: args.seed.seed,
        ..FamilyOptions::default()
    };
    let family = family_for(&g, &args, &options)?;
    let verdict = if args.verify {
        Some(verify_covering(&g, args.k, &family, OracleLimits::default())?)
    } else {
        None
    };
    if args.json {
        let report = json!({
            "construction": family.construction,
            "k": family.k,
            "d": family.d,
            "size": family.members.len(),
            "distinct": family.distinct_members().len(),
            "verdict": verdict,
            "members": family.members,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&report)?).unwrap();
    } else {
        out.push_str(&family.to_text());
        if let Some(v) = &verdict {
            writeln!(out, "# verdict {}", verdict_text(v)).unwrap();
        }
    }
    Ok(match verdict {
        Some(CoverageVerdict::Covered) | None => EXIT_OK,
        Some(_) => EXIT_NO,
    })
}

fn verdict_text(v: &CoverageVerdict) -> String {
    match v {
        CoverageVerdict::Covered => "covered".to_string(),
        CoverageVerdict::Uncovered(x) => format!("uncovered {}", format_set(x)),
        CoverageVerdict::NotIndependent(m) => format!("not-independent {}", format_set(m)),
    }
}

fn solve(args: SolveArgs, out: &mut String) -> CliResult<i32> {
    let mode = match args.mode {
        ModeArg::Rand => Mode::Randomized { seed: args.seed.seed },
        ModeArg::Det => Mode::Deterministic {
            construction: args.construction.into(),
        },
    };
    let result = match args.problem {
        ProblemArg::Separator => {
            let g = load_undirected(&args.graph)?;
            let s = required(args.source, "source", "separator")?;
            let t = required(args.target, "target", "separator")?;
            stable_st_separator(&g, s, t, args.k, mode)?
        }
        ProblemArg::Oct => stable_oct(&load_undirected(&args.graph)?, args.k, mode)?,
        ProblemArg::Dfvs => stable_dfvs(&load_directed(&args.graph)?, args.k, mode)?,
        ProblemArg::Multicut => {
            let g = load_undirected(&args.graph)?;
            let path = required(args.terminals.as_deref(), "terminals", "multicut")?;
            let terminals = load_terminals(path, g.vertex_count())?;
            let scope = match args.scope {
                ScopeArg::Degenerate => Scope::Degenerate,
                ScopeArg::General => Scope::General(args.thresholds.thresholds()),
            };
            stable_multicut(&g, &terminals, args.k, scope, mode)?
        }
    };
    write_solve_result(&result, args.json, out)?;
    Ok(if result.feasible { EXIT_OK } else { EXIT_NO })
}

fn write_solve_result(result: &SolveResult, as_json: bool, out: &mut String) -> CliResult<()> {
    if as_json {
        writeln!(out, "{}", serde_json::to_string_pretty(result)?).unwrap();
        return Ok(());
    }
    writeln!(out, "problem {}", result.problem).unwrap();
    writeln!(out, "verdict {}", if result.feasible { "yes" } else { "no" }).unwrap();
    if let Some(s) = &result.solution {
        writeln!(out, "solution {}", format_set(s)).unwrap();
    }
    for line in &result.certificate {
        writeln!(out, "check {line}").unwrap();
    }
    let stats = &result.stats;
    let opt = |v: Option<usize>| v.map_or_else(|| "-".to_string(), |v| v.to_string());
    writeln!(
        out,
        "stats degeneracy={} family={} draws={} subproblems={}",
        opt(stats.degeneracy),
        opt(stats.family_size),
        stats.draws,
        stats.subproblems
    )
    .unwrap();
    Ok(())
}

fn sparsify(args: SparsifyArgs, out: &mut String) -> CliResult<i32> {
    let g = load_undirected(&args.graph)?;
    let terminals = load_terminals(&args.terminals, g.vertex_count())?;
    let result = degeneracy_reduce(&g, &terminals, args.k, &args.thresholds.thresholds())?;
    if args.json {
        let report = json!({
            "kept": result.graph.original,
            "deleted": result.deleted,
            "terminals": result.terminals.pairs(),
            "graph": write_graph(&result.graph.graph),
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&report)?).unwrap();
    } else {
        for line in result.deletion_log().lines() {
            writeln!(out, "# {line}").unwrap();
        }
        writeln!(out, "# kept {}", format_set(&result.graph.original)).unwrap();
        out.push_str(&write_graph(&result.graph.graph));
    }
    Ok(EXIT_OK)
}

fn write_sets(sets: &[Vec<Vertex>], out: &mut String) {
    writeln!(out, "# {} sets", sets.len()).unwrap();
    for s in sets {
        writeln!(out, "{{{}}}", format_set(s)).unwrap();
    }
}

fn oracle_query(query: OracleQuery, out: &mut String) -> CliResult<i32> {
    match query {
        OracleQuery::IndependentSets { graph, k, limits } => {
            let g = load_undirected(&graph)?;
            write_sets(&oracle::independent_sets(&g, k, limits.limits())?, out);
        }
        OracleQuery::Multicuts {
            graph,
            terminals,
            k,
            limits,
        } => {
            let g = load_undirected(&graph)?;
            let t = load_terminals(&terminals, g.vertex_count())?;
            write_sets(&oracle::minimal_multicuts(&g, &t, k, limits.limits())?, out);
        }
        OracleQuery::ImportantSeparators {
            graph,
            sources,
            sinks,
            k,
            limits,
        } => {
            let d = match load_graph(&graph)? {
                AnyGraph::Directed(d) => d,
                AnyGraph::Undirected(g) => g.to_digraph(),
            };
            write_sets(
                &oracle::important_separators(&d, &sources, &sinks, k, limits.limits())?,
                out,
            );
        }
        OracleQuery::Solve {
            problem,
            graph,
            terminals,
            source,
            target,
            k,
            stable,
            limits,
        } => {
            let found = match problem {
                ProblemArg::Separator => {
                    let g = load_undirected(&graph)?;
                    let s = required(source, "source", "separator")?;
                    let t = required(target, "target", "separator")?;
                    oracle::brute_force(Problem::StSeparator { graph: &g, s, t }, k, stable, limits.limits())?
                }
                ProblemArg::Oct => {
                    let g = load_undirected(&graph)?;
                    oracle::brute_force(Problem::OddCycleTransversal { graph: &g }, k, stable, limits.limits())?
                }
                ProblemArg::Dfvs => {
                    let d = load_directed(&graph)?;
                    oracle::brute_force(Problem::FeedbackVertexSet { graph: &d }, k, stable, limits.limits())?
                }
                ProblemArg::Multicut => {
                    let g = load_undirected(&graph)?;
                    let path = required(terminals.as_deref(), "terminals", "multicut")?;
                    let t = load_terminals(path, g.vertex_count())?;
                    oracle::brute_force(
                        Problem::Multicut {
                            graph: &g,
                            terminals: &t,
                        },
                        k,
                        stable,
                        limits.limits(),
                    )?
                }
            };
            return Ok(match found {
                Some(s) => {
                    writeln!(out, "verdict yes\nsolution {}", format_set(&s)).unwrap();
                    EXIT_OK
                }
                None => {
                    writeln!(out, "verdict no").unwrap();
                    EXIT_NO
                }
            });
        }
    }
    Ok(EXIT_OK)
}

fn gen(args: GenArgs, out: &mut String) -> CliResult<i32> {
    let spec = args.generator.spec();
    let instance = generate(&spec)?;
    let graph_text = match &instance.graph {
        AnyGraph::Undirected(g) => write_graph(g),
        AnyGraph::Directed(d) => write_digraph(d),
    };
    let terminal_text = write_terminals(&instance.terminals);
    if let Some(path) = &args.terminals_out {
        std::fs::write(path, &terminal_text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
    }
    if args.json {
        let report = json!({
            "spec": spec,
            "graph": graph_text,
            "terminals": instance.terminals.pairs(),
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&report)?).unwrap();
    } else {
        out.push_str(&graph_text);
    }
    Ok(EXIT_OK)
}
