//! Command-line front end: argument parsing, graph loading and output
//! formatting for the `mbcolour` binary.
//!
//! Exit codes: 0 success, 1 a negative answer (Breaker wins a `solve`, a
//! search finds nothing, a claim or verification fails), 2 usage or input
//! error, 3 budget exhausted.

use std::fs;
use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use mbcolour::claims;
use mbcolour::families;
use mbcolour::imagination::{solver_strategy, transform_breaker, verify_agent_wins, StrategyAgent, TraceEntry};
use mbcolour::params::{self, ParameterReport, WinProfile};
use mbcolour::search::{self, Predicate, ScanOptions, ScanReport};
use mbcolour::solver::SolverConfig;
use mbcolour::{Game, GameSpec, Graph, Move, Player, Position, SolveError, Solver, Status, Variant, VertexOrdering};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "mbcolour", version, about = "Exact solver for Maker-Breaker graph colouring games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide the winner of one game.
    Solve {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        game: GameArgs,
        /// Print the line played by both sides.
        #[arg(long)]
        pv: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Winner for every palette size (or marking bound) in a range.
    Profile {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_parser = parse_variant)]
        variant: Variant,
        #[arg(long)]
        order: Option<String>,
        #[arg(long)]
        k_min: Option<u32>,
        #[arg(long)]
        k_max: Option<u32>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Game chromatic, Grundy, arboricity and colouring numbers with their profiles.
    Report {
        #[command(flatten)]
        graph: GraphArgs,
        /// Top palette for every parameter (defaults differ per parameter).
        #[arg(long)]
        k_max: Option<u32>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the regression claims, one PASS/FAIL line each.
    VerifyPaper {
        /// Claim ids to run, e.g. T1,T5 (default: all).
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Scan graphs for a predicate.
    Search {
        /// Enumerate all connected graphs on this many vertices (at most 8).
        #[arg(long, conflicts_with_all = ["graph6", "family", "graph"])]
        n: Option<usize>,
        /// With --n, include disconnected graphs.
        #[arg(long, requires = "n")]
        all_graphs: bool,
        /// graph6 stream, one graph per line; `-` reads standard input.
        #[arg(long)]
        graph6: Option<PathBuf>,
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        graph: Option<PathBuf>,
        /// chi-g-lt-chi-cg[:KMAX], col-cg-edge[:KMAX],
        /// non-monotone:VARIANT[:KMIN[-KMAX]], threshold:PARAM=VALUE
        #[arg(long)]
        predicate: String,
        #[arg(long)]
        jobs: Option<usize>,
        /// Per-graph time allowance.
        #[arg(long)]
        budget_ms: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Reduce a Breaker arboricity strategy from k+1 to k colours and verify it.
    Transform {
        #[command(flatten)]
        graph: GraphArgs,
        /// Target palette k.
        #[arg(long)]
        colours: u32,
        /// Print one line per move of a sample game.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
    },
    /// Play against the solver in the terminal.
    Play {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        game: GameArgs,
        /// Side you play.
        #[arg(long, value_enum, default_value = "maker")]
        human: Side,
    },
    /// Print a graph as graph6 or as an edge list.
    Emit {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value = "graph6")]
        format: Format,
    },
}

#[derive(Debug, Args)]
struct GraphArgs {
    /// Edge-list file: `n m` then one `u v` per line.
    #[arg(long, conflicts_with_all = ["graph6", "family"])]
    graph: Option<PathBuf>,
    /// File whose first line is a graph6 string; `-` reads standard input.
    #[arg(long, conflicts_with = "family")]
    graph6: Option<PathBuf>,
    /// Named graph such as fig3, fig4, fig4-e, h_r:1, theorem14:4,5, complete:5.
    #[arg(long)]
    family: Option<String>,
}

#[derive(Debug, Args)]
struct GameArgs {
    #[arg(long, value_parser = parse_variant)]
    variant: Variant,
    /// Palette size for colouring variants.
    #[arg(long, conflicts_with = "bound")]
    colours: Option<u32>,
    /// Back-degree bound for marking variants.
    #[arg(long)]
    bound: Option<u32>,
    /// Vertex ordering for ordered variants: `3,1,2` or a file holding one.
    #[arg(long)]
    order: Option<String>,
}

#[derive(Debug, Args)]
struct CommonArgs {
    #[arg(long)]
    json: bool,
    /// Give up after this many milliseconds (exit code 3).
    #[arg(long)]
    budget_ms: Option<u64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Side {
    Maker,
    Breaker,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Edges,
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse()
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure { code: EXIT_USAGE, message: message.to_string() }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let code = if e.is_resource() { EXIT_RESOURCE } else { EXIT_USAGE };
        Failure { code, message: e.to_string() }
    }
}

impl From<mbcolour::imagination::StrategyError> for Failure {
    fn from(e: mbcolour::imagination::StrategyError) -> Self {
        match e {
            mbcolour::imagination::StrategyError::Solve(s) => s.into(),
            other => Failure { code: EXIT_NEGATIVE, message: other.to_string() },
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e)
    }
}

type Outcome = Result<i32, Failure>;

struct Io<'a> {
    stdin: &'a mut dyn BufRead,
    out: &'a mut dyn Write,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    let mut io = Io { stdin, out: stdout };
    let result = match cli.command {
        Command::Solve { graph, game, pv, common } => solve(&mut io, &graph, &game, pv, &common),
        Command::Profile { graph, variant, order, k_min, k_max, common } => {
            profile(&mut io, &graph, variant, order.as_deref(), k_min, k_max, &common)
        }
        Command::Report { graph, k_max, common } => report(&mut io, &graph, k_max, &common),
        Command::VerifyPaper { only, json } => verify_paper(&mut io, &only, json),
        Command::Search { n, all_graphs, graph6, family, graph, predicate, jobs, budget_ms, json } => {
            let source = SearchSource { n, all_graphs, graph6, family, graph };
            search_cmd(&mut io, stderr, &source, &predicate, jobs, budget_ms, json)
        }
        Command::Transform { graph, colours, trace, json } => transform(&mut io, &graph, colours, trace, json),
        Command::Play { graph, game, human } => play(&mut io, &graph, &game, human),
        Command::Emit { graph, format } => emit(&mut io, &graph, format),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn read_source(io: &mut Io, path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io.stdin.read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
    }
}

/// The graph plus any ordering that comes with a named family.
fn load_graph(io: &mut Io, args: &GraphArgs) -> Result<(Graph, Option<VertexOrdering>), Failure> {
    if let Some(path) = &args.graph {
        let text = read_source(io, path)?;
        return Ok((Graph::parse_edge_list(&text).map_err(Failure::usage)?, None));
    }
    if let Some(path) = &args.graph6 {
        let text = read_source(io, path)?;
        let line = text.lines().map(str::trim).find(|l| !l.is_empty()).ok_or_else(|| Failure::usage("empty graph6 input"))?;
        return Ok((Graph::from_graph6(line).map_err(Failure::usage)?, None));
    }
    if let Some(name) = &args.family {
        let fam = families::by_name(name).map_err(Failure::usage)?;
        return Ok((fam.graph, fam.ordering));
    }
    Err(Failure::usage("one of --graph, --graph6 or --family is required"))
}

fn parse_order(text: &str) -> Result<VertexOrdering, Failure> {
    let looks_inline = text.chars().all(|c| c.is_ascii_digit() || c == ',' || c.is_whitespace());
    let body = if looks_inline {
        text.to_string()
    } else {
        fs::read_to_string(text).map_err(|e| Failure::usage(format!("{text}: {e}")))?
    };
    let joined = body.split_whitespace().collect::<Vec<_>>().join(",");
    VertexOrdering::parse(&joined).map_err(Failure::usage)
}

fn ordering_for(
    variant: Variant,
    order: Option<&str>,
    family_order: Option<VertexOrdering>,
    n: usize,
) -> Result<Option<VertexOrdering>, Failure> {
    if !variant.is_ordered() {
        if order.is_some() {
            return Err(Failure::usage(format!("--order only applies to ordered variants, not {variant}")));
        }
        return Ok(None);
    }
    Ok(Some(match order {
        Some(text) => parse_order(text)?,
        None => family_order.unwrap_or_else(|| VertexOrdering::identity(n)),
    }))
}

fn build_spec(game: &GameArgs, family_order: Option<VertexOrdering>, n: usize) -> Result<GameSpec, Failure> {
    let k = match (game.variant.is_marking(), game.colours, game.bound) {
        (false, Some(k), None) => k,
        (true, None, Some(s)) => s,
        (false, _, Some(_)) => return Err(Failure::usage(format!("{} takes --colours, not --bound", game.variant))),
        (true, Some(_), _) => return Err(Failure::usage(format!("{} takes --bound, not --colours", game.variant))),
        (false, None, None) => return Err(Failure::usage("--colours is required")),
        (true, None, None) => return Err(Failure::usage("--bound is required")),
    };
    let mut spec = GameSpec::new(game.variant, k);
    if let Some(o) = ordering_for(game.variant, game.order.as_deref(), family_order, n)? {
        spec = spec.with_ordering(o);
    }
    Ok(spec)
}

fn config(budget_ms: Option<u64>) -> SolverConfig {
    SolverConfig { max_entries: None, deadline: budget_ms.map(|ms| Instant::now() + Duration::from_millis(ms)) }
}

fn status_of(p: Player) -> Status {
    Status::won_by(p)
}

fn write_json<T: Serialize>(io: &mut Io, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::usage(e.to_string()))?;
    writeln!(io.out, "{text}")?;
    Ok(())
}

fn moves_text(moves: &[Move]) -> String {
    moves.iter().map(Move::to_string).collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOutput {
    pub graph6: String,
    pub spec: GameSpec,
    pub winner: Player,
    pub status: Status,
    pub nodes_searched: u64,
    pub table_entries: usize,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pv: Option<Vec<Move>>,
}

fn solve(io: &mut Io, graph: &GraphArgs, game: &GameArgs, pv: bool, common: &CommonArgs) -> Outcome {
    let (g, family_order) = load_graph(io, graph)?;
    let spec = build_spec(game, family_order, g.n())?;
    let game = Arc::new(Game::new(spec.clone(), g.clone()).map_err(|e| Failure::from(SolveError::from(e)))?);
    let mut solver = Solver::with_config(game, config(common.budget_ms));
    let result = solver.solve()?;
    let line = if pv { Some(solver.principal_variation()?) } else { None };
    let output = SolveOutput {
        graph6: g.to_graph6(),
        spec,
        winner: result.winner,
        status: status_of(result.winner),
        nodes_searched: result.nodes_searched,
        table_entries: result.table_entries,
        elapsed_ms: result.elapsed.as_millis() as u64,
        pv: line,
    };
    if common.json {
        write_json(io, &output)?;
    } else {
        writeln!(io.out, "{}", output.status)?;
        if let Some(line) = &output.pv {
            writeln!(io.out, "pv: {}", moves_text(line))?;
        }
    }
    Ok(if output.winner == Player::Maker { EXIT_OK } else { EXIT_NEGATIVE })
}

fn profile(
    io: &mut Io,
    graph: &GraphArgs,
    variant: Variant,
    order: Option<&str>,
    k_min: Option<u32>,
    k_max: Option<u32>,
    common: &CommonArgs,
) -> Outcome {
    let (g, family_order) = load_graph(io, graph)?;
    let ordering = ordering_for(variant, order, family_order, g.n())?;
    let k_min = k_min.unwrap_or(if variant.is_marking() { 0 } else { 1 });
    let k_max = k_max.unwrap_or_else(|| {
        let d = params::default_k_max(&g, variant);
        if variant.is_marking() { d - 1 } else { d }
    });
    if k_min > k_max {
        return Err(Failure::usage(format!("empty range {k_min}..={k_max}")));
    }
    let p = params::win_profile_with(&g, variant, k_min..=k_max, ordering.as_ref(), &config(common.budget_ms))?;
    if common.json {
        write_json(io, &p)?;
    } else {
        for (k, winner) in p.iter() {
            writeln!(io.out, "{k} {}", status_of(winner))?;
        }
        let drops = p.violations();
        if !drops.is_empty() {
            let ks: Vec<String> = drops.iter().map(u32::to_string).collect();
            writeln!(io.out, "non-monotone: Maker wins at k={} but not at k+1", ks.join(","))?;
        }
    }
    Ok(EXIT_OK)
}

fn report(io: &mut Io, graph: &GraphArgs, k_max: Option<u32>, common: &CommonArgs) -> Outcome {
    let (g, _) = load_graph(io, graph)?;
    let r: ParameterReport = params::parameter_report_with(&g, k_max, &config(common.budget_ms))?;
    if common.json {
        write_json(io, &r)?;
    } else {
        for p in r.parameters() {
            let profile = p.profile.as_ref().map(WinProfile::summary).unwrap_or_default();
            writeln!(io.out, "{:<13} {:<24} {}", p.name, p.value.to_string(), profile)?;
        }
    }
    Ok(EXIT_OK)
}

fn verify_paper(io: &mut Io, only: &[String], json: bool) -> Outcome {
    let all = claims::claims();
    if let Some(unknown) = only.iter().find(|id| !all.iter().any(|c| c.id.eq_ignore_ascii_case(id))) {
        return Err(Failure::usage(format!("unknown claim id {unknown}")));
    }
    let mut outcomes = Vec::new();
    for claim in all.iter().filter(|c| only.is_empty() || only.iter().any(|id| c.id.eq_ignore_ascii_case(id))) {
        let outcome = claim.run();
        if !json {
            writeln!(io.out, "{outcome}")?;
            io.out.flush()?;
        }
        outcomes.push(outcome);
    }
    if json {
        write_json(io, &outcomes)?;
    }
    Ok(if outcomes.iter().all(|o| o.passed) { EXIT_OK } else { EXIT_NEGATIVE })
}

struct SearchSource {
    n: Option<usize>,
    all_graphs: bool,
    graph6: Option<PathBuf>,
    family: Option<String>,
    graph: Option<PathBuf>,
}

fn search_graphs(io: &mut Io, source: &SearchSource) -> Result<Vec<Graph>, Failure> {
    if let Some(n) = source.n {
        return search::enumerate_graphs(n, !source.all_graphs).map_err(Failure::usage);
    }
    if let Some(path) = &source.graph6 {
        let text = read_source(io, path)?;
        return text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| Graph::from_graph6(l.trim()).map_err(|e| Failure::usage(format!("line {}: {e}", i + 1))))
            .collect();
    }
    let args = GraphArgs { graph: source.graph.clone(), graph6: None, family: source.family.clone() };
    Ok(vec![load_graph(io, &args)?.0])
}

fn search_cmd(
    io: &mut Io,
    stderr: &mut dyn Write,
    source: &SearchSource,
    predicate: &str,
    jobs: Option<usize>,
    budget_ms: Option<u64>,
    json: bool,
) -> Outcome {
    let predicate: Predicate = predicate.parse().map_err(Failure::usage)?;
    let graphs = search_graphs(io, source)?;
    let options = ScanOptions { jobs, budget: budget_ms.map(Duration::from_millis), max_entries: None };
    let report: ScanReport = search::scan(&graphs, &predicate, &options).map_err(Failure::usage)?;
    if json {
        write_json(io, &report)?;
    } else {
        for hit in &report.hits {
            writeln!(io.out, "{hit}")?;
        }
    }
    for s in &report.skipped {
        writeln!(stderr, "skipped #{} {}: {}", s.index, s.graph6, s.reason)?;
    }
    writeln!(stderr, "scanned {} graphs: {} hits, {} skipped", report.evaluated, report.hits.len(), report.skipped.len())?;
    Ok(if report.hits.is_empty() { EXIT_NEGATIVE } else { EXIT_OK })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformOutput {
    pub graph6: String,
    pub colours: u32,
    pub agent_wins: bool,
    pub maker_lines: u64,
    pub invariant_checks: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<Move>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<TraceEntry>,
}

/// One game of the transformed Breaker agent against Maker playing the
/// solver's choice at every turn.
fn sample_game(game: &Game, agent: &mut mbcolour::imagination::ImaginationAgent) -> Result<Vec<TraceEntry>, Failure> {
    let mut maker = Solver::new(game.clone());
    let mut pos = game.initial_position();
    agent.reset();
    while game.status(&pos) == Status::Ongoing {
        let mv = if pos.to_move() == Player::Maker {
            let mv = maker.best_move(&pos)?;
            let next = game.apply(&pos, &mv).map_err(|e| Failure::from(SolveError::from(e)))?;
            if game.status(&next) == Status::Ongoing {
                agent.observe(&mv)?;
            }
            mv
        } else {
            agent.propose()?
        };
        pos = game.apply(&pos, &mv).map_err(|e| Failure::from(SolveError::from(e)))?;
    }
    Ok(agent.trace().to_vec())
}

fn transform(io: &mut Io, graph: &GraphArgs, colours: u32, trace: bool, json: bool) -> Outcome {
    let (g, _) = load_graph(io, graph)?;
    if colours == 0 {
        return Err(Failure::usage("--colours must be at least 1"));
    }
    let bigger = GameSpec::new(Variant::Arboricity, colours + 1);
    let inner = solver_strategy(&bigger, &g, Player::Breaker)?;
    let mut agent = transform_breaker(Box::new(inner), &g, colours)?;
    let spec = GameSpec::new(Variant::Arboricity, colours);
    let verification = verify_agent_wins(&spec, &g, &agent)?;
    let invariant_checks = agent.checks_performed();
    let sample = if trace {
        let game = Game::new(spec, g.clone()).map_err(|e| Failure::from(SolveError::from(e)))?;
        sample_game(&game, &mut agent)?
    } else {
        Vec::new()
    };
    let output = TransformOutput {
        graph6: g.to_graph6(),
        colours,
        agent_wins: verification.agent_wins,
        maker_lines: verification.lines,
        invariant_checks,
        counterexample: verification.counterexample.clone(),
        trace: sample,
    };
    if json {
        write_json(io, &output)?;
    } else {
        for entry in &output.trace {
            writeln!(io.out, "{entry}")?;
        }
        if output.agent_wins {
            writeln!(
                io.out,
                "reduced Breaker strategy with k={colours} wins against all {} Maker lines ({} invariant checks)",
                output.maker_lines, output.invariant_checks
            )?;
        } else {
            writeln!(
                io.out,
                "reduced strategy loses: {}",
                moves_text(output.counterexample.as_deref().unwrap_or_default())
            )?;
        }
    }
    Ok(if output.agent_wins { EXIT_OK } else { EXIT_NEGATIVE })
}

fn describe(game: &Game, pos: &Position) -> String {
    let g = game.graph();
    let parts: Vec<String> = match game.variant() {
        Variant::Arboricity => g
            .edges()
            .iter()
            .zip(pos.cells())
            .filter(|(_, &c)| c != 0)
            .map(|((u, v), c)| format!("{u}-{v}:{c}"))
            .collect(),
        Variant::Marking | Variant::ConnectedMarking => {
            (1..=g.n()).filter(|&v| pos.is_marked(v)).map(|v| v.to_string()).collect()
        }
        _ => (1..=g.n()).filter_map(|v| pos.colour(v).map(|c| format!("{v}:{c}"))).collect(),
    };
    if parts.is_empty() {
        "(nothing played)".into()
    } else {
        parts.join(" ")
    }
}

fn play(io: &mut Io, graph: &GraphArgs, game_args: &GameArgs, human: Side) -> Outcome {
    let (g, family_order) = load_graph(io, graph)?;
    let spec = build_spec(game_args, family_order, g.n())?;
    let game = Arc::new(Game::new(spec, g).map_err(|e| Failure::from(SolveError::from(e)))?);
    let human = match human {
        Side::Maker => Player::Maker,
        Side::Breaker => Player::Breaker,
    };
    let mut solver = Solver::new(game.clone());
    let mut pos = game.initial_position();
    writeln!(io.out, "you play {human:?}; Maker moves first")?;
    while game.status(&pos) == Status::Ongoing {
        let mv = if pos.to_move() == human {
            let legal = game.legal_moves(&pos);
            writeln!(io.out, "position: {}", describe(&game, &pos))?;
            writeln!(io.out, "legal: {}", moves_text(&legal))?;
            write!(io.out, "your move> ")?;
            io.out.flush()?;
            let mut line = String::new();
            if io.stdin.read_line(&mut line)? == 0 {
                writeln!(io.out)?;
                writeln!(io.out, "session aborted")?;
                return Ok(EXIT_OK);
            }
            match game.parse_move(line.trim()) {
                Ok(mv) if game.is_legal(&pos, &mv) => mv,
                Ok(mv) => {
                    writeln!(io.out, "illegal move {mv}, try again")?;
                    continue;
                }
                Err(e) => {
                    writeln!(io.out, "{e}, try again")?;
                    continue;
                }
            }
        } else {
            let mv = solver.best_move(&pos)?;
            writeln!(io.out, "solver plays {mv}")?;
            mv
        };
        pos = game.apply(&pos, &mv).map_err(|e| Failure::from(SolveError::from(e)))?;
    }
    writeln!(io.out, "position: {}", describe(&game, &pos))?;
    writeln!(io.out, "{}", game.status(&pos))?;
    Ok(EXIT_OK)
}

fn emit(io: &mut Io, graph: &GraphArgs, format: Format) -> Outcome {
    let (g, _) = load_graph(io, graph)?;
    match format {
        Format::Graph6 => writeln!(io.out, "{}", g.to_graph6())?,
        Format::Edges => write!(io.out, "{}", g.to_edge_list())?,
    }
    Ok(EXIT_OK)
}
