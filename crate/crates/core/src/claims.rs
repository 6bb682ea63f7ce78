//! Regression suite of concrete game values: the named example graphs, the
//! ordered-game drop, palette reduction for arboricity, and exhaustive
//! property sweeps over small graphs.
//!
//! Each claim runs independently and reports pass/fail with a one-line
//! detail. A claim that finishes correctly but over its time budget fails.

use std::fmt;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::families;
use crate::graph::Graph;
use crate::imagination::{solver_strategy, transform_breaker, verify_agent_wins};
use crate::params::{win_profile, WinProfile};
use crate::rules::{Game, GameSpec, Move, Player, Position, Status, Variant};
use crate::search::{self, Predicate, ScanOptions, Witness};
use crate::solver::{naive_maker_wins, naive_solve, solve, SolverConfig};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimOutcome {
    pub id: String,
    pub title: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl fmt::Display for ClaimOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}: {} [{:.2}s of {}s]",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs()
        )
    }
}

pub struct Claim {
    pub id: &'static str,
    pub title: &'static str,
    pub budget: Duration,
    check: fn() -> Result<String, String>,
}

impl Claim {
    pub fn run(&self) -> ClaimOutcome {
        let start = Instant::now();
        let result = self.check_caught();
        let elapsed = start.elapsed();
        let (mut passed, mut detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        if passed && elapsed > self.budget {
            passed = false;
            detail = format!("{detail}; over budget");
        }
        ClaimOutcome { id: self.id.into(), title: self.title.into(), passed, detail, elapsed, budget: self.budget }
    }

    fn check_caught(&self) -> Result<String, String> {
        std::panic::catch_unwind(self.check).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        })
    }
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

pub fn claims() -> Vec<Claim> {
    vec![
        Claim { id: "T1", title: "fig3: chi_g = 4 < chi_cg = 5", budget: secs(10), check: t1 },
        Claim { id: "T2", title: "fig4: col_cg = 3, col_cg(G - e) = 4", budget: secs(5), check: t2 },
        Claim { id: "T3", title: "ordered H_1, H_2: Maker at 3, Breaker above", budget: secs(60), check: t3 },
        Claim { id: "T4", title: "ordered (k, l) = (4, 5) graph drops", budget: secs(120), check: t4 },
        Claim { id: "T5", title: "ordered greedy on H_1 with 3 colours", budget: secs(1), check: t5 },
        Claim { id: "T6", title: "arboricity profiles monotone, n <= 5", budget: secs(600), check: t6 },
        Claim { id: "T7", title: "palette reduction for arboricity, n <= 5", budget: secs(900), check: t7 },
        Claim { id: "T8", title: "memoised solver = plain search, n <= 4", budget: secs(300), check: t8 },
        Claim { id: "T9", title: "profile properties, n <= 5", budget: secs(600), check: t9 },
        Claim { id: "T10", title: "search reproduction", budget: secs(900), check: t10 },
    ]
}

pub fn run_all() -> Vec<ClaimOutcome> {
    claims().iter().map(Claim::run).collect()
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn expect_profile(
    what: &str,
    g: &Graph,
    variant: Variant,
    ordering: Option<&crate::VertexOrdering>,
    expected: &[(u32, Player)],
) -> Result<String, String> {
    for &(k, want) in expected {
        let p = win_profile(g, variant, k..=k, ordering).map_err(err)?;
        let got = p.outcomes[0];
        if got != want {
            return Err(format!("{what} {variant} k={k}: expected {want:?}, got {got:?}"));
        }
    }
    let line: Vec<String> = expected.iter().map(|(k, p)| format!("{k}:{}", if *p == Player::Maker { 'M' } else { 'B' })).collect();
    Ok(format!("{what} {variant} [{}]", line.join(" ")))
}

fn t1() -> Result<String, String> {
    use Player::*;
    let g = families::fig3_graph();
    let a = expect_profile("fig3", &g, Variant::Vertex, None, &[(1, Breaker), (2, Breaker), (3, Breaker), (4, Maker)])?;
    let b = expect_profile(
        "fig3",
        &g,
        Variant::ConnectedVertex,
        None,
        &[(1, Breaker), (2, Breaker), (3, Breaker), (4, Breaker), (5, Maker)],
    )?;
    Ok(format!("{a}; {b}"))
}

fn t2() -> Result<String, String> {
    use Player::*;
    let (g, (u, v)) = families::fig4_graph();
    let minus = g.delete_edge(u, v).map_err(err)?;
    let a = expect_profile("fig4", &g, Variant::ConnectedMarking, None, &[(1, Breaker), (2, Maker)])?;
    let b = expect_profile("fig4-e", &minus, Variant::ConnectedMarking, None, &[(1, Breaker), (2, Breaker), (3, Maker)])?;
    Ok(format!("{a}; {b}"))
}

fn t3() -> Result<String, String> {
    use Player::*;
    let h1 = families::h_r(1).map_err(err)?;
    let h2 = families::h_r(2).map_err(err)?;
    let a = expect_profile("H_1", &h1.graph, Variant::OrderedVertex, Some(&h1.ordering), &[(3, Maker), (4, Breaker)])?;
    let b = expect_profile("H_2", &h2.graph, Variant::OrderedVertex, Some(&h2.ordering), &[(3, Maker), (5, Breaker)])?;
    let at4 = win_profile(&h2.graph, Variant::OrderedVertex, 4..=4, Some(&h2.ordering)).map_err(err)?;
    Ok(format!("{a}; {b}; H_2 at k=4 (not asserted): {:?}", at4.outcomes[0]))
}

fn t4() -> Result<String, String> {
    use Player::*;
    let g = families::theorem14_graph(4, 5).map_err(err)?;
    expect_profile("(4,5) graph", &g.graph, Variant::OrderedVertex, Some(&g.ordering), &[(4, Maker), (5, Breaker)])
}

fn t5() -> Result<String, String> {
    let h1 = families::h_r(1).map_err(err)?;
    let spec = GameSpec::new(Variant::OrderedGreedy, 3).with_ordering(h1.ordering.clone());
    let winner = solve(&spec, &h1.graph).map_err(err)?.winner;
    if winner != Player::Breaker {
        return Err(format!("expected BreakerWin, got {winner:?}"));
    }
    let game = Game::new(spec, h1.graph.clone()).map_err(err)?;
    let mut pos = game.initial_position();
    while game.status(&pos) == Status::Ongoing {
        pos = game.apply(&pos, &Move::Forced).map_err(err)?;
    }
    let colours: Vec<usize> = (1..=pos.played()).filter_map(|v| pos.colour(h1.ordering.as_slice()[v - 1])).collect();
    if pos.played() != 8 || colours != [1, 2, 2, 1, 1, 2, 1, 3] {
        return Err(format!("unexpected trace {colours:?} ({} moves)", pos.played()));
    }
    let next = h1.ordering.as_slice()[8];
    let seen: Vec<usize> = game.graph().neighbours(next).iter().filter_map(|&w| pos.colour(w)).collect();
    if next != 9 || !(1..=3).all(|c| seen.contains(&c)) {
        return Err(format!("vertex {next} is not blocked: neighbour colours {seen:?}"));
    }
    Ok(format!("BreakerWin; forced colours {colours:?}; vertex 9 sees {seen:?}"))
}

fn graphs_up_to(n: usize, connected_only: bool) -> Result<Vec<Graph>, String> {
    let mut all = Vec::new();
    for size in 1..=n {
        all.extend(search::enumerate_graphs(size, connected_only).map_err(err)?);
    }
    Ok(all)
}

fn t6() -> Result<String, String> {
    let graphs = graphs_up_to(5, false)?;
    let mut profiles = 0;
    for g in &graphs {
        if g.m() == 0 {
            continue;
        }
        let p = win_profile(g, Variant::Arboricity, 1..=g.m() as u32, None).map_err(err)?;
        if !p.is_upward_closed() {
            return Err(format!("NON-MONOTONE arboricity profile on {}: {}", g.to_graph6(), p.summary()));
        }
        profiles += 1;
    }
    Ok(format!("{} graphs, {profiles} profiles, no violations", graphs.len()))
}

fn t7() -> Result<String, String> {
    let graphs = graphs_up_to(5, false)?;
    let (mut cases, mut lines, mut checks) = (0u64, 0u64, 0u64);
    for g in &graphs {
        for k in 1..g.m() as u32 {
            let bigger = GameSpec::new(Variant::Arboricity, k + 1);
            if solve(&bigger, g).map_err(err)?.winner != Player::Breaker {
                continue;
            }
            let inner = solver_strategy(&bigger, g, Player::Breaker).map_err(err)?;
            let agent = transform_breaker(Box::new(inner), g, k).map_err(err)?;
            let v = verify_agent_wins(&GameSpec::new(Variant::Arboricity, k), g, &agent)
                .map_err(|e| format!("{} k={k}: {e}", g.to_graph6()))?;
            if !v.agent_wins {
                return Err(format!(
                    "{} k={k}: Maker beats the reduced agent with {}",
                    g.to_graph6(),
                    v.counterexample_text().unwrap_or_default()
                ));
            }
            cases += 1;
            lines += v.lines;
            checks += agent.checks_performed();
        }
    }
    if cases == 0 || checks == 0 {
        return Err("no palette-reduction case was exercised".into());
    }
    Ok(format!("{cases} (graph, k) cases, {lines} Maker lines, {checks} invariant checks, no failures"))
}

fn t8() -> Result<String, String> {
    let graphs = graphs_up_to(4, false)?;
    let mut cases = 0;
    for g in &graphs {
        for variant in Variant::ALL {
            if variant.is_connected() && !g.is_connected() {
                continue;
            }
            for k in 0..=3 {
                let spec = GameSpec::new(variant, k).with_default_ordering(g.n());
                let fast = solve(&spec, g).map_err(err)?.winner;
                let slow = naive_solve(&spec, g).map_err(err)?.winner;
                if fast != slow {
                    return Err(format!("{} {variant} k={k}: solver {fast:?}, plain search {slow:?}", g.to_graph6()));
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{} graphs, {cases} games agree", graphs.len()))
}

fn upward_closed(g: &Graph, variant: Variant, range: std::ops::RangeInclusive<u32>) -> Result<WinProfile, String> {
    let p = win_profile(g, variant, range, None).map_err(err)?;
    if !p.is_upward_closed() {
        return Err(format!("{} {variant} profile not upward-closed: {}", g.to_graph6(), p.summary()));
    }
    Ok(p)
}

fn t9() -> Result<String, String> {
    let graphs = graphs_up_to(5, false)?;
    let mut profiles = 0;
    let mut spot = 0;
    for g in &graphs {
        let delta = g.max_degree() as u32;
        let connected = g.is_connected();
        for variant in [Variant::Greedy, Variant::OrderedGreedy] {
            upward_closed(g, variant, 1..=delta + 2)?;
            profiles += 1;
        }
        for variant in [Variant::Marking, Variant::ConnectedMarking] {
            if variant.is_connected() && !connected {
                continue;
            }
            upward_closed(g, variant, 0..=g.n() as u32)?;
            profiles += 1;
        }
        for variant in [
            Variant::Vertex,
            Variant::ConnectedVertex,
            Variant::OrderedVertex,
            Variant::Greedy,
            Variant::OrderedGreedy,
        ] {
            if variant.is_connected() && !connected {
                continue;
            }
            let p = win_profile(g, variant, delta + 1..=delta + 2, None).map_err(err)?;
            if p.outcomes.iter().any(|&w| w != Player::Maker) {
                return Err(format!("{} {variant}: Maker should win with more than Δ colours: {}", g.to_graph6(), p.summary()));
            }
            spot += 2;
        }
        if g.m() > 0 {
            let m = g.m() as u32;
            let p = win_profile(g, Variant::Arboricity, m..=m + 1, None).map_err(err)?;
            if p.outcomes.iter().any(|&w| w != Player::Maker) {
                return Err(format!("{} arboricity: Maker should win with m colours: {}", g.to_graph6(), p.summary()));
            }
            spot += 2;
        }
    }
    let relabelled = colour_permutation_sweep()?;
    Ok(format!(
        "{profiles} greedy/marking profiles upward-closed; {spot} trivial-bound spot checks; {relabelled} relabelled positions agree"
    ))
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, k);
            out.push(q);
        }
    }
    out
}

/// Every position within two moves of the start, under every colour
/// permutation, has the same winner by plain search.
fn colour_permutation_sweep() -> Result<u64, String> {
    let mut checked = 0;
    for g in graphs_up_to(4, false)? {
        for variant in Variant::ALL.into_iter().filter(|v| v.is_colour_symmetric()) {
            if variant.is_connected() && !g.is_connected() {
                continue;
            }
            for k in 1..=3u32 {
                let game = Game::new(GameSpec::new(variant, k).with_default_ordering(g.n()), g.clone()).map_err(err)?;
                let perms = permutations(k as usize);
                let root = game.initial_position();
                let mut frontier = vec![root.clone()];
                for mv in game.legal_moves(&root) {
                    let child = game.apply(&root, &mv).map_err(err)?;
                    for mv2 in game.legal_moves(&child) {
                        frontier.push(game.apply(&child, &mv2).map_err(err)?);
                    }
                    frontier.push(child);
                }
                for pos in &frontier {
                    let base = plain_winner(&game, pos)?;
                    for perm in &perms {
                        if plain_winner(&game, &game.relabel_colours(pos, perm))? != base {
                            return Err(format!("{} {variant} k={k}: winner changes under colour permutation {perm:?}", g.to_graph6()));
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(checked)
}

fn plain_winner(game: &Game, pos: &Position) -> Result<bool, String> {
    naive_maker_wins(game, pos, &mut 0).map_err(err)
}

fn t10() -> Result<String, String> {
    let (fig4, dashed) = families::fig4_graph();
    let fig3 = families::fig3_graph();
    let stream = vec![families::complete(4), fig3.clone(), families::cycle(5), fig4.clone(), families::path(5)];
    let options = ScanOptions::default();

    let gap = search::scan(&stream, &Predicate::ChiGLessThanChiCg { k_max: None }, &options).map_err(err)?;
    let fig3_hit = gap.hits.iter().find(|h| h.graph6 == fig3.to_graph6()).ok_or("fig3 not flagged by chi-g-lt-chi-cg")?;
    if fig3_hit.witness != (Witness::ChiGap { chi_g: 4, chi_cg: 5 }) {
        return Err(format!("fig3 witness {}", fig3_hit.witness));
    }

    let edge = search::scan(&stream, &Predicate::ColCgEdgeNonMonotone { k_max: None }, &options).map_err(err)?;
    let fig4_hit = edge.hits.iter().find(|h| h.graph6 == fig4.to_graph6()).ok_or("fig4 not flagged by col-cg-edge")?;
    match &fig4_hit.witness {
        Witness::EdgeDeletion { col_cg: 3, edges } if edges.contains(&(dashed, 4)) => {}
        w => return Err(format!("fig4 witness {w}")),
    }
    for report in [&gap, &edge] {
        for hit in &report.hits {
            let g = Graph::from_graph6(&hit.graph6).map_err(err)?;
            let again = search::evaluate(&g, &hit.predicate, &SolverConfig::default()).map_err(err)?;
            if again.as_ref() != Some(hit) {
                return Err(format!("hit {hit} does not reproduce"));
            }
        }
    }

    let connected = graphs_up_to(6, true)?;
    let pred = Predicate::NonMonotoneProfile { variant: Variant::Arboricity, k_min: 1, k_max: None };
    let sweep = search::scan(&connected, &pred, &options).map_err(err)?;
    if !sweep.hits.is_empty() || !sweep.skipped.is_empty() {
        return Err(format!("arboricity sweep: {} hits, {} skipped", sweep.hits.len(), sweep.skipped.len()));
    }
    Ok(format!(
        "fig3 {}; fig4 {}; {} connected graphs n <= 6 with monotone arboricity profiles",
        fig3_hit.witness,
        fig4_hit.witness,
        connected.len()
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_ordered() {
        let ids: Vec<&str> = claims().iter().map(|c| c.id).collect();
        assert_eq!(ids, ["T1", "T2", "T3", "T4", "T5", "T6", "T7", "T8", "T9", "T10"]);
    }

    #[test]
    fn permutations_are_complete() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn quick_claims_pass() {
        for claim in claims().iter().filter(|c| ["T1", "T2", "T5"].contains(&c.id)) {
            let out = claim.run();
            assert!(out.passed, "{out}");
        }
    }
}
