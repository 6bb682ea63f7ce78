//! Stateful strategy agents and the palette-reduction transformer for the
//! game of arboricity.
//!
//! [`transform_breaker`] wraps a Breaker agent that wins with `k + 1` colours
//! and plays with `k` colours: it keeps an imagined game with the larger
//! palette, feeds Maker's real moves into it unchanged, and copies the wrapped
//! agent's replies into the real game, recolouring them when the imagined
//! colour is `k + 1` or is not legal for real. After every move it checks that
//! both games have coloured the same edges and that every colour class of the
//! imagined game is contained, component-wise, in the real one.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::rules::{Game, GameSpec, Move, Player, Position, RulesError, Status, Variant};
use crate::solver::{SolveError, Solver};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("{side:?} does not win this game; {winner:?} does")]
    LosingSide { side: Player, winner: Player },
    #[error("expected a {expected:?} agent, got a {got:?} agent")]
    WrongSide { expected: Player, got: Player },
    #[error("{0}")]
    Precondition(String),
    #[error("agent proposed illegal move {mv} after [{}]: {reason}", fmt_line(.history))]
    IllegalProposal { mv: Move, history: Vec<Move>, reason: String },
    #[error("observed move {mv} is illegal after [{}]: {reason}", fmt_line(.history))]
    IllegalObservation { mv: Move, history: Vec<Move>, reason: String },
    #[error("agent asked to move out of turn after [{}]", fmt_line(.0))]
    OutOfTurn(Vec<Move>),
    #[error("Breaker would concede: Maker's move {mv} is illegal in the imagined game after [{}]", fmt_line(.history))]
    Concede { mv: Move, history: Vec<Move> },
    #[error("real and imagined games coloured different edges after [{}]", fmt_line(.0))]
    EdgeSetMismatch(Vec<Move>),
    #[error("colour {colour}: vertices {u} and {v} share an imagined component but not a real one after [{}]", fmt_line(.history))]
    Containment { colour: usize, u: usize, v: usize, history: Vec<Move> },
    #[error("edge {edge} has no legal real colour although the real game is ongoing, after [{}]", fmt_line(.history))]
    NoRealColour { edge: String, history: Vec<Move> },
}

impl From<RulesError> for StrategyError {
    fn from(e: RulesError) -> Self {
        StrategyError::Solve(SolveError::Rules(e))
    }
}

fn fmt_line(moves: &[Move]) -> String {
    moves.iter().map(Move::to_string).collect::<Vec<_>>().join(" ")
}

/// A deterministic player for one side of one game.
///
/// The caller alternates [`StrategyAgent::observe`] (the opponent's move, as
/// played in the real game) and [`StrategyAgent::propose`] (the agent's own
/// move, which the caller must then play). Cloning an agent mid-game gives an
/// independent copy with the same history.
pub trait StrategyAgent: Send + Sync {
    fn side(&self) -> Player;
    fn reset(&mut self);
    fn observe(&mut self, mv: &Move) -> Result<(), StrategyError>;
    fn propose(&mut self) -> Result<Move, StrategyError>;
    fn box_clone(&self) -> Box<dyn StrategyAgent>;
}

impl Clone for Box<dyn StrategyAgent> {
    fn clone(&self) -> Self {
        self.box_clone()
    }
}

/// Plays [`Solver::best_move`]. Clones share the solver and its table.
#[derive(Clone)]
pub struct SolverAgent {
    side: Player,
    game: Arc<Game>,
    solver: Arc<Mutex<Solver>>,
    pos: Position,
    history: Vec<Move>,
}

impl SolverAgent {
    pub fn new(game: impl Into<Arc<Game>>, side: Player) -> Self {
        let game = game.into();
        let solver = Arc::new(Mutex::new(Solver::new(game.clone())));
        let pos = game.initial_position();
        Self { side, game, solver, pos, history: Vec::new() }
    }

    pub fn game(&self) -> &Arc<Game> {
        &self.game
    }

    pub fn position(&self) -> &Position {
        &self.pos
    }
}

impl StrategyAgent for SolverAgent {
    fn side(&self) -> Player {
        self.side
    }

    fn reset(&mut self) {
        self.pos = self.game.initial_position();
        self.history.clear();
    }

    fn observe(&mut self, mv: &Move) -> Result<(), StrategyError> {
        if self.pos.to_move() == self.side {
            return Err(StrategyError::OutOfTurn(self.history.clone()));
        }
        self.pos = self.game.apply(&self.pos, mv).map_err(|e| StrategyError::IllegalObservation {
            mv: *mv,
            history: self.history.clone(),
            reason: e.to_string(),
        })?;
        self.history.push(*mv);
        Ok(())
    }

    fn propose(&mut self) -> Result<Move, StrategyError> {
        if self.pos.to_move() != self.side {
            return Err(StrategyError::OutOfTurn(self.history.clone()));
        }
        let mv = self.solver.lock().expect("solver lock poisoned").best_move(&self.pos)?;
        self.pos = self.game.apply(&self.pos, &mv)?;
        self.history.push(mv);
        Ok(mv)
    }

    fn box_clone(&self) -> Box<dyn StrategyAgent> {
        Box::new(self.clone())
    }
}

/// A solver-backed agent for `side`, which must be the side that wins.
pub fn solver_strategy(spec: &GameSpec, g: &Graph, side: Player) -> Result<SolverAgent, StrategyError> {
    let agent = SolverAgent::new(Game::new(spec.clone(), g.clone())?, side);
    let winner = {
        let mut solver = agent.solver.lock().expect("solver lock poisoned");
        solver.solve()?.winner
    };
    if winner != side {
        return Err(StrategyError::LosingSide { side, winner });
    }
    Ok(agent)
}

/// One move of a transformed game.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub mover: Player,
    pub real: Move,
    pub imagined: Move,
    pub same_edges: bool,
    pub containment: bool,
}

impl fmt::Display for TraceEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ok = |b: bool| if b { "ok" } else { "FAILED" };
        write!(
            f,
            "{:<7} real {:<8} imagined {:<8} edges {} containment {}",
            format!("{:?}", self.mover),
            self.real.to_string(),
            self.imagined.to_string(),
            ok(self.same_edges),
            ok(self.containment)
        )
    }
}

/// Breaker agent for `k` colours driven by a Breaker agent for `k + 1`.
#[derive(Clone)]
pub struct ImaginationAgent {
    inner: Box<dyn StrategyAgent>,
    real_game: Arc<Game>,
    imagined_game: Arc<Game>,
    real: Position,
    imagined: Position,
    history: Vec<Move>,
    trace: Vec<TraceEntry>,
    checks: Arc<AtomicU64>,
}

/// Wraps a Breaker agent for the arboricity game on `g` with `k + 1` colours
/// into a Breaker agent with `k` colours.
pub fn transform_breaker(
    inner: Box<dyn StrategyAgent>,
    g: &Graph,
    k: u32,
) -> Result<ImaginationAgent, StrategyError> {
    if k == 0 {
        return Err(StrategyError::Precondition("the reduced palette needs k >= 1".into()));
    }
    if inner.side() != Player::Breaker {
        return Err(StrategyError::WrongSide { expected: Player::Breaker, got: inner.side() });
    }
    let real_game = Arc::new(Game::new(GameSpec::new(Variant::Arboricity, k), g.clone())?);
    let imagined_game = Arc::new(Game::new(GameSpec::new(Variant::Arboricity, k + 1), g.clone())?);
    let mut agent = ImaginationAgent {
        inner,
        real: real_game.initial_position(),
        imagined: imagined_game.initial_position(),
        real_game,
        imagined_game,
        history: Vec::new(),
        trace: Vec::new(),
        checks: Arc::new(AtomicU64::new(0)),
    };
    agent.reset();
    Ok(agent)
}

impl ImaginationAgent {
    pub fn real_position(&self) -> &Position {
        &self.real
    }

    pub fn imagined_position(&self) -> &Position {
        &self.imagined
    }

    pub fn trace(&self) -> &[TraceEntry] {
        &self.trace
    }

    /// Invariant checks performed so far by this agent and all its clones.
    pub fn checks_performed(&self) -> u64 {
        self.checks.load(Ordering::Relaxed)
    }

    fn same_edges(&self) -> bool {
        self.real.cells().iter().zip(self.imagined.cells()).all(|(a, b)| (*a == 0) == (*b == 0))
    }

    /// First pair (colour, u, v), 1-indexed, joined in the imagined colour
    /// class but not in the real one.
    fn containment_failure(&self) -> Option<(usize, usize, usize)> {
        let real = self.real.components().expect("edge-family position");
        let imagined = self.imagined.components().expect("edge-family position");
        for c in 1..=self.real_game.k() {
            for v in 0..self.real_game.graph().n() {
                let r = imagined.find(c, v);
                if !real.same(c, v, r) {
                    return Some((c, r + 1, v + 1));
                }
            }
        }
        None
    }

    fn check(&mut self, mover: Player, real: Move, imagined: Move) -> Result<(), StrategyError> {
        self.checks.fetch_add(1, Ordering::Relaxed);
        let same_edges = self.same_edges();
        let failure = self.containment_failure();
        self.trace.push(TraceEntry { mover, real, imagined, same_edges, containment: failure.is_none() });
        if !same_edges {
            return Err(StrategyError::EdgeSetMismatch(self.history.clone()));
        }
        if let Some((colour, u, v)) = failure {
            return Err(StrategyError::Containment { colour, u, v, history: self.history.clone() });
        }
        Ok(())
    }

    /// Least colour with which `u-v` can be played in the real game.
    fn least_real_colour(&self, u: usize, v: usize) -> Option<Move> {
        (1..=self.real_game.k())
            .map(|colour| Move::EdgeColour { u, v, colour })
            .find(|mv| self.real_game.is_legal(&self.real, mv))
    }
}

impl StrategyAgent for ImaginationAgent {
    fn side(&self) -> Player {
        Player::Breaker
    }

    fn reset(&mut self) {
        self.inner.reset();
        self.real = self.real_game.initial_position();
        self.imagined = self.imagined_game.initial_position();
        self.history.clear();
        self.trace.clear();
    }

    fn observe(&mut self, mv: &Move) -> Result<(), StrategyError> {
        if self.real.to_move() != Player::Maker {
            return Err(StrategyError::OutOfTurn(self.history.clone()));
        }
        self.real = self.real_game.apply(&self.real, mv).map_err(|e| StrategyError::IllegalObservation {
            mv: *mv,
            history: self.history.clone(),
            reason: e.to_string(),
        })?;
        self.history.push(*mv);
        self.imagined = self
            .imagined_game
            .apply(&self.imagined, mv)
            .map_err(|_| StrategyError::Concede { mv: *mv, history: self.history.clone() })?;
        self.inner.observe(mv)?;
        self.check(Player::Maker, *mv, *mv)
    }

    fn propose(&mut self) -> Result<Move, StrategyError> {
        if self.real.to_move() != Player::Breaker || self.real_game.status(&self.real) != Status::Ongoing {
            return Err(StrategyError::OutOfTurn(self.history.clone()));
        }
        let imagined_mv = self.inner.propose()?;
        self.imagined = self.imagined_game.apply(&self.imagined, &imagined_mv).map_err(|e| {
            StrategyError::IllegalProposal { mv: imagined_mv, history: self.history.clone(), reason: e.to_string() }
        })?;
        let Move::EdgeColour { u, v, colour } = imagined_mv else {
            unreachable!("arboricity moves are edge colourings")
        };
        let direct = Move::EdgeColour { u, v, colour };
        let real_mv = if colour <= self.real_game.k() && self.real_game.is_legal(&self.real, &direct) {
            direct
        } else {
            self.least_real_colour(u, v).ok_or_else(|| StrategyError::NoRealColour {
                edge: format!("{u}-{v}"),
                history: self.history.clone(),
            })?
        };
        self.real = self.real_game.apply(&self.real, &real_mv)?;
        self.history.push(real_mv);
        self.check(Player::Breaker, real_mv, imagined_mv)?;
        Ok(real_mv)
    }

    fn box_clone(&self) -> Box<dyn StrategyAgent> {
        Box::new(self.clone())
    }
}

/// Result of playing an agent against every Maker line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub agent_wins: bool,
    /// A Maker line (both sides' moves) ending in a Maker win.
    pub counterexample: Option<Vec<Move>>,
    /// Finished games examined.
    pub lines: u64,
}

impl Verification {
    pub fn counterexample_text(&self) -> Option<String> {
        self.counterexample.as_deref().map(fmt_line)
    }
}

/// Plays the Breaker `agent` against every possible sequence of Maker moves
/// in `spec` on `g`. The agent is cloned at each Maker branch point, so each
/// line sees a consistent history. Top-level Maker moves are explored in
/// parallel; the reported counterexample is the first in move order.
pub fn verify_agent_wins(
    spec: &GameSpec,
    g: &Graph,
    agent: &dyn StrategyAgent,
) -> Result<Verification, StrategyError> {
    if agent.side() != Player::Breaker {
        return Err(StrategyError::WrongSide { expected: Player::Breaker, got: agent.side() });
    }
    let game = Game::new(spec.clone().with_default_ordering(g.n()), g.clone())?;
    let root = game.initial_position();
    let moves = game.legal_moves(&root);
    if moves.is_empty() {
        let agent_wins = game.status(&root) == Status::BreakerWin;
        let counterexample = if agent_wins { None } else { Some(Vec::new()) };
        return Ok(Verification { agent_wins, counterexample, lines: 1 });
    }
    let branches = moves
        .par_iter()
        .map(|mv| {
            let mut line = Vec::new();
            let mut lines = 0;
            let found = maker_branch(&game, &root, agent.box_clone(), *mv, &mut line, &mut lines)?;
            Ok((found, lines))
        })
        .collect::<Result<Vec<_>, StrategyError>>()?;
    let lines = branches.iter().map(|(_, l)| l).sum();
    let counterexample = branches.into_iter().find_map(|(found, _)| found);
    Ok(Verification { agent_wins: counterexample.is_none(), counterexample, lines })
}

/// Maker plays `mv` from `pos`; returns a losing line for the agent if any.
fn maker_branch(
    game: &Game,
    pos: &Position,
    mut agent: Box<dyn StrategyAgent>,
    mv: Move,
    line: &mut Vec<Move>,
    lines: &mut u64,
) -> Result<Option<Vec<Move>>, StrategyError> {
    let after_maker = game.apply(pos, &mv)?;
    line.push(mv);
    let result = match game.status(&after_maker) {
        Status::MakerWin => {
            *lines += 1;
            Some(line.clone())
        }
        Status::BreakerWin => {
            *lines += 1;
            None
        }
        Status::Ongoing => {
            agent.observe(&mv)?;
            let reply = agent.propose()?;
            let after_breaker = game.apply(&after_maker, &reply).map_err(|e| StrategyError::IllegalProposal {
                mv: reply,
                history: line.clone(),
                reason: e.to_string(),
            })?;
            line.push(reply);
            let found = match game.status(&after_breaker) {
                Status::MakerWin => {
                    *lines += 1;
                    Some(line.clone())
                }
                Status::BreakerWin => {
                    *lines += 1;
                    None
                }
                Status::Ongoing => {
                    let mut found = None;
                    for next in game.legal_moves(&after_breaker) {
                        found = maker_branch(game, &after_breaker, agent.box_clone(), next, line, lines)?;
                        if found.is_some() {
                            break;
                        }
                    }
                    found
                }
            };
            line.pop();
            found
        }
    };
    line.pop();
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn arb(k: u32) -> GameSpec {
        GameSpec::new(Variant::Arboricity, k)
    }

    #[test]
    fn solver_strategy_checks_the_winner() {
        assert!(solver_strategy(&arb(1), &families::complete(3), Player::Breaker).is_ok());
        let err = solver_strategy(&arb(1), &families::path(3), Player::Breaker).err().unwrap();
        assert_eq!(err, StrategyError::LosingSide { side: Player::Breaker, winner: Player::Maker });
        assert!(solver_strategy(&arb(2), &families::complete(5), Player::Breaker).is_ok());
    }

    #[test]
    fn verifier_finds_forest_line() {
        let p3 = families::path(3);
        let agent = SolverAgent::new(Game::new(arb(1), p3.clone()).unwrap(), Player::Breaker);
        let v = verify_agent_wins(&arb(1), &p3, &agent).unwrap();
        assert!(!v.agent_wins);
        assert_eq!(v.counterexample.unwrap().len(), 2);
    }

    #[test]
    fn solver_breaker_wins_k3() {
        let k3 = families::complete(3);
        let agent = solver_strategy(&arb(1), &k3, Player::Breaker).unwrap();
        assert!(verify_agent_wins(&arb(1), &k3, &agent).unwrap().agent_wins);
    }

    #[test]
    fn transformed_k5_agent_wins() {
        let k5 = families::complete(5);
        let inner = solver_strategy(&arb(2), &k5, Player::Breaker).unwrap();
        let agent = transform_breaker(Box::new(inner), &k5, 1).unwrap();
        let v = verify_agent_wins(&arb(1), &k5, &agent).unwrap();
        assert!(v.agent_wins, "{:?}", v.counterexample_text());
        assert!(agent.checks_performed() > 0);
    }

    #[test]
    fn transform_rejects_empty_palette() {
        let k3 = families::complete(3);
        let inner = solver_strategy(&arb(1), &k3, Player::Breaker).unwrap();
        assert!(matches!(transform_breaker(Box::new(inner), &k3, 0), Err(StrategyError::Precondition(_))));
    }

    #[test]
    fn trace_records_both_games() {
        let k4 = families::complete(4);
        let inner = solver_strategy(&arb(2), &k4, Player::Breaker).unwrap();
        let mut agent = transform_breaker(Box::new(inner), &k4, 1).unwrap();
        agent.observe(&Move::EdgeColour { u: 1, v: 2, colour: 1 }).unwrap();
        let reply = agent.propose().unwrap();
        assert_eq!(agent.trace().len(), 2);
        let last = &agent.trace()[1];
        assert_eq!(last.real, reply);
        assert!(last.same_edges && last.containment);
        let (Move::EdgeColour { u: a, v: b, .. }, Move::EdgeColour { u: c, v: d, .. }) = (last.real, last.imagined) else {
            panic!("edge moves expected")
        };
        assert_eq!((a, b), (c, d));
    }
}
