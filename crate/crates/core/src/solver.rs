//! Exact win/loss search with a transposition table, strategy extraction and
//! an unmemoised reference search used as an oracle.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::rules::{Game, GameSpec, Move, Player, Position, PositionKey, RulesError, Status};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Rules(#[from] RulesError),
    #[error("transposition table reached its cap of {0} entries")]
    TableFull(usize),
    #[error("search deadline exceeded after {0} nodes")]
    Deadline(u64),
}

impl SolveError {
    /// True for budget exhaustion, as opposed to invalid input.
    pub fn is_resource(&self) -> bool {
        matches!(self, SolveError::TableFull(_) | SolveError::Deadline(_))
    }
}

#[derive(Debug, Clone, Default)]
pub struct SolverConfig {
    /// Fail with [`SolveError::TableFull`] rather than grow past this many entries.
    pub max_entries: Option<usize>,
    pub deadline: Option<Instant>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub winner: Player,
    pub nodes_searched: u64,
    pub table_entries: usize,
    pub elapsed: Duration,
}

enum Memo {
    Narrow(FxHashMap<u128, bool>),
    Wide(FxHashMap<[u64; 8], bool>),
}

impl Memo {
    fn get(&self, key: &PositionKey) -> Option<bool> {
        match (self, key) {
            (Memo::Narrow(m), PositionKey::Narrow(k)) => m.get(k).copied(),
            (Memo::Wide(m), PositionKey::Wide(k)) => m.get(k).copied(),
            _ => None,
        }
    }

    fn insert(&mut self, key: PositionKey, value: bool) {
        match key {
            PositionKey::Narrow(k) => match self {
                Memo::Narrow(m) => {
                    m.insert(k, value);
                }
                Memo::Wide(m) if m.is_empty() => *self = Memo::Narrow(FxHashMap::from_iter([(k, value)])),
                Memo::Wide(_) => unreachable!("a game never mixes key widths"),
            },
            PositionKey::Wide(k) => match self {
                Memo::Wide(m) => {
                    m.insert(k, value);
                }
                Memo::Narrow(m) if m.is_empty() => *self = Memo::Wide(FxHashMap::from_iter([(k, value)])),
                Memo::Narrow(_) => unreachable!("a game never mixes key widths"),
            },
        }
    }

    fn len(&self) -> usize {
        match self {
            Memo::Narrow(m) => m.len(),
            Memo::Wide(m) => m.len(),
        }
    }
}

/// Memoised AND/OR search over one game. The table persists across calls,
/// so the solver doubles as the strategy oracle for that game: after (or
/// instead of) [`Solver::solve`], [`Solver::best_move`] answers from the
/// table and extends it on demand.
pub struct Solver {
    game: Arc<Game>,
    memo: Memo,
    config: SolverConfig,
    nodes: u64,
}

/// The solver's table plus its fixed move order is the playable strategy.
pub type StrategyOracle = Solver;

impl Solver {
    pub fn new(game: impl Into<Arc<Game>>) -> Self {
        Self::with_config(game, SolverConfig::default())
    }

    pub fn with_config(game: impl Into<Arc<Game>>, config: SolverConfig) -> Self {
        Self { game: game.into(), memo: Memo::Narrow(FxHashMap::default()), config, nodes: 0 }
    }

    pub fn game(&self) -> &Arc<Game> {
        &self.game
    }

    pub fn nodes_searched(&self) -> u64 {
        self.nodes
    }

    pub fn table_entries(&self) -> usize {
        self.memo.len()
    }

    pub fn solve(&mut self) -> Result<SolveResult, SolveError> {
        let start = Instant::now();
        let root = self.game.initial_position();
        let maker = self.maker_wins(&root)?;
        Ok(SolveResult {
            winner: if maker { Player::Maker } else { Player::Breaker },
            nodes_searched: self.nodes,
            table_entries: self.memo.len(),
            elapsed: start.elapsed(),
        })
    }

    /// Winner from `pos` under optimal play.
    pub fn winner_from(&mut self, pos: &Position) -> Result<Player, SolveError> {
        Ok(if self.maker_wins(pos)? { Player::Maker } else { Player::Breaker })
    }

    pub fn maker_wins(&mut self, pos: &Position) -> Result<bool, SolveError> {
        self.search(pos)
    }

    /// Moves worth searching: for colour-symmetric variants all unused colours
    /// are interchangeable, so only the smallest unused one is tried. The
    /// first winning move in the full ascending order is always among these.
    fn search_moves(&self, pos: &Position) -> Vec<Move> {
        let mut moves = self.game.ongoing_moves(pos);
        if self.game.variant().is_colour_symmetric() {
            let used = pos.cells().iter().filter(|&&c| c != 0).fold(0u64, |m, &c| m | 1 << (c - 1));
            let fresh = used.trailing_ones() as usize + 1;
            moves.retain(|mv| {
                let c = match *mv {
                    Move::Colour { colour, .. }
                    | Move::OrderedColour { colour }
                    | Move::EdgeColour { colour, .. } => colour,
                    _ => return true,
                };
                c == fresh || used >> (c - 1) & 1 == 1
            });
        }
        moves
    }

    fn search(&mut self, pos: &Position) -> Result<bool, SolveError> {
        self.nodes += 1;
        if self.nodes % 4096 == 1 {
            if let Some(deadline) = self.config.deadline {
                if Instant::now() > deadline {
                    return Err(SolveError::Deadline(self.nodes));
                }
            }
        }
        match self.game.status(pos) {
            Status::MakerWin => return Ok(true),
            Status::BreakerWin => return Ok(false),
            Status::Ongoing => {}
        }
        if self.game.maker_wins_regardless(pos) {
            return Ok(true);
        }
        let key = self.game.canonical_key(pos);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v);
        }
        let maker_turn = pos.to_move() == Player::Maker;
        let mut result = !maker_turn;
        for mv in self.search_moves(pos) {
            let child = self.game.apply(pos, &mv)?;
            if self.search(&child)? == maker_turn {
                result = maker_turn;
                break;
            }
        }
        if let Some(cap) = self.config.max_entries {
            if self.memo.len() >= cap {
                return Err(SolveError::TableFull(cap));
            }
        }
        self.memo.insert(key, result);
        Ok(result)
    }

    /// First winning move for the side to move in ascending (element, colour)
    /// order; the first legal move if the side to move is lost.
    pub fn best_move(&mut self, pos: &Position) -> Result<Move, SolveError> {
        let status = self.game.status(pos);
        if status != Status::Ongoing {
            return Err(RulesError::GameOver(status).into());
        }
        let side = pos.to_move();
        let moves = self.game.ongoing_moves(pos);
        for mv in &moves {
            let child = self.game.apply(pos, mv)?;
            if self.winner_from(&child)? == side {
                return Ok(*mv);
            }
        }
        Ok(moves[0])
    }

    /// Both sides playing [`Solver::best_move`] from the initial position.
    pub fn principal_variation(&mut self) -> Result<Vec<Move>, SolveError> {
        let mut pos = self.game.initial_position();
        let mut line = Vec::new();
        while self.game.status(&pos) == Status::Ongoing {
            let mv = self.best_move(&pos)?;
            pos = self.game.apply(&pos, &mv)?;
            line.push(mv);
        }
        Ok(line)
    }
}

pub fn solve(spec: &GameSpec, g: &Graph) -> Result<SolveResult, SolveError> {
    Solver::new(Game::new(spec.clone(), g.clone())?).solve()
}

pub fn solve_with(spec: &GameSpec, g: &Graph, config: SolverConfig) -> Result<SolveResult, SolveError> {
    Solver::with_config(Game::new(spec.clone(), g.clone())?, config).solve()
}

pub fn principal_variation(spec: &GameSpec, g: &Graph) -> Result<Vec<Move>, SolveError> {
    Solver::new(Game::new(spec.clone(), g.clone())?).principal_variation()
}

/// Plain recursive search: no table, no colour canonicalisation, no static
/// evaluation. Exponential; meant for tiny inputs as a reference.
pub fn naive_solve(spec: &GameSpec, g: &Graph) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    let game = Game::new(spec.clone(), g.clone())?;
    let mut nodes = 0;
    let maker = naive_maker_wins(&game, &game.initial_position(), &mut nodes)?;
    Ok(SolveResult {
        winner: if maker { Player::Maker } else { Player::Breaker },
        nodes_searched: nodes,
        table_entries: 0,
        elapsed: start.elapsed(),
    })
}

pub fn naive_maker_wins(game: &Game, pos: &Position, nodes: &mut u64) -> Result<bool, SolveError> {
    *nodes += 1;
    match game.status(pos) {
        Status::MakerWin => return Ok(true),
        Status::BreakerWin => return Ok(false),
        Status::Ongoing => {}
    }
    let maker_turn = pos.to_move() == Player::Maker;
    for mv in game.legal_moves(pos) {
        let child = game.apply(pos, &mv)?;
        if naive_maker_wins(game, &child, nodes)? == maker_turn {
            return Ok(maker_turn);
        }
    }
    Ok(!maker_turn)
}
