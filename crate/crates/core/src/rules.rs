//! Rules for every game variant: positions, legal moves, move application,
//! terminal status and canonical memo keys.
//!
//! All variants share one [`Position`] layout: a cell per game element
//! (vertex or edge) holding `0` for unplayed or the colour played there
//! (`1` for a marked vertex). Whose turn it is follows from the number of
//! played cells, Maker moving first.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::components::ColourComponents;
use crate::graph::{bits, full_mask, Graph, VertexOrdering};

/// Largest palette supported by the colouring variants.
pub const MAX_COLOURS: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    Vertex,
    ConnectedVertex,
    OrderedVertex,
    Greedy,
    OrderedGreedy,
    Arboricity,
    Marking,
    ConnectedMarking,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Vertex,
    Edge,
    Mark,
}

impl Variant {
    pub const ALL: [Variant; 8] = [
        Variant::Vertex,
        Variant::ConnectedVertex,
        Variant::OrderedVertex,
        Variant::Greedy,
        Variant::OrderedGreedy,
        Variant::Arboricity,
        Variant::Marking,
        Variant::ConnectedMarking,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Vertex => "vertex",
            Variant::ConnectedVertex => "cvertex",
            Variant::OrderedVertex => "overtex",
            Variant::Greedy => "greedy",
            Variant::OrderedGreedy => "ogreedy",
            Variant::Arboricity => "arboricity",
            Variant::Marking => "marking",
            Variant::ConnectedMarking => "cmarking",
        }
    }

    pub fn family(self) -> Family {
        match self {
            Variant::Arboricity => Family::Edge,
            Variant::Marking | Variant::ConnectedMarking => Family::Mark,
            _ => Family::Vertex,
        }
    }

    pub fn is_connected(self) -> bool {
        matches!(self, Variant::ConnectedVertex | Variant::ConnectedMarking)
    }

    pub fn is_ordered(self) -> bool {
        matches!(self, Variant::OrderedVertex | Variant::OrderedGreedy)
    }

    pub fn is_marking(self) -> bool {
        self.family() == Family::Mark
    }

    /// Variants whose rules are invariant under renaming colours.
    pub fn is_colour_symmetric(self) -> bool {
        matches!(
            self,
            Variant::Vertex | Variant::ConnectedVertex | Variant::OrderedVertex | Variant::Arboricity
        )
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| format!("unknown variant {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Player {
    Maker,
    Breaker,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Maker => Player::Breaker,
            Player::Breaker => Player::Maker,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Maker => "Maker",
            Player::Breaker => "Breaker",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Ongoing,
    MakerWin,
    BreakerWin,
}

impl Status {
    pub fn won_by(player: Player) -> Status {
        match player {
            Player::Maker => Status::MakerWin,
            Player::Breaker => Status::BreakerWin,
        }
    }

    pub fn winner(self) -> Option<Player> {
        match self {
            Status::Ongoing => None,
            Status::MakerWin => Some(Player::Maker),
            Status::BreakerWin => Some(Player::Breaker),
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Ongoing => "Ongoing",
            Status::MakerWin => "MakerWin",
            Status::BreakerWin => "BreakerWin",
        })
    }
}

/// Variant plus its numeric parameter.
///
/// `k` is the palette size (colours `1..=k`) for colouring variants and the
/// back-degree bound `s` for the marking variants: Maker wins a marking game
/// iff every vertex is marked with at most `s` already-marked neighbours.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GameSpec {
    pub variant: Variant,
    pub k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ordering: Option<VertexOrdering>,
}

impl GameSpec {
    pub fn new(variant: Variant, k: u32) -> Self {
        Self { variant, k, ordering: None }
    }

    pub fn with_ordering(mut self, ordering: VertexOrdering) -> Self {
        self.ordering = Some(ordering);
        self
    }

    /// Attaches the identity ordering when the variant needs one and none is set.
    pub fn with_default_ordering(mut self, n: usize) -> Self {
        if self.variant.is_ordered() && self.ordering.is_none() {
            self.ordering = Some(VertexOrdering::identity(n));
        }
        self
    }
}

/// A move; vertices are 1-indexed, colours `1..=k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    /// Vertex and connected-vertex games.
    Colour { vertex: usize, colour: usize },
    /// Ordered vertex game: the vertex is the next one in the ordering.
    OrderedColour { colour: usize },
    /// Greedy game: the colour is forced first-fit.
    Pick { vertex: usize },
    /// Ordered greedy game: nothing left to choose.
    Forced,
    /// Arboricity game, `u < v`.
    EdgeColour { u: usize, v: usize, colour: usize },
    /// Marking games.
    Mark { vertex: usize },
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Move::Colour { vertex, colour } => write!(f, "{vertex}:{colour}"),
            Move::OrderedColour { colour } => write!(f, ":{colour}"),
            Move::Pick { vertex } | Move::Mark { vertex } => write!(f, "{vertex}"),
            Move::Forced => f.write_str("*"),
            Move::EdgeColour { u, v, colour } => write!(f, "{u}-{v}:{colour}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RulesError {
    #[error("{0} requires a connected graph")]
    Disconnected(Variant),
    #[error("{0} requires a vertex ordering")]
    MissingOrdering(Variant),
    #[error("ordering has {got} entries, graph has {expected} vertices")]
    OrderingLength { expected: usize, got: usize },
    #[error("palette of {0} colours exceeds the supported maximum {MAX_COLOURS}")]
    PaletteTooLarge(u32),
    #[error("position does not fit the {0}-bit memo key")]
    KeyCapacity(usize),
    #[error("game is over ({0})")]
    GameOver(Status),
    #[error("illegal move {mv}: {reason}")]
    IllegalMove { mv: String, reason: String },
    #[error("cannot parse move {0:?}")]
    BadMoveText(String),
}

/// Game state; see the module docs for the cell layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Position {
    cells: Vec<u8>,
    played: usize,
    // vertex set touched so far (vertex and mark families)
    played_mask: u64,
    components: Option<ColourComponents>,
    // (vertex, back-degree) of the first over-bound marking
    violation: Option<(usize, usize)>,
}

impl Position {
    pub fn played(&self) -> usize {
        self.played
    }

    pub fn to_move(&self) -> Player {
        if self.played.is_multiple_of(2) {
            Player::Maker
        } else {
            Player::Breaker
        }
    }

    /// Raw cells: per vertex (vertex/mark families) or per edge index (arboricity).
    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    /// Colour (or mark flag) at element `index` (0-based), `None` if unplayed.
    pub fn cell(&self, index: usize) -> Option<usize> {
        match self.cells[index] {
            0 => None,
            c => Some(c as usize),
        }
    }

    /// Colour of vertex `v` (1-indexed) in vertex-family games.
    pub fn colour(&self, v: usize) -> Option<usize> {
        self.cell(v - 1)
    }

    pub fn is_marked(&self, v: usize) -> bool {
        self.cells[v - 1] != 0
    }

    pub fn components(&self) -> Option<&ColourComponents> {
        self.components.as_ref()
    }

    /// First marking that exceeded the bound: `(vertex, back-degree)`.
    pub fn violation(&self) -> Option<(usize, usize)> {
        self.violation.map(|(v, d)| (v + 1, d))
    }

    /// Played elements as a set of indices.
    pub fn played_elements(&self) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| self.cells[i] != 0).collect()
    }
}

/// Exact memo key; colours are canonicalised where the variant allows it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PositionKey {
    Narrow(u128),
    Wide([u64; 8]),
}

const WIDE_BITS: usize = 512;

/// Game settings bound to a graph, validated once.
#[derive(Debug, Clone)]
pub struct Game {
    spec: GameSpec,
    graph: Graph,
    order: Vec<usize>,
    cell_bits: usize,
}

impl Game {
    pub fn new(spec: GameSpec, graph: Graph) -> Result<Self, RulesError> {
        let variant = spec.variant;
        if variant.is_connected() && !graph.is_connected() {
            return Err(RulesError::Disconnected(variant));
        }
        if !variant.is_marking() && spec.k > MAX_COLOURS {
            return Err(RulesError::PaletteTooLarge(spec.k));
        }
        let order = if variant.is_ordered() {
            let ordering = spec.ordering.as_ref().ok_or(RulesError::MissingOrdering(variant))?;
            if ordering.len() != graph.n() {
                return Err(RulesError::OrderingLength { expected: graph.n(), got: ordering.len() });
            }
            ordering.as_slice().iter().map(|v| v - 1).collect()
        } else {
            Vec::new()
        };
        let cell_bits = match variant.family() {
            Family::Mark => 1,
            // greedy cells can hold k + 1 on the losing move
            _ => (usize::BITS - (spec.k as usize + 1).leading_zeros()) as usize,
        };
        let elements = match variant.family() {
            Family::Edge => graph.m(),
            _ => graph.n(),
        };
        if elements * cell_bits > WIDE_BITS {
            return Err(RulesError::KeyCapacity(WIDE_BITS));
        }
        Ok(Self { spec, graph, order, cell_bits })
    }

    pub fn spec(&self) -> &GameSpec {
        &self.spec
    }

    pub fn variant(&self) -> Variant {
        self.spec.variant
    }

    pub fn k(&self) -> usize {
        self.spec.k as usize
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Number of elements to be played: edges for arboricity, vertices otherwise.
    pub fn elements(&self) -> usize {
        match self.variant().family() {
            Family::Edge => self.graph.m(),
            _ => self.graph.n(),
        }
    }

    pub fn initial_position(&self) -> Position {
        let components = match self.variant().family() {
            Family::Edge => Some(ColourComponents::new(self.graph.n(), self.k())),
            _ => None,
        };
        Position {
            cells: vec![0; self.elements()],
            played: 0,
            played_mask: 0,
            components,
            violation: None,
        }
    }

    fn palette_mask(&self) -> u64 {
        full_mask(self.k())
    }

    /// Colours present on the coloured neighbours of `v0`, bit `c - 1` for colour `c`.
    fn neighbour_colours(&self, pos: &Position, v0: usize) -> u64 {
        let mut mask = 0u64;
        for w in bits(self.graph.adj_mask(v0) & pos.played_mask) {
            let c = pos.cells[w] as u32;
            if (1..=64).contains(&c) {
                mask |= 1 << (c - 1);
            }
        }
        mask
    }

    fn adjacent_to_played(&self, pos: &Position, v0: usize) -> bool {
        pos.played == 0 || self.graph.adj_mask(v0) & pos.played_mask != 0
    }

    fn next_in_order(&self, pos: &Position) -> Option<usize> {
        self.order.get(pos.played).copied()
    }

    fn edge_open(&self, pos: &Position, e: usize, colour: usize) -> bool {
        let (u, v) = self.graph.edge0(e);
        !pos.components.as_ref().expect("edge-family position").same(colour, u, v)
    }

    /// Legal moves in ascending (element, colour) order. Empty iff the game is over.
    pub fn legal_moves(&self, pos: &Position) -> Vec<Move> {
        if self.status(pos) != Status::Ongoing {
            return Vec::new();
        }
        self.ongoing_moves(pos)
    }

    /// [`Game::legal_moves`] for a position already known to be ongoing.
    pub(crate) fn ongoing_moves(&self, pos: &Position) -> Vec<Move> {
        let mut moves = Vec::new();
        let n = self.graph.n();
        match self.variant() {
            Variant::Vertex | Variant::ConnectedVertex => {
                let connected = self.variant().is_connected();
                for v0 in 0..n {
                    if pos.cells[v0] != 0 || (connected && !self.adjacent_to_played(pos, v0)) {
                        continue;
                    }
                    let free = !self.neighbour_colours(pos, v0) & self.palette_mask();
                    moves.extend(bits(free).map(|c| Move::Colour { vertex: v0 + 1, colour: c + 1 }));
                }
            }
            Variant::OrderedVertex => {
                if let Some(v0) = self.next_in_order(pos) {
                    let free = !self.neighbour_colours(pos, v0) & self.palette_mask();
                    moves.extend(bits(free).map(|c| Move::OrderedColour { colour: c + 1 }));
                }
            }
            Variant::Greedy => {
                moves.extend((0..n).filter(|&v0| pos.cells[v0] == 0).map(|v0| Move::Pick { vertex: v0 + 1 }));
            }
            Variant::OrderedGreedy => {
                if self.next_in_order(pos).is_some() {
                    moves.push(Move::Forced);
                }
            }
            Variant::Arboricity => {
                for e in (0..self.graph.m()).filter(|&e| pos.cells[e] == 0) {
                    let (u, v) = self.graph.edge0(e);
                    for c in (1..=self.k()).filter(|&c| self.edge_open(pos, e, c)) {
                        moves.push(Move::EdgeColour { u: u + 1, v: v + 1, colour: c });
                    }
                }
            }
            Variant::Marking | Variant::ConnectedMarking => {
                let connected = self.variant().is_connected();
                for v0 in 0..n {
                    if pos.cells[v0] == 0 && (!connected || self.adjacent_to_played(pos, v0)) {
                        moves.push(Move::Mark { vertex: v0 + 1 });
                    }
                }
            }
        }
        assert!(!moves.is_empty(), "ongoing position without legal moves: {pos:?}");
        moves
    }

    fn illegal(mv: &Move, reason: impl Into<String>) -> RulesError {
        RulesError::IllegalMove { mv: mv.to_string(), reason: reason.into() }
    }

    fn check_vertex(&self, pos: &Position, mv: &Move, vertex: usize) -> Result<usize, RulesError> {
        if vertex == 0 || vertex > self.graph.n() {
            return Err(Self::illegal(mv, format!("vertex outside 1..={}", self.graph.n())));
        }
        let v0 = vertex - 1;
        if pos.cells[v0] != 0 {
            return Err(Self::illegal(mv, "vertex already played"));
        }
        if self.variant().is_connected() && !self.adjacent_to_played(pos, v0) {
            return Err(Self::illegal(mv, "vertex not adjacent to the played set"));
        }
        Ok(v0)
    }

    fn check_colour(&self, pos: &Position, mv: &Move, v0: usize, colour: usize) -> Result<u8, RulesError> {
        if colour == 0 || colour > self.k() {
            return Err(Self::illegal(mv, format!("colour outside 1..={}", self.k())));
        }
        if self.neighbour_colours(pos, v0) >> (colour - 1) & 1 == 1 {
            return Err(Self::illegal(mv, "a neighbour already has this colour"));
        }
        Ok(colour as u8)
    }

    fn first_fit(&self, pos: &Position, v0: usize) -> u8 {
        let c = self.neighbour_colours(pos, v0).trailing_ones() as usize + 1;
        c.min(self.k() + 1) as u8
    }

    /// Resolves a move into (element index, cell value), or explains why it is illegal.
    fn resolve(&self, pos: &Position, mv: &Move) -> Result<(usize, u8), RulesError> {
        let status = self.status(pos);
        if status != Status::Ongoing {
            return Err(RulesError::GameOver(status));
        }
        let wrong_kind = || Self::illegal(mv, format!("not a {} move", self.variant()));
        match (self.variant(), *mv) {
            (Variant::Vertex | Variant::ConnectedVertex, Move::Colour { vertex, colour }) => {
                let v0 = self.check_vertex(pos, mv, vertex)?;
                Ok((v0, self.check_colour(pos, mv, v0, colour)?))
            }
            (Variant::OrderedVertex, Move::OrderedColour { colour }) => {
                let v0 = self.next_in_order(pos).ok_or_else(|| Self::illegal(mv, "no vertex left"))?;
                Ok((v0, self.check_colour(pos, mv, v0, colour)?))
            }
            (Variant::Greedy, Move::Pick { vertex }) => {
                let v0 = self.check_vertex(pos, mv, vertex)?;
                Ok((v0, self.first_fit(pos, v0)))
            }
            (Variant::OrderedGreedy, Move::Forced) => {
                let v0 = self.next_in_order(pos).ok_or_else(|| Self::illegal(mv, "no vertex left"))?;
                Ok((v0, self.first_fit(pos, v0)))
            }
            (Variant::Arboricity, Move::EdgeColour { u, v, colour }) => {
                let e = self.graph.edge_index(u, v).ok_or_else(|| Self::illegal(mv, "no such edge"))?;
                if pos.cells[e] != 0 {
                    return Err(Self::illegal(mv, "edge already coloured"));
                }
                if colour == 0 || colour > self.k() {
                    return Err(Self::illegal(mv, format!("colour outside 1..={}", self.k())));
                }
                if !self.edge_open(pos, e, colour) {
                    return Err(Self::illegal(mv, "would close a monochromatic cycle"));
                }
                Ok((e, colour as u8))
            }
            (Variant::Marking | Variant::ConnectedMarking, Move::Mark { vertex }) => {
                Ok((self.check_vertex(pos, mv, vertex)?, 1))
            }
            _ => Err(wrong_kind()),
        }
    }

    pub fn is_legal(&self, pos: &Position, mv: &Move) -> bool {
        self.resolve(pos, mv).is_ok()
    }

    pub fn apply(&self, pos: &Position, mv: &Move) -> Result<Position, RulesError> {
        let (element, value) = self.resolve(pos, mv)?;
        let mut next = pos.clone();
        next.cells[element] = value;
        next.played += 1;
        match self.variant().family() {
            Family::Edge => {
                let (u, v) = self.graph.edge0(element);
                let merged = next.components.as_mut().expect("edge-family position").union(value as usize, u, v);
                debug_assert!(merged);
                debug_assert!(self.class_consistent(&next, value as usize));
            }
            Family::Mark => {
                let back = (self.graph.adj_mask(element) & pos.played_mask).count_ones() as usize;
                if back > self.spec.k as usize && next.violation.is_none() {
                    next.violation = Some((element, back));
                }
                next.played_mask |= 1 << element;
            }
            Family::Vertex => next.played_mask |= 1 << element,
        }
        Ok(next)
    }

    /// Recomputes every colour class's components from scratch and compares
    /// them with the incrementally maintained ones.
    pub fn components_consistent(&self, pos: &Position) -> bool {
        (1..=self.k()).all(|c| self.class_consistent(pos, c))
    }

    fn class_consistent(&self, pos: &Position, colour: usize) -> bool {
        let Some(cc) = pos.components.as_ref() else { return true };
        let n = self.graph.n();
        let mut adj = vec![0u64; n];
        for e in (0..self.graph.m()).filter(|&e| pos.cells[e] as usize == colour) {
            let (u, v) = self.graph.edge0(e);
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        let labels = cc.labels(colour);
        (0..n).all(|u| {
            let seen = reach_in(&adj, 1 << u);
            (0..n).all(|v| (seen >> v & 1 == 1) == (labels[u] == labels[v]))
        })
    }

    fn element_blocked(&self, pos: &Position, element: usize) -> bool {
        match self.variant().family() {
            Family::Vertex => {
                let palette = self.palette_mask();
                self.neighbour_colours(pos, element) & palette == palette
            }
            Family::Edge => (1..=self.k()).all(|c| !self.edge_open(pos, element, c)),
            Family::Mark => false,
        }
    }

    /// Terminal status. Breaker wins as soon as some unplayed element can no
    /// longer receive any colour (or, for marking, as soon as a vertex was
    /// marked above the bound); Maker wins once everything is played.
    pub fn status(&self, pos: &Position) -> Status {
        if pos.violation.is_some() {
            return Status::BreakerWin;
        }
        let k = self.k();
        if pos.cells.iter().any(|&c| c as usize > k && !self.variant().is_marking()) {
            return Status::BreakerWin;
        }
        if (0..pos.cells.len()).any(|i| pos.cells[i] == 0 && self.element_blocked(pos, i)) {
            return Status::BreakerWin;
        }
        if pos.played == pos.cells.len() {
            return Status::MakerWin;
        }
        Status::Ongoing
    }

    /// Sound static test: true only if Maker wins from `pos` whatever anyone plays.
    ///
    /// Every future move removes at most one colour from any single element's
    /// options, so an element with more free colours than there are moves
    /// that can affect it is never blocked.
    pub(crate) fn maker_wins_regardless(&self, pos: &Position) -> bool {
        let n = self.graph.n();
        match self.variant().family() {
            Family::Vertex => {
                let palette = self.palette_mask();
                (0..n).filter(|&v0| pos.cells[v0] == 0).all(|v0| {
                    let free = (!self.neighbour_colours(pos, v0) & palette).count_ones();
                    let open = (self.graph.adj_mask(v0) & !pos.played_mask).count_ones();
                    free > open
                })
            }
            Family::Edge => {
                // An edge also stays playable if, for some colour, its endpoints
                // cannot be joined even using every other uncoloured edge.
                let remaining = pos.cells.len() - pos.played;
                let k = self.k();
                let mut open_adj = vec![0u64; n];
                let mut colour_adj = vec![0u64; n * k];
                for (e, &c) in pos.cells.iter().enumerate() {
                    let (u, v) = self.graph.edge0(e);
                    let adj = if c == 0 { &mut open_adj[..] } else { &mut colour_adj[(c as usize - 1) * n..][..n] };
                    adj[u] |= 1 << v;
                    adj[v] |= 1 << u;
                }
                (0..pos.cells.len()).filter(|&e| pos.cells[e] == 0).all(|e| {
                    if (1..=k).filter(|&c| self.edge_open(pos, e, c)).count() >= remaining {
                        return true;
                    }
                    let (x, y) = self.graph.edge0(e);
                    (0..k).any(|c| {
                        let adj = &colour_adj[c * n..][..n];
                        let step = |w: usize| {
                            let mut a = adj[w] | open_adj[w];
                            if w == x {
                                a &= !(1 << y);
                            } else if w == y {
                                a &= !(1 << x);
                            }
                            a
                        };
                        let mut seen = 1u64 << x;
                        let mut frontier = seen;
                        while frontier != 0 && seen >> y & 1 == 0 {
                            let next = bits(frontier).fold(0, |acc, w| acc | step(w)) & !seen;
                            seen |= next;
                            frontier = next;
                        }
                        seen >> y & 1 == 0
                    })
                })
            }
            Family::Mark => {
                pos.violation.is_none()
                    && (0..n)
                        .filter(|&v0| pos.cells[v0] == 0)
                        .all(|v0| self.graph.adj_mask(v0).count_ones() <= self.spec.k)
            }
        }
    }

    /// Memo key. Colour-symmetric variants rename colours in order of first
    /// appearance along the element scan; turn is implied by the played count.
    pub fn canonical_key(&self, pos: &Position) -> PositionKey {
        let symmetric = self.variant().is_colour_symmetric();
        let mut rename = [0u8; 66];
        let mut next = 1u8;
        let mut words = [0u64; 8];
        let mut bit = 0usize;
        for &raw in &pos.cells {
            let value = if symmetric && raw != 0 {
                let slot = &mut rename[raw as usize];
                if *slot == 0 {
                    *slot = next;
                    next += 1;
                }
                *slot
            } else {
                raw
            } as u64;
            let (w, off) = (bit / 64, bit % 64);
            words[w] |= value << off;
            if off + self.cell_bits > 64 {
                words[w + 1] |= value >> (64 - off);
            }
            bit += self.cell_bits;
        }
        if bit <= 128 {
            PositionKey::Narrow(words[0] as u128 | (words[1] as u128) << 64)
        } else {
            PositionKey::Wide(words)
        }
    }

    /// Applies the colour permutation `perm` (colour `c` becomes `perm[c - 1]`).
    pub fn relabel_colours(&self, pos: &Position, perm: &[usize]) -> Position {
        assert_eq!(perm.len(), self.k(), "permutation must cover the palette");
        let mut next = pos.clone();
        for cell in next.cells.iter_mut().filter(|c| **c != 0) {
            *cell = perm[*cell as usize - 1] as u8;
        }
        if self.variant().family() == Family::Edge {
            let mut cc = ColourComponents::new(self.graph.n(), self.k());
            for e in 0..next.cells.len() {
                if next.cells[e] != 0 {
                    let (u, v) = self.graph.edge0(e);
                    cc.union(next.cells[e] as usize, u, v);
                }
            }
            next.components = Some(cc);
        }
        next
    }

    /// Parses a move typed by a person: `v c` / `v:c` (vertex), `c` (ordered),
    /// `v` (greedy, marking), empty or `*` (ordered greedy), `u v c` / `u-v:c` (arboricity).
    pub fn parse_move(&self, text: &str) -> Result<Move, RulesError> {
        let bad = || RulesError::BadMoveText(text.to_string());
        let nums: Vec<usize> = text
            .split(|c: char| c.is_whitespace() || c == ':' || c == '-' || c == ',')
            .filter(|s| !s.is_empty() && *s != "*")
            .map(|s| s.parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        match (self.variant(), nums.as_slice()) {
            (Variant::Vertex | Variant::ConnectedVertex, &[vertex, colour]) => {
                Ok(Move::Colour { vertex, colour })
            }
            (Variant::OrderedVertex, &[colour]) => Ok(Move::OrderedColour { colour }),
            (Variant::Greedy, &[vertex]) => Ok(Move::Pick { vertex }),
            (Variant::OrderedGreedy, &[]) => Ok(Move::Forced),
            (Variant::Arboricity, &[u, v, colour]) => Ok(Move::EdgeColour { u: u.min(v), v: u.max(v), colour }),
            (Variant::Marking | Variant::ConnectedMarking, &[vertex]) => Ok(Move::Mark { vertex }),
            _ => Err(bad()),
        }
    }
}

/// Closure of `start` under the adjacency masks `adj`.
fn reach_in(adj: &[u64], start: u64) -> u64 {
    let mut seen = start;
    let mut frontier = start;
    while frontier != 0 {
        let next = bits(frontier).fold(0, |acc, w| acc | adj[w]) & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn k3() -> Graph {
        families::complete(3)
    }

    fn game(variant: Variant, k: u32, g: Graph) -> Game {
        let n = g.n();
        Game::new(GameSpec::new(variant, k).with_default_ordering(n), g).unwrap()
    }

    fn play(game: &Game, moves: &[Move]) -> Position {
        moves.iter().fold(game.initial_position(), |p, m| game.apply(&p, m).unwrap())
    }

    #[test]
    fn initial_positions() {
        let g = game(Variant::Vertex, 3, k3());
        let p = g.initial_position();
        assert_eq!(p.played(), 0);
        assert_eq!(p.to_move(), Player::Maker);
        assert!((1..=3).all(|v| p.colour(v).is_none()));
        let h1 = families::h_r(1).unwrap();
        let og = Game::new(GameSpec::new(Variant::OrderedVertex, 3).with_ordering(h1.ordering), h1.graph).unwrap();
        assert_eq!(og.initial_position().cells().len(), 9);
    }

    #[test]
    fn preconditions_are_enforced() {
        let two = Graph::empty(2).unwrap();
        assert_eq!(
            Game::new(GameSpec::new(Variant::ConnectedVertex, 5), two.clone()).unwrap_err(),
            RulesError::Disconnected(Variant::ConnectedVertex)
        );
        assert_eq!(
            Game::new(GameSpec::new(Variant::OrderedVertex, 3), two.clone()).unwrap_err(),
            RulesError::MissingOrdering(Variant::OrderedVertex)
        );
        assert!(matches!(
            Game::new(GameSpec::new(Variant::OrderedVertex, 3).with_ordering(VertexOrdering::identity(3)), two.clone()),
            Err(RulesError::OrderingLength { .. })
        ));
        assert!(Game::new(GameSpec::new(Variant::Vertex, 65), two).is_err());
    }

    #[test]
    fn vertex_legal_moves_after_first_move() {
        let g = game(Variant::Vertex, 2, k3());
        let p = play(&g, &[Move::Colour { vertex: 1, colour: 1 }]);
        assert_eq!(
            g.legal_moves(&p),
            vec![Move::Colour { vertex: 2, colour: 2 }, Move::Colour { vertex: 3, colour: 2 }]
        );
    }

    #[test]
    fn ordered_legal_colours_on_h_r() {
        for r in 1..=3 {
            let h = families::h_r(r).unwrap();
            let g = Game::new(GameSpec::new(Variant::OrderedVertex, 3).with_ordering(h.ordering), h.graph).unwrap();
            let p = play(&g, &[Move::OrderedColour { colour: 1 }, Move::OrderedColour { colour: 2 }]);
            assert_eq!(
                g.legal_moves(&p),
                vec![Move::OrderedColour { colour: 2 }, Move::OrderedColour { colour: 3 }]
            );
        }
    }

    #[test]
    fn arboricity_cycle_closing_edge_is_unplayable() {
        let g = game(Variant::Arboricity, 1, k3());
        let p = play(
            &g,
            &[Move::EdgeColour { u: 1, v: 2, colour: 1 }, Move::EdgeColour { u: 2, v: 3, colour: 1 }],
        );
        assert!(g.legal_moves(&p).is_empty());
        assert_eq!(g.status(&p), Status::BreakerWin);
    }

    #[test]
    fn arboricity_apply_merges_components() {
        let g = game(Variant::Arboricity, 2, k3());
        let p = play(
            &g,
            &[
                Move::EdgeColour { u: 1, v: 3, colour: 1 },
                Move::EdgeColour { u: 2, v: 3, colour: 1 },
                Move::EdgeColour { u: 1, v: 2, colour: 2 },
            ],
        );
        assert_eq!(g.status(&p), Status::MakerWin);
        let cc = p.components().unwrap();
        assert!(cc.same(1, 0, 1) && cc.same(2, 0, 1) && !cc.same(2, 0, 2));
        assert!(g.components_consistent(&p));
    }

    #[test]
    fn greedy_forces_first_fit() {
        let h1 = families::h_r(1).unwrap();
        let g = game(Variant::Greedy, 3, h1.graph);
        // colour 1 and 2 into 9's neighbourhood, then play 9
        let p = play(&g, &[Move::Pick { vertex: 1 }, Move::Pick { vertex: 2 }, Move::Pick { vertex: 9 }]);
        assert_eq!((p.colour(1), p.colour(2), p.colour(9)), (Some(1), Some(2), Some(3)));
    }

    #[test]
    fn ordered_colour_at_fourth_vertex() {
        let h1 = families::h_r(1).unwrap();
        let g = Game::new(GameSpec::new(Variant::OrderedVertex, 3).with_ordering(h1.ordering), h1.graph).unwrap();
        let p = play(&g, &[1, 2, 3, 2].map(|colour| Move::OrderedColour { colour }));
        assert_eq!(p.colour(4), Some(2));
    }

    #[test]
    fn illegal_moves_are_rejected() {
        let g = game(Variant::Vertex, 2, k3());
        let p = play(&g, &[Move::Colour { vertex: 1, colour: 1 }]);
        for mv in [
            Move::Colour { vertex: 2, colour: 1 },
            Move::Colour { vertex: 1, colour: 2 },
            Move::Colour { vertex: 4, colour: 1 },
            Move::Colour { vertex: 2, colour: 3 },
            Move::Mark { vertex: 2 },
        ] {
            assert!(matches!(g.apply(&p, &mv), Err(RulesError::IllegalMove { .. })), "{mv}");
        }
        let path = families::path(3);
        let cg = game(Variant::ConnectedVertex, 3, path);
        let p = play(&cg, &[Move::Colour { vertex: 1, colour: 1 }]);
        assert!(cg.apply(&p, &Move::Colour { vertex: 3, colour: 1 }).is_err());
    }

    #[test]
    fn status_vertex_blocked() {
        let g = game(Variant::Vertex, 2, k3());
        let p = play(&g, &[Move::Colour { vertex: 1, colour: 1 }, Move::Colour { vertex: 2, colour: 2 }]);
        assert_eq!(g.status(&p), Status::BreakerWin);
        assert!(matches!(g.apply(&p, &Move::Colour { vertex: 3, colour: 1 }), Err(RulesError::GameOver(_))));
    }

    #[test]
    fn ordered_greedy_trace_on_h1() {
        let h1 = families::h_r(1).unwrap();
        let g = Game::new(GameSpec::new(Variant::OrderedGreedy, 3).with_ordering(h1.ordering), h1.graph).unwrap();
        let mut p = g.initial_position();
        while g.status(&p) == Status::Ongoing {
            p = g.apply(&p, &Move::Forced).unwrap();
        }
        assert_eq!(p.played(), 8);
        assert_eq!(&p.cells()[..8], &[1, 2, 2, 1, 1, 2, 1, 3]);
        assert_eq!(g.status(&p), Status::BreakerWin);
        let nbr_colours: Vec<_> = g.graph().neighbours(9).iter().map(|&w| p.colour(w)).collect();
        assert_eq!(nbr_colours, vec![Some(1), Some(2), Some(1), Some(3)]);
    }

    #[test]
    fn marking_violation_latches() {
        let (g4, _) = families::fig4_graph();
        let g = game(Variant::ConnectedMarking, 2, g4);
        // 7's neighbours are 4, 6 and 8
        let p = play(&g, &[1, 8, 6, 5, 4].map(|vertex| Move::Mark { vertex }));
        assert_eq!(g.status(&p), Status::Ongoing);
        let p = g.apply(&p, &Move::Mark { vertex: 7 }).unwrap();
        assert_eq!(p.violation(), Some((7, 3)));
        assert_eq!(g.status(&p), Status::BreakerWin);
        assert!(g.legal_moves(&p).is_empty());
    }

    #[test]
    fn zero_palette_and_null_graph() {
        let v = game(Variant::Vertex, 0, k3());
        assert_eq!(v.status(&v.initial_position()), Status::BreakerWin);
        let a = game(Variant::Arboricity, 0, k3());
        assert_eq!(a.status(&a.initial_position()), Status::BreakerWin);
        let null = game(Variant::Vertex, 0, Graph::empty(0).unwrap());
        assert_eq!(null.status(&null.initial_position()), Status::MakerWin);
        let m = game(Variant::Marking, 0, Graph::empty(3).unwrap());
        assert_eq!(m.status(&m.initial_position()), Status::Ongoing);
    }

    #[test]
    fn canonical_keys() {
        let g = game(Variant::Vertex, 3, families::path(3));
        let a = play(&g, &[Move::Colour { vertex: 1, colour: 1 }, Move::Colour { vertex: 2, colour: 2 }]);
        let b = play(&g, &[Move::Colour { vertex: 1, colour: 2 }, Move::Colour { vertex: 2, colour: 1 }]);
        assert_eq!(g.canonical_key(&a), g.canonical_key(&b));

        let gr = game(Variant::Greedy, 3, families::path(3));
        let a = play(&gr, &[Move::Pick { vertex: 1 }]);
        let mut b = a.clone();
        b.cells[0] = 2;
        assert_ne!(gr.canonical_key(&a), gr.canonical_key(&b));

        let ar = game(Variant::Arboricity, 2, k3());
        let a = play(&ar, &[Move::EdgeColour { u: 1, v: 2, colour: 1 }]);
        let b = play(&ar, &[Move::EdgeColour { u: 1, v: 2, colour: 2 }]);
        assert_eq!(ar.canonical_key(&a), ar.canonical_key(&b));
    }

    #[test]
    fn wide_keys_are_used_for_large_graphs() {
        let g = game(Variant::Vertex, 20, families::path(40));
        assert!(matches!(g.canonical_key(&g.initial_position()), PositionKey::Wide(_)));
        let g = game(Variant::Vertex, 3, families::path(9));
        assert!(matches!(g.canonical_key(&g.initial_position()), PositionKey::Narrow(_)));
    }

    #[test]
    fn move_text_round_trips() {
        let g = game(Variant::Arboricity, 2, k3());
        let mv = Move::EdgeColour { u: 1, v: 3, colour: 2 };
        assert_eq!(g.parse_move(&mv.to_string()).unwrap(), mv);
        assert_eq!(g.parse_move("3 1 2").unwrap(), mv);
        let og = game(Variant::OrderedGreedy, 2, k3());
        assert_eq!(og.parse_move("").unwrap(), Move::Forced);
        assert!(og.parse_move("1").is_err());
    }
}
