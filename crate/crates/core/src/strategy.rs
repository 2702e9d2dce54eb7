//! Positional strategies: synthesis from the arena solution, exhaustive
//! verification, and play simulation with draw detection.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arena::{solve_arena, ArenaSolution};
use crate::error::{Result, StrategyError};
use crate::graph::{sum_with_pairs, GameGraph, Side};
use crate::order::Player;

/// One of the four ways of taking part in a play: a side together with
/// whether that side opens.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    LI,
    LII,
    RI,
    RII,
}

impl Role {
    pub fn side(self) -> Side {
        match self {
            Role::LI | Role::LII => Side::L,
            Role::RI | Role::RII => Side::R,
        }
    }

    pub fn opener(self) -> Side {
        match self {
            Role::LI | Role::RII => Side::L,
            Role::LII | Role::RI => Side::R,
        }
    }

    /// The two roles that make up `player`.
    pub fn of(player: Player) -> [Role; 2] {
        match player {
            Player::L => [Role::LI, Role::LII],
            Player::R => [Role::RI, Role::RII],
            Player::I => [Role::LI, Role::RI],
            Player::II => [Role::LII, Role::RII],
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Claim {
    Nonlosing,
    Winning,
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Claim::Nonlosing => "nonlosing",
            Claim::Winning => "winning",
        })
    }
}

/// A partial choice function for one side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionalStrategy {
    pub side: Side,
    pub choice: BTreeMap<usize, usize>,
}

impl PositionalStrategy {
    pub fn new(side: Side) -> Self {
        PositionalStrategy {
            side,
            choice: BTreeMap::new(),
        }
    }

    pub fn choose(&self, p: usize) -> Option<usize> {
        self.choice.get(&p).copied()
    }

    pub fn named(&self, g: &GameGraph) -> BTreeMap<String, String> {
        self.choice
            .iter()
            .map(|(&p, &q)| (g.id(p).to_string(), g.id(q).to_string()))
            .collect()
    }

    pub fn from_named(g: &GameGraph, side: Side, named: &BTreeMap<String, String>) -> Result<Self> {
        let mut choice = BTreeMap::new();
        for (p, q) in named {
            choice.insert(g.require(p)?, g.require(q)?);
        }
        Ok(PositionalStrategy { side, choice })
    }
}

/// Role strategies that together make up a player's strategy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyBundle {
    pub player: Player,
    pub roles: Vec<(Role, PositionalStrategy)>,
}

impl StrategyBundle {
    pub fn get(&self, role: Role) -> Option<&PositionalStrategy> {
        self.roles.iter().find(|(r, _)| *r == role).map(|(_, s)| s)
    }

    /// Choice maps by role name, with position ids.
    pub fn named(&self, g: &GameGraph) -> BTreeMap<String, BTreeMap<String, String>> {
        self.roles
            .iter()
            .map(|(r, s)| (r.to_string(), s.named(g)))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PlayOutcome {
    WinL,
    WinR,
    Draw,
}

impl PlayOutcome {
    /// The result when `stuck` has to move and cannot.
    pub fn stuck(stuck: Side) -> Self {
        match stuck {
            Side::L => PlayOutcome::WinR,
            Side::R => PlayOutcome::WinL,
        }
    }
}

impl fmt::Display for PlayOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The result of a simulated play. The trace lists every visited state
/// (position, side to move); for a draw it ends with the repeated state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayVerdict {
    pub outcome: PlayOutcome,
    pub trace: Vec<(usize, Side)>,
    pub repeated: Option<(usize, Side)>,
}

fn pick_min<I: IntoIterator<Item = usize>>(it: I) -> Option<usize> {
    it.into_iter().next()
}

/// Move chosen by `side` at `p` under the given claim, or `None` if the
/// node lies outside the corresponding region.
fn region_move(g: &GameGraph, sol: &ArenaSolution, p: usize, side: Side, claim: Claim) -> Option<usize> {
    let opp = side.opponent();
    match claim {
        Claim::Nonlosing => {
            if !sol.nonlosing(side, p, side) {
                return None;
            }
            pick_min(g.moves(p, side).iter().copied().filter(|&q| sol.nonlosing(side, q, opp)))
        }
        Claim::Winning => {
            let r = sol.rank(side, p, side)?;
            pick_min(
                g.moves(p, side)
                    .iter()
                    .copied()
                    .filter(|&q| sol.rank(side, q, opp).is_some_and(|rq| rq < r)),
            )
        }
    }
}

fn role_holds(sol: &ArenaSolution, root: usize, role: Role, claim: Claim) -> bool {
    match claim {
        Claim::Nonlosing => sol.nonlosing(role.side(), root, role.opener()),
        Claim::Winning => sol.winning(role.side(), root, role.opener()),
    }
}

/// Choices at every obligation reachable when `role` follows the region
/// and the opponent plays anything.
fn role_strategy(g: &GameGraph, sol: &ArenaSolution, role: Role, claim: Claim) -> PositionalStrategy {
    let side = role.side();
    let mut strat = PositionalStrategy::new(side);
    let start = (g.root(), role.opener());
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((p, mover)) = queue.pop_front() {
        let next: Vec<usize> = if mover == side {
            let q = region_move(g, sol, p, side, claim)
                .expect("synthesis left its region");
            strat.choice.insert(p, q);
            vec![q]
        } else {
            g.moves(p, mover).to_vec()
        };
        for q in next {
            let s = (q, mover.opponent());
            if seen.insert(s) {
                queue.push_back(s);
            }
        }
    }
    strat
}

fn synthesize(g: &GameGraph, player: Player, claim: Claim) -> Option<StrategyBundle> {
    let sol = solve_arena(g);
    let roles = Role::of(player);
    if !roles.iter().all(|&r| role_holds(&sol, g.root(), r, claim)) {
        return None;
    }
    Some(StrategyBundle {
        player,
        roles: roles
            .iter()
            .map(|&r| (r, role_strategy(g, &sol, r, claim)))
            .collect(),
    })
}

/// Non-losing strategies for both roles of `player`, or `None` if the
/// player has none.
pub fn synthesize_nonlosing(g: &GameGraph, player: Player) -> Option<StrategyBundle> {
    synthesize(g, player, Claim::Nonlosing)
}

/// Winning strategies for both roles of `player`, or `None` unless the
/// player wins the game.
pub fn synthesize_winning(g: &GameGraph, player: Player) -> Option<StrategyBundle> {
    synthesize(g, player, Claim::Winning)
}

/// The next state after `mover` moves to `q`, or the final outcome.
fn advance(
    g: &GameGraph,
    seen: &mut HashSet<(usize, Side)>,
    trace: &mut Vec<(usize, Side)>,
    q: usize,
    mover: Side,
) -> Option<(PlayOutcome, Option<(usize, Side)>)> {
    let state = (q, mover.opponent());
    trace.push(state);
    if !seen.insert(state) {
        return Some((PlayOutcome::Draw, Some(state)));
    }
    if g.moves(q, state.1).is_empty() {
        return Some((PlayOutcome::stuck(state.1), None));
    }
    None
}

/// Simulates the unique play from the root coherent with both strategies.
pub fn play(
    g: &GameGraph,
    left: &PositionalStrategy,
    right: &PositionalStrategy,
    opener: Side,
) -> std::result::Result<PlayVerdict, StrategyError> {
    if left.side != Side::L {
        return Err(StrategyError::WrongSide {
            expected: Side::L,
            found: left.side,
        });
    }
    if right.side != Side::R {
        return Err(StrategyError::WrongSide {
            expected: Side::R,
            found: right.side,
        });
    }
    let start = (g.root(), opener);
    let mut trace = vec![start];
    let mut seen = HashSet::from([start]);
    if g.moves(g.root(), opener).is_empty() {
        return Ok(PlayVerdict {
            outcome: PlayOutcome::stuck(opener),
            trace,
            repeated: None,
        });
    }
    let (mut p, mut mover) = start;
    loop {
        let strat = if mover == Side::L { left } else { right };
        let q = strat.choose(p).ok_or_else(|| StrategyError::Undefined {
            position: g.id(p).to_string(),
            side: mover,
        })?;
        if !g.moves(p, mover).contains(&q) {
            return Err(StrategyError::Illegal {
                position: g.id(p).to_string(),
                target: g.id(q).to_string(),
                side: mover,
            });
        }
        if let Some((outcome, repeated)) = advance(g, &mut seen, &mut trace, q, mover) {
            return Ok(PlayVerdict {
                outcome,
                trace,
                repeated,
            });
        }
        p = q;
        mover = mover.opponent();
    }
}

/// Checks `bundle` against every opponent behaviour by exploring all
/// states reachable under it.
pub fn verify_strategy(
    g: &GameGraph,
    bundle: &StrategyBundle,
    player: Player,
    claim: Claim,
) -> std::result::Result<bool, StrategyError> {
    for role in Role::of(player) {
        let strat = bundle
            .get(role)
            .ok_or_else(|| StrategyError::MissingRole(role.to_string()))?;
        if strat.side != role.side() {
            return Err(StrategyError::WrongSide {
                expected: role.side(),
                found: strat.side,
            });
        }
        if !verify_role(g, strat, role.opener(), claim)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn verify_role(
    g: &GameGraph,
    strat: &PositionalStrategy,
    opener: Side,
    claim: Claim,
) -> std::result::Result<bool, StrategyError> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Open,
        Done,
    }
    let side = strat.side;
    let succ = |p: usize, mover: Side| -> std::result::Result<Option<Vec<(usize, Side)>>, StrategyError> {
        let moves = g.moves(p, mover);
        if mover != side {
            return Ok(Some(moves.iter().map(|&q| (q, side)).collect()));
        }
        if moves.is_empty() {
            return Ok(None);
        }
        let q = strat.choose(p).ok_or_else(|| StrategyError::Undefined {
            position: g.id(p).to_string(),
            side,
        })?;
        if !moves.contains(&q) {
            return Err(StrategyError::Illegal {
                position: g.id(p).to_string(),
                target: g.id(q).to_string(),
                side,
            });
        }
        Ok(Some(vec![(q, side.opponent())]))
    };

    let start = (g.root(), opener);
    let mut mark: HashMap<(usize, Side), Mark> = HashMap::new();
    let Some(first) = succ(start.0, start.1)? else {
        return Ok(false);
    };
    mark.insert(start, Mark::Open);
    let mut stack = vec![(start, first, 0usize)];
    let mut acyclic = true;
    while let Some((state, next, i)) = stack.last_mut() {
        if *i == next.len() {
            mark.insert(*state, Mark::Done);
            stack.pop();
            continue;
        }
        let t = next[*i];
        *i += 1;
        match mark.get(&t) {
            Some(Mark::Open) => acyclic = false,
            Some(Mark::Done) => {}
            None => {
                let Some(after) = succ(t.0, t.1)? else {
                    return Ok(false);
                };
                mark.insert(t, Mark::Open);
                stack.push((t, after, 0));
            }
        }
    }
    Ok(match claim {
        Claim::Nonlosing => true,
        Claim::Winning => acyclic,
    })
}

pub fn legal_moves(g: &GameGraph, id: &str, side: Side) -> Result<Vec<String>> {
    let p = g.require(id)?;
    Ok(g.moves(p, side).iter().map(|&q| g.id(q).to_string()).collect())
}

/// `g - g` together with the mirroring strategy for player II: after the
/// opponent moves in one component, copy that move in the other one.
pub fn copycat(g: &GameGraph) -> (GameGraph, StrategyBundle) {
    let neg = g.negate();
    let (s, pairs) = sum_with_pairs(g, &neg);
    let index: HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(i, &pq)| (pq, i)).collect();
    let mut left = PositionalStrategy::new(Side::L);
    let mut right = PositionalStrategy::new(Side::R);
    for (i, &(x, y)) in pairs.iter().enumerate() {
        // Diagonal positions are obligations too when `g` has self-moves.
        for (strat, side) in [(&mut left, Side::L), (&mut right, Side::R)] {
            // A move of `side` in the negated component is a move of the
            // other side in `g`.
            let target = if g.moves(x, side).contains(&y) {
                index.get(&(y, y))
            } else if g.moves(y, side.opponent()).contains(&x) {
                index.get(&(x, x))
            } else {
                None
            };
            if let Some(&t) = target {
                strat.choice.insert(i, t);
            }
        }
    }
    let bundle = StrategyBundle {
        player: Player::II,
        roles: vec![(Role::LII, left), (Role::RII, right)],
    };
    (s, bundle)
}

/// The engine's move for `mover` at `p`: a rank-decreasing winning move if
/// one exists, else a move that keeps a non-losing position, else the
/// first legal move. `None` if `mover` is stuck.
pub fn engine_move(g: &GameGraph, sol: &ArenaSolution, p: usize, mover: Side) -> Option<usize> {
    region_move(g, sol, p, mover, Claim::Winning)
        .or_else(|| region_move(g, sol, p, mover, Claim::Nonlosing))
        .or_else(|| g.moves(p, mover).first().copied())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatchStatus {
    #[serde(rename = "active")]
    Active,
    WinL,
    WinR,
    Draw,
}

impl From<PlayOutcome> for MatchStatus {
    fn from(o: PlayOutcome) -> Self {
        match o {
            PlayOutcome::WinL => MatchStatus::WinL,
            PlayOutcome::WinR => MatchStatus::WinR,
            PlayOutcome::Draw => MatchStatus::Draw,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("the game is over")]
    Finished,
    #[error("it is not your turn")]
    NotYourTurn,
    #[error("`{target}` is not a legal move")]
    Illegal { target: String },
}

/// A human playing one side against the engine.
#[derive(Debug, Clone)]
pub struct Match {
    graph: GameGraph,
    solution: ArenaSolution,
    human: Side,
    history: Vec<(usize, Side)>,
    seen: HashSet<(usize, Side)>,
    status: MatchStatus,
    repeated: Option<(usize, Side)>,
}

impl Match {
    /// Starts at the root with `opener` to move; if that is the engine, it
    /// replies immediately.
    pub fn new(graph: GameGraph, human: Side, opener: Side) -> Self {
        let solution = solve_arena(&graph);
        let start = (graph.root(), opener);
        let status = if graph.moves(start.0, opener).is_empty() {
            PlayOutcome::stuck(opener).into()
        } else {
            MatchStatus::Active
        };
        let mut m = Match {
            graph,
            solution,
            human,
            history: vec![start],
            seen: HashSet::from([start]),
            status,
            repeated: None,
        };
        m.engine_turn();
        m
    }

    pub fn graph(&self) -> &GameGraph {
        &self.graph
    }

    pub fn solution(&self) -> &ArenaSolution {
        &self.solution
    }

    pub fn human(&self) -> Side {
        self.human
    }

    pub fn position(&self) -> usize {
        self.history.last().expect("history is never empty").0
    }

    pub fn mover(&self) -> Side {
        self.history.last().expect("history is never empty").1
    }

    pub fn history(&self) -> &[(usize, Side)] {
        &self.history
    }

    pub fn status(&self) -> MatchStatus {
        self.status
    }

    pub fn repeated(&self) -> Option<(usize, Side)> {
        self.repeated
    }

    /// Moves available to the side to move, empty once the game is over.
    pub fn legal_moves(&self) -> &[usize] {
        if self.status != MatchStatus::Active {
            return &[];
        }
        self.graph.moves(self.position(), self.mover())
    }

    /// Applies the human move to position `target`, then the engine reply.
    pub fn human_move(&mut self, target: &str) -> std::result::Result<(), MoveError> {
        if self.status != MatchStatus::Active {
            return Err(MoveError::Finished);
        }
        if self.mover() != self.human {
            return Err(MoveError::NotYourTurn);
        }
        let q = self
            .graph
            .index_of(target)
            .filter(|q| self.legal_moves().contains(q))
            .ok_or_else(|| MoveError::Illegal {
                target: target.to_string(),
            })?;
        self.apply(q);
        self.engine_turn();
        Ok(())
    }

    fn apply(&mut self, q: usize) {
        let mover = self.mover();
        let mut trace = std::mem::take(&mut self.history);
        if let Some((outcome, repeated)) = advance(&self.graph, &mut self.seen, &mut trace, q, mover) {
            self.status = outcome.into();
            self.repeated = repeated;
        }
        self.history = trace;
    }

    fn engine_turn(&mut self) {
        while self.status == MatchStatus::Active && self.mover() != self.human {
            let q = engine_move(&self.graph, &self.solution, self.position(), self.mover())
                .expect("active match has a legal move");
            self.apply(q);
        }
    }
}
