use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use hypergame::corpus::serialize;
use hypergame::{outcome_profile, GameGraph, Match, MatchStatus, Sector, Side};
use serde::{Deserialize, Serialize};
use uuid::Uuid;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub position: String,
    pub mover: Side,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub target: String,
    /// Sector of the subgame at `target`.
    pub sector: Sector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionView {
    pub id: Uuid,
    pub game: Option<String>,
    pub human_side: Side,
    pub opener: Side,
    pub position: String,
    pub mover: Side,
    pub status: MatchStatus,
    pub your_turn: bool,
    pub history: Vec<Step>,
    pub repeated: Option<Step>,
    pub legal_moves: Vec<Candidate>,
}

pub(crate) struct Session {
    game: Option<String>,
    opener: Side,
    key: Arc<str>,
    pub(crate) play: Match,
}

struct Entry {
    session: Mutex<Session>,
    touched: Mutex<Instant>,
}

/// What-if sectors per (graph, position), shared by every session.
#[derive(Default)]
pub(crate) struct WhatIf {
    cache: Mutex<HashMap<(Arc<str>, String), Sector>>,
}

impl WhatIf {
    fn sector(&self, key: &Arc<str>, g: &GameGraph, target: &str) -> Sector {
        let k = (key.clone(), target.to_string());
        if let Some(&s) = self.cache.lock().unwrap().get(&k) {
            return s;
        }
        let sub = g.with_root(target).expect("legal targets are positions");
        let s = outcome_profile(&sub).sector().expect("fixpoint profiles are consistent");
        self.cache.lock().unwrap().insert(k, s);
        s
    }
}

pub(crate) struct Store {
    ttl: Duration,
    entries: Mutex<HashMap<Uuid, Arc<Entry>>>,
    what_if: WhatIf,
}

impl Store {
    pub(crate) fn new(ttl: Duration) -> Self {
        Store {
            ttl,
            entries: Mutex::default(),
            what_if: WhatIf::default(),
        }
    }

    pub(crate) fn create(&self, game: Option<String>, graph: GameGraph, human: Side, opener: Side) -> SessionView {
        let key: Arc<str> = serialize(&graph).into();
        let session = Session {
            game,
            opener,
            key,
            play: Match::new(graph, human, opener),
        };
        let id = Uuid::new_v4();
        let view = self.view(id, &session);
        let entry = Arc::new(Entry {
            session: Mutex::new(session),
            touched: Mutex::new(Instant::now()),
        });
        self.evict_expired();
        self.entries.lock().unwrap().insert(id, entry);
        view
    }

    /// Runs `f` on session `id` under its lock. `None` if unknown or expired.
    pub(crate) fn with<T>(&self, id: Uuid, f: impl FnOnce(&mut Session) -> T) -> Option<T> {
        self.evict_expired();
        let entry = self.entries.lock().unwrap().get(&id).cloned()?;
        *entry.touched.lock().unwrap() = Instant::now();
        let mut s = entry.session.lock().unwrap();
        Some(f(&mut s))
    }

    pub(crate) fn evict_expired(&self) {
        let now = Instant::now();
        self.entries
            .lock()
            .unwrap()
            .retain(|_, e| now.duration_since(*e.touched.lock().unwrap()) < self.ttl);
    }

    pub(crate) fn len(&self) -> usize {
        self.entries.lock().unwrap().len()
    }

    pub(crate) fn view(&self, id: Uuid, s: &Session) -> SessionView {
        let m = &s.play;
        let g = m.graph();
        let step = |(p, mover): (usize, Side)| Step {
            position: g.id(p).to_string(),
            mover,
        };
        SessionView {
            id,
            game: s.game.clone(),
            human_side: m.human(),
            opener: s.opener,
            position: g.id(m.position()).to_string(),
            mover: m.mover(),
            status: m.status(),
            your_turn: m.status() == MatchStatus::Active && m.mover() == m.human(),
            history: m.history().iter().copied().map(step).collect(),
            repeated: m.repeated().map(step),
            legal_moves: m
                .legal_moves()
                .iter()
                .map(|&q| Candidate {
                    target: g.id(q).to_string(),
                    sector: self.what_if.sector(&s.key, g, g.id(q)),
                })
                .collect(),
        }
    }
}
