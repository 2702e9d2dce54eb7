use std::io::{BufRead, Write};

use hypergame::{GameGraph, Match, MatchStatus, Side};

use crate::commands::{Failure, EXIT_EOF};

fn announce<W: Write>(m: &Match, from: usize, out: &mut W) -> std::io::Result<usize> {
    let g = m.graph();
    let h = m.history();
    for w in h[from.saturating_sub(1)..].windows(2) {
        let ((p, mover), (q, _)) = (w[0], w[1]);
        let who = if mover == m.human() { "you" } else { "engine" };
        writeln!(out, "{who} ({mover}): {} -> {}", g.id(p), g.id(q))?;
    }
    Ok(h.len())
}

/// Runs a terminal game; returns the final status. End of input aborts.
pub fn run<R: BufRead, W: Write>(g: GameGraph, human: Side, opener: Side, mut input: R, out: &mut W) -> Result<MatchStatus, Failure> {
    let io = |e: std::io::Error| Failure::new(1, e.to_string());
    let mut m = Match::new(g, human, opener);
    writeln!(out, "you are {human}; {opener} moves first from {}", m.graph().root_id()).map_err(io)?;
    let mut shown = announce(&m, 1, out).map_err(io)?;
    let mut line = String::new();
    while m.status() == MatchStatus::Active {
        let g = m.graph();
        let options: Vec<&str> = m.legal_moves().iter().map(|&q| g.id(q)).collect();
        write!(out, "at {} [{}] > ", g.id(m.position()), options.join(" ")).map_err(io)?;
        out.flush().map_err(io)?;
        line.clear();
        if input.read_line(&mut line).map_err(io)? == 0 {
            writeln!(out).map_err(io)?;
            return Err(Failure::new(EXIT_EOF, "aborted: end of input"));
        }
        let target = line.trim();
        if target.is_empty() {
            continue;
        }
        match m.human_move(target) {
            Ok(()) => shown = announce(&m, shown, out).map_err(io)?,
            Err(e) => writeln!(out, "{e}; try again").map_err(io)?,
        }
    }
    let g = m.graph();
    let (p, mover) = (g.id(m.position()), m.mover());
    let status = m.status();
    match status {
        MatchStatus::WinL | MatchStatus::WinR => {
            let human_won = (status == MatchStatus::WinL) == (human == Side::L);
            let verdict = if human_won { "you win" } else { "you lose" };
            writeln!(out, "{status:?}: {verdict} ({mover} has no move at {p})").map_err(io)?;
        }
        MatchStatus::Draw => {
            let (rp, rm) = m.repeated().expect("draws record the repeated state");
            writeln!(out, "Draw: {} with {rm} to move repeats", g.id(rp)).map_err(io)?;
        }
        MatchStatus::Active => unreachable!(),
    }
    Ok(status)
}
