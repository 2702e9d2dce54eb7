mod commands;
mod play;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypergame::corpus::GeneratorParams;
use hypergame::{Player, Side};

use commands::{EquivMode, Failure, Outcome};

/// Solvers for Conway games and hypergames.
///
/// INPUT is a HYG file, `-` for stdin, or `catalog:NAME` (e.g. `catalog:traffic_jam`,
/// `catalog:star(5)`, `catalog:traffic_jam@C`).
///
/// Exit codes: 2 unreadable or malformed document, 3 invalid graph, 4 input
/// outside the mode (partizan for grundy, cyclic for --conway), 5 strategy
/// verification failed, 130 end of input during play.
#[derive(Parser)]
#[command(name = "hyg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Outcome profile, sector, non-losing players and winner.
    Analyze {
        input: String,
        #[arg(long)]
        json: bool,
        /// Also report the size of the bisimulation quotient.
        #[arg(long)]
        minimize: bool,
    },
    /// Generalized Grundy value of every position of an impartial game.
    Grundy {
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Disjunctive sum of two games, as HYG.
    Sum {
        a: String,
        b: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Negation (Left and Right swapped), as HYG.
    Neg {
        input: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Bisimulation quotient, as HYG.
    Minimize {
        input: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Compare two games.
    Equiv(EquivArgs),
    /// Positional strategy for a player, winning if one exists.
    Strategy {
        input: String,
        #[arg(long, value_parser = parse_player)]
        player: Player,
        /// Re-check the strategy against every opponent.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Play against the engine on the terminal.
    Play {
        input: String,
        #[arg(long = "as", value_enum)]
        side: SideArg,
        #[arg(long, value_enum, default_value = "L")]
        opener: SideArg,
    },
    /// Seeded random game.
    Gen {
        #[arg(long, default_value_t = 8)]
        positions: usize,
        /// Probability of each edge, per side.
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        impartial: bool,
        #[arg(long)]
        acyclic: bool,
        #[arg(long)]
        name: Option<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Start the HTTP service on 127.0.0.1.
    Serve {
        /// 0 picks a free port.
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

#[derive(Args)]
struct EquivArgs {
    a: String,
    b: String,
    /// Exact test for impartial games via Grundy values.
    #[arg(long, group = "mode")]
    impartial: bool,
    /// Exact Conway equivalence for well-founded games.
    #[arg(long, group = "mode")]
    conway: bool,
    /// Number of contexts to probe when no exact mode is given.
    #[arg(long, group = "mode", default_value_t = 32)]
    contexts: usize,
    /// Seed for the random contexts.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "UPPER")]
enum SideArg {
    #[value(alias = "l")]
    L,
    #[value(alias = "r")]
    R,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::L => Side::L,
            SideArg::R => Side::R,
        }
    }
}

fn parse_player(s: &str) -> Result<Player, String> {
    s.parse()
}

fn serve(port: u16) -> Outcome {
    let rt = tokio::runtime::Runtime::new().map_err(|e| Failure::new(1, e.to_string()))?;
    rt.block_on(async {
        let (listener, addr) = hyg_service::bind(port)
            .await
            .map_err(|e| Failure::new(1, format!("cannot bind port {port}: {e}")))?;
        println!("listening on http://{addr}");
        std::io::stdout().flush().ok();
        hyg_service::serve(listener, hyg_service::AppState::default())
            .await
            .map_err(|e| Failure::new(1, e.to_string()))?;
        Ok(String::new())
    })
}

fn run(cmd: Command) -> (Outcome, bool) {
    match cmd {
        Command::Analyze { input, json, minimize } => (commands::analyze(&input, json, minimize), json),
        Command::Grundy { input, json } => (commands::grundy(&input, json), json),
        Command::Sum { a, b, out } => (commands::sum_cmd(&a, &b, out.as_ref()), false),
        Command::Neg { input, out } => (commands::neg(&input, out.as_ref()), false),
        Command::Minimize { input, out } => (commands::minimize(&input, out.as_ref()), false),
        Command::Equiv(e) => {
            let mode = if e.impartial {
                EquivMode::Impartial
            } else if e.conway {
                EquivMode::Conway
            } else {
                EquivMode::Contexts {
                    count: e.contexts,
                    seed: e.seed,
                }
            };
            (commands::equiv(&e.a, &e.b, mode, e.json), e.json)
        }
        Command::Strategy { input, player, verify, json } => (commands::strategy(&input, player, verify, json), json),
        Command::Play { input, side, opener } => {
            let r = commands::load(&input).and_then(|g| {
                let stdin = std::io::stdin().lock();
                play::run(g, side.into(), opener.into(), stdin, &mut std::io::stdout()).map(|_| String::new())
            });
            (r, false)
        }
        Command::Gen {
            positions,
            density,
            seed,
            impartial,
            acyclic,
            name,
            out,
        } => {
            let params = GeneratorParams::new(positions, density, seed)
                .impartial(impartial)
                .acyclic(acyclic);
            (commands::gen(&params, name.as_deref(), out.as_ref()), false)
        }
        Command::Serve { port } => (serve(port), false),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (outcome, json) = run(cli.command);
    match outcome {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            if json {
                print!("{}", commands::to_json(&f.to_json()));
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
