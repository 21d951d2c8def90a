//! `hessian` subcommands.

use std::io::{Read, Write};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use hessian_core::coxeter;
use hessian_core::game::{self, GameState, Move, MoveTable};
use hessian_core::group::{self, FamilyParams, GroupWord};
use hessian_core::lattice::LatticeVector;
use hessian_core::rational;
use hessian_core::tree::{self, TreeRep};
use hessian_core::verify::{self, Status, Suite, VerifyOptions};
use serde::Serialize;
use serde_json::{json, Value};

use crate::api::{self, AppState};
use crate::{with_precision_retry, CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "hessian", version, about = "Exact models of the automorphism group of a Hessian quartic surface")]
pub struct Cli {
    /// Family parameters λ₀,…,λ₄.
    #[arg(long, global = true, default_value = "1,1,1,1,1/16")]
    pub params: FamilyParams,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite; exits nonzero if any check fails.
    Verify(VerifyArgs),
    /// List the cusps of the Coxeter polytope by orbit.
    Cusps,
    /// Test a lattice vector for nefness and reduce it into the chamber.
    Nef {
        /// JSON array of ten coordinates in the U-basis, e.g. `[1,0,"1/2",...]`.
        vector: String,
    },
    /// Bruhat-Tits tree utilities.
    #[command(subcommand)]
    Tree(TreeCommand),
    /// Group word arithmetic.
    #[command(subcommand)]
    Word(WordCommand),
    /// The reflection game on state files.
    #[command(subcommand)]
    Game(GameCommand),
    /// Run the HTTP service.
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(default_value = "all")]
    pub suite: Suite,
    #[arg(long, default_value_t = 4)]
    pub radius: u32,
    #[arg(long, default_value_t = 48)]
    pub precision: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum TreeCommand {
    /// Vertices of the ball of radius N around the base vertex.
    Ball {
        #[arg(short, long, default_value_t = 2)]
        r: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum WordCommand {
    /// Product of two words, e.g. `mul "x0 x1" "x1 s=(1023)"`.
    Mul { a: String, b: String },
    /// Normal form of a word.
    Reduce { word: String },
    /// Lattice matrix and tree vertex of a word.
    Matrix { word: String },
}

#[derive(Debug, Subcommand)]
pub enum GameCommand {
    /// A new game, optionally scrambled.
    New {
        #[arg(long, default_value_t = 0)]
        scramble: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Apply move tokens (`F0`..`F3`, `S=(abcd)`) to a state.
    Move {
        /// State file, or `-` for stdin.
        #[arg(long)]
        state: PathBuf,
        #[arg(required = true)]
        moves: Vec<Move>,
    },
    /// Play the solution of a state.
    Solve {
        #[arg(long)]
        state: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value_t = 8080)]
    pub port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    pub bind: std::net::IpAddr,
    /// Directory of static UI assets.
    #[arg(long = "static")]
    pub static_dir: Option<PathBuf>,
    /// JSON snapshot file for game sessions.
    #[arg(long)]
    pub persist: Option<PathBuf>,
    #[arg(long, default_value_t = 48)]
    pub precision: u32,
}

/// Runs a parsed command line. `Ok(false)` means the command ran but reported failure.
pub fn run(cli: Cli) -> CliResult<bool> {
    let json = cli.json;
    match cli.command {
        Command::Verify(args) => verify_cmd(&cli.params, &args, json),
        Command::Cusps => cusps_cmd(json),
        Command::Nef { vector } => nef_cmd(&cli.params, &vector, json),
        Command::Tree(TreeCommand::Ball { r }) => ball_cmd(r, json),
        Command::Word(cmd) => word_cmd(&cli.params, cmd, json),
        Command::Game(cmd) => game_cmd(cmd),
        Command::Serve(args) => serve_cmd(args),
    }
}

fn print_json<T: Serialize>(value: &T) -> CliResult<()> {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
    Ok(())
}

fn verify_cmd(params: &FamilyParams, args: &VerifyArgs, json: bool) -> CliResult<bool> {
    let report = with_precision_retry(args.precision, |n| {
        let opts = VerifyOptions { params: params.clone(), radius: args.radius, precision: n, seed: args.seed };
        verify::run(args.suite, &opts)
    })?;
    if json {
        print_json(&report)?;
    } else {
        for c in &report.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            println!("{tag} {}: {}", c.name, c.details);
        }
        let failed = report.checks.iter().filter(|c| c.status == Status::Fail).count();
        println!(
            "{} {}: {} checks, {} failed, {} ms",
            if report.passed() { "PASS" } else { "FAIL" },
            report.suite,
            report.checks.len(),
            failed,
            report.runtime_ms
        );
    }
    Ok(report.passed())
}

fn cusps_cmd(json: bool) -> CliResult<bool> {
    let orbits = coxeter::classify_cusps();
    if json {
        print_json(&orbits)?;
        return Ok(true);
    }
    for o in &orbits {
        println!("orbit {} {}: {} cusps", o.orbit_id, o.orbit_type, o.cusps.len());
        for c in &o.cusps {
            println!("  {}  null {:?}", c.node_labels().join(" "), c.null_vector);
        }
    }
    Ok(true)
}

fn parse_vector(text: &str) -> CliResult<LatticeVector> {
    let raw: Vec<Value> = serde_json::from_str(text)?;
    if raw.len() != hessian_core::lattice::RANK {
        return Err(CliError::Usage(format!("expected {} coordinates, got {}", hessian_core::lattice::RANK, raw.len())));
    }
    let mut coords = [rational::zero(); hessian_core::lattice::RANK];
    for (slot, v) in coords.iter_mut().zip(&raw) {
        *slot = match v {
            Value::String(s) => rational::parse(s)?,
            Value::Number(n) => match n.as_i64() {
                Some(i) => rational::int(i as i128),
                None => return Err(CliError::Usage(format!("coordinate {n} is not an integer; quote fractions"))),
            },
            other => return Err(CliError::Usage(format!("bad coordinate {other}"))),
        };
    }
    Ok(LatticeVector::new(coords))
}

fn nef_cmd(params: &FamilyParams, vector: &str, json: bool) -> CliResult<bool> {
    let v = parse_vector(vector)?;
    let nef = group::is_nef(&v, params)?;
    let reduced = match group::reduce_to_chamber(&v, params) {
        Ok(r) => Some(r),
        Err(hessian_core::Error::Domain(_)) => None,
        Err(e) => return Err(e.into()),
    };
    if json {
        let (red, word) = match &reduced {
            Some((r, w)) => (json!(r), json!(w)),
            None => (Value::Null, Value::Null),
        };
        print_json(&json!({ "nef": nef, "norm": rational::format(&v.norm()), "reduced": red, "word": word }))?;
    } else {
        println!("nef: {nef}");
        println!("norm: {}", rational::format(&v.norm()));
        match reduced {
            Some((r, w)) => {
                println!("reduced: {r:?}");
                println!("word: {w}");
            }
            None => println!("reduced: not in the positive cone"),
        }
    }
    Ok(true)
}

fn ball_cmd(r: u32, json: bool) -> CliResult<bool> {
    if r > api::MAX_BALL_RADIUS {
        return Err(CliError::Usage(format!("radius above {}", api::MAX_BALL_RADIUS)));
    }
    if json {
        print_json(&json!({ "radius": r, "nodes": tree::ball_adjacency(r) }))?;
        return Ok(true);
    }
    let layers = tree::ball_layers(r);
    for (d, layer) in layers.iter().enumerate() {
        println!("depth {d}: {} vertices", layer.len());
    }
    println!("total: {}", layers.iter().map(Vec::len).sum::<usize>());
    Ok(true)
}

fn word_cmd(params: &FamilyParams, cmd: WordCommand, json: bool) -> CliResult<bool> {
    let word = match &cmd {
        WordCommand::Mul { a, b } => GroupWord::parse(a)?.multiply(&GroupWord::parse(b)?),
        WordCommand::Reduce { word } | WordCommand::Matrix { word } => GroupWord::parse(word)?,
    };
    if let WordCommand::Matrix { .. } = cmd {
        let matrix = group::word_to_isometry(&word, params)?;
        let vertex = crate::with_default_precision(|n| TreeRep::new(n)?.vertex(&word))?;
        if json {
            print_json(&json!({ "word": word, "matrix": matrix, "vertex": vertex }))?;
        } else {
            println!("word: {word}");
            println!("matrix: {matrix:?}");
            println!("vertex: {vertex:?}");
        }
    } else if json {
        print_json(&json!({ "word": word, "text": word.to_string(), "length": word.len() }))?;
    } else {
        println!("{word}");
    }
    Ok(true)
}

fn read_state(path: &Path, table: &MoveTable) -> CliResult<GameState> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path)?
    };
    let state: GameState = serde_json::from_str(&text)?;
    state.validate(table)?;
    Ok(state)
}

fn game_cmd(cmd: GameCommand) -> CliResult<bool> {
    let table = MoveTable::new();
    let state = match cmd {
        GameCommand::New { scramble, seed } => {
            if scramble > game::MAX_WORD_LEN {
                return Err(CliError::Usage(format!("scramble length above {}", game::MAX_WORD_LEN)));
            }
            game::scramble(scramble, seed, &table)
        }
        GameCommand::Move { state, moves } => {
            let mut s = read_state(&state, &table)?;
            let opts = game::GameOptions { symmetry_moves: true };
            for m in moves {
                s = game::apply_move_with(&s, m, &opts, &table)?;
            }
            s
        }
        GameCommand::Solve { state } => {
            let s = read_state(&state, &table)?;
            game::solve(&s).into_iter().fold(s, |s, m| game::apply_move(&s, m, &table))
        }
    };
    print_json(&state)?;
    Ok(true)
}

fn serve_cmd(args: ServeArgs) -> CliResult<bool> {
    let state = match &args.persist {
        Some(path) => AppState::with_persistence(args.precision, path)?,
        None => AppState::new(args.precision)?,
    };
    let addr = SocketAddr::new(args.bind, args.port);
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(api::serve(addr, state, args.static_dir))?;
    Ok(true)
}
