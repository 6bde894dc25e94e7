//! Command-line interface.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::sync::Arc;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::game::{play_game, Board, Player, Trace};
use crate::graph::{build_onh, Graph};
use crate::potential::WeightScheme;
use crate::solver::{
    solve_exact_game, worst_staller_vs_greedy, SolveResult, DEFAULT_EXACT_EDGE_LIMIT,
    DEFAULT_WORST_EDGE_LIMIT,
};
use crate::strategy::{Greedy, Myopic, RandomMover, StallerKind};
use crate::sweep::{sweep_exhaustive, sweep_random, RandomSweep};
use crate::verify::{verify_graph, VerificationReport, VerifyOptions};

#[derive(Parser, Debug)]
#[command(
    name = "totdom",
    version,
    about = "Total domination game: greedy Dominator, exact solver, verifier"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Largest edge count for the exact minimax solver.
    #[arg(long, global = true, default_value_t = DEFAULT_EXACT_EDGE_LIMIT)]
    exact_edge_limit: usize,

    /// Largest edge count for the worst-case Staller search.
    #[arg(long, global = true, default_value_t = DEFAULT_WORST_EDGE_LIMIT)]
    worst_edge_limit: usize,

    #[command(flatten)]
    scheme: SchemeArgs,
}

/// Weight overrides; any of them marks the run as non-standard.
#[derive(Args, Debug, Default)]
struct SchemeArgs {
    /// Weight of a non-special vertex.
    #[arg(long, global = true)]
    w_vertex: Option<i64>,
    /// Weight of a special vertex.
    #[arg(long, global = true)]
    w_special_vertex: Option<i64>,
    /// Weight of a non-special edge.
    #[arg(long, global = true)]
    w_edge: Option<i64>,
    /// Weight of a special edge.
    #[arg(long, global = true)]
    w_special_edge: Option<i64>,
    /// Bonus subtracted per lone wide edge.
    #[arg(long, global = true)]
    w_type_x: Option<i64>,
}

impl SchemeArgs {
    fn scheme(&self) -> Result<WeightScheme> {
        let p = WeightScheme::STANDARD;
        WeightScheme::new(
            self.w_vertex.unwrap_or(p.vertex),
            self.w_special_vertex.unwrap_or(p.special_vertex),
            self.w_edge.unwrap_or(p.edge),
            self.w_special_edge.unwrap_or(p.special_edge),
            self.w_type_x.unwrap_or(p.type_x),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum First {
    Dominator,
    Staller,
}

impl From<First> for Player {
    fn from(f: First) -> Player {
        match f {
            First::Dominator => Player::Dominator,
            First::Staller => Player::Staller,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SolveFirst {
    Dominator,
    Staller,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the open neighborhood hypergraph and its special marking.
    Onh { file: String },
    /// Play the greedy Dominator against a Staller and print the trace.
    Play {
        file: String,
        #[arg(long, value_enum, default_value_t = First::Dominator)]
        first: First,
        #[arg(long, value_enum, default_value_t = StallerKind::Worst)]
        staller: StallerKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact game length under optimal play.
    Solve {
        file: String,
        #[arg(long, value_enum, default_value_t = SolveFirst::Dominator)]
        first: SolveFirst,
    },
    /// Bounds and greedy-trace checks for one graph.
    Verify { file: String },
    /// Verify many graphs.
    #[command(group(ArgGroup::new("mode").required(true).args(["exhaustive", "random"])))]
    Sweep {
        /// Every connected graph on 3..=max-n vertices, plus two-component unions.
        #[arg(long, requires = "max_n")]
        exhaustive: bool,
        #[arg(long)]
        max_n: Option<usize>,
        /// Seeded G(n, p) graphs.
        #[arg(long, requires_all = ["count", "n", "p"])]
        random: bool,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = StallerKind::Worst)]
        staller: StallerKind,
        /// Worker threads; results do not depend on it.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

/// Parses `argv` (program name first), runs the command, and returns the
/// process exit code: 0 on success, 1 when a verification check fails, 2 on
/// input or usage errors.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok((text, passed)) => {
            let _ = out.write_all(text.as_bytes());
            if passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Internal(_) => 1,
                _ => 2,
            }
        }
    }
}

fn read_graph(path: &str) -> Result<Graph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Usage(format!("cannot read {path}: {e}")))?;
    Graph::parse(&text)
}

fn execute(cli: &Cli) -> Result<(String, bool)> {
    let scheme = cli.scheme.scheme()?;
    let opts = VerifyOptions {
        scheme,
        exact_edge_limit: cli.exact_edge_limit,
        worst_edge_limit: cli.worst_edge_limit,
        ..VerifyOptions::default()
    };
    match &cli.command {
        Command::Onh { file } => {
            let board = Board::from_graph(&read_graph(file)?)?;
            if cli.json {
                let edges: Vec<_> = board
                    .hypergraph
                    .edges()
                    .iter()
                    .enumerate()
                    .map(|(p, e)| {
                        serde_json::json!({
                            "label": e.label,
                            "members": e.members,
                            "special": board.marking.is_special_edge(p),
                        })
                    })
                    .collect();
                let value = serde_json::json!({
                    "vertices": board.hypergraph.vertex_count(),
                    "edges": edges,
                    "special_vertices": board.marking.special_vertices(),
                });
                Ok((pretty(&value), true))
            } else {
                Ok((board.hypergraph.render(&board.marking), true))
            }
        }
        Command::Play {
            file,
            first,
            staller,
            seed,
        } => {
            let board = Arc::new(Board::from_graph(&read_graph(file)?)?);
            let first = Player::from(*first);
            let trace = match staller {
                StallerKind::Worst => {
                    worst_staller_vs_greedy(&board, &scheme, first, cli.worst_edge_limit)?
                }
                StallerKind::Myopic => play_game(
                    &board,
                    &mut Greedy { scheme },
                    &mut Myopic { scheme },
                    first,
                    &scheme,
                )?,
                StallerKind::Random => play_game(
                    &board,
                    &mut Greedy { scheme },
                    &mut RandomMover::new(*seed),
                    first,
                    &scheme,
                )?,
            };
            if cli.json {
                Ok((trace.to_json() + "\n", true))
            } else {
                Ok((trace_text(&trace), true))
            }
        }
        Command::Solve { file, first } => {
            let h = build_onh(&read_graph(file)?)?;
            let starts: &[Player] = match first {
                SolveFirst::Dominator => &[Player::Dominator],
                SolveFirst::Staller => &[Player::Staller],
                SolveFirst::Both => &[Player::Dominator, Player::Staller],
            };
            let results = starts
                .iter()
                .map(|&p| solve_exact_game(&h, p, cli.exact_edge_limit))
                .collect::<Result<Vec<_>>>()?;
            if cli.json {
                let text = if results.len() == 1 {
                    pretty(&results[0])
                } else {
                    pretty(&results)
                };
                Ok((text, true))
            } else {
                Ok((results.iter().map(solve_text).collect(), true))
            }
        }
        Command::Verify { file } => {
            let report = verify_graph(&read_graph(file)?, &opts)?;
            Ok(report_output(&report, cli.json))
        }
        Command::Sweep {
            exhaustive,
            max_n,
            random: _,
            count,
            n,
            p,
            seed,
            staller,
            jobs,
        } => {
            let report = if *exhaustive {
                sweep_exhaustive(max_n.expect("required by clap"), &opts, *jobs)?
            } else {
                let params = RandomSweep {
                    count: count.expect("required by clap"),
                    n: n.expect("required by clap"),
                    p: p.expect("required by clap"),
                    seed: *seed,
                    staller: *staller,
                };
                sweep_random(&params, &opts, *jobs)?
            };
            Ok(report_output(&report, cli.json))
        }
    }
}

fn pretty<T: serde::Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn report_output(report: &VerificationReport, json: bool) -> (String, bool) {
    let text = if json {
        report.to_json() + "\n"
    } else {
        report.to_text()
    };
    (text, report.all_passed())
}

fn solve_text(r: &SolveResult) -> String {
    let name = match r.first {
        Player::Dominator => "gamma_tg",
        Player::Staller => "gamma_tg'",
    };
    let moves: Vec<String> = r.best_first_moves.iter().map(|v| v.to_string()).collect();
    format!(
        "{name}={} (first: {}, best first moves: {}, states: {})\n",
        r.value,
        r.first,
        moves.join(" "),
        r.explored_states
    )
}

fn trace_text(t: &Trace) -> String {
    let mut out = String::new();
    if !t.standard_scheme {
        out.push_str("non-standard scheme\n");
    }
    let _ = writeln!(
        out,
        "n={} first={} dominator={} staller={} length={} f0={}",
        t.n, t.first_player, t.dominator, t.staller, t.length, t.f0
    );
    let _ = writeln!(
        out,
        "{:>4} {:<9} {:>6} {:>5} {:>5} {:>4} {:>7} {:>5}",
        "turn", "player", "vertex", "d", "delta", "lone", "f_after", "phase"
    );
    for r in &t.turns {
        let _ = writeln!(
            out,
            "{:>4} {:<9} {:>6} {:>5} {:>5} {:>4} {:>7} {:>5}",
            r.i,
            r.player.to_string(),
            r.vertex,
            r.d,
            r.delta_before,
            if r.isolated_edge_move { "yes" } else { "no" },
            r.f_after,
            r.phase
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("totdom").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["sweep"]).0, 2);
        assert_eq!(call(&["sweep", "--exhaustive"]).0, 2);
        assert_eq!(call(&["play", "/nonexistent/graph"]).0, 2);
        assert_eq!(call(&["bogus"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn small_exhaustive_sweep() {
        let (code, out, _) = call(&["sweep", "--exhaustive", "--max-n", "4"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("result: PASS"));
    }

    #[test]
    fn negative_weight_is_rejected() {
        let (code, _, err) = call(&["sweep", "--exhaustive", "--max-n", "3", "--w-edge", "-1"]);
        assert_eq!(code, 2);
        assert!(err.contains("error"));
    }
}
