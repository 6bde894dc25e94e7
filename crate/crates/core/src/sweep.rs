//! Batch verification over every small graph and over seeded random graphs.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::enumerate::connected_graphs;
use crate::error::{Error, Result};
use crate::game::{play_game, Board, Player, Trace};
use crate::graph::{build_onh, validate_min_component_order, Graph};
use crate::solver::{solve_exact_game, worst_staller_traces};
use crate::strategy::{Greedy, Myopic, RandomMover, StallerKind};
use crate::verify::{
    verify_graph, verify_initial_potential, verify_trace_lemmas, LemmaScope, ReportConfig,
    VerificationReport, VerifyOptions,
};

pub const MAX_EXHAUSTIVE_ORDER: usize = 7;

/// Attempts per instance before random generation gives up.
pub const MAX_GENERATION_ATTEMPTS: usize = 10_000;

/// Paths whose game length ratio is recorded by the exhaustive sweep.
const RECORDED_PATHS: [usize; 4] = [4, 5, 8, 9];

/// Connected graphs on `3..=max_n` vertices followed by unordered pairs of
/// them with total order at most `max_n + 3`.
pub fn exhaustive_instances(max_n: usize) -> (Vec<Graph>, usize) {
    let mut connected = Vec::new();
    for n in 3..=max_n {
        connected.extend(connected_graphs(n));
    }
    let single = connected.len();
    let mut all = connected.clone();
    for (i, a) in connected.iter().enumerate() {
        for b in &connected[i..] {
            if a.order() + b.order() <= max_n + 3 {
                all.push(a.disjoint_union(b));
            }
        }
    }
    (all, single)
}

/// Runs [`verify_graph`] on every instance of [`exhaustive_instances`].
pub fn sweep_exhaustive(
    max_n: usize,
    opts: &VerifyOptions,
    jobs: usize,
) -> Result<VerificationReport> {
    if max_n > MAX_EXHAUSTIVE_ORDER {
        return Err(Error::Usage(format!(
            "exhaustive sweep supports max n <= {MAX_EXHAUSTIVE_ORDER}, got {max_n}"
        )));
    }
    let (graphs, single) = exhaustive_instances(max_n);
    let mut config = ReportConfig::from_options(opts);
    config.notes.push(format!(
        "{single} connected graphs on 3..={max_n} vertices, {} two-component unions",
        graphs.len() - single
    ));
    let mut report = VerificationReport::new(config);
    let results = run_indexed(graphs.len(), jobs, |i| verify_graph(&graphs[i], opts))?;
    for (i, sub) in results.into_iter().enumerate() {
        report.absorb(sub, Some(i));
    }
    for n in RECORDED_PATHS {
        let h = build_onh(&Graph::path(n))?;
        let value = solve_exact_game(&h, Player::Dominator, opts.exact_edge_limit)?.value;
        report.note(
            "I.path_ratio",
            format!(
                "P{n}: game length {value}, ratio {:.4}",
                value as f64 / n as f64
            ),
        );
    }
    Ok(report)
}

/// Parameters of a random sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomSweep {
    pub count: usize,
    pub n: usize,
    pub p: f64,
    pub seed: u64,
    pub staller: StallerKind,
}

/// Samples `G(n, p)` until every component has at least three vertices.
pub fn random_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Usage(format!(
            "edge probability must lie in [0, 1], got {p}"
        )));
    }
    if n < 3 || p == 0.0 {
        return Err(Error::Generation(format!(
            "G({n}, {p}) never has all components of order >= 3"
        )));
    }
    for _ in 0..MAX_GENERATION_ATTEMPTS {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, &edges)?;
        if validate_min_component_order(&g).is_ok() {
            return Ok(g);
        }
    }
    Err(Error::Generation(format!(
        "no graph with all components of order >= 3 in {MAX_GENERATION_ATTEMPTS} draws of G({n}, {p})"
    )))
}

/// The random stream for instance `i`: independent of how instances are
/// scheduled.
pub fn instance_rng(seed: u64, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    rng
}

/// Greedy-Dominator traces for both starts against the requested Staller.
/// Returns the traces and whether the worst-case Staller had to fall back
/// to the myopic one.
pub fn greedy_traces<R: Rng + ?Sized>(
    board: &Arc<Board>,
    staller: StallerKind,
    opts: &VerifyOptions,
    rng: &mut R,
) -> Result<(Vec<Trace>, bool)> {
    let scheme = opts.scheme;
    let fallback =
        staller == StallerKind::Worst && board.hypergraph.edge_count() > opts.worst_edge_limit;
    if staller == StallerKind::Worst && !fallback {
        return Ok((
            worst_staller_traces(board, &scheme, opts.worst_edge_limit)?.to_vec(),
            false,
        ));
    }
    let mut traces = Vec::with_capacity(2);
    for first in [Player::Dominator, Player::Staller] {
        let trace = match staller {
            StallerKind::Worst | StallerKind::Myopic => play_game(
                board,
                &mut Greedy { scheme },
                &mut Myopic { scheme },
                first,
                &scheme,
            )?,
            StallerKind::Random => {
                let mut mover = RandomMover::new(rng.gen());
                play_game(board, &mut Greedy { scheme }, &mut mover, first, &scheme)?
            }
        };
        traces.push(trace);
    }
    Ok((traces, fallback))
}

fn random_instance(
    params: &RandomSweep,
    i: usize,
    opts: &VerifyOptions,
) -> Result<(VerificationReport, bool)> {
    let mut rng = instance_rng(params.seed, i);
    let g = random_graph(params.n, params.p, &mut rng)?;
    let board = Arc::new(Board::from_graph(&g)?);
    let (traces, fallback) = greedy_traces(&board, params.staller, opts, &mut rng)?;
    let scope = if opts.scheme.is_standard() {
        LemmaScope::Full
    } else {
        LemmaScope::Basic
    };
    let mut report = VerificationReport::new(ReportConfig::from_options(opts));
    for trace in &traces {
        report.absorb(
            verify_trace_lemmas(trace, &g, &board, &opts.scheme, scope)?,
            None,
        );
    }
    report.absorb(verify_initial_potential(&g, &board), None);
    report.instances = 1;
    Ok((report, fallback))
}

/// Verifies greedy traces on `count` seeded random graphs.
pub fn sweep_random(
    params: &RandomSweep,
    opts: &VerifyOptions,
    jobs: usize,
) -> Result<VerificationReport> {
    if params.count == 0 || params.n == 0 {
        return Err(Error::Usage("count and n must be positive".into()));
    }
    if !(0.0..=1.0).contains(&params.p) {
        return Err(Error::Usage(format!(
            "edge probability must lie in [0, 1], got {}",
            params.p
        )));
    }
    let mut config = ReportConfig::from_options(opts);
    config.seed = Some(params.seed);
    config.staller = Some(params.staller.to_string());
    config
        .notes
        .push(format!("G(n, p) with n = {}, p = {}", params.n, params.p));
    let mut report = VerificationReport::new(config);
    let results = run_indexed(params.count, jobs, |i| random_instance(params, i, opts))?;
    let mut fallbacks = 0;
    for (i, (sub, fallback)) in results.into_iter().enumerate() {
        fallbacks += usize::from(fallback);
        report.absorb(sub, Some(i));
    }
    if fallbacks > 0 {
        report.config.notes.push(format!(
            "{fallbacks} instances exceed the worst-case search limit of {} edges; the myopic Staller was used instead",
            opts.worst_edge_limit
        ));
    }
    Ok(report)
}

/// Evaluates `task(0..count)` on up to `jobs` threads and returns the
/// results in index order; the first error by index wins.
fn run_indexed<T, F>(count: usize, jobs: usize, task: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync,
{
    let jobs = jobs.clamp(1, count.max(1));
    if jobs == 1 {
        return (0..count).map(&task).collect();
    }
    let mut slots: Vec<Option<Result<T>>> = (0..count).map(|_| None).collect();
    std::thread::scope(|scope| {
        let task = &task;
        let handles: Vec<_> = (0..jobs)
            .map(|j| {
                scope.spawn(move || {
                    (j..count)
                        .step_by(jobs)
                        .map(|i| (i, task(i)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("sweep worker panicked") {
                slots[i] = Some(r);
            }
        }
    });
    slots
        .into_iter()
        .map(|s| s.expect("every index evaluated"))
        .collect()
}
