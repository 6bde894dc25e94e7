mod common;

use std::sync::Arc;

use proptest::prelude::*;
use totdom::game::replay;
use totdom::strategy::{Greedy, Myopic, RandomMover, Scripted};
use totdom::verify::{verify_trace_lemmas, LemmaScope};
use totdom::{play_game, Board, Graph, Player, Trace, WeightScheme};

use common::{arb_graph, GraphGame};

const P: WeightScheme = WeightScheme::STANDARD;

fn greedy_vs_random(g: &Graph, first: Player, seed: u64) -> (Arc<Board>, Trace) {
    let b = Arc::new(Board::from_graph(g).unwrap());
    let t = play_game(
        &b,
        &mut Greedy { scheme: P },
        &mut RandomMover::new(seed),
        first,
        &P,
    )
    .unwrap();
    (b, t)
}

#[test]
fn json_round_trip_replays_to_the_same_end() {
    let g = Graph::from_edges(
        8,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 6),
            (6, 7),
            (2, 6),
        ],
    )
    .unwrap();
    for first in [Player::Dominator, Player::Staller] {
        let (b, t) = greedy_vs_random(&g, first, 11);
        let back = Trace::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
        let end = replay(&b, back.first_player, &back.moves()).unwrap();
        assert!(end.is_over());
        assert_eq!(end.moves(), t.moves().as_slice());
    }
    assert!(Trace::from_json("{\"n\": 3}").is_err());
}

#[test]
fn tampered_decrease_is_caught_with_replayable_witness() {
    let g = Graph::path(7);
    let b = Arc::new(Board::from_graph(&g).unwrap());
    let t = play_game(
        &b,
        &mut Greedy { scheme: P },
        &mut Myopic { scheme: P },
        Player::Dominator,
        &P,
    )
    .unwrap();
    let turn = 2;
    let mut bad = t.clone();
    bad.turns[turn - 1].d = 15;

    let report = verify_trace_lemmas(&bad, &g, &b, &P, LemmaScope::Full).unwrap();
    assert!(!report.all_passed());
    let failure = report
        .failures
        .iter()
        .find(|f| f.check == "L1")
        .expect("L1 failure");
    let w = failure.witness.as_ref().unwrap();
    assert_eq!(w.turn, Some(turn));
    assert_eq!(Graph::parse(&w.graph).unwrap(), g);

    // Replaying the witness through the engine gives the true decreases.
    let wb = Arc::new(Board::from_graph(&Graph::parse(&w.graph).unwrap()).unwrap());
    let (dm, sm): (Vec<_>, Vec<_>) = w.moves.iter().enumerate().partition(|(k, _)| k % 2 == 0);
    let again = play_game(
        &wb,
        &mut Scripted::new("dominator", dm.into_iter().map(|(_, &v)| v)),
        &mut Scripted::new("staller", sm.into_iter().map(|(_, &v)| v)),
        w.first_player,
        &P,
    )
    .unwrap();
    assert_eq!(again.decreases(), t.decreases());

    let untouched = verify_trace_lemmas(&t, &g, &b, &P, LemmaScope::Full).unwrap();
    assert!(untouched.all_passed(), "{}", untouched.to_text());
}

#[test]
fn report_json_carries_witness() {
    let g = Graph::cycle(6);
    let (b, t) = greedy_vs_random(&g, Player::Dominator, 3);
    let mut bad = t.clone();
    bad.turns[0].d = 15;
    let report = verify_trace_lemmas(&bad, &g, &b, &P, LemmaScope::Basic).unwrap();
    let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
    let l1 = json["failures"]
        .as_array()
        .unwrap()
        .iter()
        .find(|f| f["check"] == "L1")
        .unwrap();
    assert_eq!(l1["witness"]["turn"], 1);
    assert_eq!(l1["witness"]["moves"].as_array().unwrap().len(), t.length);
}

#[test]
fn non_greedy_full_check_is_a_usage_error() {
    let g = Graph::path(5);
    let b = Arc::new(Board::from_graph(&g).unwrap());
    let t = play_game(
        &b,
        &mut RandomMover::new(1),
        &mut RandomMover::new(2),
        Player::Dominator,
        &P,
    )
    .unwrap();
    assert!(matches!(
        verify_trace_lemmas(&t, &g, &b, &P, LemmaScope::Full),
        Err(totdom::Error::Usage(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn hypergraph_traces_are_graph_games(g in arb_graph(7), seed in any::<u64>(), staller_first in any::<bool>()) {
        let first = if staller_first { Player::Staller } else { Player::Dominator };
        let (_, t) = greedy_vs_random(&g, first, seed);
        prop_assert!(GraphGame::new(&g).replays(&t.moves()));
    }

    #[test]
    fn random_greedy_traces_pass_basic_checks(g in arb_graph(7), seed in any::<u64>()) {
        let (b, t) = greedy_vs_random(&g, Player::Dominator, seed);
        let r = verify_trace_lemmas(&t, &g, &b, &P, LemmaScope::Full).unwrap();
        prop_assert!(r.all_passed(), "{}", r.to_text());
    }
}
