use mbcolour::families;
use mbcolour::params::{monotonicity_violations, parameter_report, win_profile};
use mbcolour::solver::{naive_maker_wins, principal_variation};
use mbcolour::{naive_solve, solve, Game, GameSpec, Graph, Move, Player, Solver, Status, Variant};
use proptest::prelude::*;

fn arb_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges: Vec<_> = pairs.iter().zip(&keep).filter(|(_, k)| **k).map(|(e, _)| *e).collect();
            Graph::new(n, &edges).unwrap()
        })
    })
}

fn arb_variant() -> impl Strategy<Value = Variant> {
    prop::sample::select(Variant::ALL.to_vec())
}

fn spec(variant: Variant, k: u32, n: usize) -> GameSpec {
    GameSpec::new(variant, k).with_default_ordering(n)
}

#[test]
fn fig3_vertex_profile() {
    let g = families::fig3_graph();
    let p = win_profile(&g, Variant::Vertex, 1..=6, None).unwrap();
    assert_eq!(p.summary(), "1:B 2:B 3:B 4:M 5:M 6:M");
    let c = win_profile(&g, Variant::ConnectedVertex, 1..=6, None).unwrap();
    assert_eq!(c.summary(), "1:B 2:B 3:B 4:B 5:M 6:M");
}

#[test]
fn fig3_and_fig4_reports() {
    let r = parameter_report(&families::fig3_graph(), Some(6)).unwrap();
    assert_eq!((r.chi_g.determined(), r.chi_cg.determined()), (Some(4), Some(5)));
    let (g, (u, v)) = families::fig4_graph();
    let r = parameter_report(&g, Some(5)).unwrap();
    assert_eq!(r.col_cg.determined(), Some(3));
    let r = parameter_report(&g.delete_edge(u, v).unwrap(), Some(5)).unwrap();
    assert_eq!(r.col_cg.determined(), Some(4));
}

#[test]
fn report_matches_profiles_pointwise() {
    let g = families::cycle(5);
    let r = parameter_report(&g, None).unwrap();
    for p in r.parameters() {
        let profile = p.profile.as_ref().unwrap();
        let fresh = win_profile(&g, p.variant, profile.range(), None).unwrap();
        assert_eq!(&fresh, profile, "{}", p.name);
        let least = profile.least_maker_win().unwrap();
        assert!(profile.iter().take_while(|&(k, _)| k < least).all(|(_, w)| w == Player::Breaker));
        let shift = if p.variant.is_marking() { 1 } else { 0 };
        assert_eq!(p.determined(), Some(least + shift));
    }
}

#[test]
fn ordered_drops() {
    let h1 = families::h_r(1).unwrap();
    assert_eq!(monotonicity_violations(&h1.graph, Variant::OrderedVertex, 3..=4, Some(&h1.ordering)).unwrap(), vec![3]);
    let t = families::theorem14_graph(4, 5).unwrap();
    assert_eq!(monotonicity_violations(&t.graph, Variant::OrderedVertex, 4..=5, Some(&t.ordering)).unwrap(), vec![4]);
}

#[test]
fn k5_arboricity_needs_three_colours() {
    let k5 = families::complete(5);
    let p = win_profile(&k5, Variant::Arboricity, 1..=4, None).unwrap();
    assert_eq!(p.summary(), "1:B 2:B 3:M 4:M");
}

#[test]
fn disconnected_input_rejected_for_connected_variants() {
    let g = families::edgeless(3);
    assert!(solve(&GameSpec::new(Variant::ConnectedVertex, 2), &g).is_err());
    assert_eq!(solve(&GameSpec::new(Variant::Vertex, 1), &g).unwrap().winner, Player::Maker);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn memoised_solver_matches_plain_search(g in arb_graph(1, 5), variant in arb_variant(), k in 0u32..=3) {
        prop_assume!(!variant.is_connected() || g.is_connected());
        let s = spec(variant, k, g.n());
        prop_assert_eq!(solve(&s, &g).unwrap().winner, naive_solve(&s, &g).unwrap().winner);
    }

    #[test]
    fn principal_variation_is_legal_and_ends_with_the_winner(g in arb_graph(1, 5), variant in arb_variant(), k in 0u32..=3) {
        prop_assume!(!variant.is_connected() || g.is_connected());
        let s = spec(variant, k, g.n());
        let winner = solve(&s, &g).unwrap().winner;
        let game = Game::new(s.clone(), g.clone()).unwrap();
        let mut pos = game.initial_position();
        for mv in principal_variation(&s, &g).unwrap() {
            prop_assert!(game.is_legal(&pos, &mv));
            pos = game.apply(&pos, &mv).unwrap();
        }
        prop_assert_eq!(game.status(&pos), Status::won_by(winner));
    }

    #[test]
    fn random_playouts_respect_rules(g in arb_graph(1, 6), variant in arb_variant(), k in 1u32..=3, picks in proptest::collection::vec(any::<prop::sample::Index>(), 30)) {
        prop_assume!(!variant.is_connected() || g.is_connected());
        let game = Game::new(spec(variant, k, g.n()), g.clone()).unwrap();
        let mut pos = game.initial_position();
        for pick in picks {
            let moves = game.legal_moves(&pos);
            prop_assert_eq!(moves.is_empty(), game.status(&pos) != Status::Ongoing);
            if moves.is_empty() {
                break;
            }
            let mv = moves[pick.index(moves.len())];
            pos = game.apply(&pos, &mv).unwrap();
            prop_assert!(game.components_consistent(&pos));
            if variant == Variant::Arboricity {
                if let Move::EdgeColour { u, v, colour } = mv {
                    prop_assert!(pos.components().unwrap().same(colour, u - 1, v - 1));
                }
            }
        }
    }

    #[test]
    fn winner_invariant_under_colour_permutation(
        g in arb_graph(2, 4),
        variant in prop::sample::select(vec![Variant::Vertex, Variant::ConnectedVertex, Variant::OrderedVertex, Variant::Arboricity]),
        k in 1u32..=3,
        first in any::<prop::sample::Index>(),
        perm in Just(vec![1usize, 2, 3]).prop_shuffle(),
    ) {
        prop_assume!(!variant.is_connected() || g.is_connected());
        let game = Game::new(spec(variant, k, g.n()), g.clone()).unwrap();
        let root = game.initial_position();
        let moves = game.legal_moves(&root);
        prop_assume!(!moves.is_empty());
        let pos = game.apply(&root, &moves[first.index(moves.len())]).unwrap();
        let perm: Vec<usize> = perm.into_iter().filter(|&c| c <= k as usize).collect();
        let moved = game.relabel_colours(&pos, &perm);
        prop_assert_eq!(naive_maker_wins(&game, &pos, &mut 0).unwrap(), naive_maker_wins(&game, &moved, &mut 0).unwrap());
        let mut solver = Solver::new(game.clone());
        prop_assert_eq!(solver.maker_wins(&moved).unwrap(), naive_maker_wins(&game, &moved, &mut 0).unwrap());
    }

    #[test]
    fn marking_and_greedy_profiles_are_upward_closed(g in arb_graph(1, 6)) {
        let n = g.n() as u32;
        for variant in [Variant::Marking, Variant::Greedy, Variant::OrderedGreedy] {
            let p = win_profile(&g, variant, 0..=n, None).unwrap();
            prop_assert!(p.is_upward_closed(), "{} {}", variant, p.summary());
        }
    }

    #[test]
    fn trivial_palettes_win(g in arb_graph(1, 6)) {
        let d = g.max_degree() as u32;
        for variant in [Variant::Vertex, Variant::OrderedVertex, Variant::Greedy, Variant::OrderedGreedy] {
            prop_assert_eq!(solve(&spec(variant, d + 1, g.n()), &g).unwrap().winner, Player::Maker);
        }
        if g.m() > 0 {
            prop_assert_eq!(solve(&spec(Variant::Arboricity, g.m() as u32, g.n()), &g).unwrap().winner, Player::Maker);
        }
        prop_assert_eq!(solve(&spec(Variant::Marking, d, g.n()), &g).unwrap().winner, Player::Maker);
    }
}
