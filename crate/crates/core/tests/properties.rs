use kstrong_core::bounds::{build_q, kstrong_bounds};
use kstrong_core::combinatorics::{binom, Combinations, MixedRadix};
use kstrong_core::label::{aggregate_theta, deviation_coefficient, label_pair};
use kstrong_core::lp::{solve, Relation, Sense};
use kstrong_core::oracle::{enumerate_k_strong, group_deviation_total, OracleConfig};
use kstrong_core::{
    Bound, CongestionGame, CostTable, JointStrategy, LabelSet, LatencyBasis, LinearProgram, LocalCost, Rational, Spoa,
};
use proptest::prelude::*;

fn r(p: i64) -> Rational {
    Rational::from_integer(p.into())
}

#[derive(Debug, Clone)]
struct GameSpec {
    alphas: Vec<Vec<i64>>,
    strategies: Vec<Vec<Vec<usize>>>,
}

fn game_spec(max_players: usize, bases: usize) -> impl Strategy<Value = GameSpec> {
    (1..=max_players, 1..=4usize).prop_flat_map(move |(n, m)| {
        let alphas = prop::collection::vec(prop::collection::vec(0..4i64, bases), m);
        let strategy = prop::collection::btree_set(0..m, 0..=m).prop_map(|s| s.into_iter().collect::<Vec<_>>());
        let player = prop::collection::vec(strategy, 1..=3);
        let strategies = prop::collection::vec(player, n);
        (alphas, strategies).prop_map(|(alphas, strategies)| GameSpec { alphas, strategies })
    })
}

fn build(spec: &GameSpec, basis: LatencyBasis) -> CongestionGame<Rational> {
    let alphas = spec.alphas.iter().map(|a| a.iter().map(|&v| r(v)).collect()).collect();
    CongestionGame::new(basis, alphas, spec.strategies.clone()).unwrap()
}

fn joint(game: &CongestionGame<Rational>, seed: &[usize]) -> JointStrategy {
    JointStrategy::new((0..game.players()).map(|i| seed[i % seed.len()] % game.strategies(i).len()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn player_costs_sum_to_system_cost(spec in game_spec(4, 2), seed in prop::collection::vec(0..3usize, 4)) {
        let game = build(&spec, LatencyBasis::affine());
        let s = joint(&game, &seed);
        let total = (0..game.players()).fold(r(0), |acc, i| acc + game.player_cost(&s, i).unwrap());
        prop_assert_eq!(total, game.system_cost(&s).unwrap());
    }

    #[test]
    fn incremental_state_matches_scratch(
        spec in game_spec(4, 3),
        moves in prop::collection::vec((0..4usize, 0..3usize), 1..20),
    ) {
        let game = build(&spec, LatencyBasis::polynomial(2).unwrap());
        let mut state = game.state(&joint(&game, &[0])).unwrap();
        for (p, c) in moves {
            let p = p % game.players();
            let c = c % game.strategies(p).len();
            state.switch(p, c).unwrap();
            prop_assert_eq!(state.loads().to_vec(), game.loads(state.joint()).unwrap());
            prop_assert_eq!(state.cost().clone(), game.system_cost(state.joint()).unwrap());
        }
    }

    #[test]
    fn labels_rewrite_group_deviations(
        spec in game_spec(4, 2),
        a in prop::collection::vec(0..3usize, 4),
        b in prop::collection::vec(0..3usize, 4),
        zeta in 1..=4usize,
    ) {
        let game = build(&spec, LatencyBasis::affine());
        let zeta = zeta.min(game.players());
        let (s, t) = (joint(&game, &a), joint(&game, &b));
        let theta = aggregate_theta(&game, &label_pair(&game, &s, &t).unwrap());
        prop_assert_eq!(theta.first_cost(game.costs()), game.system_cost(&s).unwrap());
        prop_assert_eq!(theta.second_cost(game.costs()), game.system_cost(&t).unwrap());
        prop_assert_eq!(theta.deviation_total(game.costs(), zeta), group_deviation_total(&game, &s, &t, zeta).unwrap());
    }

    #[test]
    fn constraint_order_does_not_change_the_optimum(
        rows in prop::collection::vec((prop::collection::vec(-3..4i64, 3), 0..12i64), 1..6),
        shift in 0..6usize,
    ) {
        let make = |order: &[usize]| {
            let mut lp = LinearProgram::new(Sense::Maximize, vec![r(1), r(2), r(1)]);
            for &i in order {
                let (coeffs, rhs) = &rows[i];
                lp.add_constraint(coeffs.iter().map(|&v| r(v)).collect(), Relation::Le, r(*rhs)).unwrap();
            }
            lp.add_constraint(vec![r(1), r(1), r(1)], Relation::Le, r(10)).unwrap();
            solve(&lp).unwrap()
        };
        let order: Vec<usize> = (0..rows.len()).collect();
        let mut rotated = order.clone();
        rotated.rotate_left(shift % rows.len());
        let (x, y) = (make(&order), make(&rotated));
        prop_assert_eq!(x.status(), y.status());
        prop_assert_eq!(x.optimum().map(|o| o.value.clone()), y.optimum().map(|o| o.value.clone()));
    }

    #[test]
    fn lower_program_is_scale_invariant(n in 1..=4usize, k in 1..=4usize, scale in 1..9i64, degree in 1..3u32) {
        let k = k.min(n);
        let costs = CostTable::<Rational>::new(&LatencyBasis::monomial(degree), n).unwrap();
        let scaled: Vec<Rational> = (0..=n).map(|x| costs.local_cost(0, x).unwrap() * r(scale)).collect();
        let base = solve(&build_q(&costs.local(0), n, k).unwrap()).unwrap().into_optimum().unwrap().value;
        let other = solve(&build_q(&LocalCost::from_values(0, &scaled), n, k).unwrap()).unwrap().into_optimum().unwrap().value;
        prop_assert_eq!(base, other);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn exact_spoa_respects_the_upper_bound(spec in game_spec(3, 2), k in 1..=3usize) {
        let game = build(&spec, LatencyBasis::affine());
        let k = k.min(game.players());
        let report = enumerate_k_strong(&game, k, &OracleConfig::default()).unwrap();
        prop_assert!(!report.equilibria.is_empty());
        let bounds = kstrong_bounds::<Rational>(&LatencyBasis::affine(), game.players(), k).unwrap();
        match (report.spoa, bounds.upper) {
            (Spoa::Ratio(ratio), Bound::Finite(upper)) => prop_assert!(ratio <= upper),
            (Spoa::Infinite, Bound::Finite(_)) => prop_assert!(false, "infinite spoa under a finite bound"),
            _ => {}
        }
    }

    #[test]
    fn scaling_coefficients_keeps_spoa(spec in game_spec(3, 2), scale in 2..5i64) {
        let game = build(&spec, LatencyBasis::affine());
        let larger = GameSpec { alphas: spec.alphas.iter().map(|a| a.iter().map(|v| v * scale).collect()).collect(), ..spec.clone() };
        let larger = build(&larger, LatencyBasis::affine());
        let cfg = OracleConfig::default();
        for k in 1..=game.players() {
            prop_assert_eq!(enumerate_k_strong(&game, k, &cfg).unwrap().spoa, enumerate_k_strong(&larger, k, &cfg).unwrap().spoa);
        }
    }
}

#[test]
fn coefficients_count_every_group() {
    for n in 1..=12 {
        for label in LabelSet::new(n).iter() {
            for zeta in 1..=n {
                let mut total = 0;
                for psi in 0..=label.a {
                    for omega in 0..=label.b {
                        total += deviation_coefficient(n, zeta, label, psi, omega);
                    }
                }
                assert_eq!(total, binom(n as i64, zeta as i64), "n={n} zeta={zeta} {label}");
            }
        }
    }
}

#[test]
fn coefficients_match_group_counting() {
    let n = 5;
    for label in LabelSet::new(n).iter() {
        // players 0..a drop the resource, a..a+x keep it, a+x..a+x+b pick it up
        for zeta in 1..=n {
            let mut counts = std::collections::BTreeMap::new();
            for group in Combinations::new(n, zeta) {
                let psi = group.iter().filter(|&&i| i < label.a).count();
                let omega = group.iter().filter(|&&i| i >= label.a + label.x && i < label.total()).count();
                *counts.entry((psi, omega)).or_insert(0u64) += 1;
            }
            for ((psi, omega), count) in counts {
                assert_eq!(deviation_coefficient(n, zeta, label, psi, omega), count);
            }
        }
    }
}

#[test]
fn mixed_radix_visits_the_product_once() {
    let all: Vec<_> = MixedRadix::new(vec![2, 3, 1]).collect();
    assert_eq!(all.len(), 6);
    assert_eq!(all[1], vec![0, 1, 0]);
    assert!(MixedRadix::new(vec![2, 0]).next().is_none());
}
