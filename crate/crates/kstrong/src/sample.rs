//! Seeded random games for tests and benchmarks.

use std::ops::RangeInclusive;

use kstrong_core::{CongestionGame, JointStrategy, LatencyBasis, Rational, Scalar};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSpec {
    pub players: RangeInclusive<usize>,
    pub max_resources: usize,
    pub max_strategies: usize,
    /// Coefficients are `p / q` with `p` in `0..=max_numerator` and `q` in `1..=max_denominator`.
    pub max_numerator: i64,
    pub max_denominator: i64,
}

impl Default for SampleSpec {
    fn default() -> Self {
        Self { players: 1..=3, max_resources: 4, max_strategies: 3, max_numerator: 4, max_denominator: 3 }
    }
}

/// A game in the class spanned by `basis`: every strategy is a nonempty resource subset.
pub fn random_game<R: Rng>(basis: &LatencyBasis, spec: &SampleSpec, rng: &mut R) -> CongestionGame<Rational> {
    let n = rng.gen_range(spec.players.clone());
    let m = rng.gen_range(1..=spec.max_resources);
    let alphas = (0..m)
        .map(|_| {
            (0..basis.len())
                .map(|_| {
                    let p = rng.gen_range(0..=spec.max_numerator);
                    let q = rng.gen_range(1..=spec.max_denominator);
                    Rational::new(p.into(), q.into())
                })
                .collect()
        })
        .collect();
    let strategies = (0..n)
        .map(|_| {
            (0..rng.gen_range(1..=spec.max_strategies))
                .map(|_| {
                    let size = rng.gen_range(1..=m);
                    let mut set = index::sample(rng, m, size).into_vec();
                    set.sort_unstable();
                    set
                })
                .collect()
        })
        .collect();
    CongestionGame::new(basis.clone(), alphas, strategies).expect("sampled game is valid")
}

pub fn random_joint<S: Scalar, R: Rng>(game: &CongestionGame<S>, rng: &mut R) -> JointStrategy {
    JointStrategy::new((0..game.players()).map(|i| rng.gen_range(0..game.strategies(i).len())).collect())
}
