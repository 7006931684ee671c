//! Brute-force k-strong equilibrium machinery.
//!
//! A joint strategy is k-strong when no group of at most `k` players can change
//! their joint choice and strictly lower the common objective (the system cost `C`
//! unless another [`Objective`] is supplied). Equal-cost deviations do not break
//! stability; in floating-point mode differences within the tolerance count as equal.
//!
//! Groups are scanned by size, then lexicographically by sorted member ids; the
//! replacement tuples of a group are scanned lexicographically by strategy index.

use alloc::vec::Vec;
use core::ops::Range;

use crate::combinatorics::{binom, groups_up_to, Combinations, MixedRadix};
use crate::error::{Error, Result};
use crate::game::{CongestionGame, JointStrategy, LoadState};
use crate::scalar::{Scalar, DEFAULT_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub max_joint_strategies: u128,
    pub max_deviation_checks: u128,
    pub tolerance: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { max_joint_strategies: 1_000_000, max_deviation_checks: 100_000_000, tolerance: DEFAULT_TOLERANCE }
    }
}

impl OracleConfig {
    fn tol<S: Scalar>(&self) -> f64 {
        if S::EXACT {
            0.0
        } else {
            self.tolerance
        }
    }
}

/// The common objective the groups minimise.
pub trait Objective<S: Scalar> {
    fn value(&self, state: &LoadState<'_, S>) -> S;

    /// `true` if the objective is the system cost itself.
    fn is_system_cost(&self) -> bool {
        false
    }
}

/// `Phi = C`: altruistic collaboration.
#[derive(Debug, Clone, Copy, Default)]
pub struct SystemCost;

impl<S: Scalar> Objective<S> for SystemCost {
    fn value(&self, state: &LoadState<'_, S>) -> S {
        state.cost().clone()
    }

    fn is_system_cost(&self) -> bool {
        true
    }
}

impl<S: Scalar, F: Fn(&LoadState<'_, S>) -> S> Objective<S> for F {
    fn value(&self, state: &LoadState<'_, S>) -> S {
        self(state)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deviation {
    pub group: Vec<usize>,
    pub replacement: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Improvement<S> {
    pub deviation: Deviation,
    pub before: S,
    pub after: S,
}

#[derive(Debug, Clone, PartialEq)]
pub enum KStrongCheck<S> {
    Stable,
    /// The lexicographically first strictly improving group deviation.
    Improvable(Improvement<S>),
}

impl<S> KStrongCheck<S> {
    pub fn is_stable(&self) -> bool {
        matches!(self, KStrongCheck::Stable)
    }

    pub fn witness(&self) -> Option<&Improvement<S>> {
        match self {
            KStrongCheck::Improvable(w) => Some(w),
            KStrongCheck::Stable => None,
        }
    }
}

/// Number of (group, replacement) pairs examined at one joint strategy.
pub fn deviation_checks_per_state(strategy_counts: &[usize], k: usize) -> u128 {
    // e[z] = elementary symmetric polynomial of degree z in the strategy counts.
    let mut e = alloc::vec![0u128; k + 1];
    e[0] = 1;
    for &w in strategy_counts {
        for z in (1..=k).rev() {
            e[z] = e[z].saturating_add(e[z - 1].saturating_mul(w as u128));
        }
    }
    let n = strategy_counts.len() as i64;
    (1..=k).fold(0u128, |acc, z| acc.saturating_add(e[z].saturating_sub(binom(n, z as i64) as u128)))
}

fn check_budget<S: Scalar>(game: &CongestionGame<S>, k: usize, states: u128, cfg: &OracleConfig) -> Result<()> {
    let per_state = deviation_checks_per_state(&game.strategy_counts(), k);
    let requested = per_state.saturating_mul(states);
    if requested > cfg.max_deviation_checks {
        return Err(Error::ResourceLimit { what: "deviation checks", requested, cap: cfg.max_deviation_checks });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// Apply the first strictly improving deviation in scan order.
    #[default]
    FirstImprovement,
    /// Apply the deviation with the lowest resulting objective; scan order breaks ties.
    SteepestDescent,
}

fn find_improvement<S: Scalar, O: Objective<S>>(
    state: &mut LoadState<'_, S>,
    k: usize,
    objective: &O,
    tie: TieBreak,
    tol: f64,
) -> Option<Improvement<S>> {
    let game = state.game();
    let n = game.players();
    let base = objective.value(state);
    let origin = state.joint().clone();
    let mut best: Option<Improvement<S>> = None;
    'groups: for group in groups_up_to(n, k) {
        let current: Vec<usize> = group.iter().map(|&i| origin.choice(i)).collect();
        let radices = group.iter().map(|&i| game.strategies(i).len()).collect();
        for tuple in MixedRadix::new(radices) {
            if tuple == current {
                continue;
            }
            state.apply(&group, &tuple).expect("valid replacement");
            let value = objective.value(state);
            state.apply(&group, &current).expect("valid restore");
            let target = best.as_ref().map_or(&base, |b| &b.after);
            if value.definitely_lt(target, tol) {
                best = Some(Improvement {
                    deviation: Deviation { group: group.clone(), replacement: tuple },
                    before: base.clone(),
                    after: value,
                });
                if tie == TieBreak::FirstImprovement {
                    break 'groups;
                }
            }
        }
    }
    if !S::EXACT {
        state.resync();
    }
    best
}

pub fn is_k_strong<S: Scalar>(
    game: &CongestionGame<S>,
    s: &JointStrategy,
    k: usize,
    cfg: &OracleConfig,
) -> Result<KStrongCheck<S>> {
    is_k_strong_with(game, s, k, &SystemCost, cfg)
}

pub fn is_k_strong_with<S: Scalar, O: Objective<S>>(
    game: &CongestionGame<S>,
    s: &JointStrategy,
    k: usize,
    objective: &O,
    cfg: &OracleConfig,
) -> Result<KStrongCheck<S>> {
    game.check_group_size(k, "k")?;
    check_budget(game, k, 1, cfg)?;
    let mut state = game.state(s)?;
    Ok(match find_improvement(&mut state, k, objective, TieBreak::FirstImprovement, cfg.tol::<S>()) {
        None => KStrongCheck::Stable,
        Some(w) => KStrongCheck::Improvable(w),
    })
}

/// Mixed-radix indexing of joint strategies; the last player's digit is fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointSpace {
    radices: Vec<usize>,
    strides: Vec<u64>,
    total: u64,
}

impl JointSpace {
    pub fn new<S: Scalar>(game: &CongestionGame<S>, cap: u128) -> Result<Self> {
        let total = game.joint_count().unwrap_or(u128::MAX);
        if total > cap {
            return Err(Error::ResourceLimit { what: "joint strategies", requested: total, cap });
        }
        let radices = game.strategy_counts();
        let mut strides = alloc::vec![1u64; radices.len()];
        for i in (0..radices.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * radices[i + 1] as u64;
        }
        Ok(Self { radices, strides, total: total as u64 })
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn decode(&self, mut index: u64) -> JointStrategy {
        let mut choices = alloc::vec![0; self.radices.len()];
        for (i, &stride) in self.strides.iter().enumerate() {
            choices[i] = (index / stride) as usize;
            index %= stride;
        }
        JointStrategy::new(choices)
    }

    pub fn encode(&self, s: &JointStrategy) -> u64 {
        s.choices().iter().zip(&self.strides).map(|(&c, &st)| c as u64 * st).sum()
    }
}

/// System cost (and objective, if different) of every joint strategy.
#[derive(Debug, Clone)]
pub struct ObjectiveTable<S> {
    space: JointSpace,
    cost: Vec<S>,
    phi: Option<Vec<S>>,
}

pub fn tabulate<S: Scalar, O: Objective<S>>(
    game: &CongestionGame<S>,
    objective: &O,
    cfg: &OracleConfig,
) -> Result<ObjectiveTable<S>> {
    let space = JointSpace::new(game, cfg.max_joint_strategies)?;
    let total = space.total as usize;
    let mut cost = Vec::with_capacity(total);
    let mut phi = (!objective.is_system_cost()).then(|| Vec::with_capacity(total));
    let mut state = game.state(&JointStrategy::new(alloc::vec![0; game.players()]))?;
    for choices in MixedRadix::new(space.radices.clone()) {
        for (i, &c) in choices.iter().enumerate() {
            state.switch(i, c)?;
        }
        if !S::EXACT {
            state.resync();
        }
        cost.push(state.cost().clone());
        if let Some(phi) = phi.as_mut() {
            phi.push(objective.value(&state));
        }
    }
    Ok(ObjectiveTable { space, cost, phi })
}

/// Equilibria found in one index range of the joint space.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialReport<S> {
    pub equilibria: Vec<u64>,
    pub worst: Option<S>,
}

impl<S: Scalar> PartialReport<S> {
    pub fn empty() -> Self {
        Self { equilibria: Vec::new(), worst: None }
    }

    pub fn merge(mut self, other: Self) -> Self {
        self.equilibria.extend(other.equilibria);
        self.worst = match (self.worst, other.worst) {
            (Some(a), Some(b)) => Some(if b > a { b } else { a }),
            (a, b) => a.or(b),
        };
        self
    }
}

impl<S: Scalar> ObjectiveTable<S> {
    pub fn space(&self) -> &JointSpace {
        &self.space
    }

    pub fn cost(&self, index: u64) -> &S {
        &self.cost[index as usize]
    }

    fn phi(&self, index: u64) -> &S {
        match &self.phi {
            Some(phi) => &phi[index as usize],
            None => &self.cost[index as usize],
        }
    }

    pub fn optimal_cost(&self) -> S {
        self.cost.iter().fold(self.cost[0].clone(), |m, v| if *v < m { v.clone() } else { m })
    }

    /// Indices minimising the objective.
    pub fn minimizers(&self, tol: f64) -> Vec<u64> {
        let phis: Vec<&S> = (0..self.space.total).map(|i| self.phi(i)).collect();
        let best = phis.iter().fold(phis[0], |m, v| if *v < m { v } else { m });
        (0..self.space.total).filter(|&i| self.phi(i).approx_eq(best, tol)).collect()
    }

    /// First improving deviation from `index`, using the tabulated values.
    pub fn check(&self, index: u64, k: usize, tol: f64) -> KStrongCheck<S> {
        let n = self.space.radices.len();
        let s = self.space.decode(index);
        let base = self.phi(index);
        for group in groups_up_to(n, k) {
            let current: Vec<usize> = group.iter().map(|&i| s.choice(i)).collect();
            let offset: u64 = group.iter().zip(&current).map(|(&i, &c)| c as u64 * self.space.strides[i]).sum();
            let rest = index - offset;
            let radices = group.iter().map(|&i| self.space.radices[i]).collect();
            for tuple in MixedRadix::new(radices) {
                if tuple == current {
                    continue;
                }
                let target = rest + group.iter().zip(&tuple).map(|(&i, &c)| c as u64 * self.space.strides[i]).sum::<u64>();
                let value = self.phi(target);
                if value.definitely_lt(base, tol) {
                    return KStrongCheck::Improvable(Improvement {
                        deviation: Deviation { group, replacement: tuple },
                        before: base.clone(),
                        after: value.clone(),
                    });
                }
            }
        }
        KStrongCheck::Stable
    }

    pub fn scan(&self, range: Range<u64>, k: usize, tol: f64) -> PartialReport<S> {
        let mut out = PartialReport::empty();
        for index in range {
            if self.check(index, k, tol).is_stable() {
                let c = self.cost(index);
                if out.worst.as_ref().is_none_or(|w| c > w) {
                    out.worst = Some(c.clone());
                }
                out.equilibria.push(index);
            }
        }
        out
    }

    pub fn report(&self, part: PartialReport<S>, tol: f64) -> EquilibriumReport<S> {
        let mut indices = part.equilibria;
        indices.sort_unstable();
        let optimal_cost = self.optimal_cost();
        let worst_cost = part.worst.unwrap_or_else(|| optimal_cost.clone());
        let (spoa, zero_optimum) = Spoa::of(&worst_cost, &optimal_cost, tol);
        EquilibriumReport {
            equilibria: indices.into_iter().map(|i| self.space.decode(i)).collect(),
            worst_cost,
            optimal_cost,
            spoa,
            zero_optimum,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Spoa<S> {
    Ratio(S),
    Infinite,
}

impl<S: Scalar> Spoa<S> {
    /// `worst / optimal`; `1` when both vanish, infinite when only the optimum does.
    /// The flag reports a zero optimum.
    pub fn of(worst: &S, optimal: &S, tol: f64) -> (Self, bool) {
        if optimal.is_negligible(tol) {
            if worst.is_negligible(tol) {
                (Spoa::Ratio(S::one()), true)
            } else {
                (Spoa::Infinite, true)
            }
        } else {
            (Spoa::Ratio(worst.clone() / optimal), false)
        }
    }

    pub fn ratio(&self) -> Option<&S> {
        match self {
            Spoa::Ratio(r) => Some(r),
            Spoa::Infinite => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumReport<S> {
    pub equilibria: Vec<JointStrategy>,
    pub worst_cost: S,
    pub optimal_cost: S,
    pub spoa: Spoa<S>,
    pub zero_optimum: bool,
}

pub fn enumerate_k_strong<S: Scalar>(
    game: &CongestionGame<S>,
    k: usize,
    cfg: &OracleConfig,
) -> Result<EquilibriumReport<S>> {
    enumerate_k_strong_with(game, k, &SystemCost, cfg)
}

pub fn enumerate_k_strong_with<S: Scalar, O: Objective<S>>(
    game: &CongestionGame<S>,
    k: usize,
    objective: &O,
    cfg: &OracleConfig,
) -> Result<EquilibriumReport<S>> {
    let table = prepare_enumeration(game, k, objective, cfg)?;
    let tol = cfg.tol::<S>();
    let part = table.scan(0..table.space.total, k, tol);
    Ok(table.report(part, tol))
}

/// Validates `k`, checks both caps and tabulates; the caller scans ranges of the
/// returned table (possibly in parallel) and merges them with [`ObjectiveTable::report`].
pub fn prepare_enumeration<S: Scalar, O: Objective<S>>(
    game: &CongestionGame<S>,
    k: usize,
    objective: &O,
    cfg: &OracleConfig,
) -> Result<ObjectiveTable<S>> {
    game.check_group_size(k, "k")?;
    let total = game.joint_count().unwrap_or(u128::MAX);
    if total > cfg.max_joint_strategies {
        return Err(Error::ResourceLimit { what: "joint strategies", requested: total, cap: cfg.max_joint_strategies });
    }
    check_budget(game, k, total, cfg)?;
    tabulate(game, objective, cfg)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DynamicsStep<S> {
    pub deviation: Deviation,
    pub before: S,
    pub after: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DynamicsRun<S> {
    pub terminal: JointStrategy,
    pub cost: S,
    pub steps: Vec<DynamicsStep<S>>,
}

/// Repeatedly applies a strictly improving group deviation until none exists.
pub fn group_best_response_dynamics<S: Scalar>(
    game: &CongestionGame<S>,
    k: usize,
    tie: TieBreak,
    start: &JointStrategy,
    cfg: &OracleConfig,
) -> Result<DynamicsRun<S>> {
    game.check_group_size(k, "k")?;
    check_budget(game, k, 1, cfg)?;
    let tol = cfg.tol::<S>();
    let mut state = game.state(start)?;
    let mut steps = Vec::new();
    while let Some(step) = find_improvement(&mut state, k, &SystemCost, tie, tol) {
        state.apply(&step.deviation.group, &step.deviation.replacement)?;
        if !S::EXACT {
            state.resync();
        }
        debug_assert!(step.after < step.before);
        steps.push(DynamicsStep { deviation: step.deviation, before: step.before, after: step.after });
    }
    Ok(DynamicsRun { terminal: state.joint().clone(), cost: state.cost().clone(), steps })
}

/// `sum_{|group| = zeta} C(s'_group, s_-group)` by direct enumeration.
pub fn group_deviation_total<S: Scalar>(
    game: &CongestionGame<S>,
    s: &JointStrategy,
    s_prime: &JointStrategy,
    zeta: usize,
) -> Result<S> {
    game.check_group_size(zeta, "zeta")?;
    game.validate(s_prime)?;
    let mut state = game.state(s)?;
    let mut total = S::zero();
    for group in Combinations::new(game.players(), zeta) {
        let target: Vec<usize> = group.iter().map(|&i| s_prime.choice(i)).collect();
        let origin: Vec<usize> = group.iter().map(|&i| s.choice(i)).collect();
        state.apply(&group, &target)?;
        total = if S::EXACT { total + state.cost() } else { total + game.cost_of_loads(state.loads()) };
        state.apply(&group, &origin)?;
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SmoothnessCheck<S> {
    /// `(1 / binom(n, zeta)) * sum_{|group| = zeta} C(s'_group, s_-group)`
    pub average_deviation: S,
    /// `lambda * C(s') - mu * C(s)`
    pub bound: S,
    pub holds: bool,
}

/// Checks the averaged smoothness inequality for one pair of joint strategies.
/// `mu` may be negative; the inequality is still well defined.
pub fn verify_smoothness<S: Scalar>(
    game: &CongestionGame<S>,
    lambda: &S,
    mu: &S,
    zeta: usize,
    s: &JointStrategy,
    s_prime: &JointStrategy,
    tol: f64,
) -> Result<SmoothnessCheck<S>> {
    if lambda.is_negative() {
        return Err(Error::InvalidArgument(alloc::format!("lambda = {lambda} must be nonnegative")));
    }
    let tol = if S::EXACT { 0.0 } else { tol };
    let total = group_deviation_total(game, s, s_prime, zeta)?;
    let average_deviation = total / S::from_u64(binom(game.players() as i64, zeta as i64));
    let bound = lambda.clone() * game.system_cost(s_prime)? - mu.clone() * game.system_cost(s)?;
    let holds = !bound.definitely_lt(&average_deviation, tol);
    Ok(SmoothnessCheck { average_deviation, bound, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::LatencyBasis;
    use crate::scalar::Rational;
    use alloc::vec;

    fn q(p: i64) -> Rational {
        Rational::from_int(p)
    }

    fn two_link() -> CongestionGame<Rational> {
        CongestionGame::new(
            LatencyBasis::monomial(1),
            vec![vec![q(1)], vec![q(1)]],
            vec![vec![vec![0], vec![1]], vec![vec![0], vec![1]]],
        )
        .unwrap()
    }

    fn js(v: &[usize]) -> JointStrategy {
        JointStrategy::new(v.to_vec())
    }

    // Exhaustive oracle for the two-link game, written against the definition:
    // C over the four joint strategies is [4, 2, 2, 4] (index = 2*c0 + c1).
    fn two_link_brute_force(k: usize) -> Vec<usize> {
        let cost = [4, 2, 2, 4];
        (0..4)
            .filter(|&s| {
                let (c0, c1) = (s / 2, s % 2);
                let mut alternatives = vec![2 * (1 - c0) + c1, 2 * c0 + (1 - c1)];
                if k >= 2 {
                    alternatives.push(2 * (1 - c0) + (1 - c1));
                }
                alternatives.iter().all(|&t| cost[s] <= cost[t])
            })
            .collect()
    }

    #[test]
    fn shared_link_is_not_one_strong() {
        let g = two_link();
        let check = is_k_strong(&g, &js(&[0, 0]), 1, &OracleConfig::default()).unwrap();
        let w = check.witness().expect("improvable");
        assert_eq!(w.deviation, Deviation { group: vec![0], replacement: vec![1] });
        assert_eq!((w.before.clone(), w.after.clone()), (q(4), q(2)));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let g = two_link();
        assert_eq!(two_link_brute_force(1), vec![1, 2]);
        for k in 1..=2 {
            let report = enumerate_k_strong(&g, k, &OracleConfig::default()).unwrap();
            let space = JointSpace::new(&g, 100).unwrap();
            let got: Vec<usize> = report.equilibria.iter().map(|s| space.encode(s) as usize).collect();
            assert_eq!(got, two_link_brute_force(k));
            assert_eq!(report.spoa, Spoa::Ratio(q(1)));
            assert_eq!(report.optimal_cost, q(2));
        }
    }

    #[test]
    fn global_minimizer_is_stable_for_every_k() {
        let g = CongestionGame::new(
            LatencyBasis::affine(),
            vec![vec![q(0), q(1)], vec![q(2), q(0)], vec![q(1), q(1)]],
            vec![vec![vec![0], vec![1, 2]], vec![vec![0, 1], vec![2]], vec![vec![0], vec![1]]],
        )
        .unwrap();
        let cfg = OracleConfig::default();
        let table = tabulate(&g, &SystemCost, &cfg).unwrap();
        for idx in table.minimizers(0.0) {
            for k in 1..=3 {
                assert!(is_k_strong(&g, &table.space().decode(idx), k, &cfg).unwrap().is_stable());
            }
        }
    }

    #[test]
    fn full_group_rejects_suboptimal_states() {
        let g = two_link();
        let check = is_k_strong(&g, &js(&[1, 1]), 2, &OracleConfig::default()).unwrap();
        assert!(!check.is_stable());
        let report = enumerate_k_strong(&g, 2, &OracleConfig::default()).unwrap();
        for s in &report.equilibria {
            assert_eq!(g.system_cost(s).unwrap(), report.optimal_cost);
        }
    }

    #[test]
    fn single_player_equilibria_are_minimizers() {
        let g = CongestionGame::new(
            LatencyBasis::monomial(1),
            vec![vec![q(3)], vec![q(1)]],
            vec![vec![vec![0], vec![1], vec![0, 1]]],
        )
        .unwrap();
        let report = enumerate_k_strong(&g, 1, &OracleConfig::default()).unwrap();
        assert_eq!(report.equilibria, vec![js(&[1])]);
        assert_eq!(report.spoa, Spoa::Ratio(q(1)));
    }

    #[test]
    fn caps_fail_loudly() {
        let g = two_link();
        let cfg = OracleConfig { max_joint_strategies: 3, ..OracleConfig::default() };
        assert!(matches!(enumerate_k_strong(&g, 1, &cfg), Err(Error::ResourceLimit { .. })));
        let cfg = OracleConfig { max_deviation_checks: 7, ..OracleConfig::default() };
        // 4 states x 2 single deviations = 8 checks
        assert!(matches!(enumerate_k_strong(&g, 1, &cfg), Err(Error::ResourceLimit { .. })));
        assert!(is_k_strong(&g, &js(&[0, 0]), 3, &OracleConfig::default()).is_err());
        assert!(is_k_strong(&g, &js(&[0, 0]), 0, &OracleConfig::default()).is_err());
    }

    #[test]
    fn deviation_budget_counts_pairs() {
        // two players with 2 strategies: k=1 -> 2, k=2 -> 2 + 3
        assert_eq!(deviation_checks_per_state(&[2, 2], 1), 2);
        assert_eq!(deviation_checks_per_state(&[2, 2], 2), 5);
        assert_eq!(deviation_checks_per_state(&[3, 1, 2], 3), 2 + 1 + 2 + 5 + 1 + 5);
    }

    #[test]
    fn zero_optimum_conventions() {
        assert_eq!(Spoa::of(&q(0), &q(0), 0.0), (Spoa::Ratio(q(1)), true));
        assert_eq!(Spoa::of(&q(2), &q(0), 0.0), (Spoa::<Rational>::Infinite, true));
        assert_eq!(Spoa::of(&q(3), &q(2), 0.0), (Spoa::Ratio(Rational::new(3.into(), 2.into())), false));
    }

    #[test]
    fn dynamics_examples() {
        let g = two_link();
        let cfg = OracleConfig::default();
        let run = group_best_response_dynamics(&g, 1, TieBreak::FirstImprovement, &js(&[0, 0]), &cfg).unwrap();
        assert!(run.cost <= q(2));
        assert!(is_k_strong(&g, &run.terminal, 1, &cfg).unwrap().is_stable());
        assert_eq!(run.steps.len(), 1);
        let still = group_best_response_dynamics(&g, 1, TieBreak::FirstImprovement, &js(&[0, 1]), &cfg).unwrap();
        assert!(still.steps.is_empty());
        assert_eq!(still.terminal, js(&[0, 1]));
        let steep = group_best_response_dynamics(&g, 2, TieBreak::SteepestDescent, &js(&[1, 1]), &cfg).unwrap();
        assert_eq!(steep.cost, q(2));
    }

    #[test]
    fn custom_objective_hook() {
        // Phi = -C turns the search upside down: the shared link becomes the only equilibrium.
        let g = two_link();
        let phi = |st: &LoadState<'_, Rational>| -st.cost().clone();
        let report = enumerate_k_strong_with(&g, 1, &phi, &OracleConfig::default()).unwrap();
        assert_eq!(report.equilibria, vec![js(&[0, 0]), js(&[1, 1])]);
        assert_eq!(report.spoa, Spoa::Ratio(q(2)));
    }

    #[test]
    fn smoothness_examples() {
        let g = two_link();
        let s = js(&[0, 0]);
        let ok = verify_smoothness(&g, &q(1), &q(0), 1, &s, &s, 0.0).unwrap();
        assert!(ok.holds);
        assert_eq!(ok.average_deviation, ok.bound);
        let bad = verify_smoothness(&g, &q(0), &q(0), 1, &s, &js(&[1, 0]), 0.0).unwrap();
        assert!(!bad.holds);
        assert!(verify_smoothness(&g, &q(1), &q(0), 3, &s, &s, 0.0).is_err());
    }
}
