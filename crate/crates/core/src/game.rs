//! Atomic congestion games over a latency basis.

use alloc::format;
use alloc::vec::Vec;

use crate::basis::{CostTable, LatencyBasis};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A strategy: a set of resource ids, kept in the order given.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Strategy(Vec<usize>);

impl Strategy {
    pub fn new(resources: Vec<usize>) -> Self {
        Self(resources)
    }

    pub fn resources(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, e: usize) -> bool {
        self.0.contains(&e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// One strategy index per player.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JointStrategy(Vec<usize>);

impl JointStrategy {
    pub fn new(choices: Vec<usize>) -> Self {
        Self(choices)
    }

    pub fn choices(&self) -> &[usize] {
        &self.0
    }

    pub fn choice(&self, player: usize) -> usize {
        self.0[player]
    }

    pub fn players(&self) -> usize {
        self.0.len()
    }

    pub(crate) fn set(&mut self, player: usize, choice: usize) {
        self.0[player] = choice;
    }
}

impl From<Vec<usize>> for JointStrategy {
    fn from(choices: Vec<usize>) -> Self {
        Self(choices)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Resource<S> {
    alpha: Vec<S>,
}

impl<S> Resource<S> {
    /// Coefficient of each basis latency.
    pub fn alpha(&self) -> &[S] {
        &self.alpha
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CongestionGame<S> {
    basis: LatencyBasis,
    costs: CostTable<S>,
    resources: Vec<Resource<S>>,
    strategies: Vec<Vec<Strategy>>,
    // resource_cost[e][x] = sum_j alpha_e^j c^j(x)
    resource_cost: Vec<Vec<S>>,
}

impl<S: Scalar> CongestionGame<S> {
    /// `alphas[e]` holds the basis coefficients of resource `e`; `strategies[i]` lists
    /// the strategies of player `i` as sets of resource ids.
    pub fn new(basis: LatencyBasis, alphas: Vec<Vec<S>>, strategies: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let n = strategies.len();
        if n == 0 {
            return Err(Error::InvalidGame("a game needs at least one player".into()));
        }
        let costs = CostTable::new(&basis, n)?;
        let m = alphas.len();
        for (e, alpha) in alphas.iter().enumerate() {
            if alpha.len() != basis.len() {
                return Err(Error::InvalidGame(format!(
                    "resource {e} has {} coefficients, the basis has {}",
                    alpha.len(),
                    basis.len()
                )));
            }
            if alpha.iter().any(|a| a.is_negative()) {
                return Err(Error::InvalidGame(format!("resource {e} has a negative coefficient")));
            }
        }
        let mut sets = Vec::with_capacity(n);
        for (i, list) in strategies.into_iter().enumerate() {
            if list.is_empty() {
                return Err(Error::InvalidGame(format!("player {i} has no strategy")));
            }
            let mut player_sets = Vec::with_capacity(list.len());
            for (idx, resources) in list.into_iter().enumerate() {
                for (pos, &e) in resources.iter().enumerate() {
                    if e >= m {
                        return Err(Error::InvalidGame(format!(
                            "strategy {idx} of player {i} references unknown resource {e}"
                        )));
                    }
                    if resources[..pos].contains(&e) {
                        return Err(Error::InvalidGame(format!(
                            "strategy {idx} of player {i} lists resource {e} twice"
                        )));
                    }
                }
                player_sets.push(Strategy(resources));
            }
            sets.push(player_sets);
        }
        let resource_cost = alphas
            .iter()
            .map(|alpha| {
                (0..=n)
                    .map(|x| {
                        alpha.iter().enumerate().fold(S::zero(), |acc, (j, a)| {
                            acc + a.clone() * costs.local_cost(j, x).expect("load within 0..=n")
                        })
                    })
                    .collect()
            })
            .collect();
        let resources = alphas.into_iter().map(|alpha| Resource { alpha }).collect();
        Ok(Self { basis, costs, resources, strategies: sets, resource_cost })
    }

    pub fn players(&self) -> usize {
        self.strategies.len()
    }

    pub fn basis(&self) -> &LatencyBasis {
        &self.basis
    }

    pub fn costs(&self) -> &CostTable<S> {
        &self.costs
    }

    pub fn resources(&self) -> &[Resource<S>] {
        &self.resources
    }

    pub fn resource_count(&self) -> usize {
        self.resources.len()
    }

    pub fn strategies(&self, player: usize) -> &[Strategy] {
        &self.strategies[player]
    }

    pub fn strategy_counts(&self) -> Vec<usize> {
        self.strategies.iter().map(Vec::len).collect()
    }

    /// Number of joint strategies, `None` on overflow.
    pub fn joint_count(&self) -> Option<u128> {
        self.strategies.iter().try_fold(1u128, |acc, s| acc.checked_mul(s.len() as u128))
    }

    pub fn strategy_of(&self, s: &JointStrategy, player: usize) -> &Strategy {
        &self.strategies[player][s.choice(player)]
    }

    pub fn validate(&self, s: &JointStrategy) -> Result<()> {
        if s.players() != self.players() {
            return Err(Error::InvalidJointStrategy(format!(
                "{} choices for {} players",
                s.players(),
                self.players()
            )));
        }
        for (i, &c) in s.choices().iter().enumerate() {
            if c >= self.strategies[i].len() {
                return Err(Error::InvalidJointStrategy(format!(
                    "player {i} has {} strategies, got index {c}",
                    self.strategies[i].len()
                )));
            }
        }
        Ok(())
    }

    /// `|s|_e`: number of players using resource `e`.
    pub fn load(&self, s: &JointStrategy, e: usize) -> Result<usize> {
        self.validate(s)?;
        if e >= self.resources.len() {
            return Err(Error::UnknownResource(e));
        }
        Ok((0..self.players()).filter(|&i| self.strategy_of(s, i).contains(e)).count())
    }

    pub fn loads(&self, s: &JointStrategy) -> Result<Vec<usize>> {
        self.validate(s)?;
        Ok(self.loads_unchecked(s))
    }

    pub(crate) fn loads_unchecked(&self, s: &JointStrategy) -> Vec<usize> {
        let mut loads = alloc::vec![0; self.resources.len()];
        for i in 0..self.players() {
            for &e in self.strategy_of(s, i).resources() {
                loads[e] += 1;
            }
        }
        loads
    }

    /// `sum_e sum_j alpha_e^j c^j(load_e)` for an explicit load vector.
    pub fn cost_of_loads(&self, loads: &[usize]) -> S {
        loads.iter().enumerate().fold(S::zero(), |acc, (e, &x)| acc + &self.resource_cost[e][x])
    }

    pub fn system_cost(&self, s: &JointStrategy) -> Result<S> {
        Ok(self.cost_of_loads(&self.loads(s)?))
    }

    /// `sum_j alpha_e^j c^j(x)`.
    pub fn resource_cost(&self, e: usize, x: usize) -> &S {
        &self.resource_cost[e][x]
    }

    /// `l_e(x) = sum_j alpha_e^j l^j(x)`.
    pub fn resource_latency(&self, e: usize, x: usize) -> Result<S> {
        let resource = self.resources.get(e).ok_or(Error::UnknownResource(e))?;
        resource.alpha.iter().enumerate().try_fold(S::zero(), |acc, (j, a)| {
            Ok(acc + a.clone() * self.costs.latency(j, x)?)
        })
    }

    /// `J_i(s) = sum_{e in s_i} l_e(|s|_e)`.
    pub fn player_cost(&self, s: &JointStrategy, player: usize) -> Result<S> {
        if player >= self.players() {
            return Err(Error::UnknownPlayer(player));
        }
        let loads = self.loads(s)?;
        self.strategy_of(s, player)
            .resources()
            .iter()
            .try_fold(S::zero(), |acc, &e| Ok(acc + self.resource_latency(e, loads[e])?))
    }

    /// `(s'_group, s_-group)`: replaces the choices of the group members.
    pub fn group_deviation(&self, s: &JointStrategy, group: &[usize], replacement: &[usize]) -> Result<JointStrategy> {
        self.validate(s)?;
        if group.is_empty() {
            return Err(Error::InvalidArgument("deviating group is empty".into()));
        }
        if group.len() != replacement.len() {
            return Err(Error::InvalidArgument(format!(
                "{} replacement choices for a group of {}",
                replacement.len(),
                group.len()
            )));
        }
        let mut out = s.clone();
        for (pos, (&i, &c)) in group.iter().zip(replacement).enumerate() {
            if i >= self.players() {
                return Err(Error::UnknownPlayer(i));
            }
            if group[..pos].contains(&i) {
                return Err(Error::InvalidArgument(format!("player {i} appears twice in the group")));
            }
            if c >= self.strategies[i].len() {
                return Err(Error::InvalidJointStrategy(format!("player {i} has no strategy {c}")));
            }
            out.set(i, c);
        }
        Ok(out)
    }

    /// Incremental evaluator positioned at `s`.
    pub fn state(&self, s: &JointStrategy) -> Result<LoadState<'_, S>> {
        self.validate(s)?;
        let loads = self.loads_unchecked(s);
        let cost = self.cost_of_loads(&loads);
        Ok(LoadState { game: self, joint: s.clone(), loads, cost })
    }

    pub(crate) fn check_group_size(&self, zeta_or_k: usize, what: &'static str) -> Result<()> {
        if zeta_or_k == 0 || zeta_or_k > self.players() {
            return Err(Error::OutOfRange { what, value: zeta_or_k, max: self.players() });
        }
        Ok(())
    }
}

/// Joint strategy plus its loads and system cost, updated one player switch at a time.
#[derive(Debug, Clone)]
pub struct LoadState<'g, S> {
    game: &'g CongestionGame<S>,
    joint: JointStrategy,
    loads: Vec<usize>,
    cost: S,
}

impl<'g, S: Scalar> LoadState<'g, S> {
    pub fn game(&self) -> &'g CongestionGame<S> {
        self.game
    }

    pub fn joint(&self) -> &JointStrategy {
        &self.joint
    }

    pub fn loads(&self) -> &[usize] {
        &self.loads
    }

    pub fn cost(&self) -> &S {
        &self.cost
    }

    /// Moves `player` to strategy `choice`.
    pub fn switch(&mut self, player: usize, choice: usize) -> Result<()> {
        if player >= self.game.players() {
            return Err(Error::UnknownPlayer(player));
        }
        if choice >= self.game.strategies[player].len() {
            return Err(Error::InvalidJointStrategy(format!("player {player} has no strategy {choice}")));
        }
        let old = self.joint.choice(player);
        if old == choice {
            return Ok(());
        }
        let game = self.game;
        let rc = &game.resource_cost;
        let before = &game.strategies[player][old];
        let after = &game.strategies[player][choice];
        for &e in before.resources() {
            if !after.contains(e) {
                let x = self.loads[e];
                self.cost = self.cost.clone() - &rc[e][x] + &rc[e][x - 1];
                self.loads[e] = x - 1;
            }
        }
        for &e in after.resources() {
            if !before.contains(e) {
                let x = self.loads[e];
                self.cost = self.cost.clone() - &rc[e][x] + &rc[e][x + 1];
                self.loads[e] = x + 1;
            }
        }
        self.joint.set(player, choice);
        Ok(())
    }

    /// Switches every member of `group` to the matching entry of `choices`.
    pub fn apply(&mut self, group: &[usize], choices: &[usize]) -> Result<()> {
        for (&i, &c) in group.iter().zip(choices) {
            self.switch(i, c)?;
        }
        Ok(())
    }

    /// Recomputes the cost from the loads, discarding accumulated rounding.
    pub fn resync(&mut self) {
        self.cost = self.game.cost_of_loads(&self.loads);
    }
}

impl<S: Scalar> core::fmt::Display for CongestionGame<S> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "congestion game: {} players, {} resources, basis {}",
            self.players(),
            self.resources.len(),
            self.basis
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use alloc::vec;

    fn q(p: i64) -> Rational {
        Rational::from_int(p)
    }

    /// Two players, two resources with l(x) = x, each player picks {e1} or {e2}.
    pub(crate) fn two_link() -> CongestionGame<Rational> {
        CongestionGame::new(
            LatencyBasis::monomial(1),
            vec![vec![q(1)], vec![q(1)]],
            vec![vec![vec![0], vec![1]], vec![vec![0], vec![1]]],
        )
        .unwrap()
    }

    #[test]
    fn load_examples() {
        let g = two_link();
        let shared = JointStrategy::new(vec![0, 0]);
        assert_eq!(g.load(&shared, 0).unwrap(), 2);
        let split = JointStrategy::new(vec![0, 1]);
        assert_eq!(g.loads(&split).unwrap(), vec![1, 1]);
        let empty = CongestionGame::<Rational>::new(
            LatencyBasis::monomial(1),
            vec![vec![q(1)]],
            vec![vec![vec![]], vec![vec![]]],
        )
        .unwrap();
        assert_eq!(empty.loads(&JointStrategy::new(vec![0, 0])).unwrap(), vec![0]);
        assert_eq!(g.load(&shared, 5), Err(Error::UnknownResource(5)));
    }

    #[test]
    fn system_cost_examples() {
        let g = two_link();
        assert_eq!(g.system_cost(&JointStrategy::new(vec![0, 0])).unwrap(), q(4));
        assert_eq!(g.system_cost(&JointStrategy::new(vec![0, 1])).unwrap(), q(2));
        assert_eq!(g.cost_of_loads(&[0, 0]), q(0));
    }

    #[test]
    fn player_cost_examples() {
        let g = two_link();
        let shared = JointStrategy::new(vec![0, 0]);
        assert_eq!(g.player_cost(&shared, 0).unwrap(), q(2));
        assert_eq!(g.player_cost(&shared, 1).unwrap(), q(2));
        let split = JointStrategy::new(vec![1, 0]);
        assert_eq!(g.player_cost(&split, 0).unwrap(), q(1));
        assert_eq!(g.player_cost(&split, 2), Err(Error::UnknownPlayer(2)));
        let g = CongestionGame::<Rational>::new(
            LatencyBasis::monomial(1),
            vec![vec![q(1)]],
            vec![vec![vec![]], vec![vec![0]]],
        )
        .unwrap();
        assert_eq!(g.player_cost(&JointStrategy::new(vec![0, 0]), 0).unwrap(), q(0));
    }

    #[test]
    fn group_deviation_examples() {
        let g = two_link();
        let s = JointStrategy::new(vec![0, 1]);
        assert_eq!(g.group_deviation(&s, &[0, 1], &[0, 1]).unwrap(), s);
        let single = g.group_deviation(&s, &[1], &[0]).unwrap();
        assert_eq!(single.choices(), &[0, 0]);
        let full = g.group_deviation(&s, &[1, 0], &[0, 1]).unwrap();
        assert_eq!(full.choices(), &[1, 0]);
        assert!(g.group_deviation(&s, &[0, 0], &[1, 1]).is_err());
        assert!(g.group_deviation(&s, &[3], &[1]).is_err());
        assert!(g.group_deviation(&s, &[], &[]).is_err());
    }

    #[test]
    fn invalid_games() {
        let b = LatencyBasis::monomial(1);
        assert!(CongestionGame::<Rational>::new(b.clone(), vec![vec![q(1)]], vec![]).is_err());
        assert!(CongestionGame::<Rational>::new(b.clone(), vec![vec![q(1)]], vec![vec![]]).is_err());
        assert!(CongestionGame::<Rational>::new(b.clone(), vec![vec![q(1)]], vec![vec![vec![1]]]).is_err());
        assert!(CongestionGame::<Rational>::new(b.clone(), vec![vec![q(1)]], vec![vec![vec![0, 0]]]).is_err());
        assert!(CongestionGame::<Rational>::new(b.clone(), vec![vec![q(-1)]], vec![vec![vec![0]]]).is_err());
        assert!(CongestionGame::<Rational>::new(b, vec![vec![q(1), q(1)]], vec![vec![vec![0]]]).is_err());
    }

    #[test]
    fn incremental_state_matches_scratch() {
        let g = two_link();
        let mut st = g.state(&JointStrategy::new(vec![0, 0])).unwrap();
        st.switch(1, 1).unwrap();
        assert_eq!(st.cost(), &q(2));
        assert_eq!(st.loads(), &[1, 1]);
        st.switch(0, 1).unwrap();
        assert_eq!(st.cost(), &g.system_cost(st.joint()).unwrap());
    }
}
