//! Resource labels `(a, x, b)` relative to a pair of joint strategies, and the
//! combinatorics of group deviations.
//!
//! For joint strategies `s`, `s'` a resource gets `a` = number of players using it
//! only in `s`, `x` = in both, `b` = only in `s'`. When a group of `zeta` players moves
//! from `s` to `s'`, `psi` of its members drop the resource and `omega` pick it up, so
//! the resource carries `a + x + omega - psi` players afterwards. Summed over all
//! groups of size `zeta`, exactly
//! `binom(a, psi) * binom(b, omega) * binom(n - a - b, zeta - psi - omega)` groups
//! produce each `(psi, omega)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::basis::{CostTable, LocalCost};
use crate::combinatorics::binom;
use crate::error::{Error, Result};
use crate::game::{CongestionGame, JointStrategy};
use crate::scalar::Scalar;

/// Field order gives the lexicographic `(a, x, b)` ordering used everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub a: usize,
    pub x: usize,
    pub b: usize,
}

impl Label {
    pub const fn new(a: usize, x: usize, b: usize) -> Self {
        Self { a, x, b }
    }

    pub fn total(&self) -> usize {
        self.a + self.x + self.b
    }

    /// Load in the first joint strategy.
    pub fn load_first(&self) -> usize {
        self.a + self.x
    }

    /// Load in the second joint strategy.
    pub fn load_second(&self) -> usize {
        self.b + self.x
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.x, self.b)
    }
}

/// All labels with `1 <= a + x + b <= n`, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelSet {
    players: usize,
    labels: Vec<Label>,
}

impl LabelSet {
    pub fn new(players: usize) -> Self {
        let mut labels = Vec::new();
        for a in 0..=players {
            for x in 0..=players - a {
                for b in 0..=players - a - x {
                    if a + x + b >= 1 {
                        labels.push(Label::new(a, x, b));
                    }
                }
            }
        }
        Self { players, labels }
    }

    pub fn players(&self) -> usize {
        self.players
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn index_of(&self, label: Label) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Label> + '_ {
        self.labels.iter().copied()
    }
}

/// Nonnegative weight per `(label, basis index)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaVector<S> {
    labels: LabelSet,
    bases: usize,
    values: Vec<S>,
}

impl<S: Scalar> ThetaVector<S> {
    pub fn zeros(labels: LabelSet, bases: usize) -> Self {
        let values = alloc::vec![S::zero(); labels.len() * bases];
        Self { labels, bases, values }
    }

    /// Single-basis vector from per-label values (in [`LabelSet`] order).
    pub fn from_values(labels: LabelSet, values: Vec<S>) -> Result<Self> {
        if values.len() != labels.len() {
            return Err(Error::InvalidArgument(alloc::format!(
                "theta has {} entries, {} labels expected",
                values.len(),
                labels.len()
            )));
        }
        if values.iter().any(|v| v.is_negative()) {
            return Err(Error::InvalidArgument("theta entries must be nonnegative".into()));
        }
        Ok(Self { labels, bases: 1, values })
    }

    pub fn labels(&self) -> &LabelSet {
        &self.labels
    }

    pub fn bases(&self) -> usize {
        self.bases
    }

    pub fn get(&self, label: Label, j: usize) -> S {
        self.labels
            .index_of(label)
            .map(|i| self.values[i * self.bases + j].clone())
            .unwrap_or_else(S::zero)
    }

    pub fn value_at(&self, label_index: usize, j: usize) -> &S {
        &self.values[label_index * self.bases + j]
    }

    pub fn set(&mut self, label: Label, j: usize, value: S) -> Result<()> {
        if value.is_negative() {
            return Err(Error::InvalidArgument("theta entries must be nonnegative".into()));
        }
        let i = self
            .labels
            .index_of(label)
            .ok_or_else(|| Error::InvalidArgument(alloc::format!("label {label} not in I({})", self.labels.players)))?;
        self.values[i * self.bases + j] = value;
        Ok(())
    }

    pub fn add(&mut self, label: Label, j: usize, value: &S) {
        let i = self.labels.index_of(label).expect("label in set");
        let slot = &mut self.values[i * self.bases + j];
        *slot = slot.clone() + value;
    }

    /// `(label, basis index, value)` for every strictly positive entry.
    pub fn support(&self) -> impl Iterator<Item = (Label, usize, &S)> + '_ {
        self.values.iter().enumerate().filter(|(_, v)| v.is_positive()).map(move |(k, v)| {
            (self.labels.labels[k / self.bases], k % self.bases, v)
        })
    }

    /// `sum theta * c^j(a + x)`: the cost of the first joint strategy.
    pub fn first_cost(&self, costs: &CostTable<S>) -> S {
        self.weighted(costs, |l, c| c.at(l.load_first()).clone())
    }

    /// `sum theta * c^j(b + x)`: the cost of the second joint strategy.
    pub fn second_cost(&self, costs: &CostTable<S>) -> S {
        self.weighted(costs, |l, c| c.at(l.load_second()).clone())
    }

    /// `sum theta * deviation_sum(n, zeta, label, c^j)`: the total cost of all
    /// size-`zeta` group deviations.
    pub fn deviation_total(&self, costs: &CostTable<S>, zeta: usize) -> S {
        let n = self.labels.players;
        self.weighted(costs, |l, c| deviation_sum(n, zeta, l, &c))
    }

    fn weighted(&self, costs: &CostTable<S>, term: impl Fn(Label, LocalCost<'_, S>) -> S) -> S {
        let mut total = S::zero();
        for (label, j, theta) in self.support() {
            total = total + theta.clone() * term(label, costs.local(j));
        }
        total
    }
}

/// Labels of every resource touched by `s` or `s_prime`.
pub fn label_pair<S: Scalar>(
    game: &CongestionGame<S>,
    s: &JointStrategy,
    s_prime: &JointStrategy,
) -> Result<BTreeMap<usize, Label>> {
    game.validate(s)?;
    game.validate(s_prime)?;
    let mut labels: BTreeMap<usize, Label> = BTreeMap::new();
    for i in 0..game.players() {
        let first = game.strategy_of(s, i);
        let second = game.strategy_of(s_prime, i);
        for &e in first.resources() {
            let entry = labels.entry(e).or_insert(Label::new(0, 0, 0));
            if second.contains(e) {
                entry.x += 1;
            } else {
                entry.a += 1;
            }
        }
        for &e in second.resources() {
            if !first.contains(e) {
                labels.entry(e).or_insert(Label::new(0, 0, 0)).b += 1;
            }
        }
    }
    Ok(labels)
}

/// `theta(a, x, b, j)`: the summed coefficients `alpha_e^j` of resources per label.
pub fn aggregate_theta<S: Scalar>(game: &CongestionGame<S>, labeling: &BTreeMap<usize, Label>) -> ThetaVector<S> {
    let bases = game.basis().len();
    let mut theta = ThetaVector::zeros(LabelSet::new(game.players()), bases);
    for (&e, &label) in labeling {
        for (j, alpha) in game.resources()[e].alpha().iter().enumerate() {
            theta.add(label, j, alpha);
        }
    }
    theta
}

/// `binom(a, psi) * binom(b, omega) * binom(n - a - b, zeta - psi - omega)`.
pub fn deviation_coefficient(n: usize, zeta: usize, label: Label, psi: usize, omega: usize) -> u64 {
    let (n, zeta, a, b) = (n as i64, zeta as i64, label.a as i64, label.b as i64);
    let (psi, omega) = (psi as i64, omega as i64);
    binom(a, psi) * binom(b, omega) * binom(n - a - b, zeta - psi - omega)
}

/// Nonzero `(coefficient, load after deviation)` terms of the deviation sum.
pub fn deviation_terms(n: usize, zeta: usize, label: Label) -> impl Iterator<Item = (u64, usize)> {
    (0..=label.a).flat_map(move |psi| {
        (0..=label.b).filter_map(move |omega| {
            if psi + omega > zeta {
                return None;
            }
            let coeff = deviation_coefficient(n, zeta, label, psi, omega);
            (coeff > 0).then(|| (coeff, label.a + label.x + omega - psi))
        })
    })
}

/// `sum_{psi, omega} coefficient * c(a + x + omega - psi)`.
pub fn deviation_sum<S: Scalar>(n: usize, zeta: usize, label: Label, c: &LocalCost<'_, S>) -> S {
    deviation_terms(n, zeta, label).fold(S::zero(), |acc, (coeff, load)| acc + S::from_u64(coeff) * c.at(load))
}

/// `binom(n, zeta) * c(a + x) - deviation_sum`: a label's contribution to the
/// equilibrium rows of both programs.
pub fn equilibrium_gap<S: Scalar>(n: usize, zeta: usize, label: Label, c: &LocalCost<'_, S>) -> S {
    S::from_u64(binom(n as i64, zeta as i64)) * c.at(label.load_first()) - deviation_sum(n, zeta, label, c)
}
