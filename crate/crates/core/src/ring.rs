//! The ring construction realising the lower bound of a weight vector `theta`.
//!
//! For every label `(a, x, b)` with `theta > 0` and every permutation `sigma` of the
//! players there is a ring of `n` resources, each with coefficient `theta(a, x, b)`.
//! Player `i` has two strategies: `kne` covers the `a + x` positions starting at
//! `sigma(i)`, `opt` the `x + b` positions starting at `sigma(i) + a` (mod `n`), in
//! every ring. Each resource of such a ring then carries `a + x` players under `kne`
//! and `x + b` under `opt`.

use alloc::format;
use alloc::vec::Vec;

use crate::basis::{CostTable, LatencyBasis};
use crate::bounds::Bound;
use crate::combinatorics::{binom, factorial, permutations, Combinations};
use crate::error::{Error, Result};
use crate::game::{CongestionGame, JointStrategy};
use crate::label::{equilibrium_gap, Label, ThetaVector};
use crate::oracle::{is_k_strong, KStrongCheck, OracleConfig};
use crate::scalar::Scalar;

pub const DEFAULT_PLAYER_CAP: usize = 6;

/// Where a resource sits in the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RingSlot {
    pub label: Label,
    /// Index of `sigma` among the permutations of `0..n` in lexicographic order.
    pub permutation: usize,
    pub position: usize,
}

#[derive(Debug, Clone)]
pub struct RingGame<S> {
    pub game: CongestionGame<S>,
    pub kne: JointStrategy,
    pub opt: JointStrategy,
    pub theta: ThetaVector<S>,
    /// One entry per resource id.
    pub slots: Vec<RingSlot>,
}

/// Size of a construction, known before it is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RingEstimate {
    pub resources: u128,
    /// Total number of resource ids over all strategies.
    pub strategy_entries: u128,
    /// Rough lower bound on the memory the game needs.
    pub bytes: u128,
}

pub fn estimate(n: usize, labels: &[Label]) -> RingEstimate {
    let rings = factorial(n).saturating_mul(labels.len() as u128);
    let resources = rings.saturating_mul(n as u128);
    let width: u128 = labels.iter().map(|l| (l.load_first() + l.load_second()) as u128).sum();
    let strategy_entries = factorial(n).saturating_mul(width).saturating_mul(n as u128);
    let per_resource = 64 + 32 * (n as u128 + 1);
    let bytes = resources.saturating_mul(per_resource).saturating_add(strategy_entries.saturating_mul(8));
    RingEstimate { resources, strategy_entries, bytes }
}

/// Builds the ring game of a single-basis `theta` over `I(n)`.
pub fn construct<S: Scalar>(theta: &ThetaVector<S>, basis: &LatencyBasis, cap: usize) -> Result<RingGame<S>> {
    let n = theta.labels().players();
    if n > cap {
        return Err(Error::ResourceLimit { what: "ring players", requested: n as u128, cap: cap as u128 });
    }
    if basis.len() != 1 || theta.bases() != 1 {
        return Err(Error::InvalidArgument("the ring construction needs a single basis function".into()));
    }
    let support: Vec<(Label, S)> = theta.support().map(|(l, _, v)| (l, v.clone())).collect();
    if support.is_empty() {
        return Err(Error::InvalidArgument("theta has no positive entry".into()));
    }
    let perms = permutations(n);
    let mut alphas = Vec::new();
    let mut slots = Vec::new();
    let mut kne: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
    let mut opt: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
    for (label, value) in &support {
        for (p, sigma) in perms.iter().enumerate() {
            let base = alphas.len();
            for position in 0..n {
                alphas.push(alloc::vec![value.clone()]);
                slots.push(RingSlot { label: *label, permutation: p, position });
            }
            for i in 0..n {
                let start = sigma[i];
                kne[i].extend((0..label.load_first()).map(|d| base + (start + d) % n));
                opt[i].extend((0..label.load_second()).map(|d| base + (start + label.a + d) % n));
            }
        }
    }
    let strategies = kne.into_iter().zip(opt).map(|(k, o)| alloc::vec![k, o]).collect();
    let game = CongestionGame::new(basis.clone(), alphas, strategies)?;
    Ok(RingGame {
        game,
        kne: JointStrategy::new(alloc::vec![0; n]),
        opt: JointStrategy::new(alloc::vec![1; n]),
        theta: theta.clone(),
        slots,
    })
}

/// Closed-form costs of a ring game.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticCosts<S> {
    /// `n n! sum theta c(a+x)`
    pub kne: S,
    /// `n n! sum theta c(b+x)`
    pub opt: S,
    /// `n n! sum theta D_zeta`: the summed cost of all size-`zeta` group deviations.
    pub deviation: S,
}

pub fn analytic_costs<S: Scalar>(ring: &RingGame<S>, zeta: usize) -> Result<AnalyticCosts<S>> {
    let n = ring.game.players();
    if zeta == 0 || zeta > n {
        return Err(Error::OutOfRange { what: "zeta", value: zeta, max: n });
    }
    let costs = ring.game.costs();
    let scale = S::from_u64(n as u64) * S::from_rational(&crate::scalar::Rational::from_integer(factorial(n).into()));
    Ok(AnalyticCosts {
        kne: scale.clone() * ring.theta.first_cost(costs),
        opt: scale.clone() * ring.theta.second_cost(costs),
        deviation: scale * ring.theta.deviation_total(costs, zeta),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstructionReport<S> {
    pub kne_cost: S,
    pub opt_cost: S,
    /// Per-group deviation cost for `zeta = 1..=k`.
    pub group_costs: Vec<S>,
    /// All `Q_k` equilibrium rows hold for `theta`.
    pub q_feasible: bool,
    pub k_strong: KStrongCheck<S>,
    /// `C(kne) / C(opt)`.
    pub ratio: Bound<S>,
}

fn mismatch<S: Scalar>(check: &'static str, engine: &S, formula: &S) -> Error {
    Error::Construction { check, detail: format!("engine gives {engine}, formula gives {formula}") }
}

/// Checks the ring game against its closed forms:
/// (i) `C(kne)` and `C(opt)` match, (ii) every size-`zeta` group deviation costs the same and
/// `binom(n, zeta)` times that matches the formula, (iii) `kne` is k-strong exactly when `theta`
/// satisfies the `Q_k` equilibrium rows, (iv) `C(kne) / C(opt) = sum theta c(a+x) / sum theta c(b+x)`.
pub fn verify_construction<S: Scalar>(ring: &RingGame<S>, k: usize, cfg: &OracleConfig) -> Result<ConstructionReport<S>> {
    let game = &ring.game;
    let n = game.players();
    if k == 0 || k > n {
        return Err(Error::OutOfRange { what: "k", value: k, max: n });
    }
    let tol = if S::EXACT { 0.0 } else { cfg.tolerance };
    let kne_cost = game.system_cost(&ring.kne)?;
    let opt_cost = game.system_cost(&ring.opt)?;
    let formula = analytic_costs(ring, 1)?;
    if !kne_cost.approx_eq(&formula.kne, tol) {
        return Err(mismatch("C(kne)", &kne_cost, &formula.kne));
    }
    if !opt_cost.approx_eq(&formula.opt, tol) {
        return Err(mismatch("C(opt)", &opt_cost, &formula.opt));
    }

    let mut group_costs = Vec::with_capacity(k);
    for zeta in 1..=k {
        let expected = analytic_costs(ring, zeta)?.deviation;
        let mut state = game.state(&ring.kne)?;
        let mut first: Option<S> = None;
        for group in Combinations::new(n, zeta) {
            state.apply(&group, &alloc::vec![1; zeta])?;
            let cost = game.cost_of_loads(state.loads());
            state.apply(&group, &alloc::vec![0; zeta])?;
            match &first {
                None => first = Some(cost),
                Some(f) if !f.approx_eq(&cost, tol) => {
                    return Err(Error::Construction {
                        check: "group symmetry",
                        detail: format!("zeta = {zeta}: group {group:?} costs {cost}, the first group costs {f}"),
                    });
                }
                Some(_) => {}
            }
        }
        let per_group = first.expect("at least one group");
        let total = S::from_u64(binom(n as i64, zeta as i64)) * &per_group;
        if !total.approx_eq(&expected, tol) {
            return Err(mismatch("deviation total", &total, &expected));
        }
        group_costs.push(per_group);
    }

    let costs = CostTable::<S>::new(game.basis(), n)?;
    let c = costs.local(0);
    let q_feasible = (1..=k).all(|zeta| {
        let row = ring
            .theta
            .support()
            .fold(S::zero(), |acc, (l, _, v)| acc + v.clone() * equilibrium_gap(n, zeta, l, &c));
        !S::zero().definitely_lt(&row, tol)
    });
    let k_strong = is_k_strong(game, &ring.kne, k, cfg)?;
    if k_strong.is_stable() != q_feasible {
        return Err(Error::Construction {
            check: "k-strong equilibrium",
            detail: format!("oracle stability {} but Q_{k} feasibility {q_feasible}", k_strong.is_stable()),
        });
    }

    let ratio = if opt_cost.is_negligible(tol) {
        Bound::Infinite
    } else {
        Bound::Finite(kne_cost.clone() / &opt_cost)
    };
    let second = ring.theta.second_cost(&costs);
    let expected = if second.is_negligible(tol) {
        Bound::Infinite
    } else {
        Bound::Finite(ring.theta.first_cost(&costs) / second)
    };
    if ratio.approx_cmp(&expected, tol) != core::cmp::Ordering::Equal {
        return Err(Error::Construction {
            check: "realized ratio",
            detail: format!("C(kne)/C(opt) = {ratio}, theta predicts {expected}"),
        });
    }
    Ok(ConstructionReport { kne_cost, opt_cost, group_costs, q_feasible, k_strong, ratio })
}
