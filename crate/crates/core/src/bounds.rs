//! The two linear-program families bracketing the k-strong price of anarchy.
//!
//! `P_zeta` has the variables `(rho, nu)`; its optimum `P*` gives the upper bound
//! `1 / P*` through a smoothness argument for groups of size `zeta`. `Q_k(c)` is a
//! program over label weights `theta`; its optimum `Q*` gives the lower bound
//! `1 / Q*` through the ring construction. The reported pair is
//!
//! ```text
//! min_{zeta <= k} 1 / P*_zeta  >=  spoa_k  >=  max_{c in L} 1 / Q*_k(c)
//! ```

use alloc::collections::btree_map::{BTreeMap, Entry};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::basis::{CostTable, LatencyBasis, LocalCost};
use crate::combinatorics::binom;
use crate::error::{Error, Result};
use crate::label::{equilibrium_gap, Label, LabelSet, ThetaVector};
use crate::lp::{self, LinearProgram, LpSolution, Relation, Sense, SolverOptions};
use crate::scalar::Scalar;

/// A bound that may be `+inf`.
#[derive(Debug, Clone, PartialEq)]
pub enum Bound<S> {
    Finite(S),
    Infinite,
}

impl<S: Scalar> Bound<S> {
    /// `1 / value`, infinite when `value` vanishes.
    pub fn reciprocal(value: &S, tol: f64) -> Self {
        if value.is_negligible(tol) {
            Bound::Infinite
        } else {
            Bound::Finite(S::one() / value)
        }
    }

    pub fn finite(&self) -> Option<&S> {
        match self {
            Bound::Finite(v) => Some(v),
            Bound::Infinite => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Bound::Finite(_))
    }

    pub fn approx_cmp(&self, other: &Self, tol: f64) -> Ordering {
        match (self, other) {
            (Bound::Finite(a), Bound::Finite(b)) => a.approx_cmp(b, tol),
            (Bound::Finite(_), Bound::Infinite) => Ordering::Less,
            (Bound::Infinite, Bound::Finite(_)) => Ordering::Greater,
            (Bound::Infinite, Bound::Infinite) => Ordering::Equal,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Bound::Finite(v) => v.to_f64(),
            Bound::Infinite => f64::INFINITY,
        }
    }

    /// Twelve significant digits, or `inf`.
    pub fn decimal(&self) -> String {
        match self {
            Bound::Finite(v) => decimal(v.to_f64()),
            Bound::Infinite => "inf".to_string(),
        }
    }
}

/// `p/q` (or an integer) in exact mode, the shortest round-tripping decimal for `f64`;
/// `inf` when infinite.
impl<S: Scalar> fmt::Display for Bound<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(v) => write!(f, "{v}"),
            Bound::Infinite => f.write_str("inf"),
        }
    }
}

/// Renders `v` with 12 significant digits, trailing zeros removed.
pub fn decimal(v: f64) -> String {
    if !v.is_finite() {
        return if v > 0.0 { "inf".into() } else if v < 0.0 { "-inf".into() } else { "nan".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let magnitude = libm::floor(libm::log10(libm::fabs(v))) as i32;
    if !(-5..=15).contains(&magnitude) {
        return format!("{v:.11e}");
    }
    let places = (11 - magnitude).max(0) as usize;
    let mut text = format!("{v:.places$}");
    if text.contains('.') {
        while text.ends_with('0') {
            text.pop();
        }
        if text.ends_with('.') {
            text.pop();
        }
    }
    text
}

/// Smoothness constants `(lambda, mu)` recovered from a feasible `(rho, nu)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothnessPair<S> {
    pub lambda: S,
    pub mu: S,
}

impl<S: Scalar> SmoothnessPair<S> {
    /// Both constants nonnegative: the pair is a valid smoothness certificate.
    pub fn is_certificate(&self) -> bool {
        !self.lambda.is_negative() && !self.mu.is_negative()
    }

    /// `lambda / (1 + mu)`, equal to `1 / rho`.
    pub fn ratio(&self) -> S {
        self.lambda.clone() / (S::one() + &self.mu)
    }
}

/// `lambda = 1 / (binom(n, zeta) nu)`, `mu = rho lambda - 1`.
pub fn recover_lambda_mu<S: Scalar>(rho: &S, nu: &S, n: usize, zeta: usize) -> Result<SmoothnessPair<S>> {
    if zeta == 0 || zeta > n {
        return Err(Error::OutOfRange { what: "zeta", value: zeta, max: n });
    }
    if !nu.is_positive() {
        return Err(Error::Degenerate(format!("nu = {nu}: no finite lambda exists")));
    }
    let scale = S::from_u64(binom(n as i64, zeta as i64));
    let lambda = S::one() / (scale * nu);
    let mu = rho.clone() * &lambda - S::one();
    Ok(SmoothnessPair { lambda, mu })
}

/// `P_zeta`: maximise `rho` over `rho >= nu >= 0` subject to, for every label and basis element,
/// `rho c(a+x) - nu [binom(n, zeta) c(a+x) - D] <= c(b+x)` with `D` the deviation sum.
pub fn build_p<S: Scalar>(costs: &CostTable<S>, zeta: usize) -> Result<LinearProgram<S>> {
    let n = costs.players();
    if zeta == 0 || zeta > n {
        return Err(Error::OutOfRange { what: "zeta", value: zeta, max: n });
    }
    let mut lp = LinearProgram::new(Sense::Maximize, alloc::vec![S::one(), S::zero()])
        .with_names(alloc::vec!["rho".into(), "nu".into()]);
    let labels = LabelSet::new(n);
    for c in costs.locals() {
        for label in labels.iter() {
            let first = c.at(label.load_first()).clone();
            let gap = equilibrium_gap(n, zeta, label, &c);
            let rhs = c.at(label.load_second()).clone();
            lp.add_named(format!("{label}/c{}", c.basis_index()), alloc::vec![first, -gap], Relation::Le, rhs)?;
        }
    }
    lp.add_named("rho_ge_nu".into(), alloc::vec![-S::one(), S::one()], Relation::Le, S::zero())?;
    Ok(lp)
}

/// `Q_k(c)`: minimise `sum theta c(b+x)` over `theta >= 0` subject to
/// `sum theta c(a+x) = 1` and, for each `zeta <= k`, `sum theta [binom(n, zeta) c(a+x) - D] <= 0`.
pub fn build_q<S: Scalar>(c: &LocalCost<'_, S>, n: usize, k: usize) -> Result<LinearProgram<S>> {
    if k == 0 || k > n {
        return Err(Error::OutOfRange { what: "k", value: k, max: n });
    }
    if c.max_load() < n {
        return Err(Error::LoadOutOfRange { load: n, max: c.max_load() });
    }
    let labels = LabelSet::new(n);
    let objective = labels.iter().map(|l| c.at(l.load_second()).clone()).collect();
    let names = labels.iter().map(|l| format!("theta{l}")).collect();
    let mut lp = LinearProgram::new(Sense::Minimize, objective).with_names(names);
    let first = labels.iter().map(|l| c.at(l.load_first()).clone()).collect();
    lp.add_named("normalization".into(), first, Relation::Eq, S::one())?;
    for zeta in 1..=k {
        let row = labels.iter().map(|l| equilibrium_gap(n, zeta, l, c)).collect();
        lp.add_named(format!("equilibrium_zeta{zeta}"), row, Relation::Le, S::zero())?;
    }
    Ok(lp)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PSolution<S> {
    pub zeta: usize,
    pub rho: S,
    pub nu: S,
    /// `1 / rho`.
    pub bound: Bound<S>,
    /// `None` when `nu = 0`.
    pub pair: Option<SmoothnessPair<S>>,
}

/// `P_zeta` with dominated rows removed: rows sharing a basis element and the loads
/// `(a+x, b+x)` differ only in their `nu` coefficient, and since `nu >= 0` the row with
/// the smallest bracket implies the others. The optimum is that of [`build_p`].
pub fn build_p_reduced<S: Scalar>(costs: &CostTable<S>, zeta: usize) -> Result<LinearProgram<S>> {
    let n = costs.players();
    if zeta == 0 || zeta > n {
        return Err(Error::OutOfRange { what: "zeta", value: zeta, max: n });
    }
    let mut tightest: BTreeMap<(usize, usize, usize), (Label, S)> = BTreeMap::new();
    let labels = LabelSet::new(n);
    for c in costs.locals() {
        for label in labels.iter() {
            let key = (c.basis_index(), label.load_first(), label.load_second());
            let gap = equilibrium_gap(n, zeta, label, &c);
            match tightest.entry(key) {
                Entry::Vacant(slot) => {
                    slot.insert((label, gap));
                }
                Entry::Occupied(mut slot) => {
                    if gap < slot.get().1 {
                        slot.insert((label, gap));
                    }
                }
            }
        }
    }
    let mut lp = LinearProgram::new(Sense::Maximize, alloc::vec![S::one(), S::zero()])
        .with_names(alloc::vec!["rho".into(), "nu".into()]);
    for ((j, first, second), (label, gap)) in tightest {
        let c = costs.local(j);
        let coeffs = alloc::vec![c.at(first).clone(), -gap];
        lp.add_named(format!("{label}/c{j}"), coeffs, Relation::Le, c.at(second).clone())?;
    }
    lp.add_named("rho_ge_nu".into(), alloc::vec![-S::one(), S::one()], Relation::Le, S::zero())?;
    Ok(lp)
}

pub fn solve_p<S: Scalar>(costs: &CostTable<S>, zeta: usize, opts: &SolverOptions) -> Result<PSolution<S>> {
    let lp = build_p_reduced(costs, zeta)?;
    let optimum = match lp::solve_with(&lp, opts)? {
        LpSolution::Optimal(o) => o,
        other => return Err(Error::Degenerate(format!("P_{zeta} is {:?}", other.status()))),
    };
    let tol = tolerance::<S>(opts);
    let rho = optimum.point[0].clone();
    let nu = optimum.point[1].clone();
    let pair = recover_lambda_mu(&rho, &nu, costs.players(), zeta).ok();
    Ok(PSolution { zeta, bound: Bound::reciprocal(&rho, tol), rho, nu, pair })
}

#[derive(Debug, Clone, PartialEq)]
pub struct QSolution<S> {
    pub basis_index: usize,
    pub k: usize,
    pub value: S,
    pub theta: ThetaVector<S>,
    /// `1 / Q*`.
    pub bound: Bound<S>,
}

pub fn solve_q<S: Scalar>(costs: &CostTable<S>, j: usize, k: usize, opts: &SolverOptions) -> Result<QSolution<S>> {
    let n = costs.players();
    let lp = build_q(&costs.local(j), n, k)?;
    let optimum = match lp::solve_with(&lp, opts)? {
        LpSolution::Optimal(o) => o,
        other => return Err(Error::Degenerate(format!("Q_{k} for c{j} is {:?}", other.status()))),
    };
    let tol = tolerance::<S>(opts);
    // clamp round-off below zero so the vector stays a valid weight vector
    let values = optimum.point.into_iter().map(|v| if v.is_negative() { S::zero() } else { v }).collect();
    let theta = ThetaVector::from_values(LabelSet::new(n), values)?;
    Ok(QSolution { basis_index: j, k, bound: Bound::reciprocal(&optimum.value, tol), value: optimum.value, theta })
}

fn tolerance<S: Scalar>(opts: &SolverOptions) -> f64 {
    if S::EXACT {
        0.0
    } else {
        opts.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport<S> {
    pub class: String,
    pub n: usize,
    pub k: usize,
    pub upper: Bound<S>,
    pub lower: Bound<S>,
    /// Smallest `zeta` attaining the upper bound.
    pub zeta_star: usize,
    /// First basis index attaining the lower bound.
    pub c_star: usize,
    /// Optimal `(rho, nu)` for `zeta = 1..=k`.
    pub rho_nu: Vec<(S, S)>,
    /// Optimal `theta` per basis element.
    pub theta_star: Vec<ThetaVector<S>>,
    /// Recovered `(lambda, mu)` per `zeta`; `None` when `nu = 0`.
    pub lambda_mu: Vec<Option<SmoothnessPair<S>>>,
    pub exact: bool,
}

/// Combines solved programs into a report. `p` must hold `zeta = 1..=k` in order (extra
/// entries are ignored) and `q` one solution per basis element for this `k`.
pub fn assemble<S: Scalar>(
    class: &str,
    n: usize,
    k: usize,
    p: &[PSolution<S>],
    q: &[QSolution<S>],
    tol: f64,
) -> Result<BoundReport<S>> {
    let tol = if S::EXACT { 0.0 } else { tol };
    if k == 0 || k > n {
        return Err(Error::OutOfRange { what: "k", value: k, max: n });
    }
    if p.len() < k || p.iter().take(k).enumerate().any(|(i, s)| s.zeta != i + 1) {
        return Err(Error::InvalidArgument(format!("P solutions for zeta = 1..={k} expected")));
    }
    if q.is_empty() || q.iter().any(|s| s.k != k) {
        return Err(Error::InvalidArgument(format!("Q_{k} solutions expected")));
    }
    let p = &p[..k];
    let mut zeta_star = 0;
    for (i, s) in p.iter().enumerate() {
        if s.bound.approx_cmp(&p[zeta_star].bound, tol) == Ordering::Less {
            zeta_star = i;
        }
    }
    let mut best = 0;
    for (i, s) in q.iter().enumerate() {
        if s.bound.approx_cmp(&q[best].bound, tol) == Ordering::Greater {
            best = i;
        }
    }
    Ok(BoundReport {
        class: class.to_string(),
        n,
        k,
        upper: p[zeta_star].bound.clone(),
        lower: q[best].bound.clone(),
        zeta_star: zeta_star + 1,
        c_star: q[best].basis_index,
        rho_nu: p.iter().map(|s| (s.rho.clone(), s.nu.clone())).collect(),
        theta_star: q.iter().map(|s| s.theta.clone()).collect(),
        lambda_mu: p.iter().map(|s| s.pair.clone()).collect(),
        exact: S::EXACT,
    })
}

/// Solves `P_1..P_k` and `Q_k(c)` for each basis element.
pub fn kstrong_bounds<S: Scalar>(basis: &LatencyBasis, n: usize, k: usize) -> Result<BoundReport<S>> {
    kstrong_bounds_with(basis, n, k, &SolverOptions::default())
}

pub fn kstrong_bounds_with<S: Scalar>(
    basis: &LatencyBasis,
    n: usize,
    k: usize,
    opts: &SolverOptions,
) -> Result<BoundReport<S>> {
    if k == 0 || k > n {
        return Err(Error::OutOfRange { what: "k", value: k, max: n });
    }
    let costs = CostTable::<S>::new(basis, n)?;
    let p = (1..=k).map(|zeta| solve_p(&costs, zeta, opts)).collect::<Result<Vec<_>>>()?;
    let q = (0..costs.len()).map(|j| solve_q(&costs, j, k, opts)).collect::<Result<Vec<_>>>()?;
    assemble(&basis.to_string(), n, k, &p, &q, opts.tolerance)
}
