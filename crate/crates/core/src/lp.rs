//! Dense two-phase primal simplex over a [`Scalar`] field.
//!
//! Variables are nonnegative. The tableau is kept in dictionary form (one row per
//! constraint, one column per nonbasic variable), so programs with two variables and
//! thousands of rows, or thousands of variables and a handful of rows, both stay
//! small. Pivoting follows Bland's rule. Every optimum is re-checked against the
//! original data: primal feasibility, the objective value, and a dual point read off
//! the final basis that must be feasible with the same objective value.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint<S> {
    pub name: String,
    pub coeffs: Vec<S>,
    pub relation: Relation,
    pub rhs: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram<S> {
    sense: Sense,
    objective: Vec<S>,
    names: Vec<String>,
    constraints: Vec<Constraint<S>>,
}

impl<S: Scalar> LinearProgram<S> {
    pub fn new(sense: Sense, objective: Vec<S>) -> Self {
        let names = (0..objective.len()).map(|j| format!("x{j}")).collect();
        Self { sense, objective, names, constraints: Vec::new() }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.objective.len(), "one name per variable");
        self.names = names;
        self
    }

    pub fn add_constraint(&mut self, coeffs: Vec<S>, relation: Relation, rhs: S) -> Result<(), LpError> {
        let name = format!("c{}", self.constraints.len());
        self.add_named(name, coeffs, relation, rhs)
    }

    pub fn add_named(&mut self, name: String, coeffs: Vec<S>, relation: Relation, rhs: S) -> Result<(), LpError> {
        if coeffs.len() != self.objective.len() {
            return Err(LpError::Malformed(format!(
                "constraint `{name}` has {} coefficients for {} variables",
                coeffs.len(),
                self.objective.len()
            )));
        }
        self.constraints.push(Constraint { name, coeffs, relation, rhs });
        Ok(())
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn objective(&self) -> &[S] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint<S>] {
        &self.constraints
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn objective_value(&self, point: &[S]) -> S {
        dot(&self.objective, point)
    }
}

/// Plain-text dump: an objective line, one line per constraint, and the bounds line.
///
/// ```text
/// maximize: 1*rho
/// subject to:
///   c0: 1*rho + -1*nu <= 0
/// bounds: all variables >= 0
/// ```
impl<S: Scalar> fmt::Display for LinearProgram<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = |f: &mut fmt::Formatter<'_>, coeffs: &[S]| -> fmt::Result {
            let mut first = true;
            for (c, name) in coeffs.iter().zip(&self.names) {
                if c.is_zero() {
                    continue;
                }
                if !first {
                    f.write_str(" + ")?;
                }
                write!(f, "{c}*{name}")?;
                first = false;
            }
            if first {
                f.write_str("0")?;
            }
            Ok(())
        };
        f.write_str(match self.sense {
            Sense::Minimize => "minimize: ",
            Sense::Maximize => "maximize: ",
        })?;
        terms(f, &self.objective)?;
        writeln!(f)?;
        writeln!(f, "subject to:")?;
        for c in &self.constraints {
            write!(f, "  {}: ", c.name)?;
            terms(f, &c.coeffs)?;
            writeln!(f, " {} {}", c.relation, c.rhs)?;
        }
        writeln!(f, "bounds: all variables >= 0")
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LpError {
    #[error("malformed program: {0}")]
    Malformed(String),
    #[error("numerically ill-conditioned program: {0}")]
    Conditioning(String),
    #[error("solution failed verification: {0}")]
    Verification(String),
    #[error("pivot limit of {0} reached")]
    PivotLimit(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Optimum<S> {
    pub value: S,
    pub point: Vec<S>,
    /// One multiplier per constraint, for the program's own sense.
    pub duals: Vec<S>,
    /// Basic variable ids, sorted. Ids `0..n` are the program variables, `n + i` the
    /// slack of constraint `i`, `n + m + i` its artificial.
    pub basis: Vec<usize>,
    pub pivots: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpSolution<S> {
    Optimal(Optimum<S>),
    Infeasible,
    Unbounded,
}

impl<S> LpSolution<S> {
    pub fn status(&self) -> LpStatus {
        match self {
            LpSolution::Optimal(_) => LpStatus::Optimal,
            LpSolution::Infeasible => LpStatus::Infeasible,
            LpSolution::Unbounded => LpStatus::Unbounded,
        }
    }

    pub fn optimum(&self) -> Option<&Optimum<S>> {
        match self {
            LpSolution::Optimal(o) => Some(o),
            _ => None,
        }
    }

    pub fn into_optimum(self) -> Option<Optimum<S>> {
        match self {
            LpSolution::Optimal(o) => Some(o),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Ignored in exact arithmetic.
    pub tolerance: f64,
    pub max_pivots: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { tolerance: crate::scalar::DEFAULT_TOLERANCE, max_pivots: 1_000_000 }
    }
}

pub fn solve<S: Scalar>(lp: &LinearProgram<S>) -> Result<LpSolution<S>, LpError> {
    solve_with(lp, &SolverOptions::default())
}

pub fn solve_with<S: Scalar>(lp: &LinearProgram<S>, opts: &SolverOptions) -> Result<LpSolution<S>, LpError> {
    let tol = if S::EXACT { 0.0 } else { opts.tolerance };
    let n = lp.num_vars();
    let m = lp.constraints.len();
    for c in &lp.constraints {
        if c.coeffs.len() != n {
            return Err(LpError::Malformed(format!("constraint `{}` has the wrong width", c.name)));
        }
    }
    let cost: Vec<S> = match lp.sense {
        Sense::Minimize => lp.objective.clone(),
        Sense::Maximize => lp.objective.iter().map(|c| -c.clone()).collect(),
    };

    let mut tab = Tableau::build(lp, tol);
    let mut pivots = 0usize;

    if tab.has_artificials() {
        tab.phase_one_objective();
        match tab.optimize(tol, opts.max_pivots, &mut pivots)? {
            Step::Optimal => {}
            Step::Unbounded => return Err(LpError::Conditioning("phase one reported unbounded".into())),
        }
        if tab.obj_rhs.definitely_lt(&S::zero(), tol) || S::zero().definitely_lt(&tab.obj_rhs, tol) {
            return Ok(LpSolution::Infeasible);
        }
        tab.drive_out_artificials(tol);
    }

    tab.phase_two_objective(&cost);
    match tab.optimize(tol, opts.max_pivots, &mut pivots)? {
        Step::Optimal => {}
        Step::Unbounded => return Ok(LpSolution::Unbounded),
    }

    let mut point = alloc::vec![S::zero(); n];
    for (i, &var) in tab.basic.iter().enumerate() {
        if var < n {
            point[var] = tab.rhs[i].clone();
        }
    }
    // Multipliers of the min-form problem, per original row.
    let mut duals_min = alloc::vec![S::zero(); m];
    for (col, &var) in tab.nonbasic.iter().enumerate() {
        if var < n {
            continue;
        }
        let (row, artificial) = if var < n + m { (var - n, false) } else { (var - n - m, true) };
        let stored = tab.obj[col].clone();
        let y = if artificial {
            // Equality rows carry an artificial only; Ge rows are read from their surplus.
            if tab.row_kind[row] != Relation::Eq {
                continue;
            }
            stored
        } else {
            match tab.row_kind[row] {
                Relation::Le => stored,
                Relation::Ge => -stored,
                Relation::Eq => continue,
            }
        };
        duals_min[row] = if tab.flipped[row] { -y } else { y };
    }

    let internal_value = tab.obj_rhs.clone();
    verify(lp, &cost, &point, &duals_min, &internal_value, tol)?;

    let (value, duals) = match lp.sense {
        Sense::Minimize => (internal_value, duals_min),
        Sense::Maximize => (-internal_value, duals_min.into_iter().map(|y| -y).collect()),
    };
    let mut basis = tab.basic.clone();
    basis.sort_unstable();
    Ok(LpSolution::Optimal(Optimum { value, point, duals, basis, pivots }))
}

enum Step {
    Optimal,
    Unbounded,
}

struct Tableau<S> {
    n: usize,
    m: usize,
    // row i: basic[i] = rhs[i] - sum_j rows[i][j] * nonbasic[j]
    rows: Vec<Vec<S>>,
    rhs: Vec<S>,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
    // z = obj_rhs - sum_j obj[j] * nonbasic[j]
    obj: Vec<S>,
    obj_rhs: S,
    // per original row
    row_kind: Vec<Relation>,
    flipped: Vec<bool>,
}

impl<S: Scalar> Tableau<S> {
    fn build(lp: &LinearProgram<S>, tol: f64) -> Self {
        let n = lp.num_vars();
        let m = lp.constraints.len();
        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut basic = Vec::with_capacity(m);
        let mut row_kind = Vec::with_capacity(m);
        let mut flipped = Vec::with_capacity(m);
        let mut surplus_rows = Vec::new();
        for (i, c) in lp.constraints.iter().enumerate() {
            let negative = c.rhs.definitely_lt(&S::zero(), tol);
            let flip = negative || (c.relation == Relation::Ge && c.rhs.is_negligible(tol));
            let (coeffs, b, kind) = if flip {
                let kind = match c.relation {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
                (c.coeffs.iter().map(|v| -v.clone()).collect::<Vec<_>>(), -c.rhs.clone(), kind)
            } else {
                (c.coeffs.clone(), c.rhs.clone(), c.relation)
            };
            let b = if b.is_negligible(tol) { S::zero() } else { b };
            basic.push(match kind {
                Relation::Le => n + i,
                Relation::Eq | Relation::Ge => n + m + i,
            });
            if kind == Relation::Ge {
                surplus_rows.push(i);
            }
            rows.push(coeffs);
            rhs.push(b);
            row_kind.push(kind);
            flipped.push(flip);
        }
        let mut nonbasic: Vec<usize> = (0..n).collect();
        for &i in &surplus_rows {
            nonbasic.push(n + i);
            for (r, row) in rows.iter_mut().enumerate() {
                // art = b - a x + surplus
                row.push(if r == i { -S::one() } else { S::zero() });
            }
        }
        let q = nonbasic.len();
        Self { n, m, rows, rhs, basic, nonbasic, obj: alloc::vec![S::zero(); q], obj_rhs: S::zero(), row_kind, flipped }
    }

    fn is_artificial(&self, var: usize) -> bool {
        var >= self.n + self.m
    }

    fn has_artificials(&self) -> bool {
        self.basic.iter().any(|&v| self.is_artificial(v))
    }

    fn phase_one_objective(&mut self) {
        let q = self.nonbasic.len();
        self.obj = alloc::vec![S::zero(); q];
        self.obj_rhs = S::zero();
        for i in 0..self.rows.len() {
            if self.is_artificial(self.basic[i]) {
                self.obj_rhs = self.obj_rhs.clone() + &self.rhs[i];
                for j in 0..q {
                    self.obj[j] = self.obj[j].clone() + &self.rows[i][j];
                }
            }
        }
    }

    fn phase_two_objective(&mut self, cost: &[S]) {
        let cost_of = |var: usize| if var < self.n { cost[var].clone() } else { S::zero() };
        let q = self.nonbasic.len();
        let mut obj: Vec<S> = self.nonbasic.iter().map(|&v| -cost_of(v)).collect();
        let mut obj_rhs = S::zero();
        for i in 0..self.rows.len() {
            let cb = cost_of(self.basic[i]);
            if cb.is_zero() {
                continue;
            }
            obj_rhs = obj_rhs + cb.clone() * &self.rhs[i];
            for (o, a) in obj.iter_mut().zip(&self.rows[i][..q]) {
                *o = o.clone() + cb.clone() * a;
            }
        }
        self.obj = obj;
        self.obj_rhs = obj_rhs;
    }

    fn optimize(&mut self, tol: f64, max_pivots: usize, pivots: &mut usize) -> Result<Step, LpError> {
        loop {
            // Bland: lowest-id improving column, then lowest-id basic among ratio ties.
            let entering = (0..self.nonbasic.len())
                .filter(|&j| !self.is_artificial(self.nonbasic[j]) && S::zero().definitely_lt(&self.obj[j], tol))
                .min_by_key(|&j| self.nonbasic[j]);
            let Some(s) = entering else {
                return Ok(Step::Optimal);
            };
            let mut leaving: Option<(usize, S)> = None;
            for i in 0..self.rows.len() {
                let t = &self.rows[i][s];
                if !S::zero().definitely_lt(t, tol) {
                    continue;
                }
                let ratio = self.rhs[i].clone() / t;
                leaving = match leaving {
                    None => Some((i, ratio)),
                    Some((r, best)) => match ratio.approx_cmp(&best, tol) {
                        core::cmp::Ordering::Less => Some((i, ratio)),
                        core::cmp::Ordering::Equal if self.basic[i] < self.basic[r] => Some((i, ratio)),
                        _ => Some((r, best)),
                    },
                };
            }
            let Some((r, _)) = leaving else {
                return Ok(Step::Unbounded);
            };
            if *pivots >= max_pivots {
                return Err(LpError::PivotLimit(max_pivots));
            }
            self.pivot(r, s);
            *pivots += 1;
        }
    }

    fn pivot(&mut self, r: usize, s: usize) {
        let q = self.nonbasic.len();
        let p = self.rows[r][s].clone();
        let inv = S::one() / &p;
        for j in 0..q {
            if j != s {
                self.rows[r][j] = self.rows[r][j].clone() / &p;
            }
        }
        self.rows[r][s] = inv.clone();
        self.rhs[r] = self.rhs[r].clone() / &p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        let eliminate = |row: &mut Vec<S>, rhs: &mut S| {
            let f = row[s].clone();
            if f.is_zero() {
                return;
            }
            for j in 0..q {
                if j != s && !pivot_row[j].is_zero() {
                    row[j] = row[j].clone() - f.clone() * &pivot_row[j];
                }
            }
            row[s] = -(f.clone() * &inv);
            *rhs = rhs.clone() - f * &pivot_rhs;
        };
        for i in 0..self.rows.len() {
            if i != r {
                let (row, rhs) = (&mut self.rows[i], &mut self.rhs[i]);
                eliminate(row, rhs);
            }
        }
        eliminate(&mut self.obj, &mut self.obj_rhs);
        core::mem::swap(&mut self.basic[r], &mut self.nonbasic[s]);
    }

    /// Pivots zero-valued artificials out of the basis; rows where that is impossible
    /// are linearly dependent and dropped.
    fn drive_out_artificials(&mut self, tol: f64) {
        let mut i = 0;
        while i < self.rows.len() {
            if !self.is_artificial(self.basic[i]) {
                i += 1;
                continue;
            }
            let column = (0..self.nonbasic.len())
                .filter(|&j| !self.is_artificial(self.nonbasic[j]) && !self.rows[i][j].is_negligible(tol))
                .min_by_key(|&j| self.nonbasic[j]);
            match column {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    self.rows.remove(i);
                    self.rhs.remove(i);
                    self.basic.remove(i);
                }
            }
        }
    }
}

fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |acc, (x, y)| acc + x.clone() * y)
}

fn verify<S: Scalar>(
    lp: &LinearProgram<S>,
    cost: &[S],
    point: &[S],
    duals: &[S],
    value: &S,
    tol: f64,
) -> Result<(), LpError> {
    let fail = |msg: String| if S::EXACT { LpError::Verification(msg) } else { LpError::Conditioning(msg) };
    // Float checks scale with the data so that large coefficients do not trip them.
    let scale = |v: &S| tol * (1.0 + v.to_f64().abs());
    for (j, x) in point.iter().enumerate() {
        if x.definitely_lt(&S::zero(), tol) {
            return Err(fail(format!("variable {j} = {x} is negative")));
        }
    }
    for c in &lp.constraints {
        let lhs = dot(&c.coeffs, point);
        let t = scale(&c.rhs) * (1.0 + c.coeffs.len() as f64);
        let ok = match c.relation {
            Relation::Le => !c.rhs.definitely_lt(&lhs, t),
            Relation::Ge => !lhs.definitely_lt(&c.rhs, t),
            Relation::Eq => lhs.approx_eq(&c.rhs, t),
        };
        if !ok {
            return Err(fail(format!("constraint `{}`: {lhs} {} {} violated", c.name, c.relation, c.rhs)));
        }
    }
    let primal = dot(cost, point);
    if !primal.approx_eq(value, scale(value) * 10.0) {
        return Err(fail(format!("objective {primal} differs from tableau value {value}")));
    }
    for (c, y) in lp.constraints.iter().zip(duals) {
        let ok = match c.relation {
            Relation::Le => !S::zero().definitely_lt(y, tol),
            Relation::Ge => !y.definitely_lt(&S::zero(), tol),
            Relation::Eq => true,
        };
        if !ok {
            return Err(fail(format!("multiplier {y} of `{}` has the wrong sign", c.name)));
        }
    }
    for (j, cj) in cost.iter().enumerate().take(lp.num_vars()) {
        let reduced = lp.constraints.iter().zip(duals).fold(cj.clone(), |acc, (c, y)| acc - y.clone() * &c.coeffs[j]);
        if reduced.definitely_lt(&S::zero(), scale(cj) * 10.0) {
            return Err(fail(format!("dual infeasible at variable {j}: reduced cost {reduced}")));
        }
    }
    let dual_value = lp.constraints.iter().zip(duals).fold(S::zero(), |acc, (c, y)| acc + y.clone() * &c.rhs);
    if !dual_value.approx_eq(value, scale(value) * 10.0) {
        return Err(fail(format!("dual objective {dual_value} differs from primal {value}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use alloc::vec;

    fn q(p: i64) -> Rational {
        Rational::from_int(p)
    }

    fn qq(p: i64, d: i64) -> Rational {
        Rational::new(p.into(), d.into())
    }

    #[test]
    fn single_upper_bound() {
        let mut lp = LinearProgram::new(Sense::Maximize, vec![q(1)]);
        lp.add_constraint(vec![q(1)], Relation::Le, q(1)).unwrap();
        let opt = solve(&lp).unwrap().into_optimum().unwrap();
        assert_eq!(opt.value, q(1));
        assert_eq!(opt.duals, vec![q(1)]);
    }

    #[test]
    fn equality_row() {
        let mut lp = LinearProgram::new(Sense::Minimize, vec![q(1)]);
        lp.add_constraint(vec![q(1)], Relation::Ge, q(0)).unwrap();
        lp.add_constraint(vec![q(1)], Relation::Eq, q(1)).unwrap();
        let opt = solve(&lp).unwrap().into_optimum().unwrap();
        assert_eq!(opt.value, q(1));
        assert_eq!(opt.point, vec![q(1)]);
    }

    #[test]
    fn unbounded_without_constraints() {
        let lp = LinearProgram::new(Sense::Maximize, vec![q(1)]);
        assert_eq!(solve(&lp).unwrap(), LpSolution::Unbounded);
    }

    #[test]
    fn infeasible_rows() {
        let mut lp = LinearProgram::new(Sense::Minimize, vec![q(1), q(1)]);
        lp.add_constraint(vec![q(1), q(1)], Relation::Le, q(1)).unwrap();
        lp.add_constraint(vec![q(1), q(1)], Relation::Ge, q(2)).unwrap();
        assert_eq!(solve(&lp).unwrap().status(), LpStatus::Infeasible);
        let mut lp = LinearProgram::new(Sense::Minimize, vec![q(1)]);
        lp.add_constraint(vec![q(1)], Relation::Eq, q(-1)).unwrap();
        assert_eq!(solve(&lp).unwrap().status(), LpStatus::Infeasible);
    }

    #[test]
    fn textbook_max() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> 36 at (2, 6)
        let mut lp = LinearProgram::new(Sense::Maximize, vec![q(3), q(5)]);
        lp.add_constraint(vec![q(1), q(0)], Relation::Le, q(4)).unwrap();
        lp.add_constraint(vec![q(0), q(2)], Relation::Le, q(12)).unwrap();
        lp.add_constraint(vec![q(3), q(2)], Relation::Le, q(18)).unwrap();
        let opt = solve(&lp).unwrap().into_optimum().unwrap();
        assert_eq!(opt.value, q(36));
        assert_eq!(opt.point, vec![q(2), q(6)]);
        assert_eq!(opt.duals, vec![q(0), qq(3, 2), q(1)]);
        let f = {
            let mut lp = LinearProgram::new(Sense::Maximize, vec![3.0, 5.0]);
            lp.add_constraint(vec![1.0, 0.0], Relation::Le, 4.0).unwrap();
            lp.add_constraint(vec![0.0, 2.0], Relation::Le, 12.0).unwrap();
            lp.add_constraint(vec![3.0, 2.0], Relation::Le, 18.0).unwrap();
            solve(&lp).unwrap().into_optimum().unwrap()
        };
        assert!((f.value - 36.0).abs() < 1e-9);
    }

    #[test]
    fn redundant_equalities_are_dropped() {
        let mut lp = LinearProgram::new(Sense::Minimize, vec![q(1), q(2)]);
        lp.add_constraint(vec![q(1), q(1)], Relation::Eq, q(2)).unwrap();
        lp.add_constraint(vec![q(2), q(2)], Relation::Eq, q(4)).unwrap();
        let opt = solve(&lp).unwrap().into_optimum().unwrap();
        assert_eq!(opt.value, q(2));
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's example, which cycles under the textbook largest-coefficient rule.
        let mut lp = LinearProgram::new(Sense::Minimize, vec![qq(-3, 4), q(150), qq(-1, 50), q(6)]);
        lp.add_constraint(vec![qq(1, 4), q(-60), qq(-1, 25), q(9)], Relation::Le, q(0)).unwrap();
        lp.add_constraint(vec![qq(1, 2), q(-90), qq(-1, 50), q(3)], Relation::Le, q(0)).unwrap();
        lp.add_constraint(vec![q(0), q(0), q(1), q(0)], Relation::Le, q(1)).unwrap();
        let opt = solve(&lp).unwrap().into_optimum().unwrap();
        assert_eq!(opt.value, qq(-1, 20));
    }

    #[test]
    fn dump_format() {
        let mut lp = LinearProgram::new(Sense::Maximize, vec![q(1), q(0)]).with_names(vec!["rho".into(), "nu".into()]);
        lp.add_constraint(vec![q(1), q(-1)], Relation::Le, q(0)).unwrap();
        let text = alloc::string::ToString::to_string(&lp);
        assert_eq!(text, "maximize: 1*rho\nsubject to:\n  c0: 1*rho + -1*nu <= 0\nbounds: all variables >= 0\n");
    }

    #[test]
    fn width_mismatch_is_rejected() {
        let mut lp = LinearProgram::new(Sense::Maximize, vec![q(1)]);
        assert!(lp.add_constraint(vec![q(1), q(1)], Relation::Le, q(1)).is_err());
    }
}
