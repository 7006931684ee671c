//! Basis latency sets and their local costs.
//!
//! A class of games is generated by a basis `L = {l^1, ..., l^m}`: every resource
//! latency is a nonnegative combination of the basis elements. The LPs and the game
//! engine work with the induced local costs `c^j(x) = x * l^j(x)` evaluated on the
//! integer loads `0..=n`, tabulated once in a [`CostTable`].
//!
//! Textual form (used by the CLI and the game files):
//!
//! | spec              | basis                              |
//! |-------------------|------------------------------------|
//! | `affine`          | `{1, x}`                           |
//! | `poly:d`          | `{1, x, ..., x^d}`, `d >= 1`       |
//! | `mono:d`          | `{x^d}`, `d >= 0`                  |
//! | `exp:a1,a2,...`   | `{e^(a1 x), e^(a2 x), ...}`        |
//! | `table:[v0,v1,..]`| one function with `l(x) = v_x`     |

use alloc::string::ToString;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Rational, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub enum BasisFunction {
    /// `l(x) = 1`
    Constant,
    /// `l(x) = x^d`, `d >= 1`
    Monomial(u32),
    /// `l(x) = e^(rate x)`, `rate > 0`
    Exponential(f64),
    /// `l(x) = values[x]`
    Table(Vec<Rational>),
}

impl BasisFunction {
    pub fn latency<S: Scalar>(&self, x: usize) -> Result<S> {
        match self {
            BasisFunction::Constant => Ok(S::one()),
            BasisFunction::Monomial(d) => Ok(num_traits::pow(S::from_u64(x as u64), *d as usize)),
            BasisFunction::Exponential(rate) => {
                if S::EXACT {
                    return Err(Error::ExactModeUnsupported(self.to_string()));
                }
                S::from_f64(libm::exp(rate * x as f64))
                    .ok_or_else(|| Error::Basis(format!("{self} overflows at load {x}")))
            }
            BasisFunction::Table(values) => values.get(x).map(S::from_rational).ok_or(
                Error::LoadOutOfRange { load: x, max: values.len().saturating_sub(1) },
            ),
        }
    }

    /// `c(x) = x * l(x)`.
    pub fn local_cost<S: Scalar>(&self, x: usize) -> Result<S> {
        Ok(S::from_u64(x as u64) * self.latency::<S>(x)?)
    }

    pub fn requires_float(&self) -> bool {
        matches!(self, BasisFunction::Exponential(_))
    }
}

/// Single-function spec (`mono:d`, `exp:a`, `table:[..]`).
impl fmt::Display for BasisFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisFunction::Constant => f.write_str("mono:0"),
            BasisFunction::Monomial(d) => write!(f, "mono:{d}"),
            BasisFunction::Exponential(rate) => write!(f, "exp:{rate}"),
            BasisFunction::Table(values) => {
                f.write_str("table:[")?;
                for (i, v) in values.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("]")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Family {
    Affine,
    Polynomial(u32),
    Custom,
}

/// An ordered, nonempty set of basis latency functions.
#[derive(Debug, Clone, PartialEq)]
pub struct LatencyBasis {
    functions: Vec<BasisFunction>,
    family: Family,
}

impl LatencyBasis {
    pub fn affine() -> Self {
        Self { functions: vec![BasisFunction::Constant, BasisFunction::Monomial(1)], family: Family::Affine }
    }

    /// `{1, x, ..., x^degree}`.
    pub fn polynomial(degree: u32) -> Result<Self> {
        if degree == 0 {
            return Err(Error::BasisSpec { spec: "poly:0".into(), reason: "degree must be at least 1 (use mono:0)".into() });
        }
        if degree == 1 {
            return Ok(Self::affine());
        }
        let functions =
            core::iter::once(BasisFunction::Constant).chain((1..=degree).map(BasisFunction::Monomial)).collect();
        Ok(Self { functions, family: Family::Polynomial(degree) })
    }

    pub fn monomial(degree: u32) -> Self {
        let f = if degree == 0 { BasisFunction::Constant } else { BasisFunction::Monomial(degree) };
        Self { functions: vec![f], family: Family::Custom }
    }

    pub fn exponential(rates: &[f64]) -> Result<Self> {
        let spec = || format!("exp:{rates:?}");
        if rates.is_empty() {
            return Err(Error::BasisSpec { spec: spec(), reason: "no rates given".into() });
        }
        for r in rates {
            if !(r.is_finite() && *r > 0.0) {
                return Err(Error::BasisSpec { spec: spec(), reason: format!("rate {r} must be positive") });
            }
        }
        Self::from_functions(rates.iter().map(|&r| BasisFunction::Exponential(r)).collect())
    }

    pub fn table(values: Vec<Rational>) -> Result<Self> {
        Self::from_functions(vec![BasisFunction::Table(values)])
    }

    /// Arbitrary basis. Rejects negative table entries and structurally repeated
    /// elements; repeats that only show up on `0..=n` are caught by [`CostTable::new`].
    pub fn from_functions(functions: Vec<BasisFunction>) -> Result<Self> {
        if functions.is_empty() {
            return Err(Error::Basis("a basis needs at least one function".into()));
        }
        for (i, f) in functions.iter().enumerate() {
            if let BasisFunction::Table(values) = f {
                if values.iter().any(|v| v < &Rational::from_int(0)) {
                    return Err(Error::Basis(format!("table `{f}` has a negative latency")));
                }
            }
            if let BasisFunction::Exponential(r) = f {
                if !(r.is_finite() && *r > 0.0) {
                    return Err(Error::Basis(format!("exponential rate {r} must be positive")));
                }
            }
            if functions[..i].contains(f) {
                return Err(Error::Basis(format!("duplicate basis function `{f}`")));
            }
        }
        let family = match functions.as_slice() {
            [BasisFunction::Constant, BasisFunction::Monomial(1)] => Family::Affine,
            [BasisFunction::Constant, rest @ ..]
                if !rest.is_empty()
                    && rest.iter().enumerate().all(|(i, f)| *f == BasisFunction::Monomial(i as u32 + 1)) =>
            {
                Family::Polynomial(rest.len() as u32)
            }
            _ => Family::Custom,
        };
        Ok(Self { functions, family })
    }

    pub fn functions(&self) -> &[BasisFunction] {
        &self.functions
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn requires_float(&self) -> bool {
        self.functions.iter().any(BasisFunction::requires_float)
    }

    /// The one-element basis `{l^index}`.
    pub fn select(&self, index: usize) -> Result<Self> {
        let f = self.functions.get(index).ok_or(Error::OutOfRange {
            what: "basis index",
            value: index,
            max: self.functions.len().saturating_sub(1),
        })?;
        Ok(Self { functions: vec![f.clone()], family: Family::Custom })
    }
}

impl fmt::Display for LatencyBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.family, self.functions.as_slice()) {
            (Family::Affine, _) => f.write_str("affine"),
            (Family::Polynomial(d), _) => write!(f, "poly:{d}"),
            (_, [single]) => write!(f, "{single}"),
            (_, functions) if functions.iter().all(BasisFunction::requires_float) => {
                f.write_str("exp:")?;
                for (i, func) in functions.iter().enumerate() {
                    if let BasisFunction::Exponential(rate) = func {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{rate}")?;
                    }
                }
                Ok(())
            }
            (_, functions) => {
                // Not expressible in the grammar; list the elements.
                for (i, func) in functions.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    write!(f, "{func}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for LatencyBasis {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let spec = text.trim();
        let fail = |reason: &str| Error::BasisSpec { spec: spec.to_string(), reason: reason.to_string() };
        if spec == "affine" {
            return Ok(Self::affine());
        }
        let (kind, arg) = spec.split_once(':').ok_or_else(|| fail("expected affine, poly:d, mono:d, exp:.. or table:[..]"))?;
        match kind.trim() {
            "poly" => {
                let d: u32 = arg.trim().parse().map_err(|_| fail("degree must be a positive integer"))?;
                Self::polynomial(d)
            }
            "mono" => {
                let d: u32 = arg.trim().parse().map_err(|_| fail("degree must be a nonnegative integer"))?;
                Ok(Self::monomial(d))
            }
            "exp" => {
                let rates = arg
                    .split(',')
                    .map(|r| r.trim().parse::<f64>())
                    .collect::<core::result::Result<Vec<_>, _>>()
                    .map_err(|_| fail("rates must be numbers"))?;
                Self::exponential(&rates)
            }
            "table" => {
                let inner = arg
                    .trim()
                    .strip_prefix('[')
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(|| fail("table values must be enclosed in [ ]"))?;
                if inner.trim().is_empty() {
                    return Err(fail("table is empty"));
                }
                let values =
                    inner.split(',').map(parse_rational).collect::<Result<Vec<_>>>().map_err(|e| fail(&e.to_string()))?;
                Self::table(values)
            }
            _ => Err(fail("unknown basis kind")),
        }
    }
}

/// Latencies and local costs of every basis element on the loads `0..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CostTable<S> {
    players: usize,
    latency: Vec<Vec<S>>,
    cost: Vec<Vec<S>>,
}

impl<S: Scalar> CostTable<S> {
    pub fn new(basis: &LatencyBasis, players: usize) -> Result<Self> {
        if players == 0 {
            return Err(Error::InvalidArgument("player count must be at least 1".into()));
        }
        let mut latency = Vec::with_capacity(basis.len());
        let mut cost = Vec::with_capacity(basis.len());
        for f in basis.functions() {
            if let BasisFunction::Table(values) = f {
                if values.len() <= players {
                    return Err(Error::Basis(format!(
                        "table `{f}` covers loads 0..={} but {players} players need 0..={players}",
                        values.len().saturating_sub(1)
                    )));
                }
            }
            let l = (0..=players).map(|x| f.latency::<S>(x)).collect::<Result<Vec<S>>>()?;
            let c: Vec<S> = l.iter().enumerate().map(|(x, v)| S::from_u64(x as u64) * v).collect();
            if l.iter().any(|v| v.is_negative()) {
                return Err(Error::Basis(format!("`{f}` is negative on 0..={players}")));
            }
            if c.iter().all(|v| v.is_zero()) {
                return Err(Error::Basis(format!("`{f}` has zero local cost on 0..={players}")));
            }
            latency.push(l);
            cost.push(c);
        }
        Ok(Self { players, latency, cost })
    }

    pub fn players(&self) -> usize {
        self.players
    }

    pub fn len(&self) -> usize {
        self.cost.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cost.is_empty()
    }

    pub fn latency(&self, j: usize, x: usize) -> Result<&S> {
        self.check_load(x)?;
        Ok(&self.latency[j][x])
    }

    pub fn local_cost(&self, j: usize, x: usize) -> Result<&S> {
        self.check_load(x)?;
        Ok(&self.cost[j][x])
    }

    pub fn local(&self, j: usize) -> LocalCost<'_, S> {
        LocalCost { index: j, values: &self.cost[j] }
    }

    pub fn locals(&self) -> impl Iterator<Item = LocalCost<'_, S>> {
        (0..self.len()).map(|j| self.local(j))
    }

    fn check_load(&self, x: usize) -> Result<()> {
        if x > self.players {
            return Err(Error::LoadOutOfRange { load: x, max: self.players });
        }
        Ok(())
    }
}

/// The local cost `c^j` of one basis element, restricted to `0..=n`.
#[derive(Debug, Clone, Copy)]
pub struct LocalCost<'a, S> {
    index: usize,
    values: &'a [S],
}

impl<'a, S: Scalar> LocalCost<'a, S> {
    pub fn from_values(index: usize, values: &'a [S]) -> Self {
        Self { index, values }
    }

    pub fn basis_index(&self) -> usize {
        self.index
    }

    pub fn max_load(&self) -> usize {
        self.values.len() - 1
    }

    pub fn eval(&self, x: usize) -> Result<&'a S> {
        self.values.get(x).ok_or(Error::LoadOutOfRange { load: x, max: self.max_load() })
    }

    /// Panics outside `0..=n`; for callers that built `x` from a valid label.
    pub(crate) fn at(&self, x: usize) -> &'a S {
        &self.values[x]
    }
}
