//! Bounds on the k-strong price of anarchy of altruistic atomic congestion games.
//!
//! The crate is `no_std` (it needs `alloc`). It contains:
//!
//! * [`basis`]: basis latency sets and the local costs `c(x) = x * l(x)` they induce,
//! * [`game`]: the atomic congestion game engine and the system cost `C`,
//! * [`oracle`]: brute-force k-strong equilibrium checks, enumeration and dynamics,
//! * [`label`]: the `(a, x, b)` resource labels and deviation-sum coefficients,
//! * [`lp`]: an exact two-phase simplex solver (Bland's rule),
//! * [`bounds`]: the upper-bound program `P_zeta` and lower-bound program `Q_k`,
//! * [`ring`]: the ring construction realising the lower bound.
//!
//! Everything is generic over [`Scalar`], implemented for [`Rational`] (exact) and
//! `f64` (used when the basis contains exponentials).

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod basis;
pub mod bounds;
pub mod combinatorics;
mod error;
pub mod game;
pub mod label;
pub mod lp;
pub mod oracle;
pub mod ring;
mod scalar;

pub use basis::{BasisFunction, CostTable, LatencyBasis, LocalCost};
pub use bounds::{Bound, BoundReport, SmoothnessPair};
pub use error::{Error, Result};
pub use game::{CongestionGame, JointStrategy, LoadState, Strategy};
pub use label::{Label, LabelSet, ThetaVector};
pub use lp::{LinearProgram, LpSolution};
pub use oracle::{EquilibriumReport, OracleConfig, Spoa};
pub use ring::RingGame;
pub use scalar::{parse_rational, Rational, Scalar, DEFAULT_TOLERANCE};
