use alloc::string::String;

use crate::lp::LpError;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid basis specification `{spec}`: {reason}")]
    BasisSpec { spec: String, reason: String },
    #[error("invalid basis: {0}")]
    Basis(String),
    #[error("basis `{0}` needs floating-point mode")]
    ExactModeUnsupported(String),
    #[error("load {load} outside the domain 0..={max}")]
    LoadOutOfRange { load: usize, max: usize },
    #[error("unknown resource {0}")]
    UnknownResource(usize),
    #[error("unknown player {0}")]
    UnknownPlayer(usize),
    #[error("invalid game: {0}")]
    InvalidGame(String),
    #[error("invalid joint strategy: {0}")]
    InvalidJointStrategy(String),
    #[error("{what} must lie in 1..={max}, got {value}")]
    OutOfRange { what: &'static str, value: usize, max: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{what}: {requested} exceeds the configured cap of {cap}")]
    ResourceLimit { what: &'static str, requested: u128, cap: u128 },
    #[error("cannot parse number `{0}`")]
    Number(String),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("{0}")]
    Degenerate(String),
    #[error("construction check `{check}` failed: {detail}")]
    Construction { check: &'static str, detail: String },
}
