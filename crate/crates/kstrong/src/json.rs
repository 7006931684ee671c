//! Game, sidecar and strategy files.
//!
//! Games look like
//!
//! ```json
//! { "n": 2, "basis": "affine",
//!   "resources": [{ "alpha": ["1", "1/2"] }],
//!   "strategies": [[[0], []], [[0]]] }
//! ```
//!
//! Coefficients are `"p/q"` strings in exact mode and JSON numbers in float mode; both
//! spellings are accepted on input in either mode.

use std::fs;
use std::path::Path;

use kstrong_core::label::Label;
use kstrong_core::ring::RingGame;
use kstrong_core::{
    parse_rational, Bound, CongestionGame, JointStrategy, LabelSet, LatencyBasis, Rational, Scalar, ThetaVector,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{CliError, Result};

/// Scalars with a JSON spelling.
pub trait JsonScalar: Scalar {
    fn to_json(&self) -> Value;
    fn from_json(value: &Value) -> std::result::Result<Self, String>;
}

impl JsonScalar for Rational {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(value: &Value) -> std::result::Result<Self, String> {
        match value {
            Value::String(text) => parse_rational(text).map_err(|e| e.to_string()),
            // the decimal text of a number is parsed exactly
            Value::Number(n) => parse_rational(&n.to_string()).map_err(|e| e.to_string()),
            other => Err(format!("expected a number or \"p/q\" string, found {other}")),
        }
    }
}

impl JsonScalar for f64 {
    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self).map(Value::Number).unwrap_or_else(|| Value::String(self.to_string()))
    }

    fn from_json(value: &Value) -> std::result::Result<Self, String> {
        match value {
            Value::Number(n) => n.as_f64().ok_or_else(|| format!("{n} is not representable")),
            Value::String(text) => parse_rational(text).map(|r| r.to_f64()).map_err(|e| e.to_string()),
            other => Err(format!("expected a number or \"p/q\" string, found {other}")),
        }
    }
}

pub fn bound_json<S: JsonScalar>(bound: &Bound<S>) -> Value {
    match bound {
        Bound::Finite(v) => v.to_json(),
        Bound::Infinite => Value::String("inf".into()),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameFile {
    pub n: usize,
    pub basis: String,
    pub resources: Vec<ResourceEntry>,
    pub strategies: Vec<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResourceEntry {
    pub alpha: Vec<Value>,
}

impl GameFile {
    pub fn from_game<S: JsonScalar>(game: &CongestionGame<S>) -> Self {
        Self {
            n: game.players(),
            basis: game.basis().to_string(),
            resources: game
                .resources()
                .iter()
                .map(|r| ResourceEntry { alpha: r.alpha().iter().map(JsonScalar::to_json).collect() })
                .collect(),
            strategies: (0..game.players())
                .map(|i| game.strategies(i).iter().map(|s| s.resources().to_vec()).collect())
                .collect(),
        }
    }

    pub fn into_game<S: JsonScalar>(self, path: &str) -> Result<CongestionGame<S>> {
        let format = |message: String| CliError::Format { path: path.to_string(), message };
        if self.n != self.strategies.len() {
            return Err(format(format!("n = {} but {} strategy lists are given", self.n, self.strategies.len())));
        }
        let basis: LatencyBasis = self.basis.parse()?;
        let mut alphas = Vec::with_capacity(self.resources.len());
        for (e, entry) in self.resources.iter().enumerate() {
            let alpha = entry
                .alpha
                .iter()
                .map(S::from_json)
                .collect::<std::result::Result<Vec<S>, String>>()
                .map_err(|m| format(format!("resource {e}: {m}")))?;
            alphas.push(alpha);
        }
        Ok(CongestionGame::new(basis, alphas, self.strategies)?)
    }
}

fn parse_error(path: &str, e: serde_json::Error) -> CliError {
    CliError::Parse { path: path.to_string(), line: e.line(), column: e.column(), message: e.to_string() }
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn parse_game<S: JsonScalar>(text: &str, path: &str) -> Result<CongestionGame<S>> {
    let file: GameFile = serde_json::from_str(text).map_err(|e| parse_error(path, e))?;
    file.into_game(path)
}

pub fn game_to_string<S: JsonScalar>(game: &CongestionGame<S>) -> String {
    let mut text = serde_json::to_string_pretty(&GameFile::from_game(game)).expect("serializable");
    text.push('\n');
    text
}

pub fn read_game<S: JsonScalar>(path: &Path) -> Result<CongestionGame<S>> {
    parse_game(&read_text(path)?, &path.display().to_string())
}

/// A joint strategy file: a bare array of choices, `{"choices": [...]}`, or a sidecar (its `kne`).
pub fn parse_strategy(text: &str, path: &str) -> Result<JointStrategy> {
    let value: Value = serde_json::from_str(text).map_err(|e| parse_error(path, e))?;
    let list = match &value {
        Value::Array(_) => &value,
        Value::Object(map) => map.get("choices").or_else(|| map.get("kne")).ok_or_else(|| CliError::Format {
            path: path.to_string(),
            message: "expected a `choices` or `kne` array".into(),
        })?,
        _ => &Value::Null,
    };
    serde_json::from_value::<Vec<usize>>(list.clone()).map(JointStrategy::new).map_err(|e| CliError::Format {
        path: path.to_string(),
        message: format!("strategy: {e}"),
    })
}

pub fn strategy_json(s: &JointStrategy) -> Value {
    json!(s.choices())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaEntry {
    pub label: [usize; 3],
    pub value: Value,
}

pub fn theta_entries<S: JsonScalar>(theta: &ThetaVector<S>) -> Vec<ThetaEntry> {
    theta.support().map(|(l, _, v)| ThetaEntry { label: [l.a, l.x, l.b], value: v.to_json() }).collect()
}

/// Single-basis `theta` over `I(n)` from its positive entries.
pub fn theta_from_entries<S: JsonScalar>(n: usize, entries: &[ThetaEntry], path: &str) -> Result<ThetaVector<S>> {
    let format = |message: String| CliError::Format { path: path.to_string(), message };
    let mut theta = ThetaVector::zeros(LabelSet::new(n), 1);
    for entry in entries {
        let [a, x, b] = entry.label;
        let value = S::from_json(&entry.value).map_err(|m| format(format!("theta({a},{x},{b}): {m}")))?;
        theta.set(Label::new(a, x, b), 0, value.clone()).map_err(|e| format(e.to_string()))?;
    }
    Ok(theta)
}

/// `theta` file: a bare entry array or any object with a `theta` array (e.g. a sidecar).
pub fn parse_theta<S: JsonScalar>(n: usize, text: &str, path: &str) -> Result<ThetaVector<S>> {
    let value: Value = serde_json::from_str(text).map_err(|e| parse_error(path, e))?;
    let list = match value {
        Value::Object(mut map) => map.remove("theta").unwrap_or(Value::Null),
        other => other,
    };
    let entries: Vec<ThetaEntry> = serde_json::from_value(list)
        .map_err(|e| CliError::Format { path: path.to_string(), message: format!("theta: {e}") })?;
    theta_from_entries(n, &entries, path)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sidecar {
    pub n: usize,
    pub k: usize,
    pub class_fn: String,
    pub resources: usize,
    pub kne: Vec<usize>,
    pub opt: Vec<usize>,
    pub theta: Vec<ThetaEntry>,
}

impl Sidecar {
    pub fn new<S: JsonScalar>(ring: &RingGame<S>, k: usize) -> Self {
        Self {
            n: ring.game.players(),
            k,
            class_fn: ring.game.basis().to_string(),
            resources: ring.game.resource_count(),
            kne: ring.kne.choices().to_vec(),
            opt: ring.opt.choices().to_vec(),
            theta: theta_entries(&ring.theta),
        }
    }

    pub fn to_text(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("serializable");
        text.push('\n');
        text
    }
}
