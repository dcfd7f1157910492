//! Scenario files: a PM space, named ideals and functions, and the checks to run.
//!
//! ```json
//! {
//!   "space": {"metric": {"points": ["x", "y"], "distances": [["x", "y", "1/2"]]}},
//!   "tnorm": "min",
//!   "ideals": {"I": "powerset(ap:0,2)", "K": "join(I, fin)"},
//!   "functions": {"f": [{"set": "ap:0,3", "value": "y"}, {"set": "~ap:0,3", "value": "x"}]},
//!   "checks": [{"id": "thm-uniqueness", "bindings": {"f": "f", "I": "I", "K": "K"}}]
//! }
//! ```
//!
//! A space may instead be a `ddf_matrix` with entries
//! `{"from": "x", "to": "y", "steps": [[0.5, "1/3"], ["inf", 1]]}`.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::convergence::ProfileFunction;
use crate::ddf::{Ddf, Ext};
use crate::error::{Error, Result};
use crate::expr::{parse_ideal_with, parse_set, relocate};
use crate::ideal::IdealSpec;
use crate::num::{parse_rational, Rational};
use crate::space::PmSpace;
use crate::triangle::{TNorm, TriangleFn};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub space: SpaceSpec,
    #[serde(default = "default_tnorm")]
    pub tnorm: String,
    #[serde(default)]
    pub ideals: BTreeMap<String, String>,
    #[serde(default)]
    pub functions: BTreeMap<String, Vec<PieceSpec>>,
    #[serde(default)]
    pub checks: Vec<CheckSpec>,
}

fn default_tnorm() -> String {
    "min".into()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceSpec {
    Metric { points: Vec<String>, distances: Vec<(String, String, Value)> },
    DdfMatrix { points: Vec<String>, entries: Vec<EntrySpec> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntrySpec {
    pub from: String,
    pub to: String,
    pub steps: Vec<(Value, Value)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceSpec {
    pub set: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSpec {
    pub id: String,
    #[serde(default)]
    pub bindings: BTreeMap<String, String>,
}

/// A scenario with every name resolved.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub file: ScenarioFile,
    pub space: PmSpace,
    pub ideals: BTreeMap<String, IdealSpec>,
    pub functions: BTreeMap<String, ProfileFunction>,
}

fn number(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => parse_rational(&n.to_string()),
        Value::String(s) => parse_rational(s),
        other => Err(Error::Scenario(format!("expected a number, found {other}"))),
    }
}

fn location(v: &Value) -> Result<Ext> {
    match v {
        Value::String(s) if s == "inf" => Ok(Ext::Infinity),
        other => Ok(Ext::Finite(number(other)?)),
    }
}

/// Line and column just inside the first JSON string literal equal to `expr`.
fn locate(raw: Option<&str>, expr: &str) -> Option<(usize, usize)> {
    let needle = serde_json::to_string(expr).ok()?;
    let at = raw?.find(&needle)? + 1;
    let before = &raw?[..at];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    Some((line, column))
}

fn positioned(err: Error, raw: Option<&str>, expr: &str) -> Error {
    match (err, locate(raw, expr)) {
        (e @ Error::Parse { .. }, Some((line, column))) => relocate(e, line, column),
        (Error::Parse { line, column, message }, None) => {
            Error::Parse { line, column, message: format!("{message} (in `{expr}`)") }
        }
        (other, _) => other,
    }
}

impl ScenarioFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario files serialize")
    }
}

impl Scenario {
    /// Parses and resolves a scenario from JSON text.
    pub fn from_json(name: &str, text: &str) -> Result<Self> {
        let file: ScenarioFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Scenario::resolve(name, file, Some(text))
    }

    /// Resolves names in an in-memory scenario; `raw` is used for error positions.
    pub fn resolve(name: &str, file: ScenarioFile, raw: Option<&str>) -> Result<Self> {
        let tnorm: TNorm = file.tnorm.parse()?;
        let space = match &file.space {
            SpaceSpec::Metric { points, distances } => {
                let mut d = BTreeMap::new();
                for (a, b, v) in distances {
                    d.insert((a.clone(), b.clone()), number(v)?);
                }
                PmSpace::from_metric(points.clone(), &d)?.with_triangle(TriangleFn::new(tnorm))
            }
            SpaceSpec::DdfMatrix { points, entries } => {
                let mut m = BTreeMap::new();
                for e in entries {
                    let steps = e
                        .steps
                        .iter()
                        .map(|(x, v)| Ok((location(x)?, number(v)?)))
                        .collect::<Result<Vec<_>>>()?;
                    m.insert((e.from.clone(), e.to.clone()), Ddf::from_steps(steps)?);
                }
                PmSpace::new(points.clone(), &m, TriangleFn::new(tnorm))?
            }
        };
        space.validate()?;

        let cache: RefCell<BTreeMap<String, IdealSpec>> = RefCell::new(BTreeMap::new());
        let active: RefCell<BTreeSet<String>> = RefCell::new(BTreeSet::new());
        fn resolve_ideal(
            name: &str,
            file: &ScenarioFile,
            raw: Option<&str>,
            cache: &RefCell<BTreeMap<String, IdealSpec>>,
            active: &RefCell<BTreeSet<String>>,
        ) -> Result<Option<IdealSpec>> {
            if let Some(i) = cache.borrow().get(name) {
                return Ok(Some(i.clone()));
            }
            let Some(text) = file.ideals.get(name) else {
                return Ok(None);
            };
            if !active.borrow_mut().insert(name.to_string()) {
                return Err(Error::Scenario(format!("ideal `{name}` refers to itself")));
            }
            let failure = RefCell::new(None);
            let lookup = |n: &str| match resolve_ideal(n, file, raw, cache, active) {
                Ok(i) => i,
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    None
                }
            };
            let parsed = parse_ideal_with(text, &lookup);
            if let Some(e) = failure.into_inner() {
                return Err(e);
            }
            let ideal = parsed.map_err(|e| positioned(e, raw, text))?;
            active.borrow_mut().remove(name);
            cache.borrow_mut().insert(name.to_string(), ideal.clone());
            Ok(Some(ideal))
        }
        for name in file.ideals.keys() {
            resolve_ideal(name, &file, raw, &cache, &active)?;
        }
        let ideals = cache.into_inner();

        let mut functions = BTreeMap::new();
        for (fname, pieces) in &file.functions {
            let mut parsed = Vec::new();
            for piece in pieces {
                let set = parse_set(&piece.set).map_err(|e| positioned(e, raw, &piece.set))?;
                parsed.push((set, space.id(&piece.value)?));
            }
            let f = ProfileFunction::new(parsed, space.len())
                .map_err(|e| Error::Scenario(format!("function `{fname}`: {e}")))?;
            functions.insert(fname.clone(), f);
        }

        let scenario = Scenario { name: name.to_string(), file, space, ideals, functions };
        for check in &scenario.file.checks {
            crate::checks::validate_bindings(&scenario, check)?;
        }
        Ok(scenario)
    }

    pub fn ideal(&self, name: &str) -> Result<&IdealSpec> {
        self.ideals.get(name).ok_or_else(|| Error::Scenario(format!("unresolved ideal `{name}`")))
    }

    pub fn function(&self, name: &str) -> Result<&ProfileFunction> {
        self.functions.get(name).ok_or_else(|| Error::Scenario(format!("unresolved function `{name}`")))
    }
}
