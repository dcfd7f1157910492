//! Running checks over scenarios and rendering the results.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::thread;

use serde::Serialize;
use serde_json::Value;

use crate::checks::{find, run_check, Ctx};
use crate::num::{show, Rational};
use crate::scenario::Scenario;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub id: String,
    pub scenario: String,
    pub statement: String,
    pub bindings: BTreeMap<String, String>,
    pub passed: bool,
    pub exercised: usize,
    pub vacuous: usize,
    pub witnesses: Vec<String>,
    pub traces: Vec<Value>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub runs: usize,
    pub failed: usize,
    pub exercised: usize,
    pub vacuous: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub by_id: BTreeMap<String, Tally>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub seed: Option<u64>,
    pub dl_tolerance: String,
    pub universe_size: u32,
    pub entries: Vec<Entry>,
    pub summary: Summary,
}

pub struct Options {
    pub tolerance: Rational,
    pub universe: u32,
    /// Restricts the run to one check id.
    pub only: Option<String>,
}

fn run_one(scenario: &Scenario, opts: &Options) -> Vec<Entry> {
    let ctx = Ctx { scenario, tolerance: opts.tolerance.clone(), universe: opts.universe };
    scenario
        .file
        .checks
        .iter()
        .filter(|c| opts.only.as_ref().is_none_or(|id| &c.id == id))
        .map(|spec| {
            let o = run_check(&ctx, spec);
            Entry {
                id: spec.id.clone(),
                scenario: scenario.name.clone(),
                statement: find(&spec.id).map(|d| d.statement.to_string()).unwrap_or_default(),
                bindings: spec.bindings.clone(),
                passed: o.passed,
                exercised: o.exercised,
                vacuous: o.vacuous,
                witnesses: o.witnesses,
                traces: o.traces,
            }
        })
        .collect()
}

/// Runs every check of every scenario, spreading scenarios over threads.
pub fn run_scenarios(scenarios: &[Scenario], opts: &Options, seed: Option<u64>) -> Report {
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(scenarios.len().max(1));
    let chunk = scenarios.len().div_ceil(workers).max(1);
    let mut entries: Vec<Entry> = thread::scope(|s| {
        let handles: Vec<_> = scenarios
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().flat_map(|sc| run_one(sc, opts)).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("check thread panicked")).collect()
    });
    entries.sort_by(|a, b| (&a.id, &a.scenario).cmp(&(&b.id, &b.scenario)));

    let mut by_id: BTreeMap<String, Tally> = BTreeMap::new();
    for e in &entries {
        let t = by_id.entry(e.id.clone()).or_default();
        t.runs += 1;
        t.failed += usize::from(!e.passed);
        t.exercised += e.exercised;
        t.vacuous += e.vacuous;
    }
    let failed = entries.iter().filter(|e| !e.passed).count();
    Report {
        schema_version: SCHEMA_VERSION,
        seed,
        dl_tolerance: show(&opts.tolerance),
        universe_size: opts.universe,
        summary: Summary { checks: entries.len(), passed: entries.len() - failed, failed, by_id },
        entries,
    }
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed {seed}");
        }
        for (id, t) in &self.summary.by_id {
            let status = if t.failed == 0 { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{status} {id:<30} runs {:>4}  exercised {:>6}  vacuous {:>6}",
                t.runs, t.exercised, t.vacuous
            );
        }
        for e in self.entries.iter().filter(|e| !e.passed) {
            let _ = writeln!(out, "  {} in {}:", e.id, e.scenario);
            for w in &e.witnesses {
                let _ = writeln!(out, "    {w}");
            }
        }
        let _ = writeln!(out, "{} checks, {} passed, {} failed", self.summary.checks, self.summary.passed, self.summary.failed);
        out
    }
}
