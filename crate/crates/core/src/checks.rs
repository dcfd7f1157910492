//! Registry of executable checks.
//!
//! Each check binds names from a scenario, runs the relevant decisions and
//! compares them with the expected implication or equivalence. Instances whose
//! premise holds are counted as exercised, the rest as vacuous.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use serde_json::{json, Value};

use crate::ap::{ap_equivalence_suite, ap_theorem_instance, FiniteIdeal, MAX_UNIVERSE};
use crate::catalog::{probe_values, Catalog, EXHAUSTIVE_ATOMS};
use crate::convergence::{
    exceptional_set, proper_points, strong_cauchy, strong_converges, strong_ik_cauchy, strong_ik_converges,
    strong_ik_limit_points, strong_ik_limits, strong_istar_converges, strong_limit_points, LimitPoint, ProfileFunction,
};
use crate::ddf::Ddf;
use crate::error::{Error, Result};
use crate::ideal::{join_split, IdealSpec};
use crate::levy::{distance_to_identity, levy_distance, threshold_equivalence};
use crate::num::{int, rat, show, zero, Rational};
use crate::scenario::{CheckSpec, Scenario};
use crate::sets::SymbolicSet;
use crate::space::{compose, PointId};
use crate::triangle::check_triangle_axioms;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Function,
    Ideal,
    /// An ideal that must be nontrivial.
    Nontrivial,
    Point,
}

pub struct CheckDef {
    pub id: &'static str,
    pub statement: &'static str,
    pub bindings: &'static [(&'static str, Kind)],
    run: fn(&Ctx, &Bindings) -> Result<Outcome>,
}

pub struct Ctx<'a> {
    pub scenario: &'a Scenario,
    pub tolerance: Rational,
    pub universe: u32,
}

pub struct Bindings<'a> {
    scenario: &'a Scenario,
    map: &'a BTreeMap<String, String>,
}

impl<'a> Bindings<'a> {
    fn name(&self, key: &str) -> Result<&'a str> {
        self.map
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| Error::Scenario(format!("missing binding `{key}`")))
    }

    fn function(&self, key: &str) -> Result<&'a ProfileFunction> {
        self.scenario.function(self.name(key)?)
    }

    fn ideal(&self, key: &str) -> Result<&'a IdealSpec> {
        self.scenario.ideal(self.name(key)?)
    }

    fn point(&self, key: &str) -> Result<PointId> {
        self.scenario.space.id(self.name(key)?)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub passed: bool,
    pub exercised: usize,
    pub vacuous: usize,
    pub witnesses: Vec<String>,
    pub traces: Vec<Value>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { passed: true, exercised: 0, vacuous: 0, witnesses: Vec::new(), traces: Vec::new() }
    }

    fn fail(&mut self, why: impl Into<String>) {
        self.passed = false;
        self.witnesses.push(why.into());
    }

    fn require(&mut self, ok: bool, why: impl FnOnce() -> String) {
        if !ok {
            self.fail(why());
        }
    }

    /// `premise ⟹ conclusion`.
    fn implication(&mut self, premise: bool, conclusion: bool, why: impl FnOnce() -> String) {
        if premise {
            self.exercised += 1;
            self.require(conclusion, why);
        } else {
            self.vacuous += 1;
        }
    }

    /// `a ⟺ b`, exercised when either side holds.
    fn equivalence(&mut self, a: bool, b: bool, why: impl FnOnce() -> String) {
        if a || b {
            self.exercised += 1;
        } else {
            self.vacuous += 1;
        }
        self.require(a == b, why);
    }

    fn errored(e: Error) -> Self {
        let mut o = Outcome::new();
        o.fail(format!("error: {e}"));
        o
    }
}

macro_rules! check {
    ($id:literal, $statement:literal, [$(($name:literal, $kind:ident)),*], $run:path) => {
        CheckDef { id: $id, statement: $statement, bindings: &[$(($name, Kind::$kind)),*], run: $run }
    };
}

static REGISTRY: &[CheckDef] = &[
    check!("ap-equivalence", "the five formulations of the additive property agree on every pair of proper ideals of a finite universe", [], ap_equivalence),
    check!("ap-theorem", "under the additive property, strong-I convergence implies strong-I^K convergence on finite universes", [], ap_theorem),
    check!("cauchy-suite", "convergence implies Cauchyness, and Cauchyness is unchanged under I^I and (I∨K)^K", [("f", Function), ("I", Nontrivial), ("K", Nontrivial)], cauchy_suite),
    check!("example-3-counterexample", "a function equal to p off a set B in K but not in I is strong-K and strong-I^K convergent but not strong-I convergent", [("f", Function), ("I", Nontrivial), ("K", Nontrivial), ("p", Point)], example_counterexample),
    check!("join-nontrivial-4n", "the powersets of the multiples of 4 and of the numbers 3 mod 4 have a nontrivial join", [("I", Nontrivial), ("K", Nontrivial)], join_nontrivial),
    check!("join-trivial-odd-even", "the powersets of the odd and of the even numbers have a trivial join", [("I", Nontrivial), ("K", Nontrivial)], join_trivial),
    check!("lemma-k-implies-ik", "strong-K convergence implies strong-I^K convergence, and for admissible I strong-I* implies strong-I", [("f", Function), ("I", Nontrivial), ("K", Nontrivial)], lemma_k_implies_ik),
    check!("levy-suite", "the Lévy distance is symmetric, vanishes on the diagonal, satisfies the triangle inequality and matches the closed form against the unit step at 0", [], levy_suite),
    check!("limitpoint-inclusion", "for admissible K contained in I every strong-I limit point is a strong-I^K limit point", [("f", Function), ("I", Nontrivial), ("K", Nontrivial)], limitpoint_inclusion),
    check!("note-m1-m2", "the powersets of the even numbers and of the multiples of 3 are incomparable ideals with a common nonempty member", [("I", Nontrivial), ("K", Nontrivial)], note_m1_m2),
    check!("note-no-limit-point-converse", "for A in K but not in I the function equal to p off A is strong-I^K but not strong-I convergent", [("I", Nontrivial), ("K", Nontrivial)], no_limit_point_converse),
    check!("omega-accumulation", "every neighborhood of a strong-I^K limit point has a preimage outside K, infinite when K is admissible", [("f", Function), ("I", Nontrivial), ("K", Nontrivial)], omega_accumulation),
    check!("oracle-equivalence", "symbolic membership, join splits, convergence and limit point decisions agree with brute force over the scenario's atoms", [("f", Function), ("I", Nontrivial), ("K", Nontrivial)], oracle_equivalence),
    check!("pm-axioms", "the space satisfies the PM axioms, is Hausdorff, and threshold neighborhoods match the d.d.f. definition", [], pm_axioms),
    check!("prop-monotonicity", "strong-I^K convergence persists when I grows to J or K grows to L", [("f", Function), ("I", Nontrivial), ("J", Nontrivial), ("K", Nontrivial), ("L", Nontrivial)], monotonicity),
    check!("thm-II-equiv", "strong-I convergence and strong-I^I convergence coincide", [("f", Function), ("I", Nontrivial)], thm_ii_equiv),
    check!("thm-continuity", "a threshold-nonexpansive self-map of the space preserves strong-I^K limits", [("f", Function), ("I", Nontrivial), ("K", Nontrivial)], thm_continuity),
    check!("thm-i-subset-k", "when I is contained in K strong-I convergence implies strong-I^K convergence", [("f", Function), ("I", Nontrivial), ("K", Nontrivial)], thm_i_subset_k),
    check!("thm-join-equiv", "strong-I^K and strong-(I∨K)^K convergence coincide", [("f", Function), ("I", Nontrivial), ("K", Nontrivial)], thm_join_equiv),
    check!("thm-k-subset-i", "when K is contained in I strong-I^K convergence implies strong-I convergence", [("f", Function), ("I", Nontrivial), ("K", Nontrivial)], thm_k_subset_i),
    check!("thm-limit-point-of-X", "for admissible I and K, a strong-I^K limit p has every neighborhood preimage of the patched function in F(K) and infinite", [("f", Function), ("I", Nontrivial), ("K", Nontrivial)], thm_limit_point_of_x),
    check!("thm-no-limit-point", "in a space whose points are isolated, strong-I convergence implies strong-I^K convergence for admissible I and K", [("f", Function), ("I", Nontrivial), ("K", Nontrivial)], thm_no_limit_point),
    check!("thm-uniqueness", "with a nontrivial join a function has at most one strong-I^K limit", [("f", Function), ("I", Nontrivial), ("K", Nontrivial)], thm_uniqueness),
    check!("threshold-equivalence", "G(t) > 1 - t exactly when the distance of G to the unit step at 0 is below t", [], threshold_suite),
    check!("triangle-suite", "the triangle function has identity, commutativity, associativity and monotonicity on the space's d.d.f.s", [], triangle_suite),
    check!("vicinity-composition", "for every t some η > 0 has U(η)∘U(η) inside U(t)", [], vicinity_composition),
];

/// Whether a result of the theory is exercised, and by which checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coverage {
    Checks(&'static [&'static str]),
    OutOfScope(&'static str),
}

pub static RESULTS: &[(&str, Coverage)] = &[
    ("distance distribution functions, unit steps and the Lévy distance", Coverage::Checks(&["levy-suite"])),
    ("G(t) > 1 - t iff d_L(G, ε_0) < t", Coverage::Checks(&["threshold-equivalence"])),
    ("triangle functions from t-norms", Coverage::Checks(&["triangle-suite"])),
    ("PM space axioms and strong neighborhoods", Coverage::Checks(&["pm-axioms"])),
    ("U(η)∘U(η) ⊆ U(t)", Coverage::Checks(&["vicinity-composition"])),
    ("strong-K implies strong-I^K", Coverage::Checks(&["lemma-k-implies-ik"])),
    ("monotonicity in both ideals", Coverage::Checks(&["prop-monotonicity"])),
    ("K ⊆ I: strong-I^K implies strong-I", Coverage::Checks(&["thm-k-subset-i"])),
    ("I ⊆ K: strong-I implies strong-I^K", Coverage::Checks(&["thm-i-subset-k"])),
    ("a set in K ∖ I separates the convergence modes", Coverage::Checks(&["example-3-counterexample"])),
    ("even numbers and multiples of 3 give incomparable ideals", Coverage::Checks(&["note-m1-m2"])),
    ("join of the powersets of 4n and 4n - 1 is nontrivial", Coverage::Checks(&["join-nontrivial-4n"])),
    ("join of the powersets of odds and evens is trivial", Coverage::Checks(&["join-trivial-odd-even"])),
    ("strong-I iff strong-I^I", Coverage::Checks(&["thm-II-equiv"])),
    ("strong-I^K iff strong-(I∨K)^K", Coverage::Checks(&["thm-join-equiv"])),
    ("uniqueness of strong-I^K limits", Coverage::Checks(&["thm-uniqueness"])),
    ("a strong-I^K limit is a limit point of the range", Coverage::Checks(&["thm-limit-point-of-X"])),
    ("continuous maps preserve strong-I^K convergence", Coverage::Checks(&["thm-continuity"])),
    ("without limit points strong-I implies strong-I^K", Coverage::Checks(&["thm-no-limit-point"])),
    ("the converse fails", Coverage::Checks(&["note-no-limit-point-converse"])),
    ("equivalent forms of the additive property", Coverage::Checks(&["ap-equivalence"])),
    ("the additive property gives strong-I implies strong-I^K", Coverage::Checks(&["ap-theorem"])),
    ("Cauchy forms, convergence implies Cauchy, I^I and (I∨K)^K Cauchy equivalences", Coverage::Checks(&["cauchy-suite"])),
    ("strong-I limit points are strong-I^K limit points", Coverage::Checks(&["limitpoint-inclusion"])),
    ("strong-I^K limit points are ω-accumulation points", Coverage::Checks(&["omega-accumulation"])),
    ("symbolic decisions match enumeration", Coverage::Checks(&["oracle-equivalence"])),
    ("compactness and completeness of the d.d.f. space", Coverage::OutOfScope("pure topology with no finite content")),
    ("the strong topology is Hausdorff", Coverage::OutOfScope("only its finite consequence is checked, in pm-axioms")),
    ("the additive property in the quotient Boolean algebra", Coverage::OutOfScope("a reformulation with no new finite content")),
    ("weak convergence of infinite d.d.f. sequences", Coverage::OutOfScope("needs infinite objects")),
    ("statistical and λ-statistical convergence", Coverage::OutOfScope("background only")),
];

pub fn registry() -> &'static [CheckDef] {
    REGISTRY
}

pub fn find(id: &str) -> Result<&'static CheckDef> {
    REGISTRY.iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownCheck(id.to_string()))
}

/// Resolves every binding of `spec` against `scenario`.
pub fn validate_bindings(scenario: &Scenario, spec: &CheckSpec) -> Result<()> {
    let def = find(&spec.id)?;
    let b = Bindings { scenario, map: &spec.bindings };
    for key in spec.bindings.keys() {
        if !def.bindings.iter().any(|(k, _)| k == key) {
            return Err(Error::Scenario(format!("check `{}` has no binding `{key}`", def.id)));
        }
    }
    for &(key, kind) in def.bindings {
        match kind {
            Kind::Function => {
                b.function(key)?;
            }
            Kind::Point => {
                b.point(key)?;
            }
            Kind::Ideal => {
                b.ideal(key)?;
            }
            Kind::Nontrivial => {
                let i = b.ideal(key)?;
                if !i.is_nontrivial()? {
                    return Err(Error::TrivialIdeal(format!("`{}` = {i} bound to {key} in `{}`", b.name(key)?, def.id)));
                }
            }
        }
    }
    Ok(())
}

/// Runs one check; errors become failures with the error as witness.
pub fn run_check(ctx: &Ctx, spec: &CheckSpec) -> Outcome {
    let run = || -> Result<Outcome> {
        validate_bindings(ctx.scenario, spec)?;
        let def = find(&spec.id)?;
        (def.run)(ctx, &Bindings { scenario: ctx.scenario, map: &spec.bindings })
    };
    run().unwrap_or_else(Outcome::errored)
}

fn names(ctx: &Ctx, points: &[PointId]) -> String {
    let v: Vec<&str> = points.iter().map(|&p| ctx.scenario.space.name(p)).collect();
    format!("[{}]", v.join(", "))
}

fn distinct_ddfs(ctx: &Ctx) -> Vec<Ddf> {
    let s = &ctx.scenario.space;
    let mut out = vec![Ddf::identity()];
    for a in 0..s.len() {
        for b in 0..s.len() {
            if !out.contains(s.ddf(a, b)) {
                out.push(s.ddf(a, b).clone());
            }
        }
    }
    out
}

fn levy_suite(ctx: &Ctx, _: &Bindings) -> Result<Outcome> {
    let mut o = Outcome::new();
    let mut samples = distinct_ddfs(ctx);
    samples.push(Ddf::unit_step(rat(1, 2))?);
    samples.truncate(12);
    let n = samples.len();
    let mut d = vec![Vec::with_capacity(n); n];
    for (i, row) in d.iter_mut().enumerate() {
        for j in 0..n {
            row.push(levy_distance(&samples[i], &samples[j], &ctx.tolerance)?);
        }
    }
    let three = &ctx.tolerance * int(3);
    for i in 0..n {
        o.exercised += 1;
        o.require(d[i][i].distance <= ctx.tolerance, || format!("d({0}, {0}) = {1}", samples[i], show(&d[i][i].distance)));
        let exact = distance_to_identity(&samples[i]);
        let r = &d[i][0];
        o.require(r.lower <= exact && exact <= r.upper, || {
            format!("closed form {} outside [{}, {}] for {}", show(&exact), show(&r.lower), show(&r.upper), samples[i])
        });
        for j in 0..n {
            o.require(d[i][j] == d[j][i], || format!("asymmetric distance between {} and {}", samples[i], samples[j]));
            for k in 0..n {
                o.exercised += 1;
                let bound = &d[i][j].distance + &d[j][k].distance + &three;
                o.require(d[i][k].distance <= bound, || {
                    format!("triangle fails on {}, {}, {}", samples[i], samples[j], samples[k])
                });
            }
        }
    }
    Ok(o)
}

fn threshold_suite(ctx: &Ctx, _: &Bindings) -> Result<Outcome> {
    let mut o = Outcome::new();
    for g in distinct_ddfs(ctx) {
        for k in 1..=20 {
            let t = rat(k, 20);
            o.exercised += 1;
            o.require(threshold_equivalence(&g, &t)?, || format!("equivalence fails for {g} at t = {}", show(&t)));
        }
    }
    Ok(o)
}

fn triangle_suite(ctx: &Ctx, _: &Bindings) -> Result<Outcome> {
    let mut o = Outcome::new();
    let mut samples = distinct_ddfs(ctx);
    samples.truncate(8);
    let report = check_triangle_axioms(&ctx.scenario.space.triangle(), &samples)?;
    for r in &report.results {
        o.exercised += r.checked;
        for f in &r.failures {
            o.fail(format!("{:?}: {f}", r.axiom));
        }
    }
    Ok(o)
}

fn vicinity_composition(ctx: &Ctx, _: &Bindings) -> Result<Outcome> {
    let mut o = Outcome::new();
    let s = &ctx.scenario.space;
    let resolution = rat(1, 1_000_000_000_000);
    let mut ts: Vec<Rational> = (1..=10).map(|k| rat(k, 10)).collect();
    ts.extend(s.threshold_values().into_iter().filter(|v| v > &zero()));
    for t in ts {
        o.exercised += 1;
        match s.find_eta(&t, &resolution) {
            Ok(eta) => {
                let u = s.vicinity(&eta)?;
                let ok = eta > zero() && compose(&u, &u).is_subset(&s.vicinity(&t)?);
                o.require(ok, || format!("η = {} does not work for t = {}", show(&eta), show(&t)));
            }
            Err(e) => o.fail(format!("t = {}: {e}", show(&t))),
        }
    }
    Ok(o)
}

fn pm_axioms(ctx: &Ctx, _: &Bindings) -> Result<Outcome> {
    let mut o = Outcome::new();
    let s = &ctx.scenario.space;
    let report = s.check_axioms();
    o.exercised += 1;
    o.require(report.all_passed(), || format!("{report:?}"));
    for a in 0..s.len() {
        for b in 0..s.len() {
            if a != b {
                o.exercised += 1;
                let t = s.hausdorff_witness(a, b)?;
                o.require(s.strong_neighborhood(a, &t)?.is_disjoint(&s.strong_neighborhood(b, &t)?), || {
                    format!("neighborhoods of {} and {} overlap at {}", s.name(a), s.name(b), show(&t))
                });
            }
        }
        for t in probe_values(s) {
            o.require(s.strong_neighborhood(a, &t)? == s.strong_neighborhood_direct(a, &t)?, || {
                format!("neighborhood of {} at {} differs from the definition", s.name(a), show(&t))
            });
        }
    }
    Ok(o)
}

fn example_counterexample(ctx: &Ctx, b: &Bindings) -> Result<Outcome> {
    let mut o = Outcome::new();
    let (f, i, k, p) = (b.function("f")?, b.ideal("I")?, b.ideal("K")?, b.point("p")?);
    let s = &ctx.scenario.space;
    let e = exceptional_set(f, p);
    o.require(!i.is_subideal(k)? && !k.is_subideal(i)?, || "I and K are comparable".into());
    o.require(k.contains(&e)? && !i.contains(&e)?, || format!("exceptional set {e} is not in K ∖ I"));
    let vk = strong_converges(f, k, s, p)?;
    let vik = strong_ik_converges(f, i, k, s, p)?;
    let vi = strong_converges(f, i, s, p)?;
    o.exercised += 1;
    o.witnesses.push(format!(
        "str-K: {}, str-I^K: {}, str-I: {}",
        vk.converges, vik.converges, vi.converges
    ));
    o.require(vk.converges && vik.converges && !vi.converges, || "verdicts differ from (true, true, false)".into());
    o.traces.push(json!({"str_K": vk, "str_IK": vik, "str_I": vi}));
    Ok(o)
}

fn common_member(i: &IdealSpec, k: &IdealSpec) -> Result<Option<SymbolicSet>> {
    let (a, b) = (i.normal_form()?, k.normal_form()?);
    let core = a.core.intersect(&b.core)?;
    if !core.is_empty() {
        return Ok(Some(core));
    }
    let loose = a.core.union(&a.slack)?.intersect(&b.core.union(&b.slack)?)?;
    Ok(loose.min_element().map(|n| SymbolicSet::finite([n])))
}

fn note_m1_m2(_: &Ctx, b: &Bindings) -> Result<Outcome> {
    let mut o = Outcome::new();
    let (i, k) = (b.ideal("I")?, b.ideal("K")?);
    o.exercised += 1;
    let ik = i.difference_witness(k)?;
    let ki = k.difference_witness(i)?;
    let common = common_member(i, k)?;
    o.witnesses.push(format!(
        "in I not K: {}; in K not I: {}; in both: {}",
        ik.as_ref().map_or("none".into(), ToString::to_string),
        ki.as_ref().map_or("none".into(), ToString::to_string),
        common.as_ref().map_or("none".into(), ToString::to_string),
    ));
    o.require(ik.is_some() && ki.is_some(), || "the ideals are comparable".into());
    match common {
        Some(c) => o.require(i.contains(&c)? && k.contains(&c)?, || format!("{c} is not a common member")),
        None => o.fail("no common nonempty member"),
    }
    Ok(o)
}

fn join_nontrivial(_: &Ctx, b: &Bindings) -> Result<Outcome> {
    let mut o = Outcome::new();
    let (i, k) = (b.ideal("I")?, b.ideal("K")?);
    let join = IdealSpec::join(i.clone(), k.clone());
    o.exercised += 1;
    o.require(join.is_nontrivial()?, || format!("{join} is trivial"));
    let a = i.normal_form()?.core.union(&k.normal_form()?.core)?;
    match join_split(i, k, &a)? {
        Some(split) => o.witnesses.push(format!("{a} = {} ∪ {}", split.left, split.right)),
        None => o.fail(format!("{a} is not in the join")),
    }
    o.require(!join.contains(&SymbolicSet::all())?, || "ℕ is in the join".into());
    Ok(o)
}

fn join_trivial(_: &Ctx, b: &Bindings) -> Result<Outcome> {
    let mut o = Outcome::new();
    let (i, k) = (b.ideal("I")?, b.ideal("K")?);
    let join = IdealSpec::join(i.clone(), k.clone());
    o.exercised += 1;
    o.require(!join.is_nontrivial()?, || format!("{join} is nontrivial"));
    if let Some(split) = join_split(i, k, &SymbolicSet::all())? {
        o.witnesses.push(format!("ℕ = {} ∪ {}", split.left, split.right));
    }
    Ok(o)
}

fn thm_ii_equiv(ctx: &Ctx, b: &Bindings) -> Result<Outcome> {
    let mut o = Outcome::new();
    let (f, i) = (b.function("f")?, b.ideal("I")?);
    let s = &ctx.scenario.space;
    for p in 0..s.len() {
        let a = strong_converges(f, i, s, p)?.converges;
        let c = strong_ik_converges(f, i, i, s, p)?.converges;
        o.equivalence(a, c, || format!("at {}: str-I {a}, str-I^I {c}", s.name(p)));
    }
    Ok(o)
}

fn join_of(i: &IdealSpec, k: &IdealSpec) -> Result<Option<IdealSpec>> {
    let j = IdealSpec::join(i.clone(), k.clone());
    Ok(if j.is_nontrivial()? { Some(j) } else { None })
}

fn thm_join_equiv(ctx: &Ctx, b: &Bindings) -> Result<Outcome> {
    let mut o = Outcome::new();
    let (f, i, k) = (b.function("f")?, b.ideal("I")?, b.ideal("K")?);
    let s = &ctx.scenario.space;
    let Some(j) = join_of(i, k)? else {
        o.vacuous += 1;
        return Ok(o);
    };
    for p in 0..s.len() {
        let a = strong_ik_converges(f, i, k, s, p)?.converges;
        let c = strong_ik_converges(f, &j, k, s, p)?.converges;
        o.equivalence(a, c, || format!("at {}: str-I^K {a}, str-(I∨K)^K {c}", s.name(p)));
    }
    Ok(o)
}

fn thm_uniqueness(ctx: &Ctx, b: &Bindings) -> Result<Outcome> {
    let mut o = Outcome::new();
    let (f, i, k) = (b.function("f")?, b.ideal("I")?, b.ideal("K")?);
    if join_of(i, k)?.is_none() {
        o.vacuous += 1;
        return Ok(o);
    }
    let limits = strong_ik_limits(f, i, k, &ctx.scenario.space)?;
    o.implication(!limits.is_empty(), limits.len() == 1, || format!("several limits {}", names(ctx, &limits)));
    Ok(o)
}

fn lemma_k_implies_ik(ctx: &Ctx, b: &Bindings) -> Result<Outcome> {
    let mut o = Outcome::new();
    let (f, i, k) = (b.function("f")?, b.ideal("I")?, b.ideal("K")?);
    let s = &ctx.scenario.space;
    let admissible = i.is_admissible()?;
    for p in 0..s.len() {
        let sk = strong_converges(f, k, s, p)?.converges;
        let ik = strong_ik_converges(f, i, k, s, p)?.converges;
        o.implication(sk, ik, || format!("str-K but not str-I^K at {}", s.name(p)));
        if !admissible {
            continue;
        }
        let star = strong_istar_converges(f, i, s, p)?.converges;
        let si = strong_converges(f, i, s, p)?.converges;
        o.implication(star, si, || format!("str-I* but not str-I at {}", s.name(p)));
    }
    Ok(o)
}

fn thm_k_subset_i(ctx: &Ctx, b: &Bindings) -> Result<Outcome> {
    let mut o = Outcome::new();
    let (f, i, k) = (b.function("f")?, b.ideal("I")?, b.ideal("K")?);
    let s = &ctx.scenario.space;
    if !k.is_subideal(i)? {
        o.vacuous += 1;
        return Ok(o);
    }
    for p in 0..s.len() {
        let ik = strong_ik_converges(f, i, k, s, p)?.converges;
        let si = strong_converges(f, i, s, p)?.converges;
        o.implication(ik, si, || format!("str-I^K but not str-I at {}", s.name(p)));
    }
    Ok(o)
}

fn thm_i_subset_k(ctx: &Ctx, b: &Bindings) -> Result<Outcome> {
    let mut o = Outcome::new();
    let (f, i, k) = (b.function("f")?, b.ideal("I")?, b.ideal("K")?);
    let s = &ctx.scenario.space;
    if !i.is_subideal(k)? {
        o.vacuous += 1;
        return Ok(o);
    }
    for p in 0..s.len() {
        let si = strong_converges(f, i, s, p)?.converges;
        let ik = strong_ik_converges(f, i, k, s, p)?.converges;
        o.implication(si, ik, || format!("str-I but not str-I^K at {}", s.name(p)));
    }
    Ok(o)
}

fn monotonicity(ctx: &Ctx, b: &Bindings) -> Result<Outcome> {
    let mut o = Outcome::new();
    let f = b.function("f")?;
    let (i, j, k, l) = (b.ideal("I")?, b.ideal("J")?, b.ideal("K")?, b.ideal("L")?);
    let s = &ctx.scenario.space;
    o.require(i.is_subideal(j)? && k.is_subideal(l)?, || "bindings do not satisfy I ⊆ J and K ⊆ L".into());
    for p in 0..s.len() {
        let base = strong_ik_converges(f, i, k, s, p)?.converges;
        let grown_i = strong_ik_converges(f, j, k, s, p)?.converges;
        let grown_k = strong_ik_converges(f, i, l, s, p)?.converges;
        o.implication(base, grown_i && grown_k, || {
            format!("at {}: str-J^K {grown_i}, str-I^L {grown_k}", s.name(p))
        });
    }
    Ok(o)
}

fn cauchy_suite(ctx: &Ctx, b: &Bindings) -> Result<Outcome> {
    let mut o = Outcome::new();
    let (f, i, k) = (b.function("f")?, b.ideal("I")?, b.ideal("K")?);
    let s = &ctx.scenario.space;
    let ci = strong_cauchy(f, i, s)?.cauchy;
    let cik = strong_ik_cauchy(f, i, k, s)?.cauchy;
    for p in 0..s.len() {
        let vi = strong_converges(f, i, s, p)?.converges;
        o.implication(vi, ci, || format!("str-I convergent to {} but not str-I-Cauchy", s.name(p)));
        let vik = strong_ik_converges(f, i, k, s, p)?.converges;
        o.implication(vik, cik, || format!("str-I^K convergent to {} but not str-I^K-Cauchy", s.name(p)));
    }
    let cii = strong_ik_cauchy(f, i, i, s)?.cauchy;
    o.equivalence(ci, cii, || format!("str-I-Cauchy {ci}, str-I^I-Cauchy {cii}"));
    if let Some(j) = join_of(i, k)? {
        let cjk = strong_ik_cauchy(f, &j, k, s)?.cauchy;
        o.equivalence(cik, cjk, || format!("str-I^K-Cauchy {cik}, str-(I∨K)^K-Cauchy {cjk}"));
    }
    let ck = strong_cauchy(f, k, s)?.cauchy;
    o.implication(ck, cik, || "str-K-Cauchy but not str-I^K-Cauchy".into());
    Ok(o)
}

fn limitpoint_inclusion(ctx: &Ctx, b: &Bindings) -> Result<Outcome> {
    let mut o = Outcome::new();
    let (f, i, k) = (b.function("f")?, b.ideal("I")?, b.ideal("K")?);
    if !k.is_admissible()? || !k.is_subideal(i)? {
        o.vacuous += 1;
        return Ok(o);
    }
    let s = &ctx.scenario.space;
    let lp_i = proper_points(&strong_limit_points(f, i, s)?);
    let lp_ik: BTreeSet<PointId> = proper_points(&strong_ik_limit_points(f, i, k, s)?).into_iter().collect();
    for q in lp_i {
        o.implication(true, lp_ik.contains(&q), || format!("{} is a strong-I but not a strong-I^K limit point", s.name(q)));
    }
    if o.exercised == 0 {
        o.vacuous += 1;
    }
    Ok(o)
}

fn omega_accumulation(ctx: &Ctx, b: &Bindings) -> Result<Outcome> {
    let mut o = Outcome::new();
    let (f, i, k) = (b.function("f")?, b.ideal("I")?, b.ideal("K")?);
    let s = &ctx.scenario.space;
    let admissible = k.is_admissible()?;
    let points = proper_points(&strong_ik_limit_points(f, i, k, s)?);
    if points.is_empty() {
        o.vacuous += 1;
    }
    for q in points {
        o.exercised += 1;
        for t in probe_values(s) {
            let near = s.strong_neighborhood(q, &t)?;
            let pre = f.preimage(|r| near.contains(&r));
            o.require(!k.contains(&pre)?, || format!("preimage {pre} of N_{}({}) is in K", s.name(q), show(&t)));
            if admissible {
                o.require(!pre.is_finite(), || format!("preimage of N_{}({}) is finite", s.name(q), show(&t)));
            }
        }
    }
    Ok(o)
}

fn thm_limit_point_of_x(ctx: &Ctx, b: &Bindings) -> Result<Outcome> {
    let mut o = Outcome::new();
    let (f, i, k) = (b.function("f")?, b.ideal("I")?, b.ideal("K")?);
    let s = &ctx.scenario.space;
    if !i.is_admissible()? || !k.is_admissible()? {
        o.vacuous += 1;
        return Ok(o);
    }
    for p in 0..s.len() {
        let v = strong_ik_converges(f, i, k, s, p)?;
        let Some(m) = v.witness_m else {
            o.vacuous += 1;
            continue;
        };
        o.exercised += 1;
        let g = f.modified(&m, p)?;
        for t in probe_values(s) {
            let near = s.strong_neighborhood(p, &t)?;
            let c = g.preimage(|r| near.contains(&r));
            o.require(k.in_dual_filter(&c)? && !c.is_finite(), || {
                format!("patched preimage {c} of N_{}({}) is not an infinite set of F(K)", s.name(p), show(&t))
            });
        }
    }
    Ok(o)
}

/// Self-maps `h` with `t*(h(a), h(b)) <= t*(a, b)`.
fn nonexpansive_maps(ctx: &Ctx) -> Vec<Vec<PointId>> {
    let s = &ctx.scenario.space;
    let n = s.len();
    let mut candidates: Vec<Vec<PointId>> = Vec::new();
    if n <= 4 {
        for code in 0..n.pow(n as u32) {
            candidates.push((0..n).map(|j| code / n.pow(j as u32) % n).collect());
        }
    } else {
        candidates.push((0..n).collect());
        for c in 0..n {
            candidates.push(vec![c; n]);
        }
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    candidates.push((0..n).map(|x| if x == a { b } else { x }).collect());
                }
            }
        }
    }
    candidates
        .into_iter()
        .filter(|h| (0..n).all(|a| (0..n).all(|b| s.threshold(h[a], h[b]) <= s.threshold(a, b))))
        .collect()
}

fn thm_continuity(ctx: &Ctx, b: &Bindings) -> Result<Outcome> {
    let mut o = Outcome::new();
    let (f, i, k) = (b.function("f")?, b.ideal("I")?, b.ideal("K")?);
    let s = &ctx.scenario.space;
    let limits = strong_ik_limits(f, i, k, s)?;
    if limits.is_empty() {
        o.vacuous += 1;
        return Ok(o);
    }
    for h in nonexpansive_maps(ctx) {
        let hf = f.relabel(&h)?;
        for &p in &limits {
            let ok = strong_ik_converges(&hf, i, k, s, h[p])?.converges;
            o.implication(true, ok, || format!("h = {} loses the limit {}", names(ctx, &h), s.name(p)));
        }
    }
    Ok(o)
}

/// Smallest `t` whose strong neighborhood of `p` is `{p}`.
fn isolating_radius(ctx: &Ctx, p: PointId) -> Result<Option<Rational>> {
    let s = &ctx.scenario.space;
    let t = (0..s.len()).filter(|&q| q != p).map(|q| s.threshold(p, q).clone()).min().unwrap_or_else(|| int(1));
    if t == zero() {
        return Ok(None);
    }
    Ok((s.strong_neighborhood(p, &t)? == BTreeSet::from([p])).then_some(t))
}

fn thm_no_limit_point(ctx: &Ctx, b: &Bindings) -> Result<Outcome> {
    let mut o = Outcome::new();
    let (f, i, k) = (b.function("f")?, b.ideal("I")?, b.ideal("K")?);
    let s = &ctx.scenario.space;
    if !i.is_admissible()? || !k.is_admissible()? {
        o.vacuous += 1;
        return Ok(o);
    }
    for p in 0..s.len() {
        o.require(isolating_radius(ctx, p)?.is_some(), || format!("{} is not isolated", s.name(p)));
        let si = strong_converges(f, i, s, p)?.converges;
        let ik = strong_ik_converges(f, i, k, s, p)?;
        o.implication(si, ik.converges, || format!("str-I but not str-I^K at {}", s.name(p)));
    }
    Ok(o)
}

fn no_limit_point_converse(ctx: &Ctx, b: &Bindings) -> Result<Outcome> {
    let mut o = Outcome::new();
    let (i, k) = (b.ideal("I")?, b.ideal("K")?);
    let s = &ctx.scenario.space;
    let witness = k.difference_witness(i)?;
    let (Some(a), true) = (witness, s.len() >= 2) else {
        o.vacuous += 1;
        return Ok(o);
    };
    let (p, q) = (0, 1);
    let f = ProfileFunction::with_exception(p, q, &a)?;
    o.exercised += 1;
    o.require(isolating_radius(ctx, p)?.is_some(), || format!("{} is not isolated", s.name(p)));
    let vk = strong_converges(&f, k, s, p)?.converges;
    let vik = strong_ik_converges(&f, i, k, s, p)?.converges;
    let vi = strong_converges(&f, i, s, p)?.converges;
    o.require(vk && vik && !vi, || format!("A = {a}: str-K {vk}, str-I^K {vik}, str-I {vi}"));
    Ok(o)
}

fn limit_signature(points: &[LimitPoint]) -> Vec<(PointId, bool)> {
    points.iter().map(|l| (l.point, l.degenerate)).collect()
}

fn oracle_equivalence(ctx: &Ctx, b: &Bindings) -> Result<Outcome> {
    let mut o = Outcome::new();
    let (f, i, k) = (b.function("f")?, b.ideal("I")?, b.ideal("K")?);
    let s = &ctx.scenario.space;
    let cat = Catalog::for_scenario(&[i, k], &[f], &[])?;
    let join = IdealSpec::join(i.clone(), k.clone());

    let mut samples: Vec<SymbolicSet> = Vec::new();
    let n_atoms = cat.atoms().len();
    if n_atoms <= EXHAUSTIVE_ATOMS {
        for mask in 0u64..1 << n_atoms {
            let idx: Vec<usize> = (0..n_atoms).filter(|j| mask >> j & 1 == 1).collect();
            samples.push(cat.assemble(&idx)?);
        }
    } else {
        samples.extend(cat.atoms().iter().cloned());
        samples.extend(f.pieces().map(|(a, _)| a.clone()));
        for p in 0..s.len() {
            samples.push(exceptional_set(f, p));
        }
        for ideal in [i, k] {
            samples.extend(ideal.mentioned_sets());
        }
        let extra: Vec<SymbolicSet> = samples.iter().map(SymbolicSet::complement).collect();
        samples.extend(extra);
        samples.push(SymbolicSet::all());
    }
    samples.sort_by_key(|a| a.to_string());
    samples.dedup();

    for a in &samples {
        for (name, ideal) in [("I", i), ("K", k), ("I∨K", &join)] {
            let sym = ideal.contains(a)?;
            let brute = cat.contains(ideal, a)?;
            o.equivalence(sym, brute, || format!("{a} ∈ {name}: symbolic {sym}, brute force {brute}"));
        }
        let sym = join_split(i, k, a)?.is_some();
        let brute = cat.split(i, k, a)?.is_some();
        o.equivalence(sym, brute, || format!("split of {a}: symbolic {sym}, brute force {brute}"));
    }

    for p in 0..s.len() {
        let sym = strong_converges(f, i, s, p)?.converges;
        let brute = cat.strong_converges(f, i, s, p)?;
        o.equivalence(sym, brute, || format!("str-I at {}: symbolic {sym}, brute force {brute}", s.name(p)));
        let sym = strong_ik_converges(f, i, k, s, p)?.converges;
        let brute = cat.strong_ik_witness(f, i, k, s, p)?;
        o.equivalence(sym, brute.is_some(), || {
            format!("str-I^K at {}: symbolic {sym}, brute force {:?}", s.name(p), brute.map(|m| m.to_string()))
        });
    }

    let sym = limit_signature(&strong_limit_points(f, i, s)?);
    let brute = cat.strong_limit_points(f, i)?;
    o.equivalence(!sym.is_empty(), !brute.is_empty(), String::new);
    o.require(sym == brute, || format!("strong-I limit points: symbolic {sym:?}, brute force {brute:?}"));
    let sym = limit_signature(&strong_ik_limit_points(f, i, k, s)?);
    let brute = cat.strong_ik_limit_points(f, i, k)?;
    o.equivalence(!sym.is_empty(), !brute.is_empty(), String::new);
    o.require(sym == brute, || format!("strong-I^K limit points: symbolic {sym:?}, brute force {brute:?}"));

    let sym = strong_cauchy(f, i, s)?.cauchy;
    let brute = cat.strong_cauchy(f, i, s)?;
    o.equivalence(sym, brute, || format!("str-I-Cauchy: symbolic {sym}, brute force {brute}"));
    o.witnesses.retain(|w| !w.is_empty());
    Ok(o)
}

fn ap_equivalence(ctx: &Ctx, _: &Bindings) -> Result<Outcome> {
    let mut o = Outcome::new();
    let ideals = FiniteIdeal::all_proper(ctx.universe)?;
    for i in &ideals {
        for k in &ideals {
            let r = ap_equivalence_suite(i, k, MAX_UNIVERSE)?;
            o.exercised += 1;
            o.require(r.agree(), || r.counterexample.clone().unwrap_or_default());
        }
    }
    Ok(o)
}

fn ap_theorem(ctx: &Ctx, _: &Bindings) -> Result<Outcome> {
    let mut o = Outcome::new();
    let s = &ctx.scenario.space;
    let n = ctx.universe as usize;
    let m = s.len().min(3);
    let functions: Vec<Vec<PointId>> =
        (0..m.pow(n as u32)).map(|code| (0..n).map(|j| code / m.pow(j as u32) % m).collect()).collect();
    let ideals = FiniteIdeal::all_proper(ctx.universe)?;
    for i in &ideals {
        for k in &ideals {
            let ap = ap_equivalence_suite(i, k, MAX_UNIVERSE)?.holds();
            for f in &functions {
                for p in 0..m {
                    let out = ap_theorem_instance(i, k, ap, s, f, p)?;
                    o.implication(out.exercised, out.holds, || {
                        format!("I = {:?}, K = {:?}, f = {}, p = {}", i.members(), k.members(), names(ctx, f), s.name(p))
                    });
                }
            }
        }
    }
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_ids_are_unique_and_sorted() {
        let ids: Vec<&str> = registry().iter().map(|c| c.id).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(ids, sorted);
        assert!(matches!(find("nope"), Err(Error::UnknownCheck(_))));
    }

    #[test]
    fn required_ids_are_registered() {
        for id in [
            "example-3-counterexample",
            "note-m1-m2",
            "join-nontrivial-4n",
            "join-trivial-odd-even",
            "thm-II-equiv",
            "thm-join-equiv",
            "thm-uniqueness",
            "thm-limit-point-of-X",
            "thm-continuity",
            "thm-no-limit-point",
            "note-no-limit-point-converse",
            "cauchy-suite",
            "ap-equivalence",
            "ap-theorem",
            "limitpoint-inclusion",
            "omega-accumulation",
        ] {
            assert!(find(id).is_ok(), "{id}");
        }
    }
}
