//! Acceptance criteria, one line each.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pmconv::ap::{ap_equivalence_suite, ap_theorem_instance, FiniteIdeal};
use pmconv::checks::{run_check, Ctx};
use pmconv::convergence::{strong_converges, strong_ik_converges};
use pmconv::corpus::generate_corpus;
use pmconv::ddf::{Ddf, Ext};
use pmconv::ideal::IdealSpec;
use pmconv::levy::{condition_holds, levy_distance};
use pmconv::num::{from_f64, int, one, rat, zero, Rational};
use pmconv::report::{run_scenarios, Options};
use pmconv::scenario::Scenario;
use pmconv::sets::SymbolicSet;
use pmconv::space::{compose, PmSpace};
use pmconv::triangle::{TNorm, TriangleFn};

const SEED: u64 = 0;
const DL_TOL: f64 = 1e-9;
const SELF_DISTANCE_TOL: f64 = 1e-9;
const TRIANGLE_SLACK: f64 = 3e-9;
const UNIT_STEP_TOL: f64 = 1e-9;
const LEVY_PAIRS: usize = 500;
const LEVY_BUDGET: Duration = Duration::from_secs(10);
const THRESHOLD_DDFS: usize = 200;
const TRIPLES: usize = 100;
const SPACES: usize = 100;
const THEOREM_SCENARIOS: usize = 200;
const MIN_HITS: usize = 50;
const ORACLE_SCENARIOS: usize = 100;
const ORACLE_BUDGET: Duration = Duration::from_secs(60);
const AP_UNIVERSE: u32 = 4;
const REFERENCE: &str = include_str!("../scenarios/reference.scn");

type Verdict = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

fn random_ddf(rng: &mut ChaCha8Rng) -> Ddf {
    let k = rng.gen_range(1..=4);
    let mut at = zero();
    let mut value = zero();
    let mut steps = Vec::new();
    for j in 0..k {
        at += rat(rng.gen_range(1..=12), rng.gen_range(1..=8));
        value = if j + 1 == k && rng.gen_bool(0.6) {
            one()
        } else {
            &value + (one() - &value) * rat(rng.gen_range(1..=9), 10)
        };
        steps.push((Ext::Finite(at.clone()), value.clone()));
    }
    if value != one() {
        steps.push((Ext::Infinity, one()));
    }
    Ddf::from_steps(steps).expect("generated steps are valid")
}

fn levy_suite() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let tol = from_f64(DL_TOL).unwrap();
    let self_tol = from_f64(SELF_DISTANCE_TOL).unwrap();
    let slack = from_f64(TRIANGLE_SLACK).unwrap();
    let d = |f: &Ddf, g: &Ddf| levy_distance(f, g, &tol).map(|r| r.distance).map_err(|e| e.to_string());
    for n in 0..LEVY_PAIRS {
        let (f, g, h) = (random_ddf(&mut rng), random_ddf(&mut rng), random_ddf(&mut rng));
        let (fg, gf) = (d(&f, &g)?, d(&g, &f)?);
        if fg != gf {
            return Err(format!("pair {n}: asymmetric distance between {f} and {g}"));
        }
        if d(&f, &f)? > self_tol {
            return Err(format!("pair {n}: d({f}, {f}) exceeds tolerance"));
        }
        if d(&f, &h)? > &fg + &d(&g, &h)? + &slack {
            return Err(format!("pair {n}: triangle inequality fails for {f}, {g}, {h}"));
        }
    }
    let unit_tol = from_f64(UNIT_STEP_TOL).unwrap();
    for _ in 0..50 {
        let a = rat(rng.gen_range(1..1000), 1000);
        let r = levy_distance(&Ddf::unit_step(a.clone()).unwrap(), &Ddf::identity(), &tol).map_err(|e| e.to_string())?;
        let err = if r.distance > a { &r.distance - &a } else { &a - &r.distance };
        if err > unit_tol {
            return Err(format!("d_L(ε_a, ε_0) = {} for a = {a}", r.distance));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > LEVY_BUDGET {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{LEVY_PAIRS} triples and 50 unit steps in {elapsed:.2?}"))
}

/// `d_L(G, ε_0) < t` from the sandwich predicate alone: the predicate is
/// monotone in `t` and only changes at rationals built from `G`'s jumps, so it
/// holds strictly below `t` iff it holds at the largest such point below `t`.
fn below_identity_distance(g: &Ddf, t: &Rational) -> bool {
    let e0 = Ddf::identity();
    let mut points = vec![zero()];
    for j in g.jumps() {
        points.push(j.at.clone());
        points.push(one() - &j.value);
    }
    points.retain(|p| p < t && p >= &zero());
    points.sort();
    points.dedup();
    let mut probes = Vec::new();
    for w in points.windows(2) {
        probes.push((&w[0] + &w[1]) / int(2));
    }
    probes.extend(points.iter().filter(|p| p > &&zero()).cloned());
    if let Some(last) = points.last() {
        probes.push((last + t) / int(2));
    }
    probes.iter().any(|s| {
        s > &zero() && condition_holds(g, &e0, s).unwrap() && condition_holds(&e0, g, s).unwrap()
    })
}

fn threshold_suite() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let mut cases = 0;
    for _ in 0..THRESHOLD_DDFS {
        let g = random_ddf(&mut rng);
        for k in 1..=20 {
            let t = rat(k, 20);
            let lhs = g.value_at(&t) > one() - &t;
            let rhs = below_identity_distance(&g, &t);
            if lhs != rhs {
                return Err(format!("G = {g}, t = {t}: G(t) > 1 - t is {lhs}, d_L < t is {rhs}"));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (G, t) cases agree"))
}

fn triangle_suite() -> Verdict {
    let min = TriangleFn::new(TNorm::Minimum);
    for i in 0..20 {
        for j in 0..20 {
            let (a, b) = (rat(i, 8), rat(j, 8));
            let lhs = min.tau(&Ddf::unit_step(a.clone()).unwrap(), &Ddf::unit_step(b.clone()).unwrap());
            if lhs != Ddf::unit_step(&a + &b).unwrap() {
                return Err(format!("ε_{a} τ ε_{b} = {lhs}"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let e0 = Ddf::identity();
    for _ in 0..TRIPLES {
        let (f, g, h) = (random_ddf(&mut rng), random_ddf(&mut rng), random_ddf(&mut rng));
        for tnorm in TNorm::ALL {
            let tau = TriangleFn::new(tnorm);
            if tau.tau(&f, &e0) != f || tau.tau(&e0, &f) != f {
                return Err(format!("{}: ε_0 is not an identity for {f}", tnorm.name()));
            }
            if tau.tau(&f, &g) != tau.tau(&g, &f) {
                return Err(format!("{}: not commutative on {f}, {g}", tnorm.name()));
            }
            if tau.tau(&tau.tau(&f, &g), &h) != tau.tau(&f, &tau.tau(&g, &h)) {
                return Err(format!("{}: not associative on {f}, {g}, {h}", tnorm.name()));
            }
        }
    }
    Ok(format!("400 unit-step sums, {TRIPLES} triples under 3 t-norms"))
}

/// `U(t)` straight from the d.d.f.s.
fn vicinity(space: &PmSpace, t: &Rational) -> std::collections::BTreeSet<(usize, usize)> {
    let n = space.len();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| space.ddf(a, b).value_at(t) > one() - t)
        .collect()
}

fn vicinity_suite(corpus: &[Scenario]) -> Verdict {
    let resolution = rat(1, 1_000_000_000_000);
    let mut cases = 0;
    for s in corpus.iter().take(SPACES) {
        let mut ts: Vec<Rational> = (1..=20).map(|k| rat(k, 20)).collect();
        ts.extend(s.space.threshold_values().into_iter().filter(|v| v > &zero() && v <= &one()));
        for t in ts {
            let eta = s.space.find_eta(&t, &resolution).map_err(|e| format!("{}: {e}", s.name))?;
            let u = vicinity(&s.space, &eta);
            if eta <= zero() || !compose(&u, &u).is_subset(&vicinity(&s.space, &t)) {
                return Err(format!("{}: η = {eta} fails for t = {t}", s.name));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} thresholds over {SPACES} spaces"))
}

fn worked_examples() -> Verdict {
    let s = Scenario::from_json("reference", REFERENCE).map_err(|e| e.to_string())?;
    let space = &s.space;
    let get = |n: &str| s.ideal(n).unwrap().clone();
    let (i, k) = (get("I"), get("K"));
    let f = s.function("f").unwrap();
    let x = space.id("x").unwrap();
    let triple = (
        strong_converges(f, &k, space, x).unwrap().converges,
        strong_ik_converges(f, &i, &k, space, x).unwrap().converges,
        strong_converges(f, &i, space, x).unwrap().converges,
    );
    if triple != (true, true, false) {
        return Err(format!("counterexample verdicts {triple:?}"));
    }
    let m1 = SymbolicSet::progression(0, 2).unwrap();
    let m2 = SymbolicSet::progression(0, 3).unwrap();
    let incomparable = i.contains(&m1).unwrap()
        && !k.contains(&m1).unwrap()
        && k.contains(&m2).unwrap()
        && !i.contains(&m2).unwrap()
        && !i.is_subideal(&k).unwrap()
        && !k.is_subideal(&i).unwrap();
    if !incomparable {
        return Err("M1/M2 do not separate the ideals".into());
    }
    let join = |a: &str, b: &str| IdealSpec::join(get(a), get(b)).is_nontrivial().unwrap();
    if !join("N1", "N2") {
        return Err("join for 4n and 4n-1 is trivial".into());
    }
    if join("odd", "even") {
        return Err("join for odds and evens is nontrivial".into());
    }
    let ctx = Ctx { scenario: &s, tolerance: from_f64(DL_TOL).unwrap(), universe: AP_UNIVERSE };
    for spec in s.file.checks.iter().filter(|c| {
        ["example-3-counterexample", "note-m1-m2", "join-nontrivial-4n", "join-trivial-odd-even"].contains(&c.id.as_str())
    }) {
        let o = run_check(&ctx, spec);
        if !o.passed {
            return Err(format!("{}: {:?}", spec.id, o.witnesses));
        }
    }
    Ok("verdicts (true, true, false), M1/M2 incomparable, 4n join nontrivial, odd/even join trivial".into())
}

const THEOREM_IDS: [&str; 11] = [
    "thm-uniqueness",
    "thm-k-subset-i",
    "thm-i-subset-k",
    "thm-II-equiv",
    "thm-join-equiv",
    "cauchy-suite",
    "limitpoint-inclusion",
    "omega-accumulation",
    "thm-continuity",
    "thm-no-limit-point",
    "note-no-limit-point-converse",
];

fn theorem_suite(corpus: &[Scenario]) -> Verdict {
    let mut hits = BTreeMap::new();
    for id in THEOREM_IDS {
        let opts = Options { tolerance: from_f64(DL_TOL).unwrap(), universe: AP_UNIVERSE, only: Some(id.into()) };
        let report = run_scenarios(&corpus[..THEOREM_SCENARIOS], &opts, Some(SEED));
        let tally = report.summary.by_id.get(id).cloned().unwrap_or_default();
        if tally.failed > 0 {
            let e = report.entries.iter().find(|e| !e.passed).unwrap();
            return Err(format!("{id} fails in {}: {:?}", e.scenario, e.witnesses));
        }
        if tally.exercised < MIN_HITS {
            return Err(format!("{id} has only {} non-vacuous hits", tally.exercised));
        }
        hits.insert(id, tally.exercised);
    }
    let least = hits.iter().min_by_key(|(_, &n)| n).unwrap();
    Ok(format!("{} checks, fewest hits {} ({})", hits.len(), least.1, least.0))
}

fn oracle_suite(corpus: &[Scenario]) -> Verdict {
    let start = Instant::now();
    let opts = Options { tolerance: from_f64(DL_TOL).unwrap(), universe: AP_UNIVERSE, only: Some("oracle-equivalence".into()) };
    let scenarios = &corpus[..ORACLE_SCENARIOS];
    for s in scenarios {
        let sets = s.ideals.values().flat_map(|i| i.mentioned_sets());
        let pieces = s.functions.values().flat_map(|f| f.pieces().map(|(a, _)| a.clone()).collect::<Vec<_>>());
        if let Some(m) = sets.chain(pieces).map(|a| a.modulus()).find(|&m| 12 % m != 0) {
            return Err(format!("{} uses modulus {m}", s.name));
        }
    }
    let report = run_scenarios(scenarios, &opts, Some(SEED));
    let elapsed = start.elapsed();
    if let Some(e) = report.entries.iter().find(|e| !e.passed) {
        return Err(format!("{}: {:?}", e.scenario, e.witnesses));
    }
    if elapsed > ORACLE_BUDGET {
        return Err(format!("took {elapsed:?}"));
    }
    let cases: usize = report.entries.iter().map(|e| e.exercised + e.vacuous).sum();
    Ok(format!("{cases} comparisons over {} runs in {elapsed:.2?}", report.entries.len()))
}

fn ap_suite(corpus: &[Scenario]) -> Verdict {
    let ideals = FiniteIdeal::all_proper(AP_UNIVERSE).map_err(|e| e.to_string())?;
    let mut ap = BTreeMap::new();
    for (a, i) in ideals.iter().enumerate() {
        for (b, k) in ideals.iter().enumerate() {
            let r = ap_equivalence_suite(i, k, AP_UNIVERSE).map_err(|e| e.to_string())?;
            if !r.agree() {
                return Err(format!("formulations disagree: {:?}", r.counterexample));
            }
            ap.insert((a, b), r.holds());
        }
    }
    let n = AP_UNIVERSE as usize;
    let mut exercised = 0;
    for s in corpus.iter().take(10) {
        let m = s.space.len().min(3);
        for code in 0..m.pow(n as u32) {
            let f: Vec<usize> = (0..n).map(|j| code / m.pow(j as u32) % m).collect();
            for (a, i) in ideals.iter().enumerate() {
                for (b, k) in ideals.iter().enumerate() {
                    let out = ap_theorem_instance(i, k, ap[&(a, b)], &s.space, &f, f[0]).map_err(|e| e.to_string())?;
                    if out.exercised {
                        exercised += 1;
                        if !out.holds {
                            return Err(format!("{}: implication fails for f = {f:?}", s.name));
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{} ideal pairs agree, {exercised} exercised theorem instances", ap.len()))
}

fn main() -> ExitCode {
    let corpus = generate_corpus(SEED, THEOREM_SCENARIOS.max(SPACES).max(ORACLE_SCENARIOS)).expect("corpus");
    let criteria: Vec<Criterion> = vec![
        ("levy metric suite", Box::new(levy_suite)),
        ("threshold equivalence", Box::new(threshold_suite)),
        ("triangle function suite", Box::new(triangle_suite)),
        ("vicinity composition", Box::new(|| vicinity_suite(&corpus))),
        ("worked examples", Box::new(worked_examples)),
        ("theorem suite", Box::new(|| theorem_suite(&corpus))),
        ("oracle equivalence", Box::new(|| oracle_suite(&corpus))),
        ("additive property suite", Box::new(|| ap_suite(&corpus))),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} PASS {name}: {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {why}", n + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
