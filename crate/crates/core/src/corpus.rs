//! Seeded scenario generation.
//!
//! Spaces come from L1 metrics on a quarter grid, sets from residue patterns
//! whose modulus divides 12 with at most three exceptions. A single ChaCha
//! stream drives the whole corpus, so a shorter corpus is a prefix of a longer
//! one under the same seed.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::error::Result;
use crate::expr::parse_ideal_with;
use crate::ideal::IdealSpec;
use crate::scenario::{CheckSpec, PieceSpec, Scenario, ScenarioFile, SpaceSpec};
use crate::sets::SymbolicSet;

const MODULI: [u64; 5] = [2, 3, 4, 6, 12];
const EXCEPTION_LIMIT: u64 = 24;
const MAX_EXCEPTIONS: usize = 3;
const MAX_ATTEMPTS: usize = 200;

pub struct Generator {
    rng: ChaCha8Rng,
    seed: u64,
}

fn bind(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

fn check(id: &str, pairs: &[(&str, &str)]) -> CheckSpec {
    CheckSpec { id: id.into(), bindings: bind(pairs) }
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Generator { rng: ChaCha8Rng::seed_from_u64(seed), seed }
    }

    fn exceptions(&mut self) -> Vec<u64> {
        let k = self.rng.gen_range(0..=MAX_EXCEPTIONS);
        (0..k).map(|_| self.rng.gen_range(1..=EXCEPTION_LIMIT)).collect()
    }

    /// An infinite, co-infinite eventually periodic set.
    fn proper_set(&mut self) -> SymbolicSet {
        let m = *MODULI.choose(&mut self.rng).expect("nonempty");
        let mut residues: Vec<u64> = (0..m).filter(|_| self.rng.gen_bool(0.5)).collect();
        if residues.is_empty() {
            residues.push(self.rng.gen_range(0..m));
        }
        if residues.len() as u64 == m {
            residues.remove(self.rng.gen_range(0..residues.len()));
        }
        let added = self.exceptions();
        let removed: Vec<u64> = self.exceptions().into_iter().filter(|n| !added.contains(n)).collect();
        SymbolicSet::from_parts(m, residues, added, removed).expect("small modulus")
    }

    fn ideal_text(&mut self, allow_fin: bool) -> String {
        let choice = self.rng.gen_range(if allow_fin { 0 } else { 2 }..8);
        match choice {
            0 => "fin".into(),
            1 => "density0".into(),
            2..=4 => format!("powerset({})", self.proper_set()),
            5 => {
                let n = self.rng.gen_range(1..=2);
                let gens: Vec<String> = (0..n).map(|_| self.proper_set().to_string()).collect();
                format!("gen[{}; closure={}]", gens.join(", "), self.rng.gen_bool(0.5))
            }
            6 => format!("join(fin, powerset({}))", self.proper_set()),
            _ => format!("restrict(powerset({}), {})", self.proper_set(), self.proper_set()),
        }
    }

    /// Resolves `text` against `known` and keeps it only if nontrivial.
    fn accept(text: &str, known: &BTreeMap<String, IdealSpec>, admissible: bool) -> Option<IdealSpec> {
        let ideal = parse_ideal_with(text, &|n: &str| known.get(n).cloned()).ok()?;
        let ok = ideal.is_nontrivial().ok()? && (!admissible || ideal.is_admissible().ok()?);
        ok.then_some(ideal)
    }

    fn add_ideal(
        &mut self,
        name: &str,
        known: &mut BTreeMap<String, IdealSpec>,
        texts: &mut BTreeMap<String, String>,
        admissible: bool,
        mut make: impl FnMut(&mut Self) -> String,
        fallback: &str,
    ) {
        for _ in 0..MAX_ATTEMPTS {
            let text = make(self);
            if let Some(ideal) = Self::accept(&text, known, admissible) {
                known.insert(name.into(), ideal);
                texts.insert(name.into(), text);
                return;
            }
        }
        let ideal = Self::accept(fallback, known, admissible).expect("fallback ideal is nontrivial");
        known.insert(name.into(), ideal);
        texts.insert(name.into(), fallback.into());
    }

    /// A member of `ideal`: its core plus a few elements of its slack.
    fn member(&mut self, ideal: &IdealSpec) -> SymbolicSet {
        let nf = ideal.normal_form().expect("normal form");
        let pool = nf.slack.elements_up_to(EXCEPTION_LIMIT);
        let extra: Vec<u64> = pool.choose_multiple(&mut self.rng, MAX_EXCEPTIONS.min(pool.len())).copied().collect();
        let extra = &extra[..self.rng.gen_range(0..=extra.len())];
        nf.core.union(&SymbolicSet::finite(extra.iter().copied())).expect("small modulus")
    }

    /// Constant `p` off `e`, with `e` split between up to two other points.
    fn patched(&mut self, n: usize, p: usize, e: &SymbolicSet, points: &[String]) -> Vec<PieceSpec> {
        let mut others: Vec<usize> = (0..n).filter(|&q| q != p).collect();
        others.shuffle(&mut self.rng);
        let evens = SymbolicSet::progression(0, 2).expect("modulus 2");
        let split = self.rng.gen_bool(0.5) && others.len() >= 2;
        let parts = if split {
            vec![
                (e.intersect(&evens).expect("small modulus"), others[0]),
                (e.difference(&evens).expect("small modulus"), others[1]),
            ]
        } else {
            vec![(e.clone(), others[0])]
        };
        let mut pieces = vec![(e.complement(), p)];
        pieces.extend(parts);
        pieces
            .into_iter()
            .filter(|(s, _)| !s.is_empty())
            .map(|(s, v)| PieceSpec { set: s.to_string(), value: points[v].clone() })
            .collect()
    }

    /// A partition of the residues mod `m` among the points, with exceptions.
    fn random_function(&mut self, n: usize, points: &[String]) -> Vec<PieceSpec> {
        let m = *MODULI.choose(&mut self.rng).expect("nonempty");
        let used = self.rng.gen_range(1..=n.min(3));
        let mut targets: Vec<usize> = (0..n).collect();
        targets.shuffle(&mut self.rng);
        targets.truncate(used);
        let assign: Vec<usize> = (0..m).map(|_| *targets.choose(&mut self.rng).expect("nonempty")).collect();
        let mut moved: BTreeMap<u64, usize> = BTreeMap::new();
        for x in self.exceptions() {
            moved.insert(x, self.rng.gen_range(0..n));
        }
        let mut pieces = Vec::new();
        for v in 0..n {
            let residues: Vec<u64> = (0..m).filter(|&r| assign[r as usize] == v).collect();
            let added: Vec<u64> = moved.iter().filter(|&(_, &w)| w == v).map(|(&x, _)| x).collect();
            let removed: Vec<u64> = moved.iter().filter(|&(&x, &w)| w != v && assign[(x % m) as usize] == v).map(|(&x, _)| x).collect();
            let set = SymbolicSet::from_parts(m, residues, added, removed).expect("small modulus");
            if !set.is_empty() {
                pieces.push(PieceSpec { set: set.to_string(), value: points[v].clone() });
            }
        }
        pieces
    }

    fn space(&mut self) -> SpaceSpec {
        let n = self.rng.gen_range(2..=6);
        let mut coords: BTreeSet<(i64, i64)> = BTreeSet::new();
        while coords.len() < n {
            coords.insert((self.rng.gen_range(0..=4), self.rng.gen_range(0..=4)));
        }
        let mut coords: Vec<(i64, i64)> = coords.into_iter().collect();
        coords.shuffle(&mut self.rng);
        let points: Vec<String> = (0..n).map(|j| format!("p{j}")).collect();
        let mut distances = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let d = (coords[a].0 - coords[b].0).abs() + (coords[a].1 - coords[b].1).abs();
                distances.push((points[a].clone(), points[b].clone(), Value::String(format!("{d}/4"))));
            }
        }
        SpaceSpec::Metric { points, distances }
    }

    /// The next scenario file in the stream.
    pub fn next_file(&mut self, index: usize) -> ScenarioFile {
        let space = self.space();
        let SpaceSpec::Metric { points, .. } = &space else { unreachable!() };
        let points = points.clone();
        let n = points.len();
        let tnorm = ["min", "product", "lukasiewicz"].choose(&mut self.rng).expect("nonempty").to_string();

        let mut known = BTreeMap::new();
        let mut texts = BTreeMap::new();
        self.add_ideal("I", &mut known, &mut texts, false, |g| g.ideal_text(true), "fin");
        self.add_ideal("K", &mut known, &mut texts, false, |g| g.ideal_text(true), "powerset(ap:0,2)");
        self.add_ideal("J", &mut known, &mut texts, false, |g| format!("join(I, powerset({}))", g.proper_set()), "I");
        self.add_ideal("L", &mut known, &mut texts, false, |g| format!("join(K, powerset({}))", g.proper_set()), "K");
        self.add_ideal("Kadm", &mut known, &mut texts, true, |g| format!("join(fin, powerset({}))", g.proper_set()), "fin");
        self.add_ideal("Iadm", &mut known, &mut texts, true, |g| format!("join(Kadm, {})", g.ideal_text(false)), "Kadm");
        let ik_text = "join(I, K)";
        let ik = Self::accept(ik_text, &known, false);
        if let Some(ik) = ik.clone() {
            known.insert("IK".into(), ik);
            texts.insert("IK".into(), ik_text.into());
        }

        let p = self.rng.gen_range(0..n);
        let mut functions = BTreeMap::new();
        functions.insert("f".to_string(), self.random_function(n, &points));
        let (i, k, iadm) = (known["I"].clone(), known["K"].clone(), known["Iadm"].clone());
        let ei = self.member(&i);
        functions.insert("g_i".to_string(), self.patched(n, p, &ei, &points));
        let ek = self.member(&k);
        functions.insert("g_k".to_string(), self.patched(n, p, &ek, &points));
        let (a, b) = (self.member(&i), self.member(&k));
        let eik = a.union(&b).expect("small modulus");
        functions.insert("g_ik".to_string(), self.patched(n, p, &eik, &points));
        let eadm = self.member(&iadm);
        functions.insert("g_adm".to_string(), self.patched(n, p, &eadm, &points));

        let mut checks = vec![
            check("levy-suite", &[]),
            check("threshold-equivalence", &[]),
            check("triangle-suite", &[]),
            check("vicinity-composition", &[]),
            check("pm-axioms", &[]),
            check("thm-II-equiv", &[("f", "g_i"), ("I", "I")]),
            check("thm-join-equiv", &[("f", "g_ik"), ("I", "I"), ("K", "K")]),
            check("thm-uniqueness", &[("f", "g_ik"), ("I", "I"), ("K", "K")]),
            check("thm-continuity", &[("f", "g_ik"), ("I", "I"), ("K", "K")]),
            check("thm-limit-point-of-X", &[("f", "g_adm"), ("I", "Iadm"), ("K", "Kadm")]),
            check("thm-no-limit-point", &[("f", "g_adm"), ("I", "Iadm"), ("K", "Kadm")]),
            check("lemma-k-implies-ik", &[("f", "g_k"), ("I", "I"), ("K", "K")]),
            check("lemma-k-implies-ik", &[("f", "g_adm"), ("I", "Iadm"), ("K", "Kadm")]),
            check("note-no-limit-point-converse", &[("I", "I"), ("K", "K")]),
            check("prop-monotonicity", &[("f", "g_ik"), ("I", "I"), ("J", "J"), ("K", "K"), ("L", "L")]),
            check("cauchy-suite", &[("f", "g_ik"), ("I", "I"), ("K", "K")]),
            check("cauchy-suite", &[("f", "f"), ("I", "I"), ("K", "K")]),
            check("limitpoint-inclusion", &[("f", "f"), ("I", "Iadm"), ("K", "Kadm")]),
            check("omega-accumulation", &[("f", "f"), ("I", "I"), ("K", "K")]),
            check("omega-accumulation", &[("f", "f"), ("I", "Iadm"), ("K", "Kadm")]),
            check("oracle-equivalence", &[("f", "f"), ("I", "I"), ("K", "K")]),
            check("oracle-equivalence", &[("f", "g_ik"), ("I", "I"), ("K", "K")]),
        ];
        if ik.is_some() {
            checks.push(check("thm-k-subset-i", &[("f", "g_ik"), ("I", "IK"), ("K", "K")]));
            checks.push(check("thm-i-subset-k", &[("f", "g_i"), ("I", "I"), ("K", "IK")]));
        }
        if index == 0 {
            checks.push(check("ap-equivalence", &[]));
            checks.push(check("ap-theorem", &[]));
        }
        checks.sort_by(|x, y| x.id.cmp(&y.id));

        ScenarioFile { space, tnorm, ideals: texts, functions, checks }
    }

    pub fn next_scenario(&mut self, index: usize) -> Result<Scenario> {
        let file = self.next_file(index);
        Scenario::resolve(&format!("corpus-{}-{index}", self.seed), file, None)
    }
}

/// The first `count` scenarios for `seed`.
pub fn generate_corpus(seed: u64, count: usize) -> Result<Vec<Scenario>> {
    let mut g = Generator::new(seed);
    (0..count).map(|i| g.next_scenario(i)).collect()
}
