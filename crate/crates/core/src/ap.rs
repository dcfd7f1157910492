//! The additive property AP(I, K) on finite universes, plus witness checking
//! for symbolic ideals.
//!
//! Subsets of `{1, …, n}` are bitmasks with bit `j - 1` standing for `j`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::catalog::probe_values;
use crate::error::{Error, Result};
use crate::ideal::{subset_mod, IdealSpec};
use crate::sets::SymbolicSet;
use crate::space::{PmSpace, PointId};

/// Default and maximum universe size for exhaustive searches.
pub const DEFAULT_UNIVERSE: u32 = 4;
pub const MAX_UNIVERSE: u32 = 5;

pub fn format_mask(mask: u32) -> String {
    let items: Vec<String> = (0..32).filter(|j| mask >> j & 1 == 1).map(|j| (j + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteIdeal {
    n: u32,
    members: Vec<u32>,
}

impl FiniteIdeal {
    /// Smallest family over `{1..n}` containing `generators` and `∅` that is
    /// closed under subsets and unions.
    pub fn generated(n: u32, generators: &[u32]) -> Result<Self> {
        if n > MAX_UNIVERSE {
            return Err(Error::Cap(format!("universe size {n} exceeds {MAX_UNIVERSE}")));
        }
        let full = (1u32 << n) - 1;
        let mut member = vec![false; 1 << n];
        member[0] = true;
        for &g in generators {
            if g & !full != 0 {
                return Err(Error::Precondition(format!("{} is not inside {{1..{n}}}", format_mask(g))));
            }
            member[g as usize] = true;
        }
        loop {
            let mut changed = false;
            for a in 0..=full {
                if !member[a as usize] {
                    continue;
                }
                for b in 0..=full {
                    let grow = member[b as usize] && !member[(a | b) as usize];
                    let shrink = b & a == b && !member[b as usize];
                    if grow || shrink {
                        member[if grow { a | b } else { b } as usize] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let ideal = FiniteIdeal { n, members: (0..=full).filter(|&a| member[a as usize]).collect() };
        ideal.verify_closure()?;
        Ok(ideal)
    }

    /// Every ideal on `{1..n}` that does not contain the whole universe.
    pub fn all_proper(n: u32) -> Result<Vec<Self>> {
        let full = (1u32 << n) - 1;
        let mut out = Vec::new();
        for support in 0..full {
            let singletons: Vec<u32> = (0..n).filter(|j| support >> j & 1 == 1).map(|j| 1 << j).collect();
            out.push(FiniteIdeal::generated(n, &singletons)?);
        }
        Ok(out)
    }

    fn verify_closure(&self) -> Result<()> {
        for &a in &self.members {
            for b in 0..=self.full() {
                if b & a == b && !self.contains(b) {
                    return Err(Error::Precondition(format!("not closed under subsets at {}", format_mask(b))));
                }
            }
            for &b in &self.members {
                if !self.contains(a | b) {
                    return Err(Error::Precondition(format!("not closed under unions at {}", format_mask(a | b))));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn full(&self) -> u32 {
        (1u32 << self.n) - 1
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn contains(&self, a: u32) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn is_proper(&self) -> bool {
        !self.contains(self.full())
    }

    pub fn dual_filter(&self) -> Vec<u32> {
        self.members.iter().map(|a| self.full() & !a).collect()
    }
}

fn check_universe(i: &FiniteIdeal, k: &FiniteIdeal) -> Result<()> {
    if i.n != k.n {
        return Err(Error::Precondition(format!("universes {} and {} differ", i.n, k.n)));
    }
    Ok(())
}

/// Formulation (i) for one family: some `A ∈ I` with `A_j ∖ A ∈ K` for all `j`.
pub fn ap_condition_i(i: &FiniteIdeal, k: &FiniteIdeal, family: &[u32]) -> Result<Option<u32>> {
    check_universe(i, k)?;
    if let Some(&bad) = family.iter().find(|&&a| !i.contains(a)) {
        return Err(Error::Precondition(format!("family member {} is not in I", format_mask(bad))));
    }
    Ok(i.members().iter().copied().find(|&a| family.iter().all(|&aj| k.contains(aj & !a))))
}

/// Formulation (ii) for one family of filter sets: a `K`-pseudo intersection in `F(I)`.
fn pseudo_intersection(i: &FiniteIdeal, k: &FiniteIdeal, family: &[u32]) -> Option<u32> {
    i.dual_filter().into_iter().find(|&a| family.iter().all(|&fj| k.contains(a & !fj)))
}

/// Formulations (iii)–(v) for one family: `B_j ∈ I` with `A_j ∼_K B_j` and
/// `∪ B_j ∈ I`, found by depth-first search.
fn equivalent_cover(i: &FiniteIdeal, k: &FiniteIdeal, family: &[u32]) -> Option<Vec<u32>> {
    fn go(i: &FiniteIdeal, k: &FiniteIdeal, family: &[u32], union: u32, chosen: &mut Vec<u32>) -> bool {
        let Some((&aj, rest)) = family.split_first() else {
            return true;
        };
        for &b in i.members() {
            if k.contains(aj ^ b) && i.contains(union | b) {
                chosen.push(b);
                if go(i, k, rest, union | b, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    go(i, k, family, 0, &mut chosen).then_some(chosen)
}

fn subfamilies(pool: &[u32]) -> impl Iterator<Item = Vec<u32>> + '_ {
    (1u64..1 << pool.len()).map(move |mask| {
        pool.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &a)| a).collect()
    })
}

fn pairwise_disjoint(family: &[u32]) -> bool {
    family.iter().enumerate().all(|(j, a)| family[j + 1..].iter().all(|b| a & b == 0))
}

fn is_chain(family: &[u32]) -> bool {
    family.iter().all(|&a| family.iter().all(|&b| a & b == a || a & b == b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApReport {
    /// Verdicts of formulations (i) to (v).
    pub formulations: [bool; 5],
    pub families_checked: usize,
    /// A family on which the formulations disagree.
    pub counterexample: Option<String>,
}

impl ApReport {
    pub fn agree(&self) -> bool {
        self.formulations.iter().all(|&v| v == self.formulations[0])
    }

    pub fn holds(&self) -> bool {
        self.agree() && self.formulations[0]
    }
}

/// Brute-force evaluation of formulations (i)–(v) over every family of
/// distinct sets (disjoint families for (iv), chains for (v)).
pub fn ap_equivalence_suite(i: &FiniteIdeal, k: &FiniteIdeal, cap: u32) -> Result<ApReport> {
    check_universe(i, k)?;
    if i.n > cap {
        return Err(Error::Cap(format!("universe size {} exceeds {cap}", i.n)));
    }
    let mut verdicts = [true; 5];
    let mut failing: [Option<Vec<u32>>; 5] = Default::default();
    let mut checked = 0;
    for family in subfamilies(i.members()) {
        checked += 1;
        let cover = equivalent_cover(i, k, &family).is_some();
        let outcomes = [
            ap_condition_i(i, k, &family)?.is_some(),
            true,
            cover,
            !pairwise_disjoint(&family) || cover,
            !is_chain(&family) || cover,
        ];
        for (j, ok) in outcomes.into_iter().enumerate() {
            if !ok && verdicts[j] {
                verdicts[j] = false;
                failing[j] = Some(family.clone());
            }
        }
    }
    let filter = i.dual_filter();
    for family in subfamilies(&filter) {
        checked += 1;
        if pseudo_intersection(i, k, &family).is_none() && verdicts[1] {
            verdicts[1] = false;
            failing[1] = Some(family);
        }
    }
    let mut report = ApReport { formulations: verdicts, families_checked: checked, counterexample: None };
    if !report.agree() {
        let mut text = String::new();
        for (j, fam) in failing.iter().enumerate() {
            if let Some(fam) = fam {
                let sets: Vec<String> = fam.iter().map(|&a| format_mask(a)).collect();
                let _ = write!(text, "formulation {} fails on [{}]; ", j + 1, sets.join(", "));
            }
        }
        report.counterexample = Some(text.trim_end_matches("; ").to_string());
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApTheoremOutcome {
    pub ap: bool,
    pub strong_i: bool,
    pub strong_ik: bool,
    /// The premises held, so the conclusion was actually tested.
    pub exercised: bool,
    pub holds: bool,
}

/// `f⁻¹(P ∖ N_p(t))` over `{1..n}` for every probe `t`.
fn far_masks(space: &PmSpace, f: &[PointId], p: PointId) -> Result<Vec<u32>> {
    probe_values(space)
        .iter()
        .map(|t| {
            let near = space.strong_neighborhood_direct(p, t)?;
            Ok(f.iter().enumerate().filter(|(_, q)| !near.contains(q)).fold(0u32, |m, (j, _)| m | 1 << j))
        })
        .collect()
}

/// On `S = {1..n}`: AP(I, K) and strong-I convergence to `p` imply strong-I^K
/// convergence, the latter decided by trying every `M ⊆ S`.
pub fn ap_implies_ik_check(
    i: &FiniteIdeal,
    k: &FiniteIdeal,
    space: &PmSpace,
    f: &[PointId],
    p: PointId,
) -> Result<ApTheoremOutcome> {
    check_universe(i, k)?;
    if f.len() != i.n as usize {
        return Err(Error::Precondition(format!("function has {} values on a universe of {}", f.len(), i.n)));
    }
    let ap = ap_equivalence_suite(i, k, MAX_UNIVERSE)?.holds();
    ap_theorem_instance(i, k, ap, space, f, p)
}

/// [`ap_implies_ik_check`] with the AP verdict for `(I, K)` already known.
pub fn ap_theorem_instance(
    i: &FiniteIdeal,
    k: &FiniteIdeal,
    ap: bool,
    space: &PmSpace,
    f: &[PointId],
    p: PointId,
) -> Result<ApTheoremOutcome> {
    let far = far_masks(space, f, p)?;
    let strong_i = far.iter().all(|&e| i.contains(e));
    let strong_ik =
        (0..=i.full()).any(|m| i.contains(i.full() & !m) && far.iter().all(|&e| k.contains(m & e)));
    let exercised = ap && strong_i;
    Ok(ApTheoremOutcome { ap, strong_i, strong_ik, exercised, holds: !exercised || strong_ik })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessCheck {
    pub holds: bool,
    pub reason: Option<String>,
}

/// Checks that `a` witnesses formulation (i) for a finite symbolic family.
pub fn symbolic_ap_witness_check(
    i: &IdealSpec,
    k: &IdealSpec,
    family: &[SymbolicSet],
    a: &SymbolicSet,
) -> Result<WitnessCheck> {
    for aj in family {
        if !i.contains(aj)? {
            return Err(Error::Precondition(format!("family member {aj} is not in {i}")));
        }
    }
    if !i.contains(a)? {
        return Ok(WitnessCheck { holds: false, reason: Some(format!("{a} is not in {i}")) });
    }
    for aj in family {
        if !subset_mod(aj, a, k)? {
            return Ok(WitnessCheck {
                holds: false,
                reason: Some(format!("{aj} ∖ {a} is not in {k}")),
            });
        }
    }
    Ok(WitnessCheck { holds: true, reason: None })
}
