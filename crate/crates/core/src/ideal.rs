//! Decidable ideals on ℕ.
//!
//! Every shipped variant has a normal form `(core, slack)`:
//! `I = {A : A ∖ core is a finite subset of slack}`. The core is the largest
//! symbolic member and the slack is where finitely many extra points are
//! tolerated. Joins and traces stay inside this class:
//!
//! * `L ∨ R` has normal form `(core_L ∪ core_R, slack_L ∪ slack_R)`;
//! * `I|_M` has normal form `(core ∩ M, slack ∩ M)`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::sets::SymbolicSet;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum IdealSpec {
    /// Finite subsets of ℕ.
    Fin,
    /// All subsets of a fixed set.
    PowerSet(SymbolicSet),
    /// Sets of natural density zero. On eventually periodic sets this is `Fin`.
    DensityZero,
    /// Sets covered by finitely many generators, plus finite sets when `closure`.
    Generated { generators: Vec<SymbolicSet>, closure: bool },
    /// `{B ∪ C : B ∈ left, C ∈ right}`.
    Join(Box<IdealSpec>, Box<IdealSpec>),
    /// Trace `{A ∩ M : A ∈ base}`.
    Restrict(Box<IdealSpec>, SymbolicSet),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub core: SymbolicSet,
    pub slack: SymbolicSet,
}

impl NormalForm {
    pub fn contains(&self, a: &SymbolicSet) -> Result<bool> {
        let rest = a.difference(&self.core)?;
        Ok(rest.is_finite() && rest.is_subset(&self.slack)?)
    }
}

/// Witness that `A` belongs to a join: `A = left ∪ right`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JoinSplit {
    pub left: SymbolicSet,
    pub right: SymbolicSet,
}

impl IdealSpec {
    pub fn powerset(m: SymbolicSet) -> Self {
        IdealSpec::PowerSet(m)
    }

    pub fn generated(generators: Vec<SymbolicSet>, closure: bool) -> Self {
        IdealSpec::Generated { generators, closure }
    }

    pub fn join(left: IdealSpec, right: IdealSpec) -> Self {
        IdealSpec::Join(Box::new(left), Box::new(right))
    }

    pub fn restrict(base: IdealSpec, m: SymbolicSet) -> Self {
        IdealSpec::Restrict(Box::new(base), m)
    }

    /// Every set literal occurring in the expression.
    pub fn mentioned_sets(&self) -> Vec<SymbolicSet> {
        match self {
            IdealSpec::Fin | IdealSpec::DensityZero => Vec::new(),
            IdealSpec::PowerSet(m) => vec![m.clone()],
            IdealSpec::Generated { generators, .. } => generators.clone(),
            IdealSpec::Join(l, r) => {
                let mut out = l.mentioned_sets();
                out.extend(r.mentioned_sets());
                out
            }
            IdealSpec::Restrict(b, m) => {
                let mut out = b.mentioned_sets();
                out.push(m.clone());
                out
            }
        }
    }

    pub fn normal_form(&self) -> Result<NormalForm> {
        Ok(match self {
            IdealSpec::Fin | IdealSpec::DensityZero => {
                NormalForm { core: SymbolicSet::empty(), slack: SymbolicSet::all() }
            }
            IdealSpec::PowerSet(m) => NormalForm { core: m.clone(), slack: SymbolicSet::empty() },
            IdealSpec::Generated { generators, closure } => {
                let mut core = SymbolicSet::empty();
                for g in generators {
                    core = core.union(g)?;
                }
                let slack = if *closure { SymbolicSet::all() } else { SymbolicSet::empty() };
                NormalForm { core, slack }
            }
            IdealSpec::Join(l, r) => {
                let (l, r) = (l.normal_form()?, r.normal_form()?);
                NormalForm { core: l.core.union(&r.core)?, slack: l.slack.union(&r.slack)? }
            }
            IdealSpec::Restrict(base, m) => {
                let b = base.normal_form()?;
                NormalForm { core: b.core.intersect(m)?, slack: b.slack.intersect(m)? }
            }
        })
    }

    /// Exact membership decision.
    pub fn contains(&self, a: &SymbolicSet) -> Result<bool> {
        match self {
            IdealSpec::Fin => Ok(a.is_finite()),
            IdealSpec::DensityZero => Ok(a.natural_density() == crate::num::zero()),
            IdealSpec::PowerSet(m) => a.is_subset(m),
            IdealSpec::Join(l, r) => Ok(join_split(l, r, a)?.is_some()),
            IdealSpec::Restrict(base, m) => Ok(a.is_subset(m)? && base.contains(a)?),
            IdealSpec::Generated { .. } => self.normal_form()?.contains(a),
        }
    }

    /// `ℕ ∉ I` and `I ≠ {∅}`.
    pub fn is_nontrivial(&self) -> Result<bool> {
        let nf = self.normal_form()?;
        let whole = nf.contains(&SymbolicSet::all())?;
        let only_empty = nf.core.is_empty() && nf.slack.is_empty();
        Ok(!whole && !only_empty)
    }

    pub fn ensure_nontrivial(&self) -> Result<()> {
        if self.is_nontrivial()? {
            Ok(())
        } else {
            Err(Error::TrivialIdeal(self.to_string()))
        }
    }

    /// Smallest `n` with `{n} ∉ I`; `None` when `I` is admissible.
    pub fn admissibility_witness(&self) -> Result<Option<u64>> {
        let nf = self.normal_form()?;
        Ok(nf.core.union(&nf.slack)?.complement().min_element())
    }

    /// Contains every singleton.
    pub fn is_admissible(&self) -> Result<bool> {
        Ok(self.admissibility_witness()?.is_none())
    }

    /// Membership in the dual filter `F(I) = {A : ℕ ∖ A ∈ I}`.
    pub fn in_dual_filter(&self, a: &SymbolicSet) -> Result<bool> {
        self.ensure_nontrivial()?;
        self.contains(&a.complement())
    }

    /// A set in `self ∖ other`, or `None` when `self ⊆ other`.
    pub fn difference_witness(&self, other: &IdealSpec) -> Result<Option<SymbolicSet>> {
        let nf = self.normal_form()?;
        if !other.contains(&nf.core)? {
            return Ok(Some(nf.core));
        }
        // finite members of self are covered iff each singleton of the slack is
        let onf = other.normal_form()?;
        let uncovered = nf.slack.difference(&onf.core.union(&onf.slack)?)?;
        Ok(uncovered.min_element().map(|n| SymbolicSet::finite([n])))
    }

    /// `self ⊆ other` as families of sets.
    pub fn is_subideal(&self, other: &IdealSpec) -> Result<bool> {
        Ok(self.difference_witness(other)?.is_none())
    }

    pub fn same_ideal(&self, other: &IdealSpec) -> Result<bool> {
        Ok(self.is_subideal(other)? && other.is_subideal(self)?)
    }
}

/// Decides `A ∈ left ∨ right` and returns the split when it exists.
///
/// With normal forms `(U_L, Z_L)` and `(U_R, Z_R)`, `A` is in the join iff
/// `D = A ∖ (U_L ∪ U_R)` is a finite subset of `Z_L ∪ Z_R`. The split puts as
/// much as possible on the right: `C = (A ∩ U_R) ∪ (X ∩ Z_R)` with
/// `X = A ∖ U_R` when that is finite and `X = D` otherwise, and `B = A ∖ C`.
/// In particular `B = ∅` whenever `A ∈ right`. The split is re-verified
/// against both components before it is returned.
pub fn join_split(left: &IdealSpec, right: &IdealSpec, a: &SymbolicSet) -> Result<Option<JoinSplit>> {
    let (l, r) = (left.normal_form()?, right.normal_form()?);
    let rest = a.difference(&l.core.union(&r.core)?)?;
    if !rest.is_finite() || !rest.is_subset(&l.slack.union(&r.slack)?)? {
        return Ok(None);
    }
    let off_right = a.difference(&r.core)?;
    let loose = if off_right.is_finite() { off_right } else { rest };
    let c = a.intersect(&r.core)?.union(&loose.intersect(&r.slack)?)?;
    let b = a.difference(&c)?;
    if !left.contains(&b)? || !right.contains(&c)? {
        return Err(Error::Search(format!("join split for {a} failed verification")));
    }
    Ok(Some(JoinSplit { left: b, right: c }))
}

/// For `A ∈ F(left ∨ right)` returns `(G, H)` with `G ∈ F(left)`,
/// `H ∈ F(right)` and `G ∩ H = A`.
pub fn filter_decomposition(
    left: &IdealSpec,
    right: &IdealSpec,
    a: &SymbolicSet,
) -> Result<Option<(SymbolicSet, SymbolicSet)>> {
    Ok(join_split(left, right, &a.complement())?
        .map(|s| (s.left.complement(), s.right.complement())))
}

/// For `A ∈ base|_M` returns `A' ∈ base` with `A' ∩ M = A`.
pub fn restrict_witness(base: &IdealSpec, m: &SymbolicSet, a: &SymbolicSet) -> Result<Option<SymbolicSet>> {
    if a.is_subset(m)? && base.contains(a)? {
        Ok(Some(a.clone()))
    } else {
        Ok(None)
    }
}

/// `A ⊂_K B`, i.e. `A ∖ B ∈ K`.
pub fn subset_mod(a: &SymbolicSet, b: &SymbolicSet, k: &IdealSpec) -> Result<bool> {
    k.contains(&a.difference(b)?)
}

/// `A ∼_K B`, i.e. `A △ B ∈ K`.
pub fn equiv_mod(a: &SymbolicSet, b: &SymbolicSet, k: &IdealSpec) -> Result<bool> {
    k.contains(&a.symmetric_difference(b)?)
}

impl fmt::Display for IdealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealSpec::Fin => f.write_str("fin"),
            IdealSpec::DensityZero => f.write_str("density0"),
            IdealSpec::PowerSet(m) => write!(f, "powerset({m})"),
            IdealSpec::Generated { generators, closure } => {
                let gens: Vec<String> = generators.iter().map(ToString::to_string).collect();
                write!(f, "gen[{}; closure={closure}]", gens.join(", "))
            }
            IdealSpec::Join(l, r) => write!(f, "join({l}, {r})"),
            IdealSpec::Restrict(b, m) => write!(f, "restrict({b}, {m})"),
        }
    }
}

impl fmt::Debug for IdealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IdealSpec({self})")
    }
}

impl Serialize for IdealSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ap(a: u64, m: u64) -> SymbolicSet {
        SymbolicSet::progression(a, m).unwrap()
    }

    fn evens() -> SymbolicSet {
        ap(0, 2)
    }

    fn odds() -> SymbolicSet {
        ap(1, 2)
    }

    #[test]
    fn membership_per_variant() {
        assert!(IdealSpec::Fin.contains(&SymbolicSet::finite([1, 2, 3])).unwrap());
        assert!(!IdealSpec::Fin.contains(&evens()).unwrap());
        let m1 = IdealSpec::powerset(ap(0, 2));
        assert!(m1.contains(&ap(0, 6)).unwrap());
        assert!(!m1.contains(&ap(0, 3)).unwrap());
        assert!(IdealSpec::DensityZero.contains(&SymbolicSet::finite([7])).unwrap());
        let g = IdealSpec::generated(vec![ap(0, 3)], true);
        assert!(g.contains(&ap(0, 3).union(&SymbolicSet::finite([1])).unwrap()).unwrap());
        let g_plain = IdealSpec::generated(vec![ap(0, 3)], false);
        assert!(!g_plain.contains(&SymbolicSet::finite([1])).unwrap());
    }

    #[test]
    fn join_of_4n_and_4n_minus_1() {
        let join = IdealSpec::join(IdealSpec::powerset(ap(0, 4)), IdealSpec::powerset(ap(3, 4)));
        let a = ap(0, 4).union(&ap(3, 4)).unwrap();
        assert!(join.contains(&a).unwrap());
        assert!(!join.contains(&SymbolicSet::all()).unwrap());
        assert!(join.is_nontrivial().unwrap());
        let IdealSpec::Join(l, r) = &join else { unreachable!() };
        let split = join_split(l, r, &a).unwrap().unwrap();
        assert_eq!(split.left, ap(0, 4));
        assert_eq!(split.right, ap(3, 4));
    }

    #[test]
    fn join_split_matches_exhaustive_decomposition_at_modulus_4() {
        let l = IdealSpec::powerset(ap(0, 4));
        let r = IdealSpec::powerset(ap(3, 4));
        // every union of residue classes mod 4, split every possible way
        for mask in 0u32..16 {
            let a = SymbolicSet::from_parts(4, (0..4).filter(|i| mask >> i & 1 == 1), [], []).unwrap();
            let brute = (0u32..16).filter(|b| b & !mask == 0).any(|b| {
                let bs = SymbolicSet::from_parts(4, (0..4).filter(|i| b >> i & 1 == 1), [], []).unwrap();
                l.contains(&bs).unwrap() && r.contains(&a.difference(&bs).unwrap()).unwrap()
            });
            assert_eq!(join_split(&l, &r, &a).unwrap().is_some(), brute, "mask {mask:04b}");
        }
    }

    #[test]
    fn odd_even_join_is_trivial() {
        let join = IdealSpec::join(IdealSpec::powerset(odds()), IdealSpec::powerset(evens()));
        assert!(!join.is_nontrivial().unwrap());
        assert!(IdealSpec::powerset(odds()).is_nontrivial().unwrap());
        assert!(IdealSpec::Fin.is_nontrivial().unwrap());
        assert!(!IdealSpec::powerset(SymbolicSet::empty()).is_nontrivial().unwrap());
        assert!(!IdealSpec::powerset(SymbolicSet::all()).is_nontrivial().unwrap());
        assert!(matches!(join.ensure_nontrivial(), Err(Error::TrivialIdeal(_))));
    }

    #[test]
    fn dual_filter() {
        let cofinite = SymbolicSet::finite([2, 3]).complement();
        assert!(IdealSpec::Fin.in_dual_filter(&cofinite).unwrap());
        assert!(IdealSpec::powerset(odds()).in_dual_filter(&evens()).unwrap());
        assert!(!IdealSpec::Fin.in_dual_filter(&evens()).unwrap());
        let trivial = IdealSpec::powerset(SymbolicSet::all());
        assert!(trivial.in_dual_filter(&evens()).is_err());
    }

    #[test]
    fn admissibility() {
        assert!(IdealSpec::Fin.is_admissible().unwrap());
        assert_eq!(IdealSpec::powerset(evens()).admissibility_witness().unwrap(), Some(1));
        assert!(IdealSpec::generated(vec![ap(0, 2)], true).is_admissible().unwrap());
        assert!(!IdealSpec::generated(vec![ap(0, 2)], false).is_admissible().unwrap());
    }

    #[test]
    fn modular_inclusion() {
        let a = evens().union(&SymbolicSet::finite([1])).unwrap();
        assert!(subset_mod(&a, &a, &IdealSpec::Fin).unwrap());
        assert!(subset_mod(&a, &evens(), &IdealSpec::Fin).unwrap());
        assert!(!equiv_mod(&evens(), &odds(), &IdealSpec::Fin).unwrap());
        assert!(equiv_mod(&a, &evens(), &IdealSpec::Fin).unwrap());
    }

    #[test]
    fn m1_m2_incomparable() {
        let i1 = IdealSpec::powerset(ap(0, 2));
        let i2 = IdealSpec::powerset(ap(0, 3));
        assert!(!i1.is_subideal(&i2).unwrap());
        assert!(!i2.is_subideal(&i1).unwrap());
        assert_eq!(i1.difference_witness(&i2).unwrap(), Some(ap(0, 2)));
        let common = ap(0, 6);
        assert!(i1.contains(&common).unwrap() && i2.contains(&common).unwrap());
    }

    #[test]
    fn subideal_with_slack() {
        let g = IdealSpec::generated(vec![ap(0, 2)], true);
        assert!(IdealSpec::Fin.is_subideal(&g).unwrap());
        assert!(!g.is_subideal(&IdealSpec::Fin).unwrap());
        assert!(!IdealSpec::Fin.is_subideal(&IdealSpec::powerset(evens())).unwrap());
        assert_eq!(
            IdealSpec::Fin.difference_witness(&IdealSpec::powerset(evens())).unwrap(),
            Some(SymbolicSet::finite([1]))
        );
        assert!(IdealSpec::Fin.same_ideal(&IdealSpec::DensityZero).unwrap());
    }

    #[test]
    fn restrict_membership() {
        let base = IdealSpec::generated(vec![ap(0, 3)], true);
        let m = evens();
        let trace = IdealSpec::restrict(base.clone(), m.clone());
        assert!(trace.contains(&ap(0, 6)).unwrap());
        assert!(!trace.contains(&ap(0, 3)).unwrap());
        assert!(trace.contains(&SymbolicSet::finite([2, 4])).unwrap());
        assert!(!trace.contains(&SymbolicSet::finite([1])).unwrap());
        assert_eq!(restrict_witness(&base, &m, &ap(0, 6)).unwrap(), Some(ap(0, 6)));
        assert!(trace.normal_form().unwrap().contains(&ap(0, 6)).unwrap());
    }

    fn arb_set() -> impl Strategy<Value = SymbolicSet> {
        (prop::sample::select(vec![1u64, 2, 3, 4, 6, 12]), prop::collection::vec(any::<bool>(), 12),
         prop::collection::btree_set(1u64..16, 0..3))
            .prop_map(|(m, mask, add)| {
                let residues: Vec<u64> = (0..m).filter(|&r| mask[r as usize]).collect();
                SymbolicSet::from_parts(m, residues, add, []).unwrap()
            })
    }

    fn arb_base_ideal() -> impl Strategy<Value = IdealSpec> {
        prop_oneof![
            Just(IdealSpec::Fin),
            Just(IdealSpec::DensityZero),
            arb_set().prop_map(IdealSpec::powerset),
            (prop::collection::vec(arb_set(), 1..3), any::<bool>())
                .prop_map(|(g, c)| IdealSpec::generated(g, c)),
        ]
    }

    fn arb_ideal() -> impl Strategy<Value = IdealSpec> {
        arb_base_ideal().prop_recursive(2, 6, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(l, r)| IdealSpec::join(l, r)),
                (inner, arb_set()).prop_map(|(b, m)| IdealSpec::restrict(b, m)),
            ]
        })
    }

    proptest! {
        #[test]
        fn ideal_axioms(i in arb_ideal(), a in arb_set(), b in arb_set()) {
            prop_assert!(i.contains(&SymbolicSet::empty()).unwrap());
            let nf = i.normal_form().unwrap();
            prop_assert_eq!(i.contains(&a).unwrap(), nf.contains(&a).unwrap());
            if i.contains(&a).unwrap() {
                let sub = a.intersect(&b).unwrap();
                prop_assert!(i.contains(&sub).unwrap());
                if i.contains(&b).unwrap() {
                    prop_assert!(i.contains(&a.union(&b).unwrap()).unwrap());
                }
            }
            if i.is_nontrivial().unwrap() {
                prop_assert!(!i.contains(&SymbolicSet::all()).unwrap());
            }
        }

        #[test]
        fn join_is_least_upper_bound(l in arb_ideal(), r in arb_ideal(), a in arb_set()) {
            let j = IdealSpec::join(l.clone(), r.clone());
            if l.contains(&a).unwrap() || r.contains(&a).unwrap() {
                prop_assert!(j.contains(&a).unwrap());
            }
            if let Some(split) = join_split(&l, &r, &a).unwrap() {
                prop_assert_eq!(split.left.union(&split.right).unwrap(), a.clone());
                if r.contains(&a).unwrap() {
                    prop_assert!(split.left.is_empty());
                }
            }
            prop_assert!(l.is_subideal(&j).unwrap() && r.is_subideal(&j).unwrap());
            if j.is_nontrivial().unwrap() && j.in_dual_filter(&a).unwrap() {
                let (g, h) = filter_decomposition(&l, &r, &a).unwrap().unwrap();
                prop_assert!(l.contains(&g.complement()).unwrap());
                prop_assert!(r.contains(&h.complement()).unwrap());
                prop_assert_eq!(g.intersect(&h).unwrap(), a);
            }
        }

        #[test]
        fn trace_agrees_with_witness(i in arb_ideal(), m in arb_set(), a in arb_set()) {
            let trace = IdealSpec::restrict(i.clone(), m.clone());
            let member = trace.contains(&a).unwrap();
            let witness = restrict_witness(&i, &m, &a).unwrap();
            prop_assert_eq!(member, witness.is_some());
            if let Some(w) = witness {
                prop_assert!(i.contains(&w).unwrap());
                prop_assert_eq!(w.intersect(&m).unwrap(), a);
            }
        }

        #[test]
        fn subideal_agrees_with_sampled_members(i in arb_ideal(), j in arb_ideal(), a in arb_set()) {
            if i.is_subideal(&j).unwrap() && i.contains(&a).unwrap() {
                prop_assert!(j.contains(&a).unwrap());
            }
            if let Some(w) = i.difference_witness(&j).unwrap() {
                prop_assert!(i.contains(&w).unwrap());
                prop_assert!(!j.contains(&w).unwrap());
            }
        }
    }
}
