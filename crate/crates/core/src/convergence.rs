//! Convergence, Cauchyness and limit points of functions `ℕ → P` with finite
//! range, relative to ideals.
//!
//! A strong neighborhood `N_p(t)` only changes when `t` crosses a threshold
//! `t*(p, q)`, so each quantifier over `t > 0` becomes a finite scan. Trace
//! entries are keyed by a threshold value `θ` and describe every `t` in the
//! half-open interval just above `θ`, where `q ∈ N_p(t)` iff `t*(p, q) <= θ`.
//! The key `0` is always present and covers the smallest `t`.

use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ideal::{join_split, IdealSpec};
use crate::num::{show, zero, Rational};
use crate::sets::SymbolicSet;
use crate::space::{PmSpace, PointId};

/// A function `ℕ → P` given by finitely many symbolic pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileFunction {
    by_value: BTreeMap<PointId, SymbolicSet>,
}

impl ProfileFunction {
    /// Validates that the domains partition ℕ and that every value is a point.
    pub fn new(pieces: Vec<(SymbolicSet, PointId)>, n_points: usize) -> Result<Self> {
        for (k, (a, p)) in pieces.iter().enumerate() {
            if *p >= n_points {
                return Err(Error::UnknownPoint(format!("#{p}")));
            }
            for (b, _) in &pieces[k + 1..] {
                if let Some(x) = a.intersect(b)?.min_element() {
                    return Err(Error::Partition(format!("{a} and {b} overlap at {x}")));
                }
            }
        }
        let mut by_value: BTreeMap<PointId, SymbolicSet> = BTreeMap::new();
        let mut covered = SymbolicSet::empty();
        for (a, p) in pieces {
            covered = covered.union(&a)?;
            let slot = by_value.entry(p).or_insert_with(SymbolicSet::empty);
            *slot = slot.union(&a)?;
        }
        if let Some(gap) = covered.complement().min_element() {
            return Err(Error::Partition(format!("{gap} is not covered")));
        }
        by_value.retain(|_, a| !a.is_empty());
        Ok(ProfileFunction { by_value })
    }

    pub fn constant(p: PointId) -> Self {
        ProfileFunction { by_value: BTreeMap::from([(p, SymbolicSet::all())]) }
    }

    /// `p` off `e`, `q` on `e`.
    pub fn with_exception(p: PointId, q: PointId, e: &SymbolicSet) -> Result<Self> {
        let mut by_value = BTreeMap::new();
        if p == q {
            by_value.insert(p, SymbolicSet::all());
        } else {
            by_value.insert(p, e.complement());
            by_value.insert(q, e.clone());
        }
        by_value.retain(|_, a: &mut SymbolicSet| !a.is_empty());
        Ok(ProfileFunction { by_value })
    }

    pub fn range(&self) -> Vec<PointId> {
        self.by_value.keys().copied().collect()
    }

    pub fn pieces(&self) -> impl Iterator<Item = (&SymbolicSet, PointId)> + '_ {
        self.by_value.iter().map(|(p, a)| (a, *p))
    }

    pub fn value_at(&self, n: u64) -> Option<PointId> {
        self.pieces().find(|(a, _)| a.contains(n)).map(|(_, p)| p)
    }

    /// `f⁻¹(Q)` for `Q = {q : keep(q)}`.
    pub fn preimage(&self, keep: impl Fn(PointId) -> bool) -> SymbolicSet {
        let mut out = SymbolicSet::empty();
        for (a, p) in self.pieces() {
            if keep(p) {
                out = out.union(a).expect("pieces share the partition modulus");
            }
        }
        out
    }

    pub fn preimage_of(&self, q: &[PointId]) -> SymbolicSet {
        self.preimage(|p| q.contains(&p))
    }

    /// `f` on `m`, `p` elsewhere.
    pub fn modified(&self, m: &SymbolicSet, p: PointId) -> Result<Self> {
        let mut pieces = vec![(m.complement(), p)];
        for (a, q) in self.pieces() {
            pieces.push((a.intersect(m)?, q));
        }
        let n = pieces.iter().map(|(_, q)| q + 1).max().unwrap_or(0);
        ProfileFunction::new(pieces, n)
    }

    /// `h ∘ f` for a relabeling `h` given as a table.
    pub fn relabel(&self, h: &[PointId]) -> Result<Self> {
        let pieces = self.pieces().map(|(a, p)| (a.clone(), h[p])).collect();
        ProfileFunction::new(pieces, h.iter().map(|q| q + 1).max().unwrap_or(0))
    }
}

impl Serialize for ProfileFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Piece {
            set: String,
            value: PointId,
        }
        let pieces: Vec<Piece> =
            self.pieces().map(|(a, p)| Piece { set: a.to_string(), value: p }).collect();
        pieces.serialize(s)
    }
}

/// One `t`-interval of a convergence decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub threshold: Rational,
    pub exceptional: SymbolicSet,
    pub in_ideal: bool,
}

impl Serialize for TraceEntry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TraceEntry", 3)?;
        st.serialize_field("threshold", &show(&self.threshold))?;
        st.serialize_field("exceptional", &self.exceptional)?;
        st.serialize_field("in_ideal", &self.in_ideal)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub converges: bool,
    pub limit: Option<PointId>,
    pub witness_m: Option<SymbolicSet>,
    pub threshold_trace: Vec<TraceEntry>,
    pub failure_reason: Option<String>,
}

fn descending_keys(values: impl IntoIterator<Item = Rational>) -> Vec<Rational> {
    let mut keys: Vec<Rational> = values.into_iter().collect();
    keys.push(zero());
    keys.sort_by(|a, b| b.cmp(a));
    keys.dedup();
    keys
}

fn check_point(space: &PmSpace, p: PointId) -> Result<()> {
    if p >= space.len() {
        return Err(Error::UnknownPoint(format!("#{p}")));
    }
    Ok(())
}

/// `f⁻¹({q : q ≠ p})`.
pub fn exceptional_set(f: &ProfileFunction, p: PointId) -> SymbolicSet {
    f.preimage(|q| q != p)
}

/// Per-threshold exceptional sets `f⁻¹(P ∖ N_p(t))` with their membership.
pub fn threshold_trace(
    f: &ProfileFunction,
    space: &PmSpace,
    p: PointId,
    member: impl Fn(&SymbolicSet) -> Result<bool>,
) -> Result<Vec<TraceEntry>> {
    let keys = descending_keys(f.range().into_iter().map(|q| space.threshold(p, q).clone()));
    keys.into_iter()
        .map(|theta| {
            let exceptional = f.preimage(|q| space.threshold(p, q) > &theta);
            let in_ideal = member(&exceptional)?;
            Ok(TraceEntry { threshold: theta, exceptional, in_ideal })
        })
        .collect()
}

fn first_failure(trace: &[TraceEntry]) -> Option<String> {
    trace.iter().rev().find(|e| !e.in_ideal).map(|e| {
        format!("exceptional set {} for t just above {} is not small", e.exceptional, show(&e.threshold))
    })
}

/// `{s : f(s) ∉ N_p(t)}` finite for every `t > 0`.
pub fn fin_converges(f: &ProfileFunction, space: &PmSpace, p: PointId) -> Result<Verdict> {
    check_point(space, p)?;
    let trace = threshold_trace(f, space, p, |e| Ok(e.is_finite()))?;
    let converges = trace.iter().all(|e| e.in_ideal);
    if converges != exceptional_set(f, p).is_finite() {
        return Err(Error::Search("threshold scan disagrees with the minimal neighborhood".into()));
    }
    Ok(Verdict {
        converges,
        limit: converges.then_some(p),
        witness_m: None,
        failure_reason: if converges { None } else { first_failure(&trace) },
        threshold_trace: trace,
    })
}

/// Strong-`I` convergence: `f⁻¹(P ∖ N_p(t)) ∈ I` for every `t > 0`.
pub fn strong_converges(f: &ProfileFunction, ideal: &IdealSpec, space: &PmSpace, p: PointId) -> Result<Verdict> {
    check_point(space, p)?;
    ideal.ensure_nontrivial()?;
    let trace = threshold_trace(f, space, p, |e| ideal.contains(e))?;
    let converges = trace.iter().all(|e| e.in_ideal);
    if converges != ideal.contains(&exceptional_set(f, p))? {
        return Err(Error::Search("threshold scan disagrees with the minimal neighborhood".into()));
    }
    Ok(Verdict {
        converges,
        limit: converges.then_some(p),
        witness_m: None,
        failure_reason: if converges { None } else { first_failure(&trace) },
        threshold_trace: trace,
    })
}

/// Strong-`I^K` convergence: some `M ∈ F(I)` makes `g` (`f` on `M`, `p`
/// elsewhere) strong-`K`-convergent to `p`. Decided as `E ∈ I ∨ K` for the
/// exceptional set `E`; the returned `M` is re-verified through `g`.
pub fn strong_ik_converges(
    f: &ProfileFunction,
    i: &IdealSpec,
    k: &IdealSpec,
    space: &PmSpace,
    p: PointId,
) -> Result<Verdict> {
    check_point(space, p)?;
    i.ensure_nontrivial()?;
    k.ensure_nontrivial()?;
    let trace = threshold_trace(f, space, p, |e| Ok(join_split(i, k, e)?.is_some()))?;
    let converges = trace.iter().all(|e| e.in_ideal);
    let split = join_split(i, k, &exceptional_set(f, p))?;
    if converges != split.is_some() {
        return Err(Error::Search("threshold scan disagrees with the minimal neighborhood".into()));
    }
    let Some(split) = split else {
        return Ok(Verdict {
            converges: false,
            limit: None,
            witness_m: None,
            failure_reason: first_failure(&trace),
            threshold_trace: trace,
        });
    };
    let m = split.left.complement();
    verify_ik_witness(f, i, k, space, p, &m)?;
    Ok(Verdict {
        converges: true,
        limit: Some(p),
        witness_m: Some(m),
        failure_reason: None,
        threshold_trace: trace,
    })
}

/// Checks `M ∈ F(I)` and that the modified function converges strongly in `K`.
pub fn verify_ik_witness(
    f: &ProfileFunction,
    i: &IdealSpec,
    k: &IdealSpec,
    space: &PmSpace,
    p: PointId,
    m: &SymbolicSet,
) -> Result<()> {
    if !i.in_dual_filter(m)? {
        return Err(Error::Search(format!("witness {m} is not in the dual filter of {i}")));
    }
    let g = f.modified(m, p)?;
    if !strong_converges(&g, k, space, p)?.converges {
        return Err(Error::Search(format!("modified function on {m} does not converge in {k}")));
    }
    Ok(())
}

/// Strong-`I*` convergence, i.e. strong-`I^K` with `K = Fin`.
pub fn strong_istar_converges(f: &ProfileFunction, i: &IdealSpec, space: &PmSpace, p: PointId) -> Result<Verdict> {
    strong_ik_converges(f, i, &IdealSpec::Fin, space, p)
}

/// Every point that `f` converges to in the strong-`I^K` sense.
pub fn strong_ik_limits(f: &ProfileFunction, i: &IdealSpec, k: &IdealSpec, space: &PmSpace) -> Result<Vec<PointId>> {
    let mut out = Vec::new();
    for p in 0..space.len() {
        if strong_ik_converges(f, i, k, space, p)?.converges {
            out.push(p);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CauchyEntry {
    pub threshold: Rational,
    /// A value `f(m)` whose neighborhood works for this interval.
    pub center: Option<PointId>,
    pub exceptional: Option<SymbolicSet>,
}

impl Serialize for CauchyEntry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CauchyEntry", 3)?;
        st.serialize_field("threshold", &show(&self.threshold))?;
        st.serialize_field("center", &self.center)?;
        st.serialize_field("exceptional", &self.exceptional)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CauchyVerdict {
    pub cauchy: bool,
    pub witness_m: Option<SymbolicSet>,
    pub trace: Vec<CauchyEntry>,
    pub failure_reason: Option<String>,
}

fn range_on(f: &ProfileFunction, domain: &SymbolicSet) -> Result<Vec<PointId>> {
    let mut out = Vec::new();
    for (a, p) in f.pieces() {
        if !a.intersect(domain)?.is_empty() {
            out.push(p);
        }
    }
    Ok(out)
}

/// Cauchy test for `f|_domain` against an ideal of subsets of `domain`.
///
/// For each `t` one representative index per value is tried as `m`. The
/// verdict is cross-checked against the pairwise form: for every `t` some `A`
/// in the ideal such that all values outside `A` are mutually `t`-close.
pub fn cauchy_on(
    f: &ProfileFunction,
    domain: &SymbolicSet,
    ideal: &IdealSpec,
    space: &PmSpace,
) -> Result<CauchyVerdict> {
    let range = range_on(f, domain)?;
    if range.len() > 16 {
        return Err(Error::Cap(format!("range of size {} in the Cauchy scan", range.len())));
    }
    let keys = descending_keys(
        range.iter().flat_map(|&a| range.iter().map(move |&b| space.threshold(a, b).clone())),
    );
    let restricted = |keep: &dyn Fn(PointId) -> bool| -> Result<SymbolicSet> {
        f.preimage(keep).intersect(domain)
    };
    let mut trace = Vec::new();
    let mut pairwise_all = true;
    for theta in keys {
        let mut hit = None;
        for &c in &range {
            let e = restricted(&|q| space.threshold(c, q) > &theta)?;
            if ideal.contains(&e)? {
                hit = Some((c, e));
                break;
            }
        }
        let pairwise = (1u32..1 << range.len()).any(|mask| {
            let chosen: Vec<PointId> =
                range.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &p)| p).collect();
            chosen.iter().all(|&a| chosen.iter().all(|&b| space.threshold(a, b) <= &theta))
                && restricted(&|q| !chosen.contains(&q))
                    .and_then(|a| ideal.contains(&a))
                    .unwrap_or(false)
        });
        pairwise_all &= pairwise;
        let (center, exceptional) = match hit {
            Some((c, e)) => (Some(c), Some(e)),
            None => (None, None),
        };
        trace.push(CauchyEntry { threshold: theta, center, exceptional });
    }
    let cauchy = trace.iter().all(|e| e.center.is_some());
    if cauchy != pairwise_all {
        return Err(Error::Search(format!("Cauchy forms disagree: centred {cauchy}, pairwise {pairwise_all}")));
    }
    let failure_reason = trace.iter().rev().find(|e| e.center.is_none()).map(|e| {
        format!("no center works for t just above {}", show(&e.threshold))
    });
    Ok(CauchyVerdict { cauchy, witness_m: None, trace, failure_reason })
}

/// Strong-`I`-Cauchy.
pub fn strong_cauchy(f: &ProfileFunction, ideal: &IdealSpec, space: &PmSpace) -> Result<CauchyVerdict> {
    ideal.ensure_nontrivial()?;
    cauchy_on(f, &SymbolicSet::all(), ideal, space)
}

/// Strong-`I^K`-Cauchy: some `M ∈ F(I)` with `f|_M` strong-`K|_M`-Cauchy.
///
/// For a centre `c` the exceptional set `E_c = f⁻¹(P ∖ {c})` must lie in
/// `I ∨ K`; its split `E_c = B ∪ C` gives `M = ℕ ∖ B`, which is then checked
/// directly with the restricted Cauchy test.
pub fn strong_ik_cauchy(
    f: &ProfileFunction,
    i: &IdealSpec,
    k: &IdealSpec,
    space: &PmSpace,
) -> Result<CauchyVerdict> {
    i.ensure_nontrivial()?;
    k.ensure_nontrivial()?;
    for c in f.range() {
        if let Some(split) = join_split(i, k, &exceptional_set(f, c))? {
            let m = split.left.complement();
            if !i.in_dual_filter(&m)? {
                return Err(Error::Search(format!("Cauchy witness {m} is not in the dual filter")));
            }
            let restricted = IdealSpec::restrict(k.clone(), m.clone());
            let mut verdict = cauchy_on(f, &m, &restricted, space)?;
            if !verdict.cauchy {
                return Err(Error::Search(format!("restriction to {m} is not Cauchy")));
            }
            verdict.witness_m = Some(m);
            return Ok(verdict);
        }
    }
    Ok(CauchyVerdict {
        cauchy: false,
        witness_m: None,
        trace: Vec::new(),
        failure_reason: Some("no value has its exceptional set in the join".into()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitPoint {
    pub point: PointId,
    pub witness_m: SymbolicSet,
    /// The witness is finite, which only happens for non-admissible ideals.
    pub degenerate: bool,
}

/// Strong-`I` limit points: `q ∈ range(f)` with some `M ∉ I` such that `f|_M`
/// is `Fin`-convergent to `q`, i.e. `M ∖ f⁻¹(q)` is finite.
pub fn strong_limit_points(f: &ProfileFunction, ideal: &IdealSpec, space: &PmSpace) -> Result<Vec<LimitPoint>> {
    ideal.ensure_nontrivial()?;
    let nf = ideal.normal_form()?;
    let outside = nf.core.union(&nf.slack)?.complement();
    let admissible = outside.is_empty();
    let mut out = Vec::new();
    for q in f.range() {
        check_point(space, q)?;
        let pq = f.preimage_of(&[q]);
        let witness = if !ideal.contains(&pq)? {
            Some(pq.clone())
        } else {
            match outside.min_element() {
                Some(x) => Some(pq.union(&SymbolicSet::finite([x]))?),
                None => None,
            }
        };
        if admissible && witness.is_some() == ideal.contains(&pq)? {
            return Err(Error::Search(format!("limit point decision for #{q} disagrees with membership")));
        }
        if let Some(m) = witness {
            if ideal.contains(&m)? || !m.difference(&pq)?.is_finite() {
                return Err(Error::Search(format!("limit point witness {m} failed verification")));
            }
            out.push(LimitPoint { point: q, degenerate: m.is_finite(), witness_m: m });
        }
    }
    Ok(out)
}

/// Strong-`I^K` limit points: some `M` with `M ∉ I`, `M ∉ K` and
/// `M ∖ f⁻¹(q) ∈ K`.
pub fn strong_ik_limit_points(
    f: &ProfileFunction,
    i: &IdealSpec,
    k: &IdealSpec,
    space: &PmSpace,
) -> Result<Vec<LimitPoint>> {
    i.ensure_nontrivial()?;
    k.ensure_nontrivial()?;
    let (ni, nk) = (i.normal_form()?, k.normal_form()?);
    let fresh = nk.slack.difference(&ni.core.union(&ni.slack)?)?;
    let mut out = Vec::new();
    for q in f.range() {
        check_point(space, q)?;
        let pq = f.preimage_of(&[q]);
        if k.contains(&pq)? {
            continue;
        }
        let x = pq.union(&nk.core)?;
        let witness = if !i.contains(&x)? {
            Some(x)
        } else {
            match fresh.min_element() {
                Some(n) => Some(x.union(&SymbolicSet::finite([n]))?),
                None => None,
            }
        };
        if let Some(m) = witness {
            if i.contains(&m)? || k.contains(&m)? || !k.contains(&m.difference(&pq)?)? {
                return Err(Error::Search(format!("limit point witness {m} failed verification")));
            }
            out.push(LimitPoint { point: q, degenerate: m.is_finite(), witness_m: m });
        }
    }
    Ok(out)
}

/// Non-degenerate points of a limit point list.
pub fn proper_points(points: &[LimitPoint]) -> Vec<PointId> {
    points.iter().filter(|l| !l.degenerate).map(|l| l.point).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::int;

    fn ap(a: u64, m: u64) -> SymbolicSet {
        SymbolicSet::progression(a, m).unwrap()
    }

    /// Three collinear points at 0, 1, 2.
    fn line() -> PmSpace {
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let mut d = BTreeMap::new();
        for (i, a) in names.iter().enumerate() {
            for (j, b) in names.iter().enumerate() {
                d.insert((a.clone(), b.clone()), int((i as i64 - j as i64).abs()));
            }
        }
        PmSpace::from_metric(names, &d).unwrap()
    }

    fn two_valued(a: &SymbolicSet) -> ProfileFunction {
        ProfileFunction::new(vec![(a.complement(), 0), (a.clone(), 1)], 3).unwrap()
    }

    #[test]
    fn partition_is_validated() {
        let overlap = ProfileFunction::new(vec![(ap(0, 2), 0), (ap(0, 3), 1), (ap(1, 2), 1)], 2);
        assert!(matches!(overlap, Err(Error::Partition(_))));
        let gap = ProfileFunction::new(vec![(ap(0, 2), 0)], 2);
        assert!(matches!(gap, Err(Error::Partition(m)) if m.contains('1')));
        assert!(matches!(ProfileFunction::new(vec![(SymbolicSet::all(), 5)], 2), Err(Error::UnknownPoint(_))));
    }

    #[test]
    fn preimages() {
        let b = ap(0, 3);
        let f = two_valued(&b);
        assert_eq!(f.preimage(|_| true), SymbolicSet::all());
        assert_eq!(f.preimage(|_| false), SymbolicSet::empty());
        assert_eq!(f.preimage_of(&[0]), b.complement());
        assert_eq!(f.value_at(6), Some(1));
    }

    #[test]
    fn fin_convergence() {
        let s = line();
        assert!(fin_converges(&ProfileFunction::constant(0), &s, 0).unwrap().converges);
        let f = two_valued(&SymbolicSet::finite([2, 9]));
        let v = fin_converges(&f, &s, 0).unwrap();
        assert!(v.converges);
        assert_eq!(v.threshold_trace.first().unwrap().threshold, int(1));
        let g = two_valued(&ap(1, 2));
        let v = fin_converges(&g, &s, 0).unwrap();
        assert!(!v.converges && v.failure_reason.is_some());
    }

    #[test]
    fn example_with_two_progressions() {
        let s = line();
        let i = IdealSpec::powerset(ap(0, 2));
        let k = IdealSpec::powerset(ap(0, 3));
        let f = two_valued(&ap(0, 3));
        assert!(!strong_converges(&f, &i, &s, 0).unwrap().converges);
        assert!(strong_converges(&f, &k, &s, 0).unwrap().converges);
        let v = strong_ik_converges(&f, &i, &k, &s, 0).unwrap();
        assert!(v.converges);
        let m = v.witness_m.unwrap();
        assert!(i.contains(&m.complement()).unwrap());
        assert!(m.complement().is_subset(&ap(0, 3)).unwrap());
    }

    #[test]
    fn strong_k_convergence_gives_full_witness() {
        let s = line();
        let f = two_valued(&ap(0, 3));
        let v = strong_ik_converges(&f, &IdealSpec::powerset(ap(1, 2)), &IdealSpec::powerset(ap(0, 3)), &s, 0)
            .unwrap();
        assert_eq!(v.witness_m, Some(SymbolicSet::all()));
    }

    #[test]
    fn istar() {
        let s = line();
        let a = ap(0, 4);
        let i = IdealSpec::powerset(a.clone());
        let v = strong_istar_converges(&two_valued(&a), &i, &s, 0).unwrap();
        assert_eq!(v.witness_m, Some(a.complement()));
        let evens_only = two_valued(&ap(1, 2));
        assert!(!strong_istar_converges(&evens_only, &IdealSpec::Fin, &s, 0).unwrap().converges);
        assert!(strong_istar_converges(&ProfileFunction::constant(2), &IdealSpec::Fin, &s, 2).unwrap().converges);
    }

    #[test]
    fn trace_is_decreasing_and_complete() {
        let s = line();
        let f = ProfileFunction::new(vec![(ap(0, 3), 0), (ap(1, 3), 1), (ap(2, 3), 2)], 3).unwrap();
        let v = strong_converges(&f, &IdealSpec::Fin, &s, 1).unwrap();
        let keys: Vec<Rational> = v.threshold_trace.iter().map(|e| e.threshold.clone()).collect();
        assert_eq!(keys, vec![int(1), zero()]);
        assert!(v.threshold_trace[0].in_ideal);
        assert!(!v.threshold_trace[1].in_ideal);
    }

    #[test]
    fn trivial_ideals_are_rejected() {
        let s = line();
        let f = ProfileFunction::constant(0);
        let trivial = IdealSpec::powerset(SymbolicSet::all());
        assert!(matches!(strong_converges(&f, &trivial, &s, 0), Err(Error::TrivialIdeal(_))));
        assert!(strong_ik_converges(&f, &IdealSpec::Fin, &trivial, &s, 0).is_err());
        assert!(strong_cauchy(&f, &trivial, &s).is_err());
    }

    #[test]
    fn cauchy() {
        let s = line();
        assert!(strong_cauchy(&ProfileFunction::constant(1), &IdealSpec::Fin, &s).unwrap().cauchy);
        let alternating = ProfileFunction::new(vec![(ap(0, 2), 0), (ap(1, 2), 2)], 3).unwrap();
        assert!(!strong_cauchy(&alternating, &IdealSpec::Fin, &s).unwrap().cauchy);
        let odd = IdealSpec::powerset(ap(1, 2));
        assert!(strong_cauchy(&alternating, &odd, &s).unwrap().cauchy);
        let f = two_valued(&ap(0, 3));
        let i = IdealSpec::powerset(ap(0, 2));
        let k = IdealSpec::powerset(ap(0, 3));
        let v = strong_ik_cauchy(&f, &i, &k, &s).unwrap();
        assert!(v.cauchy);
        assert_eq!(v.witness_m, Some(SymbolicSet::all()));
        assert!(!strong_ik_cauchy(&alternating, &IdealSpec::Fin, &IdealSpec::Fin, &s).unwrap().cauchy);
    }

    #[test]
    fn limit_points() {
        let s = line();
        let alternating = ProfileFunction::new(vec![(ap(0, 2), 0), (ap(1, 2), 1)], 3).unwrap();
        let lp = strong_limit_points(&alternating, &IdealSpec::Fin, &s).unwrap();
        assert_eq!(proper_points(&lp), vec![0, 1]);
        let odd_closed = IdealSpec::generated(vec![ap(1, 2)], true);
        assert_eq!(proper_points(&strong_limit_points(&alternating, &odd_closed, &s).unwrap()), vec![0]);
        let c = ProfileFunction::constant(2);
        assert_eq!(proper_points(&strong_limit_points(&c, &IdealSpec::Fin, &s).unwrap()), vec![2]);
        let ik = strong_ik_limit_points(&alternating, &IdealSpec::Fin, &IdealSpec::Fin, &s).unwrap();
        assert_eq!(proper_points(&ik), vec![0, 1]);
        let ik = strong_ik_limit_points(&c, &IdealSpec::Fin, &IdealSpec::Fin, &s).unwrap();
        assert_eq!(proper_points(&ik), vec![2]);
    }

    #[test]
    fn degenerate_witness_for_non_admissible_ideal() {
        let s = line();
        let f = two_valued(&SymbolicSet::finite([4]));
        let i = IdealSpec::powerset(ap(0, 2));
        let lp = strong_limit_points(&f, &i, &s).unwrap();
        assert_eq!(proper_points(&lp), vec![0]);
        let y = lp.iter().find(|l| l.point == 1).unwrap();
        assert!(y.degenerate);
        assert_eq!(y.witness_m, SymbolicSet::finite([1, 4]));
    }

    #[test]
    fn relabel_and_modify() {
        let f = two_valued(&ap(0, 3));
        let g = f.relabel(&[2, 2, 2]).unwrap();
        assert_eq!(g.range(), vec![2]);
        let m = f.modified(&ap(0, 2), 0).unwrap();
        assert_eq!(m.preimage_of(&[1]), ap(0, 6));
    }
}
