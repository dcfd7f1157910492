//! Brute-force oracles over the finite Boolean algebra of a scenario.
//!
//! All sets of a scenario are unions of atoms: the singletons `{1}, …, {W}`
//! below the largest exception `W`, and the tail classes
//! `{n > W : n ≡ r mod L}` for the common modulus `L`. The oracles here decide
//! membership, joins, convergence and limit points by searching over atom
//! unions and by unfolding definitions, without the normal form used by the
//! production decisions.

use num_integer::Integer;

use crate::convergence::ProfileFunction;
use crate::error::{Error, Result};
use crate::ideal::IdealSpec;
use crate::num::{int, one, zero, Rational};
use crate::sets::SymbolicSet;
use crate::space::{PmSpace, PointId};

/// Atom count above which exhaustive split enumeration is skipped.
pub const EXHAUSTIVE_ATOMS: usize = 6;
/// Hard cap on the number of atoms.
pub const MAX_ATOMS: usize = 64;

#[derive(Clone, Debug)]
pub struct Catalog {
    window: u64,
    modulus: u64,
    atoms: Vec<SymbolicSet>,
}

impl Catalog {
    pub fn new<'a>(sets: impl IntoIterator<Item = &'a SymbolicSet>) -> Result<Self> {
        let mut window = 0;
        let mut modulus = 1u64;
        for s in sets {
            window = window.max(s.max_exception());
            modulus = modulus.lcm(&s.modulus());
        }
        if window as usize + modulus as usize > MAX_ATOMS {
            return Err(Error::Cap(format!("catalog with window {window} and modulus {modulus}")));
        }
        let mut atoms: Vec<SymbolicSet> = (1..=window).map(|n| SymbolicSet::finite([n])).collect();
        for r in 0..modulus {
            let low = (1..=window).filter(|n| n % modulus == r);
            atoms.push(SymbolicSet::from_parts(modulus, [r], [], low)?);
        }
        Ok(Catalog { window, modulus, atoms })
    }

    /// Catalog for every set mentioned by the ideals, the functions and `extra`.
    pub fn for_scenario(ideals: &[&IdealSpec], functions: &[&ProfileFunction], extra: &[SymbolicSet]) -> Result<Self> {
        let mut sets: Vec<SymbolicSet> = extra.to_vec();
        for i in ideals {
            sets.extend(i.mentioned_sets());
        }
        for f in functions {
            sets.extend(f.pieces().map(|(a, _)| a.clone()));
        }
        Catalog::new(&sets)
    }

    pub fn window(&self) -> u64 {
        self.window
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn atoms(&self) -> &[SymbolicSet] {
        &self.atoms
    }

    /// Indices of the atoms making up `a`; errors if `a` is not such a union.
    pub fn decompose(&self, a: &SymbolicSet) -> Result<Vec<usize>> {
        let mut idx = Vec::new();
        for (k, atom) in self.atoms.iter().enumerate() {
            let rep = atom.min_element().expect("atoms are nonempty");
            if a.contains(rep) {
                idx.push(k);
            }
        }
        if self.assemble(&idx)? != *a {
            return Err(Error::Precondition(format!("{a} is not a union of catalog atoms")));
        }
        Ok(idx)
    }

    pub fn assemble(&self, idx: &[usize]) -> Result<SymbolicSet> {
        let mut out = SymbolicSet::empty();
        for &k in idx {
            out = out.union(&self.atoms[k])?;
        }
        Ok(out)
    }

    /// Smallest element of each atom, i.e. one candidate per finite extension class.
    pub fn representatives(&self) -> Vec<u64> {
        self.atoms.iter().map(|a| a.min_element().expect("atoms are nonempty")).collect()
    }

    /// Membership by unfolding each variant's definition.
    pub fn contains(&self, ideal: &IdealSpec, a: &SymbolicSet) -> Result<bool> {
        match ideal {
            IdealSpec::Fin => Ok(a.is_finite()),
            IdealSpec::DensityZero => Ok(a.natural_density() == zero()),
            IdealSpec::PowerSet(m) => a.is_subset(m),
            IdealSpec::Generated { generators, closure } => {
                let mut cover = SymbolicSet::empty();
                for g in generators {
                    cover = cover.union(g)?;
                }
                let rest = a.difference(&cover)?;
                Ok(rest.is_empty() || (*closure && rest.is_finite()))
            }
            IdealSpec::Join(l, r) => Ok(self.split(l, r, a)?.is_some()),
            IdealSpec::Restrict(b, m) => Ok(a.is_subset(m)? && self.contains(b, a)?),
        }
    }

    /// Pieces of `a`: each atom inside `a`, a cofinite part of a tail atom,
    /// or single elements where `a` meets an atom finitely.
    fn parts(&self, a: &SymbolicSet) -> Result<Vec<SymbolicSet>> {
        let mut out = Vec::new();
        for atom in &self.atoms {
            let part = a.intersect(atom)?;
            if part.is_finite() {
                out.extend(part.elements_up_to(part.max_exception()).into_iter().map(|n| SymbolicSet::finite([n])));
            } else {
                out.push(part);
            }
        }
        Ok(out)
    }

    /// Searches for `A = B ∪ C` with `B ∈ left`, `C ∈ right` among unions of
    /// the parts of `A`.
    ///
    /// Small sets are split every possible way; larger ones part by part,
    /// which is complete because ideals are closed under finite unions.
    pub fn split(&self, left: &IdealSpec, right: &IdealSpec, a: &SymbolicSet) -> Result<Option<(SymbolicSet, SymbolicSet)>> {
        let parts = self.parts(a)?;
        if parts.len() <= EXHAUSTIVE_ATOMS {
            for mask in 0u64..1 << parts.len() {
                let mut b = SymbolicSet::empty();
                for (j, part) in parts.iter().enumerate() {
                    if mask >> j & 1 == 1 {
                        b = b.union(part)?;
                    }
                }
                let c = a.difference(&b)?;
                if self.contains(left, &b)? && self.contains(right, &c)? {
                    return Ok(Some((b, c)));
                }
            }
            return Ok(None);
        }
        let mut b = SymbolicSet::empty();
        for part in &parts {
            if self.contains(left, part)? {
                b = b.union(part)?;
            } else if !self.contains(right, part)? {
                return Ok(None);
            }
        }
        let c = a.difference(&b)?;
        Ok(Some((b, c)))
    }

    /// Strong-`I` convergence with neighborhoods read off the d.d.f.s.
    pub fn strong_converges(&self, f: &ProfileFunction, ideal: &IdealSpec, space: &PmSpace, p: PointId) -> Result<bool> {
        for t in probe_values(space) {
            let near = space.strong_neighborhood_direct(p, &t)?;
            let far = f.preimage(|q| !near.contains(&q));
            if !self.contains(ideal, &far)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Searches `M = (ℕ ∖ E) ∪ S` over atom unions `S ⊆ E` for a witness of
    /// strong-`I^K` convergence, checking each candidate by definition.
    pub fn strong_ik_witness(
        &self,
        f: &ProfileFunction,
        i: &IdealSpec,
        k: &IdealSpec,
        space: &PmSpace,
        p: PointId,
    ) -> Result<Option<SymbolicSet>> {
        let e = f.preimage(|q| q != p);
        let outside = e.complement();
        let idx = self.decompose(&e)?;
        let check = |m: &SymbolicSet| -> Result<bool> {
            Ok(self.contains(i, &m.complement())? && self.strong_converges(&f.modified(m, p)?, k, space, p)?)
        };
        if idx.len() <= EXHAUSTIVE_ATOMS {
            for mask in (0u64..1 << idx.len()).rev() {
                let chosen: Vec<usize> =
                    idx.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &a)| a).collect();
                let m = outside.union(&self.assemble(&chosen)?)?;
                if check(&m)? {
                    return Ok(Some(m));
                }
            }
            return Ok(None);
        }
        let mut m = outside;
        for &a in &idx {
            if !self.contains(i, &self.atoms[a])? {
                m = m.union(&self.atoms[a])?;
            }
        }
        Ok(if check(&m)? { Some(m) } else { None })
    }

    /// Strong-`I` limit points with a degeneracy flag, from the largest
    /// candidate `f⁻¹(q)` plus one representative of every atom.
    pub fn strong_limit_points(&self, f: &ProfileFunction, ideal: &IdealSpec) -> Result<Vec<(PointId, bool)>> {
        let reps = SymbolicSet::finite(self.representatives());
        let mut out = Vec::new();
        for q in f.range() {
            let pq = f.preimage_of(&[q]);
            let m = pq.union(&reps)?;
            if !self.contains(ideal, &m)? {
                out.push((q, m.is_finite()));
            }
        }
        Ok(out)
    }

    /// Strong-`I^K` limit points with a degeneracy flag, from the largest
    /// candidate `f⁻¹(q) ∪ C` with `C ∈ K` built from atoms and representatives.
    pub fn strong_ik_limit_points(&self, f: &ProfileFunction, i: &IdealSpec, k: &IdealSpec) -> Result<Vec<(PointId, bool)>> {
        let mut out = Vec::new();
        for q in f.range() {
            let pq = f.preimage_of(&[q]);
            let mut m = pq.clone();
            for (atom, rep) in self.atoms.iter().zip(self.representatives()) {
                if self.contains(k, atom)? {
                    m = m.union(atom)?;
                } else if self.contains(k, &SymbolicSet::finite([rep]))? {
                    m = m.union(&SymbolicSet::finite([rep]))?;
                }
            }
            if !self.contains(k, &m.difference(&pq)?)? {
                return Err(Error::Search(format!("catalog candidate {m} leaves K")));
            }
            if !self.contains(i, &m)? && !self.contains(k, &m)? {
                out.push((q, m.is_finite()));
            }
        }
        Ok(out)
    }

    /// Strong-`I`-Cauchy straight from the definition, trying one index per value as `m`.
    pub fn strong_cauchy(&self, f: &ProfileFunction, ideal: &IdealSpec, space: &PmSpace) -> Result<bool> {
        for t in probe_values(space) {
            let mut found = false;
            for (a, _) in f.pieces() {
                let m = a.min_element().expect("pieces are nonempty");
                let c = f.value_at(m).expect("partition covers ℕ");
                let near = space.strong_neighborhood_direct(c, &t)?;
                if self.contains(ideal, &f.preimage(|q| !near.contains(&q)))? {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Values of `t` in `(0, 1]` hitting every distinct neighborhood: each
/// threshold, each midpoint between consecutive thresholds, and `1`.
pub fn probe_values(space: &PmSpace) -> Vec<Rational> {
    let mut marks = space.threshold_values();
    marks.push(zero());
    marks.push(one());
    marks.sort();
    marks.dedup();
    let mut out = Vec::new();
    for w in marks.windows(2) {
        out.push((&w[0] + &w[1]) / int(2));
        out.push(w[1].clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convergence::{proper_points, strong_ik_limit_points, strong_limit_points};
    use crate::ideal::join_split;

    fn ap(a: u64, m: u64) -> SymbolicSet {
        SymbolicSet::progression(a, m).unwrap()
    }

    #[test]
    fn atoms_partition_the_naturals() {
        let cat = Catalog::new(&[ap(0, 4), SymbolicSet::finite([2, 5])]).unwrap();
        assert_eq!(cat.window(), 5);
        assert_eq!(cat.modulus(), 4);
        assert_eq!(cat.atoms().len(), 9);
        let all: Vec<usize> = (0..cat.atoms().len()).collect();
        assert!(cat.assemble(&all).unwrap().is_all());
        for n in 1..40 {
            assert_eq!(cat.atoms().iter().filter(|a| a.contains(n)).count(), 1);
        }
        assert_eq!(cat.decompose(&ap(0, 4)).unwrap().len(), 2);
        assert!(cat.decompose(&ap(0, 3)).is_err());
    }

    #[test]
    fn oracle_split_agrees_with_symbolic_join() {
        let l = IdealSpec::powerset(ap(0, 4));
        let r = IdealSpec::generated(vec![ap(3, 4)], true);
        let cat = Catalog::new(&[ap(0, 4), ap(3, 4), SymbolicSet::finite([1, 2])]).unwrap();
        for mask in 0u64..1 << cat.atoms().len() {
            let idx: Vec<usize> = (0..cat.atoms().len()).filter(|j| mask >> j & 1 == 1).collect();
            let a = cat.assemble(&idx).unwrap();
            let oracle = cat.split(&l, &r, &a).unwrap();
            let symbolic = join_split(&l, &r, &a).unwrap();
            assert_eq!(oracle.is_some(), symbolic.is_some(), "{a}");
        }
    }

    #[test]
    fn limit_points_agree_on_small_example() {
        let f = ProfileFunction::new(vec![(ap(0, 2), 0), (ap(1, 2), 1)], 2).unwrap();
        let cat = Catalog::for_scenario(&[], &[&f], &[]).unwrap();
        let odd = IdealSpec::generated(vec![ap(1, 2)], true);
        let names = vec!["x".to_string(), "y".to_string()];
        let mut d = std::collections::BTreeMap::new();
        d.insert(("x".to_string(), "y".to_string()), int(1));
        let space = PmSpace::from_metric(names, &d).unwrap();
        let sym = strong_limit_points(&f, &odd, &space).unwrap();
        let orc = cat.strong_limit_points(&f, &odd).unwrap();
        assert_eq!(proper_points(&sym), vec![0]);
        assert_eq!(orc, vec![(0, false)]);
        let ik = strong_ik_limit_points(&f, &IdealSpec::Fin, &IdealSpec::Fin, &space).unwrap();
        assert_eq!(proper_points(&ik), vec![0, 1]);
        assert_eq!(cat.strong_ik_limit_points(&f, &IdealSpec::Fin, &IdealSpec::Fin).unwrap(), vec![(0, false), (1, false)]);
    }

    #[test]
    fn probes_cover_unit_interval() {
        let names = vec!["x".to_string(), "y".to_string()];
        let mut d = std::collections::BTreeMap::new();
        d.insert(("x".to_string(), "y".to_string()), crate::num::rat(1, 2));
        let space = PmSpace::from_metric(names, &d).unwrap();
        let probes = probe_values(&space);
        assert_eq!(probes.last().unwrap(), &one());
        assert!(probes.iter().all(|t| t > &zero()));
        assert!(probes.contains(&crate::num::rat(1, 2)));
    }
}
