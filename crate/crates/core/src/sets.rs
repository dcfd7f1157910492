//! Eventually periodic subsets of ℕ = {1, 2, 3, ...}.
//!
//! A [`SymbolicSet`] is a residue pattern modulo `m` corrected by finitely
//! many exceptions. The canonical form uses the minimal period and keeps only
//! exceptions that disagree with the pattern, so two sets are equal exactly
//! when their canonical forms are.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::num::Rational;

pub const DEFAULT_MODULUS_CAP: u64 = 1_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolicSet {
    modulus: u64,
    residues: Vec<u64>,
    added: BTreeSet<u64>,
    removed: BTreeSet<u64>,
}

impl SymbolicSet {
    pub fn empty() -> Self {
        SymbolicSet { modulus: 1, residues: vec![], added: BTreeSet::new(), removed: BTreeSet::new() }
    }

    pub fn all() -> Self {
        SymbolicSet { modulus: 1, residues: vec![0], added: BTreeSet::new(), removed: BTreeSet::new() }
    }

    /// A finite set; `0` is not a natural number and is ignored.
    pub fn finite<I: IntoIterator<Item = u64>>(elements: I) -> Self {
        let added: BTreeSet<u64> = elements.into_iter().filter(|&n| n >= 1).collect();
        SymbolicSet { modulus: 1, residues: vec![], added, removed: BTreeSet::new() }
    }

    /// `{n >= 1 : n ≡ a (mod m)}`.
    pub fn progression(a: u64, m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("modulus must be positive".into()));
        }
        check_cap(m)?;
        let mut mask = vec![false; m as usize];
        mask[(a % m) as usize] = true;
        Ok(Self::build(m, mask, BTreeMap::new()))
    }

    /// Residue pattern modulo `m` with explicit exceptions; the result is
    /// canonicalized.
    pub fn from_parts<R, A, D>(m: u64, residues: R, added: A, removed: D) -> Result<Self>
    where
        R: IntoIterator<Item = u64>,
        A: IntoIterator<Item = u64>,
        D: IntoIterator<Item = u64>,
    {
        if m == 0 {
            return Err(Error::Domain("modulus must be positive".into()));
        }
        check_cap(m)?;
        let mut mask = vec![false; m as usize];
        for r in residues {
            mask[(r % m) as usize] = true;
        }
        let mut exceptions = BTreeMap::new();
        for n in added.into_iter().filter(|&n| n >= 1) {
            exceptions.insert(n, true);
        }
        for n in removed.into_iter().filter(|&n| n >= 1) {
            if exceptions.insert(n, false) == Some(true) {
                return Err(Error::Domain(format!("{n} is both added and removed")));
            }
        }
        Ok(Self::build(m, mask, exceptions))
    }

    fn build(m: u64, mask: Vec<bool>, exceptions: BTreeMap<u64, bool>) -> Self {
        let period = minimal_period(&mask);
        let residues: Vec<u64> = (0..period).filter(|&r| mask[r as usize]).collect();
        let mut set = SymbolicSet { modulus: period, residues, added: BTreeSet::new(), removed: BTreeSet::new() };
        for (n, member) in exceptions {
            match (member, set.periodic(n)) {
                (true, false) => {
                    set.added.insert(n);
                }
                (false, true) => {
                    set.removed.insert(n);
                }
                _ => {}
            }
        }
        debug_assert!(m.is_multiple_of(period));
        set
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn added(&self) -> &BTreeSet<u64> {
        &self.added
    }

    pub fn removed(&self) -> &BTreeSet<u64> {
        &self.removed
    }

    fn periodic(&self, n: u64) -> bool {
        self.residues.binary_search(&(n % self.modulus)).is_ok()
    }

    pub fn contains(&self, n: u64) -> bool {
        if n == 0 {
            return false;
        }
        if self.added.contains(&n) {
            return true;
        }
        if self.removed.contains(&n) {
            return false;
        }
        self.periodic(n)
    }

    /// Largest exceptional element, 0 when there is none.
    pub fn max_exception(&self) -> u64 {
        self.added.iter().chain(self.removed.iter()).copied().max().unwrap_or(0)
    }

    pub fn is_finite(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty() && self.added.is_empty()
    }

    pub fn is_all(&self) -> bool {
        self.modulus == 1 && self.residues == [0] && self.removed.is_empty()
    }

    /// `|residues| / m`; exceptions have density zero.
    pub fn natural_density(&self) -> Rational {
        Rational::new(BigInt::from(self.residues.len()), BigInt::from(self.modulus))
    }

    pub fn complement(&self) -> Self {
        let residues = (0..self.modulus).filter(|r| self.residues.binary_search(r).is_err()).collect();
        SymbolicSet {
            modulus: self.modulus,
            residues,
            added: self.removed.clone(),
            removed: self.added.clone(),
        }
    }

    fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Result<Self> {
        let m = self.modulus.lcm(&other.modulus);
        check_cap(m)?;
        let mask = (0..m).map(|r| op(self.periodic(r), other.periodic(r))).collect();
        let mut exceptions = BTreeMap::new();
        for &n in self.added.iter().chain(&self.removed).chain(&other.added).chain(&other.removed) {
            exceptions.insert(n, op(self.contains(n), other.contains(n)));
        }
        Ok(Self::build(m, mask, exceptions))
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a && !b)
    }

    pub fn symmetric_difference(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a != b)
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }

    /// Smallest element of `self ∖ other`, if any.
    pub fn subset_witness(&self, other: &Self) -> Result<Option<u64>> {
        Ok(self.difference(other)?.min_element())
    }

    pub fn min_element(&self) -> Option<u64> {
        let from_added = self.added.iter().next().copied();
        let from_pattern = if self.residues.is_empty() {
            None
        } else {
            let limit = self.removed.iter().next_back().copied().unwrap_or(0) + self.modulus + 1;
            (1..=limit).find(|&n| self.periodic(n) && !self.removed.contains(&n))
        };
        match (from_added, from_pattern) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// Elements `<= limit`, ascending.
    pub fn elements_up_to(&self, limit: u64) -> Vec<u64> {
        (1..=limit).filter(|&n| self.contains(n)).collect()
    }

    /// `|{k in self : k <= n}|`.
    pub fn count_up_to(&self, n: u64) -> u64 {
        if n == 0 {
            return 0;
        }
        let m = self.modulus;
        let full = n / m;
        let mut count = full * self.residues.len() as u64;
        // residues hit once more in the tail (full*m, n]
        let tail_start = full * m + 1;
        count += (tail_start..=n).filter(|&k| self.periodic(k)).count() as u64;
        count += self.added.range(..=n).count() as u64;
        count -= self.removed.range(..=n).count() as u64;
        count
    }
}

fn minimal_period(mask: &[bool]) -> u64 {
    let m = mask.len();
    (1..=m)
        .filter(|d| m.is_multiple_of(*d))
        .find(|&d| (0..m).all(|r| mask[r] == mask[r % d]))
        .unwrap_or(m) as u64
}

fn check_cap(m: u64) -> Result<()> {
    if m > DEFAULT_MODULUS_CAP {
        Err(Error::ModulusCap { modulus: m, cap: DEFAULT_MODULUS_CAP })
    } else {
        Ok(())
    }
}

fn list(items: &BTreeSet<u64>) -> String {
    let parts: Vec<String> = items.iter().map(u64::to_string).collect();
    format!("finite:[{}]", parts.join(","))
}

/// Renders in the scenario set syntax, e.g. `(ap:0,2 | finite:[3]) - finite:[4]`.
impl fmt::Display for SymbolicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = if self.modulus == 1 && self.residues == [0] {
            vec!["all".into()]
        } else {
            self.residues.iter().map(|r| format!("ap:{r},{}", self.modulus)).collect()
        };
        if !self.added.is_empty() {
            terms.push(list(&self.added));
        }
        let body = if terms.is_empty() { "empty".to_string() } else { terms.join(" | ") };
        if self.removed.is_empty() {
            f.write_str(&body)
        } else if terms.len() > 1 {
            write!(f, "({body}) - {}", list(&self.removed))
        } else {
            write!(f, "{body} - {}", list(&self.removed))
        }
    }
}

impl fmt::Debug for SymbolicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymbolicSet({self})")
    }
}

impl Serialize for SymbolicSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
