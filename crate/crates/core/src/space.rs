//! Finite probabilistic metric spaces and their strong topology.
//!
//! Every neighborhood query goes through the threshold table
//! `t*(a, b) = d_L(F_ab, ε_0)`: `b` lies in the strong `t`-neighborhood of `a`
//! exactly when `t*(a, b) < t`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::ddf::Ddf;
use crate::error::{Error, Result};
use crate::levy::distance_to_identity;
use crate::num::{int, one, show, Rational};
use crate::triangle::{TNorm, TriangleFn};

pub type PointId = usize;

#[derive(Clone, Debug)]
pub struct PmSpace {
    points: Vec<String>,
    matrix: Vec<Vec<Ddf>>,
    triangle: TriangleFn,
    thresholds: Vec<Vec<Rational>>,
}

/// Outcome of the four axiom checks; `None` means the axiom holds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub identity: Option<String>,
    pub separation: Option<(String, String)>,
    pub symmetry: Option<(String, String)>,
    pub triangle: Option<(String, String, String)>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.identity.is_none()
            && self.separation.is_none()
            && self.symmetry.is_none()
            && self.triangle.is_none()
    }
}

impl PmSpace {
    /// Builds a space from an explicit d.d.f. matrix. A missing `(a, b)` entry
    /// is taken from `(b, a)`; a missing diagonal entry defaults to `ε_0`.
    pub fn new(
        points: Vec<String>,
        entries: &BTreeMap<(String, String), Ddf>,
        triangle: TriangleFn,
    ) -> Result<Self> {
        let index = index_points(&points)?;
        for (a, b) in entries.keys() {
            for p in [a, b] {
                if !index.contains_key(p) {
                    return Err(Error::UnknownPoint(p.clone()));
                }
            }
        }
        let mut matrix = Vec::with_capacity(points.len());
        for a in &points {
            let mut row = Vec::with_capacity(points.len());
            for b in &points {
                let entry = entries
                    .get(&(a.clone(), b.clone()))
                    .or_else(|| entries.get(&(b.clone(), a.clone())))
                    .cloned();
                match entry {
                    Some(f) => row.push(f),
                    None if a == b => row.push(Ddf::identity()),
                    None => return Err(Error::MissingEntry(a.clone(), b.clone())),
                }
            }
            matrix.push(row);
        }
        let thresholds =
            matrix.iter().map(|row| row.iter().map(distance_to_identity).collect()).collect();
        Ok(PmSpace { points, matrix, triangle, thresholds })
    }

    /// Menger space of a metric: `F_ab = ε_{d(a,b)}` under `τ_min`.
    /// Distances are given per unordered pair.
    pub fn from_metric(
        points: Vec<String>,
        dist: &BTreeMap<(String, String), Rational>,
    ) -> Result<Self> {
        let index = index_points(&points)?;
        let n = points.len();
        let mut d = vec![vec![None::<Rational>; n]; n];
        for ((a, b), v) in dist {
            let i = *index.get(a).ok_or_else(|| Error::UnknownPoint(a.clone()))?;
            let j = *index.get(b).ok_or_else(|| Error::UnknownPoint(b.clone()))?;
            if v.is_negative() {
                return Err(Error::Metric(format!("d({a}, {b}) = {} is negative", show(v))));
            }
            for (x, y) in [(i, j), (j, i)] {
                if let Some(prev) = &d[x][y] {
                    if prev != v {
                        return Err(Error::Metric(format!("d({a}, {b}) is not symmetric")));
                    }
                }
                d[x][y] = Some(v.clone());
            }
        }
        let mut full = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                match (&d[i][j], i == j) {
                    (Some(v), true) if !v.is_zero() => {
                        return Err(Error::Metric(format!("d({0}, {0}) must be 0", points[i])))
                    }
                    (Some(v), false) if v.is_zero() => {
                        return Err(Error::Metric(format!(
                            "d({}, {}) = 0 for distinct points",
                            points[i], points[j]
                        )))
                    }
                    (None, false) => {
                        return Err(Error::Metric(format!(
                            "missing distance ({}, {})",
                            points[i], points[j]
                        )))
                    }
                    (Some(v), _) => full[i][j] = v.clone(),
                    (None, true) => {}
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if full[a][c] > &full[a][b] + &full[b][c] {
                        return Err(Error::Metric(format!(
                            "triangle inequality fails on ({}, {}, {})",
                            points[a], points[b], points[c]
                        )));
                    }
                }
            }
        }
        let mut entries = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                entries.insert((points[i].clone(), points[j].clone()), Ddf::unit_step(full[i][j].clone())?);
            }
        }
        Self::new(points, &entries, TriangleFn::new(TNorm::Minimum))
    }

    /// Same space under another triangle function.
    pub fn with_triangle(mut self, triangle: TriangleFn) -> Self {
        self.triangle = triangle;
        self
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn name(&self, p: PointId) -> &str {
        &self.points[p]
    }

    pub fn id(&self, name: &str) -> Result<PointId> {
        self.points.iter().position(|p| p == name).ok_or_else(|| Error::UnknownPoint(name.into()))
    }

    pub fn ddf(&self, a: PointId, b: PointId) -> &Ddf {
        &self.matrix[a][b]
    }

    pub fn triangle(&self) -> TriangleFn {
        self.triangle
    }

    pub fn threshold(&self, a: PointId, b: PointId) -> &Rational {
        &self.thresholds[a][b]
    }

    /// Sorted distinct threshold values over all pairs (including 0).
    pub fn threshold_values(&self) -> Vec<Rational> {
        let set: BTreeSet<&Rational> = self.thresholds.iter().flatten().collect();
        set.into_iter().cloned().collect()
    }

    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.len();
        let name = |i: usize| self.points[i].clone();
        let mut report = AxiomReport::default();
        report.identity = (0..n).find(|&a| !self.matrix[a][a].is_identity()).map(name);
        report.separation = pairs(n)
            .find(|&(a, b)| a != b && self.matrix[a][b].is_identity())
            .map(|(a, b)| (name(a), name(b)));
        report.symmetry = pairs(n)
            .find(|&(a, b)| self.matrix[a][b] != self.matrix[b][a])
            .map(|(a, b)| (name(a), name(b)));
        'outer: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let bound = self.triangle.tau(&self.matrix[a][b], &self.matrix[b][c]);
                    if !self.matrix[a][c].dominates(&bound) {
                        report.triangle = Some((name(a), name(b), name(c)));
                        break 'outer;
                    }
                }
            }
        }
        report
    }

    /// `Ok` when all four axioms hold.
    pub fn validate(&self) -> Result<()> {
        let r = self.check_axioms();
        if let Some(a) = r.identity {
            return Err(Error::Precondition(format!("F({a}, {a}) is not the identity step")));
        }
        if let Some((a, b)) = r.separation {
            return Err(Error::Precondition(format!("F({a}, {b}) equals ε_0 for distinct points")));
        }
        if let Some((a, b)) = r.symmetry {
            return Err(Error::Precondition(format!("F({a}, {b}) != F({b}, {a})")));
        }
        if let Some((a, b, c)) = r.triangle {
            return Err(Error::Precondition(format!("triangle axiom fails on ({a}, {b}, {c})")));
        }
        Ok(())
    }

    /// Strong `t`-neighborhood `{b : t*(a, b) < t}`.
    pub fn strong_neighborhood(&self, a: PointId, t: &Rational) -> Result<BTreeSet<PointId>> {
        self.check_point(a)?;
        check_positive(t)?;
        Ok((0..self.len()).filter(|&b| self.thresholds[a][b] < *t).collect())
    }

    /// The same neighborhood straight from the definition `F_ab(t) > 1 - t`.
    pub fn strong_neighborhood_direct(&self, a: PointId, t: &Rational) -> Result<BTreeSet<PointId>> {
        self.check_point(a)?;
        check_positive(t)?;
        Ok((0..self.len()).filter(|&b| self.matrix[a][b].value_at(t) > one() - t).collect())
    }

    /// A `t > 0` whose strong neighborhoods of `a` and `b` are disjoint.
    pub fn hausdorff_witness(&self, a: PointId, b: PointId) -> Result<Rational> {
        self.check_point(a)?;
        self.check_point(b)?;
        if a == b {
            return Err(Error::Precondition("separation needs two distinct points".into()));
        }
        let floor = crate::num::rat(1, 1_000_000_000_000);
        let mut t = self.thresholds[a][b].clone() / int(2);
        while t >= floor {
            let na = self.strong_neighborhood(a, &t)?;
            let nb = self.strong_neighborhood(b, &t)?;
            if na.is_disjoint(&nb) {
                return Ok(t);
            }
            t /= int(2);
        }
        Err(Error::Search(format!(
            "no separating neighborhoods for ({}, {}) above resolution",
            self.points[a], self.points[b]
        )))
    }

    /// Strong `t`-vicinity `{(a, b) : F_ab(t) > 1 - t}`.
    pub fn vicinity(&self, t: &Rational) -> Result<BTreeSet<(PointId, PointId)>> {
        check_positive(t)?;
        Ok(pairs(self.len()).filter(|&(a, b)| self.thresholds[a][b] < *t).collect())
    }

    /// Largest `η <= t` on the threshold grid with `U(η)∘U(η) ⊆ U(t)`.
    ///
    /// `U(η)` only changes when `η` crosses a threshold, and validity is
    /// downward closed in `η`, so the optimum is `t` itself or one of the
    /// thresholds below it.
    pub fn find_eta(&self, t: &Rational, resolution: &Rational) -> Result<Rational> {
        check_positive(t)?;
        check_positive(resolution)?;
        let target = self.vicinity(t)?;
        let mut candidates: Vec<Rational> = self
            .threshold_values()
            .into_iter()
            .filter(|v| v.is_positive() && v < t)
            .collect();
        candidates.push(t.clone());
        candidates.sort();
        for eta in candidates.iter().rev() {
            if eta < resolution {
                break;
            }
            let u = self.vicinity(eta)?;
            if compose(&u, &u).is_subset(&target) {
                return Ok(eta.clone());
            }
        }
        Err(Error::Search(format!(
            "no η >= {} with U(η)∘U(η) ⊆ U({}) in space {:?}",
            show(resolution),
            show(t),
            self.points
        )))
    }

    fn check_point(&self, a: PointId) -> Result<()> {
        if a < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownPoint(format!("#{a}")))
        }
    }
}

/// Relational composition `{(a, c) : (a, b) ∈ r, (b, c) ∈ s}`.
pub fn compose(
    r: &BTreeSet<(PointId, PointId)>,
    s: &BTreeSet<(PointId, PointId)>,
) -> BTreeSet<(PointId, PointId)> {
    let mut out = BTreeSet::new();
    for &(a, b) in r {
        for &(_, c) in s.range((b, 0)..=(b, usize::MAX)) {
            out.insert((a, c));
        }
    }
    out
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}

fn check_positive(t: &Rational) -> Result<()> {
    if t.is_positive() {
        Ok(())
    } else {
        Err(Error::Domain(format!("t = {} must be positive", show(t))))
    }
}

fn index_points(points: &[String]) -> Result<BTreeMap<String, usize>> {
    if points.is_empty() {
        return Err(Error::Precondition("a PM space needs at least one point".into()));
    }
    let mut index = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        if index.insert(p.clone(), i).is_some() {
            return Err(Error::Precondition(format!("duplicate point `{p}`")));
        }
    }
    Ok(index)
}
