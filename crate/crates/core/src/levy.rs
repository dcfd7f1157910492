//! Modified Lévy (Sibley) distance between step d.d.f.s.
//!
//! `condition_holds(F, G, t)` is the sandwich condition
//! `F(s - t) - t <= G(s) <= F(s + t) + t` on the open window `(-1/t, 1/t)`.
//! It is decided exactly: all three step functions are constant between the
//! shifted breakpoints, so one probe per piece suffices.

use num_traits::Signed;

use crate::ddf::Ddf;
use crate::error::{Error, Result};
use crate::num::{from_f64, int, one, show, zero, Rational};

/// Default bisection tolerance.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Certified bracket around `d_L(F, G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevyResult {
    /// Upper end of the bracket (a safe overestimate).
    pub distance: Rational,
    pub lower: Rational,
    pub upper: Rational,
    pub tolerance: Rational,
}

impl LevyResult {
    pub fn distance_f64(&self) -> f64 {
        crate::num::to_f64(&self.distance)
    }
}

fn check_t(t: &Rational) -> Result<()> {
    if !t.is_positive() || t > &one() {
        return Err(Error::Domain(format!("t = {} outside (0, 1]", show(t))));
    }
    Ok(())
}

/// One-directional condition `(F, G; t)`.
pub fn condition_holds(f: &Ddf, g: &Ddf, t: &Rational) -> Result<bool> {
    check_t(t)?;
    let hi = t.recip();
    let lo = -hi.clone();
    let mut cuts: Vec<Rational> = g.breakpoints().cloned().collect();
    for x in f.breakpoints() {
        cuts.push(x + t);
        cuts.push(x - t);
    }
    cuts.retain(|c| c > &lo && c < &hi);
    cuts.sort();
    cuts.dedup();

    let mut probes = Vec::with_capacity(2 * cuts.len() + 1);
    let two = int(2);
    let mut prev = lo;
    for c in &cuts {
        probes.push((&prev + c) / &two);
        probes.push(c.clone());
        prev = c.clone();
    }
    probes.push((&prev + &hi) / &two);

    Ok(probes.iter().all(|s| {
        let gs = g.value_at(s);
        f.value_at(&(s - t)) - t <= gs && gs <= f.value_at(&(s + t)) + t
    }))
}

/// Both directions of the sandwich condition.
pub fn symmetric_condition(f: &Ddf, g: &Ddf, t: &Rational) -> Result<bool> {
    Ok(condition_holds(f, g, t)? && condition_holds(g, f, t)?)
}

/// `d_L(F, G)` by bisection on the monotone predicate `t -> (F,G;t) and (G,F;t)`.
///
/// The returned bracket satisfies `upper - lower <= tol`, the predicate holds
/// at `upper` and fails at `lower` unless `lower = 0`.
pub fn levy_distance(f: &Ddf, g: &Ddf, tol: &Rational) -> Result<LevyResult> {
    if !tol.is_positive() {
        return Err(Error::Domain(format!("tolerance {} must be positive", show(tol))));
    }
    let mut lower = zero();
    let mut upper = one();
    if !symmetric_condition(f, g, &upper)? {
        return Err(Error::Search("sandwich condition fails at t = 1".into()));
    }
    let two = int(2);
    while &(&upper - &lower) > tol {
        let mid = (&lower + &upper) / &two;
        if symmetric_condition(f, g, &mid)? {
            upper = mid;
        } else {
            lower = mid;
        }
    }
    Ok(LevyResult { distance: upper.clone(), lower, upper, tolerance: tol.clone() })
}

pub fn levy_distance_f64(f: &Ddf, g: &Ddf, tol: f64) -> Result<LevyResult> {
    levy_distance(f, g, &from_f64(tol)?)
}

/// Exact `d_L(G, ε_0)`.
///
/// Against `ε_0` the sandwich condition at `t` reduces to `G(t+) >= 1 - t`, so
/// the infimum is the smallest `t` on some constant piece `[a_k, a_{k+1})` of
/// `G(·+)` with `t >= 1 - v_k`. Every candidate is rational.
pub fn distance_to_identity(g: &Ddf) -> Rational {
    let jumps = g.jumps();
    let mut best = one();
    let mut consider = |start: &Rational, value: &Rational, end: Option<&Rational>| {
        let need = one() - value;
        let c = if &need > start { need } else { start.clone() };
        if end.is_none_or(|e| &c < e) && c < best {
            best = c;
        }
    };
    consider(&zero(), &zero(), jumps.first().map(|j| &j.at));
    for (k, j) in jumps.iter().enumerate() {
        consider(&j.at, &j.value, jumps.get(k + 1).map(|n| &n.at));
    }
    best
}

/// Checks `G(t) > 1 - t  <=>  d_L(G, ε_0) < t` for one `(G, t)`.
pub fn threshold_equivalence(g: &Ddf, t: &Rational) -> Result<bool> {
    check_t(t)?;
    let lhs = g.value_at(t) > one() - t;
    let rhs = &distance_to_identity(g) < t;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ddf::Ext;
    use crate::num::rat;

    fn eps(a: Rational) -> Ddf {
        Ddf::unit_step(a).unwrap()
    }

    /// Dense-grid oracle for `(F, G; t)`.
    fn grid_condition(f: &Ddf, g: &Ddf, t: &Rational, steps: i64) -> bool {
        let hi = t.recip();
        let width = &hi * int(2);
        (1..steps).all(|k| {
            let s = -hi.clone() + &width * rat(k, steps);
            let gs = g.value_at(&s);
            f.value_at(&(&s - t)) - t <= gs && gs <= f.value_at(&(&s + t)) + t
        })
    }

    #[test]
    fn identical_arguments_always_satisfy_the_condition() {
        let f = Ddf::from_steps([(Ext::Finite(int(1)), rat(1, 3)), (Ext::Finite(int(2)), one())])
            .unwrap();
        for t in [rat(1, 100), rat(1, 2), one()] {
            assert!(condition_holds(&f, &f, &t).unwrap());
        }
    }

    #[test]
    fn unit_step_condition_matches_hand_analysis_and_grid() {
        for a in [rat(1, 10), rat(1, 2), rat(3, 4)] {
            let (ea, e0) = (eps(a.clone()), Ddf::identity());
            for k in 1..=40 {
                let t = rat(k, 40);
                let exact = condition_holds(&ea, &e0, &t).unwrap();
                assert_eq!(exact, t >= a, "a={a} t={t}");
                assert_eq!(exact, grid_condition(&ea, &e0, &t, 2000), "grid a={a} t={t}");
            }
        }
    }

    #[test]
    fn t_outside_unit_interval_is_rejected() {
        let e0 = Ddf::identity();
        assert!(condition_holds(&e0, &e0, &zero()).is_err());
        assert!(condition_holds(&e0, &e0, &rat(3, 2)).is_err());
        assert!(levy_distance(&e0, &e0, &zero()).is_err());
    }

    #[test]
    fn distance_of_unit_steps_to_identity() {
        let tol = from_f64(1e-9).unwrap();
        for a in [rat(1, 7), rat(1, 2), rat(9, 10)] {
            let r = levy_distance(&eps(a.clone()), &Ddf::identity(), &tol).unwrap();
            assert!(r.lower <= a && a <= r.upper);
            assert!(&r.upper - &r.lower <= tol);
            assert_eq!(distance_to_identity(&eps(a.clone())), a);
        }
        assert_eq!(distance_to_identity(&eps(int(3))), one());
        assert_eq!(distance_to_identity(&Ddf::identity()), zero());
        assert_eq!(distance_to_identity(&Ddf::at_infinity()), one());
    }

    #[test]
    fn self_distance_within_tolerance_and_symmetric() {
        let tol = from_f64(1e-9).unwrap();
        let f = Ddf::from_steps([(Ext::Finite(rat(1, 5)), rat(1, 2)), (Ext::Finite(int(1)), one())])
            .unwrap();
        let g = eps(rat(1, 3));
        assert!(levy_distance(&f, &f, &tol).unwrap().distance <= tol);
        assert_eq!(levy_distance(&f, &g, &tol).unwrap(), levy_distance(&g, &f, &tol).unwrap());
    }

    #[test]
    fn threshold_equivalence_on_unit_steps() {
        for a in [rat(1, 4), rat(1, 2)] {
            let g = eps(a.clone());
            assert!(g.value_at(&rat(3, 4)) > one() - rat(3, 4));
            for k in 1..=20 {
                assert!(threshold_equivalence(&g, &rat(k, 20)).unwrap());
            }
        }
        assert!(threshold_equivalence(&Ddf::identity(), &rat(1, 1000)).unwrap());
    }

    #[test]
    fn closed_form_lies_in_the_bisection_bracket() {
        let g = Ddf::from_steps([
            (Ext::Finite(rat(1, 10)), rat(1, 4)),
            (Ext::Finite(rat(3, 10)), rat(4, 5)),
            (Ext::Finite(int(2)), one()),
        ])
        .unwrap();
        let exact = distance_to_identity(&g);
        assert_eq!(exact, rat(3, 10));
        let r = levy_distance_f64(&g, &Ddf::identity(), 1e-9).unwrap();
        assert!(r.lower <= exact && exact <= r.upper);
    }
}
