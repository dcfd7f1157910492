//! Distance distribution functions as exact left-continuous step functions.
//!
//! A [`Ddf`] is stored as its finite jumps `(location, value)`. The value on
//! `(location_i, location_{i+1}]` is `value_i`, the value on `[0, location_0]`
//! is 0 and the value at `+inf` is always 1. When the last finite value is
//! below 1 the remaining mass sits at infinity.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::num::{is_unit_interval, one, show, zero, Rational};

/// A point of `[0, +inf]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ext {
    Finite(Rational),
    Infinity,
}

impl Ext {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Ext::Finite(x) => Some(x),
            Ext::Infinity => None,
        }
    }
}

impl From<Rational> for Ext {
    fn from(x: Rational) -> Self {
        Ext::Finite(x)
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::Finite(x) => f.write_str(&show(x)),
            Ext::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Jump {
    pub at: Rational,
    pub value: Rational,
}

/// Canonical step d.d.f.: locations strictly increasing, values strictly
/// increasing in `(0, 1]`. Structural equality is pointwise equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ddf {
    jumps: Vec<Jump>,
}

impl Ddf {
    /// Builds a d.d.f. from `(location, value)` pairs sorted by location.
    ///
    /// Duplicate locations keep the last value and zero-height jumps are
    /// dropped. A pair at `inf` must carry value 1; without one the last finite
    /// value must already be 1.
    pub fn from_steps<I>(steps: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Ext, Rational)>,
    {
        let mut jumps: Vec<Jump> = Vec::new();
        let mut saw_infinity = false;
        let mut last_loc: Option<Ext> = None;
        let mut last_value = zero();
        for (loc, value) in steps {
            if saw_infinity {
                return Err(Error::InvalidDdf("no step may follow `inf`".into()));
            }
            if !is_unit_interval(&value) {
                return Err(Error::InvalidDdf(format!("value {} outside [0,1]", show(&value))));
            }
            if value < last_value {
                return Err(Error::InvalidDdf(format!(
                    "values must be nondecreasing ({} after {})",
                    show(&value),
                    show(&last_value)
                )));
            }
            if let Some(prev) = &last_loc {
                if &loc < prev {
                    return Err(Error::InvalidDdf(format!("location {loc} out of order")));
                }
            }
            match &loc {
                Ext::Finite(x) => {
                    if x.is_negative() {
                        return Err(Error::InvalidDdf(format!("negative location {}", show(x))));
                    }
                    if let Some(j) = jumps.last_mut().filter(|j| &j.at == x) {
                        j.value = value.clone();
                    } else if value > last_value {
                        jumps.push(Jump { at: x.clone(), value: value.clone() });
                    }
                }
                Ext::Infinity => {
                    if !value.is_one() {
                        return Err(Error::InvalidDdf("F(inf) must be 1".into()));
                    }
                    saw_infinity = true;
                }
            }
            last_value = value;
            last_loc = Some(loc);
        }
        if !saw_infinity && !last_value.is_one() {
            return Err(Error::InvalidDdf(
                "final value must be 1 (add an `inf` step for mass at infinity)".into(),
            ));
        }
        // a duplicate location may have lowered nothing but can create equal neighbours
        jumps.dedup_by(|b, a| a.value == b.value);
        Ok(Ddf { jumps })
    }

    /// Builds a d.d.f. from already canonical jumps produced inside the crate.
    pub(crate) fn from_sorted_jumps(mut jumps: Vec<Jump>) -> Self {
        jumps.dedup_by(|b, a| b.value <= a.value);
        Ddf { jumps }
    }

    /// The unit step `ε_x`: 0 on `[0, x]`, 1 beyond.
    pub fn unit_step(x: Rational) -> Result<Self> {
        if x.is_negative() {
            return Err(Error::Domain(format!("unit step at negative {}", show(&x))));
        }
        Ok(Ddf { jumps: vec![Jump { at: x, value: one() }] })
    }

    /// `ε_0`, the identity of every triangle function.
    pub fn identity() -> Self {
        Ddf { jumps: vec![Jump { at: zero(), value: one() }] }
    }

    /// The d.d.f. with all mass at infinity (`ε_inf`).
    pub fn at_infinity() -> Self {
        Ddf { jumps: Vec::new() }
    }

    pub fn jumps(&self) -> &[Jump] {
        &self.jumps
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Mass remaining at infinity, i.e. `1 - sup_{s<inf} F(s)`.
    pub fn mass_at_infinity(&self) -> Rational {
        one() - self.jumps.last().map_or_else(zero, |j| j.value.clone())
    }

    /// Left-continuous value at any real argument; arguments `<= 0` give 0.
    pub fn value_at(&self, s: &Rational) -> Rational {
        let idx = self.jumps.partition_point(|j| &j.at < s);
        if idx == 0 {
            zero()
        } else {
            self.jumps[idx - 1].value.clone()
        }
    }

    /// Right limit `F(s+)`.
    pub fn right_limit(&self, s: &Rational) -> Rational {
        let idx = self.jumps.partition_point(|j| &j.at <= s);
        if idx == 0 {
            zero()
        } else {
            self.jumps[idx - 1].value.clone()
        }
    }

    pub fn eval(&self, s: &Ext) -> Result<Rational> {
        match s {
            Ext::Infinity => Ok(one()),
            Ext::Finite(x) if x.is_negative() => {
                Err(Error::Domain(format!("d.d.f. evaluated at negative {}", show(x))))
            }
            Ext::Finite(x) => Ok(self.value_at(x)),
        }
    }

    pub fn is_continuity_point(&self, s: &Rational) -> Result<bool> {
        if !s.is_positive() {
            return Err(Error::Domain(format!("continuity point must be positive, got {}", show(s))));
        }
        Ok(self.jumps.binary_search_by(|j| j.at.cmp(s)).is_err())
    }

    /// Finite jump locations.
    pub fn breakpoints(&self) -> impl Iterator<Item = &Rational> + '_ {
        self.jumps.iter().map(|j| &j.at)
    }

    /// `self(s) >= other(s)` for every `s`.
    pub fn dominates(&self, other: &Ddf) -> bool {
        // both sides are constant on (b_k, b_{k+1}] and beyond the last breakpoint
        let mut points: Vec<&Rational> = self.breakpoints().chain(other.breakpoints()).collect();
        points.sort();
        points.dedup();
        let beyond = points.last().map_or_else(one, |b| (*b).clone() + one());
        points
            .iter()
            .map(|p| (*p).clone())
            .chain(std::iter::once(beyond))
            .all(|p| self.value_at(&p) >= other.value_at(&p))
    }

    /// Serializable `(location, value)` pairs including the `inf` step when needed.
    pub fn steps(&self) -> Vec<(Ext, Rational)> {
        let mut out: Vec<(Ext, Rational)> =
            self.jumps.iter().map(|j| (Ext::Finite(j.at.clone()), j.value.clone())).collect();
        if !self.mass_at_infinity().is_zero() {
            out.push((Ext::Infinity, one()));
        }
        out
    }
}

impl fmt::Display for Ddf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("step{")?;
        for (i, (loc, v)) in self.steps().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({loc}, {})", show(v))?;
        }
        f.write_str("}")
    }
}
