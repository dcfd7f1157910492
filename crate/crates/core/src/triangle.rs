//! Triangle functions on step d.d.f.s built from t-norms by sup-convolution.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use crate::ddf::{Ddf, Jump};
use crate::error::{Error, Result};
use crate::num::{one, zero, Rational};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TNorm {
    #[default]
    Minimum,
    Product,
    Lukasiewicz,
}

impl TNorm {
    pub const ALL: [TNorm; 3] = [TNorm::Minimum, TNorm::Product, TNorm::Lukasiewicz];

    pub fn apply(self, a: &Rational, b: &Rational) -> Rational {
        match self {
            TNorm::Minimum => a.min(b).clone(),
            TNorm::Product => a * b,
            TNorm::Lukasiewicz => {
                let s = a + b - one();
                if s > zero() {
                    s
                } else {
                    zero()
                }
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TNorm::Minimum => "min",
            TNorm::Product => "product",
            TNorm::Lukasiewicz => "lukasiewicz",
        }
    }
}

impl FromStr for TNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min" | "minimum" => Ok(TNorm::Minimum),
            "product" | "prod" => Ok(TNorm::Product),
            "lukasiewicz" => Ok(TNorm::Lukasiewicz),
            other => Err(Error::Scenario(format!("unknown t-norm `{other}`"))),
        }
    }
}

impl fmt::Display for TNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `τ_T(F, G)(x) = sup_{u + v = x} T(F(u), G(v))`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct TriangleFn {
    pub tnorm: TNorm,
}

impl TriangleFn {
    pub fn new(tnorm: TNorm) -> Self {
        TriangleFn { tnorm }
    }

    /// Exact sup-convolution. For step inputs the supremum at `x` is the
    /// maximum of `T(v_i, w_j)` over jump pairs with `x_i + y_j < x`, so the
    /// result only jumps at pairwise sums.
    pub fn tau(&self, f: &Ddf, g: &Ddf) -> Ddf {
        let mut pairs: Vec<(Rational, Rational)> = Vec::new();
        for a in f.jumps() {
            for b in g.jumps() {
                let v = self.tnorm.apply(&a.value, &b.value);
                if !v.is_zero() {
                    pairs.push((&a.at + &b.at, v));
                }
            }
        }
        pairs.sort_by(|x, y| x.0.cmp(&y.0));
        let mut jumps: Vec<Jump> = Vec::new();
        let mut best = zero();
        for (at, v) in pairs {
            if v <= best {
                continue;
            }
            best = v.clone();
            match jumps.last_mut() {
                Some(last) if last.at == at => last.value = v,
                _ => jumps.push(Jump { at, value: v }),
            }
        }
        Ddf::from_sorted_jumps(jumps)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axiom {
    Identity,
    Commutativity,
    Associativity,
    Monotonicity,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomResult {
    pub axiom: Axiom,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl AxiomResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangleReport {
    pub tnorm: TNorm,
    pub results: Vec<AxiomResult>,
}

impl TriangleReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(AxiomResult::passed)
    }
}

/// Checks identity, commutativity, associativity and monotonicity of `tri`
/// over every pair/triple drawn from `samples`. Failures are report entries.
pub fn check_triangle_axioms(tri: &TriangleFn, samples: &[Ddf]) -> Result<TriangleReport> {
    if samples.is_empty() {
        return Err(Error::Precondition("axiom check needs at least one sample".into()));
    }
    let e0 = Ddf::identity();
    let mut identity = AxiomResult { axiom: Axiom::Identity, checked: 0, failures: vec![] };
    let mut comm = AxiomResult { axiom: Axiom::Commutativity, checked: 0, failures: vec![] };
    let mut assoc = AxiomResult { axiom: Axiom::Associativity, checked: 0, failures: vec![] };
    let mut mono = AxiomResult { axiom: Axiom::Monotonicity, checked: 0, failures: vec![] };

    for f in samples {
        identity.checked += 1;
        if tri.tau(f, &e0) != *f {
            identity.failures.push(format!("tau({f}, e0) = {}", tri.tau(f, &e0)));
        }
    }
    for (i, f) in samples.iter().enumerate() {
        for g in &samples[i..] {
            comm.checked += 1;
            if tri.tau(f, g) != tri.tau(g, f) {
                comm.failures.push(format!("tau({f}, {g}) != tau({g}, {f})"));
            }
        }
    }
    for f in samples {
        for g in samples {
            let fg = tri.tau(f, g);
            for h in samples {
                assoc.checked += 1;
                if tri.tau(&fg, h) != tri.tau(f, &tri.tau(g, h)) {
                    assoc.failures.push(format!("({f} τ {g}) τ {h}"));
                }
            }
        }
    }
    for lo in samples {
        for hi in samples.iter().filter(|hi| hi.dominates(lo)) {
            for g in samples {
                mono.checked += 1;
                if !tri.tau(hi, g).dominates(&tri.tau(lo, g)) {
                    mono.failures.push(format!("{lo} <= {hi} but not after τ with {g}"));
                }
            }
        }
    }
    Ok(TriangleReport { tnorm: tri.tnorm, results: vec![identity, comm, assoc, mono] })
}
