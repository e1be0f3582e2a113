//! Farey sequences, continued fractions and rational approximation probes.

mod approx;
mod cf;

pub use approx::{
    gap, pq_profile, roth_constant_probe, stau_construct, stau_witnesses, GapEnclosure,
    PqProfile, StauWitness,
};
pub use cf::{cf_expand, convergents, ConvergentRow, ConvergentTable, RealParam};

use crate::rat::{format_rat, Rat};
use crate::torus::{frac, Arc, TorusPoint};
use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum NumTheoryError {
    #[error("{0}")]
    Domain(String),
    #[error("enclosure too wide: continued fraction prefix cannot certify <q alpha> at q = {q}")]
    EnclosureTooWide { q: u64 },
    #[error("hypothesis fails: orbit point at k = {k} lies in the arc")]
    HypothesisFails { k: u64 },
    #[error("no witness: x is a reduced fraction of denominator exactly n = {n}")]
    WitnessUnavailable { n: u64 },
}

/// A reduced fraction in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fraction {
    pub p: u64,
    pub q: u64,
}

impl Fraction {
    pub fn value(&self) -> Rat {
        Rat::new(BigInt::from(self.p), BigInt::from(self.q))
    }
}

impl std::fmt::Display for Fraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl Serialize for Fraction {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        let (p, q) = s
            .split_once('/')
            .ok_or_else(|| serde::de::Error::custom("expected p/q"))?;
        Ok(Fraction {
            p: p.parse().map_err(serde::de::Error::custom)?,
            q: q.parse().map_err(serde::de::Error::custom)?,
        })
    }
}

/// The full Farey sequence of order `n`, ascending from `0/1` to `1/1`.
///
/// Generated by the neighbor recurrence: from consecutive `a/b`, `c/d` the
/// next term is `(kc - a)/(kd - b)` with `k = (n + b) / d`. This keeps the
/// neighbor identities exact by construction and uses O(1) state per term.
pub fn farey(n: u64) -> Result<Vec<Fraction>, NumTheoryError> {
    if n == 0 {
        return Err(NumTheoryError::Domain("farey order must be >= 1".into()));
    }
    let mut out = vec![Fraction { p: 0, q: 1 }, Fraction { p: 1, q: n }];
    while out.last().unwrap().q != 1 {
        let a = out[out.len() - 2];
        let b = *out.last().unwrap();
        let k = (n + a.q) / b.q;
        out.push(Fraction { p: k * b.p - a.p, q: k * b.q - a.q });
    }
    Ok(out)
}

/// Neighbors `lo <= x <= hi` of `x in [0, 1]` in the Farey sequence of the
/// given order, found by mediant descent. Both are equal to `x` when `x`
/// itself is a fraction of that order.
pub fn farey_neighbors(x: &Rat, order: u64) -> Result<(Fraction, Fraction), NumTheoryError> {
    use num_traits::{Signed, Zero};
    if order == 0 {
        return Err(NumTheoryError::Domain("farey order must be >= 1".into()));
    }
    if x.is_negative() || *x > Rat::one() {
        return Err(NumTheoryError::Domain(format!(
            "farey_neighbors needs x in [0, 1], got {}",
            format_rat(x)
        )));
    }
    if x.is_zero() {
        let z = Fraction { p: 0, q: 1 };
        return Ok((z, z));
    }
    if x.is_one() {
        let o = Fraction { p: 1, q: 1 };
        return Ok((o, o));
    }
    let mut lo = Fraction { p: 0, q: 1 };
    let mut hi = Fraction { p: 1, q: 1 };
    loop {
        let med = Fraction { p: lo.p + hi.p, q: lo.q + hi.q };
        if med.q > order {
            return Ok((lo, hi));
        }
        // Exact comparison x vs med by cross multiplication.
        let lhs = x.numer() * BigInt::from(med.q);
        let rhs = x.denom() * BigInt::from(med.p);
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Less => hi = med,
            std::cmp::Ordering::Greater => lo = med,
            std::cmp::Ordering::Equal => return Ok((med, med)),
        }
    }
}

/// Witness produced by [`farey_witness`]: a denominator `q` whose multiple
/// of `x` is within `1/n` of an integer, together with the exact quantities
/// that re-verify the guarantee.
#[derive(Clone, Debug)]
pub struct FareyWitness {
    pub q: u64,
    pub p: u64,
    /// `|x - p/q|`, strictly less than `1/(q n)`.
    pub approx_error: Rat,
    /// `<q x>`, strictly less than `1/n`.
    pub gap: Rat,
}

/// If the points `x + y, 2x + y, ..., nx + y` all avoid the arc `J`, finds
/// `q < min(n, 2/|J|)` with `<q x> < 1/n`.
///
/// The hypothesis is checked by exhaustive enumeration first; inputs for
/// which some `kx + y` lands in `J` are reported as `HypothesisFails`, so a
/// vacuous instance is never processed silently. The witness comes from the
/// mediant subdivision between the Farey neighbors of `x` at order `n - 1`,
/// and all three claimed bounds are re-verified in exact arithmetic.
///
/// The single boundary case where no witness exists is `x` reduced with
/// denominator exactly `n`; it is reported as `WitnessUnavailable`.
pub fn farey_witness(
    x: &TorusPoint,
    y: &TorusPoint,
    n: u64,
    j: &Arc,
) -> Result<FareyWitness, NumTheoryError> {
    use num_traits::Zero;
    if n < 2 {
        return Err(NumTheoryError::Domain("farey_witness needs n >= 2".into()));
    }
    for k in 1..=n {
        let point = frac(&(x.value() * Rat::from_integer(BigInt::from(k)) + y.value()));
        if j.contains(&point) {
            return Err(NumTheoryError::HypothesisFails { k });
        }
    }
    if !x.value().is_zero() && *x.value().denom() == BigInt::from(n) {
        return Err(NumTheoryError::WitnessUnavailable { n });
    }

    let (lo, hi) = farey_neighbors(x.value(), n - 1)?;
    let chosen = if lo == hi {
        lo
    } else {
        let mediant = Rat::new(
            BigInt::from(lo.p + hi.p),
            BigInt::from(lo.q + hi.q),
        );
        if *x.value() <= mediant {
            lo
        } else {
            hi
        }
    };

    let approx_error = (x.value() - chosen.value()).abs();
    let gap = crate::torus::torus_dist(&frac(&(x.value() * Rat::from_integer(BigInt::from(chosen.q)))), &TorusPoint::zero());
    let witness = FareyWitness { q: chosen.q, p: chosen.p, approx_error, gap };

    // Exact re-verification of the guarantee on every call.
    let n_rat = Rat::from_integer(BigInt::from(n));
    let q_rat = Rat::from_integer(BigInt::from(witness.q));
    assert!(witness.q < n, "witness denominator must stay below n");
    assert!(
        witness.approx_error < (q_rat.clone() * n_rat.clone()).recip(),
        "approximation bound violated"
    );
    assert!(witness.gap < n_rat.recip(), "gap bound violated");
    assert!(
        q_rat * &j.length < Rat::from_integer(BigInt::from(2)),
        "arc length bound violated"
    );
    Ok(witness)
}

use num_traits::sign::abs;

trait RatAbs {
    fn abs(&self) -> Rat;
}

impl RatAbs for Rat {
    fn abs(&self) -> Rat {
        abs(self.clone())
    }
}
