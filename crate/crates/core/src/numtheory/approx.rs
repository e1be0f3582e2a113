//! Certified `<q alpha>` enclosures and approximation-type probes.

use super::cf::{cf_expand, RealParam};
use super::NumTheoryError;
use crate::rat::{frac_part, Rat};
use crate::torus::{torus_dist, TorusPoint};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Certified enclosure `lo <= <q alpha> <= hi`; `lo == hi` for exact alpha.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapEnclosure {
    pub lo: Rat,
    pub hi: Rat,
}

/// Encloses `<q alpha>`, the circle distance of `q alpha` to the integers.
///
/// For a continued fraction parameter the enclosure is the exact value at
/// the realized convergent widened by `q * error_bound`; the prefix must
/// satisfy `q * error_bound < 1/4`, otherwise the enclosure would say
/// nothing and `EnclosureTooWide` is returned.
pub fn gap(alpha: &RealParam, q: u64) -> Result<GapEnclosure, NumTheoryError> {
    if q == 0 {
        return Err(NumTheoryError::Domain("gap needs q >= 1".into()));
    }
    let q_rat = Rat::from_integer(BigInt::from(q));
    let center = torus_dist(
        &TorusPoint::new(alpha.realized() * &q_rat),
        &TorusPoint::zero(),
    );
    match alpha {
        RealParam::Exact(_) => Ok(GapEnclosure { lo: center.clone(), hi: center }),
        RealParam::Cf { error_bound, .. } => {
            let slack = q_rat * error_bound;
            if slack >= Rat::new(BigInt::one(), BigInt::from(4)) {
                return Err(NumTheoryError::EnclosureTooWide { q });
            }
            let lo = (&center - &slack).max(Rat::zero());
            let hi = (center + slack).min(Rat::new(BigInt::one(), BigInt::from(2)));
            Ok(GapEnclosure { lo, hi })
        }
    }
}

/// Partial quotient profile: the first `depth` digits and their maximum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PqProfile {
    pub digits: Vec<BigInt>,
    pub max: BigInt,
}

/// Reports continued fraction digits up to `depth`. Exact parameters use
/// their full finite expansion; prefix parameters must carry at least
/// `depth` digits.
pub fn pq_profile(alpha: &RealParam, depth: usize) -> Result<PqProfile, NumTheoryError> {
    let digits: Vec<BigInt> = match alpha {
        RealParam::Exact(x) => cf_expand(&frac_part(x))?,
        RealParam::Cf { digits, .. } => {
            if digits.len() < depth {
                return Err(NumTheoryError::Domain(format!(
                    "prefix has {} digits, need {depth}",
                    digits.len()
                )));
            }
            digits[..depth].to_vec()
        }
    };
    let max = digits.iter().max().cloned().unwrap_or_else(BigInt::zero);
    Ok(PqProfile { digits, max })
}

/// Exponent pieces of a nonnegative rational `tau = s/t` with `s`, `t`
/// fitting in `u32` (all uses here have tiny exponents).
fn exponent_parts(tau: &Rat) -> Result<(u32, u32), NumTheoryError> {
    if tau.is_negative() {
        return Err(NumTheoryError::Domain("exponent must be >= 0".into()));
    }
    let s = tau.numer().to_u32();
    let t = tau.denom().to_u32();
    match (s, t) {
        (Some(s), Some(t)) => Ok((s, t)),
        _ => Err(NumTheoryError::Domain("exponent numerator/denominator too large".into())),
    }
}

const POW_SCALE_BITS: u32 = 32;

/// Rational bracket `lower <= q^tau <= upper` via scaled integer roots.
/// Exact when `tau` is an integer.
fn pow_bounds(q: &BigInt, tau: &Rat) -> Result<(Rat, Rat), NumTheoryError> {
    assert!(q.is_positive());
    let (s, t) = exponent_parts(tau)?;
    let base = q.pow(s);
    if t == 1 {
        return Ok((Rat::from_integer(base.clone()), Rat::from_integer(base)));
    }
    let m = BigInt::one() << POW_SCALE_BITS;
    let scaled = &base * m.pow(t);
    let root = scaled.nth_root(t);
    let lower = Rat::new(root.clone(), m.clone());
    let upper = Rat::new(root + BigInt::one(), m);
    Ok((lower, upper))
}

/// Smallest integer `>= q^tau`.
fn pow_ceil(q: &BigInt, tau: &Rat) -> Result<BigInt, NumTheoryError> {
    let (s, t) = exponent_parts(tau)?;
    let base = q.pow(s);
    if t == 1 {
        return Ok(base);
    }
    let root = base.nth_root(t);
    if root.pow(t) == base {
        Ok(root)
    } else {
        Ok(root + BigInt::one())
    }
}

/// Empirical lower estimate of the constant in `<q alpha> > c / q^{1+eps}`:
/// the minimum over `1 <= q <= q_max` of `lo_q * q^{1+eps}`, where `lo_q`
/// is the certified lower gap bound and the power is replaced by its
/// rational lower bracket. The result is a certified lower bound of the
/// true minimum at this scale.
pub fn roth_constant_probe(
    alpha: &RealParam,
    epsilon: &Rat,
    q_max: u64,
) -> Result<Rat, NumTheoryError> {
    if epsilon.is_negative() {
        return Err(NumTheoryError::Domain("epsilon must be >= 0".into()));
    }
    let exponent = Rat::one() + epsilon;
    let mut best: Option<Rat> = None;
    for q in 1..=q_max {
        let enclosure = gap(alpha, q)?;
        if enclosure.lo.is_zero() {
            return Ok(Rat::zero());
        }
        let (pow_lower, _) = pow_bounds(&BigInt::from(q), &exponent)?;
        let term = enclosure.lo * pow_lower;
        best = Some(match best {
            None => term,
            Some(b) => b.min(term),
        });
    }
    best.ok_or_else(|| NumTheoryError::Domain("q_max must be >= 1".into()))
}

/// An odd denominator certified to approximate alpha better than `q^-tau`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StauWitness {
    pub q: u64,
    /// Certified upper bound on `<q alpha>`.
    pub gap: Rat,
    /// Certified lower bound on `q^-tau`; exact for integer `tau`. The
    /// witness guarantee is `gap < threshold <= q^-tau`.
    pub threshold: Rat,
}

/// All odd `q <= q_max` whose certified gap upper bound beats `q^-tau`.
pub fn stau_witnesses(
    alpha: &RealParam,
    tau: &Rat,
    q_max: u64,
) -> Result<Vec<StauWitness>, NumTheoryError> {
    let mut out = Vec::new();
    let mut q = 1u64;
    while q <= q_max {
        let enclosure = gap(alpha, q)?;
        let (_, pow_upper) = pow_bounds(&BigInt::from(q), tau)?;
        let threshold = pow_upper.recip();
        if enclosure.hi < threshold {
            out.push(StauWitness { q, gap: enclosure.hi, threshold });
        }
        q += 2;
    }
    Ok(out)
}

/// Constructs a continued fraction prefix whose first `count` convergent
/// denominators are all odd and are certified witnesses for `tau`:
/// `<q_k alpha> < q_k^-tau` for `k = 1..=count`.
///
/// Each digit is chosen as `a_{k+1} = 2 ceil(q_k^tau)` so the next
/// denominator exceeds `2 q_k^{tau+1}`, leaving a factor two margin over
/// the bare requirement; when the resulting denominator would be even at a
/// witness index the digit is bumped by one, which preserves the floor.
/// One oversized guard digit is appended so the prefix error bound cannot
/// eat into the margin.
pub fn stau_construct(tau: &Rat, count: usize) -> Result<RealParam, NumTheoryError> {
    if *tau <= Rat::one() {
        return Err(NumTheoryError::Domain("stau_construct needs tau > 1".into()));
    }
    if count == 0 {
        return Err(NumTheoryError::Domain("stau_construct needs count >= 1".into()));
    }
    // a_1 = 1 gives q_1 = 1, odd, and q = 1 is always a witness.
    let mut digits = vec![BigInt::one()];
    let mut q_prev = BigInt::one(); // q_0
    let mut q_cur = BigInt::one(); // q_1
    for k in 1..=count {
        let mut a = pow_ceil(&q_cur, tau)? * BigInt::from(2);
        if k < count {
            // Steer the parity of q_{k+1} = a q_k + q_{k-1} to odd. When q_k
            // is even, q_{k-1} is odd (consecutive denominators are coprime)
            // and any digit works.
            if q_cur.is_odd() && (&a + &q_prev).is_even() {
                a += BigInt::one();
            }
        }
        let q_next = &a * &q_cur + &q_prev;
        q_prev = std::mem::replace(&mut q_cur, q_next);
        digits.push(a);
        let _ = k;
    }
    RealParam::from_digits(digits)
}

use num_integer::Integer;
