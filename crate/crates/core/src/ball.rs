//! Fixed point ball arithmetic for the exponential sum layer.
//!
//! Values are stored as `c / 2^PREC` together with a radius `r / 2^PREC`;
//! the represented set is the closed interval `[c - r, c + r] / 2^PREC`.
//! Addition is exact, multiplication truncates the center and accounts for
//! the truncation in the radius, so every ball produced here encloses the
//! exact real result of the expression that built it.
//!
//! With 128 fractional bits a sum of `N` unit vectors carries a radius of
//! order `N * 2^-120`, far below the `1e-20 * N` the discrepancy module
//! needs.

use crate::rat::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::sync::OnceLock;

/// Fractional bits of the fixed point representation.
pub const PREC: u32 = 128;

fn scale() -> &'static BigInt {
    static SCALE: OnceLock<BigInt> = OnceLock::new();
    SCALE.get_or_init(|| BigInt::one() << PREC)
}

/// A real number known to lie in `[c - r, c + r] / 2^PREC`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    c: BigInt,
    r: BigInt,
}

impl Ball {
    pub fn zero() -> Self {
        Ball { c: BigInt::zero(), r: BigInt::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Ball { c: BigInt::from(n) << PREC, r: BigInt::zero() }
    }

    /// Encloses the exact rational `x`; exact when `x` is dyadic with at
    /// most `PREC` fractional bits.
    pub fn from_rat(x: &Rat) -> Self {
        let (q, rem) = (x.numer() << PREC).div_mod_floor(x.denom());
        let r = if rem.is_zero() { BigInt::zero() } else { BigInt::one() };
        Ball { c: q, r }
    }

    pub fn add(&self, other: &Ball) -> Ball {
        Ball { c: &self.c + &other.c, r: &self.r + &other.r }
    }

    pub fn sub(&self, other: &Ball) -> Ball {
        Ball { c: &self.c - &other.c, r: &self.r + &other.r }
    }

    pub fn neg(&self) -> Ball {
        Ball { c: -&self.c, r: self.r.clone() }
    }

    pub fn mul(&self, other: &Ball) -> Ball {
        let c = (&self.c * &other.c).div_floor(scale());
        let cross = self.c.abs() * &other.r + other.c.abs() * &self.r + &self.r * &other.r;
        let r = cross.div_ceil(scale()) + BigInt::one();
        Ball { c, r }
    }

    /// Exact scaling by a machine integer.
    pub fn scale_int(&self, k: i64) -> Ball {
        let k = BigInt::from(k);
        Ball { c: &self.c * &k, r: &self.r * k.abs() }
    }

    pub fn div_uint(&self, d: u64) -> Ball {
        assert!(d > 0);
        let d = BigInt::from(d);
        Ball { c: self.c.div_floor(&d), r: self.r.div_ceil(&d) + BigInt::one() }
    }

    /// Enlarges the radius by the rational `extra >= 0`.
    pub fn widen(&self, extra: &Rat) -> Ball {
        debug_assert!(!extra.is_negative());
        let ulps = (extra.numer() << PREC).div_ceil(extra.denom());
        Ball { c: self.c.clone(), r: &self.r + ulps }
    }

    /// Square root of a nonnegative quantity. The input ball may dip below
    /// zero by its radius; the negative part is clamped.
    pub fn sqrt_nonneg(&self) -> Ball {
        let lo_val = (&self.c - &self.r).max(BigInt::zero());
        let hi_val = (&self.c + &self.r).max(BigInt::zero());
        let lo = (lo_val << PREC).sqrt();
        let hi = (hi_val << PREC).sqrt() + BigInt::one();
        let c = (&lo + &hi).div_floor(&BigInt::from(2));
        let r = (&hi - &lo).div_ceil(&BigInt::from(2)) + BigInt::one();
        Ball { c, r }
    }

    pub fn lower(&self) -> Rat {
        Rat::new(&self.c - &self.r, scale().clone())
    }

    pub fn upper(&self) -> Rat {
        Rat::new(&self.c + &self.r, scale().clone())
    }

    pub fn radius(&self) -> Rat {
        Rat::new(self.r.clone(), scale().clone())
    }

    pub fn to_f64(&self) -> f64 {
        crate::rat::to_f64(&Rat::new(self.c.clone(), scale().clone()))
    }
}

/// `arctan(1/k)` in fixed point by the alternating series, with the
/// truncation and per-term floor errors folded into the radius.
fn atan_inv(k: u64) -> Ball {
    let k = BigInt::from(k);
    let k2 = &k * &k;
    let mut denom_pow = k.clone();
    let mut term_index = 0u64;
    let mut acc = BigInt::zero();
    let mut terms = 0u32;
    loop {
        let d = &denom_pow * BigInt::from(2 * term_index + 1);
        let term = scale().div_floor(&d);
        if term.is_zero() {
            break;
        }
        if term_index.is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
        terms += 1;
        denom_pow *= &k2;
        term_index += 1;
    }
    // One ulp per kept term, plus one for the omitted alternating tail.
    Ball { c: acc, r: BigInt::from(terms + 1) }
}

/// Pi enclosed at full working precision (Machin's formula).
pub fn pi() -> &'static Ball {
    static PI: OnceLock<Ball> = OnceLock::new();
    PI.get_or_init(|| atan_inv(5).scale_int(16).sub(&atan_inv(239).scale_int(4)))
}

const TAYLOR_TERMS: i64 = 21;

/// Fixed point reciprocal factorial coefficients, signs folded in:
/// `(-1)^k / (2k)!` for cosine and `(-1)^k / (2k+1)!` for sine.
fn taylor_tables() -> &'static (Vec<Ball>, Vec<Ball>) {
    static TABLES: OnceLock<(Vec<Ball>, Vec<Ball>)> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut factorial = BigInt::one();
        let mut cos_coef = Vec::with_capacity(TAYLOR_TERMS as usize);
        let mut sin_coef = Vec::with_capacity(TAYLOR_TERMS as usize);
        for k in 0..TAYLOR_TERMS {
            // factorial = (2k)! on entry to each step.
            if k > 0 {
                factorial *= BigInt::from(2 * k - 1) * BigInt::from(2 * k);
            }
            let even = Ball { c: scale().div_floor(&factorial), r: BigInt::one() };
            let odd_fact = &factorial * BigInt::from(2 * k + 1);
            let odd = Ball { c: scale().div_floor(&odd_fact), r: BigInt::one() };
            if k % 2 == 0 {
                cos_coef.push(even);
                sin_coef.push(odd);
            } else {
                cos_coef.push(even.neg());
                sin_coef.push(odd.neg());
            }
        }
        (cos_coef, sin_coef)
    })
}

/// Shared evaluation of the cosine and sine Taylor series on `[0, pi/2]`.
/// Returns `(cos theta, sin theta)` where `theta = 2*pi*u`, `u in [0, 1/4]`.
fn cos_sin_quarter(u: &Rat) -> (Ball, Ball) {
    let theta = pi().scale_int(2).mul(&Ball::from_rat(u));
    let t = theta.mul(&theta);
    let (cos_coef, sin_coef) = taylor_tables();

    let horner = |coef: &[Ball]| -> Ball {
        let mut acc = Ball::zero();
        for k in (0..TAYLOR_TERMS as usize).rev() {
            acc = acc.mul(&t).add(&coef[k]);
        }
        // Alternating tails are below one ulp at this depth for theta <= pi/2.
        Ball { c: acc.c, r: acc.r + BigInt::from(2) }
    };

    (horner(cos_coef), theta.mul(&horner(sin_coef)))
}

/// `cos(2 pi x)` for exact rational `x`, via exact quadrant reduction.
pub fn cos2pi(x: &Rat) -> Ball {
    let (quadrant, u) = reduce_quarter(x);
    let (c, s) = cos_sin_quarter(&u);
    match quadrant {
        0 => c,
        1 => s.neg(),
        2 => c.neg(),
        _ => s,
    }
}

/// `sin(2 pi x)` for exact rational `x`.
pub fn sin2pi(x: &Rat) -> Ball {
    let (quadrant, u) = reduce_quarter(x);
    let (c, s) = cos_sin_quarter(&u);
    match quadrant {
        0 => s,
        1 => c,
        2 => s.neg(),
        _ => c.neg(),
    }
}

/// Reduces `x` mod 1 to `(q, u)` with `x = q/4 + u`, `u in [0, 1/4)`.
fn reduce_quarter(x: &Rat) -> (u8, Rat) {
    let t = crate::rat::frac_part(x);
    let four_t = Rat::from_integer(BigInt::from(4)) * &t;
    let q = four_t.floor().to_integer();
    let u = t - Rat::new(q.clone(), BigInt::from(4));
    let q: u8 = (q.mod_floor(&BigInt::from(4))).try_into().unwrap_or(0);
    (q, u)
}

/// A complex number with both parts enclosed in balls.
#[derive(Clone, Debug)]
pub struct CBall {
    pub re: Ball,
    pub im: Ball,
}

impl CBall {
    pub fn zero() -> Self {
        CBall { re: Ball::zero(), im: Ball::zero() }
    }

    /// `e^{2 pi i x}` for exact rational `x`.
    pub fn unit(x: &Rat) -> Self {
        CBall { re: cos2pi(x), im: sin2pi(x) }
    }

    pub fn add(&self, other: &CBall) -> CBall {
        CBall { re: self.re.add(&other.re), im: self.im.add(&other.im) }
    }

    pub fn mul(&self, other: &CBall) -> CBall {
        CBall {
            re: self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            im: self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        }
    }

    pub fn magnitude(&self) -> Ball {
        self.re.mul(&self.re).add(&self.im.mul(&self.im)).sqrt_nonneg()
    }
}
