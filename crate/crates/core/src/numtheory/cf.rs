//! Continued fraction expansion, convergents and certified real parameters.

use super::NumTheoryError;
use crate::rat::{format_rat, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Continued fraction digits of `x in (0, 1)` by the Euclidean algorithm.
///
/// The result is canonical: because remainders strictly decrease, the final
/// digit always comes out `>= 2`, which picks one of the two finite
/// representations deterministically.
pub fn cf_expand(x: &Rat) -> Result<Vec<BigInt>, NumTheoryError> {
    if !x.is_positive() || *x >= Rat::one() {
        return Err(NumTheoryError::Domain(format!(
            "cf_expand needs 0 < x < 1, got {}",
            format_rat(x)
        )));
    }
    let mut p = x.numer().clone();
    let mut q = x.denom().clone();
    let mut digits = Vec::new();
    while !p.is_zero() {
        let (a, r) = q.div_mod_floor(&p);
        digits.push(a);
        q = p;
        p = r;
    }
    Ok(digits)
}

/// One row of a convergent table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentRow {
    pub k: usize,
    pub a: BigInt,
    pub p: BigInt,
    pub q: BigInt,
}

/// Convergents `p_k / q_k` of a digit list, with `p_0 = 0, q_0 = 1`,
/// `p_1 = 1, q_1 = a_1` and the usual two-term recurrences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentTable {
    rows: Vec<ConvergentRow>,
}

impl ConvergentTable {
    pub fn rows(&self) -> &[ConvergentRow] {
        &self.rows
    }

    pub fn depth(&self) -> usize {
        self.rows.len()
    }

    /// Numerator `p_k`, defined for `0 <= k <= depth`.
    pub fn p(&self, k: usize) -> BigInt {
        if k == 0 {
            BigInt::zero()
        } else {
            self.rows[k - 1].p.clone()
        }
    }

    /// Denominator `q_k`, defined for `0 <= k <= depth`.
    pub fn q(&self, k: usize) -> BigInt {
        if k == 0 {
            BigInt::one()
        } else {
            self.rows[k - 1].q.clone()
        }
    }

    pub fn convergent(&self, k: usize) -> Rat {
        Rat::new(self.p(k), self.q(k))
    }

    pub fn final_convergent(&self) -> Rat {
        self.convergent(self.depth())
    }

    /// CSV with header `k,a_k,p_k,q_k`, one row per digit.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,a_k,p_k,q_k\n");
        for row in &self.rows {
            out.push_str(&format!("{},{},{},{}\n", row.k, row.a, row.p, row.q));
        }
        out
    }
}

/// Builds the convergent table of a digit list; all digits must be `>= 1`.
pub fn convergents(digits: &[BigInt]) -> Result<ConvergentTable, NumTheoryError> {
    let mut rows = Vec::with_capacity(digits.len());
    let (mut p_prev, mut p_cur) = (BigInt::one(), BigInt::zero());
    let (mut q_prev, mut q_cur) = (BigInt::zero(), BigInt::one());
    for (i, a) in digits.iter().enumerate() {
        if *a < BigInt::one() {
            return Err(NumTheoryError::Domain(format!(
                "partial quotient a_{} = {} must be >= 1",
                i + 1,
                a
            )));
        }
        let p_next = a * &p_cur + &p_prev;
        let q_next = a * &q_cur + &q_prev;
        p_prev = std::mem::replace(&mut p_cur, p_next);
        q_prev = std::mem::replace(&mut q_cur, q_next);
        rows.push(ConvergentRow { k: i + 1, a: a.clone(), p: p_cur.clone(), q: q_cur.clone() });
    }
    Ok(ConvergentTable { rows })
}

/// A real parameter: exactly known, or given by a continued fraction prefix
/// with a certified error bound.
///
/// For the prefix variant, `realized` is the final convergent `p_K / q_K`
/// and `error_bound = 1 / (q_K (q_K + q_{K-1}))`, the worst case over all
/// continuations (the pessimistic next digit is 1). Any real number whose
/// canonical expansion extends the prefix lies strictly within
/// `error_bound` of `realized`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealParam {
    Exact(Rat),
    Cf { digits: Vec<BigInt>, realized: Rat, error_bound: Rat },
}

impl RealParam {
    pub fn from_digits(digits: Vec<BigInt>) -> Result<Self, NumTheoryError> {
        if digits.is_empty() {
            return Err(NumTheoryError::Domain("need at least one partial quotient".into()));
        }
        let table = convergents(&digits)?;
        let depth = table.depth();
        let q_last = table.q(depth);
        let q_prev = table.q(depth - 1);
        let error_bound = Rat::new(BigInt::one(), &q_last * (&q_last + &q_prev));
        Ok(RealParam::Cf { realized: table.final_convergent(), digits, error_bound })
    }

    pub fn from_u64_digits(digits: &[u64]) -> Result<Self, NumTheoryError> {
        Self::from_digits(digits.iter().map(|d| BigInt::from(*d)).collect())
    }

    /// The exactly representable value used in computations.
    pub fn realized(&self) -> Rat {
        match self {
            RealParam::Exact(x) => x.clone(),
            RealParam::Cf { realized, .. } => realized.clone(),
        }
    }

    /// Certified radius around `realized` containing the true value.
    pub fn error_bound(&self) -> Rat {
        match self {
            RealParam::Exact(_) => Rat::zero(),
            RealParam::Cf { error_bound, .. } => error_bound.clone(),
        }
    }

    pub fn digits(&self) -> Option<&[BigInt]> {
        match self {
            RealParam::Exact(_) => None,
            RealParam::Cf { digits, .. } => Some(digits),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, RealParam::Exact(_))
    }
}
