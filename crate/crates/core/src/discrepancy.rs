//! Exact arc discrepancy of finite point sets, Weyl exponential sums with
//! certified radii, the Erdos-Turan upper bound, the quadratic exponential
//! sum bound, and the discrepancy decay series along convergent
//! denominators.

use crate::ball::{Ball, CBall};
use crate::numtheory::{convergents, gap, NumTheoryError, RealParam};
use crate::rat::{frac_part, Rat};
use crate::torus::TorusPoint;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, thiserror::Error)]
pub enum DiscrepancyError {
    #[error("<{n} alpha> is exactly zero")]
    ZeroGap { n: u64 },
    #[error(transparent)]
    NumTheory(#[from] NumTheoryError),
    #[error("{0}")]
    Domain(String),
}

/// A finite multiset of torus points, order preserving.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<TorusPoint>,
}

impl PointSet {
    pub fn new(points: Vec<TorusPoint>) -> Result<Self, DiscrepancyError> {
        if points.is_empty() {
            return Err(DiscrepancyError::Domain("point set must be nonempty".into()));
        }
        Ok(PointSet { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> &[TorusPoint] {
        &self.points
    }
}

/// The closed arc `[left, right]` realizing the supremum. `length` is zero
/// for the degenerate single point arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessArc {
    pub left: TorusPoint,
    pub right: TorusPoint,
    pub length: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscrepancyReport {
    pub value: Rat,
    pub witness: WitnessArc,
    pub count_inside: usize,
}

/// Exact supremum over all arcs of `|count/N - length|`.
///
/// Sorting the distinct values `v_1 < ... < v_M` with prefix counts `P_j`,
/// every closed circular range from `v_i` forward to `v_j` has deviation
/// `(P_j/N - v_j) - (P_{i-1}/N - v_i)`, including wrapped ranges (the two
/// unit corrections cancel). Over- and under-filled arcs are complements of
/// each other, so the supremum over all arcs of the absolute deviation is
/// the maximum of that expression over all ordered pairs, which splits into
/// `max_j A_j - min_i B_i`. The result is an exact rational attained by a
/// closed arc with endpoints at data points (possibly degenerate).
pub fn exact_discrepancy(set: &PointSet) -> DiscrepancyReport {
    let n = set.len();
    let n_rat = Rat::from_integer(BigInt::from(n));
    let mut sorted = set.points.to_vec();
    sorted.sort();

    // Distinct values with multiplicities.
    let mut values: Vec<TorusPoint> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    for p in sorted {
        if values.last() == Some(&p) {
            *counts.last_mut().unwrap() += 1;
        } else {
            values.push(p);
            counts.push(1);
        }
    }

    let mut prefix = 0usize;
    let mut best_a: Option<(Rat, usize)> = None;
    let mut best_b: Option<(Rat, usize)> = None;
    let mut prefixes = Vec::with_capacity(values.len());
    for (j, v) in values.iter().enumerate() {
        let before = Rat::new(BigInt::from(prefix), BigInt::from(n));
        prefix += counts[j];
        let after = Rat::new(BigInt::from(prefix), BigInt::from(n));
        prefixes.push(prefix);
        let a = after - v.value();
        let b = before - v.value();
        if best_a.as_ref().is_none_or(|(cur, _)| a > *cur) {
            best_a = Some((a, j));
        }
        if best_b.as_ref().is_none_or(|(cur, _)| b < *cur) {
            best_b = Some((b, j));
        }
    }
    let (a, j_star) = best_a.unwrap();
    let (b, i_star) = best_b.unwrap();
    let value = a - b;

    let left = values[i_star].clone();
    let right = values[j_star].clone();
    let length = if i_star == j_star {
        Rat::zero()
    } else {
        frac_part(&(right.value() - left.value()))
    };
    let count_inside = if i_star <= j_star {
        prefixes[j_star] - (prefixes[i_star] - counts[i_star])
    } else {
        prefixes[j_star] + n - (prefixes[i_star] - counts[i_star])
    };
    debug_assert_eq!(
        value,
        (Rat::new(BigInt::from(count_inside), BigInt::from(n)) - &length).abs(),
        "witness must reproduce the reported value"
    );
    let _ = &n_rat;
    DiscrepancyReport { value, witness: WitnessArc { left, right, length }, count_inside }
}

/// `|sum_{n} e^{2 pi i h x_n}|` as a certified ball.
///
/// `point_error` is a uniform radius around each point; it contributes
/// `2 pi h * point_error * N` to the radius, since the unit circle map is
/// `2 pi` Lipschitz.
pub fn weyl_sum(set: &PointSet, h: u64, point_error: &Rat) -> Ball {
    assert!(h >= 1, "harmonic must be positive");
    let h_rat = Rat::from_integer(BigInt::from(h));
    let mut acc = CBall::zero();
    for p in set.points() {
        let phase = frac_part(&(p.value() * &h_rat));
        acc = acc.add(&CBall::unit(&phase));
    }
    let mut magnitude = acc.magnitude();
    if point_error.is_positive() {
        // 2 pi < 710/113.
        let two_pi_upper = Rat::new(BigInt::from(710), BigInt::from(113));
        let slack = two_pi_upper * h_rat * point_error * Rat::from_integer(BigInt::from(set.len()));
        magnitude = magnitude.widen(&slack);
    }
    magnitude
}

/// Magnitudes `|sum e^{2 pi i h x_n}|` for all `h = 1..=m` in one pass,
/// using incremental complex powers per point.
pub fn weyl_sums_upto(set: &PointSet, m: u64) -> Vec<Ball> {
    assert!(m >= 1);
    let mut acc = vec![CBall::zero(); m as usize];
    for p in set.points() {
        let z = CBall::unit(p.value());
        let mut pow = z.clone();
        for slot in acc.iter_mut() {
            *slot = slot.add(&pow);
            pow = pow.mul(&z);
        }
    }
    acc.into_iter().map(|c| c.magnitude()).collect()
}

/// `C (1/m + sum_{h<=m} |S_h| / (h N))`, the Erdos-Turan majorant of the
/// discrepancy with explicit constant `C`.
pub fn erdos_turan_bound(set: &PointSet, m: u64, c: &Rat) -> Ball {
    assert!(m >= 1, "need m >= 1");
    assert!(c.is_positive(), "constant must be positive");
    let n = set.len() as u64;
    let sums = weyl_sums_upto(set, m);
    let mut acc = Ball::from_rat(&Rat::new(BigInt::one(), BigInt::from(m)));
    for (h, s) in sums.iter().enumerate() {
        let h = h as u64 + 1;
        acc = acc.add(&s.div_uint(h * n));
    }
    acc.mul(&Ball::from_rat(c))
}

/// Rational bracket of `N + sum_{n<=N} min(2N, 1/(2 <n alpha>))`.
///
/// `upper` uses the certified lower gap bounds, so it dominates the bound
/// evaluated at the true parameter; `lower` uses the upper gap bounds and
/// is dominated by it. For an exact parameter the bracket is tight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadWeylBound {
    pub lower: Rat,
    pub upper: Rat,
}

pub fn quad_weyl_rhs(alpha: &RealParam, n_max: u64) -> Result<QuadWeylBound, DiscrepancyError> {
    if n_max == 0 {
        return Err(DiscrepancyError::Domain("need N >= 1".into()));
    }
    // Terms are rounded outward onto the 2^64 dyadic grid before summing;
    // left exact, the running sum's denominator would absorb the lcm of
    // every gap denominator. The bounds stay certified and loosen by under
    // N / 2^64.
    const GRID: u32 = 64;
    let cap = Rat::from_integer(BigInt::from(2 * n_max));
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let mut lower_units = BigInt::from(n_max) << GRID;
    let mut upper_units = lower_units.clone();
    let up = |x: &Rat| (x.numer() << GRID).div_ceil(x.denom());
    let down = |x: &Rat| (x.numer() << GRID).div_floor(x.denom());
    use num_integer::Integer;
    for n in 1..=n_max {
        let enclosure = gap(alpha, n)?;
        if enclosure.hi.is_zero() {
            return Err(DiscrepancyError::ZeroGap { n });
        }
        let upper_term = if enclosure.lo.is_zero() {
            cap.clone()
        } else {
            cap.clone().min((&half / &enclosure.lo).clone())
        };
        let lower_term = cap.clone().min((&half / &enclosure.hi).clone());
        upper_units += up(&upper_term);
        lower_units += down(&lower_term);
    }
    let scale = BigInt::one() << GRID;
    Ok(QuadWeylBound {
        lower: Rat::new(lower_units, scale.clone()),
        upper: Rat::new(upper_units, scale),
    })
}

/// One entry of the decay series: the exact discrepancy of the first `q_k`
/// points of `alpha n^2 + beta n + gamma`.
#[derive(Clone, Debug)]
pub struct DecayPoint {
    pub k: usize,
    pub q: u64,
    pub report: DiscrepancyReport,
}

/// Discrepancy along convergent denominators `q_1 < ... < q_depth`.
///
/// Points are generated from the realized rational value of `alpha`; the
/// prefix must pin every point of the largest set to within an eighth of
/// the mean spacing `1/q_depth` (positions move by at most
/// `error_bound * (q^2 + q)` at scale `q`), otherwise `EnclosureTooWide`
/// is returned. Realized this way, every computed discrepancy is exact for
/// a parameter sharing all convergents up to `q_depth`.
pub fn discrepancy_decay(
    alpha: &RealParam,
    beta: &TorusPoint,
    gamma: &TorusPoint,
    depth: usize,
) -> Result<Vec<DecayPoint>, DiscrepancyError> {
    let digits = alpha
        .digits()
        .ok_or_else(|| DiscrepancyError::Domain("decay series needs a CF parameter".into()))?;
    if digits.len() < depth || depth == 0 {
        return Err(DiscrepancyError::Domain(format!(
            "prefix has {} digits, need at least {depth} (>= 1)",
            digits.len()
        )));
    }
    let table = convergents(&digits[..depth])?;
    let q_top = table.q(depth);
    let q_top_u64 = q_top.to_u64().ok_or_else(|| {
        DiscrepancyError::Domain("largest convergent denominator exceeds u64".into())
    })?;
    let scale = (&q_top * &q_top + &q_top) * BigInt::from(8) * &q_top;
    if alpha.error_bound() * Rat::from_integer(scale) >= Rat::one() {
        return Err(DiscrepancyError::NumTheory(NumTheoryError::EnclosureTooWide {
            q: q_top_u64,
        }));
    }

    let a = alpha.realized();
    let mut out = Vec::with_capacity(depth);
    for k in 1..=depth {
        let q = table.q(k).to_u64().expect("below q_top");
        let mut points = Vec::with_capacity(q as usize);
        for n in 1..=q {
            let n_rat = Rat::from_integer(BigInt::from(n));
            let x = &a * &n_rat * &n_rat + beta.value() * &n_rat + gamma.value();
            points.push(TorusPoint::new(x));
        }
        let report = exact_discrepancy(&PointSet::new(points)?);
        out.push(DecayPoint { k, q, report });
    }
    Ok(out)
}

/// Least squares slope of `log D` against `log q` over the tail half of the
/// series. Returns `None` when fewer than three points are available.
pub fn decay_log_slope(series: &[DecayPoint]) -> Option<f64> {
    if series.len() < 3 {
        return None;
    }
    let tail = &series[series.len() / 2..];
    if tail.len() < 2 {
        return None;
    }
    let points: Vec<(f64, f64)> = tail
        .iter()
        .map(|d| ((d.q as f64).ln(), crate::rat::to_f64(&d.report.value).ln()))
        .collect();
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
