//! Exact evaluation of the four return-time conditions for an interval
//! exchange, and a deterministic search for a witnessing pair `(N, J)`.

use super::iet::{Iet, IntervalSet};
use super::FlowError;
use crate::rat::{format_rat, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed};

/// Exact outcome of checking a candidate `(N, J, eps)`.
///
/// The booleans are recomputable from the recorded exact measures:
/// `cond_iii` holds iff `union_measure > (1 - eps) |lambda|` and `cond_iv`
/// iff `return_overlap > (1 - eps) |J|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VeechReport {
    pub n: u64,
    pub interval: (Rat, Rat),
    pub eps: Rat,
    /// The iterates `T^l J`, `1 <= l < N`, are disjoint from `J`.
    pub cond_i: bool,
    /// Each `T^l J`, `0 <= l < N`, sits inside a single translation piece.
    pub cond_ii: bool,
    /// The iterates up to `N - 1` cover all but an `eps` fraction.
    pub cond_iii: bool,
    /// `T^N J` returns onto `J` up to an `eps` fraction.
    pub cond_iv: bool,
    pub union_measure: Rat,
    pub return_overlap: Rat,
}

impl VeechReport {
    pub fn passed(&self) -> bool {
        self.cond_i && self.cond_ii && self.cond_iii && self.cond_iv
    }
}

/// Evaluates all four conditions exactly, tracking every iterate of `J` as
/// an exact interval union.
pub fn veech_check(
    t: &Iet,
    n: u64,
    interval: (Rat, Rat),
    eps: &Rat,
) -> Result<VeechReport, FlowError> {
    if n == 0 {
        return Err(FlowError::Domain("need N >= 1".into()));
    }
    if !eps.is_positive() || *eps >= Rat::one() {
        return Err(FlowError::Domain("need 0 < eps < 1".into()));
    }
    let (left, right) = &interval;
    if left.is_negative() || left >= right || right > t.total() {
        return Err(FlowError::Domain(format!(
            "interval [{}, {}) not inside [0, {})",
            format_rat(left),
            format_rat(right),
            format_rat(t.total())
        )));
    }

    let j_set = IntervalSet::interval(left.clone(), right.clone());
    let j_measure = j_set.measure();
    let mut cond_i = true;
    let mut cond_ii = true;
    let mut union = IntervalSet::empty();
    let mut current = j_set.clone();
    for l in 0..n {
        if l >= 1 && !j_set.intersect(&current).is_empty() {
            cond_i = false;
        }
        if !fits_one_piece(t, &current) {
            cond_ii = false;
        }
        union = union.union(&current);
        current = current.apply_iet(t);
    }
    let union_measure = union.measure();
    let return_overlap = j_set.intersect(&current).measure();

    let one = Rat::one();
    let cond_iii = union_measure > (&one - eps) * t.total();
    let cond_iv = return_overlap > (&one - eps) * &j_measure;
    Ok(VeechReport {
        n,
        interval,
        eps: eps.clone(),
        cond_i,
        cond_ii,
        cond_iii,
        cond_iv,
        union_measure,
        return_overlap,
    })
}

/// The map acts by a single translation on a set iff the set lies inside
/// one piece `[beta_{j-1}, beta_j)`.
fn fits_one_piece(t: &Iet, set: &IntervalSet) -> bool {
    let spans = set.spans();
    if spans.is_empty() {
        return true;
    }
    let lo = &spans[0].0;
    let hi = &spans[spans.len() - 1].1;
    let j = match t.piece_of(lo) {
        Ok(j) => j,
        Err(_) => return false,
    };
    *hi <= t.cuts()[j + 1]
}

/// Deterministic search for a witnessing `(N, J)` with `N <= n_max`.
///
/// Candidate endpoints come from the backward orbit of the discontinuity
/// points up to depth `n_max` (the cylinder subdivision). For each `N` in
/// increasing order, only intervals in the feasibility band
/// `(1 - eps) |lambda| / N < |J| <= |lambda| / N` can satisfy conditions
/// (i) and (iii) simultaneously, so the search scans exactly those, by
/// left endpoint. Returns the first full pass, or `None` when the budget
/// is exhausted (which says nothing about larger scales).
pub fn veech_search(t: &Iet, eps: &Rat, n_max: u64) -> Result<Option<VeechReport>, FlowError> {
    if !eps.is_positive() || *eps >= Rat::one() {
        return Err(FlowError::Domain("need 0 < eps < 1".into()));
    }
    if n_max == 0 {
        return Err(FlowError::Domain("need n_max >= 1".into()));
    }
    let inverse = t.inverse_iet();
    let mut points: Vec<Rat> = t.cuts().to_vec();
    let mut frontier: Vec<Rat> =
        t.cuts().iter().filter(|c| **c < *t.total()).cloned().collect();
    for _ in 0..n_max {
        let mut next = Vec::with_capacity(frontier.len());
        for p in &frontier {
            let pre = inverse.apply(p).expect("cut points stay in the domain");
            next.push(pre);
        }
        points.extend(next.iter().cloned());
        frontier = next;
    }
    points.sort();
    points.dedup();

    let one = Rat::one();
    for n in 1..=n_max {
        let n_rat = Rat::from_integer(BigInt::from(n));
        let band_hi = t.total() / &n_rat;
        let band_lo = (&one - eps) * &band_hi;
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                let len = &points[j] - &points[i];
                if len > band_hi {
                    break;
                }
                if len <= band_lo {
                    continue;
                }
                let report =
                    veech_check(t, n, (points[i].clone(), points[j].clone()), eps)?;
                if report.passed() {
                    return Ok(Some(report));
                }
            }
        }
    }
    Ok(None)
}
