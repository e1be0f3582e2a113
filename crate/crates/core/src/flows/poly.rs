//! Codings of polynomial torus sequences `alpha n^r + beta n + gamma` and
//! the coding stability radius in the leading coefficient.

use super::FlowError;
use crate::numtheory::RealParam;
use crate::rat::Rat;
use crate::torus::{TorusPartition, TorusPoint};
use crate::window::{SymbolicWindow, SymbolId};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Partition plus certification margin for polynomial codings.
#[derive(Clone, Debug)]
pub struct PolyCodingSpec {
    pub partition: TorusPartition,
    pub margin: Rat,
}

/// The point `alpha n^r + beta n + gamma` mod 1, evaluated at the realized
/// parameter values, together with a certified radius covering the true
/// parameters: parameter errors accumulate as `e_a |n|^r + e_b |n| + e_c`.
pub fn poly_orbit(
    alpha: &RealParam,
    beta: &RealParam,
    gamma: &RealParam,
    r: u32,
    n: i64,
) -> (TorusPoint, Rat) {
    assert!(r >= 1, "polynomial degree must be >= 1");
    let n_int = BigInt::from(n);
    let n_pow = n_int.pow(r);
    let value = alpha.realized() * Rat::from_integer(n_pow.clone())
        + beta.realized() * Rat::from_integer(n_int)
        + gamma.realized();
    let abs_pow = Rat::from_integer(n_pow.abs());
    let abs_n = Rat::from_integer(BigInt::from(n.unsigned_abs()));
    let radius =
        alpha.error_bound() * abs_pow + beta.error_bound() * abs_n + gamma.error_bound();
    (TorusPoint::new(value), radius)
}

/// Two-sided coding window of the polynomial orbit.
///
/// A position is certified when the point's error ball lies strictly inside
/// one partition arc beyond the requested margin; with exact parameters and
/// margin zero every position is certified. Classification uses the
/// realized point with an effective margin `margin + radius`, which is
/// sound because the true point lies strictly within `radius` of the
/// realized one.
pub fn poly_coding(
    alpha: &RealParam,
    beta: &RealParam,
    gamma: &RealParam,
    r: u32,
    spec: &PolyCodingSpec,
    half_width: usize,
) -> SymbolicWindow {
    let size = 2 * half_width + 1;
    let mut symbols = vec![0 as SymbolId; size];
    let mut certified = vec![false; size];

    // Everything runs over one common denominator: the realized point at
    // step n is the integer residue A n^r + B n + G mod D, and the arc
    // boundaries are integers on the same scale, so classification and
    // boundary distances are integer comparisons.
    let a = alpha.realized();
    let b = beta.realized();
    let g = gamma.realized();
    let mut denom = a.denom().lcm(b.denom()).lcm(g.denom());
    for arc in spec.partition.arcs() {
        denom = denom.lcm(arc.left.value().denom());
    }
    let scale_to = |x: &Rat| x.numer() * (&denom / x.denom());
    let a_num = scale_to(&a);
    let b_num = scale_to(&b);
    let g_num = scale_to(&g);
    let cuts: Vec<BigInt> =
        spec.partition.arcs().iter().map(|arc| scale_to(arc.left.value())).collect();

    // Certification threshold at step n, in sub-units of 1/(D 2^64):
    //   ceil(D 2^64 margin) + ceil(D 2^64 e_a) |n|^r + ... .
    // Rounding the coefficients up keeps the check conservative (a
    // certified position always has its true error ball strictly inside
    // the arc) while the 2^64 scale makes the slack negligible.
    const SUBBITS: u32 = 64;
    let scale_ceil =
        |x: &Rat| ((x.numer() << SUBBITS) * &denom).div_ceil(x.denom());
    let margin_units = scale_ceil(&spec.margin);
    let ea_units = scale_ceil(&alpha.error_bound());
    let eb_units = scale_ceil(&beta.error_bound());
    let ec_units = scale_ceil(&gamma.error_bound()) + &margin_units;
    let threshold_zero = ea_units.is_zero() && eb_units.is_zero() && ec_units.is_zero();

    for (idx, n) in (-(half_width as i64)..=half_width as i64).enumerate() {
        let n_int = BigInt::from(n);
        let n_pow = n_int.pow(r);
        let num = (&a_num * &n_pow + &b_num * &n_int + &g_num).mod_floor(&denom);
        let arc_idx = match cuts.binary_search(&num) {
            Ok(i) => i,
            Err(0) => cuts.len() - 1,
            Err(i) => i - 1,
        };
        if threshold_zero {
            symbols[idx] = arc_idx as SymbolId;
            certified[idx] = true;
            continue;
        }
        let threshold =
            &ea_units * n_pow.abs() + &eb_units * BigInt::from(n.unsigned_abs()) + &ec_units;
        // Distances to the two enclosing boundaries; the nearer one is the
        // circle distance to the whole boundary set.
        let dist_left = if num >= cuts[arc_idx] {
            &num - &cuts[arc_idx]
        } else {
            // Only the wrapping last arc can put num below its left cut.
            &num + &denom - &cuts[arc_idx]
        };
        let dist_right = if arc_idx + 1 < cuts.len() {
            &cuts[arc_idx + 1] - &num
        } else if num >= cuts[arc_idx] {
            &cuts[0] + &denom - &num
        } else {
            &cuts[0] - &num
        };
        if dist_left.min(dist_right) << SUBBITS < threshold {
            certified[idx] = false;
        } else {
            symbols[idx] = arc_idx as SymbolId;
            certified[idx] = true;
        }
    }

    let alphabet = spec.partition.labels().to_vec();
    SymbolicWindow::new(symbols, certified, alphabet).expect("window arrays are consistent")
}


/// Largest `delta` such that every leading coefficient within `delta` of
/// `alpha` reproduces the identical certified window on `[-W, W]` (margin
/// zero coding): the minimum orbit distance to a partition boundary divided
/// by `W^r`, since a shift of the coefficient moves point `n` by at most
/// `|delta| |n|^r`.
pub fn stability_radius(
    alpha: &Rat,
    beta: &Rat,
    gamma: &Rat,
    r: u32,
    partition: &TorusPartition,
    half_width: usize,
) -> Result<Rat, FlowError> {
    assert!(r >= 1);
    let mut min_distance: Option<Rat> = None;
    for n in -(half_width as i64)..=half_width as i64 {
        let n_int = BigInt::from(n);
        let x = TorusPoint::new(
            alpha * Rat::from_integer(n_int.pow(r))
                + beta * Rat::from_integer(n_int)
                + gamma,
        );
        let d = partition.boundary_distance(&x);
        if d.is_zero() {
            return Err(FlowError::ZeroRadius { n });
        }
        min_distance = Some(match min_distance {
            None => d,
            Some(m) => m.min(d),
        });
    }
    let d_min = min_distance.expect("window is nonempty");
    let w = BigInt::from(half_width.max(1));
    Ok(d_min / Rat::from_integer(w.pow(r)))
}
