//! Interval exchange transformations with exact rational data.

use super::FlowError;
use crate::rat::{format_rat, Rat};
use crate::window::{SymbolicWindow, SymbolId};
use num_traits::{Signed, Zero};

/// A permutation of `{1..m}` stored zero indexed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    /// From one line notation: `one_line([2, 1])` maps 1 to 2 and 2 to 1.
    pub fn one_line(images: Vec<usize>) -> Result<Self, FlowError> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &img in &images {
            if img < 1 || img > m || seen[img - 1] {
                return Err(FlowError::Domain(format!("not a permutation: {images:?}")));
            }
            seen[img - 1] = true;
        }
        Ok(Permutation { map: images.into_iter().map(|i| i - 1).collect() })
    }

    pub fn identity(m: usize) -> Self {
        Permutation { map: (0..m).collect() }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Zero indexed image.
    pub fn apply(&self, j: usize) -> usize {
        self.map[j]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.map.len()];
        for (j, &img) in self.map.iter().enumerate() {
            inv[img] = j;
        }
        Permutation { map: inv }
    }
}

/// True when no proper prefix `{1..k}` is invariant.
pub fn iet_irreducible(pi: &Permutation) -> bool {
    let m = pi.len();
    let mut max_seen = 0;
    for k in 0..m.saturating_sub(1) {
        max_seen = max_seen.max(pi.map[k]);
        if max_seen == k {
            return false;
        }
    }
    true
}

/// The `(lambda, pi)` interval exchange on `[0, |lambda|)`: piece `j` is
/// translated so the pieces land in the order prescribed by `pi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iet {
    lambda: Vec<Rat>,
    pi: Permutation,
    /// Partial sums of lambda: the domain discontinuities (length m + 1).
    beta: Vec<Rat>,
    /// Partial sums of the permuted lengths: image positions (length m + 1).
    beta_img: Vec<Rat>,
    total: Rat,
}

impl Iet {
    pub fn new(lambda: Vec<Rat>, pi: Permutation) -> Result<Self, FlowError> {
        if lambda.is_empty() || lambda.len() != pi.len() {
            return Err(FlowError::Domain(format!(
                "need matching nonempty lengths and permutation (m = {} vs {})",
                lambda.len(),
                pi.len()
            )));
        }
        for l in &lambda {
            if !l.is_positive() {
                return Err(FlowError::Domain(format!("length {} must be positive", format_rat(l))));
            }
        }
        let m = lambda.len();
        let inv = pi.inverse();
        let lambda_img: Vec<Rat> = (0..m).map(|j| lambda[inv.apply(j)].clone()).collect();
        let partial = |v: &[Rat]| {
            let mut acc = Rat::zero();
            let mut out = vec![Rat::zero()];
            for x in v {
                acc += x;
                out.push(acc.clone());
            }
            out
        };
        let beta = partial(&lambda);
        let beta_img = partial(&lambda_img);
        let total = beta.last().unwrap().clone();
        Ok(Iet { lambda, pi, beta, beta_img, total })
    }

    pub fn len(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn total(&self) -> &Rat {
        &self.total
    }

    pub fn lengths(&self) -> &[Rat] {
        &self.lambda
    }

    pub fn permutation(&self) -> &Permutation {
        &self.pi
    }

    /// Domain cut points `0 = beta_0 < ... < beta_m = |lambda|`.
    pub fn cuts(&self) -> &[Rat] {
        &self.beta
    }

    fn check_domain(&self, x: &Rat) -> Result<(), FlowError> {
        if x.is_negative() || *x >= self.total {
            return Err(FlowError::OutOfDomain(format_rat(x), format_rat(&self.total)));
        }
        Ok(())
    }

    /// Index of the piece `[beta_{j-1}, beta_j)` containing `x`.
    pub fn piece_of(&self, x: &Rat) -> Result<usize, FlowError> {
        self.check_domain(x)?;
        // partition_point over the interior cuts beta_1..beta_{m-1}.
        let j = self.beta[1..self.len()].partition_point(|b| b <= x);
        Ok(j)
    }

    /// Exact image of a point.
    pub fn apply(&self, x: &Rat) -> Result<Rat, FlowError> {
        let j = self.piece_of(x)?;
        Ok(x - &self.beta[j] + &self.beta_img[self.pi.apply(j)])
    }

    /// The inverse transformation is itself an interval exchange, with the
    /// permuted lengths and the inverse permutation.
    pub fn inverse_iet(&self) -> Iet {
        let m = self.len();
        let inv = self.pi.inverse();
        let lambda_img: Vec<Rat> = (0..m).map(|j| self.lambda[inv.apply(j)].clone()).collect();
        Iet::new(lambda_img, inv).expect("inverse data is valid")
    }
}

/// A partition of `[0, total)` into labelled half open pieces, for coding
/// interval exchange orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalPartition {
    /// Ascending boundaries `0 = c_0 < c_1 < ... < c_k = total`.
    boundaries: Vec<Rat>,
    labels: Vec<String>,
}

impl IntervalPartition {
    pub fn new(boundaries: Vec<Rat>, labels: Vec<String>) -> Result<Self, FlowError> {
        if boundaries.len() < 2 || labels.len() + 1 != boundaries.len() {
            return Err(FlowError::Domain("need k+1 boundaries for k labels".into()));
        }
        if !boundaries[0].is_zero() {
            return Err(FlowError::Domain("first boundary must be 0".into()));
        }
        for w in boundaries.windows(2) {
            if w[0] >= w[1] {
                return Err(FlowError::Domain("boundaries must be strictly ascending".into()));
            }
        }
        let mut sorted = labels.clone();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(FlowError::Domain(format!("duplicate label {:?}", w[0])));
            }
        }
        Ok(IntervalPartition { boundaries, labels })
    }

    pub fn total(&self) -> &Rat {
        self.boundaries.last().unwrap()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn locate(&self, x: &Rat) -> usize {
        let k = self.labels.len();
        self.boundaries[1..k].partition_point(|b| b <= x)
    }

    /// Linear distance from `x` to the nearest piece boundary (including
    /// the interval ends).
    pub fn boundary_distance(&self, x: &Rat) -> Rat {
        let i = self.locate(x);
        let left = x - &self.boundaries[i];
        let right = &self.boundaries[i + 1] - x;
        left.min(right)
    }
}

/// Codes the forward and backward orbit of `x0` under `t` against the
/// partition: position `n` of the window holds the label of `t^n(x0)`.
///
/// All data is exact, so positions are certified unless they fall strictly
/// within `margin` of a piece boundary.
pub fn iet_coding(
    t: &Iet,
    x0: &Rat,
    partition: &IntervalPartition,
    margin: &Rat,
    half_width: usize,
) -> Result<SymbolicWindow, FlowError> {
    if partition.total() != t.total() {
        return Err(FlowError::Domain("partition and map cover different intervals".into()));
    }
    t.check_domain(x0)?;
    let size = 2 * half_width + 1;
    let mut symbols = vec![0 as SymbolId; size];
    let mut certified = vec![false; size];
    let mut place = |idx: usize, x: &Rat| {
        if margin.is_positive() && partition.boundary_distance(x) < *margin {
            certified[idx] = false;
        } else {
            symbols[idx] = partition.locate(x) as SymbolId;
            certified[idx] = true;
        }
    };
    place(half_width, x0);
    let mut fwd = x0.clone();
    for n in 1..=half_width {
        fwd = t.apply(&fwd)?;
        place(half_width + n, &fwd);
    }
    let inverse = t.inverse_iet();
    let mut bwd = x0.clone();
    for n in 1..=half_width {
        bwd = inverse.apply(&bwd)?;
        place(half_width - n, &bwd);
    }
    Ok(SymbolicWindow::new(symbols, certified, partition.labels.clone())
        .expect("window arrays are consistent"))
}

/// A finite union of disjoint half open intervals inside `[0, total)`,
/// kept sorted with touching spans merged. Supports the exact set algebra
/// the return-time conditions need.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalSet {
    spans: Vec<(Rat, Rat)>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { spans: Vec::new() }
    }

    pub fn interval(left: Rat, right: Rat) -> Self {
        IntervalSet::normalize(vec![(left, right)])
    }

    fn normalize(mut spans: Vec<(Rat, Rat)>) -> Self {
        spans.retain(|(l, r)| l < r);
        spans.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Rat, Rat)> = Vec::with_capacity(spans.len());
        for (l, r) in spans {
            match out.last_mut() {
                Some(last) if l <= last.1 => {
                    if r > last.1 {
                        last.1 = r;
                    }
                }
                _ => out.push((l, r)),
            }
        }
        IntervalSet { spans: out }
    }

    pub fn spans(&self) -> &[(Rat, Rat)] {
        &self.spans
    }

    pub fn is_empty(&self) -> bool {
        self.spans.is_empty()
    }

    pub fn measure(&self) -> Rat {
        let mut acc = Rat::zero();
        for (l, r) in &self.spans {
            acc += r - l;
        }
        acc
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut spans = self.spans.clone();
        spans.extend(other.spans.iter().cloned());
        IntervalSet::normalize(spans)
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        for (al, ar) in &self.spans {
            for (bl, br) in &other.spans {
                let l = al.max(bl).clone();
                let r = ar.min(br).clone();
                if l < r {
                    out.push((l, r));
                }
            }
        }
        IntervalSet::normalize(out)
    }

    /// Exact image under the exchange: each span is cut at the domain
    /// discontinuities and the pieces are translated.
    pub fn apply_iet(&self, t: &Iet) -> IntervalSet {
        let m = t.len();
        let mut out = Vec::new();
        for (l, r) in &self.spans {
            for j in 0..m {
                let piece_l = &t.beta[j];
                let piece_r = &t.beta[j + 1];
                let cut_l = l.max(piece_l);
                let cut_r = r.min(piece_r);
                if cut_l < cut_r {
                    let shift = &t.beta_img[t.pi.apply(j)] - piece_l;
                    out.push((cut_l + &shift, cut_r + &shift));
                }
            }
        }
        IntervalSet::normalize(out)
    }
}
