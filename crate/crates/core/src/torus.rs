//! Exact arithmetic on the circle `T = R/Z`: points, the metric, arcs,
//! partitions into arcs, and certified classification of points against a
//! partition.
//!
//! Arcs are half open `[left, left + length)` with wraparound; the left
//! endpoint belongs to the arc. A partition is a family of arcs that tiles
//! the circle exactly, so classification with margin zero is total.

use crate::rat::{self, frac_part, Rat};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// A point of `R/Z`, stored as its representative in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorusPoint(Rat);

impl TorusPoint {
    /// Reduces an arbitrary rational mod 1.
    pub fn new(x: Rat) -> Self {
        TorusPoint(frac_part(&x))
    }

    pub fn zero() -> Self {
        TorusPoint(Rat::zero())
    }

    pub fn value(&self) -> &Rat {
        &self.0
    }

    pub fn into_value(self) -> Rat {
        self.0
    }
}

/// `x mod 1` as a torus point.
pub fn frac(x: &Rat) -> TorusPoint {
    TorusPoint::new(x.clone())
}

/// Distance to the nearest integer of `x - y`; always in `[0, 1/2]`.
pub fn torus_dist(x: &TorusPoint, y: &TorusPoint) -> Rat {
    let d = frac_part(&(x.value() - y.value()));
    let other = Rat::one() - &d;
    if d <= other {
        d
    } else {
        other
    }
}

/// Half open arc `[left, left + length)` with wraparound, `0 < length <= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc {
    pub left: TorusPoint,
    #[serde(with = "rat::serde_pq")]
    pub length: Rat,
}

impl Arc {
    pub fn new(left: TorusPoint, length: Rat) -> Result<Self, PartitionError> {
        if length <= Rat::zero() || length > Rat::one() {
            return Err(PartitionError::BadArcLength(rat::format_rat(&length)));
        }
        Ok(Arc { left, length })
    }

    /// The right endpoint reduced mod 1 (not a member of the arc).
    pub fn right(&self) -> TorusPoint {
        TorusPoint::new(self.left.value() + &self.length)
    }

    pub fn contains(&self, p: &TorusPoint) -> bool {
        // Position of p measured forward from the left endpoint.
        let offset = frac_part(&(p.value() - self.left.value()));
        offset < self.length
    }
}

impl Serialize for TorusPoint {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&rat::format_rat(&self.0))
    }
}

impl<'de> Deserialize<'de> for TorusPoint {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        let x = rat::parse_rat(&s).map_err(serde::de::Error::custom)?;
        Ok(TorusPoint::new(x))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PartitionError {
    #[error("arc length {0} outside (0, 1]")]
    BadArcLength(String),
    #[error("partition needs at least one arc")]
    Empty,
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("arcs do not tile the circle: gap or overlap after arc {0}")]
    NotATiling(usize),
}

/// Finitely many disjoint arcs covering the circle, one distinct label each.
///
/// Arcs are kept sorted by left endpoint; after sorting, each arc must end
/// exactly where the next begins (cyclically), which is equivalent to the
/// arcs being pairwise disjoint with lengths summing to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusPartition {
    arcs: Vec<Arc>,
    labels: Vec<String>,
}

impl TorusPartition {
    pub fn new(mut pieces: Vec<(Arc, String)>) -> Result<Self, PartitionError> {
        if pieces.is_empty() {
            return Err(PartitionError::Empty);
        }
        pieces.sort_by(|a, b| a.0.left.cmp(&b.0.left));
        let mut total = Rat::zero();
        for i in 0..pieces.len() {
            let next = &pieces[(i + 1) % pieces.len()].0.left;
            if pieces[i].0.right() != *next {
                return Err(PartitionError::NotATiling(i));
            }
            total += &pieces[i].0.length;
        }
        // The cyclic endpoint check cannot tell one wrap from several, so
        // the lengths must also sum to exactly one.
        if !total.is_one() {
            return Err(PartitionError::NotATiling(0));
        }
        let mut labels: Vec<String> = pieces.iter().map(|p| p.1.clone()).collect();
        let arcs = pieces.into_iter().map(|p| p.0).collect();
        let mut seen = labels.clone();
        seen.sort();
        for w in seen.windows(2) {
            if w[0] == w[1] {
                return Err(PartitionError::DuplicateLabel(w[0].clone()));
            }
        }
        labels.shrink_to_fit();
        Ok(TorusPartition { arcs, labels })
    }

    /// Partition from sorted cut points `0 <= c_0 < c_1 < ... < 1`; arc `i`
    /// is `[c_i, c_{i+1})` (cyclically for the last).
    pub fn from_cuts(cuts: Vec<(Rat, String)>) -> Result<Self, PartitionError> {
        let mut cuts: Vec<(TorusPoint, String)> = cuts
            .into_iter()
            .map(|(c, l)| (TorusPoint::new(c), l))
            .collect();
        if cuts.is_empty() {
            return Err(PartitionError::Empty);
        }
        cuts.sort_by(|a, b| a.0.cmp(&b.0));
        let n = cuts.len();
        let mut pieces = Vec::with_capacity(n);
        for i in 0..n {
            let left = cuts[i].0.clone();
            let next = cuts[(i + 1) % n].0.clone();
            let length = frac_part(&(next.value() - left.value()));
            let length = if length.is_zero() { Rat::one() } else { length };
            pieces.push((Arc::new(left, length)?, cuts[i].1.clone()));
        }
        TorusPartition::new(pieces)
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Index of the arc containing `p`. Total: every point lies in exactly
    /// one arc.
    pub fn locate(&self, p: &TorusPoint) -> usize {
        // Binary search over sorted left endpoints; a point before the first
        // left endpoint belongs to the last arc wrapping past 1.
        match self.arcs.binary_search_by(|a| a.left.cmp(p)) {
            Ok(i) => i,
            Err(0) => self.arcs.len() - 1,
            Err(i) => i - 1,
        }
    }

    /// Circle distance from `p` to the nearest arc boundary.
    ///
    /// The nearest boundary is one of the two endpoints of the arc
    /// containing `p`, since every other boundary lies beyond one of them
    /// in circular order.
    pub fn boundary_distance(&self, p: &TorusPoint) -> Rat {
        let i = self.locate(p);
        let arc = &self.arcs[i];
        let d_left = torus_dist(p, &arc.left);
        let d_right = torus_dist(p, &arc.right());
        d_left.min(d_right)
    }
}

/// Result of classifying a point against a partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// Index of the containing arc (label lookup via the partition).
    Label(usize),
    /// Within `margin` of some arc boundary, so an inexactly known point
    /// cannot be certified.
    Ambiguous,
}

/// Label of the arc containing `p`, or `Ambiguous` when `p` is strictly
/// closer than `margin` to an arc endpoint.
pub fn classify(p: &TorusPoint, partition: &TorusPartition, margin: &Rat) -> Classification {
    debug_assert!(!margin.is_negative());
    if margin.is_positive() && partition.boundary_distance(p) < *margin {
        return Classification::Ambiguous;
    }
    Classification::Label(partition.locate(p))
}

/// The standard serialized shape: a JSON array of `{left, length, label}`.
#[derive(Serialize, Deserialize)]
struct ArcRecord {
    left: TorusPoint,
    #[serde(with = "rat::serde_pq")]
    length: Rat,
    label: String,
}

impl Serialize for TorusPartition {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = ser.serialize_seq(Some(self.arcs.len()))?;
        for (arc, label) in self.arcs.iter().zip(&self.labels) {
            seq.serialize_element(&ArcRecord {
                left: arc.left.clone(),
                length: arc.length.clone(),
                label: label.clone(),
            })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for TorusPartition {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let records = Vec::<ArcRecord>::deserialize(de)?;
        let pieces = records
            .into_iter()
            .map(|r| Ok((Arc::new(r.left, r.length).map_err(serde::de::Error::custom)?, r.label)))
            .collect::<Result<Vec<_>, D::Error>>()?;
        TorusPartition::new(pieces).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn halves() -> TorusPartition {
        TorusPartition::from_cuts(vec![
            (rat(0, 1), "a".into()),
            (rat(1, 2), "b".into()),
        ])
        .unwrap()
    }

    #[test]
    fn frac_examples() {
        assert_eq!(frac(&rat(7, 4)), TorusPoint::new(rat(3, 4)));
        assert_eq!(frac(&rat(-1, 4)), TorusPoint::new(rat(3, 4)));
        assert_eq!(frac(&rat(0, 1)), TorusPoint::zero());
    }

    #[test]
    fn dist_examples() {
        let p = |a, b| TorusPoint::new(rat(a, b));
        assert_eq!(torus_dist(&p(0, 1), &p(1, 2)), rat(1, 2));
        assert_eq!(torus_dist(&p(1, 10), &p(9, 10)), rat(1, 5));
        assert_eq!(torus_dist(&p(3, 7), &p(3, 7)), rat(0, 1));
    }

    #[test]
    fn classify_interior_boundary_margin() {
        let part = halves();
        let zero = Rat::zero();
        assert_eq!(
            classify(&TorusPoint::new(rat(1, 4)), &part, &zero),
            Classification::Label(0)
        );
        // Half open convention: the left endpoint belongs to its arc.
        assert_eq!(
            classify(&TorusPoint::new(rat(1, 2)), &part, &zero),
            Classification::Label(1)
        );
        let near = TorusPoint::new(rat(1, 2) - rat(1, 1_000_000_000));
        assert_eq!(
            classify(&near, &part, &rat(1, 1_000_000)),
            Classification::Ambiguous
        );
        // With margin zero the same point classifies.
        assert_eq!(classify(&near, &part, &zero), Classification::Label(0));
    }

    #[test]
    fn classify_is_total_on_wrapping_partition() {
        // Partition whose last arc wraps past 1.
        let part = TorusPartition::from_cuts(vec![
            (rat(1, 5), "x".into()),
            (rat(4, 5), "y".into()),
        ])
        .unwrap();
        assert_eq!(part.len(), 2);
        let zero = Rat::zero();
        assert_eq!(
            classify(&TorusPoint::zero(), &part, &zero),
            Classification::Label(1)
        );
        assert_eq!(
            classify(&TorusPoint::new(rat(1, 5)), &part, &zero),
            Classification::Label(0)
        );
        assert_eq!(
            classify(&TorusPoint::new(rat(9, 10)), &part, &zero),
            Classification::Label(1)
        );
    }

    #[test]
    fn partition_validation() {
        assert!(TorusPartition::new(vec![]).is_err());
        // Gap between arcs.
        let gap = TorusPartition::new(vec![
            (Arc::new(TorusPoint::zero(), rat(1, 3)).unwrap(), "a".into()),
            (Arc::new(TorusPoint::new(rat(1, 2)), rat(1, 2)).unwrap(), "b".into()),
        ]);
        assert!(gap.is_err());
        // Duplicate label.
        let dup = TorusPartition::from_cuts(vec![
            (rat(0, 1), "a".into()),
            (rat(1, 2), "a".into()),
        ]);
        assert!(dup.is_err());
        // Full circle single arc is fine.
        let full = TorusPartition::new(vec![(
            Arc::new(TorusPoint::zero(), rat(1, 1)).unwrap(),
            "all".into(),
        )])
        .unwrap();
        assert_eq!(full.locate(&TorusPoint::new(rat(17, 19))), 0);
    }

    #[test]
    fn partition_json_shape() {
        let part = halves();
        let json = serde_json::to_string(&part).unwrap();
        assert_eq!(
            json,
            r#"[{"left":"0","length":"1/2","label":"a"},{"left":"1/2","length":"1/2","label":"b"}]"#
        );
        let back: TorusPartition = serde_json::from_str(&json).unwrap();
        assert_eq!(back, part);
    }
}
