//! Geometry of the rotation `R: x -> {x + alpha}` on the circle `T = [0, 1)`.
//!
//! Everything here is exact: circle points are [`QuadReal`]s reduced mod 1 and
//! all interval lengths are exact differences of cut points.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::cf::{require_irrational, QuadReal};
use crate::error::{Error, Result};

/// A point of `T`, i.e. a value in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CirclePoint(QuadReal);

impl CirclePoint {
    /// Reduces `x` modulo 1.
    pub fn new(x: &QuadReal) -> Self {
        CirclePoint(x.fract())
    }

    pub fn zero() -> Self {
        CirclePoint(QuadReal::zero())
    }

    pub fn value(&self) -> &QuadReal {
        &self.0
    }

    pub fn into_value(self) -> QuadReal {
        self.0
    }

    /// `R^steps(self)` for the rotation by `alpha`.
    pub fn rotate(&self, alpha: &QuadReal, steps: i64) -> Self {
        CirclePoint::new(&(&self.0 + &alpha.mul_int(steps)))
    }
}

/// Which endpoint of each circle interval is closed.
///
/// With `zero_in_i0` the intervals are `[x, y)`, otherwise `(x, y]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EndpointConvention {
    pub zero_in_i0: bool,
}

impl EndpointConvention {
    pub const LEFT_CLOSED: Self = EndpointConvention { zero_in_i0: true };
    pub const RIGHT_CLOSED: Self = EndpointConvention { zero_in_i0: false };

    pub fn flipped(self) -> Self {
        EndpointConvention {
            zero_in_i0: !self.zero_in_i0,
        }
    }
}

impl Default for EndpointConvention {
    fn default() -> Self {
        Self::LEFT_CLOSED
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub start: CirclePoint,
    pub length: QuadReal,
}

/// The partition of `T` cut by a finite set of points.
///
/// Interval `i` runs from `cuts[i]` to `cuts[i + 1]`; the last one wraps
/// around to `cuts[0] + 1`. Cuts are kept sorted from 0 upwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalFamily {
    cuts: Vec<CirclePoint>,
    convention: EndpointConvention,
}

impl IntervalFamily {
    /// Sorts the points and merges duplicates.
    pub fn from_points(
        points: impl IntoIterator<Item = CirclePoint>,
        convention: EndpointConvention,
    ) -> Result<Self> {
        let mut cuts: Vec<CirclePoint> = points.into_iter().collect();
        if cuts.is_empty() {
            return Err(Error::InvalidArgument(
                "an interval family needs at least one cut".into(),
            ));
        }
        cuts.sort();
        cuts.dedup();
        Ok(IntervalFamily { cuts, convention })
    }

    /// Trusts the caller that `cuts` is strictly increasing.
    fn from_sorted(cuts: Vec<CirclePoint>, convention: EndpointConvention) -> Self {
        debug_assert!(cuts.windows(2).all(|w| w[0] < w[1]));
        IntervalFamily { cuts, convention }
    }

    pub fn cuts(&self) -> &[CirclePoint] {
        &self.cuts
    }

    pub fn convention(&self) -> EndpointConvention {
        self.convention
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    pub fn start(&self, i: usize) -> &CirclePoint {
        &self.cuts[i]
    }

    /// Right endpoint of interval `i` as a real number; the last interval ends
    /// at `cuts[0] + 1`.
    pub fn end_value(&self, i: usize) -> QuadReal {
        if i + 1 < self.cuts.len() {
            self.cuts[i + 1].value().clone()
        } else {
            self.cuts[0].value().add_int(1)
        }
    }

    pub fn length(&self, i: usize) -> QuadReal {
        &self.end_value(i) - self.cuts[i].value()
    }

    pub fn lengths(&self) -> Vec<QuadReal> {
        (0..self.len()).map(|i| self.length(i)).collect()
    }

    pub fn intervals(&self) -> Vec<Interval> {
        (0..self.len())
            .map(|i| Interval {
                start: self.cuts[i].clone(),
                length: self.length(i),
            })
            .collect()
    }

    /// An interior point of interval `i`.
    pub fn midpoint(&self, i: usize) -> CirclePoint {
        let mid = self.cuts[i]
            .value()
            .midpoint(&self.end_value(i))
            .expect("cuts share a radicand");
        CirclePoint::new(&mid)
    }

    /// Index of the interval containing `x` under the family's convention.
    pub fn locate(&self, x: &CirclePoint) -> usize {
        let below = match self.convention.zero_in_i0 {
            // number of cuts c <= x
            true => self.cuts.partition_point(|c| c <= x),
            // number of cuts c < x
            false => self.cuts.partition_point(|c| c < x),
        };
        if below == 0 {
            self.cuts.len() - 1
        } else {
            below - 1
        }
    }

    /// Whether the closure of `[start, start + length]` lies inside the closure
    /// of interval `i`.
    pub fn contains_span(&self, i: usize, start: &CirclePoint, length: &QuadReal) -> bool {
        let lo = self.cuts[i].value();
        let hi = self.end_value(i);
        // lift start into [lo, lo + 1)
        let mut s = start.value().clone();
        if s < *lo {
            s = s.add_int(1);
        }
        s >= *lo && &s + length <= hi
    }

    /// `(min length, max length)`.
    pub fn extremes(&self) -> (QuadReal, QuadReal) {
        let lengths = self.lengths();
        let min = lengths.iter().min().unwrap().clone();
        let max = lengths.iter().max().unwrap().clone();
        (min, max)
    }
}

#[derive(Serialize, Deserialize)]
struct IntervalFamilyJson {
    zero_in_i0: bool,
    intervals: Vec<Interval>,
}

impl Serialize for IntervalFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IntervalFamilyJson {
            zero_in_i0: self.convention.zero_in_i0,
            intervals: self.intervals(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntervalFamily {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = IntervalFamilyJson::deserialize(d)?;
        IntervalFamily::from_points(
            raw.intervals.into_iter().map(|iv| iv.start),
            EndpointConvention {
                zero_in_i0: raw.zero_in_i0,
            },
        )
        .map_err(serde::de::Error::custom)
    }
}

/// `{i * alpha}` for each requested (signed) index.
pub fn orbit_points(alpha: &QuadReal, indices: &[i64]) -> Result<Vec<CirclePoint>> {
    require_irrational(alpha)?;
    Ok(indices
        .iter()
        .map(|&i| CirclePoint::new(&alpha.mul_int(i)))
        .collect())
}

/// The level `n` partition cut by `0, {-alpha}, ..., {-n alpha}`, together
/// with the circle order of those points.
///
/// The order is all that is needed to code any point of an interval: `R^i(x)`
/// lies in `I_0` exactly when `x` lies on the arc from `{-i alpha}` forward to
/// `{-(i+1) alpha}`, and for an interval between consecutive cuts that is a
/// comparison of ranks.
#[derive(Clone, Debug)]
pub struct LevelPartition {
    family: IntervalFamily,
    /// `rank[i]` is the position of `{-i alpha}` among the sorted cuts.
    rank: Vec<u32>,
}

impl LevelPartition {
    pub fn new(alpha: &QuadReal, n: usize, convention: EndpointConvention) -> Result<Self> {
        require_irrational(alpha)?;
        let neg = -alpha;
        let mut points: Vec<(usize, CirclePoint)> = Vec::with_capacity(n + 1);
        let mut acc = QuadReal::zero();
        for i in 0..=n {
            points.push((i, CirclePoint::new(&acc)));
            acc = &acc + &neg;
            if i % 64 == 63 {
                acc = acc.fract();
            }
        }
        sort_points(&mut points);
        let mut rank = vec![0u32; n + 1];
        for (r, (i, _)) in points.iter().enumerate() {
            rank[*i] = r as u32;
        }
        let cuts = points.into_iter().map(|(_, p)| p).collect();
        Ok(LevelPartition {
            family: IntervalFamily::from_sorted(cuts, convention),
            rank,
        })
    }

    pub fn family(&self) -> &IntervalFamily {
        &self.family
    }

    pub fn into_family(self) -> IntervalFamily {
        self.family
    }

    /// The level `n`.
    pub fn level(&self) -> usize {
        self.rank.len() - 1
    }

    /// Position of `{-i alpha}` in circle order.
    pub fn rank(&self, i: usize) -> usize {
        self.rank[i] as usize
    }

    /// Letter `i < n` of the factor whose interval is `slot`.
    #[inline]
    pub fn letter(&self, slot: usize, i: usize) -> u8 {
        let a = self.rank[i] as usize;
        let b = self.rank[i + 1] as usize;
        let zero = if a < b {
            a <= slot && slot < b
        } else {
            slot >= a || slot < b
        };
        u8::from(!zero)
    }

    /// The length-`n` factor coded by interval `slot`.
    pub fn word(&self, slot: usize) -> Vec<u8> {
        (0..self.level()).map(|i| self.letter(slot, i)).collect()
    }
}

/// Sorts circle points by exact value. A cheap floating-point key decides
/// whenever two points are far apart; near-ties fall back to exact comparison.
fn sort_points(points: &mut [(usize, CirclePoint)]) {
    const SAFE_GAP: f64 = 1e-9;
    let keys: Vec<f64> = points.iter().map(|(_, p)| p.value().to_f64()).collect();
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        let (ka, kb) = (keys[a], keys[b]);
        if ka.is_finite() && kb.is_finite() && (ka - kb).abs() > SAFE_GAP {
            ka.partial_cmp(&kb).unwrap_or(Ordering::Equal)
        } else {
            points[a].1.cmp(&points[b].1)
        }
    });
    let sorted: Vec<(usize, CirclePoint)> = order.iter().map(|&j| points[j].clone()).collect();
    points.clone_from_slice(&sorted);
}

pub fn level_intervals(
    alpha: &QuadReal,
    n: usize,
    convention: EndpointConvention,
) -> Result<IntervalFamily> {
    Ok(LevelPartition::new(alpha, n, convention)?.into_family())
}

/// Orbit indices `i` whose points `{-i alpha}` cut the k-abelian class
/// intervals of length-`m` factors.
pub fn ikm_indices(k: usize, m: usize) -> Vec<usize> {
    let head = m.min(k.saturating_sub(1));
    let mut idx: Vec<usize> = (0..=head).collect();
    if m + 1 >= k {
        let shift = m + 1 - k;
        idx.extend((0..=head).map(|i| i + shift));
    }
    idx.sort_unstable();
    idx.dedup();
    idx
}

/// The intervals whose parts are the k-abelian classes of length-`m` factors:
/// cut by `D = {0, {-alpha}, ..., {-min(m, k-1) alpha}}` and, when
/// `m >= k - 1`, by `R^{-(m-k+1)}(D)` as well.
pub fn ikm_intervals(
    alpha: &QuadReal,
    k: usize,
    m: usize,
    convention: EndpointConvention,
) -> Result<IntervalFamily> {
    require_irrational(alpha)?;
    check_order_and_length(k, m)?;
    let neg = -alpha;
    let points = ikm_indices(k, m)
        .into_iter()
        .map(|i| CirclePoint::new(&neg.mul_int(i as i64)));
    IntervalFamily::from_points(points, convention)
}

pub(crate) fn check_order_and_length(k: usize, m: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("order k must be at least 1".into()));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("length m must be at least 1".into()));
    }
    Ok(())
}

/// `(min, max)` interval lengths of a family.
pub fn family_extremes(family: &IntervalFamily) -> (QuadReal, QuadReal) {
    family.extremes()
}
