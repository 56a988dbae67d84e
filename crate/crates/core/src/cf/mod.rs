//! Eventually periodic continued fractions and the quadratic irrationals they
//! denote.

mod notation;
pub mod quad;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use quad::QuadReal;

/// `[a0; a1, ..., an, (b1, ..., bp)]` in canonical form.
///
/// An empty period means the value is rational. Canonical form keeps the
/// period primitive and the preperiod as short as possible, and a rational
/// expansion never ends in `1` (other than `[1]` itself), so structural
/// equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    preperiod: Vec<BigInt>,
    period: Vec<BigInt>,
}

impl ContinuedFraction {
    pub fn new(preperiod: Vec<BigInt>, period: Vec<BigInt>) -> Result<Self> {
        if preperiod.is_empty() {
            return Err(Error::InvalidArgument(
                "a continued fraction needs at least a0".into(),
            ));
        }
        let n = preperiod.len();
        for (index, a) in preperiod
            .iter()
            .enumerate()
            .skip(1)
            .chain(period.iter().enumerate().map(|(i, b)| (n + i, b)))
        {
            if *a < BigInt::one() {
                return Err(Error::InvalidQuotient {
                    index,
                    value: a.to_string(),
                });
            }
        }
        let mut cf = ContinuedFraction { preperiod, period };
        cf.canonicalize();
        Ok(cf)
    }

    pub fn periodic(preperiod: &[i64], period: &[i64]) -> Result<Self> {
        Self::new(
            preperiod.iter().map(|&a| a.into()).collect(),
            period.iter().map(|&b| b.into()).collect(),
        )
    }

    pub fn parse(text: &str) -> Result<Self> {
        notation::parse(text)
    }

    fn canonicalize(&mut self) {
        if self.period.is_empty() {
            if self.preperiod.len() > 1 && self.preperiod.last().is_some_and(One::is_one) {
                self.preperiod.pop();
                *self.preperiod.last_mut().unwrap() += 1;
            }
            return;
        }
        let len = primitive_root_len(&self.period);
        self.period.truncate(len);
        while self.preperiod.len() > 1 && self.preperiod.last() == self.period.last() {
            self.preperiod.pop();
            self.period.rotate_right(1);
        }
    }

    pub fn preperiod(&self) -> &[BigInt] {
        &self.preperiod
    }

    pub fn period(&self) -> &[BigInt] {
        &self.period
    }

    pub fn is_rational(&self) -> bool {
        self.period.is_empty()
    }

    /// Partial quotient `a_i`; `None` past the end of a rational expansion.
    pub fn quotient(&self, i: usize) -> Option<&BigInt> {
        let n = self.preperiod.len();
        if i < n {
            Some(&self.preperiod[i])
        } else if self.period.is_empty() {
            None
        } else {
            Some(&self.period[(i - n) % self.period.len()])
        }
    }

    /// Exact value. Periodic tails are solved from their fixed-point equation
    /// and the preperiod is folded in from the back.
    pub fn value(&self) -> QuadReal {
        let (mut acc, rest) = if self.period.is_empty() {
            let (last, rest) = self.preperiod.split_last().unwrap();
            (QuadReal::integer(last.clone()), rest)
        } else {
            (purely_periodic_value(&self.period), &self.preperiod[..])
        };
        for a in rest.iter().rev() {
            acc = acc.recip().expect("complete quotients are >= 1").add_int(a.clone());
        }
        acc
    }

    /// Convergents `p_t/q_t` for `t = 0..=t_max` (fewer for a short rational).
    pub fn convergents(&self, t_max: usize) -> Vec<Convergent> {
        let mut out = Vec::with_capacity(t_max + 1);
        let (mut p_prev, mut p) = (BigInt::zero(), BigInt::one());
        let (mut q_prev, mut q) = (BigInt::one(), BigInt::zero());
        for t in 0..=t_max {
            let Some(a) = self.quotient(t) else { break };
            let p_next = a * &p + &p_prev;
            let q_next = a * &q + &q_prev;
            p_prev = std::mem::replace(&mut p, p_next);
            q_prev = std::mem::replace(&mut q, q_next);
            out.push(Convergent {
                t,
                p: p.clone(),
                q: q.clone(),
            });
        }
        out
    }

    /// Lagrange constant `limsup ([a_{t+1}; a_{t+2}, ...] + [0; a_t, ..., a_1])`.
    ///
    /// Along each residue of `t` modulo the period both tails converge to
    /// purely periodic values (the backward one runs through the reversed
    /// period), so the limsup is the largest of those limits.
    pub fn lagrange_constant(&self) -> Result<QuadReal> {
        if self.is_rational() {
            return Err(Error::RationalInput);
        }
        let b = &self.period;
        let p = b.len();
        let mut best: Option<QuadReal> = None;
        for j in 0..p {
            let forward: Vec<BigInt> = (0..p).map(|i| b[(j + i) % p].clone()).collect();
            let backward: Vec<BigInt> = (0..p).map(|i| b[(j + 2 * p - 1 - i) % p].clone()).collect();
            let value = purely_periodic_value(&forward)
                + purely_periodic_value(&backward).recip().expect("positive");
            if best.as_ref().is_none_or(|m| value > *m) {
                best = Some(value);
            }
        }
        Ok(best.unwrap())
    }

    /// Whether the two expansions have eventually identical tails.
    pub fn is_equivalent(&self, other: &Self) -> Result<bool> {
        if self.is_rational() || other.is_rational() {
            return Err(Error::RationalInput);
        }
        let (a, b) = (&self.period, &other.period);
        if a.len() != b.len() {
            return Ok(false);
        }
        Ok((0..a.len()).any(|shift| (0..a.len()).all(|i| a[(i + shift) % a.len()] == b[i])))
    }

    /// `[0; c1, ..., cj, (period)]`: a number equivalent to this one with the
    /// given finite preperiod after `a0 = 0`.
    pub fn with_preperiod(&self, prefix: &[BigInt]) -> Result<Self> {
        let mut pre = vec![BigInt::zero()];
        pre.extend_from_slice(prefix);
        Self::new(pre, self.period.clone())
    }
}

/// Length of the shortest `w` with `period = w^k`.
fn primitive_root_len(period: &[BigInt]) -> usize {
    let n = period.len();
    (1..=n)
        .find(|&len| n % len == 0 && (len..n).all(|i| period[i] == period[i - len]))
        .unwrap_or(n)
}

/// Value of the purely periodic `[(b1; b2, ..., bp)]`, i.e. the root `x > 1` of
/// `x = [b1; b2, ..., bp, x]`.
pub fn purely_periodic_value(period: &[BigInt]) -> QuadReal {
    assert!(!period.is_empty(), "empty period");
    // [[p1, p0], [q1, q0]] = product of [[b, 1], [1, 0]]
    let (mut p0, mut p1) = (BigInt::zero(), BigInt::one());
    let (mut q0, mut q1) = (BigInt::one(), BigInt::zero());
    for b in period {
        let p2 = b * &p1 + &p0;
        let q2 = b * &q1 + &q0;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
    }
    // q1 x^2 + (q0 - p1) x - p0 = 0, positive root.
    let lin = &p1 - &q0;
    let disc = &lin * &lin + BigInt::from(4) * &q1 * &p0;
    QuadReal::new(lin, 1, disc, q1 * 2).expect("q1 > 0")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Convergent {
    pub t: usize,
    #[serde(with = "crate::serde_bigint")]
    pub p: BigInt,
    #[serde(with = "crate::serde_bigint")]
    pub q: BigInt,
}

impl Convergent {
    pub fn value(&self) -> QuadReal {
        QuadReal::ratio(self.p.clone(), self.q.clone()).expect("q_t > 0")
    }
}

/// A real number or `+inf`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtReal {
    Finite(QuadReal),
    Infinity,
}

impl ExtReal {
    pub fn finite(&self) -> Option<&QuadReal> {
        match self {
            ExtReal::Finite(x) => Some(x),
            ExtReal::Infinity => None,
        }
    }
}

impl Serialize for ExtReal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtReal::Finite(x) => x.serialize(s),
            ExtReal::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Tag(String),
            Value(QuadReal),
        }
        match Raw::deserialize(d)? {
            Raw::Tag(s) if s == "inf" => Ok(ExtReal::Infinity),
            Raw::Tag(s) => Err(serde::de::Error::custom(format!("expected \"inf\", got {s:?}"))),
            Raw::Value(x) => Ok(ExtReal::Finite(x)),
        }
    }
}

impl Serialize for ContinuedFraction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ContinuedFraction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub(crate) fn require_irrational(x: &QuadReal) -> Result<()> {
    if x.is_rational() {
        Err(Error::RationalInput)
    } else {
        Ok(())
    }
}
