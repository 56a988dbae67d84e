use std::collections::HashSet;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::kab_exponent;
use crate::cf::{ContinuedFraction, ExtReal, QuadReal};
use crate::error::{Error, Result};
use crate::rotation::{level_intervals, EndpointConvention};

/// Largest partial quotient used when enumerating preperiods.
pub const DEFAULT_MAX_QUOTIENT: u32 = 16;

/// `Theta_k(alpha) = max L(2k-2) * lambda(alpha)`.
pub fn theta_k(cf: &ContinuedFraction, k: usize) -> Result<QuadReal> {
    if k == 0 {
        return Err(Error::InvalidArgument("order k must be at least 1".into()));
    }
    if cf.is_rational() {
        return Err(Error::RationalInput);
    }
    let lambda = cf.lagrange_constant()?;
    let (_, max_l) = level_intervals(&cf.value(), 2 * k - 2, EndpointConvention::default())?.extremes();
    max_l.try_mul(&lambda)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaEstimate {
    pub k: usize,
    /// `max A(q_t) / q_t` over the window.
    pub estimate: QuadReal,
    pub t_first: usize,
    pub t_last: usize,
    pub t_best: usize,
    /// `2 / q_{t_first}`: how far a single ratio in the window can sit above
    /// the limsup.
    pub slack: QuadReal,
}

/// Estimates `Theta_k` as `max A(q_t)/q_t` over the last full period of
/// indices ending at `t_max`. Early convergents overshoot the limsup, so
/// they are left out once `t_max` is past the first period.
pub fn theta_limsup_estimate(cf: &ContinuedFraction, k: usize, t_max: usize) -> Result<ThetaEstimate> {
    if cf.is_rational() {
        return Err(Error::RationalInput);
    }
    if t_max == 0 {
        return Err(Error::InvalidArgument("t_max must be at least 1".into()));
    }
    let alpha = cf.value();
    let convs = cf.convergents(t_max);
    let t_first = (t_max + 1).saturating_sub(cf.period().len()).max(1);
    let mut best: Option<(usize, QuadReal)> = None;
    for c in &convs[t_first..=t_max] {
        let q = usize::try_from(&c.q)
            .map_err(|_| Error::InvalidArgument("convergent denominator too large".into()))?;
        let a = kab_exponent(&alpha, k, q, EndpointConvention::default())?;
        let ratio = QuadReal::ratio(a, c.q.clone())?;
        if best.as_ref().is_none_or(|(_, b)| ratio > *b) {
            best = Some((c.t, ratio));
        }
    }
    let (t_best, estimate) = best.expect("window is nonempty");
    Ok(ThetaEstimate {
        k,
        estimate,
        t_first,
        t_last: t_max,
        t_best,
        slack: QuadReal::ratio(2, convs[t_first].q.clone())?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumPoint {
    #[serde(rename = "cf")]
    pub alpha_cf: ContinuedFraction,
    pub k: usize,
    pub theta: ExtReal,
}

/// Finite preperiods in order of length, then lexicographically, with
/// quotients in `1..=max_quotient`.
struct Preperiods {
    digits: Vec<u32>,
    max_quotient: u32,
    started: bool,
}

impl Iterator for Preperiods {
    type Item = Vec<u32>;
    fn next(&mut self) -> Option<Vec<u32>> {
        if !self.started {
            self.started = true;
            return Some(Vec::new());
        }
        // odometer increment; overflow grows the length
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.digits.insert(0, 1);
                self.digits.iter_mut().for_each(|d| *d = 1);
                break;
            }
            i -= 1;
            if self.digits[i] < self.max_quotient {
                self.digits[i] += 1;
                break;
            }
            self.digits[i] = 1;
        }
        Some(self.digits.clone())
    }
}

/// `Theta_k` at `base` and at numbers equivalent to it: `[0; c, (period)]`
/// for finite preperiods `c` enumerated by length, then lexicographically,
/// over quotients `1..=max_quotient`. Expansions equal to an earlier one are
/// skipped. Returns `max(pool, 1)` points, `base` first.
pub fn sample_spectrum(
    k: usize,
    base: &ContinuedFraction,
    pool: usize,
    max_quotient: u32,
) -> Result<Vec<SpectrumPoint>> {
    if base.is_rational() {
        return Err(Error::RationalInput);
    }
    if k == 0 {
        return Err(Error::InvalidArgument("order k must be at least 1".into()));
    }
    if max_quotient == 0 {
        return Err(Error::InvalidArgument("max quotient must be at least 1".into()));
    }
    let want = pool.max(1);
    let mut seen = HashSet::new();
    let mut slopes = vec![base.clone()];
    seen.insert(base.clone());
    let mut prefixes = Preperiods {
        digits: Vec::new(),
        max_quotient,
        started: false,
    };
    while slopes.len() < want {
        let prefix: Vec<BigInt> = prefixes.next().expect("endless").into_iter().map(BigInt::from).collect();
        let cf = base.with_preperiod(&prefix)?;
        if seen.insert(cf.clone()) {
            slopes.push(cf);
        }
    }
    slopes
        .into_par_iter()
        .map(|cf| {
            let theta = theta_k(&cf, k)?;
            Ok(SpectrumPoint {
                alpha_cf: cf,
                k,
                theta: ExtReal::Finite(theta),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(s: &str) -> ContinuedFraction {
        s.parse().unwrap()
    }

    #[test]
    fn theta_examples() {
        let five = QuadReal::sqrt(5).unwrap();
        assert_eq!(theta_k(&cf("[0; (1)]"), 1).unwrap(), five);
        assert_eq!(theta_k(&cf("[0; (2)]"), 1).unwrap(), QuadReal::sqrt(8).unwrap());
        let want = QuadReal::new(-5, 3, 5, 2).unwrap();
        assert_eq!(theta_k(&cf("[0; 2, (1)]"), 2).unwrap(), want);
        assert_eq!(want.to_decimal(6), "0.854102");
        assert!(theta_k(&cf("[0; 2]"), 1).is_err());
    }

    #[test]
    fn limsup_estimates() {
        let est = theta_limsup_estimate(&cf("[0; 2, (1)]"), 2, 20).unwrap();
        let exact = theta_k(&cf("[0; 2, (1)]"), 2).unwrap();
        let err = (&est.estimate - &exact).abs();
        assert!(err < QuadReal::ratio(1, 1000).unwrap(), "{est:?}");

        let golden = theta_limsup_estimate(&cf("[0; (1)]"), 1, 20).unwrap();
        let err = (&golden.estimate - &QuadReal::sqrt(5).unwrap()).abs();
        assert!(err < QuadReal::ratio(1, 1000).unwrap());

        let crude = theta_limsup_estimate(&cf("[0; 2, (1)]"), 2, 1).unwrap();
        assert!(crude.estimate <= &exact + &crude.slack);
    }

    #[test]
    fn preperiod_order() {
        let p = Preperiods {
            digits: Vec::new(),
            max_quotient: 2,
            started: false,
        };
        let got: Vec<Vec<u32>> = p.take(8).collect();
        assert_eq!(
            got,
            vec![vec![], vec![1], vec![2], vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2], vec![1, 1, 1]]
        );
    }

    #[test]
    fn spectrum_basics() {
        let base = cf("[0; (1)]");
        let only = sample_spectrum(2, &base, 0, 16).unwrap();
        assert_eq!(only.len(), 1);
        assert_eq!(only[0].alpha_cf, base);

        let pts = sample_spectrum(2, &base, 40, 16).unwrap();
        assert_eq!(pts.len(), 40);
        let five = QuadReal::sqrt(5).unwrap();
        let lo = &five * &QuadReal::ratio(1, 3).unwrap();
        let distinct: HashSet<_> = pts.iter().map(|p| p.alpha_cf.clone()).collect();
        assert_eq!(distinct.len(), 40);
        for p in &pts {
            let t = p.theta.finite().unwrap();
            assert!(*t > lo && *t < five, "{p:?}");
        }
        let json = serde_json::to_string(&pts[0]).unwrap();
        assert!(json.starts_with("{\"cf\":\"[0; (1)]\",\"k\":2,\"theta\":{"), "{json}");
    }
}
