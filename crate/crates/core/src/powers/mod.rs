//! k-abelian powers in Sturmian words: the exponents `A_{k,alpha}(m)`, the
//! critical exponents `Theta_k`, spectrum sampling and the integer-power
//! construction.

mod linfty;
mod oracle;
mod spectrum;

use serde::{Deserialize, Serialize};

use crate::cf::{require_irrational, ContinuedFraction, QuadReal};
use crate::error::{Error, Result};
use crate::kabelian::kab_equivalent;
use crate::rotation::{
    check_order_and_length, ikm_intervals, level_intervals, CirclePoint, EndpointConvention,
};
use crate::words::{sturmian_prefix, SturmianSpec, Word};

pub use linfty::{construct_linfty_slope, max_integer_power_exponent, LinftyConstruction, LinftyStage};
pub use oracle::{brute_kab_exponent, brute_power_exponent, oracle_cap, CAP_ENV, DEFAULT_CAP};
pub use spectrum::{
    sample_spectrum, theta_k, theta_limsup_estimate, SpectrumPoint, ThetaEstimate,
    DEFAULT_MAX_QUOTIENT,
};

/// An intercept whose Sturmian word starts with a power of maximal exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub intercept: CirclePoint,
    pub word: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentRecord {
    pub k: usize,
    pub m: usize,
    pub exponent: u64,
    pub witness: Option<Witness>,
}

/// The longest class interval, its index and `||m alpha||`.
struct ExponentData {
    longest: usize,
    max_len: QuadReal,
    step: QuadReal,
    exponent: u64,
}

fn exponent_data(
    alpha: &QuadReal,
    k: usize,
    m: usize,
    convention: EndpointConvention,
) -> Result<(ExponentData, crate::rotation::IntervalFamily)> {
    require_irrational(alpha)?;
    check_order_and_length(k, m)?;
    let family = ikm_intervals(alpha, k, m, convention)?;
    let lengths = family.lengths();
    let (longest, max_len) = lengths
        .iter()
        .enumerate()
        .fold(None::<(usize, &QuadReal)>, |best, (i, l)| match best {
            Some((_, b)) if b > l => best,
            _ => Some((i, l)),
        })
        .expect("nonempty family");
    let step = alpha.mul_int(m as i64).dist_to_int();
    let ratio = max_len.try_div(&step)?.floor();
    let gamma = u64::from(*max_len != step);
    let exponent = u64::try_from(ratio)
        .map_err(|_| Error::InvalidArgument("exponent does not fit in 64 bits".into()))?
        + gamma;
    Ok((
        ExponentData {
            longest,
            max_len: max_len.clone(),
            step,
            exponent,
        },
        family,
    ))
}

/// `A_{k,alpha}(m)` from the class interval geometry, without a witness.
pub fn kab_exponent(alpha: &QuadReal, k: usize, m: usize, convention: EndpointConvention) -> Result<u64> {
    Ok(exponent_data(alpha, k, m, convention)?.0.exponent)
}

/// `A_{k,alpha}(m) = floor(max I_{k,m} / ||m alpha||) + gamma` with a witness:
/// an intercept `x` such that `x, x + m alpha, ..., x + (A-1) m alpha` all lie
/// in a longest class interval.
pub fn max_kab_exponent(
    alpha: &QuadReal,
    k: usize,
    m: usize,
    convention: EndpointConvention,
) -> Result<ExponentRecord> {
    let (data, family) = exponent_data(alpha, k, m, convention)?;
    let a = data.exponent;
    let slack = &data.max_len - &data.step.mul_int(a as i64 - 1);
    let half = QuadReal::ratio(1, 2)?;
    let half_slack = &slack * &half;
    let forward = alpha.mul_int(m as i64).fract() < half;
    let x = if forward {
        family.start(data.longest).value() + &half_slack
    } else {
        &family.end_value(data.longest) - &half_slack
    };
    let slope = alpha.fract();
    let spec = SturmianSpec::new(slope, &x, convention)?;
    let word = sturmian_prefix(&spec, a as usize * m);
    let first = word.prefix(m);
    for b in 1..a as usize {
        if !kab_equivalent(&first, &word.slice(b * m, m), k)? {
            return Err(Error::Invariant(format!(
                "witness block {b} of {word} is not {k}-abelian equivalent to the first"
            )));
        }
    }
    Ok(ExponentRecord {
        k,
        m,
        exponent: a,
        witness: Some(Witness {
            intercept: spec.intercept().clone(),
            word,
        }),
    })
}

/// Per-convergent outcome of [`exponent_bound_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundWindow {
    pub t: usize,
    #[serde(with = "crate::serde_bigint")]
    pub q_t: num_bigint::BigInt,
    pub exponent_at_q_t: u64,
    /// Largest `A(m)` over `1 <= m < q_{t+1}` and the first `m` attaining it.
    pub max_exponent: u64,
    pub argmax: usize,
    /// Whether the sharper bound `A(m) <= A(q_t) + 1` held throughout.
    pub plus_one_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundViolation {
    pub check: String,
    pub t: Option<usize>,
    pub m: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub k: usize,
    /// First `t` with `||q_t alpha|| < min L(2k-2)`.
    pub t0: Option<usize>,
    pub windows: Vec<BoundWindow>,
    pub approx_checked: usize,
    /// Smallest and largest `floor(max L(2k-2) / ||m alpha||) - A(m)` seen.
    pub approx_diff_range: Option<(i64, i64)>,
    pub violations: Vec<BoundViolation>,
}

/// Checks `A(m) <= A(q_t) + 2` for `1 <= m < q_{t+1}` at every `t <= t_max`
/// with `||q_t alpha|| < min L(2k-2)`, and
/// `|floor(max L(2k-2) / ||m alpha||) - A(m)| <= 1` for every such `m` with
/// `||m alpha|| < min L(2k-2)`.
pub fn exponent_bound_check(cf: &ContinuedFraction, k: usize, t_max: usize) -> Result<BoundReport> {
    if cf.is_rational() {
        return Err(Error::RationalInput);
    }
    if k == 0 {
        return Err(Error::InvalidArgument("order k must be at least 1".into()));
    }
    let alpha = cf.value();
    let conv = EndpointConvention::default();
    let (min_l, max_l) = level_intervals(&alpha, 2 * k - 2, conv)?.extremes();
    let convs = cf.convergents(t_max + 1);
    let q: Vec<usize> = convs
        .iter()
        .map(|c| {
            usize::try_from(&c.q)
                .map_err(|_| Error::InvalidArgument("convergent denominator too large".into()))
        })
        .collect::<Result<_>>()?;
    let m_limit = q[t_max + 1];
    let mut exps = vec![0u64; m_limit + 1];
    for (m, e) in exps.iter_mut().enumerate().skip(1) {
        *e = kab_exponent(&alpha, k, m, conv)?;
    }
    let dist = |m: usize| alpha.mul_int(m as i64).dist_to_int();

    let mut report = BoundReport {
        k,
        t0: None,
        windows: Vec::new(),
        approx_checked: 0,
        approx_diff_range: None,
        violations: Vec::new(),
    };
    for t in 1..=t_max {
        if q[t] == 0 || dist(q[t]) >= min_l {
            continue;
        }
        report.t0.get_or_insert(t);
        let base = exps[q[t]];
        let (mut best, mut argmax) = (0, 1);
        for m in 1..q[t + 1] {
            if exps[m] > best {
                best = exps[m];
                argmax = m;
            }
            if exps[m] > base + 2 {
                report.violations.push(BoundViolation {
                    check: "convergents".into(),
                    t: Some(t),
                    m,
                    detail: format!("A({m}) = {} > A(q_{t}) + 2 = {}", exps[m], base + 2),
                });
            }
        }
        report.windows.push(BoundWindow {
            t,
            q_t: convs[t].q.clone(),
            exponent_at_q_t: base,
            max_exponent: best,
            argmax,
            plus_one_holds: best <= base + 1,
        });
    }
    for m in 1..m_limit {
        let d = dist(m);
        if d >= min_l {
            continue;
        }
        report.approx_checked += 1;
        let approx = max_l.try_div(&d)?.floor();
        let diff = i64::try_from(approx - num_bigint::BigInt::from(exps[m]))
            .map_err(|_| Error::InvalidArgument("exponent difference too large".into()))?;
        let range = report.approx_diff_range.get_or_insert((diff, diff));
        range.0 = range.0.min(diff);
        range.1 = range.1.max(diff);
        if diff.abs() > 1 {
            report.violations.push(BoundViolation {
                check: "approximate".into(),
                t: None,
                m,
                detail: format!("floor(max L / ||m alpha||) - A(m) = {diff}"),
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(s: &str) -> ContinuedFraction {
        s.parse().unwrap()
    }

    #[test]
    fn fibonacci_exponents() {
        let a = cf("[0; 2, (1)]").value();
        let conv = EndpointConvention::default();
        let r = max_kab_exponent(&a, 2, 5, conv).unwrap();
        assert_eq!(r.exponent, 5);
        let w = r.witness.unwrap().word;
        assert_eq!(w.to_string(), "1010010100100101001010010");
        assert_eq!(max_kab_exponent(&a, 2, 7, conv).unwrap().exponent, 1);
    }

    #[test]
    fn beta_exponents() {
        let b = cf("[0; 3, 1, 1, 1, 100, (1)]").value();
        let conv = EndpointConvention::default();
        assert_eq!(kab_exponent(&b, 2, 4, conv).unwrap(), 6);
        assert_eq!(kab_exponent(&b, 2, 7, conv).unwrap(), 5);
        let r = max_kab_exponent(&b, 2, 4, conv).unwrap();
        assert_eq!(r.witness.unwrap().word.len(), 24);
    }

    #[test]
    fn witnesses_under_both_conventions() {
        for s in ["[0; (1)]", "[0; (2)]", "[0; (1, 2)]"] {
            let a = cf(s).value();
            for conv in [EndpointConvention::LEFT_CLOSED, EndpointConvention::RIGHT_CLOSED] {
                for k in 1..=3 {
                    for m in 1..=12 {
                        let r = max_kab_exponent(&a, k, m, conv).unwrap();
                        assert_eq!(r.witness.unwrap().word.len() as u64, r.exponent * m as u64);
                    }
                }
            }
        }
    }

    #[test]
    fn bound_check_small() {
        let r = exponent_bound_check(&cf("[0; 2, (1)]"), 2, 8).unwrap();
        assert!(r.violations.iter().all(|v| v.check == "approximate"), "{:?}", r.violations);
        assert_eq!(r.t0, Some(2));
        assert!(r.approx_checked > 0);
        // the floor can undershoot A(m) by 2: A(11) = 3 while max L(2)/||11 alpha|| < 2
        assert_eq!(r.approx_diff_range, Some((-2, 0)));
        assert!(r.violations.iter().any(|v| v.m == 11));
    }
}
