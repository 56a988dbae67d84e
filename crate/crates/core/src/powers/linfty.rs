use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::oracle::brute_power_exponent;
use crate::cf::{ContinuedFraction, QuadReal};
use crate::error::{Error, Result};
use crate::rotation::EndpointConvention;

/// Highest exponent of an integer power `u^n` with `|u| = m`.
///
/// For `m = q_t` with `t > 1` this is `a_{t+1} + 2`; other periods are
/// brute-forced from the factor language (factors up to `cap` letters).
pub fn max_integer_power_exponent(cf: &ContinuedFraction, m: usize, cap: usize) -> Result<u64> {
    if cf.is_rational() {
        return Err(Error::RationalInput);
    }
    if m == 0 {
        return Err(Error::InvalidArgument("length m must be at least 1".into()));
    }
    let target = BigInt::from(m);
    let mut t = 0;
    loop {
        let convs = cf.convergents(t + 1);
        let c = &convs[t];
        if t > 1 && c.q == target {
            let a = cf.quotient(t + 1).expect("irrational expansions are infinite");
            return (a + 2u32)
                .to_u64()
                .ok_or_else(|| Error::InvalidArgument("exponent does not fit in 64 bits".into()));
        }
        if c.q > target {
            break;
        }
        t += 1;
    }
    brute_power_exponent(&cf.value(), m, EndpointConvention::default(), cap)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinftyStage {
    pub t: usize,
    pub k_t: usize,
    #[serde(with = "crate::serde_bigint")]
    pub q_k: BigInt,
    #[serde(with = "crate::serde_bigint")]
    pub r: BigInt,
    #[serde(with = "crate::serde_bigint")]
    pub s: BigInt,
    /// The partial quotient placed at index `k_t + 1`.
    #[serde(with = "crate::serde_bigint")]
    pub a_next: BigInt,
    /// `(a_next + 2) / q_k`.
    pub ratio: QuadReal,
    /// `lambda - ratio`.
    pub error: QuadReal,
    /// `2^-t`.
    pub bound: QuadReal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinftyConstruction {
    pub lambda: QuadReal,
    /// `a_0, a_1, ...` up to the last placed quotient.
    #[serde(with = "bigint_vec")]
    pub quotients: Vec<BigInt>,
    pub stages: Vec<LinftyStage>,
}

impl LinftyConstruction {
    /// The finite expansion in bracket notation.
    pub fn prefix_text(&self) -> String {
        let rest: Vec<String> = self.quotients[1..].iter().map(ToString::to_string).collect();
        format!("[{}; {}]", self.quotients[0], rest.join(", "))
    }

    /// `q_0, q_1, ...` for [`Self::quotients`].
    pub fn denominators(&self) -> Vec<BigInt> {
        denominators(&self.quotients)
    }
}

fn denominators(a: &[BigInt]) -> Vec<BigInt> {
    let mut q: Vec<BigInt> = Vec::with_capacity(a.len());
    for i in 0..a.len() {
        let next = match i {
            0 => BigInt::one(),
            1 => a[1].clone(),
            _ => &a[i] * &q[i - 1] + &q[i - 2],
        };
        q.push(next);
    }
    q
}

mod bigint_vec {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(ToString::to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Builds the expansion of a slope whose integer-power critical exponent is
/// `lambda`: starting from all ones, stage `t` picks the least index
/// `k_t > k_{t-1}` whose denominator `q = q_{k_t}` admits
/// `0 <= lambda - floor(lambda q)/q < 2^-t` with `floor(lambda q) >= 3`, and
/// puts `a_{k_t + 1} = floor(lambda q) - 2`, so that
/// `(a_{k_t+1} + 2)/q_{k_t} = r_t + s_t/q_{k_t}`.
pub fn construct_linfty_slope(lambda: &BigRational, stages: usize) -> Result<LinftyConstruction> {
    if !lambda.is_positive() {
        return Err(Error::InvalidArgument(format!("lambda must be positive, got {lambda}")));
    }
    if stages == 0 {
        return Err(Error::InvalidArgument("at least one stage is required".into()));
    }
    let mut a = vec![BigInt::zero()];
    let mut q = vec![BigInt::one()];
    let push = |a: &mut Vec<BigInt>, q: &mut Vec<BigInt>, x: BigInt| {
        let next = if a.len() == 1 { x.clone() } else { &x * &q[q.len() - 1] + &q[q.len() - 2] };
        a.push(x);
        q.push(next);
    };
    let mut out = Vec::with_capacity(stages);
    let mut k_prev = 1;
    for t in 1..=stages {
        let bound = BigRational::new(BigInt::one(), BigInt::one() << t);
        let mut i = k_prev + 1;
        let (n, ratio): (BigInt, BigRational) = loop {
            while a.len() <= i {
                push(&mut a, &mut q, BigInt::one());
            }
            let qi = &q[i];
            let n = (lambda * BigRational::from_integer(qi.clone())).floor().to_integer();
            let ratio = BigRational::new(n.clone(), qi.clone());
            if n >= BigInt::from(3) && lambda - &ratio < bound {
                break (n, ratio);
            }
            i += 1;
        };
        let qk = q[i].clone();
        let a_next: BigInt = &n - 2u32;
        // a has exactly i + 1 entries here, so this lands at index i + 1
        push(&mut a, &mut q, a_next.clone());
        let (r, s) = n.div_mod_floor(&qk);
        out.push(LinftyStage {
            t,
            k_t: i,
            q_k: qk,
            r,
            s,
            a_next,
            error: QuadReal::from_ratio(&(lambda - &ratio)),
            ratio: QuadReal::from_ratio(&ratio),
            bound: QuadReal::from_ratio(&bound),
        });
        k_prev = i;
    }
    Ok(LinftyConstruction {
        lambda: QuadReal::from_ratio(lambda),
        quotients: a,
        stages: out,
    })
}
