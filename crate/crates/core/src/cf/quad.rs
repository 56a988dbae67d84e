//! Exact real quadratic irrationals `(p + q*sqrt(d)) / r`.
//!
//! Values are kept in a unique normal form: `r > 0`, `d` square-free (and never
//! 1), `gcd(p, q, r) = 1`, and `q = 0` forces `d = 0`. Because `1` and
//! `sqrt(d)` are linearly independent over the rationals, two normalized values
//! are equal exactly when their components are, so `Eq`/`Hash` are structural.
//!
//! Arithmetic is closed on values sharing a radicand; rationals (`d = 0`) mix
//! with any radicand. Comparison is exact across *different* radicands too,
//! since it only needs a sign computation.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Number of significant digits carried by the `decimal` field of the JSON form.
pub const JSON_DECIMAL_DIGITS: usize = 40;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadReal {
    p: BigInt,
    q: BigInt,
    d: BigInt,
    r: BigInt,
}

impl QuadReal {
    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        QuadReal {
            p: n.into(),
            q: BigInt::zero(),
            d: BigInt::zero(),
            r: BigInt::one(),
        }
    }

    pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        Self::new(num, 0, 0, den)
    }

    /// `sqrt(n)` for `n >= 0`.
    pub fn sqrt(n: impl Into<BigInt>) -> Result<Self> {
        Self::new(0, 1, n, 1)
    }

    /// Builds `(p + q*sqrt(d)) / r`, extracting square factors from `d`.
    pub fn new(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        d: impl Into<BigInt>,
        r: impl Into<BigInt>,
    ) -> Result<Self> {
        let (p, mut q, d, r) = (p.into(), q.into(), d.into(), r.into());
        if r.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if d.is_negative() {
            return Err(Error::InvalidArgument(format!(
                "radicand must be nonnegative, got {d}"
            )));
        }
        let (outer, core) = square_free_split(&d);
        q *= outer;
        if core.is_one() {
            return Ok(Self::normalized(p + q, BigInt::zero(), BigInt::zero(), r));
        }
        Ok(Self::normalized(p, q, core, r))
    }

    /// Normal form for components whose radicand is already square-free.
    fn normalized(mut p: BigInt, mut q: BigInt, mut d: BigInt, mut r: BigInt) -> Self {
        debug_assert!(!r.is_zero());
        if q.is_zero() || d.is_zero() {
            q = BigInt::zero();
            d = BigInt::zero();
        }
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        let g = p.gcd(&q).gcd(&r);
        if !g.is_one() && !g.is_zero() {
            p /= &g;
            q /= &g;
            r /= &g;
        }
        if p.is_zero() && q.is_zero() {
            r = BigInt::one();
        }
        QuadReal { p, q, d, r }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// Square-free radicand; `0` for rational values.
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.r.is_one()
    }

    /// The rational value, if this is one.
    pub fn to_ratio(&self) -> Option<num_rational::BigRational> {
        self.is_rational()
            .then(|| num_rational::BigRational::new(self.p.clone(), self.r.clone()))
    }

    pub fn from_ratio(x: &num_rational::BigRational) -> Self {
        Self::normalized(x.numer().clone(), BigInt::zero(), BigInt::zero(), x.denom().clone())
    }

    fn shared_radicand(&self, other: &Self) -> Result<BigInt> {
        if self.q.is_zero() {
            Ok(other.d.clone())
        } else if other.q.is_zero() || self.d == other.d {
            Ok(self.d.clone())
        } else {
            Err(Error::MixedRadicand(self.d.to_string(), other.d.to_string()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let d = self.shared_radicand(other)?;
        Ok(Self::normalized(
            &self.p * &other.r + &other.p * &self.r,
            &self.q * &other.r + &other.q * &self.r,
            d,
            &self.r * &other.r,
        ))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let d = self.shared_radicand(other)?;
        Ok(Self::normalized(
            &self.p * &other.p + &self.q * &other.q * &d,
            &self.p * &other.q + &other.p * &self.q,
            d,
            &self.r * &other.r,
        ))
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // (p + q√d)/r = r(p − q√d) / (p² − q²d); the norm is nonzero for d square-free.
        let norm = &self.p * &self.p - &self.q * &self.q * &self.d;
        Ok(Self::normalized(
            &self.r * &self.p,
            -(&self.r * &self.q),
            self.d.clone(),
            norm,
        ))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.shared_radicand(other)?;
        self.try_mul(&other.recip()?)
    }

    pub fn mul_int(&self, n: impl Into<BigInt>) -> Self {
        let n = n.into();
        Self::normalized(&self.p * &n, &self.q * &n, self.d.clone(), self.r.clone())
    }

    pub fn add_int(&self, n: impl Into<BigInt>) -> Self {
        let n = n.into();
        Self::normalized(&self.p + n * &self.r, self.q.clone(), self.d.clone(), self.r.clone())
    }

    pub fn signum(&self) -> Ordering {
        sign_of(&self.p, &self.q, &self.d)
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    pub fn floor(&self) -> BigInt {
        floor_parts(&self.p, &self.q, &self.d, &self.r)
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// Fractional part `{x} = x - floor(x)`, in `[0, 1)`.
    pub fn fract(&self) -> Self {
        self.add_int(-self.floor())
    }

    /// Distance to the nearest integer, `min({x}, 1 - {x})`.
    pub fn dist_to_int(&self) -> Self {
        let f = self.fract();
        let g = (-&f).add_int(1);
        if f <= g {
            f
        } else {
            g
        }
    }

    /// Exact midpoint `(self + other) / 2`.
    pub fn midpoint(&self, other: &Self) -> Result<Self> {
        let s = self.try_add(other)?;
        Ok(Self::normalized(s.p, s.q, s.d, s.r * 2))
    }

    /// Decimal expansion with `sig` significant digits, correctly rounded
    /// (ties, which only rationals can hit, round away from zero).
    pub fn to_decimal(&self, sig: usize) -> String {
        assert!(sig > 0, "need at least one significant digit");
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.signum() == Ordering::Less;
        let a = self.abs();
        let ten = BigInt::from(10);

        // 10^e <= a < 10^(e+1)
        let int_part = a.floor();
        let mut e: i64 = if int_part.is_positive() {
            int_part.to_string().len() as i64 - 1
        } else {
            let mut j = 1u32;
            let mut scale = ten.clone();
            while floor_parts(&(&a.p * &scale), &(&a.q * &scale), &a.d, &a.r).is_zero() {
                j += 1;
                scale *= &ten;
            }
            -(j as i64)
        };

        let shift = sig as i64 - 1 - e;
        let (num, den) = if shift >= 0 {
            (ten.pow(shift as u32), BigInt::one())
        } else {
            (BigInt::one(), ten.pow((-shift) as u32))
        };
        // floor(a * num / den + 1/2)
        let mut digits = floor_parts(
            &(&a.p * &num * 2 + &den * &a.r),
            &(&a.q * &num * 2),
            &a.d,
            &(&a.r * &den * 2),
        );
        if digits == ten.pow(sig as u32) {
            digits = ten.pow(sig as u32 - 1);
            e += 1;
        }
        let digits = digits.to_string();
        debug_assert_eq!(digits.len(), sig);

        let mut out = String::with_capacity(sig + 8);
        if neg {
            out.push('-');
        }
        if e >= 0 {
            let int_len = (e + 1) as usize;
            if int_len >= sig {
                out.push_str(&digits);
                out.extend(std::iter::repeat_n('0', int_len - sig));
            } else {
                out.push_str(&digits[..int_len]);
                out.push('.');
                out.push_str(&digits[int_len..]);
            }
        } else {
            out.push_str("0.");
            out.extend(std::iter::repeat_n('0', (-e - 1) as usize));
            out.push_str(&digits);
        }
        out
    }

    pub fn to_f64(&self) -> f64 {
        if let (Some(p), Some(q), Some(d), Some(r)) = (
            self.p.to_f64(),
            self.q.to_f64(),
            self.d.to_f64(),
            self.r.to_f64(),
        ) {
            if p.abs() < 1e15 && q.abs() < 1e15 && r < 1e15 {
                return (p + q * d.sqrt()) / r;
            }
        }
        self.to_decimal(20).parse().unwrap_or(f64::NAN)
    }
}

/// Splits `n >= 0` as `outer^2 * core` with `core` square-free.
///
/// Trial division runs only up to the cube root of the cofactor: once every
/// prime below `p` is removed and `p^3` exceeds what remains, the remainder has
/// at most two prime factors, so it is a square exactly when it is a perfect
/// square.
fn square_free_split(n: &BigInt) -> (BigInt, BigInt) {
    if n.is_zero() {
        return (BigInt::one(), BigInt::zero());
    }
    if let Some(small) = n.to_u128() {
        let (outer, core) = square_free_split_u128(small);
        return (BigInt::from(outer), BigInt::from(core));
    }
    let mut rem = n.clone();
    let mut outer = BigInt::one();
    let mut core = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p * &p <= rem {
        let p2 = &p * &p;
        while (&rem % &p2).is_zero() {
            rem /= &p2;
            outer *= &p;
        }
        if (&rem % &p).is_zero() {
            rem /= &p;
            core *= &p;
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    let s = rem.sqrt();
    if &s * &s == rem {
        outer *= s;
    } else {
        core *= rem;
    }
    (outer, core)
}

fn square_free_split_u128(n: u128) -> (u128, u128) {
    let mut rem = n;
    let mut outer = 1u128;
    let mut core = 1u128;
    let mut p = 2u128;
    while p * p * p <= rem {
        while rem % (p * p) == 0 {
            rem /= p * p;
            outer *= p;
        }
        if rem % p == 0 {
            rem /= p;
            core *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let s = rem.sqrt();
    if s * s == rem {
        outer *= s;
    } else {
        core *= rem;
    }
    (outer, core)
}

/// Exact sign of `a + b*sqrt(n)` for integers `a`, `b` and `n >= 0`
/// (`n` need not be square-free).
pub(crate) fn sign_of(a: &BigInt, b: &BigInt, n: &BigInt) -> Ordering {
    let sa = a.sign();
    let sb = if n.is_zero() { Sign::NoSign } else { b.sign() };
    match (sa, sb) {
        (_, Sign::NoSign) => sign_to_ord(sa),
        (Sign::NoSign, _) => sign_to_ord(sb),
        _ if sa == sb => sign_to_ord(sa),
        _ => match (a * a).cmp(&(b * b * n)) {
            Ordering::Greater => sign_to_ord(sa),
            Ordering::Less => sign_to_ord(sb),
            Ordering::Equal => Ordering::Equal,
        },
    }
}

fn sign_to_ord(s: Sign) -> Ordering {
    match s {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    }
}

/// Exact sign of `a + b*sqrt(d1) + c*sqrt(d2)`.
fn sign_of_two(a: &BigInt, b: &BigInt, d1: &BigInt, c: &BigInt, d2: &BigInt) -> Ordering {
    let w = {
        // sign of b√d1 + c√d2
        let sb = if d1.is_zero() { Sign::NoSign } else { b.sign() };
        let sc = if d2.is_zero() { Sign::NoSign } else { c.sign() };
        match (sb, sc) {
            (_, Sign::NoSign) => sign_to_ord(sb),
            (Sign::NoSign, _) => sign_to_ord(sc),
            _ if sb == sc => sign_to_ord(sb),
            _ => match (b * b * d1).cmp(&(c * c * d2)) {
                Ordering::Greater => sign_to_ord(sb),
                Ordering::Less => sign_to_ord(sc),
                Ordering::Equal => Ordering::Equal,
            },
        }
    };
    let sa = sign_to_ord(a.sign());
    if w == Ordering::Equal || sa == Ordering::Equal || sa == w {
        return if w == Ordering::Equal { sa } else { w };
    }
    // Opposite signs: compare a² against (b√d1 + c√d2)².
    let lhs = a * a - b * b * d1 - c * c * d2;
    let rad: BigInt = -(b * c) * 2u32;
    match sign_of(&lhs, &rad, &(d1 * d2)) {
        Ordering::Greater => sa,
        Ordering::Less => w,
        Ordering::Equal => Ordering::Equal,
    }
}

/// `floor((p + q*sqrt(d)) / r)` for `r > 0` and `d` not a nonzero perfect square
/// unless `q = 0`.
fn floor_parts(p: &BigInt, q: &BigInt, d: &BigInt, r: &BigInt) -> BigInt {
    debug_assert!(r.is_positive());
    if q.is_zero() || d.is_zero() {
        return p.div_floor(r);
    }
    // q√d is irrational, so the numerator lies strictly inside (n, n + 1).
    let s = (q * q * d).sqrt();
    let n = if q.is_positive() { p + s } else { p - s - 1 };
    n.div_floor(r)
}

impl PartialOrd for QuadReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadReal {
    fn cmp(&self, other: &Self) -> Ordering {
        // sign of (p1 r2 − p2 r1) + q1 r2 √d1 − q2 r1 √d2
        let a = &self.p * &other.r - &other.p * &self.r;
        let b = &self.q * &other.r;
        let c = -(&other.q * &self.r);
        if self.q.is_zero() || other.q.is_zero() || self.d == other.d {
            let d = if self.q.is_zero() { &other.d } else { &self.d };
            sign_of(&a, &(b + c), d)
        } else {
            sign_of_two(&a, &b, &self.d, &c, &other.d)
        }
    }
}

impl Neg for &QuadReal {
    type Output = QuadReal;
    fn neg(self) -> QuadReal {
        QuadReal {
            p: -&self.p,
            q: -&self.q,
            d: self.d.clone(),
            r: self.r.clone(),
        }
    }
}

impl Neg for QuadReal {
    type Output = QuadReal;
    fn neg(self) -> QuadReal {
        -&self
    }
}

// Operator forms panic on mixed radicands; the `try_*` methods report them.
macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&QuadReal> for &QuadReal {
            type Output = QuadReal;
            fn $method(self, rhs: &QuadReal) -> QuadReal {
                self.$try(rhs).unwrap_or_else(|e| panic!("{}", e))
            }
        }
        impl $tr<QuadReal> for QuadReal {
            type Output = QuadReal;
            fn $method(self, rhs: QuadReal) -> QuadReal {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&QuadReal> for QuadReal {
            type Output = QuadReal;
            fn $method(self, rhs: &QuadReal) -> QuadReal {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl From<i64> for QuadReal {
    fn from(n: i64) -> Self {
        QuadReal::integer(n)
    }
}

impl From<BigInt> for QuadReal {
    fn from(n: BigInt) -> Self {
        QuadReal::integer(n)
    }
}

impl fmt::Display for QuadReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return if self.r.is_one() {
                write!(f, "{}", self.p)
            } else {
                write!(f, "{}/{}", self.p, self.r)
            };
        }
        let radical = match self.q.magnitude().to_u8() {
            Some(1) => format!("sqrt({})", self.d),
            _ => format!("{}*sqrt({})", self.q.magnitude(), self.d),
        };
        let mut num = String::new();
        if !self.p.is_zero() {
            num.push_str(&self.p.to_string());
            num.push_str(if self.q.is_negative() { " - " } else { " + " });
        } else if self.q.is_negative() {
            num.push('-');
        }
        num.push_str(&radical);
        if self.r.is_one() {
            if self.p.is_zero() {
                write!(f, "{num}")
            } else {
                write!(f, "({num})")
            }
        } else {
            write!(f, "({num})/{}", self.r)
        }
    }
}

impl fmt::Debug for QuadReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ~ {}", self, self.to_decimal(12))
    }
}

#[derive(Serialize, Deserialize)]
struct QuadRealJson {
    p: String,
    q: String,
    d: String,
    r: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    decimal: Option<String>,
}

impl Serialize for QuadReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        QuadRealJson {
            p: self.p.to_string(),
            q: self.q.to_string(),
            d: self.d.to_string(),
            r: self.r.to_string(),
            decimal: Some(self.to_decimal(JSON_DECIMAL_DIGITS)),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QuadReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = QuadRealJson::deserialize(deserializer)?;
        let int = |s: &str| s.parse::<BigInt>().map_err(D::Error::custom);
        QuadReal::new(int(&raw.p)?, int(&raw.q)?, int(&raw.d)?, int(&raw.r)?)
            .map_err(D::Error::custom)
    }
}
