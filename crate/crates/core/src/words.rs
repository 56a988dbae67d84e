//! Sturmian words as codings of rotation orbits, their factor languages, and
//! the substitution `0 -> 02, 1 -> 1`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cf::{require_irrational, QuadReal};
use crate::error::{Error, Result};
use crate::rotation::{CirclePoint, EndpointConvention, Interval, LevelPartition};

/// A finite word over `{0, 1}` or `{0, 1, 2}`.
///
/// The alphabet size is part of the value: a ternary word that happens to use
/// only `0` and `1` is still ternary.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    symbols: Vec<u8>,
    alphabet: u8,
}

impl Word {
    pub fn binary(symbols: Vec<u8>) -> Result<Self> {
        Self::with_alphabet(symbols, 2)
    }

    pub fn ternary(symbols: Vec<u8>) -> Result<Self> {
        Self::with_alphabet(symbols, 3)
    }

    pub fn with_alphabet(symbols: Vec<u8>, alphabet: u8) -> Result<Self> {
        if !(2..=3).contains(&alphabet) {
            return Err(Error::InvalidArgument(format!(
                "alphabet size must be 2 or 3, got {alphabet}"
            )));
        }
        if let Some(bad) = symbols.iter().find(|&&c| c >= alphabet) {
            return Err(Error::InvalidArgument(format!(
                "letter {bad} outside alphabet of size {alphabet}"
            )));
        }
        Ok(Word { symbols, alphabet })
    }

    /// Binary word from letters already known to be 0 or 1.
    pub(crate) fn from_bits(symbols: Vec<u8>) -> Self {
        debug_assert!(symbols.iter().all(|&c| c < 2));
        Word {
            symbols,
            alphabet: 2,
        }
    }

    pub fn empty(alphabet: u8) -> Self {
        Word {
            symbols: Vec::new(),
            alphabet,
        }
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn alphabet(&self) -> u8 {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn count_letter(&self, letter: u8) -> usize {
        self.symbols.iter().filter(|&&c| c == letter).count()
    }

    /// The factor `w[start .. start + len]`.
    pub fn slice(&self, start: usize, len: usize) -> Word {
        Word {
            symbols: self.symbols[start..start + len].to_vec(),
            alphabet: self.alphabet,
        }
    }

    pub fn prefix(&self, len: usize) -> Word {
        self.slice(0, len)
    }

    pub fn suffix(&self, len: usize) -> Word {
        self.slice(self.len() - len, len)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Word {
            symbols,
            alphabet: self.alphabet.max(other.alphabet),
        }
    }

    pub fn pow(&self, n: usize) -> Word {
        Word {
            symbols: self.symbols.repeat(n),
            alphabet: self.alphabet,
        }
    }

    /// Whether `u` occurs in `self` as a factor.
    pub fn contains(&self, u: &Word) -> bool {
        u.is_empty() || self.symbols.windows(u.len()).any(|w| w == u.symbols())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.symbols.iter().map(|&c| char::from(b'0' + c)).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

/// Parses a string of digits; the alphabet is ternary iff a `2` occurs.
impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut symbols = Vec::with_capacity(s.len());
        for (i, c) in s.char_indices() {
            match c {
                '0' | '1' | '2' => symbols.push(c as u8 - b'0'),
                _ => return Err(Error::parse(i, format!("unexpected letter {c:?}"))),
            }
        }
        let alphabet = if symbols.contains(&2) { 3 } else { 2 };
        Ok(Word { symbols, alphabet })
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Slope, intercept and endpoint convention of a Sturmian word `s_{x, alpha}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SturmianSpec {
    alpha: QuadReal,
    intercept: CirclePoint,
    convention: EndpointConvention,
}

impl SturmianSpec {
    pub fn new(alpha: QuadReal, intercept: &QuadReal, convention: EndpointConvention) -> Result<Self> {
        require_irrational(&alpha)?;
        if alpha.signum().is_le() || alpha >= QuadReal::one() {
            return Err(Error::InvalidArgument(format!(
                "slope must lie in (0, 1), got {alpha}"
            )));
        }
        Ok(SturmianSpec {
            alpha,
            intercept: CirclePoint::new(intercept),
            convention,
        })
    }

    pub fn alpha(&self) -> &QuadReal {
        &self.alpha
    }

    pub fn intercept(&self) -> &CirclePoint {
        &self.intercept
    }

    pub fn convention(&self) -> EndpointConvention {
        self.convention
    }

    /// The letter coding a point: 0 iff it lies in `I_0 = I(0, 1 - alpha)`.
    pub fn code(&self, x: &CirclePoint) -> u8 {
        let split = self.alpha.mul_int(-1).add_int(1);
        let x = x.value();
        let zero = if self.convention.zero_in_i0 {
            *x < split
        } else {
            !x.is_zero() && *x <= split
        };
        u8::from(!zero)
    }
}

/// The first `n` letters of `s_{x, alpha}`.
pub fn sturmian_prefix(spec: &SturmianSpec, n: usize) -> Word {
    let one = QuadReal::one();
    let mut x = spec.intercept.value().clone();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(spec.code(&CirclePoint::new(&x)));
        x = &x + &spec.alpha;
        if x >= one {
            x = &x - &one;
        }
    }
    Word::from_bits(out)
}

/// A factor together with its level interval `[w]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub word: Word,
    pub interval: Interval,
}

/// All `n + 1` factors of length `n`, in circle order of their intervals.
pub fn factors_of_length(
    alpha: &QuadReal,
    n: usize,
    convention: EndpointConvention,
) -> Result<Vec<Factor>> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "factor length must be at least 1".into(),
        ));
    }
    let part = LevelPartition::new(alpha, n, convention)?;
    let intervals = part.family().intervals();
    Ok(intervals
        .into_iter()
        .enumerate()
        .map(|(slot, interval)| Factor {
            word: Word::from_bits(part.word(slot)),
            interval,
        })
        .collect())
}

/// Just the words of [`factors_of_length`], in the same order.
pub fn factor_words(alpha: &QuadReal, n: usize) -> Result<Vec<Word>> {
    if n == 0 {
        return Ok(vec![Word::empty(2)]);
    }
    let part = LevelPartition::new(alpha, n, EndpointConvention::default())?;
    Ok((0..=n).map(|slot| Word::from_bits(part.word(slot))).collect())
}

/// Number of (possibly overlapping) occurrences of `u` in `w`.
pub fn occurrences(w: &Word, u: &Word) -> Result<usize> {
    if u.is_empty() {
        return Err(Error::InvalidArgument(
            "cannot count occurrences of the empty word".into(),
        ));
    }
    Ok(count_occurrences(w.symbols(), u.symbols()))
}

pub(crate) fn count_occurrences(w: &[u8], u: &[u8]) -> usize {
    if u.len() > w.len() {
        return 0;
    }
    w.windows(u.len()).filter(|x| *x == u).count()
}

/// Image under `0 -> 02, 1 -> 1`.
pub fn sigma_image(w: &Word) -> Result<Word> {
    if w.alphabet() != 2 {
        return Err(Error::InvalidArgument(
            "the substitution applies to binary words only".into(),
        ));
    }
    let mut out = Vec::with_capacity(w.len() * 2);
    for &c in w.symbols() {
        match c {
            0 => out.extend_from_slice(&[0, 2]),
            _ => out.push(1),
        }
    }
    Ok(Word {
        symbols: out,
        alphabet: 3,
    })
}

pub fn is_balanced_pair(u: &Word, v: &Word) -> Result<bool> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch(u.len(), v.len()));
    }
    if u.alphabet() != 2 || v.alphabet() != 2 {
        return Err(Error::InvalidArgument("balance is defined for binary words".into()));
    }
    Ok(u.count_letter(0).abs_diff(v.count_letter(0)) <= 1)
}

/// Factors `u` of length `n` such that both `u0` and `u1` are factors.
pub fn right_special_factors(alpha: &QuadReal, n: usize) -> Result<Vec<Word>> {
    let longer: BTreeSet<Vec<u8>> = factor_words(alpha, n + 1)?
        .into_iter()
        .map(|w| w.symbols)
        .collect();
    Ok(factor_words(alpha, n)?
        .into_iter()
        .filter(|u| {
            let mut zero = u.symbols.clone();
            zero.push(0);
            let mut one = u.symbols.clone();
            one.push(1);
            longer.contains(&zero) && longer.contains(&one)
        })
        .collect())
}

/// Factors of `sigma(s)` for a Sturmian `s` of slope `alpha`, grouped by
/// length `0..=max_len`, each group sorted.
///
/// A factor of length `l` of `sigma(s)` starts inside `sigma(a)` for some
/// letter `a` of `s`, so it is a factor of `sigma(u)` for the length-`l`
/// factor `u` of `s` starting at that letter.
pub fn sigma_factors(alpha: &QuadReal, max_len: usize) -> Result<Vec<Vec<Word>>> {
    let mut by_len: Vec<BTreeSet<Vec<u8>>> = vec![BTreeSet::new(); max_len + 1];
    by_len[0].insert(Vec::new());
    if max_len > 0 {
        for u in factor_words(alpha, max_len)? {
            let image = sigma_image(&u)?;
            let s = image.symbols();
            for start in 0..s.len() {
                for len in 1..=max_len.min(s.len() - start) {
                    by_len[len].insert(s[start..start + len].to_vec());
                }
            }
        }
    }
    Ok(by_len
        .into_iter()
        .map(|set| {
            set.into_iter()
                .map(|symbols| Word {
                    symbols,
                    alphabet: 3,
                })
                .collect()
        })
        .collect())
}
