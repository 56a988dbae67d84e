//! Brute-force exponents read off the exact factor language.

use crate::cf::{require_irrational, QuadReal};
use crate::error::{Error, Result};
use crate::rotation::{check_order_and_length, EndpointConvention, LevelPartition};

pub const DEFAULT_CAP: usize = 2000;
pub const CAP_ENV: &str = "STURMIAN_SPECTRA_CAP";

/// The factor-length cap for the brute-force oracles: `STURMIAN_SPECTRA_CAP`
/// if set to a positive integer, else [`DEFAULT_CAP`].
pub fn oracle_cap() -> usize {
    std::env::var(CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&c| c > 0)
        .unwrap_or(DEFAULT_CAP)
}

/// Largest `n` such that some factor of length `n m` splits into `n` blocks
/// sharing the key of the first block.
///
/// Every power extends to the right, so it suffices to look at prefixes of
/// the factors of one length `L`: the answer is the longest leading run of
/// matching blocks, unless some factor is matched all the way, in which case
/// `L` is doubled.
fn leading_power_exponent<S: BlockKey>(
    alpha: &QuadReal,
    m: usize,
    convention: EndpointConvention,
    cap: usize,
    key: &S,
) -> Result<u64> {
    require_irrational(alpha)?;
    let top = cap / m * m;
    let mut len = 2 * m;
    if len > cap {
        return Err(Error::ResourceCap { needed: len, cap });
    }
    let mut block = vec![0u8; m];
    let mut first = S::Key::default();
    let mut other = S::Key::default();
    loop {
        let part = LevelPartition::new(alpha, len, convention)?;
        let blocks = len / m;
        let mut best = 1;
        for slot in 0..=len {
            fill(&part, slot, 0, &mut block);
            key.compute(&block, &mut first);
            let mut run = 1;
            while run < blocks {
                fill(&part, slot, run * m, &mut block);
                key.compute(&block, &mut other);
                if other != first {
                    break;
                }
                run += 1;
            }
            best = best.max(run);
            if best == blocks {
                break;
            }
        }
        if best < blocks {
            return Ok(best as u64);
        }
        if len == top {
            return Err(Error::ResourceCap {
                needed: len + m,
                cap,
            });
        }
        len = (2 * len).min(top);
    }
}

fn fill(part: &LevelPartition, slot: usize, offset: usize, out: &mut [u8]) {
    for (i, c) in out.iter_mut().enumerate() {
        *c = part.letter(slot, offset + i);
    }
}

trait BlockKey {
    type Key: Default + PartialEq;
    fn compute(&self, block: &[u8], out: &mut Self::Key);
}

struct Identity;

impl BlockKey for Identity {
    type Key = Vec<u8>;
    fn compute(&self, block: &[u8], out: &mut Vec<u8>) {
        out.clear();
        out.extend_from_slice(block);
    }
}

/// Prefix, suffix and the sorted length-`k` windows (packed into integers
/// when they fit).
struct KAbelian(usize);

#[derive(Default, PartialEq)]
struct KKey {
    prefix: Vec<u8>,
    suffix: Vec<u8>,
    windows: Vec<u64>,
    long_windows: Vec<Vec<u8>>,
}

impl BlockKey for KAbelian {
    type Key = KKey;
    fn compute(&self, block: &[u8], out: &mut KKey) {
        let k = self.0;
        let m = block.len();
        let edge = m.min(k - 1);
        out.prefix.clear();
        out.prefix.extend_from_slice(&block[..edge]);
        out.suffix.clear();
        out.suffix.extend_from_slice(&block[m - edge..]);
        out.windows.clear();
        out.long_windows.clear();
        if m < k {
            return;
        }
        if k <= 64 {
            out.windows.extend(
                block
                    .windows(k)
                    .map(|w| w.iter().fold(0u64, |acc, &c| acc << 1 | u64::from(c))),
            );
            out.windows.sort_unstable();
        } else {
            out.long_windows.extend(block.windows(k).map(<[u8]>::to_vec));
            out.long_windows.sort_unstable();
        }
    }
}

/// `A_{k,alpha}(m)` by scanning all factors of the slope; fails with
/// [`Error::ResourceCap`] rather than look at factors longer than `cap`.
pub fn brute_kab_exponent(
    alpha: &QuadReal,
    k: usize,
    m: usize,
    convention: EndpointConvention,
    cap: usize,
) -> Result<u64> {
    check_order_and_length(k, m)?;
    leading_power_exponent(alpha, m, convention, cap, &KAbelian(k))
}

/// Largest `n` such that some factor is an `n`-th power of a word of length
/// `m`.
pub fn brute_power_exponent(
    alpha: &QuadReal,
    m: usize,
    convention: EndpointConvention,
    cap: usize,
) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidArgument("length m must be at least 1".into()));
    }
    leading_power_exponent(alpha, m, convention, cap, &Identity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::ContinuedFraction;

    fn val(s: &str) -> QuadReal {
        ContinuedFraction::parse(s).unwrap().value()
    }

    #[test]
    fn fibonacci_oracle() {
        let a = val("[0; 2, (1)]");
        let conv = EndpointConvention::default();
        assert_eq!(brute_kab_exponent(&a, 2, 5, conv, DEFAULT_CAP).unwrap(), 5);
        assert_eq!(brute_kab_exponent(&a, 1, 1, conv, DEFAULT_CAP).unwrap(), 2);
        assert_eq!(brute_kab_exponent(&a, 2, 7, conv, DEFAULT_CAP).unwrap(), 1);
    }

    #[test]
    fn cap_is_reported() {
        let b = val("[0; 3, 1, 1, 1, 100, (1)]");
        let err = brute_kab_exponent(&b, 1, 11, EndpointConvention::default(), 500).unwrap_err();
        assert!(matches!(err, Error::ResourceCap { cap: 500, .. }), "{err}");
        assert!(matches!(
            brute_kab_exponent(&b, 1, 11, EndpointConvention::default(), 5),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn integer_powers() {
        let a = val("[0; 2, (1)]");
        let conv = EndpointConvention::default();
        assert_eq!(brute_power_exponent(&a, 5, conv, DEFAULT_CAP).unwrap(), 3);
        assert!(brute_power_exponent(&a, 4, conv, DEFAULT_CAP).unwrap() <= 2);
    }
}
