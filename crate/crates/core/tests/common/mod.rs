//! Checks shared by the property suites and the acceptance harness. Each
//! returns a one-line summary on success and the first failure otherwise.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sturmian_spectra::kabelian::{
    canonical_partition, classify_by_intervals, kab_equivalent, kab_equivalent_brute,
};
use sturmian_spectra::powers::{kab_exponent, theta_k};
use sturmian_spectra::rotation::{level_intervals, EndpointConvention};
use sturmian_spectra::words::{factor_words, Word};
use sturmian_spectra::{ContinuedFraction, QuadReal};

pub type Check = Result<String, String>;

pub const SLOPES: [&str; 5] = [
    "[0; 2, (1)]",
    "[0; (1)]",
    "[0; (2)]",
    "[0; 3, 1, 1, 1, 100, (1)]",
    "[0; (1, 2)]",
];

pub const FIBONACCI: &str = "[0; 2, (1)]";
pub const BETA: &str = "[0; 3, 1, 1, 1, 100, (1)]";

pub fn cf(s: &str) -> ContinuedFraction {
    s.parse().unwrap()
}

pub fn slope(s: &str) -> QuadReal {
    cf(s).value()
}

pub fn sqrt5() -> QuadReal {
    QuadReal::sqrt(5).unwrap()
}

/// Binary words of length `n` in lexicographic order.
pub fn all_words(n: usize) -> Vec<Word> {
    (0..1u32 << n)
        .map(|b| Word::binary((0..n).rev().map(|i| (b >> i & 1) as u8).collect()).unwrap())
        .collect()
}

/// At most three gap lengths at every level `n <= n_max`, and when there are
/// three the largest is the sum of the other two.
pub fn three_distance(n_max: usize) -> Check {
    let mut levels = 0;
    for s in SLOPES {
        let alpha = slope(s);
        for n in 1..=n_max {
            let family = level_intervals(&alpha, n, EndpointConvention::default()).map_err(|e| e.to_string())?;
            let distinct: BTreeSet<QuadReal> = family.lengths().into_iter().collect();
            let d: Vec<&QuadReal> = distinct.iter().collect();
            if d.len() > 3 || (d.len() == 3 && *d[2] != d[0] + d[1]) {
                return Err(format!("{s}, n = {n}: gap lengths {d:?}"));
            }
            if family.len() != n + 1 {
                return Err(format!("{s}, n = {n}: {} intervals", family.len()));
            }
            levels += 1;
        }
    }
    Ok(format!("{levels} levels, at most three gaps each"))
}

/// The `q <= q_max` at which `||q alpha||` reaches a new minimum are exactly
/// the convergent denominators.
pub fn best_approximation(q_max: usize) -> Check {
    for s in SLOPES {
        let c = cf(s);
        let alpha = c.value();
        let mut records = Vec::new();
        let mut best: Option<QuadReal> = None;
        for q in 1..=q_max {
            let d = alpha.mul_int(q as i64).dist_to_int();
            if best.as_ref().is_none_or(|b| d < *b) {
                records.push(BigInt::from(q));
                best = Some(d);
            }
        }
        let mut denominators: Vec<BigInt> = Vec::new();
        for conv in c.convergents(40) {
            if conv.q > BigInt::from(q_max) {
                break;
            }
            if denominators.last() != Some(&conv.q) {
                denominators.push(conv.q);
            }
        }
        if records != denominators {
            return Err(format!("{s}: records {records:?} vs denominators {denominators:?}"));
        }
    }
    Ok(format!("record minima of ||q alpha|| for q <= {q_max} are the convergent denominators"))
}

/// On all pairs of binary words of length `n`: `~_{k+1}` implies `~_k`, and
/// the signature test agrees with the definition. Equivalent pairs stay
/// equivalent after padding with random words on either side.
pub fn refinement_and_congruence(n: usize, k_max: usize, seed: u64) -> Check {
    let words = all_words(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut pairs, mut padded) = (0usize, 0usize);
    for (i, u) in words.iter().enumerate() {
        for v in &words[i..] {
            let mut prev = true;
            for k in 1..=k_max {
                let eq = kab_equivalent(u, v, k).unwrap();
                if eq != kab_equivalent_brute(u, v, k).unwrap() {
                    return Err(format!("{u} / {v}, k = {k}: signature and definition disagree"));
                }
                if eq && !prev {
                    return Err(format!("{u} ~_{k} {v} but not ~_{}", k - 1));
                }
                if eq && u != v && rng.gen_bool(0.05) {
                    let len = rng.gen_range(0..5);
                    let w = Word::binary((0..len).map(|_| rng.gen_range(0..2)).collect()).unwrap();
                    if !kab_equivalent(&u.concat(&w), &v.concat(&w), k).unwrap()
                        || !kab_equivalent(&w.concat(u), &w.concat(v), k).unwrap()
                    {
                        return Err(format!("{u} ~_{k} {v} but not after padding with {w}"));
                    }
                    padded += 1;
                }
                prev = eq;
            }
            pairs += 1;
        }
    }
    if padded == 0 {
        return Err("no equivalent pair was padded".into());
    }
    Ok(format!("{pairs} pairs of length {n}, {padded} padded pairs"))
}

/// Factor sets, class partitions and exponents do not depend on which
/// endpoint the intervals keep.
pub fn convention_independence(k_max: usize, m_max: usize) -> Check {
    let (l, r) = (EndpointConvention::LEFT_CLOSED, EndpointConvention::RIGHT_CLOSED);
    let mut cases = 0;
    for s in SLOPES {
        let alpha = slope(s);
        for m in 1..=m_max {
            let a = factor_words(&alpha, m).unwrap();
            let fl: BTreeSet<Word> = sturmian_spectra::words::factors_of_length(&alpha, m, l)
                .unwrap()
                .into_iter()
                .map(|f| f.word)
                .collect();
            let fr: BTreeSet<Word> = sturmian_spectra::words::factors_of_length(&alpha, m, r)
                .unwrap()
                .into_iter()
                .map(|f| f.word)
                .collect();
            if fl != fr || fl.len() != m + 1 || a.len() != m + 1 {
                return Err(format!("{s}, m = {m}: factor sets differ"));
            }
            for k in 1..=k_max {
                let pl = canonical_partition(&classify_by_intervals(&alpha, k, m, l).unwrap());
                let pr = canonical_partition(&classify_by_intervals(&alpha, k, m, r).unwrap());
                if pl != pr {
                    return Err(format!("{s}, k = {k}, m = {m}: partitions differ"));
                }
                let (el, er) = (
                    kab_exponent(&alpha, k, m, l).unwrap(),
                    kab_exponent(&alpha, k, m, r).unwrap(),
                );
                if el != er {
                    return Err(format!("{s}, k = {k}, m = {m}: exponents {el} vs {er}"));
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (slope, k, m) cases agree under both conventions"))
}

/// A random eventually periodic expansion `[0; pre, (period)]` with quotients
/// in `1..=max_q`.
pub fn random_cf(rng: &mut ChaCha8Rng, max_q: i64) -> ContinuedFraction {
    let pre_len = rng.gen_range(0..=3);
    let per_len = rng.gen_range(1..=4);
    let mut pre = vec![0];
    pre.extend((0..pre_len).map(|_| rng.gen_range(1..=max_q)));
    let period: Vec<i64> = (0..per_len).map(|_| rng.gen_range(1..=max_q)).collect();
    ContinuedFraction::periodic(&pre, &period).unwrap()
}

/// `lambda >= sqrt 5` and `Theta_k > sqrt 5 / (2k - 1)` for `k = 2, 3` on
/// `count` random periodic expansions with quotients at most 9.
pub fn hurwitz_floor(count: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let five = sqrt5();
    let mut lowest = None::<QuadReal>;
    for _ in 0..count {
        let c = random_cf(&mut rng, 9);
        let lambda = c.lagrange_constant().map_err(|e| e.to_string())?;
        if lambda < five {
            return Err(format!("{c}: lambda = {lambda} < sqrt 5"));
        }
        if theta_k(&c, 1).unwrap() != lambda {
            return Err(format!("{c}: Theta_1 differs from lambda"));
        }
        for k in 2..=3i64 {
            let theta = theta_k(&c, k as usize).unwrap();
            let floor = &five * &QuadReal::ratio(1, 2 * k - 1).unwrap();
            if theta <= floor {
                return Err(format!("{c}: Theta_{k} = {theta} <= sqrt 5/{}", 2 * k - 1));
            }
        }
        if lowest.as_ref().is_none_or(|l| lambda < *l) {
            lowest = Some(lambda);
        }
    }
    Ok(format!(
        "{count} expansions, smallest lambda {}",
        lowest.unwrap().to_decimal(8)
    ))
}

/// `classify_by_intervals` and the definition give the same partition of the
/// length-`m` factors.
pub fn classifier_equivalence(s: &str, k_max: usize, m_max: usize) -> Check {
    use sturmian_spectra::kabelian::classify_brute;
    let alpha = slope(s);
    let mut classes = 0;
    for m in 1..=m_max {
        let words = factor_words(&alpha, m).unwrap();
        for k in 1..=k_max {
            let by_intervals =
                canonical_partition(&classify_by_intervals(&alpha, k, m, EndpointConvention::default()).unwrap());
            let brute = canonical_partition(&classify_brute(&words, k).unwrap());
            if by_intervals != brute {
                return Err(format!("{s}, k = {k}, m = {m}: {by_intervals:?} vs {brute:?}"));
            }
            classes += brute.len();
        }
    }
    Ok(format!("{s}: {classes} classes agree"))
}

/// `max_kab_exponent` (witness included) against the brute-force oracle.
pub fn formula_vs_brute(s: &str, k_max: usize, m_max: usize, cap: usize) -> Check {
    use sturmian_spectra::powers::{brute_kab_exponent, max_kab_exponent};
    let alpha = slope(s);
    let conv = EndpointConvention::default();
    let mut largest = 0;
    for k in 1..=k_max {
        for m in 1..=m_max {
            let r = max_kab_exponent(&alpha, k, m, conv).map_err(|e| format!("{s}, k = {k}, m = {m}: {e}"))?;
            let b = brute_kab_exponent(&alpha, k, m, conv, cap).map_err(|e| format!("{s}, k = {k}, m = {m}: {e}"))?;
            if r.exponent != b {
                return Err(format!("{s}, k = {k}, m = {m}: formula {} vs oracle {b}", r.exponent));
            }
            largest = largest.max(b);
        }
    }
    Ok(format!("{s}: agree, largest exponent {largest}"))
}
