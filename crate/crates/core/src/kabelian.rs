//! k-abelian equivalence: `u ~_k v` iff `|u|_w = |v|_w` for every nonempty `w`
//! with `|w| <= k`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cf::{require_irrational, QuadReal};
use crate::error::{Error, Result};
use crate::rotation::{check_order_and_length, ikm_intervals, CirclePoint, EndpointConvention};
use crate::words::{factor_words, factors_of_length, sigma_factors, SturmianSpec, Word};

/// Prefix and suffix of length `min(m, k - 1)` plus the multiset of length-`k`
/// factors. Two words of equal length are k-abelian equivalent iff their
/// signatures agree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KAbelianSignature {
    pub k: usize,
    pub length: usize,
    pub prefix: Word,
    pub suffix: Word,
    pub counts: BTreeMap<Word, usize>,
}

impl KAbelianSignature {
    pub fn new(w: &Word, k: usize) -> Result<Self> {
        check_order(k)?;
        let m = w.len();
        let edge = m.min(k - 1);
        let mut counts = BTreeMap::new();
        if m >= k {
            for i in 0..=m - k {
                *counts.entry(w.slice(i, k)).or_insert(0) += 1;
            }
        }
        Ok(KAbelianSignature {
            k,
            length: m,
            prefix: w.prefix(edge),
            suffix: w.suffix(edge),
            counts,
        })
    }
}

fn check_order(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("order k must be at least 1".into()));
    }
    Ok(())
}

fn check_lengths(u: &Word, v: &Word) -> Result<()> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch(u.len(), v.len()));
    }
    Ok(())
}

pub fn kab_equivalent(u: &Word, v: &Word, k: usize) -> Result<bool> {
    check_lengths(u, v)?;
    Ok(KAbelianSignature::new(u, k)? == KAbelianSignature::new(v, k)?)
}

/// Occurrence counts of every factor of length `1..=k`; equal maps mean
/// equivalent words straight from the definition.
fn count_profile(w: &Word, k: usize) -> BTreeMap<&[u8], usize> {
    let s = w.symbols();
    let mut profile = BTreeMap::new();
    for len in 1..=k.min(s.len()) {
        for f in s.windows(len) {
            *profile.entry(f).or_insert(0) += 1;
        }
    }
    profile
}

/// The definition itself, without the prefix/suffix shortcut.
pub fn kab_equivalent_brute(u: &Word, v: &Word, k: usize) -> Result<bool> {
    check_lengths(u, v)?;
    check_order(k)?;
    Ok(count_profile(u, k) == count_profile(v, k))
}

/// Common prefix and common suffix of length `min(|u|, k - 1)`.
pub fn shares_prefix_suffix(u: &Word, v: &Word, k: usize) -> Result<bool> {
    check_lengths(u, v)?;
    check_order(k)?;
    let e = u.len().min(k - 1);
    Ok(u.prefix(e) == v.prefix(e) && u.suffix(e) == v.suffix(e))
}

/// One k-abelian class of length-`m` factors. `interval_index` refers to the
/// class interval family when the class came from a slope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorClass {
    pub k: usize,
    pub m: usize,
    pub interval_index: Option<usize>,
    pub members: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassListing {
    pub k: usize,
    pub m: usize,
    pub classes: Vec<FactorClass>,
}

/// Partitions distinct words by the definition of `~_k`. Classes are sorted
/// by their smallest member, members lexicographically.
pub fn classify_brute(words: &[Word], k: usize) -> Result<Vec<FactorClass>> {
    check_order(k)?;
    let m = words.first().map_or(0, Word::len);
    if let Some(bad) = words.iter().find(|w| w.len() != m) {
        return Err(Error::LengthMismatch(m, bad.len()));
    }
    let mut sorted = words.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut groups: Vec<(BTreeMap<&[u8], usize>, Vec<Word>)> = Vec::new();
    for w in &sorted {
        let profile = count_profile(w, k);
        match groups.iter_mut().find(|(p, _)| *p == profile) {
            Some((_, members)) => members.push(w.clone()),
            None => groups.push((profile, vec![w.clone()])),
        }
    }
    Ok(groups
        .into_iter()
        .map(|(_, members)| FactorClass {
            k,
            m,
            interval_index: None,
            members,
        })
        .collect())
}

/// Groups the length-`m` factors by the class interval containing their own
/// level interval. One class per interval, in interval order; intervals that
/// hold no factor give empty classes.
pub fn classify_by_intervals(
    alpha: &QuadReal,
    k: usize,
    m: usize,
    convention: EndpointConvention,
) -> Result<Vec<FactorClass>> {
    require_irrational(alpha)?;
    check_order_and_length(k, m)?;
    let family = ikm_intervals(alpha, k, m, convention)?;
    let mut classes: Vec<FactorClass> = (0..family.len())
        .map(|i| FactorClass {
            k,
            m,
            interval_index: Some(i),
            members: Vec::new(),
        })
        .collect();
    for f in factors_of_length(alpha, m, convention)? {
        let mid = f
            .interval
            .start
            .value()
            .midpoint(&(f.interval.start.value() + &f.interval.length))?;
        let j = family.locate(&CirclePoint::new(&mid));
        if !family.contains_span(j, &f.interval.start, &f.interval.length) {
            return Err(Error::Precondition(format!(
                "factor interval of {} is not inside a class interval",
                f.word
            )));
        }
        classes[j].members.push(f.word);
    }
    for c in &mut classes {
        c.members.sort();
    }
    Ok(classes)
}

/// Nonempty member lists sorted by smallest member, for comparing partitions
/// regardless of where they came from.
pub fn canonical_partition(classes: &[FactorClass]) -> Vec<Vec<Word>> {
    let mut parts: Vec<Vec<Word>> = classes
        .iter()
        .filter(|c| !c.members.is_empty())
        .map(|c| {
            let mut m = c.members.clone();
            m.sort();
            m
        })
        .collect();
    parts.sort();
    parts
}

/// Whether `2(k - 1)||alpha|| > 1`, in which case the abelian condition is
/// implied by a common prefix and suffix of length `k - 1`.
pub fn prefix_suffix_sufficient(alpha: &QuadReal, k: usize) -> Result<bool> {
    require_irrational(alpha)?;
    if k < 2 {
        return Err(Error::InvalidArgument("order k must be at least 2".into()));
    }
    let lhs = alpha.dist_to_int().mul_int(2 * (k as i64 - 1));
    Ok(lhs > QuadReal::one())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TernaryCounterexample {
    pub u: Word,
    pub v: Word,
    pub equivalent: bool,
    pub prefix_suffix: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TernaryReport {
    pub k: usize,
    pub max_len: usize,
    pub pairs_checked: u64,
    pub counterexamples: Vec<TernaryCounterexample>,
}

/// Checks, for all pairs of distinct equal-length factors of `sigma(s)` up to
/// `max_len`, that `~_k` coincides with having a common prefix and suffix of
/// length `min(|u|, k - 1)`.
pub fn verify_ternary_property(spec: &SturmianSpec, k: usize, max_len: usize) -> Result<TernaryReport> {
    if k < 2 {
        return Err(Error::Precondition("order k must be at least 2".into()));
    }
    let zz: Word = "00".parse()?;
    if !factor_words(spec.alpha(), 2)?.contains(&zz) {
        return Err(Error::Precondition(
            "the Sturmian word must contain the factor 00".into(),
        ));
    }
    let groups = sigma_factors(spec.alpha(), max_len)?;
    let per_len: Vec<(u64, Vec<TernaryCounterexample>)> = groups
        .par_iter()
        .skip(1)
        .map(|fs| {
            let sigs: Vec<KAbelianSignature> = fs
                .iter()
                .map(|w| KAbelianSignature::new(w, k).expect("k >= 2"))
                .collect();
            let mut checked = 0u64;
            let mut bad = Vec::new();
            for i in 0..fs.len() {
                for j in i + 1..fs.len() {
                    checked += 1;
                    let equivalent = sigs[i] == sigs[j];
                    let prefix_suffix = sigs[i].prefix == sigs[j].prefix && sigs[i].suffix == sigs[j].suffix;
                    if equivalent != prefix_suffix {
                        bad.push(TernaryCounterexample {
                            u: fs[i].clone(),
                            v: fs[j].clone(),
                            equivalent,
                            prefix_suffix,
                        });
                    }
                }
            }
            (checked, bad)
        })
        .collect();
    let mut report = TernaryReport {
        k,
        max_len,
        pairs_checked: 0,
        counterexamples: Vec::new(),
    };
    for (checked, bad) in per_len {
        report.pairs_checked += checked;
        report.counterexamples.extend(bad);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::ContinuedFraction;

    fn fib() -> QuadReal {
        ContinuedFraction::parse("[0; 2, (1)]").unwrap().value()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn strings(parts: &[Vec<Word>]) -> Vec<Vec<String>> {
        parts
            .iter()
            .map(|p| p.iter().map(ToString::to_string).collect())
            .collect()
    }

    #[test]
    fn equivalence_examples() {
        assert!(kab_equivalent(&w("00101"), &w("01001"), 2).unwrap());
        assert!(!kab_equivalent(&w("00100"), &w("01010"), 2).unwrap());
        assert!(kab_equivalent(&w("0110"), &w("0110"), 5).unwrap());
        assert!(kab_equivalent(&w("01"), &w("10"), 1).unwrap());
        assert!(!kab_equivalent(&w("01"), &w("10"), 2).unwrap());
        assert!(kab_equivalent(&w("0"), &w("01"), 2).is_err());
        assert!(kab_equivalent(&w("0"), &w("1"), 0).is_err());
        for (u, v, k) in [("00101", "01001", 2), ("00100", "01010", 2), ("0110", "1001", 1)] {
            assert_eq!(
                kab_equivalent(&w(u), &w(v), k).unwrap(),
                kab_equivalent_brute(&w(u), &w(v), k).unwrap()
            );
        }
    }

    #[test]
    fn signature_shape() {
        let s = KAbelianSignature::new(&w("01001"), 2).unwrap();
        assert_eq!(s.prefix, w("0"));
        assert_eq!(s.suffix, w("1"));
        assert_eq!(s.counts.values().sum::<usize>(), 4);
        let short = KAbelianSignature::new(&w("01"), 4).unwrap();
        assert_eq!(short.prefix, w("01"));
        assert!(short.counts.is_empty());
        let json = serde_json::to_string(&s).unwrap();
        assert!(json.contains("\"counts\":{\"00\":1,\"01\":2,\"10\":1}"), "{json}");
    }

    #[test]
    fn fibonacci_classes() {
        let words = factor_words(&fib(), 5).unwrap();
        let brute = classify_brute(&words, 2).unwrap();
        let want = vec![
            vec!["00100"],
            vec!["00101", "01001"],
            vec!["01010"],
            vec!["10010", "10100"],
        ];
        assert_eq!(strings(&canonical_partition(&brute)), want);
        let by_int = classify_by_intervals(&fib(), 2, 5, EndpointConvention::default()).unwrap();
        assert_eq!(by_int.len(), 4);
        assert_eq!(canonical_partition(&by_int), canonical_partition(&brute));

        let abelian = classify_brute(&words, 1).unwrap();
        assert_eq!(abelian.len(), 2);
        let by_int1 = classify_by_intervals(&fib(), 1, 5, EndpointConvention::default()).unwrap();
        assert_eq!(canonical_partition(&by_int1), canonical_partition(&abelian));
    }

    #[test]
    fn fibonacci_seven() {
        let brute = classify_brute(&factor_words(&fib(), 7).unwrap(), 2).unwrap();
        let by_int = classify_by_intervals(&fib(), 2, 7, EndpointConvention::default()).unwrap();
        assert_eq!(by_int.len(), 4);
        assert_eq!(canonical_partition(&by_int), canonical_partition(&brute));
    }

    #[test]
    fn brute_ordering_and_errors() {
        let classes = classify_brute(&[w("10"), w("01"), w("01")], 1).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].members, vec![w("01"), w("10")]);
        assert!(classify_brute(&[w("1"), w("01")], 1).is_err());
        assert_eq!(classify_brute(&[w("0110")], 3).unwrap().len(), 1);
        assert!(classify_by_intervals(&fib(), 2, 0, EndpointConvention::default()).is_err());
    }

    #[test]
    fn sufficiency_threshold() {
        assert!(prefix_suffix_sufficient(&fib(), 3).unwrap());
        assert!(!prefix_suffix_sufficient(&fib(), 2).unwrap());
        let small = ContinuedFraction::parse("[0; 50, (1)]").unwrap().value();
        assert!(!prefix_suffix_sufficient(&small, 2).unwrap());
        assert!(prefix_suffix_sufficient(&fib(), 1).is_err());
    }

    #[test]
    fn ternary_harness_small() {
        let a = fib();
        let spec = SturmianSpec::new(a.clone(), &a, EndpointConvention::default()).unwrap();
        for k in [2, 3] {
            let r = verify_ternary_property(&spec, k, 14).unwrap();
            assert!(r.counterexamples.is_empty(), "{r:?}");
            assert!(r.pairs_checked > 0);
        }
        let golden = ContinuedFraction::parse("[0; (1)]").unwrap().value();
        let no_zz = SturmianSpec::new(golden, &QuadReal::zero(), EndpointConvention::default()).unwrap();
        assert!(matches!(
            verify_ternary_property(&no_zz, 2, 5),
            Err(Error::Precondition(_))
        ));
    }
}
