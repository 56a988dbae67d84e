mod common;

use common::*;

/// Enough for every exponent of the test slopes up to period 40.
const CAP: usize = 50_000;

#[test]
fn classes_match_definition() {
    for s in SLOPES {
        classifier_equivalence(s, 4, 60).unwrap();
    }
}

#[test]
fn exponent_formula_matches_oracle() {
    for s in SLOPES {
        formula_vs_brute(s, 3, 40, CAP).unwrap();
    }
}
