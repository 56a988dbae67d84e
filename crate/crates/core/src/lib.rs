//! Exact machinery for k-abelian powers in Sturmian words.
//!
//! * [`cf`]: eventually periodic continued fractions, the exact quadratic
//!   irrationals they denote, convergents and Lagrange constants.
//! * [`rotation`]: the circle rotation `x -> {x + alpha}`, level intervals and
//!   the intervals whose parts are the k-abelian classes.
//! * [`words`]: Sturmian prefixes, factor languages and the `0 -> 02, 1 -> 1`
//!   substitution.
//! * [`kabelian`]: k-abelian equivalence, brute-force and interval-based
//!   classification.
//! * [`powers`]: maximal k-abelian power exponents, critical exponents and
//!   spectrum sampling.
//! * [`cli`]: the `sturmian` command-line front end.

pub mod cf;
pub mod rotation;
pub mod words;
pub mod kabelian;
pub mod powers;
pub mod error;
pub mod cli;

pub use cf::{ContinuedFraction, Convergent, ExtReal, QuadReal};
pub use error::{Error, Result};

pub(crate) mod serde_bigint {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}
