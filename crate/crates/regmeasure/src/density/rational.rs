//! Exact rational values and their canonical textual form.

pub use num_rational::BigRational;

use num_bigint::BigInt;

/// Convenience constructor from machine integers.
pub fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Canonical serialization: always `p/q` with `q > 0` and the fraction
/// reduced, so `1` prints as `1/1` and `0` as `0/1`.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}
