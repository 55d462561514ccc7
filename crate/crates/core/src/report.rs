//! Serialization helpers for machine-readable reports.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::Serializer;

pub fn biguint_str<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn bigint_str<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Rationals as `"a/b"`, or `"a"` when integral.
pub fn rational_string(v: &BigRational) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn rational_str<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(v))
}
