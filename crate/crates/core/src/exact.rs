//! Small helpers over exact rationals shared by the audit and verifier code.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::Serializer;

pub fn int<T: Into<BigInt>>(v: T) -> BigRational {
    BigRational::from_integer(v.into())
}

pub fn rat<T: Into<BigInt>>(a: T, b: T) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// `x^e` with `0^0 = 1`.
pub fn pow(x: &BigRational, e: usize) -> BigRational {
    num_traits::pow(x.clone(), e)
}

/// `(q / t)^t`, taking the empty product (`t = 0`) as 1.
pub fn amgm(q: &BigRational, t: usize) -> BigRational {
    if t == 0 {
        BigRational::one()
    } else {
        pow(&(q / int(t as u64)), t)
    }
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `"a/b"`, or `"a"` for integers.
pub fn format_rat(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn ser_rat<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rat(x))
}

pub fn ser_rats<S: Serializer>(xs: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&format_rat(x))?;
    }
    seq.end()
}

pub fn is_nonneg(x: &BigRational) -> bool {
    *x >= BigRational::zero()
}
