//! Exact partition products and a battery of numeric inequalities, decided
//! with exact rationals or rigorous interval enclosures.

pub mod battery;
pub mod interval;
pub mod partition_product;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

pub use battery::{inequality_battery, BatteryConfig, BatteryReport};
pub use interval::Interval;
pub use partition_product::{p_dp, p_exact, p_properties, PropertyReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifierError {
    #[error("p(q, t) needs t ≥ 1")]
    ZeroParts,
    #[error("grid bound {requested} exceeds the oracle limit {limit}")]
    GridTooLarge { requested: u64, limit: u64 },
    #[error("k range [{kmin}, {kmax}] is empty or below 11")]
    BadRange { kmin: usize, kmax: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    Indeterminate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Both sides exact rationals.
    Exact,
    /// Irrational constants enclosed by rational intervals.
    Interval,
    /// A continuous claim checked on a finite sample with interval margins.
    Sampling,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

/// One decided inequality `lhs rel rhs`.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InequalityCheck {
    pub item: &'static str,
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub relation: Relation,
    pub method: Method,
    pub lhs: String,
    pub rhs: String,
    /// `rhs − lhs` between the closest enclosure ends.
    pub margin: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub required_bits: Option<u32>,
}

impl InequalityCheck {
    #[allow(clippy::too_many_arguments)]
    pub fn decide(
        item: &'static str,
        name: impl Into<String>,
        params: &[(&str, String)],
        relation: Relation,
        method: Method,
        lhs: &Interval,
        rhs: &Interval,
        bits: u32,
    ) -> Self {
        let decided = match relation {
            Relation::Lt => lhs.lt(rhs),
            Relation::Le => lhs.le(rhs),
            Relation::Eq if lhs.is_point() && rhs.is_point() => Some(lhs.lo == rhs.lo),
            Relation::Eq => None,
        };
        let verdict = match decided {
            Some(true) => Verdict::Pass,
            Some(false) => Verdict::Fail,
            None => Verdict::Indeterminate,
        };
        InequalityCheck {
            item,
            name: name.into(),
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            relation,
            method,
            lhs: sci(&lhs.mid(), 6),
            rhs: sci(&rhs.mid(), 6),
            margin: sci(&(&rhs.lo - &lhs.hi), 4),
            verdict,
            required_bits: (verdict == Verdict::Indeterminate).then_some(bits * 2),
        }
    }
}

/// Decimal scientific notation with `digits` significant digits, rounded
/// toward zero.
pub fn sci(x: &BigRational, digits: u32) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let sign = if x.is_negative() { "-" } else { "" };
    let a = x.abs();
    let ten = BigInt::from(10);
    let bits_gap = a.numer().bits() as f64 - a.denom().bits() as f64;
    let mut e = (bits_gap * std::f64::consts::LOG10_2).floor() as i64;
    let pow10 = |e: i64| -> BigRational {
        if e >= 0 {
            BigRational::from_integer(num_traits::pow(ten.clone(), e as usize))
        } else {
            BigRational::from_integer(num_traits::pow(ten.clone(), (-e) as usize)).recip()
        }
    };
    while a >= pow10(e + 1) {
        e += 1;
    }
    while a < pow10(e) {
        e -= 1;
    }
    let scaled = &a / pow10(e) * pow10(digits as i64 - 1);
    let m = scaled.numer().div_floor(scaled.denom()).to_string();
    let (head, tail) = m.split_at(1);
    let tail = tail.trim_end_matches('0');
    let mantissa = if tail.is_empty() { head.to_string() } else { format!("{head}.{tail}") };
    if e == 0 {
        format!("{sign}{mantissa}")
    } else {
        format!("{sign}{mantissa}e{e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn scientific_formatting() {
        assert_eq!(sci(&rat(1, 25_937_424_600i64), 6), "3.85543e-11");
        assert_eq!(sci(&rat(-5, 2), 4), "-2.5");
        assert_eq!(sci(&rat(1000, 1), 4), "1e3");
        assert_eq!(sci(&rat(0, 1), 4), "0");
    }
}
