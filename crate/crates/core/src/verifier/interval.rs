//! Closed rational intervals with outward rounding to dyadic endpoints, plus
//! rigorous enclosures of `exp` and `ln`.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact::int;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

fn floor_dyadic(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = x * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.numer().div_floor(scaled.denom()), scale)
}

fn ceil_dyadic(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = x * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.numer().div_ceil(scaled.denom()), scale)
}

impl Interval {
    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "empty interval");
        Interval { lo, hi }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / int(2u64)
    }

    /// Widens both ends onto the grid `2^-bits`; exact points stay exact when
    /// they already lie on it.
    pub fn round(&self, bits: u32) -> Self {
        Interval { lo: floor_dyadic(&self.lo, bits), hi: ceil_dyadic(&self.hi, bits) }
    }

    pub fn hull(&self, other: &Interval) -> Self {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    /// `1/x`; the interval must not contain 0.
    pub fn recip(&self) -> Self {
        assert!(self.lo.is_positive() || self.hi.is_negative(), "division by an interval containing 0");
        Interval { lo: self.hi.recip(), hi: self.lo.recip() }
    }

    pub fn div(&self, other: &Interval) -> Self {
        self * &other.recip()
    }

    /// `x^e` by repeated squaring, rounding outward after every product.
    pub fn powi(&self, e: u32, bits: u32) -> Self {
        let mut result = Interval::point(BigRational::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = (&result * &base).round(bits);
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).round(bits);
            }
        }
        result
    }

    pub fn exp(&self, bits: u32) -> Self {
        Interval { lo: exp_enclosure(&self.lo, bits).lo, hi: exp_enclosure(&self.hi, bits).hi }
    }

    /// Natural log; the interval must be positive.
    pub fn ln(&self, bits: u32) -> Self {
        Interval { lo: ln_enclosure(&self.lo, bits).lo, hi: ln_enclosure(&self.hi, bits).hi }
    }

    /// `Some(true)` if every point is below every point of `other`,
    /// `Some(false)` if none is, `None` if the enclosures overlap.
    pub fn lt(&self, other: &Interval) -> Option<bool> {
        if self.hi < other.lo {
            Some(true)
        } else if self.lo >= other.hi {
            Some(false)
        } else {
            None
        }
    }

    pub fn le(&self, other: &Interval) -> Option<bool> {
        if self.hi <= other.lo {
            Some(true)
        } else if self.lo > other.hi {
            Some(false)
        } else {
            None
        }
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, o: &Interval) -> Interval {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `e^f` for `|f| ≤ 1` by Taylor series; the tail after `N` terms is below `3/N!`.
fn exp_small(f: &BigRational, bits: u32) -> Interval {
    let guard = bits + 16;
    let mut sum = Interval::point(BigRational::zero());
    let mut term = Interval::point(BigRational::one());
    let mut j = 0u32;
    loop {
        sum = (&sum + &term).round(guard);
        j += 1;
        let tail = BigRational::new(BigInt::from(3), factorial(j));
        if tail < BigRational::new(BigInt::one(), BigInt::one() << guard) {
            let r = Interval::new(-tail.clone(), tail);
            return (&sum + &r).round(bits);
        }
        term = (&term * &Interval::point(f / int(j))).round(guard);
    }
}

/// Rigorous enclosure of `e^x` for a rational `x`.
pub fn exp_enclosure(x: &BigRational, bits: u32) -> Interval {
    let whole = x.floor();
    let frac = x - &whole;
    let a = whole.to_integer();
    let guard = bits + 16;
    let e = exp_small(&BigRational::one(), guard + 64);
    let ea = match a.sign() {
        Sign::NoSign => Interval::point(BigRational::one()),
        Sign::Plus => e.powi(u32::try_from(&a).expect("exponent too large"), guard),
        Sign::Minus => e.powi(u32::try_from(&(-&a)).expect("exponent too large"), guard).recip(),
    };
    (&ea * &exp_small(&frac, guard)).round(bits)
}

/// `2 atanh(u)` for `0 ≤ u ≤ 1/3`, summed in fixed point with `G` fractional
/// bits. Each power `u^{2j+1}` is truncated, losing at most `j + 1` ulps, so
/// each truncated term is short by at most 2 ulps; the tail after `N` terms is
/// below `(9/8) u^{2N+1} / (2N+1)`.
fn two_atanh(u: &BigRational, bits: u32) -> Interval {
    if u.is_zero() {
        return Interval::point(BigRational::zero());
    }
    let g = bits + 40;
    let (a, b) = (u.numer(), u.denom());
    let (a2, b2) = (a * a, b * b);
    let mut power = (a << g) / b;
    let mut sum = BigInt::zero();
    let mut slack = 0u64;
    let mut j = 0u64;
    loop {
        sum += &power / BigInt::from(2 * j + 1);
        slack += 2;
        j += 1;
        power = power * &a2 / &b2;
        // true power ≤ power + j + 1 ulps
        if BigInt::from(9) * (&power + BigInt::from(j + 1)) < BigInt::from(8 * (2 * j + 1)) {
            break;
        }
    }
    let scale = BigInt::one() << g;
    let lo = BigRational::new(&sum * 2, scale.clone());
    let hi = BigRational::new((sum + BigInt::from(slack + 1)) * 2, scale);
    Interval::new(lo, hi).round(bits)
}

/// Rigorous enclosure of `ln 2 = 2 atanh(1/3)`.
pub fn ln2(bits: u32) -> Interval {
    two_atanh(&BigRational::new(BigInt::one(), BigInt::from(3)), bits)
}

/// Rigorous enclosure of `ln x` for a positive rational `x`.
pub fn ln_enclosure(x: &BigRational, bits: u32) -> Interval {
    assert!(x.is_positive(), "logarithm of a non-positive number");
    let mut m = x.numer().bits() as i64 - x.denom().bits() as i64;
    let two = int(2u64);
    let scale = |m: i64| -> BigRational {
        if m >= 0 {
            num_traits::pow(two.clone(), m as usize)
        } else {
            num_traits::pow(two.clone(), (-m) as usize).recip()
        }
    };
    let mut y = x / scale(m);
    while y >= two {
        m += 1;
        y = x / scale(m);
    }
    while y < BigRational::one() {
        m -= 1;
        y = x / scale(m);
    }
    let guard = bits + 16;
    let u = (&y - BigRational::one()) / (&y + BigRational::one());
    let frac = two_atanh(&u, guard);
    let whole = &ln2(guard + 16) * &Interval::point(int(BigInt::from(m)));
    (&whole + &frac).round(bits)
}
