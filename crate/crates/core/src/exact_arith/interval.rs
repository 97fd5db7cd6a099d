//! Outward-rounded interval arithmetic over [`Dyadic`] endpoints.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::dyadic::{Dyadic, Round};
use super::rational::{to_decimal, Rational};
use super::ArithError;

pub const DEFAULT_PRECISION: u32 = 256;

/// Closed interval `[lo, hi]` guaranteed to contain the exact value it encloses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Interval {
    /// Builds `[lo, hi]`, rounding endpoints outward to `prec` bits.
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Result<Self, ArithError> {
        if lo > hi {
            return Err(ArithError::InvertedInterval);
        }
        Ok(Self {
            lo: lo.round(prec, Round::Down),
            hi: hi.round(prec, Round::Up),
            prec,
        })
    }

    fn raw(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        debug_assert!(lo <= hi);
        Self {
            lo: lo.round(prec, Round::Down),
            hi: hi.round(prec, Round::Up),
            prec,
        }
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        Self {
            lo: Dyadic::from_rational(q, prec, Round::Down),
            hi: Dyadic::from_rational(q, prec, Round::Up),
            prec,
        }
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        Self::raw(Dyadic::from_int(n), Dyadic::from_int(n), prec)
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_int(0, prec)
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn with_precision(&self, prec: u32) -> Self {
        Self::raw(self.lo.clone(), self.hi.clone(), prec)
    }

    pub fn width(&self) -> Rational {
        self.hi.sub(&self.lo).to_rational()
    }

    pub fn midpoint(&self) -> Rational {
        (self.lo.to_rational() + self.hi.to_rational()) / Rational::from_integer(2.into())
    }

    pub fn to_f64(&self) -> f64 {
        super::rational::to_f64(&self.midpoint())
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        &self.lo.to_rational() <= q && q <= &self.hi.to_rational()
    }

    /// `other ⊆ self`.
    pub fn encloses(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.hi.signum() < 0
    }

    pub fn is_nonnegative(&self) -> bool {
        self.lo.signum() >= 0
    }

    /// Certain sign, or `None` when the enclosure straddles zero.
    pub fn sign(&self) -> Option<Sign> {
        if self.is_positive() {
            Some(Sign::Positive)
        } else if self.is_negative() {
            Some(Sign::Negative)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Sign::Zero)
        } else {
            None
        }
    }

    /// `self < q` holds for every point.
    pub fn certainly_below(&self, q: &Rational) -> bool {
        &self.hi.to_rational() < q
    }

    pub fn certainly_at_most(&self, q: &Rational) -> bool {
        &self.hi.to_rational() <= q
    }

    fn out_prec(&self, other: &Self) -> u32 {
        self.prec.max(other.prec)
    }

    pub fn hull(&self, other: &Self) -> Self {
        Self::raw(
            self.lo.clone().min(other.lo.clone()),
            self.hi.clone().max(other.hi.clone()),
            self.out_prec(other),
        )
    }

    pub fn abs(&self) -> Self {
        if self.lo.signum() >= 0 {
            self.clone()
        } else if self.hi.signum() <= 0 {
            -self
        } else {
            let m = self.lo.abs().max(self.hi.clone());
            Self::raw(Dyadic::zero(), m, self.prec)
        }
    }

    pub fn square(&self) -> Self {
        let a = self.abs();
        Self::raw(a.lo.mul(&a.lo), a.hi.mul(&a.hi), self.prec)
    }

    pub fn powi(&self, n: u32) -> Self {
        match n {
            0 => Self::from_int(1, self.prec),
            1 => self.clone(),
            _ if n % 2 == 0 => self.powi(n / 2).square(),
            _ => &self.powi(n - 1) * self,
        }
    }

    /// Division; fails when the divisor encloses zero.
    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithError> {
        if other.lo.signum() <= 0 && other.hi.signum() >= 0 {
            return Err(ArithError::DivisorContainsZero);
        }
        let prec = self.out_prec(other);
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for a in [&self.lo, &self.hi] {
            for b in [&other.lo, &other.hi] {
                let d = a.div(b, prec, Round::Down)?;
                let u = a.div(b, prec, Round::Up)?;
                lo = Some(match lo {
                    Some(x) if x <= d => x,
                    _ => d,
                });
                hi = Some(match hi {
                    Some(x) if x >= u => x,
                    _ => u,
                });
            }
        }
        Ok(Self::raw(lo.unwrap(), hi.unwrap(), prec))
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        Self::from_int(1, self.prec).checked_div(self)
    }

    /// Square root; fails if any point of the enclosure is negative.
    pub fn sqrt(&self) -> Result<Self, ArithError> {
        if self.lo.signum() < 0 {
            return Err(ArithError::Domain(format!("sqrt of enclosure with lo = {}", self.lo)));
        }
        Ok(Self::raw(
            self.lo.sqrt(self.prec, Round::Down)?,
            self.hi.sqrt(self.prec, Round::Up)?,
            self.prec,
        ))
    }

    pub fn cbrt(&self) -> Self {
        Self::raw(
            self.lo.cbrt(self.prec, Round::Down),
            self.hi.cbrt(self.prec, Round::Up),
            self.prec,
        )
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self * &Self::from_rational(q, self.prec)
    }

    /// Short decimal rendering of the midpoint, for humans.
    pub fn approx(&self, digits: usize) -> String {
        to_decimal(&self.midpoint(), digits)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            to_decimal(&self.lo.to_rational(), 12),
            to_decimal(&self.hi.to_rational(), 12)
        )
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval::raw(self.lo.add(&rhs.lo), self.hi.add(&rhs.hi), self.out_prec(rhs))
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval::raw(self.lo.sub(&rhs.hi), self.hi.sub(&rhs.lo), self.out_prec(rhs))
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        let products = [
            self.lo.mul(&rhs.lo),
            self.lo.mul(&rhs.hi),
            self.hi.mul(&rhs.lo),
            self.hi.mul(&rhs.hi),
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Interval::raw(lo, hi, self.out_prec(rhs))
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            prec: self.prec,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for Interval {
            type Output = Interval;
            fn $m(self, rhs: Interval) -> Interval { (&self).$m(&rhs) }
        }
        impl $tr<&Interval> for Interval {
            type Output = Interval;
            fn $m(self, rhs: &Interval) -> Interval { (&self).$m(rhs) }
        }
        impl $tr<Interval> for &Interval {
            type Output = Interval;
            fn $m(self, rhs: Interval) -> Interval { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct IntervalRepr {
    lo: String,
    hi: String,
    precision: u32,
    #[serde(default, skip_deserializing)]
    approx: String,
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        IntervalRepr {
            lo: self.lo.to_repr(),
            hi: self.hi.to_repr(),
            precision: self.prec,
            approx: self.approx(12),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = IntervalRepr::deserialize(d)?;
        let lo = Dyadic::parse_repr(&r.lo).map_err(serde::de::Error::custom)?;
        let hi = Dyadic::parse_repr(&r.hi).map_err(serde::de::Error::custom)?;
        if lo > hi {
            return Err(serde::de::Error::custom("interval with lo > hi"));
        }
        Ok(Interval {
            lo,
            hi,
            prec: r.precision,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rational::{int, rat};

    fn pow2(e: i32) -> Rational {
        if e >= 0 {
            int(1 << e)
        } else {
            Rational::new(1.into(), num_bigint::BigInt::from(1u8) << (-e) as u32)
        }
    }

    #[test]
    fn embedding_of_rationals() {
        let x = Interval::from_rational(&rat(1, 18), 256);
        assert!(x.contains_rational(&rat(1, 18)));
        assert!(x.width() <= Rational::new(1.into(), num_bigint::BigInt::from(1u8) << 256u32));
        assert!(Interval::from_rational(&int(0), 256).is_point());
        assert!(Interval::from_rational(&rat(616, 1000), 256).contains_rational(&rat(77, 125)));
    }

    #[test]
    fn sqrt_examples() {
        let two = Interval::from_int(4, 256).sqrt().unwrap();
        assert!(two.contains_rational(&int(2)));
        assert!(two.width() <= pow2(-254));
        assert!(Interval::from_int(0, 256).sqrt().unwrap().is_point());
        let s6 = Interval::from_int(6, 256).sqrt().unwrap();
        let (lo, hi) = (s6.lo().to_rational(), s6.hi().to_rational());
        assert!(&lo * &lo <= int(6) && int(6) <= &hi * &hi);
        assert!(Interval::new(Dyadic::from_int(-1), Dyadic::from_int(1), 64)
            .unwrap()
            .sqrt()
            .is_err());
    }

    #[test]
    fn cbrt_examples() {
        assert!(Interval::from_int(8, 128).cbrt().contains_rational(&int(2)));
        assert!(Interval::from_int(-8, 128).cbrt().contains_rational(&int(-2)));
        let mixed = Interval::new(Dyadic::from_int(-8), Dyadic::from_int(27), 64).unwrap().cbrt();
        assert!(mixed.contains_rational(&int(-2)) && mixed.contains_rational(&int(3)));
    }

    #[test]
    fn division_rejects_zero_divisor() {
        let a = Interval::from_int(1, 64);
        let z = Interval::new(Dyadic::from_int(-1), Dyadic::from_int(1), 64).unwrap();
        assert_eq!(a.checked_div(&z), Err(ArithError::DivisorContainsZero));
        let third = a.checked_div(&Interval::from_int(3, 64)).unwrap();
        assert!(third.contains_rational(&rat(1, 3)));
    }

    #[test]
    fn square_of_straddling_interval_is_nonnegative() {
        let x = Interval::new(Dyadic::from_int(-2), Dyadic::from_int(1), 64).unwrap();
        let sq = x.square();
        assert!(sq.lo().is_zero());
        assert_eq!(sq.hi(), &Dyadic::from_int(4));
        assert!((&x * &x).lo() < &Dyadic::zero());
    }

    #[test]
    fn sign_decisions() {
        assert_eq!(Interval::from_rational(&rat(-1, 3), 64).sign(), Some(Sign::Negative));
        assert_eq!(Interval::zero(64).sign(), Some(Sign::Zero));
        let s = Interval::new(Dyadic::from_int(-1), Dyadic::from_int(1), 64).unwrap();
        assert_eq!(s.sign(), None);
    }

    #[test]
    fn serde_roundtrip() {
        let x = Interval::from_int(6, 128).sqrt().unwrap();
        let json = serde_json::to_string(&x).unwrap();
        assert!(json.contains("×2^"));
        let back: Interval = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }
}
