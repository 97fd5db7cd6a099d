//! Arbitrary-precision dyadic numbers `m·2^e` with directed rounding to a
//! fixed count of significant bits.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use super::ArithError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

impl Round {
    fn flip(self) -> Self {
        match self {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
        }
    }
}

/// `mant · 2^exp`, normalized so that `mant` is odd (or zero with `exp == 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

fn floor_shr(m: &BigInt, shift: u64) -> BigInt {
    // arithmetic shift rounding toward -inf
    if m.is_negative() {
        let mag = -m;
        let q: BigInt = &mag >> shift;
        if (&q << shift) == mag {
            -q
        } else {
            -(q + BigInt::one())
        }
    } else {
        m >> shift
    }
}

fn ceil_shr(m: &BigInt, shift: u64) -> BigInt {
    -floor_shr(&-m, shift)
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Self::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        Self {
            mant: mant >> tz,
            exp: exp + tz as i64,
        }
    }

    pub fn zero() -> Self {
        Self {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::new(n.into(), 0)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Rational value `n/d` rounded to `prec` significant bits.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32, dir: Round) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (num, den) = if den.is_negative() { (-num, -den) } else { (num.clone(), den.clone()) };
        let shift = (prec as i64 + den.bits() as i64 - num.bits() as i64 + 2).max(0);
        let scaled = num << shift as u64;
        let q = match dir {
            Round::Down => scaled.div_floor(&den),
            Round::Up => {
                let (q, r) = scaled.div_mod_floor(&den);
                if r.is_zero() {
                    q
                } else {
                    q + 1
                }
            }
        };
        Ok(Self::new(q, -shift).round(prec, dir))
    }

    pub fn from_rational(q: &Rational, prec: u32, dir: Round) -> Self {
        Self::from_ratio(q.numer(), q.denom(), prec, dir).expect("rational denominators are nonzero")
    }

    /// Rounds to at most `prec` significant bits in direction `dir`.
    pub fn round(&self, prec: u32, dir: Round) -> Self {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        let m = match dir {
            Round::Down => floor_shr(&self.mant, shift),
            Round::Up => ceil_shr(&self.mant, shift),
        };
        Self::new(m, self.exp + shift as i64)
    }

    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as u64)
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn to_f64(&self) -> f64 {
        super::rational::to_f64(&self.to_rational())
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, i64) {
        let e = self.exp.min(other.exp);
        (
            &self.mant << (self.exp - e) as u64,
            &other.mant << (other.exp - e) as u64,
            e,
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a, b, e) = self.aligned(other);
        Self::new(a + b, e)
    }

    pub fn neg(&self) -> Self {
        Self {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    pub fn abs(&self) -> Self {
        Self {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// Quotient rounded to `prec` significant bits.
    pub fn div(&self, other: &Self, prec: u32, dir: Round) -> Result<Self, ArithError> {
        let q = Self::from_ratio(&self.mant, &other.mant, prec, dir)?;
        Ok(Self::new(q.mant, q.exp + self.exp - other.exp))
    }

    /// Square root rounded to `prec` significant bits. Requires `self >= 0`.
    pub fn sqrt(&self, prec: u32, dir: Round) -> Result<Self, ArithError> {
        if self.mant.is_negative() {
            return Err(ArithError::Domain(format!("sqrt of negative value {self}")));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let root = self.integer_root(2, prec, dir);
        Ok(root)
    }

    /// Real cube root rounded to `prec` significant bits.
    pub fn cbrt(&self, prec: u32, dir: Round) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        if self.mant.is_negative() {
            return self.neg().integer_root(3, prec, dir.flip()).neg();
        }
        self.integer_root(3, prec, dir)
    }

    // k-th root of a positive value. The integer root is Newton-based; the
    // bracket is then checked against the radicand before rounding.
    fn integer_root(&self, k: u32, prec: u32, dir: Round) -> Self {
        let k64 = k as i64;
        let bits = self.mant.bits() as i64;
        let target = k64 * (prec as i64 + 2);
        // t with e + k·t >= 0 and enough bits in the scaled radicand
        let need_int = Integer::div_ceil(&-self.exp, &k64).max(0);
        let need_bits = Integer::div_ceil(&(target - bits - self.exp), &k64).max(0);
        let t = need_int.max(need_bits);
        let y = &self.mant << (self.exp + k64 * t) as u64;
        let floor_root = y.nth_root(k);
        let exact = num_traits::pow(floor_root.clone(), k as usize) == y;
        let ceil_root = if exact { floor_root.clone() } else { &floor_root + 1 };
        assert!(
            num_traits::pow(floor_root.clone(), k as usize) <= y
                && num_traits::pow(ceil_root.clone(), k as usize) >= y,
            "root bracket check failed"
        );
        let r = match dir {
            Round::Down => floor_root,
            Round::Up => ceil_root,
        };
        Self::new(r, -t).round(prec, dir)
    }

    /// `"m×2^e"`.
    pub fn to_repr(&self) -> String {
        format!("{}×2^{}", self.mant, self.exp)
    }

    pub fn parse_repr(s: &str) -> Result<Self, ArithError> {
        let bad = || ArithError::Parse(s.to_string());
        let (m, e) = s.split_once("×2^").ok_or_else(bad)?;
        let m: BigInt = m.trim().parse().map_err(|_| bad())?;
        let e: i64 = e.trim().parse().map_err(|_| bad())?;
        Ok(Self::new(m, e))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (s, o) = (self.signum(), other.signum());
        if s != o {
            return s.cmp(&o);
        }
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_repr())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rational::rat;

    #[test]
    fn normalizes_trailing_zeros() {
        let d = Dyadic::new(BigInt::from(12), 0);
        assert_eq!(d.mantissa(), &BigInt::from(3));
        assert_eq!(d.exponent(), 2);
        assert_eq!(Dyadic::new(BigInt::zero(), 17), Dyadic::zero());
    }

    #[test]
    fn directed_rounding_brackets_value() {
        let third = rat(1, 3);
        let lo = Dyadic::from_rational(&third, 53, Round::Down);
        let hi = Dyadic::from_rational(&third, 53, Round::Up);
        assert!(lo.to_rational() < third && third < hi.to_rational());
        assert!(lo.bits() <= 53 && hi.bits() <= 53);
        let neg = rat(-1, 3);
        let lo = Dyadic::from_rational(&neg, 20, Round::Down);
        let hi = Dyadic::from_rational(&neg, 20, Round::Up);
        assert!(lo.to_rational() < neg && neg < hi.to_rational());
    }

    #[test]
    fn exact_values_survive_rounding() {
        let q = rat(3, 8);
        assert_eq!(Dyadic::from_rational(&q, 8, Round::Down).to_rational(), q);
        assert_eq!(Dyadic::from_rational(&q, 8, Round::Up).to_rational(), q);
    }

    #[test]
    fn roots_of_perfect_powers_are_exact() {
        let four = Dyadic::from_int(4);
        assert_eq!(four.sqrt(64, Round::Down).unwrap(), Dyadic::from_int(2));
        assert_eq!(four.sqrt(64, Round::Up).unwrap(), Dyadic::from_int(2));
        let m8 = Dyadic::from_int(-8);
        assert_eq!(m8.cbrt(64, Round::Down), Dyadic::from_int(-2));
        assert_eq!(m8.cbrt(64, Round::Up), Dyadic::from_int(-2));
        assert!(Dyadic::from_int(-1).sqrt(64, Round::Down).is_err());
    }

    #[test]
    fn sqrt_two_bracket() {
        let two = Dyadic::from_int(2);
        let lo = two.sqrt(100, Round::Down).unwrap();
        let hi = two.sqrt(100, Round::Up).unwrap();
        assert!(lo.mul(&lo) < two && two < hi.mul(&hi));
        assert!(hi.sub(&lo).to_rational() <= rat(1, 1) / Rational::from_integer(BigInt::one() << 98u32));
    }

    #[test]
    fn repr_roundtrip() {
        let d = Dyadic::new(BigInt::from(-12345), -40);
        assert_eq!(Dyadic::parse_repr(&d.to_repr()).unwrap(), d);
        assert!(Dyadic::parse_repr("3x2^4").is_err());
    }

    #[test]
    fn ordering_matches_rationals() {
        let a = Dyadic::from_rational(&rat(-5, 7), 30, Round::Down);
        let b = Dyadic::from_rational(&rat(1, 9), 30, Round::Up);
        let c = Dyadic::from_rational(&rat(2, 9), 30, Round::Up);
        assert!(a < b && b < c);
        assert_eq!(a.cmp(&a.clone()), Ordering::Equal);
    }
}
