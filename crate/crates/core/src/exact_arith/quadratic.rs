//! Exact arithmetic in real quadratic fields `Q(√d)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::interval::{Interval, Sign};
use super::rational::{format_rational, rational_sqrt, serde_str, Rational};
use super::ArithError;

/// `a + b·√d` with rational `a`, `b` and radicand `d >= 0`.
///
/// Arithmetic requires a shared radicand, except that a value with `b = 0`
/// is a plain rational and embeds into any field. Comparisons work across
/// fields.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuadraticNumber {
    #[serde(with = "serde_str")]
    a: Rational,
    #[serde(with = "serde_str")]
    b: Rational,
    #[serde(with = "serde_str")]
    d: Rational,
}

fn sign_of(q: &Rational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

impl QuadraticNumber {
    pub fn new(a: Rational, b: Rational, d: Rational) -> Result<Self, ArithError> {
        if d.is_negative() {
            return Err(ArithError::NegativeRadicand);
        }
        Ok(Self { a, b, d })
    }

    pub fn rational(a: Rational) -> Self {
        Self {
            a,
            b: Rational::zero(),
            d: Rational::zero(),
        }
    }

    /// `√d` itself.
    pub fn sqrt_of(d: Rational) -> Result<Self, ArithError> {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> &Rational {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero() || self.d.is_zero()
    }

    /// Rational value, if the irrational part vanishes or `d` is a square.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            return Some(self.a.clone());
        }
        rational_sqrt(&self.d).map(|r| &self.a + &self.b * r)
    }

    fn common_radicand(&self, other: &Self) -> Result<Rational, ArithError> {
        if self.is_rational() {
            Ok(other.d.clone())
        } else if other.is_rational() || self.d == other.d {
            Ok(self.d.clone())
        } else {
            Err(ArithError::MismatchedRadicand {
                left: format_rational(&self.d),
                right: format_rational(&other.d),
            })
        }
    }

    fn irrational_part(&self) -> Rational {
        if self.d.is_zero() {
            Rational::zero()
        } else {
            self.b.clone()
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        let d = self.common_radicand(other)?;
        Ok(Self {
            a: &self.a + &other.a,
            b: self.irrational_part() + other.irrational_part(),
            d,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithError> {
        let d = self.common_radicand(other)?;
        let (b1, b2) = (self.irrational_part(), other.irrational_part());
        Ok(Self {
            a: &self.a * &other.a + &b1 * &b2 * &d,
            b: &self.a * &b2 + &other.a * &b1,
            d,
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithError> {
        let d = self.common_radicand(other)?;
        if other.sign() == Sign::Zero {
            return Err(ArithError::DivisionByZero);
        }
        if let Some(r) = rational_sqrt(&d) {
            // √d rational: the norm below could vanish, so fold first
            let den = other.a.clone() + other.irrational_part() * &r;
            let num = self.a.clone() + self.irrational_part() * &r;
            return Ok(Self {
                a: num / den,
                b: Rational::zero(),
                d,
            });
        }
        let b2 = other.irrational_part();
        let norm = &other.a * &other.a - &b2 * &b2 * &d;
        let conj = Self {
            a: other.a.clone(),
            b: -b2,
            d: d.clone(),
        };
        let num = self.checked_mul(&conj)?;
        Ok(Self {
            a: num.a / &norm,
            b: num.b / &norm,
            d,
        })
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self {
            a: &self.a * q,
            b: &self.b * q,
            d: self.d.clone(),
        }
    }

    pub fn conjugate(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    pub fn square(&self) -> Self {
        self.checked_mul(self).expect("same field")
    }

    pub fn powi(&self, n: u32) -> Self {
        (0..n).fold(Self::rational(Rational::one()), |acc, _| {
            acc.checked_mul(self).expect("same field")
        })
    }

    pub fn abs(&self) -> Self {
        if self.sign() == Sign::Negative {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact sign of `a + b√d`.
    pub fn sign(&self) -> Sign {
        to_sign(sign_a_plus_b_sqrt_d(&self.a, &self.irrational_part(), &self.d))
    }

    /// Exact comparison, valid across different radicands.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        // self - other = α + β√d + γ√e
        let alpha = &self.a - &other.a;
        let beta = self.irrational_part();
        let gamma = -other.irrational_part();
        let x = QuadraticNumber {
            a: alpha,
            b: gamma,
            d: other.d.clone(),
        };
        let sx = sign_of_i(x.sign());
        let sy = if self.d.is_zero() { 0 } else { sign_of(&beta) };
        let s = if sy == 0 {
            sx
        } else if sx == 0 || sx == sy {
            sy
        } else {
            // opposite signs: compare X² with β²d
            let x2 = x.square();
            let diff = QuadraticNumber {
                a: &x2.a - &beta * &beta * &self.d,
                b: x2.b,
                d: x2.d,
            };
            match diff.sign() {
                Sign::Positive => sx,
                Sign::Negative => sy,
                Sign::Zero => 0,
            }
        };
        s.cmp(&0)
    }

    pub fn to_interval(&self, prec: u32) -> Interval {
        let a = Interval::from_rational(&self.a, prec);
        if self.is_rational() {
            return a;
        }
        let root = Interval::from_rational(&self.d, prec)
            .sqrt()
            .expect("radicand is nonnegative");
        &a + &root.scale(&self.b)
    }
}

fn sign_of_i(s: Sign) -> i32 {
    match s {
        Sign::Negative => -1,
        Sign::Zero => 0,
        Sign::Positive => 1,
    }
}

fn to_sign(s: i32) -> Sign {
    match s.cmp(&0) {
        Ordering::Less => Sign::Negative,
        Ordering::Equal => Sign::Zero,
        Ordering::Greater => Sign::Positive,
    }
}

fn sign_a_plus_b_sqrt_d(a: &Rational, b: &Rational, d: &Rational) -> i32 {
    let sa = sign_of(a);
    let sb = if d.is_zero() { 0 } else { sign_of(b) };
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    match (a * a).cmp(&(b * b * d)) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => 0,
    }
}

impl PartialEq for QuadraticNumber {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl Eq for QuadraticNumber {}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl Ord for QuadraticNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
}

impl From<Rational> for QuadraticNumber {
    fn from(q: Rational) -> Self {
        Self::rational(q)
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return f.write_str(&format_rational(&self.a));
        }
        write!(
            f,
            "{} + ({})·√{}",
            format_rational(&self.a),
            format_rational(&self.b),
            format_rational(&self.d)
        )
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber {
            a: -&self.a,
            b: -&self.b,
            d: self.d.clone(),
        }
    }
}

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        -&self
    }
}

// Operator forms panic on mismatched fields; use the `checked_*` methods
// where the radicands are not known to agree.
macro_rules! quad_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr for &QuadraticNumber {
            type Output = QuadraticNumber;
            fn $m(self, rhs: &QuadraticNumber) -> QuadraticNumber {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $m(self, rhs: QuadraticNumber) -> QuadraticNumber {
                (&self).$m(&rhs)
            }
        }
    };
}
quad_op!(Add, add, checked_add);
quad_op!(Sub, sub, checked_sub);
quad_op!(Mul, mul, checked_mul);

impl<'a> Mul<&'a QuadraticNumber> for QuadraticNumber {
    type Output = QuadraticNumber;
    fn mul(self, rhs: &'a QuadraticNumber) -> QuadraticNumber {
        (&self).mul(rhs)
    }
}

impl Zero for QuadraticNumber {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.sign() == Sign::Zero
    }
}

impl One for QuadraticNumber {
    fn one() -> Self {
        Self::rational(Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rational::{int, rat};

    fn q(a: Rational, b: Rational, d: Rational) -> QuadraticNumber {
        QuadraticNumber::new(a, b, d).unwrap()
    }

    #[test]
    fn conjugate_product() {
        let d = rat(73, 16);
        let x = q(int(1), int(1), d.clone());
        let y = q(int(1), int(-1), d);
        assert_eq!(x.checked_mul(&y).unwrap(), QuadraticNumber::rational(rat(-57, 16)));
    }

    #[test]
    fn cylinder_curvature_times_radius_is_one() {
        for lam in [rat(3, 4), rat(-5, 2), rat(1, 7), int(0)] {
            let d = &lam * &lam + int(4);
            let mu = q(lam.clone() / int(2), rat(1, 2), d.clone());
            let r = q(-lam.clone() / int(2), rat(1, 2), d);
            assert_eq!(mu.checked_mul(&r).unwrap(), QuadraticNumber::one());
        }
    }

    #[test]
    fn division_identity_and_errors() {
        let x = q(rat(2, 3), rat(-5, 7), int(11));
        assert_eq!(x.checked_div(&x).unwrap(), QuadraticNumber::one());
        assert_eq!(
            x.checked_div(&QuadraticNumber::zero()),
            Err(ArithError::DivisionByZero)
        );
        let y = q(int(1), int(1), int(3));
        assert!(matches!(x.checked_add(&y), Err(ArithError::MismatchedRadicand { .. })));
        // square radicand whose norm vanishes: 2 - √4 = 0, 2 + √4 = 4
        let four = q(int(2), int(1), int(4));
        assert_eq!(x.checked_mul(&QuadraticNumber::one()).unwrap(), x);
        assert_eq!(
            QuadraticNumber::rational(int(8)).checked_div(&four).unwrap(),
            QuadraticNumber::rational(int(2))
        );
    }

    #[test]
    fn sign_examples() {
        assert_eq!(q(int(0), int(0), int(5)).sign(), Sign::Zero);
        assert_eq!(q(int(-3), int(1), int(8)).sign(), Sign::Negative);
        assert_eq!(q(int(-3), int(1), int(10)).sign(), Sign::Positive);
        assert_eq!(q(int(-3), int(1), int(9)).sign(), Sign::Zero);
        assert_eq!(q(int(3), int(-1), int(8)).sign(), Sign::Positive);
    }

    #[test]
    fn cross_field_comparison() {
        let s2 = QuadraticNumber::sqrt_of(int(2)).unwrap();
        let s3 = QuadraticNumber::sqrt_of(int(3)).unwrap();
        let s5 = QuadraticNumber::sqrt_of(int(5)).unwrap();
        assert_eq!(s2.cmp_value(&s3), Ordering::Less);
        // (1+√2)² = 3+2√2 > 5
        assert_eq!(q(int(1), int(1), int(2)).cmp_value(&s5), Ordering::Greater);
        // 3-√2 ≈ 1.586 < √3
        assert_eq!(q(int(3), int(-1), int(2)).cmp_value(&s3), Ordering::Less);
        assert_eq!(q(int(-1), int(1), int(2)).cmp_value(&-s5.clone()), Ordering::Greater);
        assert!(s5.checked_sub(&s3).is_err());
        // ½√(4k) equals √k
        let a = q(int(0), rat(1, 2), int(12));
        let b = QuadraticNumber::sqrt_of(int(3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn interval_agrees_with_sign() {
        let x = q(rat(-7, 3), rat(1, 2), int(22));
        let iv = x.to_interval(128);
        assert_eq!(iv.sign(), Some(x.sign()));
    }
}
