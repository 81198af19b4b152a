//! Exact arithmetic: arbitrary-precision rationals and the real quadratic
//! field Q(√21).
//!
//! Every length that appears in the constructions is an element of
//! Q(√21): integers, the half-unit cuts of the three-pyramid puzzle, and the
//! strip width x = (−3 + √21)/6 of the scissor step. Elements are kept in
//! canonical form after every operation, so structural equality is numeric
//! equality.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use core::str::FromStr;

pub use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational in lowest terms with a positive denominator.
pub type Rat = BigRational;

/// The radicand of the field generator.
pub const RADICAND: i64 = 21;

/// √21 rounded to the nearest `f64`.
pub const SQRT_21_F64: f64 = 4.58257569495584;

/// Errors from the text form or from float conversion.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("malformed number `{0}`")]
    Parse(String),
    #[error("value too large for a binary float")]
    Overflow,
    #[error("division by zero")]
    DivisionByZero,
}

/// Build a rational from a numerator and a nonzero denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// The real number `a + b·√21`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadExt {
    a: Rat,
    b: Rat,
}

impl QuadExt {
    pub fn new(a: Rat, b: Rat) -> Self {
        QuadExt { a, b }
    }

    pub fn zero() -> Self {
        QuadExt::new(Rat::zero(), Rat::zero())
    }

    pub fn one() -> Self {
        QuadExt::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        QuadExt::new(Rat::from_integer(BigInt::from(v)), Rat::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        QuadExt::new(rat(num, den), Rat::zero())
    }

    /// √21 itself.
    pub fn sqrt21() -> Self {
        QuadExt::new(Rat::zero(), Rat::one())
    }

    /// Rational part.
    pub fn a(&self) -> &Rat {
        &self.a
    }

    /// Coefficient of √21.
    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// The rational value, if the √21 part vanishes.
    pub fn to_rational(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.a)
    }

    /// `a − b·√21`.
    pub fn conj(&self) -> Self {
        QuadExt::new(self.a.clone(), -&self.b)
    }

    /// Field norm `a² − 21·b²`; zero only for zero.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - Rat::from_integer(BigInt::from(RADICAND)) * &self.b * &self.b
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(QuadExt::new(&self.a / &n, -&self.b / &n))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ExactError> {
        let inv = rhs.checked_inv().ok_or(ExactError::DivisionByZero)?;
        Ok(self * &inv)
    }

    pub fn signum(&self) -> Ordering {
        quad_compare(self, &QuadExt::zero())
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// Whether the value is an integer.
    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.a.is_integer()
    }

    /// Float approximation for drawing. Never used by any check.
    pub fn to_f64(&self) -> Result<f64, ExactError> {
        quad_to_float(self)
    }
}

fn sign_of(r: &Rat) -> Ordering {
    if r.is_zero() {
        Ordering::Equal
    } else if r.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// Exact real-number comparison of `u` and `v`.
pub fn quad_compare(u: &QuadExt, v: &QuadExt) -> Ordering {
    let da = &u.a - &v.a;
    let db = &u.b - &v.b;
    let sa = sign_of(&da);
    let sb = sign_of(&db);
    match (sa, sb) {
        (_, Ordering::Equal) => sa,
        (Ordering::Equal, _) => sb,
        _ if sa == sb => sa,
        _ => {
            // Opposite signs: the larger of |Δa| and √21·|Δb| wins. Equality
            // is impossible because √21 is irrational.
            let lhs = &da * &da;
            let rhs = Rat::from_integer(BigInt::from(RADICAND)) * &db * &db;
            if lhs > rhs {
                sa
            } else {
                sb
            }
        }
    }
}

/// The positive root of t² + t − 1/3, namely (−3 + √21)/6.
pub fn strip_root() -> QuadExt {
    QuadExt::new(rat(-1, 2), rat(1, 6))
}

fn rat_to_f64(r: &Rat) -> Result<f64, ExactError> {
    if r.is_zero() {
        return Ok(0.0);
    }
    match r.to_f64() {
        Some(f) if f.is_finite() => Ok(f),
        _ => Err(ExactError::Overflow),
    }
}

/// Float approximation of `a + b·√21`.
///
/// When the two terms have opposite signs the value is computed as
/// `(a² − 21b²) / (a − b√21)`, whose denominator has no cancellation.
pub fn quad_to_float(u: &QuadExt) -> Result<f64, ExactError> {
    let a = rat_to_f64(&u.a)?;
    let b = rat_to_f64(&u.b)?;
    let value = if a == 0.0 || b == 0.0 || (a > 0.0) == (b > 0.0) {
        a + b * SQRT_21_F64
    } else {
        let norm = rat_to_f64(&u.norm())?;
        norm / (a - b * SQRT_21_F64)
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(ExactError::Overflow)
    }
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadExt {
    fn cmp(&self, other: &Self) -> Ordering {
        quad_compare(self, other)
    }
}

impl From<Rat> for QuadExt {
    fn from(a: Rat) -> Self {
        QuadExt::new(a, Rat::zero())
    }
}

impl From<BigInt> for QuadExt {
    fn from(a: BigInt) -> Self {
        QuadExt::new(Rat::from_integer(a), Rat::zero())
    }
}

impl From<i64> for QuadExt {
    fn from(v: i64) -> Self {
        QuadExt::from_int(v)
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::new(-self.a, -self.b)
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::new(-&self.a, -&self.b)
    }
}

impl Add<&QuadExt> for &QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &QuadExt) -> QuadExt {
        QuadExt::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub<&QuadExt> for &QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &QuadExt) -> QuadExt {
        QuadExt::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul<&QuadExt> for &QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &QuadExt) -> QuadExt {
        // (a + b√r)(c + d√r) = (ac + r·bd) + (ad + bc)√r
        let r = Rat::from_integer(BigInt::from(RADICAND));
        let a = &self.a * &rhs.a + r * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        QuadExt::new(a, b)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: QuadExt) -> QuadExt {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: &QuadExt) -> QuadExt {
                (&self).$m(rhs)
            }
        }
        impl $tr<QuadExt> for &QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: QuadExt) -> QuadExt {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl AddAssign<&QuadExt> for QuadExt {
    fn add_assign(&mut self, rhs: &QuadExt) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&QuadExt> for QuadExt {
    fn sub_assign(&mut self, rhs: &QuadExt) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl core::iter::Sum for QuadExt {
    fn sum<I: Iterator<Item = QuadExt>>(iter: I) -> QuadExt {
        iter.fold(QuadExt::zero(), |acc, v| acc + v)
    }
}

impl<'a> core::iter::Sum<&'a QuadExt> for QuadExt {
    fn sum<I: Iterator<Item = &'a QuadExt>>(iter: I) -> QuadExt {
        iter.fold(QuadExt::zero(), |mut acc, v| {
            acc += v;
            acc
        })
    }
}

/// Text form: `p/q` (or `p` for integers) when the √21 part is zero,
/// otherwise `p/q+r/s*sqrt21` or `p/q-r/s*sqrt21`.
impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.a)?;
        if !self.b.is_zero() {
            if self.b.is_negative() {
                write!(f, "-{}*sqrt21", -&self.b)?;
            } else {
                write!(f, "+{}*sqrt21", self.b)?;
            }
        }
        Ok(())
    }
}

fn parse_rat(s: &str, whole: &str) -> Result<Rat, ExactError> {
    let bad = || ExactError::Parse(String::from(whole));
    if s.is_empty() || s.starts_with('+') || s.contains(char::is_whitespace) {
        return Err(bad());
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = match den {
        Some(d) => {
            if d.starts_with(['-', '+']) {
                return Err(bad());
            }
            BigInt::from_str(d).map_err(|_| bad())?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(num, den))
}

impl FromStr for QuadExt {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ExactError::Parse(String::from(s));
        let Some(body) = s.strip_suffix("*sqrt21") else {
            return Ok(QuadExt::from(parse_rat(s, s)?));
        };
        // The separator is the last sign that is not the leading one.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(bad)?;
        let a = parse_rat(&body[..split], s)?;
        let b = parse_rat(&body[split + 1..], s)?;
        let b = if &body[split..=split] == "-" { -b } else { b };
        Ok(QuadExt::new(a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn q(a: (i64, i64), b: (i64, i64)) -> QuadExt {
        QuadExt::new(rat(a.0, a.1), rat(b.0, b.1))
    }

    #[test]
    fn compare_examples() {
        assert_eq!(quad_compare(&QuadExt::sqrt21(), &QuadExt::from_int(4)), Ordering::Greater);
        assert_eq!(quad_compare(&strip_root(), &QuadExt::zero()), Ordering::Greater);
        let u = q((7, 3), (-2, 5));
        assert_eq!(quad_compare(&u, &u), Ordering::Equal);
        assert_eq!(quad_compare(&QuadExt::sqrt21(), &QuadExt::from_int(5)), Ordering::Less);
    }

    #[test]
    fn strip_root_is_the_positive_root() {
        let x = strip_root();
        assert_eq!(x.a(), &rat(-1, 2));
        assert_eq!(x.b(), &rat(1, 6));
        // (√21/6)² = 21/36 = 7/12
        let half_root = QuadExt::new(Rat::zero(), rat(1, 6));
        assert_eq!(&half_root * &half_root, QuadExt::from_ratio(7, 12));
        assert_eq!(&x * &x + &x, QuadExt::from_ratio(1, 3));
        assert!(x.is_positive());
    }

    #[test]
    fn float_approximations() {
        assert_eq!(QuadExt::zero().to_f64().unwrap(), 0.0);
        assert!((QuadExt::from_ratio(1, 3).to_f64().unwrap() - 0.3333333333).abs() < 1e-10);
        assert!((strip_root().to_f64().unwrap() - 0.2637626158).abs() < 1e-10);
    }

    #[test]
    fn float_overflow_is_reported() {
        let huge = BigInt::from(10).pow(400);
        assert_eq!(QuadExt::from(huge).to_f64(), Err(ExactError::Overflow));
    }

    #[test]
    fn cancellation_keeps_precision() {
        // 55 − 12√21 ≈ 0.0090913... has heavy cancellation in the naive form.
        let u = q((55, 1), (-12, 1));
        let expected = 1.0 / (55.0 + 12.0 * SQRT_21_F64);
        let got = u.to_f64().unwrap();
        assert!((got - expected).abs() <= 4.0 * f64::EPSILON * expected);
    }

    #[test]
    fn text_form() {
        assert_eq!(strip_root().to_string(), "-1/2+1/6*sqrt21");
        assert_eq!(strip_root().conj().to_string(), "-1/2-1/6*sqrt21");
        assert_eq!(QuadExt::from_ratio(1, 3).to_string(), "1/3");
        assert_eq!(QuadExt::from_int(-7).to_string(), "-7");
        assert_eq!(QuadExt::sqrt21().to_string(), "0+1*sqrt21");
        for s in ["-1/2+1/6*sqrt21", "3", "-5/4-7/3*sqrt21", "0+1*sqrt21", "0"] {
            assert_eq!(s.parse::<QuadExt>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn text_form_rejects_garbage() {
        for s in ["", "1/0", "abc", "1+", "+1", "1/2+-1/3*sqrt21", "1/-2", "*sqrt21", "1 /2"] {
            assert!(s.parse::<QuadExt>().is_err(), "{s}");
        }
    }

    #[test]
    fn inverse_and_division() {
        let u = q((3, 2), (1, 5));
        let inv = u.checked_inv().unwrap();
        assert_eq!(&u * &inv, QuadExt::one());
        assert!(QuadExt::zero().checked_inv().is_none());
        assert_eq!(u.checked_div(&QuadExt::zero()), Err(ExactError::DivisionByZero));
    }
}
