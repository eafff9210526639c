//! Field scalars.
//!
//! Every container in the crate is generic over a [`Scalar`]; the field tag
//! is therefore part of the type and two fields can never be mixed inside a
//! computation. The tag only becomes a runtime value at the serialization
//! boundary, where a mismatching `"field"` entry is rejected.

use std::fmt::{self, Debug, Display};
use std::ops::{AddAssign, MulAssign, Neg, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Which field a container lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rational,
    Float,
}

impl FieldKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FieldKind::Rational => "rational",
            FieldKind::Float => "float",
        }
    }
}

impl Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FieldKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" => Ok(FieldKind::Rational),
            "float" => Ok(FieldKind::Float),
            other => Err(Error::parse("field", format!("unknown field tag {other:?}"))),
        }
    }
}

/// Element of a field usable as a coefficient.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    const FIELD: FieldKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn from_i64(n: i64) -> Self;

    /// `num / den`; panics when `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).div(&Self::from_i64(den))
    }

    fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r += other;
        r
    }

    fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r -= other;
        r
    }

    fn mul(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r *= other;
        r
    }

    /// Division; panics on a zero divisor (callers check first).
    fn div(&self, other: &Self) -> Self;

    fn recip(&self) -> Self {
        Self::one().div(self)
    }

    fn pow(&self, exp: i32) -> Self {
        let base = if exp < 0 { self.recip() } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..exp.unsigned_abs() {
            acc *= &base;
        }
        acc
    }

    /// Magnitude used for pivot selection and tolerances.
    fn magnitude(&self) -> f64;

    /// True when the value must be treated as zero during elimination,
    /// relative to the largest entry `scale` of the matrix being reduced.
    fn negligible(&self, scale: f64) -> bool;

    fn to_f64(&self) -> f64;

    /// Parse from the canonical text form (`"p/q"` or a decimal string).
    fn parse_str(s: &str) -> Result<Self>;

    /// Canonical text form; `parse_str(to_canonical())` is the identity.
    fn to_canonical(&self) -> String;

    /// Converts a rational into this field.
    fn from_rational(q: &Rational) -> Self;
}

impl Scalar for Rational {
    const FIELD: FieldKind = FieldKind::Rational;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn div(&self, other: &Self) -> Self {
        self / other
    }

    fn recip(&self) -> Self {
        BigRational::recip(self)
    }

    fn magnitude(&self) -> f64 {
        ToPrimitive::to_f64(&self.abs()).unwrap_or(f64::INFINITY)
    }

    fn negligible(&self, _scale: f64) -> bool {
        Zero::is_zero(self)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn parse_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::parse("coeff", format!("not a rational number: {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<BigInt>().map_err(|_| bad())?,
                d.trim().parse::<BigInt>().map_err(|_| bad())?,
            ),
            None => (s.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
        };
        if Zero::is_zero(&den) {
            return Err(Error::parse("coeff", format!("zero denominator in {s:?}")));
        }
        Ok(BigRational::new(num, den))
    }

    fn to_canonical(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

/// Relative pivot threshold for floating point elimination.
pub const FLOAT_PIVOT_TOLERANCE: f64 = 1e-10;

impl Scalar for f64 {
    const FIELD: FieldKind = FieldKind::Float;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn is_negative(&self) -> bool {
        *self < 0.0
    }

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn div(&self, other: &Self) -> Self {
        assert!(*other != 0.0, "division by zero");
        self / other
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }

    fn negligible(&self, scale: f64) -> bool {
        self.abs() < FLOAT_PIVOT_TOLERANCE * scale.max(f64::MIN_POSITIVE)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn parse_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: f64 = n.trim().parse().map_err(|_| Error::parse("coeff", format!("bad float {s:?}")))?;
            let d: f64 = d.trim().parse().map_err(|_| Error::parse("coeff", format!("bad float {s:?}")))?;
            return Ok(n / d);
        }
        let v: f64 = s
            .parse()
            .map_err(|_| Error::parse("coeff", format!("not a decimal number: {s:?}")))?;
        if !v.is_finite() {
            return Err(Error::parse("coeff", format!("non-finite value {s:?}")));
        }
        Ok(v)
    }

    fn to_canonical(&self) -> String {
        // Rust's shortest round-trip formatting.
        format!("{self:?}")
    }

    fn from_rational(q: &Rational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }
}

/// Shorthand for building a rational constant in code and tests.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::from_ratio(num, den)
}
