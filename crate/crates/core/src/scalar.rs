//! Exact scalar fields.
//!
//! Everything symbolic in this crate runs over one of two exact fields: the
//! rationals, or the quadratic extension `Q(sqrt5)`. The [`Field`] trait is
//! the small interface the octonion and linear-algebra code needs, and is also
//! implemented for `f64` so the basis-change code can reuse the same
//! multiplication routines.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Arbitrary precision rational, always stored reduced with a positive
/// denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid scalar literal `{0}`")]
    Parse(String),
}

/// Operations shared by every coefficient type used with octonions.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn try_inv(&self) -> Result<Self, ScalarError>;

    fn from_i64(n: i64) -> Self;

    fn to_f64(&self) -> f64;

    fn try_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self.clone() * rhs.try_inv()?)
    }
}

/// `numer / denom` as a reduced rational. Panics if `denom` is zero.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

impl Field for Rational {
    fn try_inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }

    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Field for f64 {
    fn try_inv(&self) -> Result<Self, ScalarError> {
        if *self == 0.0 {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(1.0 / self)
        }
    }

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

/// An element `rat + surd * sqrt5` of the field `Q(sqrt5)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    pub rat: Rational,
    pub surd: Rational,
}

impl QuadExt {
    pub fn new(rat: Rational, surd: Rational) -> Self {
        QuadExt { rat, surd }
    }

    pub fn sqrt5() -> Self {
        QuadExt::new(Rational::zero(), Rational::one())
    }

    /// Galois conjugate `rat - surd * sqrt5`.
    pub fn conjugate(&self) -> Self {
        QuadExt::new(self.rat.clone(), -self.surd.clone())
    }

    /// Field norm `rat^2 - 5 surd^2`; zero only for the zero element.
    pub fn norm(&self) -> Rational {
        &self.rat * &self.rat - Rational::from_i64(5) * &self.surd * &self.surd
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_zero()
    }
}

impl From<Rational> for QuadExt {
    fn from(rat: Rational) -> Self {
        QuadExt::new(rat, Rational::zero())
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: QuadExt) -> QuadExt {
        QuadExt::new(self.rat + rhs.rat, self.surd + rhs.surd)
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: QuadExt) -> QuadExt {
        QuadExt::new(self.rat - rhs.rat, self.surd - rhs.surd)
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        let five = Rational::from_i64(5);
        QuadExt::new(
            &self.rat * &rhs.rat + five * &self.surd * &rhs.surd,
            &self.rat * &rhs.surd + &self.surd * &rhs.rat,
        )
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::new(-self.rat, -self.surd)
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.surd.is_zero()
    }
}

impl One for QuadExt {
    fn one() -> Self {
        QuadExt::new(Rational::one(), Rational::zero())
    }
}

impl Field for QuadExt {
    fn try_inv(&self) -> Result<Self, ScalarError> {
        let norm = self.norm();
        if norm.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let conj = self.conjugate();
        Ok(QuadExt::new(conj.rat / &norm, conj.surd / &norm))
    }

    fn from_i64(n: i64) -> Self {
        Rational::from_i64(n).into()
    }

    fn to_f64(&self) -> f64 {
        Field::to_f64(&self.rat) + Field::to_f64(&self.surd) * 5f64.sqrt()
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.surd.is_zero() {
            return write!(f, "{}", self.rat);
        }
        if !self.rat.is_zero() {
            write!(f, "{}", self.rat)?;
            if self.surd.is_positive() {
                f.write_str("+")?;
            }
        }
        if self.surd.is_one() {
            f.write_str("sqrt5")
        } else if (-self.surd.clone()).is_one() {
            f.write_str("-sqrt5")
        } else {
            write!(f, "{}*sqrt5", self.surd)
        }
    }
}

/// An exact scalar. A computation normally stays within one variant; a plain
/// rational meeting a `Q(sqrt5)` value is promoted, never the reverse.
#[derive(Debug, Clone)]
pub enum Scalar {
    Rational(Rational),
    Quad(QuadExt),
}

impl Scalar {
    pub fn ratio(numer: i64, denom: i64) -> Self {
        Scalar::Rational(ratio(numer, denom))
    }

    pub fn sqrt5() -> Self {
        Scalar::Quad(QuadExt::sqrt5())
    }

    /// `rat + surd * sqrt5`.
    pub fn quad(rat: Rational, surd: Rational) -> Self {
        Scalar::Quad(QuadExt::new(rat, surd))
    }

    pub fn is_quad(&self) -> bool {
        matches!(self, Scalar::Quad(_))
    }

    /// The value as a rational, if it has no `sqrt5` part.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Scalar::Rational(r) => Some(r.clone()),
            Scalar::Quad(q) if q.is_rational() => Some(q.rat.clone()),
            Scalar::Quad(_) => None,
        }
    }

    pub fn to_quad(&self) -> QuadExt {
        match self {
            Scalar::Rational(r) => r.clone().into(),
            Scalar::Quad(q) => q.clone(),
        }
    }

    /// Sign of the real number this scalar denotes.
    pub fn signum(&self) -> i32 {
        match self {
            Scalar::Rational(r) => sign_of(r),
            Scalar::Quad(q) => {
                // sign(a + b sqrt5): compare a^2 with 5 b^2 when signs differ.
                let sa = sign_of(&q.rat);
                let sb = sign_of(&q.surd);
                if sa == 0 || sa == sb {
                    return if sa == 0 { sb } else { sa };
                }
                if sb == 0 {
                    return sa;
                }
                let n = sign_of(&q.norm());
                if n > 0 {
                    sa
                } else {
                    sb
                }
            }
        }
    }

    fn binary(
        self,
        rhs: Scalar,
        rat: impl FnOnce(Rational, Rational) -> Rational,
        quad: impl FnOnce(QuadExt, QuadExt) -> QuadExt,
    ) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(rat(a, b)),
            (a, b) => Scalar::Quad(quad(a.to_quad(), b.to_quad())),
        }
    }
}

fn sign_of(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            (a, b) => a.to_quad() == b.to_quad(),
        }
    }
}

impl Eq for Scalar {}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rational(r)
    }
}

impl From<QuadExt> for Scalar {
    fn from(q: QuadExt) -> Self {
        Scalar::Quad(q)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::Rational(Rational::from_i64(n))
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.binary(rhs, |a, b| a + b, |a, b| a + b)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.binary(rhs, |a, b| a - b, |a, b| a - b)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.binary(rhs, |a, b| a * b, |a, b| a * b)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Quad(q) => Scalar::Quad(-q),
        }
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::Rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Quad(q) => q.is_zero(),
        }
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::Rational(Rational::one())
    }
}

impl Field for Scalar {
    fn try_inv(&self) -> Result<Self, ScalarError> {
        match self {
            Scalar::Rational(r) => r.try_inv().map(Scalar::Rational),
            Scalar::Quad(q) => q.try_inv().map(Scalar::Quad),
        }
    }

    fn from_i64(n: i64) -> Self {
        Scalar::from(n)
    }

    fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(r) => Field::to_f64(r),
            Scalar::Quad(q) => q.to_f64(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Quad(q) => write!(f, "{q}"),
        }
    }
}

/// Splits `s` at top-level `+`/`-` signs, keeping each sign with its term.
/// A sign directly after `*`, `/` or `(` belongs to the operand, not a new term.
pub(crate) fn split_terms(s: &str) -> Vec<&str> {
    let bytes = s.as_bytes();
    let mut terms = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (idx, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && idx > start => {
                let prev = bytes[idx - 1];
                if prev != b'*' && prev != b'/' && prev != b'(' {
                    terms.push(&s[start..idx]);
                    start = idx;
                }
            }
            _ => {}
        }
    }
    terms.push(&s[start..]);
    terms
}

fn parse_rational(s: &str) -> Option<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = |t: &str, signed: bool| {
        let body = if signed {
            t.strip_prefix(['+', '-']).unwrap_or(t)
        } else {
            t
        };
        !body.is_empty() && body.bytes().all(|c| c.is_ascii_digit())
    };
    if !digits(num, true) {
        return None;
    }
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = match den {
        Some(d) if digits(d, false) => d.parse().ok()?,
        Some(_) => return None,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

impl FromStr for Scalar {
    type Err = ScalarError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = || ScalarError::Parse(input.to_string());
        let mut s: &str = input.trim();
        if s.is_empty() || s.contains(char::is_whitespace) {
            return Err(err());
        }
        if s.starts_with('(') && s.ends_with(')') {
            s = &s[1..s.len() - 1];
        }
        let mut rat = Rational::zero();
        let mut surd = Rational::zero();
        let mut has_surd = false;
        for term in split_terms(s) {
            if let Some(coef) = term.strip_suffix("sqrt5") {
                has_surd = true;
                let coef = coef.strip_suffix('*').unwrap_or(coef);
                surd += match coef {
                    "" | "+" => Rational::one(),
                    "-" => -Rational::one(),
                    c => parse_rational(c).ok_or_else(err)?,
                };
            } else {
                rat += parse_rational(term).ok_or_else(err)?;
            }
        }
        Ok(if has_surd {
            Scalar::quad(rat, surd)
        } else {
            Scalar::Rational(rat)
        })
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ScalarVisitor;

        impl Visitor<'_> for ScalarVisitor {
            type Value = Scalar;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a scalar literal such as \"3/4\" or \"1/2+sqrt5\", or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Scalar, E> {
                v.parse().map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Scalar, E> {
                Ok(Scalar::from(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Scalar, E> {
                Ok(Scalar::Rational(Rational::from_integer(BigInt::from(v))))
            }
        }

        deserializer.deserialize_any(ScalarVisitor)
    }
}
