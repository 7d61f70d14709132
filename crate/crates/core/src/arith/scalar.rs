use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::quad::{is_square_free, QuadExt};
use super::{ArithError, Rational};

/// The scalar field a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Quadratic(u64),
}

impl Field {
    /// The smallest field containing both, if one exists.
    pub fn join(self, other: Field) -> Result<Field, ArithError> {
        match (self, other) {
            (Field::Rational, f) | (f, Field::Rational) => Ok(f),
            (Field::Quadratic(a), Field::Quadratic(b)) if a == b => Ok(self),
            (Field::Quadratic(a), Field::Quadratic(b)) => Err(ArithError::FieldMismatch(a, b)),
        }
    }

    pub fn tag(self) -> String {
        match self {
            Field::Rational => "rational".to_string(),
            Field::Quadratic(d) => format!("quad:{d}"),
        }
    }

    pub fn parse_tag(s: &str) -> Result<Field, ArithError> {
        if s == "rational" {
            return Ok(Field::Rational);
        }
        let d = s
            .strip_prefix("quad:")
            .and_then(|d| d.parse::<u64>().ok())
            .ok_or_else(|| ArithError::Parse(s.to_string()))?;
        if !is_square_free(d) {
            return Err(ArithError::BadRadicand(d));
        }
        Ok(Field::Quadratic(d))
    }
}

/// An exact real number: a rational, or an irrational element of ℚ(√D).
///
/// Quadratic values with a zero irrational part are always stored as
/// rationals, so derived equality and hashing agree with real equality.
/// The ordering is the ordering of the real embedding; comparing values
/// from two different quadratic fields panics (use [`ExactScalar::compare`]
/// for the fallible form).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExactScalar {
    Rational(Rational),
    Quad(QuadExt),
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        ExactScalar::Rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        ExactScalar::Rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        ExactScalar::Rational(Rational::from_integer(n))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        ExactScalar::Rational(Rational::new(p.into(), q.into()))
    }

    /// `a + b·√D`, normalized to a rational when `b = 0`.
    pub fn quad(a: Rational, b: Rational, radicand: u64) -> Result<Self, ArithError> {
        Ok(Self::from_quad(QuadExt::new(a, b, radicand)?))
    }

    pub(crate) fn from_quad(q: QuadExt) -> Self {
        if q.irrational_part().is_zero() {
            ExactScalar::Rational(q.rational_part().clone())
        } else {
            ExactScalar::Quad(q)
        }
    }

    /// The golden ratio (1+√5)/2.
    pub fn golden_ratio() -> Self {
        let half = Rational::new(1.into(), 2.into());
        Self::from_quad(QuadExt::new_unchecked(half.clone(), half, 5))
    }

    pub fn field(&self) -> Field {
        match self {
            ExactScalar::Rational(_) => Field::Rational,
            ExactScalar::Quad(q) => Field::Quadratic(q.radicand()),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            ExactScalar::Rational(r) => Some(r),
            ExactScalar::Quad(_) => None,
        }
    }

    pub fn as_integer(&self) -> Option<&BigInt> {
        match self {
            ExactScalar::Rational(r) if r.is_integer() => Some(r.numer()),
            _ => None,
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.as_integer().and_then(|n| n.to_i64())
    }

    pub fn is_integer(&self) -> bool {
        self.as_integer().is_some()
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExactScalar::Rational(r) if r.is_zero())
    }

    pub fn signum(&self) -> Ordering {
        match self {
            ExactScalar::Rational(r) => r.cmp(&Rational::zero()),
            ExactScalar::Quad(q) => q.signum(),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact comparison of the represented reals.
    pub fn compare(&self, other: &Self) -> Result<Ordering, ArithError> {
        self.field().join(other.field())?;
        match (self, other) {
            (ExactScalar::Rational(a), ExactScalar::Rational(b)) => Ok(a.cmp(b)),
            _ => Ok(self.checked_sub(other)?.signum()),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        self.field().join(other.field())?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.field().join(other.field())?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithError> {
        self.field().join(other.field())?;
        let inv = other.recip().ok_or(ArithError::DivisionByZero)?;
        Ok(self.mul_unchecked(&inv))
    }

    pub fn recip(&self) -> Option<Self> {
        match self {
            ExactScalar::Rational(r) if r.is_zero() => None,
            ExactScalar::Rational(r) => Some(ExactScalar::Rational(r.recip())),
            ExactScalar::Quad(q) => q.recip().map(Self::from_quad),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        match self {
            ExactScalar::Rational(r) => r.floor().to_integer(),
            ExactScalar::Quad(q) => {
                // |a + b√D| ≤ |a| + |b|·D, so bisect on integers in that range.
                let bound = q.rational_part().abs().ceil().to_integer()
                    + q.irrational_part().abs().ceil().to_integer() * BigInt::from(q.radicand())
                    + BigInt::one();
                let mut lo = -bound.clone(); // lo ≤ x
                let mut hi = bound; // hi > x
                while &hi - &lo > BigInt::one() {
                    let mid: BigInt = (&lo + &hi) >> 1;
                    if Self::from_bigint(mid.clone()) <= *self {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                lo
            }
        }
    }

    /// Smallest integer not below the value.
    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        use ExactScalar::*;
        match (self, other) {
            (Rational(a), Rational(b)) => Rational(a + b),
            (Quad(q), Rational(r)) | (Rational(r), Quad(q)) => Self::from_quad(q.add_rational(r)),
            (Quad(a), Quad(b)) => {
                assert_eq!(a.radicand(), b.radicand(), "mixed quadratic fields");
                Self::from_quad(a.add(b))
            }
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        use ExactScalar::*;
        match (self, other) {
            (Rational(a), Rational(b)) => Rational(a * b),
            (Quad(q), Rational(r)) | (Rational(r), Quad(q)) => Self::from_quad(q.scale(r)),
            (Quad(a), Quad(b)) => {
                assert_eq!(a.radicand(), b.radicand(), "mixed quadratic fields");
                Self::from_quad(a.mul(b))
            }
        }
    }
}

#[allow(clippy::non_canonical_partial_ord_impl)]
impl PartialOrd for ExactScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.compare(other).ok()
    }
}

impl Ord for ExactScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other).expect("comparison across different quadratic fields")
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for ExactScalar {
    fn from(r: Rational) -> Self {
        ExactScalar::Rational(r)
    }
}

impl From<BigInt> for ExactScalar {
    fn from(n: BigInt) -> Self {
        Self::from_bigint(n)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        match self {
            ExactScalar::Rational(r) => ExactScalar::Rational(-r.clone()),
            ExactScalar::Quad(q) => ExactScalar::Quad(q.neg()),
        }
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

// Operators panic on mixed quadratic fields; callers validate fields at
// construction boundaries (points, lattices) and use the `checked_*` forms
// on untrusted input.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                let f: fn(&ExactScalar, &ExactScalar) -> ExactScalar = $body;
                f(self, rhs)
            }
        }
        impl $trait<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_unchecked(b));
forward_binop!(Sub, sub, |a, b| a.add_unchecked(&-b));
forward_binop!(Mul, mul, |a, b| a.mul_unchecked(b));
forward_binop!(Div, div, |a, b| {
    let inv = b.recip().expect("division by zero");
    a.mul_unchecked(&inv)
});

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Rational(r) => write!(f, "{r}"),
            ExactScalar::Quad(q) => write!(f, "{q}"),
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational, ArithError> {
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    if s.is_empty() {
        return Err(ArithError::Parse(s.to_string()));
    }
    match s.split_once('/') {
        None => BigInt::from_str(s)
            .map(Rational::from_integer)
            .map_err(|_| ArithError::Parse(s.to_string())),
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| ArithError::Parse(s.to_string()))?;
            let q = BigInt::from_str(q.trim()).map_err(|_| ArithError::Parse(s.to_string()))?;
            if q.is_zero() {
                return Err(ArithError::DivisionByZero);
            }
            Ok(Rational::new(p, q))
        }
    }
}

impl FromStr for ExactScalar {
    type Err = ArithError;

    /// Accepts `p`, `p/q`, and `a+c*sqrt(D)` / `a-c*sqrt(D)` where `a` and
    /// `c` are rationals; the rational part and the coefficient may be
    /// omitted (`sqrt(5)`, `1/2*sqrt(5)`, `1+sqrt(2)`).
    fn from_str(s: &str) -> Result<Self, ArithError> {
        let s = s.trim();
        let Some(pos) = s.find("sqrt(") else {
            return parse_rational(s).map(ExactScalar::Rational);
        };
        let bad = || ArithError::Parse(s.to_string());
        let inner = s[pos + 5..].strip_suffix(')').ok_or_else(bad)?;
        let radicand: u64 = inner.trim().parse().map_err(|_| bad())?;
        let prefix = s[..pos].trim_end();

        let (a, c) = if let Some(expr) = prefix.strip_suffix('*') {
            let expr = expr.trim();
            let split = expr
                .char_indices()
                .rev()
                .find(|&(i, ch)| i > 0 && (ch == '+' || ch == '-'))
                .map(|(i, _)| i);
            match split {
                Some(i) => (parse_rational(&expr[..i])?, parse_rational(&expr[i..])?),
                None => (Rational::zero(), parse_rational(expr)?),
            }
        } else if prefix.is_empty() {
            (Rational::zero(), Rational::one())
        } else if prefix == "-" {
            (Rational::zero(), -Rational::one())
        } else if let Some(a) = prefix.strip_suffix('+') {
            (parse_rational(a)?, Rational::one())
        } else if let Some(a) = prefix.strip_suffix('-') {
            (parse_rational(a)?, -Rational::one())
        } else {
            return Err(bad());
        };
        ExactScalar::quad(a, c, radicand)
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct Visitor;
        impl de::Visitor<'_> for Visitor {
            type Value = ExactScalar;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a scalar string such as \"3/2\" or \"1/2+1/2*sqrt(5)\", or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExactScalar, E> {
                v.parse().map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExactScalar, E> {
                Ok(ExactScalar::from_int(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExactScalar, E> {
                Ok(ExactScalar::from_bigint(BigInt::from(v)))
            }
        }
        deserializer.deserialize_any(Visitor)
    }
}
