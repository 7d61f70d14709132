use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ArithError, Rational};

/// An element `a + b·√D` of the real quadratic field ℚ(√D).
///
/// `D` is a square-free integer ≥ 2 and is carried by every value; two
/// values only combine when their radicands agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    radicand: u64,
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, radicand: u64) -> Result<Self, ArithError> {
        if !is_square_free(radicand) {
            return Err(ArithError::BadRadicand(radicand));
        }
        Ok(Self { a, b, radicand })
    }

    pub(crate) fn new_unchecked(a: Rational, b: Rational, radicand: u64) -> Self {
        Self { a, b, radicand }
    }

    /// `√D` itself.
    pub fn sqrt(radicand: u64) -> Result<Self, ArithError> {
        Self::new(Rational::zero(), Rational::one(), radicand)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn conjugate(&self) -> Self {
        Self::new_unchecked(self.a.clone(), -self.b.clone(), self.radicand)
    }

    /// Field norm `a² − D·b²`, i.e. `x · conj(x)`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - self.d() * &self.b * &self.b
    }

    fn d(&self) -> Rational {
        Rational::from_integer(BigInt::from(self.radicand))
    }

    /// Exact sign, decided from the signs of `a`, `b` and a comparison of
    /// `a²` with `D·b²`.
    pub fn signum(&self) -> Ordering {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        match (sa, sb) {
            (s, Ordering::Equal) => s,
            (Ordering::Equal, s) => s,
            (x, y) if x == y => x,
            (sa, sb) => {
                let a2 = &self.a * &self.a;
                let db2 = self.d() * &self.b * &self.b;
                match a2.cmp(&db2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub(crate) fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.radicand, other.radicand);
        Self::new_unchecked(&self.a + &other.a, &self.b + &other.b, self.radicand)
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.radicand, other.radicand);
        let a = &self.a * &other.a + self.d() * &self.b * &other.b;
        let b = &self.a * &other.b + &self.b * &other.a;
        Self::new_unchecked(a, b, self.radicand)
    }

    pub(crate) fn scale(&self, r: &Rational) -> Self {
        Self::new_unchecked(&self.a * r, &self.b * r, self.radicand)
    }

    pub(crate) fn add_rational(&self, r: &Rational) -> Self {
        Self::new_unchecked(&self.a + r, self.b.clone(), self.radicand)
    }

    /// Multiplicative inverse via the conjugate; `None` for zero.
    pub(crate) fn recip(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(Self::new_unchecked(&self.a / &n, -&self.b / &n, self.radicand))
    }

    pub(crate) fn neg(&self) -> Self {
        Self::new_unchecked(-self.a.clone(), -self.b.clone(), self.radicand)
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{}-{}*sqrt({})", self.a, -self.b.clone(), self.radicand)
        } else {
            write!(f, "{}+{}*sqrt({})", self.a, self.b, self.radicand)
        }
    }
}

fn sign_of(r: &Rational) -> Ordering {
    if r.is_positive() {
        Ordering::Greater
    } else if r.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

pub fn is_square_free(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> QuadExt {
        QuadExt::new(Rational::from_integer(a.into()), Rational::from_integer(b.into()), 5).unwrap()
    }

    #[test]
    fn radicand_must_be_square_free() {
        assert!(QuadExt::sqrt(5).is_ok());
        assert!(QuadExt::sqrt(6).is_ok());
        assert_eq!(QuadExt::sqrt(12), Err(ArithError::BadRadicand(12)));
        assert_eq!(QuadExt::sqrt(1), Err(ArithError::BadRadicand(1)));
    }

    #[test]
    fn mixed_sign_cases() {
        // 3 - sqrt(5) > 0, 2 - sqrt(5) < 0, -3 + sqrt(5) < 0
        assert_eq!(q(3, -1).signum(), Ordering::Greater);
        assert_eq!(q(2, -1).signum(), Ordering::Less);
        assert_eq!(q(-3, 1).signum(), Ordering::Less);
        assert_eq!(q(-2, 1).signum(), Ordering::Greater);
        assert_eq!(q(0, 0).signum(), Ordering::Equal);
    }

    #[test]
    fn norm_is_product_with_conjugate() {
        let x = q(7, -3);
        let p = x.mul(&x.conjugate());
        assert!(p.irrational_part().is_zero());
        assert_eq!(p.rational_part(), &x.norm());
    }
}
