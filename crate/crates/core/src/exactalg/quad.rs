//! Exact elements of real quadratic fields `Q(sqrt d)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ExactError;

/// Exact rational scalar.
pub type Rational = BigRational;

/// Shorthand for building a rational from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// A real quadratic field `Q(sqrt d)`, `d >= 2` square-free.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadField {
    d: u64,
}

impl QuadField {
    pub fn new(d: u64) -> Result<Self, ExactError> {
        if d < 2 || !is_square_free(d) {
            return Err(ExactError::NotSquareFree(d));
        }
        Ok(Self { d })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn elem(&self, a: Rational, b: Rational) -> QuadExtElem {
        QuadExtElem { d: self.d, a, b }
    }

    pub fn rational(&self, a: Rational) -> QuadExtElem {
        self.elem(a, Rational::zero())
    }

    pub fn int(&self, n: i64) -> QuadExtElem {
        self.rational(Rational::from_integer(n.into()))
    }

    pub fn zero(&self) -> QuadExtElem {
        self.int(0)
    }

    pub fn one(&self) -> QuadExtElem {
        self.int(1)
    }

    /// The generator `sqrt d`.
    pub fn sqrt_d(&self) -> QuadExtElem {
        self.elem(Rational::zero(), Rational::one())
    }

    /// `(a + b sqrt d) / den` from machine integers.
    pub fn frac(&self, a: i64, b: i64, den: i64) -> QuadExtElem {
        self.elem(rat(a, den), rat(b, den))
    }
}

fn is_square_free(d: u64) -> bool {
    let mut p = 2u64;
    while p * p <= d {
        if d % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// `a + b sqrt d` with rational `a`, `b`. Equality is structural on `(d, a, b)`,
/// which coincides with numeric equality because `sqrt d` is irrational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExtElem {
    d: u64,
    a: Rational,
    b: Rational,
}

impl QuadExtElem {
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn field(&self) -> QuadField {
        QuadField { d: self.d }
    }

    /// Rational part.
    pub fn a(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of `sqrt d`.
    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a - b sqrt d`.
    pub fn conjugate(&self) -> Self {
        Self { d: self.d, a: self.a.clone(), b: -&self.b }
    }

    /// Field norm `a^2 - d b^2`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(self.d.into())
    }

    /// Field trace `2a`.
    pub fn trace(&self) -> Rational {
        &self.a * Rational::from_integer(2.into())
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Self { d: self.d, a: &self.a / &n, b: -&self.b / &n })
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Scale by a rational.
    pub fn scale(&self, q: &Rational) -> Self {
        Self { d: self.d, a: &self.a * q, b: &self.b * q }
    }

    /// Sign of the real number `a + b sqrt d`.
    pub fn sign(&self) -> i32 {
        quad_sign(self)
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.a) + rational_to_f64(&self.b) * (self.d as f64).sqrt()
    }

    fn check_field(&self, other: &Self) {
        assert_eq!(self.d, other.d, "mixed quadratic fields Q(sqrt {}) and Q(sqrt {})", self.d, other.d);
    }
}

/// Sign of `a + b sqrt d` by case analysis on the signs of `a`, `b` and a comparison of
/// `a^2` against `d b^2`.
pub fn quad_sign(x: &QuadExtElem) -> i32 {
    let sa = rational_sign(&x.a);
    let sb = rational_sign(&x.b);
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    let a2 = &x.a * &x.a;
    let b2d = &x.b * &x.b * Rational::from_integer(x.d.into());
    match a2.cmp(&b2d) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => unreachable!("sqrt {} is irrational", x.d),
    }
}

pub(crate) fn rational_sign(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

pub(crate) fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or_else(|| {
        // Huge numerator and denominator: scale both down first.
        let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
        let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl PartialOrd for QuadExtElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Numeric order on the real line.
impl Ord for QuadExtElem {
    fn cmp(&self, other: &Self) -> Ordering {
        quad_sign(&(self - other)).cmp(&0)
    }
}

impl fmt::Display for QuadExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "({})*sqrt({})", self.b, self.d)
        } else {
            write!(f, "{} + ({})*sqrt({})", self.a, self.b, self.d)
        }
    }
}

/// Serialized as an exact `(a, b, d)` triple with rationals rendered as `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadTriple {
    pub a: String,
    pub b: String,
    pub d: u64,
}

impl From<&QuadExtElem> for QuadTriple {
    fn from(x: &QuadExtElem) -> Self {
        QuadTriple { a: x.a.to_string(), b: x.b.to_string(), d: x.d }
    }
}

impl TryFrom<&QuadTriple> for QuadExtElem {
    type Error = ExactError;

    fn try_from(t: &QuadTriple) -> Result<Self, Self::Error> {
        let field = QuadField::new(t.d)?;
        let parse = |s: &str| s.parse::<Rational>().map_err(|_| ExactError::Parse(s.to_string()));
        Ok(field.elem(parse(&t.a)?, parse(&t.b)?))
    }
}

impl Serialize for QuadExtElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QuadTriple::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadExtElem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let t = QuadTriple::deserialize(d)?;
        QuadExtElem::try_from(&t).map_err(serde::de::Error::custom)
    }
}

impl<'a> Add<&'a QuadExtElem> for &'a QuadExtElem {
    type Output = QuadExtElem;
    fn add(self, rhs: &QuadExtElem) -> QuadExtElem {
        self.check_field(rhs);
        QuadExtElem { d: self.d, a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl<'a> Sub<&'a QuadExtElem> for &'a QuadExtElem {
    type Output = QuadExtElem;
    fn sub(self, rhs: &QuadExtElem) -> QuadExtElem {
        self.check_field(rhs);
        QuadExtElem { d: self.d, a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl<'a> Mul<&'a QuadExtElem> for &'a QuadExtElem {
    type Output = QuadExtElem;
    fn mul(self, rhs: &QuadExtElem) -> QuadExtElem {
        self.check_field(rhs);
        let d = Rational::from_integer(self.d.into());
        QuadExtElem {
            d: self.d,
            a: &self.a * &rhs.a + &self.b * &rhs.b * d,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl<'a> Div<&'a QuadExtElem> for &'a QuadExtElem {
    type Output = QuadExtElem;
    fn div(self, rhs: &QuadExtElem) -> QuadExtElem {
        self * &rhs.inverse().expect("division by zero in quadratic field")
    }
}

impl Neg for &QuadExtElem {
    type Output = QuadExtElem;
    fn neg(self) -> QuadExtElem {
        QuadExtElem { d: self.d, a: -&self.a, b: -&self.b }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QuadExtElem> for QuadExtElem {
            type Output = QuadExtElem;
            fn $m(self, rhs: QuadExtElem) -> QuadExtElem {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a QuadExtElem> for QuadExtElem {
            type Output = QuadExtElem;
            fn $m(self, rhs: &QuadExtElem) -> QuadExtElem {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<QuadExtElem> for &'a QuadExtElem {
            type Output = QuadExtElem;
            fn $m(self, rhs: QuadExtElem) -> QuadExtElem {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for QuadExtElem {
    type Output = QuadExtElem;
    fn neg(self) -> QuadExtElem {
        -&self
    }
}
