//! Outward-rounded interval arithmetic on dyadic big floats.
//!
//! A [`BigFloat`] is `mant * 2^exp` with an arbitrary-precision mantissa. Every
//! operation on [`BigFloatInterval`] computes exact endpoint candidates and then rounds
//! the lower endpoint down and the upper endpoint up to the working precision, so the
//! result always encloses the true real value.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::quad::{QuadExtElem, Rational};
use super::ExactError;

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Round {
    Down,
    Up,
}

/// Dyadic number `mant * 2^exp`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
}

impl BigFloat {
    pub fn zero() -> Self {
        Self { mant: BigInt::zero(), exp: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::normalized(BigInt::from(n), 0)
    }

    fn normalized(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Self::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            Self { mant: mant >> tz, exp: exp + tz as i64 }
        } else {
            Self { mant, exp }
        }
    }

    fn rounded(mant: BigInt, exp: i64, prec: u32, dir: Round) -> Self {
        let bits = mant.bits();
        if bits <= prec as u64 {
            return Self::normalized(mant, exp);
        }
        let shift = bits - prec as u64;
        let divisor = BigInt::one() << shift;
        let (mut q, r) = mant.div_mod_floor(&divisor);
        if dir == Round::Up && !r.is_zero() {
            q += 1;
        }
        Self::normalized(q, exp + shift as i64)
    }

    fn from_rational(q: &Rational, prec: u32, dir: Round) -> Self {
        let (num, den) = (q.numer(), q.denom());
        if num.is_zero() {
            return Self::zero();
        }
        // Scale so that the quotient carries at least `prec + 2` bits.
        let k = prec as i64 + 2 + den.bits() as i64 - num.bits() as i64;
        let (n, d) = if k >= 0 { (num << k as u64, den.clone()) } else { (num.clone(), den << (-k) as u64) };
        let (mut quo, rem) = n.div_mod_floor(&d);
        if dir == Round::Up && !rem.is_zero() {
            quo += 1;
        }
        Self::rounded(quo, -k, prec, dir)
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

    pub fn neg(&self) -> Self {
        Self { mant: -&self.mant, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        Self { mant: self.mant.abs(), exp: self.exp }
    }

    /// Exact sum.
    fn add_exact(&self, other: &Self) -> (BigInt, i64) {
        if self.is_zero() {
            return (other.mant.clone(), other.exp);
        }
        if other.is_zero() {
            return (self.mant.clone(), self.exp);
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        (a + b, e)
    }

    /// Exact difference, used for widths and comparisons.
    pub fn sub_exact(&self, other: &Self) -> Self {
        let (m, e) = self.add_exact(&other.neg());
        Self::normalized(m, e)
    }

    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as u64)
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let (m, e) = if bits > 64 {
            let s = bits - 64;
            (&self.mant >> s, self.exp + s as i64)
        } else {
            (self.mant.clone(), self.exp)
        };
        let mf = m.to_f64().unwrap_or(f64::NAN);
        mf * 2f64.powi(e.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }

    /// Decimal rendering with `digits` significant digits (truncated, not rounded).
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let r = self.to_rational();
        let neg = r.is_negative();
        let r = r.abs();
        // Find decimal exponent.
        let f = self.abs().to_f64();
        let mut e10 = if f.is_finite() && f > 0.0 { f.log10().floor() as i64 } else { 0 };
        let ten = BigInt::from(10);
        let scaled = |e: i64| -> Rational {
            let p = digits as i64 - 1 - e;
            if p >= 0 {
                &r * Rational::from_integer(ten.pow(p as u32))
            } else {
                &r / Rational::from_integer(ten.pow((-p) as u32))
            }
        };
        let mut s = scaled(e10).to_integer();
        let limit = ten.pow(digits as u32);
        if s >= limit {
            e10 += 1;
            s = scaled(e10).to_integer();
        } else if s < ten.pow(digits as u32 - 1) {
            e10 -= 1;
            s = scaled(e10).to_integer();
        }
        let ds = s.to_string();
        let (head, tail) = ds.split_at(1);
        format!("{}{}.{}e{}", if neg { "-" } else { "" }, head, tail, e10)
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sub_exact(other).signum().cmp(&0)
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(20))
    }
}

fn sqrt_rounded(x: &BigFloat, prec: u32, dir: Round) -> BigFloat {
    debug_assert!(x.signum() >= 0);
    if x.is_zero() {
        return BigFloat::zero();
    }
    let want = 2 * prec as u64 + 4;
    let mut s = want.saturating_sub(x.mant.bits()) as i64;
    if (x.exp - s).rem_euclid(2) != 0 {
        s += 1;
    }
    let m = &x.mant << s as u64;
    let mut r = m.sqrt();
    if dir == Round::Up && &r * &r != m {
        r += 1;
    }
    BigFloat::rounded(r, (x.exp - s) / 2, prec, dir)
}

fn div_rounded(a: &BigFloat, b: &BigFloat, prec: u32, dir: Round) -> BigFloat {
    assert!(!b.is_zero());
    if a.is_zero() {
        return BigFloat::zero();
    }
    let k = (prec as i64 + 2 + b.mant.bits() as i64 - a.mant.bits() as i64).max(0);
    let n = &a.mant << k as u64;
    let (mut q, r) = n.div_mod_floor(&b.mant);
    if dir == Round::Up && !r.is_zero() {
        q += 1;
    }
    BigFloat::rounded(q, a.exp - b.exp - k, prec, dir)
}

/// Closed interval `[lo, hi]` with dyadic endpoints, rounded outward at `precision` bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigFloatInterval {
    lo: BigFloat,
    hi: BigFloat,
    precision: u32,
}

impl BigFloatInterval {
    /// Degenerate interval at an integer.
    pub fn from_int(n: i64, precision: u32) -> Self {
        let x = BigFloat::from_int(n);
        Self { lo: x.clone(), hi: x, precision }
    }

    pub fn zero(precision: u32) -> Self {
        Self::from_int(0, precision)
    }

    pub fn one(precision: u32) -> Self {
        Self::from_int(1, precision)
    }

    pub fn from_rational(q: &Rational, precision: u32) -> Self {
        Self {
            lo: BigFloat::from_rational(q, precision, Round::Down),
            hi: BigFloat::from_rational(q, precision, Round::Up),
            precision,
        }
    }

    /// Enclosure of `a + b sqrt d`.
    pub fn from_quad(x: &QuadExtElem, precision: u32) -> Self {
        let a = Self::from_rational(x.a(), precision);
        if x.b().is_zero() {
            return a;
        }
        let root = Self::from_int(x.d() as i64, precision).sqrt().expect("d > 0");
        a.add(&Self::from_rational(x.b(), precision).mul(&root))
    }

    pub fn from_bounds(lo: BigFloat, hi: BigFloat, precision: u32) -> Result<Self, ExactError> {
        if lo > hi {
            return Err(ExactError::InvertedInterval);
        }
        Ok(Self { lo, hi, precision })
    }

    pub fn lo(&self) -> &BigFloat {
        &self.lo
    }

    pub fn hi(&self) -> &BigFloat {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn with_precision(&self, precision: u32) -> Self {
        Self {
            lo: BigFloat::rounded(self.lo.mant.clone(), self.lo.exp, precision, Round::Down),
            hi: BigFloat::rounded(self.hi.mant.clone(), self.hi.exp, precision, Round::Up),
            precision,
        }
    }

    pub fn width(&self) -> BigFloat {
        self.hi.sub_exact(&self.lo)
    }

    pub fn width_f64(&self) -> f64 {
        self.width().to_f64()
    }

    pub fn mid_f64(&self) -> f64 {
        (self.lo.to_f64() + self.hi.to_f64()) / 2.0
    }

    /// Largest absolute value of any point of the interval.
    pub fn mag(&self) -> BigFloat {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        self.lo.to_rational() <= *q && *q <= self.hi.to_rational()
    }

    /// Exact containment test for a quadratic irrational.
    pub fn contains_quad(&self, x: &QuadExtElem) -> bool {
        let f = x.field();
        let lo = f.rational(self.lo.to_rational());
        let hi = f.rational(self.hi.to_rational());
        (x - &lo).sign() >= 0 && (&hi - x).sign() >= 0
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// `self` lies inside `other`.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Smallest distance between points of the two intervals (zero when they meet).
    pub fn gap(&self, other: &Self) -> BigFloat {
        if self.intersects(other) {
            BigFloat::zero()
        } else if self.hi < other.lo {
            other.lo.sub_exact(&self.hi)
        } else {
            self.lo.sub_exact(&other.hi)
        }
    }

    fn prec_with(&self, other: &Self) -> u32 {
        self.precision.max(other.precision)
    }

    pub fn neg(&self) -> Self {
        Self { lo: self.hi.neg(), hi: self.lo.neg(), precision: self.precision }
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.prec_with(other);
        let (lm, le) = self.lo.add_exact(&other.lo);
        let (hm, he) = self.hi.add_exact(&other.hi);
        Self { lo: BigFloat::rounded(lm, le, p, Round::Down), hi: BigFloat::rounded(hm, he, p, Round::Up), precision: p }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.prec_with(other);
        let prods = [
            (&self.lo.mant * &other.lo.mant, self.lo.exp + other.lo.exp),
            (&self.lo.mant * &other.hi.mant, self.lo.exp + other.hi.exp),
            (&self.hi.mant * &other.lo.mant, self.hi.exp + other.lo.exp),
            (&self.hi.mant * &other.hi.mant, self.hi.exp + other.hi.exp),
        ];
        let as_bf: Vec<BigFloat> = prods.iter().map(|(m, e)| BigFloat { mant: m.clone(), exp: *e }).collect();
        let lo = as_bf.iter().min().unwrap();
        let hi = as_bf.iter().max().unwrap();
        Self {
            lo: BigFloat::rounded(lo.mant.clone(), lo.exp, p, Round::Down),
            hi: BigFloat::rounded(hi.mant.clone(), hi.exp, p, Round::Up),
            precision: p,
        }
    }

    pub fn square(&self) -> Self {
        let m = self.mul(self);
        if self.contains_zero() {
            Self { lo: BigFloat::zero(), hi: m.hi, precision: m.precision }
        } else {
            m
        }
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.mul(&Self::from_rational(q, self.precision))
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        if self.contains_zero() {
            return Err(ExactError::DivisionByZeroInterval);
        }
        let one = BigFloat::from_int(1);
        let p = self.precision;
        Ok(Self {
            lo: div_rounded(&one, &self.hi, p, Round::Down),
            hi: div_rounded(&one, &self.lo, p, Round::Up),
            precision: p,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self, ExactError> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn sqrt(&self) -> Result<Self, ExactError> {
        if self.lo.signum() < 0 {
            return Err(ExactError::NegativeSqrt);
        }
        let p = self.precision;
        Ok(Self { lo: sqrt_rounded(&self.lo, p, Round::Down), hi: sqrt_rounded(&self.hi, p, Round::Up), precision: p })
    }

    /// Widen symmetrically by `r >= 0`.
    fn widen(&self, r: &BigFloat) -> Self {
        let p = self.precision;
        let (lm, le) = self.lo.add_exact(&r.neg());
        let (hm, he) = self.hi.add_exact(r);
        Self { lo: BigFloat::rounded(lm, le, p, Round::Down), hi: BigFloat::rounded(hm, he, p, Round::Up), precision: p }
    }

    /// Enclosure of pi via Machin's formula.
    pub fn pi(precision: u32) -> Self {
        let work = precision + 16;
        let (s5, t5) = atan_inv_series(5, work);
        let (s239, t239) = atan_inv_series(239, work);
        let center = &s5 * Rational::from_integer(16.into()) - &s239 * Rational::from_integer(4.into());
        let radius = &t5 * Rational::from_integer(16.into()) + &t239 * Rational::from_integer(4.into());
        let lo = BigFloat::from_rational(&(&center - &radius), precision, Round::Down);
        let hi = BigFloat::from_rational(&(&center + &radius), precision, Round::Up);
        Self { lo, hi, precision }
    }

    /// Enclosure of `cos` over the interval, by Taylor series plus a Lagrange remainder bound.
    pub fn cos(&self) -> Self {
        self.taylor_trig(0)
    }

    /// Enclosure of `sin` over the interval.
    pub fn sin(&self) -> Self {
        self.taylor_trig(1)
    }

    fn taylor_trig(&self, start: u32) -> Self {
        let p = self.precision;
        let work = p + 32;
        let x = self.with_precision(work);
        let x2 = x.square();
        let mag = self.mag().to_rational();
        let mut term = if start == 0 { Self::one(work) } else { x.clone() };
        let mut sum = term.clone();
        let mut k = start;
        let cutoff = Rational::new(BigInt::one(), BigInt::one() << (work as u64 + 4));
        loop {
            // term_{k+2} = -term_k * x^2 / ((k+1)(k+2))
            let denom = Rational::from_integer(BigInt::from((k + 1) as u64 * (k + 2) as u64));
            term = term.mul(&x2).scale_rational(&(Rational::one() / denom)).neg();
            sum = sum.add(&term);
            k += 2;
            // Remainder after the degree-k term is bounded by |x|^(k+2)/(k+2)! (|derivatives| <= 1).
            let bound = pow_over_factorial(&mag, k + 2);
            if bound < cutoff {
                let r = BigFloat::from_rational(&bound, work, Round::Up);
                let out = sum.widen(&r).with_precision(p);
                // sin and cos never leave [-1, 1].
                return out.clamp_unit();
            }
        }
    }

    fn clamp_unit(self) -> Self {
        let one = BigFloat::from_int(1);
        let m_one = BigFloat::from_int(-1);
        let lo = if self.lo < m_one { m_one } else { self.lo };
        let hi = if self.hi > one { one } else { self.hi };
        Self { lo, hi, precision: self.precision }
    }
}

fn pow_over_factorial(x: &Rational, n: u32) -> Rational {
    let mut r = Rational::one();
    for i in 1..=n {
        r = r * x / Rational::from_integer(i.into());
    }
    r
}

/// Partial sum of the alternating series for `atan(1/n)` together with the first
/// omitted term, which bounds the truncation error.
fn atan_inv_series(n: i64, prec: u32) -> (Rational, Rational) {
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let cutoff = Rational::new(BigInt::one(), BigInt::one() << (prec as u64 + 4));
    let mut sum = Rational::zero();
    let mut power = n.clone();
    let mut k: i64 = 0;
    loop {
        let term = Rational::new(BigInt::one(), &power * BigInt::from(2 * k + 1));
        if term < cutoff {
            return (sum, term);
        }
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power *= &n2;
        k += 1;
    }
}

impl fmt::Display for BigFloatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo.to_decimal(24), self.hi.to_decimal(24))
    }
}

/// Decimal endpoints for JSON export.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntervalJson {
    pub lo: String,
    pub hi: String,
}

impl From<&BigFloatInterval> for IntervalJson {
    fn from(x: &BigFloatInterval) -> Self {
        IntervalJson { lo: x.lo.to_decimal(40), hi: x.hi.to_decimal(40) }
    }
}

/// Dense square matrix of intervals.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalMatrix {
    n: usize,
    entries: Vec<BigFloatInterval>,
}

impl IntervalMatrix {
    pub fn identity(n: usize, precision: u32) -> Self {
        let mut entries = vec![BigFloatInterval::zero(precision); n * n];
        for i in 0..n {
            entries[i * n + i] = BigFloatInterval::one(precision);
        }
        Self { n, entries }
    }

    pub fn from_entries(n: usize, entries: Vec<BigFloatInterval>) -> Self {
        assert_eq!(entries.len(), n * n);
        Self { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigFloatInterval {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigFloatInterval) {
        self.entries[i * self.n + j] = x;
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        assert_eq!(n, other.n);
        let p = self.entries[0].precision;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigFloatInterval::zero(p);
                for k in 0..n {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
                }
                out.push(acc);
            }
        }
        Self { n, entries: out }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.get(j, i).clone());
            }
        }
        Self { n, entries }
    }

    pub fn apply(&self, v: &[BigFloatInterval]) -> Vec<BigFloatInterval> {
        let p = self.entries[0].precision;
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(BigFloatInterval::zero(p), |acc, k| acc.add(&self.get(i, k).mul(&v[k])))
            })
            .collect()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity(self.n, self.entries[0].precision);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Every entry encloses the matching entry of the identity.
    pub fn encloses_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(idx, x)| {
            let target = if idx / self.n == idx % self.n { 1 } else { 0 };
            x.contains_rational(&Rational::from_integer(target.into()))
        })
    }

    /// Every entry of `self` meets the matching entry of `other`.
    pub fn overlaps(&self, other: &Self) -> bool {
        self.entries.iter().zip(&other.entries).all(|(a, b)| a.intersects(b))
    }

    pub fn max_width(&self) -> f64 {
        self.entries.iter().map(|x| x.width_f64()).fold(0.0, f64::max)
    }

    pub fn midpoints(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j).mid_f64()).collect()).collect()
    }

    pub fn to_json(&self) -> Vec<Vec<IntervalJson>> {
        (0..self.n).map(|i| (0..self.n).map(|j| IntervalJson::from(self.get(i, j))).collect()).collect()
    }
}

/// Minkowski product `sum_{i<n-1} x_i y_i - x_{n-1} y_{n-1}`.
pub fn minkowski_dot(x: &[BigFloatInterval], y: &[BigFloatInterval]) -> BigFloatInterval {
    let n = x.len();
    assert_eq!(n, y.len());
    let p = x[0].precision;
    let mut acc = BigFloatInterval::zero(p);
    for i in 0..n - 1 {
        acc = acc.add(&x[i].mul(&y[i]));
    }
    acc.sub(&x[n - 1].mul(&y[n - 1]))
}

/// Matrix of the Lorentzian reflection `x -> x - 2 <u, x> u` for a unit space-like `u`.
pub fn lorentz_reflection(u: &[BigFloatInterval]) -> IntervalMatrix {
    let n = u.len();
    let p = u[0].precision;
    let two = BigFloatInterval::from_int(2, p);
    let mut m = IntervalMatrix::identity(n, p);
    for i in 0..n {
        for j in 0..n {
            // <u, e_j> = u_j for spatial j and -u_j for the time coordinate.
            let uj = if j == n - 1 { u[j].neg() } else { u[j].clone() };
            let e = m.get(i, j).sub(&two.mul(&u[i]).mul(&uj));
            m.set(i, j, e);
        }
    }
    m
}

/// The form `J = diag(1, ..., 1, -1)` is preserved: `M^T J M` encloses `J`.
pub fn preserves_minkowski(m: &IntervalMatrix) -> bool {
    let n = m.dim();
    for i in 0..n {
        for j in 0..n {
            let col_i: Vec<_> = (0..n).map(|k| m.get(k, i).clone()).collect();
            let col_j: Vec<_> = (0..n).map(|k| m.get(k, j).clone()).collect();
            let v = minkowski_dot(&col_i, &col_j);
            let target = if i != j {
                0
            } else if i == n - 1 {
                -1
            } else {
                1
            };
            if !v.contains_rational(&Rational::from_integer(target.into())) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::quad::{rat, QuadField};

    #[test]
    fn sqrt_two_enclosure() {
        let s = BigFloatInterval::from_int(2, 128).sqrt().unwrap();
        assert!(s.width_f64() < 1e-36);
        assert!((s.mid_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
        let sq = s.square();
        assert!(sq.contains_rational(&rat(2, 1)));
    }

    #[test]
    fn pi_enclosure() {
        let pi = BigFloatInterval::pi(256);
        assert!(pi.width_f64() < 1e-70);
        assert!((pi.mid_f64() - std::f64::consts::PI).abs() < 1e-15);
        // 333/106 < pi < 355/113
        assert!(pi.lo().to_rational() > rat(333, 106));
        assert!(pi.hi().to_rational() < rat(355, 113));
    }

    #[test]
    fn trig_pythagoras() {
        let x = BigFloatInterval::pi(200).scale_rational(&rat(2, 21));
        let c = x.cos();
        let s = x.sin();
        let one = c.square().add(&s.square());
        assert!(one.contains_rational(&rat(1, 1)));
        assert!(one.width_f64() < 1e-55);
        assert!((c.mid_f64() - (2.0 * std::f64::consts::PI / 21.0).cos()).abs() < 1e-15);
    }

    #[test]
    fn cos_of_pi_over_three() {
        let c = BigFloatInterval::pi(256).scale_rational(&rat(1, 3)).cos();
        assert!(c.contains_rational(&rat(1, 2)));
    }

    #[test]
    fn division_and_reciprocal() {
        let third = BigFloatInterval::one(128).div(&BigFloatInterval::from_int(3, 128)).unwrap();
        assert!(third.contains_rational(&rat(1, 3)));
        assert!(BigFloatInterval::zero(64).recip().is_err());
        let neg = BigFloatInterval::from_int(-7, 64).recip().unwrap();
        assert!(neg.contains_rational(&rat(-1, 7)));
    }

    #[test]
    fn quad_enclosures_nest_under_refinement() {
        let f = QuadField::new(21).unwrap();
        let u = f.frac(27, 7, 50);
        let mut prev: Option<BigFloatInterval> = None;
        for p in [64, 128, 256, 512] {
            let e = BigFloatInterval::from_quad(&u, p);
            assert!(e.contains_quad(&u));
            if let Some(q) = &prev {
                assert!(e.is_subset_of(q), "precision {p} enclosure escapes coarser one");
                assert!(e.width() <= q.width());
            }
            prev = Some(e);
        }
    }

    #[test]
    fn contains_quad_is_exact() {
        let f = QuadField::new(5).unwrap();
        let phi = f.frac(1, 1, 2);
        let e = BigFloatInterval::from_quad(&phi, 128);
        assert!(e.contains_quad(&phi));
        assert!(!e.contains_quad(&(&phi + &f.frac(0, 0, 1).clone() + f.elem(rat(1, 1i64 << 40), rat(0, 1)))));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(BigFloat::from_int(1234).to_decimal(4), "1.234e3");
        assert_eq!(BigFloat::from_int(-5).to_decimal(3), "-5.00e0");
    }

    #[test]
    fn reflection_is_involution() {
        let p = 128;
        // u = (sqrt 2, 0, 1): <u, u> = 2 - 1 = 1
        let u = vec![
            BigFloatInterval::from_int(2, p).sqrt().unwrap(),
            BigFloatInterval::zero(p),
            BigFloatInterval::one(p),
        ];
        assert!(minkowski_dot(&u, &u).contains_rational(&rat(1, 1)));
        let r = lorentz_reflection(&u);
        assert!(r.mul(&r).encloses_identity());
        assert!(preserves_minkowski(&r));
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn arithmetic_encloses_exact_rationals(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let x = rat(a, b);
            let y = rat(c, d);
            let ix = BigFloatInterval::from_rational(&x, 80);
            let iy = BigFloatInterval::from_rational(&y, 80);
            prop_assert!(ix.add(&iy).contains_rational(&(&x + &y)));
            prop_assert!(ix.sub(&iy).contains_rational(&(&x - &y)));
            prop_assert!(ix.mul(&iy).contains_rational(&(&x * &y)));
            if c != 0 {
                prop_assert!(ix.div(&iy).unwrap().contains_rational(&(&x / &y)));
            }
        }
    }
}
