//! Minimal polynomials of quadratic irrationals.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::quad::{QuadExtElem, Rational};

/// Monic polynomial over `Q`, coefficients from the constant term upward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalPolynomial {
    pub coeffs: Vec<Rational>,
    pub is_algebraic_integer: bool,
}

impl MinimalPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Exact evaluation at an element of the same quadratic field.
    pub fn eval(&self, x: &QuadExtElem) -> QuadExtElem {
        let f = x.field();
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| &(&acc * x) + &f.rational(c.clone()))
    }

    /// Floating-point roots (for a degree-2 polynomial, both real roots).
    pub fn roots_f64(&self) -> Vec<f64> {
        use super::quad::rational_to_f64;
        match self.degree() {
            1 => vec![-rational_to_f64(&self.coeffs[0])],
            2 => {
                let b = rational_to_f64(&self.coeffs[1]);
                let c = rational_to_f64(&self.coeffs[0]);
                let disc = (b * b - 4.0 * c).sqrt();
                vec![(-b - disc) / 2.0, (-b + disc) / 2.0]
            }
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for MinimalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{k}"),
            };
            let mag = if c < &Rational::zero() { -c.clone() } else { c.clone() };
            let sign = if c < &Rational::zero() { "-" } else { "+" };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag.is_one() && k > 0 {
                write!(f, "{mono}")?;
            } else if k > 0 {
                write!(f, "({mag}){mono}")?;
            } else {
                write!(f, "{mag}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl Serialize for MinimalPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("MinimalPolynomial", 3)?;
        st.serialize_field("text", &self.to_string())?;
        st.serialize_field("coeffs", &self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())?;
        st.serialize_field("is_algebraic_integer", &self.is_algebraic_integer)?;
        st.end()
    }
}

/// `X - a` when `b = 0`, otherwise `X^2 - 2a X + (a^2 - b^2 d)`.
pub fn minimal_polynomial(x: &QuadExtElem) -> MinimalPolynomial {
    let coeffs = if x.is_rational() {
        vec![-x.a().clone(), Rational::one()]
    } else {
        vec![x.norm(), -x.trace(), Rational::one()]
    };
    let is_algebraic_integer = coeffs.iter().all(|c| c.is_integer());
    MinimalPolynomial { coeffs, is_algebraic_integer }
}
