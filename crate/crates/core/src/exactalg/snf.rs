//! Smith normal form over the integers.
//!
//! The divisor-only routine runs on checked `i64` arithmetic and restarts on `BigInt`
//! if any intermediate value would overflow, so results never depend on machine width.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

trait SnfInt: Clone + PartialEq + Sized {
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn abs_cmp(&self, other: &Self) -> Ordering;
    fn is_neg(&self) -> bool;
    fn negated(&self) -> Option<Self>;
    /// `self - q * x`
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self>;
    /// Quotient rounded toward the nearest integer (remainder of least magnitude).
    fn div_near(&self, d: &Self) -> Self;
    fn divides(&self, x: &Self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl SnfInt for i64 {
    fn unit() -> Self {
        1
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn negated(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*x)?)
    }
    fn div_near(&self, d: &Self) -> Self {
        let (q, r) = self.div_mod_floor(d);
        // floor remainder shares the sign of d; stepping q up moves it toward zero
        if r.unsigned_abs().saturating_mul(2) > d.unsigned_abs() {
            q + 1
        } else {
            q
        }
    }
    fn divides(&self, x: &Self) -> bool {
        x % self == 0
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl SnfInt for BigInt {
    fn unit() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.abs().cmp(&other.abs())
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn negated(&self) -> Option<Self> {
        Some(-self)
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        Some(self - q * x)
    }
    fn div_near(&self, d: &Self) -> Self {
        let (q, r) = self.div_mod_floor(d);
        if r.abs() * 2 > d.abs() {
            q + 1
        } else {
            q
        }
    }
    fn divides(&self, x: &Self) -> bool {
        (x % self).is_zero()
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Transformation bookkeeping: either nothing or the full unimodular factors.
struct Tracker {
    left: Option<Vec<Vec<BigInt>>>,
    right: Option<Vec<Vec<BigInt>>>,
}

impl Tracker {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if let Some(u) = &mut self.left {
            u.swap(a, b);
        }
    }
    fn swap_cols(&mut self, a: usize, b: usize) {
        if let Some(v) = &mut self.right {
            for row in v.iter_mut() {
                row.swap(a, b);
            }
        }
    }
    /// row_dst -= q row_src
    fn row_op(&mut self, dst: usize, src: usize, q: &BigInt) {
        if let Some(u) = &mut self.left {
            let s = u[src].clone();
            for (x, y) in u[dst].iter_mut().zip(&s) {
                *x -= q * y;
            }
        }
    }
    /// col_dst -= q col_src
    fn col_op(&mut self, dst: usize, src: usize, q: &BigInt) {
        if let Some(v) = &mut self.right {
            for row in v.iter_mut() {
                let s = row[src].clone();
                row[dst] -= q * s;
            }
        }
    }
    fn negate_row(&mut self, r: usize) {
        if let Some(u) = &mut self.left {
            for x in u[r].iter_mut() {
                *x = -x.clone();
            }
        }
    }
}

fn snf_core<T: SnfInt>(a: &mut [Vec<T>], n_cols: usize, tr: &mut Tracker) -> Option<Vec<T>> {
    let n_rows = a.len();
    let mut divisors = Vec::new();
    let mut t = 0;
    while t < n_rows.min(n_cols) {
        // Pivot: entry of least magnitude in the trailing block, preferring units.
        let mut best: Option<(usize, usize)> = None;
        'scan: for i in t..n_rows {
            for j in t..n_cols {
                if a[i][j].is_nil() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => a[i][j].abs_cmp(&a[bi][bj]) == Ordering::Less,
                };
                if better {
                    best = Some((i, j));
                    if a[i][j].is_unit() {
                        break 'scan;
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        tr.swap_rows(t, pi);
        if pj != t {
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            tr.swap_cols(t, pj);
        }

        loop {
            let mut dirty = false;
            // Clear column t.
            for i in t + 1..n_rows {
                if a[i][t].is_nil() {
                    continue;
                }
                let q = a[i][t].div_near(&a[t][t]);
                let (head, tail) = a.split_at_mut(i);
                let pivot_row = &head[t];
                let row = &mut tail[0];
                for j in t..n_cols {
                    if !pivot_row[j].is_nil() {
                        row[j] = row[j].sub_mul(&q, &pivot_row[j])?;
                    }
                }
                tr.row_op(i, t, &q.to_big());
                if !a[i][t].is_nil() {
                    dirty = true;
                }
            }
            // Clear row t.
            for j in t + 1..n_cols {
                if a[t][j].is_nil() {
                    continue;
                }
                let q = a[t][j].div_near(&a[t][t]);
                for row in a.iter_mut() {
                    if !row[t].is_nil() {
                        row[j] = row[j].sub_mul(&q, &row[t])?;
                    }
                }
                tr.col_op(j, t, &q.to_big());
                if !a[t][j].is_nil() {
                    dirty = true;
                }
            }
            if dirty {
                // A remainder survived: move the smallest entry of row/column t to the pivot.
                let mut best = (t, t);
                for i in t + 1..n_rows {
                    if !a[i][t].is_nil() && a[i][t].abs_cmp(&a[best.0][best.1]) == Ordering::Less {
                        best = (i, t);
                    }
                }
                for j in t + 1..n_cols {
                    if !a[t][j].is_nil() && a[t][j].abs_cmp(&a[best.0][best.1]) == Ordering::Less {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap(t, best.0);
                    tr.swap_rows(t, best.0);
                } else if best.1 != t {
                    for row in a.iter_mut() {
                        row.swap(t, best.1);
                    }
                    tr.swap_cols(t, best.1);
                }
                continue;
            }
            // Divisibility of the trailing block by the pivot.
            if !a[t][t].is_unit() {
                let bad = (t + 1..n_rows).find(|&i| (t + 1..n_cols).any(|j| !a[t][t].divides(&a[i][j])));
                if let Some(i) = bad {
                    // row_t += row_i, then iterate again.
                    let minus_one = T::unit().negated()?;
                    let (head, tail) = a.split_at_mut(i);
                    for j in t..n_cols {
                        head[t][j] = head[t][j].sub_mul(&minus_one, &tail[0][j])?;
                    }
                    tr.row_op(t, i, &BigInt::from(-1));
                    continue;
                }
            }
            break;
        }
        if a[t][t].is_neg() {
            a[t][t] = a[t][t].negated()?;
            tr.negate_row(t);
        }
        divisors.push(a[t][t].clone());
        t += 1;
    }
    Some(divisors)
}

/// Nonzero elementary divisors `d_1 | d_2 | ...` of an integer matrix, in order.
pub fn smith_normal_form(m: &[Vec<i64>]) -> Vec<BigInt> {
    let n_cols = m.first().map_or(0, |r| r.len());
    let mut small: Vec<Vec<i64>> = m.to_vec();
    let mut tr = Tracker { left: None, right: None };
    if let Some(d) = snf_core(&mut small, n_cols, &mut tr) {
        return d.into_iter().map(BigInt::from).collect();
    }
    let mut big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    snf_core(&mut big, n_cols, &mut tr).expect("BigInt arithmetic cannot overflow")
}

/// Full decomposition `U M V = D` with unimodular `U`, `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub left: Vec<Vec<BigInt>>,
    pub diagonal: Vec<Vec<BigInt>>,
    pub right: Vec<Vec<BigInt>>,
    pub divisors: Vec<BigInt>,
}

pub fn smith_decomposition(m: &[Vec<BigInt>]) -> SmithDecomposition {
    let n_rows = m.len();
    let n_cols = m.first().map_or(0, |r| r.len());
    let ident = |n: usize| -> Vec<Vec<BigInt>> {
        (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
    };
    let mut a = m.to_vec();
    let mut tr = Tracker { left: Some(ident(n_rows)), right: Some(ident(n_cols)) };
    let divisors = snf_core(&mut a, n_cols, &mut tr).expect("BigInt arithmetic cannot overflow");
    SmithDecomposition { left: tr.left.unwrap(), diagonal: a, right: tr.right.unwrap(), divisors }
}

pub fn int_matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Integer determinant by fraction-free (Bareiss) elimination.
pub fn int_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}
