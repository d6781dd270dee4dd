//! Symmetric matrices over a quadratic field and their exact inertia.

use serde::{Deserialize, Serialize};

use super::quad::{QuadExtElem, QuadField, QuadTriple};
use super::ExactError;

/// Symmetric `n x n` matrix with entries in a single field `Q(sqrt d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix {
    n: usize,
    field: QuadField,
    entries: Vec<QuadExtElem>,
}

impl SymMatrix {
    /// Builds the matrix from a generator that is only queried for `i <= j`.
    pub fn from_fn(n: usize, field: QuadField, mut f: impl FnMut(usize, usize) -> QuadExtElem) -> Self {
        let mut entries = vec![field.zero(); n * n];
        for i in 0..n {
            for j in i..n {
                let x = f(i, j);
                assert_eq!(x.d(), field.d(), "entry ({i}, {j}) lives in the wrong field");
                entries[i * n + j] = x.clone();
                entries[j * n + i] = x;
            }
        }
        Self { n, field, entries }
    }

    pub fn from_rows(field: QuadField, rows: Vec<Vec<QuadExtElem>>) -> Result<Self, ExactError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(ExactError::Shape(format!("row {i} has length {} in a {n}x{n} matrix", row.len())));
            }
            for (j, x) in row.iter().enumerate() {
                if x.d() != field.d() {
                    return Err(ExactError::FieldMismatch(x.d(), field.d()));
                }
                if *x != rows[j][i] {
                    return Err(ExactError::NotSymmetric(i, j));
                }
                entries.push(x.clone());
            }
        }
        Ok(Self { n, field, entries })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &QuadExtElem {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<QuadExtElem>> {
        (0..self.n).map(|i| self.entries[i * self.n..(i + 1) * self.n].to_vec()).collect()
    }

    /// Principal submatrix on the given (ordered) index set.
    pub fn principal(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), self.field, |a, b| self.get(idx[a], idx[b]).clone())
    }

    /// `P M P^T` for a square `P` over the same field.
    pub fn congruent(&self, p: &[Vec<QuadExtElem>]) -> Self {
        let n = self.n;
        let zero = self.field.zero();
        let mut pm = vec![vec![zero.clone(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if p[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    pm[i][j] = &pm[i][j] + &(&p[i][k] * self.get(k, j));
                }
            }
        }
        Self::from_fn(n, self.field, |i, j| {
            let mut acc = zero.clone();
            for k in 0..n {
                if !p[j][k].is_zero() {
                    acc = &acc + &(&pm[i][k] * &p[j][k]);
                }
            }
            acc
        })
    }

    pub fn to_json(&self) -> Vec<Vec<QuadTriple>> {
        self.rows().iter().map(|r| r.iter().map(QuadTriple::from).collect()).collect()
    }
}

/// Serialized as rows of exact `(a, b, d)` triples.
impl Serialize for SymMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// One elimination step of the congruence diagonalization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Pivot {
    /// A nonzero diagonal pivot; contributes its sign.
    Diagonal(QuadExtElem),
    /// A `[[0, b], [b, 0]]` block; contributes one positive and one negative square.
    HyperbolicPair(QuadExtElem),
}

/// Inertia `(n_plus, n_minus, n_zero)` together with the pivots that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureCert {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
    pub pivots: Vec<Pivot>,
}

impl SignatureCert {
    pub fn triple(&self) -> (usize, usize, usize) {
        (self.n_plus, self.n_minus, self.n_zero)
    }

    pub fn rank(&self) -> usize {
        self.n_plus + self.n_minus
    }

    /// Recounts `(n_plus, n_minus)` from the stored pivots.
    pub fn replay(&self) -> (usize, usize) {
        let mut plus = 0;
        let mut minus = 0;
        for p in &self.pivots {
            match p {
                Pivot::Diagonal(x) => match x.sign() {
                    1 => plus += 1,
                    -1 => minus += 1,
                    _ => {}
                },
                Pivot::HyperbolicPair(b) => {
                    if !b.is_zero() {
                        plus += 1;
                        minus += 1;
                    }
                }
            }
        }
        (plus, minus)
    }

    pub fn is_consistent(&self, n: usize) -> bool {
        self.replay() == (self.n_plus, self.n_minus) && self.n_plus + self.n_minus + self.n_zero == n
    }
}

/// Exact inertia by symmetric Gaussian elimination (simultaneous row and column operations).
///
/// Diagonal pivots are taken in index order. When the remaining diagonal vanishes but an
/// off-diagonal entry does not, the 2x2 block `[[0, b], [b, 0]]` is eliminated as a unit.
pub fn signature(m: &SymMatrix) -> SignatureCert {
    let n = m.n;
    let mut a: Vec<Vec<QuadExtElem>> = m.rows();
    let mut active: Vec<usize> = (0..n).collect();
    let mut pivots = Vec::new();
    let (mut plus, mut minus) = (0usize, 0usize);

    loop {
        if active.is_empty() {
            break;
        }
        if let Some(pos) = active.iter().position(|&i| !a[i][i].is_zero()) {
            let i = active.remove(pos);
            let p = a[i][i].clone();
            let p_inv = p.inverse().unwrap();
            for &j in &active {
                if a[j][i].is_zero() {
                    continue;
                }
                let f = &a[j][i] * &p_inv;
                for &k in &active {
                    if !a[i][k].is_zero() {
                        a[j][k] = &a[j][k] - &(&f * &a[i][k]);
                    }
                }
            }
            if p.sign() > 0 {
                plus += 1;
            } else {
                minus += 1;
            }
            pivots.push(Pivot::Diagonal(p));
            continue;
        }
        let pair = active
            .iter()
            .enumerate()
            .find_map(|(x, &i)| active[x + 1..].iter().find(|&&j| !a[i][j].is_zero()).map(|&j| (i, j)));
        let Some((i, j)) = pair else { break };
        active.retain(|&k| k != i && k != j);
        let b = a[i][j].clone();
        let b_inv = b.inverse().unwrap();
        // Schur complement of the block: a_kl -= (a_ki a_jl + a_kj a_il) / b
        let ri = a[i].clone();
        let rj = a[j].clone();
        for &k in &active {
            if ri[k].is_zero() && rj[k].is_zero() {
                continue;
            }
            for &l in &active {
                let t = &(&ri[k] * &rj[l]) + &(&rj[k] * &ri[l]);
                if !t.is_zero() {
                    a[k][l] = &a[k][l] - &(&t * &b_inv);
                }
            }
        }
        plus += 1;
        minus += 1;
        pivots.push(Pivot::HyperbolicPair(b));
    }

    SignatureCert { n_plus: plus, n_minus: minus, n_zero: n - plus - minus, pivots }
}

/// Rank of an arbitrary (not necessarily square) matrix by plain Gaussian elimination.
pub fn exact_rank(rows: &[Vec<QuadExtElem>]) -> usize {
    let mut a: Vec<Vec<QuadExtElem>> = rows.to_vec();
    let n_rows = a.len();
    if n_rows == 0 {
        return 0;
    }
    let n_cols = a[0].len();
    let mut rank = 0;
    for col in 0..n_cols {
        let Some(pr) = (rank..n_rows).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(rank, pr);
        let inv = a[rank][col].inverse().unwrap();
        for r in rank + 1..n_rows {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..n_cols {
                if !a[rank][c].is_zero() {
                    a[r][c] = &a[r][c] - &(&f * &a[rank][c]);
                }
            }
        }
        rank += 1;
        if rank == n_rows {
            break;
        }
    }
    rank
}
