//! Orbits of the reflection groups in the hyperboloid model and their directions on the
//! boundary sphere.
//!
//! Words are enumerated in ShortLex normal form for the right-angled Coxeter group, so
//! every group element is visited once. Orbit points are tracked for inverse words: the
//! point of `u = g_1 ... g_n` is `g_n ... g_1 x`, which only needs the previous point and
//! one reflection per step. Since each generator is an involution, `u -> u^{-1}` is a
//! bijection of the ball of radius `n`, so the orbit points are the same set.

use std::collections::HashSet;

use serde::Serialize;

use crate::scomplex::Graph;

mod export;
mod groups;

pub use export::{
    csv_bytes, export, metadata_json, ply_bytes, png_bytes, ExportFormat, ExportOptions, ExportSummary, RunMetadata,
};
pub use groups::{gamma4_group, gamma6_group, group_by_name};

pub const DEFAULT_DEDUP_EPS: f64 = 1e-7;
pub const DRIFT_BOUND: f64 = 1e-6;
/// Orbit enumeration stops with an error beyond this many stored points.
pub const DEFAULT_MAX_POINTS: usize = 20_000_000;

#[derive(Debug, thiserror::Error)]
pub enum LimitSetError {
    #[error("basepoint is not on the upper hyperboloid (<x, x> + 1 = {0:e})")]
    OffHyperboloid(f64),
    #[error("Minkowski drift {found:e} exceeds {bound:e}; precision too low for this depth")]
    Drift { found: f64, bound: f64 },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("more than {0} orbit points; increase the dedup tolerance or lower the depth")]
    TooManyPoints(usize),
    #[error("group construction failed: {0}")]
    Construction(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// `<x, y> = x_1 y_1 + ... + x_d y_d - x_{d+1} y_{d+1}`
pub fn minkowski(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len();
    x[..n - 1].iter().zip(&y[..n - 1]).map(|(a, b)| a * b).sum::<f64>() - x[n - 1] * y[n - 1]
}

/// Relative drift `|<x, x> + 1| / x_{d+1}^2` of a hyperboloid point.
pub fn point_drift(x: &[f64]) -> f64 {
    let t = x[x.len() - 1];
    (minkowski(x, x) + 1.0).abs() / (t * t)
}

/// Group element with a float matrix and its ShortLex word.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroupElem {
    pub n: usize,
    /// Row-major `n x n`.
    pub matrix: Vec<f64>,
    pub word: Vec<usize>,
}

impl GroupElem {
    pub fn identity(n: usize) -> Self {
        let mut matrix = vec![0.0; n * n];
        for i in 0..n {
            matrix[i * n + i] = 1.0;
        }
        Self { n, matrix, word: Vec::new() }
    }

    pub fn from_rows(rows: &[Vec<f64>], word: Vec<usize>) -> Self {
        let n = rows.len();
        Self { n, matrix: rows.iter().flatten().copied().collect(), word }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.matrix[i * self.n + j]
    }

    pub fn mat_mul(&self, other: &Self) -> Vec<f64> {
        mat_mul(self.n, &self.matrix, &other.matrix)
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j) * x[j]).sum()).collect()
    }

    /// `max |M^T J M - J| / max(1, max |M_ij|^2)`
    pub fn drift(&self) -> f64 {
        let n = self.n;
        let mut worst = 0f64;
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for k in 0..n {
                    let sign = if k == n - 1 { -1.0 } else { 1.0 };
                    s += sign * self.get(k, i) * self.get(k, j);
                }
                let target = if i != j { 0.0 } else if i == n - 1 { -1.0 } else { 1.0 };
                worst = worst.max((s - target).abs());
            }
        }
        let m = self.matrix.iter().fold(1f64, |a, x| a.max(x.abs()));
        worst / (m * m)
    }
}

fn mat_mul(n: usize, a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut c = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            for j in 0..n {
                c[i * n + j] += x * b[k * n + j];
            }
        }
    }
    c
}

/// Reflection generators in `O(d, 1)` with the commutation graph of the nerve.
#[derive(Clone, Debug)]
pub struct ReflectionGroup {
    pub name: String,
    pub generators: Vec<GroupElem>,
    /// Nerve vertex of each generator.
    pub labels: Vec<usize>,
    commute: Vec<Vec<bool>>,
}

impl ReflectionGroup {
    /// Generator `i` commutes with `j` when `{i, j}` is an edge of `nerve`.
    pub fn new(name: &str, generators: Vec<GroupElem>, labels: Vec<usize>, nerve: &Graph) -> Result<Self, LimitSetError> {
        let r = generators.len();
        if r == 0 || nerve.n() != r || labels.len() != r {
            return Err(LimitSetError::Argument(format!("{r} generators, nerve on {} vertices", nerve.n())));
        }
        let n = generators[0].n;
        if n < 2 || generators.iter().any(|g| g.n != n) {
            return Err(LimitSetError::Argument("generators differ in size".into()));
        }
        let commute = (0..r).map(|i| (0..r).map(|j| nerve.has_edge(i, j)).collect()).collect();
        Ok(Self { name: name.into(), generators, labels, commute })
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Size `d + 1` of the matrices.
    pub fn matrix_size(&self) -> usize {
        self.generators[0].n
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.commute[a][b]
    }

    /// Whether `word g` is in ShortLex normal form, given that `word` is. Scanning back
    /// over letters commuting with `g`: meeting `g` means `g` cancels, meeting a larger
    /// letter means `g` could move left to give a smaller word.
    pub fn can_extend(&self, word: &[usize], g: usize) -> bool {
        for &l in word.iter().rev() {
            if l == g {
                return false;
            }
            if !self.commute[l][g] {
                return true;
            }
            if l > g {
                return false;
            }
        }
        true
    }

    /// ShortLex normal form of an arbitrary word: cancel `g u g` with `u` commuting with
    /// `g`, then take the least ordering of the remaining letters compatible with the
    /// order of non-commuting pairs.
    pub fn normal_form(&self, word: &[usize]) -> Vec<usize> {
        let mut w = word.to_vec();
        'cancel: loop {
            for j in 0..w.len() {
                for i in (0..j).rev() {
                    if w[i] == w[j] {
                        w.remove(j);
                        w.remove(i);
                        continue 'cancel;
                    }
                    if !self.commute[w[i]][w[j]] {
                        break;
                    }
                }
            }
            break;
        }
        let mut out = Vec::with_capacity(w.len());
        while !w.is_empty() {
            let pick = (0..w.len())
                .filter(|&j| (0..j).all(|i| self.commute[w[i]][w[j]]))
                .min_by_key(|&j| w[j])
                .expect("the first letter is always available");
            out.push(w.remove(pick));
        }
        out
    }

    /// Element with the normal form of `word` as its word and the product of the
    /// generators in `word` as its matrix.
    pub fn element(&self, word: &[usize]) -> GroupElem {
        let n = self.matrix_size();
        let matrix = word.iter().fold(GroupElem::identity(n).matrix, |m, &g| mat_mul(n, &m, &self.generators[g].matrix));
        GroupElem { n, matrix, word: self.normal_form(word) }
    }

    /// `m * m'` with the reduced concatenated word.
    pub fn product(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        let word: Vec<usize> = a.word.iter().chain(&b.word).copied().collect();
        GroupElem { n: a.n, matrix: a.mat_mul(b), word: self.normal_form(&word) }
    }

    /// Number of ShortLex words of each length `0..=depth`.
    pub fn shortlex_counts(&self, depth: usize) -> Vec<u64> {
        let mut counts = vec![0u64; depth + 1];
        let mut word = Vec::with_capacity(depth);
        self.count_from(&mut word, depth, &mut counts);
        counts
    }

    fn count_from(&self, word: &mut Vec<usize>, depth: usize, counts: &mut [u64]) {
        counts[word.len()] += 1;
        if word.len() == depth {
            return;
        }
        for g in 0..self.rank() {
            if self.can_extend(word, g) {
                word.push(g);
                self.count_from(word, depth, counts);
                word.pop();
            }
        }
    }

    pub fn max_generator_drift(&self) -> f64 {
        self.generators.iter().map(GroupElem::drift).fold(0.0, f64::max)
    }
}

/// `(sinh r) v + (cosh r) e_{d+1}` for the unit vector `v` along `(1, 2, ..., d)` and
/// `r = 0.01`: close to the origin of the hyperboloid but off every mirror, with a
/// well-defined boundary direction.
pub fn default_basepoint(matrix_size: usize) -> Vec<f64> {
    let d = matrix_size - 1;
    let norm = ((1..=d).map(|i| (i * i) as f64).sum::<f64>()).sqrt();
    let r: f64 = 0.01;
    let mut x: Vec<f64> = (1..=d).map(|i| r.sinh() * i as f64 / norm).collect();
    x.push(r.cosh());
    x
}

/// Direction of the spatial part of `x`, i.e. of `x / x_{d+1}` in the Klein ball.
pub fn boundary_direction(x: &[f64]) -> Vec<f64> {
    let s = &x[..x.len() - 1];
    let norm = s.iter().map(|a| a * a).sum::<f64>().sqrt();
    s.iter().map(|a| a / norm).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CloudMetadata {
    pub group: String,
    pub max_len: usize,
    pub dedup_eps: f64,
    pub basepoint: Vec<f64>,
    /// ShortLex words generated at each length (pruned ones included).
    pub words_per_length: Vec<u64>,
    /// Points kept at each length.
    pub points_per_length: Vec<u64>,
    /// Words whose direction fell into an occupied cell; these are not extended.
    pub pruned: u64,
    pub count: usize,
    pub max_point_drift: f64,
    pub max_generator_drift: f64,
}

/// Unit vectors on `S^{d-1}`, sorted lexicographically, with the word length of the
/// orbit point each one came from.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointCloud {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
    pub word_length: Vec<u32>,
    pub metadata: CloudMetadata,
}

impl PointCloud {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn max_norm_error(&self) -> f64 {
        self.points.iter().map(|p| (p.iter().map(|a| a * a).sum::<f64>().sqrt() - 1.0).abs()).fold(0.0, f64::max)
    }
}

fn cell(dir: &[f64], eps: f64) -> Vec<i64> {
    dir.iter().map(|a| (a / eps).floor() as i64).collect()
}

pub fn orbit_bfs(group: &ReflectionGroup, basepoint: &[f64], max_len: usize, dedup_eps: f64) -> Result<PointCloud, LimitSetError> {
    orbit_bfs_limited(group, basepoint, max_len, dedup_eps, DEFAULT_MAX_POINTS)
}

/// Breadth-first orbit enumeration over ShortLex words up to `max_len`. A word whose
/// boundary direction falls into an already occupied cell of side `dedup_eps` is dropped
/// and not extended.
pub fn orbit_bfs_limited(
    group: &ReflectionGroup,
    basepoint: &[f64],
    max_len: usize,
    dedup_eps: f64,
    max_points: usize,
) -> Result<PointCloud, LimitSetError> {
    let n = group.matrix_size();
    if basepoint.len() != n {
        return Err(LimitSetError::Argument(format!("basepoint has {} coordinates, expected {n}", basepoint.len())));
    }
    if !(dedup_eps > 0.0 && dedup_eps.is_finite()) {
        return Err(LimitSetError::Argument(format!("dedup_eps must be positive, got {dedup_eps}")));
    }
    let off = minkowski(basepoint, basepoint) + 1.0;
    if basepoint[n - 1] <= 0.0 || off.abs() > 1e-9 {
        return Err(LimitSetError::OffHyperboloid(off));
    }
    if basepoint[..n - 1].iter().all(|&a| a == 0.0) {
        return Err(LimitSetError::Argument("basepoint has no boundary direction".into()));
    }
    let gen_drift = group.max_generator_drift();
    if gen_drift > DRIFT_BOUND {
        return Err(LimitSetError::Drift { found: gen_drift, bound: DRIFT_BOUND });
    }

    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut points = Vec::new();
    let mut lengths = Vec::new();
    let mut words_per_length = vec![1u64];
    let mut points_per_length = vec![1u64];
    let mut pruned = 0u64;
    let mut max_drift = point_drift(basepoint);

    let dir = boundary_direction(basepoint);
    seen.insert(cell(&dir, dedup_eps));
    points.push(dir);
    lengths.push(0u32);
    let mut frontier: Vec<(Vec<usize>, Vec<f64>)> = vec![(Vec::new(), basepoint.to_vec())];

    for len in 1..=max_len {
        let mut next = Vec::new();
        let mut words = 0u64;
        for (word, x) in &frontier {
            for g in 0..group.rank() {
                if !group.can_extend(word, g) {
                    continue;
                }
                words += 1;
                let y = group.generators[g].apply(x);
                max_drift = max_drift.max(point_drift(&y));
                let dir = boundary_direction(&y);
                if !seen.insert(cell(&dir, dedup_eps)) {
                    pruned += 1;
                    continue;
                }
                if points.len() >= max_points {
                    return Err(LimitSetError::TooManyPoints(max_points));
                }
                points.push(dir);
                lengths.push(len as u32);
                let mut w = word.clone();
                w.push(g);
                next.push((w, y));
            }
        }
        if max_drift > DRIFT_BOUND {
            return Err(LimitSetError::Drift { found: max_drift, bound: DRIFT_BOUND });
        }
        words_per_length.push(words);
        points_per_length.push(next.len() as u64);
        frontier = next;
    }

    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        points[a].iter().zip(&points[b]).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
    });
    let count = points.len();
    Ok(PointCloud {
        dim: n - 1,
        points: order.iter().map(|&i| points[i].clone()).collect(),
        word_length: order.iter().map(|&i| lengths[i]).collect(),
        metadata: CloudMetadata {
            group: group.name.clone(),
            max_len,
            dedup_eps,
            basepoint: basepoint.to_vec(),
            words_per_length,
            points_per_length,
            pruned,
            count,
            max_point_drift: max_drift,
            max_generator_drift: gen_drift,
        },
    })
}

/// Number of distinct group elements of each length `0..=depth`, by multiplying every
/// element of length `k - 1` by every generator and deduplicating the matrices. A product
/// of length `k - 1` and a generator has length `k` or `k - 2`, so new elements are those
/// not already found at length `k - 2`. Two matrices `a`, `b` are identified when
/// `a^{-1} b = J a^T J b` is within `1e-6` of the identity.
pub fn brute_force_counts(group: &ReflectionGroup, depth: usize) -> Vec<u64> {
    let n = group.matrix_size();
    let nn = n * n;
    let id = GroupElem::identity(n).matrix;
    let mut counts = vec![1u64];
    let mut prev2: Vec<f64> = Vec::new();
    let mut prev: Vec<f64> = id;
    for _ in 1..=depth {
        let mut cand = Vec::with_capacity(prev.len() / nn * group.rank() * nn);
        for m in prev.chunks(nn) {
            for g in &group.generators {
                cand.extend(mat_mul(n, m, &g.matrix));
            }
        }
        let fresh = dedup_matrices(n, &cand, &prev2);
        counts.push((fresh.len() / nn) as u64);
        prev2 = std::mem::replace(&mut prev, fresh);
    }
    counts
}

/// Distinct matrices of `cand` (first occurrence in sorted order) that do not occur in
/// `exclude`.
fn dedup_matrices(n: usize, cand: &[f64], exclude: &[f64]) -> Vec<f64> {
    let nn = n * n;
    let nc = cand.len() / nn;
    let all: Vec<&[f64]> = cand.chunks(nn).chain(exclude.chunks(nn)).collect();
    // a generic linear functional separates distinct matrices; roundoff in it is
    // relative to the size of the entries
    let weights: Vec<f64> = (0..nn).map(|k| ((k + 1) as f64 * 0.754_877_666_246_692_7).fract() + 0.1).collect();
    let keys: Vec<f64> = all.iter().map(|m| m.iter().zip(&weights).map(|(a, w)| a * w).sum()).collect();
    let mags: Vec<f64> = all.iter().map(|m| m.iter().fold(1f64, |a, x| a.max(x.abs()))).collect();
    let mut order: Vec<usize> = (0..all.len()).collect();
    order.sort_by(|&a, &b| keys[a].total_cmp(&keys[b]).then(a.cmp(&b)));
    let same = |a: &[f64], b: &[f64]| -> bool {
        (0..n).all(|i| {
            (0..n).all(|j| {
                let s: f64 = (0..n)
                    .map(|k| {
                        let sign = if (i == n - 1) != (k == n - 1) { -1.0 } else { 1.0 };
                        sign * a[k * n + i] * b[k * n + j]
                    })
                    .sum();
                (s - if i == j { 1.0 } else { 0.0 }).abs() < 1e-6
            })
        })
    };
    let mut dup = vec![false; all.len()];
    for (p, &i) in order.iter().enumerate() {
        if dup[i] {
            continue;
        }
        for &j in &order[p + 1..] {
            if keys[j] - keys[i] > 1e-9 * mags[i] {
                break;
            }
            if !dup[j] && same(all[i], all[j]) {
                // keep excluded matrices as representatives so candidates equal to them drop
                if j >= nc && i < nc {
                    dup[i] = true;
                    break;
                }
                dup[j] = true;
            }
        }
    }
    (0..nc).filter(|&i| !dup[i]).flat_map(|i| all[i].iter().copied()).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Stereographic {
    pub points: Vec<Vec<f64>>,
    /// Indices of input points dropped for lying within `1e-9` of the pole.
    pub dropped: Vec<usize>,
    pub pole: Vec<f64>,
}

/// Orthonormal basis of the complement of the unit vector `pole`, by Gram-Schmidt on the
/// standard basis.
pub fn complement_basis(pole: &[f64]) -> Vec<Vec<f64>> {
    let d = pole.len();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(d - 1);
    for k in 0..d {
        let mut v = vec![0.0; d];
        v[k] = 1.0;
        for b in std::iter::once(pole).chain(basis.iter().map(Vec::as_slice)) {
            let c: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            basis.push(v.iter().map(|x| x / norm).collect());
        }
        if basis.len() == d - 1 {
            break;
        }
    }
    basis
}

/// Projection of `S^{d-1}` from `pole` onto `R^{d-1}`, in the coordinates of
/// [`complement_basis`]. The antipode of the pole goes to the origin.
pub fn stereographic(points: &[Vec<f64>], pole: &[f64]) -> Stereographic {
    let basis = complement_basis(pole);
    let mut out = Vec::with_capacity(points.len());
    let mut dropped = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let dist = p.iter().zip(pole).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        if dist < 1e-9 {
            dropped.push(i);
            continue;
        }
        let h: f64 = p.iter().zip(pole).map(|(a, b)| a * b).sum();
        out.push(basis.iter().map(|b| p.iter().zip(b).map(|(a, c)| a * c).sum::<f64>() / (1.0 - h)).collect());
    }
    Stereographic { points: out, dropped, pole: pole.to_vec() }
}

/// Inverse of [`stereographic`].
pub fn inverse_stereographic(y: &[f64], pole: &[f64]) -> Vec<f64> {
    let basis = complement_basis(pole);
    let r2: f64 = y.iter().map(|a| a * a).sum();
    let mut x: Vec<f64> = pole.iter().map(|p| p * (r2 - 1.0)).collect();
    for (c, b) in y.iter().zip(&basis) {
        x.iter_mut().zip(b).for_each(|(xi, bi)| *xi += 2.0 * c * bi);
    }
    x.iter().map(|a| a / (r2 + 1.0)).collect()
}

/// North pole `e_d` of `S^{d-1}`.
pub fn north_pole(dim: usize) -> Vec<f64> {
    let mut p = vec![0.0; dim];
    p[dim - 1] = 1.0;
    p
}
