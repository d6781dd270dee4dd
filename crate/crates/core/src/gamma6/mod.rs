//! The 21-vertex torus nerve, its Gram matrix over `Q(sqrt 21)`, the order-21 symmetry
//! `sigma` with the reflections `s_k` in `O(6,1)`, and the trace computation showing the
//! group is not arithmetic.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::json;

use crate::exactalg::{exact_rank, quad_sign, signature, QuadExtElem, QuadField, SymMatrix};
use crate::report::Report;
use crate::scomplex::{
    classify_closed_surface, pcd_with_witness, flag_complex_with_overflow, is_flag_no_square, is_single_cycle, link, ComplexError, Graph,
    SComplex,
};

mod sigma;

pub use sigma::{
    build_sigma_y, certify_nonintegrality, h6_reflections, tits_trace, verify_gamma6_identities, H6Realization, SigmaY,
};

pub const N: usize = 21;
/// Differences `|i - j| mod 21` (up to sign) of adjacent vertices.
pub const DIFFERENCE_SET: [usize; 3] = [1, 4, 5];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Gamma6Error {
    #[error("invariant `{check}` failed: {found}")]
    Invariant { check: String, found: String },
    #[error("precision {0} bits is below the minimum of 128")]
    PrecisionTooLow(u32),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

pub(crate) fn invariant(check: &str, found: impl std::fmt::Display) -> Gamma6Error {
    Gamma6Error::Invariant { check: check.into(), found: found.to_string() }
}

pub fn field21() -> QuadField {
    QuadField::new(21).expect("21 is square-free")
}

/// Graph on `0..n` joining `i` and `j` when `|i - j| mod n` is `±s` for some `s` in `conn`.
pub fn circulant_graph(n: usize, conn: &[usize]) -> Graph {
    let mut g = Graph::new(n);
    for i in 0..n {
        for &s in conn {
            g.add_edge(i, (i + s) % n).expect("no loops for 0 < s < n");
        }
    }
    g
}

/// Distance class `min(d, 21 - d)` of `|i - j| mod 21`.
pub fn cyclic_distance(i: usize, j: usize) -> usize {
    let d = (i + N - j % N) % N;
    d.min(N - d)
}

/// The nerve: flag complex of the circulant graph, vertices labelled `1..=21`.
#[derive(Clone, Debug, Serialize)]
pub struct T21Nerve {
    pub complex: SComplex,
    #[serde(skip)]
    pub graph: Graph,
    pub difference_set: [usize; 3],
}

impl T21Nerve {
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.complex.neighbors(v)
    }
}

/// Builds the nerve and checks f-vector `(21, 63, 42)`, flag-no-square, that every
/// vertex link is a 6-cycle and that the complex is an orientable torus.
pub fn build_t21() -> Result<T21Nerve, Gamma6Error> {
    let graph = circulant_graph(N, &DIFFERENCE_SET);
    let (k0, overflow) = flag_complex_with_overflow(&graph);
    if let Some(c) = overflow {
        return Err(ComplexError::CliqueTooLarge(c).into());
    }
    let shift: BTreeMap<usize, usize> = (0..N).map(|i| (i, i + 1)).collect();
    let complex = k0.relabeled(&shift);
    if complex.f_vector() != [21, 63, 42] {
        return Err(invariant("f_vector", format!("{:?}", complex.f_vector())));
    }
    let fns = is_flag_no_square(&complex);
    if !fns.holds() {
        return Err(invariant("flag_no_square", format!("{fns:?}")));
    }
    for v in 1..=N {
        let l = link(&complex, &[v])?;
        if !(is_single_cycle(&l) && l.vertex_count() == 6) {
            return Err(invariant("vertex_link", format!("link of {v} is {:?}", l.f_vector())));
        }
    }
    let s = classify_closed_surface(&complex);
    if !(s.is_closed_surface && s.orientable && s.genus == Some(1)) {
        return Err(invariant("surface", format!("{s:?}")));
    }
    Ok(T21Nerve { complex, graph, difference_set: DIFFERENCE_SET })
}

/// `u`, `v`, `w` of the Gram matrix.
pub fn uvw() -> (QuadExtElem, QuadExtElem, QuadExtElem) {
    let f = field21();
    (f.frac(27, 7, 50), f.frac(21, 11, 50), f.frac(49, 9, 50))
}

#[derive(Clone, Debug, Serialize)]
pub struct GramA {
    pub matrix: SymMatrix,
    pub u: QuadExtElem,
    pub v: QuadExtElem,
    pub w: QuadExtElem,
}

impl GramA {
    /// Entry for 1-based indices.
    pub fn entry(&self, i: usize, j: usize) -> &QuadExtElem {
        self.matrix.get(i - 1, j - 1)
    }

    /// Principal submatrix on `S_j = {k : k ≡ j mod 3}`, `j` in `1..=3`.
    pub fn class_submatrix(&self, j: usize) -> SymMatrix {
        self.matrix.principal(&class_indices(j).iter().map(|k| k - 1).collect::<Vec<_>>())
    }
}

/// `S_j = {k in 1..=21 : k ≡ j mod 3}`.
pub fn class_indices(j: usize) -> Vec<usize> {
    (1..=N).filter(|k| k % 3 == j % 3).collect()
}

/// The 21 x 21 Gram matrix, filled by distance class: `1` on the diagonal, `0` for
/// `1, 4, 5`, `-u` for `3, 6, 9`, `-v` for `2, 8, 10` and `-w` for `7`. The zero pattern
/// is checked against the nerve.
pub fn build_gram_a() -> Result<GramA, Gamma6Error> {
    let f = field21();
    let (u, v, w) = uvw();
    let matrix = SymMatrix::from_fn(N, f, |i, j| match cyclic_distance(i, j) {
        0 => f.one(),
        1 | 4 | 5 => f.zero(),
        3 | 6 | 9 => -&u,
        2 | 8 | 10 => -&v,
        7 => -&w,
        _ => unreachable!("distance classes are 0..=10"),
    });
    let g = circulant_graph(N, &DIFFERENCE_SET);
    for i in 0..N {
        for j in i + 1..N {
            if matrix.get(i, j).is_zero() != g.has_edge(i, j) {
                return Err(invariant("zero_pattern", format!("entry ({}, {})", i + 1, j + 1)));
            }
        }
    }
    Ok(GramA { matrix, u, v, w })
}

/// Exact rank and signature of `A`, `u, v, w > 1`, and the cyclic symmetry of `A`.
pub fn certify_gram_a(a: &GramA) -> Report {
    let mut r = Report::new("gram_a");
    let sig = signature(&a.matrix);
    r.check("signature", sig.triple() == (6, 1, 14) && sig.is_consistent(N), json!(sig));
    let rank = exact_rank(&a.matrix.rows());
    r.check("rank", rank == 7 && rank == sig.rank(), json!({"rank": rank, "signature_rank": sig.rank()}));
    let one = field21().one();
    let gt1: BTreeMap<&str, i32> =
        [("u", &a.u), ("v", &a.v), ("w", &a.w)].into_iter().map(|(k, x)| (k, quad_sign(&(x - &one)))).collect();
    r.check("uvw_greater_than_one", gt1.values().all(|&s| s == 1), json!({"sign_of_x_minus_1": gt1, "u": a.u, "v": a.v, "w": a.w}));
    let cyclic = (0..N).all(|i| (0..N).all(|j| a.matrix.get(i, j) == a.matrix.get((i + 1) % N, (j + 1) % N)));
    r.check("cyclic_symmetry", cyclic, json!(null));
    let g = circulant_graph(N, &DIFFERENCE_SET);
    let zeros = (0..N).all(|i| (0..N).all(|j| i == j || a.matrix.get(i, j).is_zero() == g.has_edge(i, j)));
    r.check("zero_pattern_matches_nerve", zeros, json!({"zero_pairs": g.edge_count()}));
    r
}

/// Full certificate for the 7-dimensional representation: the nerve, `pcd` of the
/// nerve, the exact Gram matrix, the interval identities at `precision` bits and the
/// trace computation.
pub fn verify_gamma6(precision: u32) -> Report {
    let mut r = Report::new("gamma6");
    match build_t21() {
        Ok(t) => {
            r.check("t21_nerve", true, json!({"f_vector": t.complex.f_vector(), "difference_set": t.difference_set}));
            match pcd_with_witness(&t.complex) {
                Ok(p) => r.check("t21_pcd", p.value == 2 && p.sigma.is_empty() && p.cohomology[3].is_free_of_rank(1), json!(p)),
                Err(e) => {
                    r.fail("t21_pcd", e);
                    false
                }
            };
        }
        Err(e) => r.fail("t21_nerve", e),
    }
    let a = match build_gram_a() {
        Ok(a) => a,
        Err(e) => {
            r.fail("gram_a", e);
            return r;
        }
    };
    r.absorb("gram_a", &certify_gram_a(&a));
    let sy = match build_sigma_y(precision) {
        Ok(sy) => sy,
        Err(e) => {
            r.fail("sigma_y", e);
            return r;
        }
    };
    r.absorb("identities", &verify_gamma6_identities(&sy, &a, 1e-30));
    match h6_reflections(&sy) {
        Ok(h) => r.absorb("nonintegrality", &certify_nonintegrality(&a, &h)),
        Err(e) => r.fail("nonintegrality", e),
    }
    r
}
