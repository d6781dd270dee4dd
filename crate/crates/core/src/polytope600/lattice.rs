//! Quotients of the regular triangular tiling by index-`n` sublattices of `Z^2`, used to
//! identify the boundary torus with a flat 6-regular torus.

use serde::Serialize;

use crate::scomplex::{surface_canonical_code, SComplex};

/// Hermite normal forms `(a, b, d)` with `a d = n`, `0 <= b < a`: the sublattice spanned
/// by `(a, 0)` and `(b, d)`.
pub fn hnf_sublattices(n: i64) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for d in 1..=n {
        if n % d == 0 {
            let a = n / d;
            for b in 0..a {
                out.push([a, b, d]);
            }
        }
    }
    out
}

/// Triangulated torus `R^2 / L` for the triangular tiling with vertices `Z^2`, triangles
/// `{(x, y), (x+1, y), (x, y+1)}` and `{(x+1, y), (x, y+1), (x+1, y+1)}`. `None` when the
/// quotient is not a simplicial complex with `n` vertices, `3n` edges and `2n` triangles.
pub fn lattice_quotient_torus([a, b, d]: [i64; 3]) -> Option<SComplex> {
    let n = (a * d) as usize;
    let reduce = |x: i64, y: i64| -> usize {
        let k = y.div_euclid(d);
        let yr = y - k * d;
        let xr = (x - k * b).rem_euclid(a);
        (yr * a + xr) as usize
    };
    let mut tris = Vec::with_capacity(2 * n);
    for y in 0..d {
        for x in 0..a {
            for t in [[(x, y), (x + 1, y), (x, y + 1)], [(x + 1, y), (x, y + 1), (x + 1, y + 1)]] {
                let v = t.map(|(p, q)| reduce(p, q));
                if v[0] == v[1] || v[1] == v[2] || v[0] == v[2] {
                    return None;
                }
                tris.push(v);
            }
        }
    }
    let k = SComplex::from_simplices(tris);
    (k.f_vector() == [n, 3 * n, 2 * n]).then_some(k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeMatch {
    /// Least matching sublattice `(a, b, d)`.
    pub sublattice: [i64; 3],
    pub all_matches: Vec<[i64; 3]>,
    pub candidates: usize,
    pub simplicial_candidates: usize,
}

/// Searches all index-`|V|` sublattices for a quotient isomorphic to `k`.
pub fn match_lattice_quotient(k: &SComplex) -> Option<LatticeMatch> {
    let target = surface_canonical_code(k)?;
    let cands = hnf_sublattices(k.vertex_count() as i64);
    let mut simplicial = 0;
    let mut all = Vec::new();
    for &h in &cands {
        if let Some(q) = lattice_quotient_torus(h) {
            simplicial += 1;
            if surface_canonical_code(&q).as_ref() == Some(&target) {
                all.push(h);
            }
        }
    }
    Some(LatticeMatch { sublattice: *all.first()?, all_matches: all, candidates: cands.len(), simplicial_candidates: simplicial })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scomplex::classify_closed_surface;

    #[test]
    fn sublattice_count() {
        assert_eq!(hnf_sublattices(50).len(), 93);
        assert_eq!(hnf_sublattices(7).len(), 8);
    }

    #[test]
    fn seven_vertex_torus_is_a_quotient() {
        let q = lattice_quotient_torus([7, 3, 1]).or_else(|| lattice_quotient_torus([7, 2, 1]));
        let q = q.expect("some index-7 quotient is simplicial");
        let s = classify_closed_surface(&q);
        assert!(s.orientable && s.genus == Some(1));
        assert!(lattice_quotient_torus([2, 0, 1]).is_none());
    }
}
