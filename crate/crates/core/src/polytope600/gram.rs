use serde_json::json;

use super::{census, decompose, field5, invariant, lattice, neighbor_census, PolytopeError, C600};
use crate::exactalg::{
    interval::{lorentz_reflection, minkowski_dot},
    quad_sign, signature, BigFloatInterval, IntervalMatrix, QuadExtElem, SymMatrix,
};
use crate::report::Report;
use crate::scomplex::{boundary_dim, classify_closed_surface, is_flag_no_square, racg_from_nerve, reduced_cohomology};

/// Gram matrix of the unit outer normals `u_i = (c p_i, s)` of the right-angled 120-cell,
/// `G_ij = (3 + sqrt 5) p_i . p_j - (2 + sqrt 5)`, where `c^2 = 3 + sqrt 5` and
/// `s^2 = 2 + sqrt 5` make adjacent facets orthogonal.
pub fn gram_p120(c: &C600) -> SymMatrix {
    let f = field5();
    let c2 = f.frac(3, 1, 1);
    let s2 = f.frac(2, 1, 1);
    let p = &c.coordinates;
    SymMatrix::from_fn(p.len(), f, |i, j| &c2 * &p[i].dot(&p[j]) - &s2)
}

#[derive(Clone, Debug)]
pub struct H4Realization {
    pub precision: u32,
    /// `(sqrt(3 + sqrt 5) p_i, sqrt(2 + sqrt 5))`
    pub normals: Vec<Vec<BigFloatInterval>>,
    pub reflection_matrices: Vec<IntervalMatrix>,
    pub gram: SymMatrix,
}

fn normal_scales(precision: u32) -> (BigFloatInterval, BigFloatInterval) {
    let f = field5();
    let c = BigFloatInterval::from_quad(&f.frac(3, 1, 1), precision).sqrt().expect("positive");
    let s = BigFloatInterval::from_quad(&f.frac(2, 1, 1), precision).sqrt().expect("positive");
    (c, s)
}

fn normal(c: &C600, i: usize, scales: &(BigFloatInterval, BigFloatInterval), precision: u32) -> Vec<BigFloatInterval> {
    let mut u: Vec<BigFloatInterval> =
        c.coordinates[i].coords.iter().map(|x| scales.0.mul(&BigFloatInterval::from_quad(x, precision))).collect();
    u.push(scales.1.clone());
    u
}

/// Interval normals and reflections for all 120 facets. Fails if some interval Gram
/// entry does not enclose the exact one.
pub fn h4_reflection_matrices(c: &C600, precision: u32) -> Result<H4Realization, PolytopeError> {
    if precision < 64 {
        return Err(invariant("precision", format!("{precision} < 64 bits")));
    }
    let scales = normal_scales(precision);
    let normals: Vec<_> = (0..c.coordinates.len()).map(|i| normal(c, i, &scales, precision)).collect();
    let gram = gram_p120(c);
    for i in 0..normals.len() {
        for j in i..normals.len() {
            if !minkowski_dot(&normals[i], &normals[j]).contains_quad(gram.get(i, j)) {
                return Err(PolytopeError::PrecisionTooLow(i, j));
            }
        }
    }
    let reflection_matrices = normals.iter().map(|u| lorentz_reflection(u)).collect();
    Ok(H4Realization { precision, normals, reflection_matrices, gram })
}

/// Reflections in the facets indexed by `vertices`, in the given order.
pub fn gamma4_generators(c: &C600, vertices: &[usize], precision: u32) -> Vec<IntervalMatrix> {
    let scales = normal_scales(precision);
    vertices.iter().map(|&v| lorentz_reflection(&normal(c, v, &scales, precision))).collect()
}

/// Certificate for the 4-dimensional group: the 600-cell census, the boundary torus of
/// one solid torus, the 120-cell Gram matrix and the boundary dimension.
pub fn verify_gamma4(c: &C600) -> Report {
    let mut r = Report::new("gamma4");
    let cs = census(&c.complex);
    r.check("c600_census", cs.f_vector == [120, 720, 1200, 600]
        && cs.vertex_edge_degrees.keys().eq([12].iter())
        && cs.vertex_tetra_degrees.keys().eq([20].iter())
        && cs.tetra_per_edge.keys().eq([5].iter()), json!(cs));
    let fns = is_flag_no_square(&c.complex);
    r.check("c600_flag_no_square", fns.holds(), json!(fns));

    match decompose(c) {
        Err(e) => r.fail("boundary_torus", e),
        Ok(d) => {
            let b = &d.boundary0;
            r.check("boundary_torus", true, json!({
                "core0": d.core0, "core1": d.core1, "vertices": b.vertices(),
                "f_vector": b.f_vector(),
            }));
            let surf = classify_closed_surface(b);
            r.check("boundary_surface", surf.orientable && surf.genus == Some(1), json!(surf));
            let nc = neighbor_census(c, &d);
            r.check("boundary_neighbor_census", nc.is_uniform([2, 6, 4]), json!({"expected": [2, 6, 4], "per_vertex": nc.per_vertex}));
            let used = d.torus0.tetrahedra.iter().filter(|t| d.torus1.tetrahedra.contains(t)).count();
            let iface = d.interface_tetrahedra(c);
            r.check("interface_tetrahedra", used == 0 && iface == 300, json!({"shared": used, "interface": iface}));
            let racg = racg_from_nerve(&b.graph().0);
            r.check("racg_presentation", racg.generators.len() == 50 && racg.commuting_pairs.len() == 150,
                json!({"generators": racg.generators.len(), "commuting_pairs": racg.commuting_pairs.len()}));
            let h = reduced_cohomology(b);
            match boundary_dim(b) {
                Ok(dim) => r.check("boundary_dim", dim == 2 && h[3].is_free_of_rank(1), json!({"pcd": dim, "reduced_cohomology": h})),
                Err(e) => {
                    r.fail("boundary_dim", e);
                    false
                }
            };
            match lattice::match_lattice_quotient(b) {
                Some(m) => r.check("lattice_quotient", true, json!(m)),
                None => r.check("lattice_quotient", false, json!("no index-50 quotient of the triangular lattice matches")),
            };
        }
    }

    let g = gram_p120(c);
    let n = g.dim();
    let one = field5().one();
    let minus_one = field5().int(-1);
    let mut bad_diag = Vec::new();
    let mut bad_zero = Vec::new();
    let mut bad_far = Vec::new();
    let mut antipodal = None;
    for i in 0..n {
        if *g.get(i, i) != one {
            bad_diag.push(i);
        }
        for j in i + 1..n {
            let e = g.get(i, j);
            let adjacent = c.graph().has_edge(i, j);
            if adjacent != e.is_zero() {
                bad_zero.push((i, j));
            }
            if !adjacent && quad_sign(&(e - &minus_one)) >= 0 {
                bad_far.push((i, j));
            }
            if antipodal.is_none() && c.coordinates[i].dot(&c.coordinates[j]) == minus_one {
                antipodal = Some(e.clone());
            }
        }
    }
    r.check("gram_diagonal", bad_diag.is_empty(), json!({"violations": bad_diag}));
    r.check("gram_zero_pattern", bad_zero.is_empty(), json!({"zero_entries": c.graph().edge_count(), "violations": bad_zero}));
    r.check("gram_ultraparallel", bad_far.is_empty(), json!({"violations": bad_far}));
    r.check("gram_antipodal_entry", antipodal.as_ref() == Some(&antipodal_value()), json!(antipodal));
    let sig = signature(&g);
    r.check("gram_signature", sig.triple() == (4, 1, 115) && sig.is_consistent(n), json!(sig));
    r
}

/// Gram entry of two antipodal facets, `-5 - 2 sqrt 5`.
fn antipodal_value() -> QuadExtElem {
    field5().frac(-5, -2, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::interval::preserves_minkowski;
    use crate::polytope600::build_600_cell;

    #[test]
    fn gram_entries() {
        let c = build_600_cell().unwrap();
        let g = gram_p120(&c);
        let (a, b) = c.least_edge();
        assert!(g.get(a, b).is_zero());
        assert_eq!(*g.get(7, 7), field5().one());
        // vertices 0 and 119 are antipodal in lexicographic order
        assert_eq!(c.coordinates[0].dot(&c.coordinates[119]), field5().int(-1));
        assert_eq!(*g.get(0, 119), antipodal_value());
    }

    #[test]
    fn interval_realization() {
        let c = build_600_cell().unwrap();
        let h = h4_reflection_matrices(&c, 128).unwrap();
        for i in [0, 33, 119] {
            let r = &h.reflection_matrices[i];
            assert!(r.mul(r).encloses_identity());
            assert!(preserves_minkowski(r));
            assert!(minkowski_dot(&h.normals[i], &h.normals[i]).contains_quad(&field5().one()));
        }
        assert!(h4_reflection_matrices(&c, 32).is_err());
    }

    #[test]
    fn gamma4_certificate_passes() {
        let c = build_600_cell().unwrap();
        let r = verify_gamma4(&c);
        assert!(r.pass, "failed checks: {:?}", r.failures());
        assert_eq!(r.checks["lattice_quotient"].detail["sublattice"], serde_json::json!([10, 0, 5]));
    }
}
