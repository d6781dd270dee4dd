use std::collections::BTreeSet;

use serde::Serialize;

use super::{invariant, phi, PolytopeError, Vertex4, C600};
use crate::scomplex::{classify_closed_surface, full_subcomplex, is_flag_no_square, SComplex};

/// Great decagons through the least edge of `c` and its orthogonal complement.
pub fn core_decagons(c: &C600) -> Result<(Vec<usize>, Vec<usize>), PolytopeError> {
    core_decagons_from(c, c.least_edge())
}

/// Core decagons starting from the edge `(a, b)`: `v_{k+1} = phi v_k - v_{k-1}` traces the
/// first one, and the vertices orthogonal to both `v_0` and `v_1` form the second, which
/// is traced the same way from its least edge.
pub fn core_decagons_from(c: &C600, (a, b): (usize, usize)) -> Result<(Vec<usize>, Vec<usize>), PolytopeError> {
    if !c.graph().has_edge(a, b) {
        return Err(PolytopeError::NotAnEdge(a, b));
    }
    let core0 = decagon(c, a, b)?;
    let zero = super::field5().zero();
    let (pa, pb) = (&c.coordinates[a], &c.coordinates[b]);
    let ortho: Vec<usize> =
        (0..c.coordinates.len()).filter(|&w| c.coordinates[w].dot(pa) == zero && c.coordinates[w].dot(pb) == zero).collect();
    if ortho.len() != 10 {
        return Err(invariant("orthogonal_decagon_size", ortho.len()));
    }
    let start = ortho
        .iter()
        .flat_map(|&x| ortho.iter().map(move |&y| (x, y)))
        .find(|&(x, y)| x < y && c.graph().has_edge(x, y))
        .ok_or_else(|| invariant("orthogonal_decagon_edges", "no edge"))?;
    let core1 = decagon(c, start.0, start.1)?;
    let set1: BTreeSet<usize> = core1.iter().copied().collect();
    if set1 != ortho.iter().copied().collect() {
        return Err(invariant("orthogonal_decagon_closed", format!("{core1:?} vs {ortho:?}")));
    }
    Ok((core0, core1))
}

fn decagon(c: &C600, a: usize, b: usize) -> Result<Vec<usize>, PolytopeError> {
    let phi = phi();
    let mut seq = vec![a, b];
    let mut pts: Vec<Vertex4> = vec![c.coordinates[a].clone(), c.coordinates[b].clone()];
    for k in 2..12 {
        let next = pts[k - 1].scale(&phi).sub(&pts[k - 2]);
        let idx = c.vertex_index(&next).ok_or(PolytopeError::LeftVertexSet(k))?;
        seq.push(idx);
        pts.push(next);
    }
    let distinct: BTreeSet<usize> = seq[..10].iter().copied().collect();
    if seq[10] != a || seq[11] != b || distinct.len() != 10 {
        return Err(invariant("decagon_closure", format!("{seq:?}")));
    }
    seq.truncate(10);
    Ok(seq)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolidTorus {
    pub vertices: Vec<usize>,
    pub tetrahedra: Vec<Vec<usize>>,
    /// Common neighbors of each consecutive pair of core vertices.
    pub pentagons: Vec<Vec<usize>>,
}

/// Core decagon together with the pentagons around its edges, and all tetrahedra of the
/// 600-cell spanned by these 60 vertices.
pub fn solid_torus(c: &C600, core: &[usize]) -> Result<SolidTorus, PolytopeError> {
    let g = c.graph();
    let mut vertices: BTreeSet<usize> = core.iter().copied().collect();
    let mut pentagons = Vec::new();
    for i in 0..core.len() {
        let (x, y) = (core[i], core[(i + 1) % core.len()]);
        let common: Vec<usize> = g.neighbors(x).iter().copied().filter(|&w| g.has_edge(w, y)).collect();
        if common.len() != 5 {
            return Err(invariant("pentagon_size", format!("edge ({x}, {y}) has {} common neighbors", common.len())));
        }
        vertices.extend(common.iter().copied());
        pentagons.push(common);
    }
    if vertices.len() != 60 {
        return Err(invariant("solid_torus_vertices", vertices.len()));
    }
    let tetrahedra: Vec<Vec<usize>> =
        c.complex.simplices(3).filter(|t| t.iter().all(|v| vertices.contains(v))).cloned().collect();
    if tetrahedra.len() != 150 {
        return Err(invariant("solid_torus_tetrahedra", tetrahedra.len()));
    }
    Ok(SolidTorus { vertices: vertices.into_iter().collect(), tetrahedra, pentagons })
}

/// Full subcomplex on the solid-torus vertices off the core, checked to be a
/// flag-no-square torus with 50 vertices of degree 6, 150 edges and 100 triangles that
/// contains every ambient edge between its vertices.
pub fn boundary_torus(c: &C600, torus_vertices: &[usize], core: &[usize]) -> Result<SComplex, PolytopeError> {
    let keep: Vec<usize> = torus_vertices.iter().copied().filter(|v| !core.contains(v)).collect();
    let b = full_subcomplex(&c.complex, &keep)?;
    if b.f_vector() != [50, 150, 100] {
        return Err(invariant("boundary_f_vector", format!("{:?}", b.f_vector())));
    }
    let adj = b.adjacency();
    if let Some((v, nb)) = adj.iter().find(|(_, nb)| nb.len() != 6) {
        return Err(invariant("boundary_degree", format!("vertex {v} has degree {}", nb.len())));
    }
    let s = classify_closed_surface(&b);
    if !(s.is_closed_surface && s.orientable && s.euler_characteristic == 0 && s.genus == Some(1)) {
        return Err(invariant("boundary_surface", format!("{s:?}")));
    }
    if !is_flag_no_square(&b).holds() {
        return Err(invariant("boundary_flag_no_square", "fails"));
    }
    let keep_set: BTreeSet<usize> = keep.iter().copied().collect();
    for (x, y) in c.graph().edges() {
        if keep_set.contains(&x) && keep_set.contains(&y) && !b.contains(&[x, y]) {
            return Err(invariant("boundary_full", format!("ambient edge ({x}, {y}) missing")));
        }
    }
    Ok(b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusDecomposition {
    pub core0: Vec<usize>,
    pub core1: Vec<usize>,
    pub torus0: SolidTorus,
    pub torus1: SolidTorus,
    pub boundary0: SComplex,
    pub boundary1: SComplex,
}

impl TorusDecomposition {
    pub fn boundary0_vertices(&self) -> Vec<usize> {
        self.boundary0.vertices()
    }

    /// Tetrahedra in neither solid torus.
    pub fn interface_tetrahedra(&self, c: &C600) -> usize {
        let used: BTreeSet<&Vec<usize>> = self.torus0.tetrahedra.iter().chain(&self.torus1.tetrahedra).collect();
        c.complex.count(3) - used.len()
    }
}

/// Both solid tori and both boundary tori, with the vertex sets of the tori checked to
/// partition the 600-cell.
pub fn decompose(c: &C600) -> Result<TorusDecomposition, PolytopeError> {
    decompose_from(c, c.least_edge())
}

pub fn decompose_from(c: &C600, edge: (usize, usize)) -> Result<TorusDecomposition, PolytopeError> {
    let (core0, core1) = core_decagons_from(c, edge)?;
    let torus0 = solid_torus(c, &core0)?;
    let torus1 = solid_torus(c, &core1)?;
    let s0: BTreeSet<usize> = torus0.vertices.iter().copied().collect();
    if torus1.vertices.iter().any(|v| s0.contains(v)) || s0.len() + torus1.vertices.len() != c.coordinates.len() {
        return Err(invariant("tori_partition_vertices", "overlap or gap"));
    }
    let boundary0 = boundary_torus(c, &torus0.vertices, &core0)?;
    let boundary1 = boundary_torus(c, &torus1.vertices, &core1)?;
    Ok(TorusDecomposition { core0, core1, torus0, torus1, boundary0, boundary1 })
}

/// Neighbors of each boundary vertex of the first torus split by location.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NeighborCensus {
    /// `(vertex, [in core0, on boundary0, on boundary1])`
    pub per_vertex: Vec<(usize, [usize; 3])>,
}

impl NeighborCensus {
    pub fn is_uniform(&self, expect: [usize; 3]) -> bool {
        self.per_vertex.iter().all(|(_, c)| *c == expect)
    }
}

pub fn neighbor_census(c: &C600, d: &TorusDecomposition) -> NeighborCensus {
    let core0: BTreeSet<usize> = d.core0.iter().copied().collect();
    let b0: BTreeSet<usize> = d.boundary0.vertices().into_iter().collect();
    let b1: BTreeSet<usize> = d.boundary1.vertices().into_iter().collect();
    let per_vertex = b0
        .iter()
        .map(|&v| {
            let nb = c.graph().neighbors(v);
            let count = |s: &BTreeSet<usize>| nb.iter().filter(|w| s.contains(w)).count();
            (v, [count(&core0), count(&b0), count(&b1)])
        })
        .collect();
    NeighborCensus { per_vertex }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope600::build_600_cell;
    use crate::scomplex::surface_canonical_code;
    use rand::{seq::SliceRandom, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn decomposition_invariants() {
        let c = build_600_cell().unwrap();
        let d = decompose(&c).unwrap();
        assert!(d.core0.iter().all(|v| !d.core1.contains(v)));
        assert_eq!(d.torus0.pentagons.iter().map(Vec::len).sum::<usize>(), 50);
        assert_eq!(d.interface_tetrahedra(&c), 300);
        assert!(neighbor_census(&c, &d).is_uniform([2, 6, 4]));
        assert_eq!(d.boundary0.count(2) % 6, 4);
    }

    #[test]
    fn boundary_independent_of_starting_edge() {
        let c = build_600_cell().unwrap();
        let reference = surface_canonical_code(&decompose(&c).unwrap().boundary0).unwrap();
        let edges = c.graph().edges();
        let mut rng = ChaCha8Rng::seed_from_u64(600);
        for &e in edges.choose_multiple(&mut rng, 10) {
            let d = decompose_from(&c, e).unwrap();
            assert_eq!(surface_canonical_code(&d.boundary0).unwrap(), reference);
            assert_eq!(surface_canonical_code(&d.boundary1).unwrap(), reference);
        }
    }

    #[test]
    fn non_edge_rejected() {
        let c = build_600_cell().unwrap();
        let far = (1..120).find(|&v| !c.graph().has_edge(0, v)).unwrap();
        assert_eq!(core_decagons_from(&c, (0, far)), Err(PolytopeError::NotAnEdge(0, far)));
    }
}
